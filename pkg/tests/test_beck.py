import random

import pytest

from dpalg.coeff import Ring, ZZ
from dpalg.beck import (
    SemidirectElement,
    UModule,
    corrupted_phi_module,
    mixed_torsion_module,
    semidirect_gamma,
    trivial_module,
    u0_module,
    verify_abelian_structure,
    verify_beck_axioms,
    zero_module,
)
from dpalg.dpcore import divided_power, free_spec, gamma_gen, random_element, zero

SPEC = free_spec(ZZ, 1, 6)


def test_vector_reduction():
    m = UModule(SPEC, (0, 2, 3))
    assert m.reduce((5, 5, 5)) == (5, 1, 2)
    m6 = UModule(free_spec(Ring(6), 1, 6), (0, 4))
    # over Z/6 a free coordinate is mod 6 and an order-4 one collapses to gcd 2
    assert m6.moduli == (6, 2)
    assert m6.reduce((7, 7)) == (1, 1)


def test_semidirect_mul_formula():
    m = mixed_torsion_module(SPEC)
    a = random_element(SPEC, random.Random(1))
    y = (1, 1, 1)
    u = SemidirectElement(m, a, m.zero_vec())
    v = SemidirectElement(m, zero(SPEC), y)
    assert (u * v).a.is_zero()
    assert (u * v).x == m.act(a, y)
    # products of two pure module elements vanish
    w = SemidirectElement(m, zero(SPEC), (1, 0, 2))
    assert (v * w).a.is_zero()
    assert (v * w).x == m.zero_vec()


def test_semidirect_square_example():
    m = mixed_torsion_module(SPEC)
    x = gamma_gen(SPEC, 0, 1)
    e1 = m.unit_vec(0)
    u = SemidirectElement(m, x, e1)
    square = u * u
    assert square.a == divided_power(2, x).scale(2)
    assert square.x == m.scale_vec(2, m.act(x, e1))


def test_semidirect_gamma_small_cases():
    m = mixed_torsion_module(SPEC)
    x = gamma_gen(SPEC, 0, 1)
    u = SemidirectElement(m, x, (1, 0, 1))
    assert semidirect_gamma(1, u) == u
    g2 = semidirect_gamma(2, u)
    assert g2.a == divided_power(2, x)
    expected = m.add_vec(m.phi_p(2, (1, 0, 1)), m.act(x, (1, 0, 1)))
    assert g2.x == expected
    # phi_6 = 0: gamma_6 of a pure module element vanishes
    v = SemidirectElement(m, zero(SPEC), (1, 1, 1))
    g6 = semidirect_gamma(6, v)
    assert g6.a.is_zero() and g6.x == m.zero_vec()


def test_module_validation():
    assert mixed_torsion_module(SPEC).validate().passed
    assert u0_module(SPEC, 6).validate().passed
    assert trivial_module(SPEC, (0, 2, 3)).validate().passed
    assert not corrupted_phi_module(SPEC).validate().passed


def test_module_validation_well_definedness():
    # phi_2 out of a Z/3 coordinate is not well defined (3x = 0 but
    # phi_2(3x) = 9 phi_2(x) = phi_2(x) on a 2-torsion target).
    bad_phi = UModule(SPEC, (3, 2), phi_action={2: [[0, 0], [1, 0]]})
    report = bad_phi.validate()
    assert not report.passed
    assert any("off p-torsion" in r.law for r in report.failures())
    # an action sending a torsion line into a free one is not linear
    bad_a = UModule(SPEC, (2, 0), a_action={((0, 1),): [[0, 0], [1, 0]]})
    report = bad_a.validate()
    assert not report.passed
    assert any("torsion coordinates" in r.law for r in report.failures())
    # the semidirect axiom suite also notices (bilinearity breaks)
    assert not verify_beck_axioms(bad_a, samples=80, seed=3).passed


MODULE_ZOO = [
    zero_module(SPEC),
    trivial_module(SPEC, (0, 2, 3)),
    u0_module(SPEC, 6),
    mixed_torsion_module(SPEC),
    trivial_module(free_spec(Ring(6), 1, 6), (0, 2, 4)),
]


@pytest.mark.parametrize("module", MODULE_ZOO, ids=lambda m: f"rank{m.rank}-{m.spec.ring}")
def test_beck_axioms_pass_on_valid_modules(module):
    report = verify_beck_axioms(module, samples=60, seed=5)
    assert report.passed, report.summary()


def test_beck_axioms_detect_corruption():
    report = verify_beck_axioms(corrupted_phi_module(SPEC), samples=60, seed=5)
    assert not report.passed
    failed_laws = {r.law for r in report.failures()}
    assert "product rule gamma_m gamma_n" in failed_laws


def test_zero_module_is_just_A():
    report = verify_beck_axioms(zero_module(SPEC), samples=40, seed=9)
    assert report.passed


def test_abelian_structure_u0():
    report = verify_abelian_structure(u0_module(SPEC, 9), samples=40, seed=3)
    assert report.passed, report.summary()


def test_abelian_structure_zero_algebra():
    report = verify_abelian_structure(zero_module(SPEC), samples=10, seed=3)
    assert report.passed


def test_abelian_structure_negative_control():
    m = u0_module(SPEC, 9)

    def bad_gamma6(vec):
        return m.unit_vec(0) if any(vec) else m.zero_vec()

    report = verify_abelian_structure(m, samples=20, seed=3, gamma_override={6: bad_gamma6})
    assert not report.passed
    failed = {r.law for r in report.failures()}
    assert "gamma_n = 0 unless n is a prime power" in failed


def test_dp_structure_of_A_plays_no_role():
    # The same action tables form a Beck module over different truncations
    # of the free algebra (whose divided powers differ).
    for trunc in (2, 4, 6):
        spec = free_spec(ZZ, 1, trunc)
        module = mixed_torsion_module(spec)
        assert verify_beck_axioms(module, samples=40, seed=11).passed


def test_phi_kills_A_multiples_sampled():
    rng = random.Random(13)
    m = mixed_torsion_module(SPEC)
    for _ in range(100):
        a = random_element(SPEC, rng)
        y = m.random_vec(rng)
        assert m.phi_p(2, m.act(a, y)) == m.zero_vec()
        assert m.phi_p(3, m.act(a, y)) == m.zero_vec()


def test_gamma_prime_power_is_iterated_gamma_p():
    m = u0_module(SPEC, 8)
    rng = random.Random(17)
    for _ in range(50):
        x = m.random_vec(rng)
        u = SemidirectElement(m, zero(SPEC), x)
        for p, e in [(2, 2), (2, 3)]:
            lhs = semidirect_gamma(p**e, u)
            rhs = u
            for _ in range(e):
                rhs = semidirect_gamma(p, rhs)
            assert lhs == rhs
