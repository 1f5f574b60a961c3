import random

from dpalg.coeff import Ring, ZZ
from dpalg.linalg import (
    IntegerMatrix,
    cokernel_factors,
    determinant,
    hermite_form,
    in_lattice,
    invariant_factor_chain,
    kernel_basis,
    kernel_basis_mod,
    smith_diagonal,
    smith_normal_form,
    solve_in_lattice,
)


def test_smith_examples():
    assert smith_normal_form(IntegerMatrix([[2, -2]])) == [2]
    assert smith_normal_form(IntegerMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == [1, 1, 1]
    assert smith_normal_form(IntegerMatrix([[2, 0], [0, 3]])) == [1, 6]


def test_smith_divisibility_chain_and_determinant():
    rng = random.Random(7)
    for _ in range(200):
        rows = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        diag = smith_diagonal(rows, 4)
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0
        det = determinant(rows)
        if det != 0:
            prod = 1
            for d in diag:
                prod *= d
            assert prod == abs(det)
        else:
            assert len(diag) < 4


def test_smith_rectangular():
    assert smith_diagonal([[2, 4, 4]], 3) == [2]
    assert smith_diagonal([[0, 0], [0, 0]], 2) == []
    assert smith_diagonal([[6, 0], [0, 10], [0, 0]], 2) == [2, 30]


def test_hermite_membership():
    rows = hermite_form([[2, 0, 4], [0, 3, 1], [2, 3, 5]], 3)
    assert in_lattice(rows, [2, 0, 4])
    assert in_lattice(rows, [4, 3, 9])
    assert not in_lattice(rows, [1, 0, 0])
    coeffs = solve_in_lattice(rows, [2, 3, 5])
    assert coeffs is not None
    rebuilt = [0, 0, 0]
    for c, row in zip(coeffs, rows):
        for j in range(3):
            rebuilt[j] += c * row[j]
    assert rebuilt == [2, 3, 5]


def test_kernel_basis():
    # x + 2y + z = 0 has a rank-2 kernel.
    basis = kernel_basis([[1, 2, 1]], 3)
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + v[2] == 0
    assert in_lattice(basis, [1, 0, -1])
    assert in_lattice(basis, [0, 1, -2])
    assert not in_lattice(basis, [1, 0, 0])


def test_kernel_basis_random_consistency():
    rng = random.Random(11)
    for _ in range(50):
        rows = [[rng.randint(-5, 5) for _ in range(5)] for _ in range(3)]
        basis = kernel_basis(rows, 5)
        for v in basis:
            assert all(sum(r[j] * v[j] for j in range(5)) == 0 for r in rows)
        assert len(basis) == 5 - len(smith_diagonal(rows, 5))


def test_kernel_basis_mod():
    # Over Z/4: kernel of [1 2] contains (2, 1), (0, 2) and 4Z^2.
    basis = kernel_basis_mod([[1, 2]], 2, 4)
    assert in_lattice(basis, [2, 1])
    assert in_lattice(basis, [4, 0])
    assert in_lattice(basis, [0, 4])
    assert not in_lattice(basis, [1, 0])
    for v in basis:
        assert (v[0] + 2 * v[1]) % 4 == 0


def test_cokernel_factors():
    # Z^3 / <(2,0,0)> = Z/2 + Z^2
    assert cokernel_factors(3, [[2, 0, 0]], ZZ) == (2, 0, 0)
    # identity relations kill everything
    assert cokernel_factors(2, [[1, 0], [0, 1]], ZZ) == ()
    # over Z/6 a free column becomes Z/6
    assert cokernel_factors(1, [], Ring(6)) == (6,)
    # column annihilators participate
    assert cokernel_factors(2, [], ZZ, column_annihilators=[2, 0]) == (2, 0)


def test_invariant_factor_chain():
    assert invariant_factor_chain([0, 2, 3], ZZ) == (6, 0)
    assert invariant_factor_chain([2, 2, 3], ZZ) == (2, 6)
    assert invariant_factor_chain([1, 1], ZZ) == ()
    assert invariant_factor_chain([0], Ring(6)) == (6,)
    assert invariant_factor_chain([5], Ring(6)) == ()
    assert invariant_factor_chain([2, 0], Ring(4)) == (2, 4)


def test_chain_matches_cokernel_presentation():
    # The same module described by annihilators and by relation rows.
    rng = random.Random(3)
    for _ in range(100):
        orders = [rng.choice([0, 0, 2, 3, 4, 5, 6, 8, 9]) for _ in range(rng.randint(0, 4))]
        ring = rng.choice([ZZ, Ring(4), Ring(6)])
        rows = []
        n = len(orders)
        for j, d in enumerate(orders):
            if d:
                rows.append([d if i == j else 0 for i in range(n)])
        assert cokernel_factors(n, rows, ring) == invariant_factor_chain(orders, ring)
