"""The bimodule-algebras U(0) and U(A) = A_+ (x) U(0) in canonical form.

U(0) is generated over the base ring by operators phi_p, one per prime, with
p*phi_p = 0 and the twist phi_p r = r^p phi_p.  A phi-monomial is the unit
(the empty tuple) or (p, e) standing for phi_p^e; phi-monomials of distinct
primes multiply to zero, so those are the only canonical forms.  Coefficients
of phi_p^e are kept reduced mod p (mod gcd(p, m) over Z/m, hence dropped
whenever p is invertible).

Scalars do not commute past phi-monomials in general; an EnvelopeElement
stores its A_+ coefficient on the left of each phi-monomial, and products
route right-hand scalars through the twist.
"""

from math import gcd

from .coeff import prime_power_decomposition, prime_powers_up_to
from .dpcore import DPElement, zero as algebra_zero

UNIT = ()


def phi_of(n):
    """Unit for n = 1, (p, e) for n = p^e, None (the zero operator) otherwise."""
    if n < 1:
        raise ValueError("phi index must be >= 1")
    if n == 1:
        return UNIT
    return prime_power_decomposition(n)


def phi_degree(phi):
    if phi == UNIT:
        return 1
    p, e = phi
    return p**e


def phi_mul(a, b):
    """Product of phi-monomials; None when it vanishes (distinct primes)."""
    if a == UNIT:
        return b
    if b == UNIT:
        return a
    if a[0] != b[0]:
        return None
    return (a[0], a[1] + b[1])


def phi_sort_key(phi):
    return (phi_degree(phi), phi[0] if phi else 0)


def phi_coefficient_modulus(ring, p):
    """The coefficient ring of a phi_p^e term is R/p; its order as declared here.

    Over Z this is p; over Z/m it is gcd(p, m), so 1 (a dropped term) whenever
    p is invertible mod m.
    """
    return p if ring.modulus == 0 else gcd(p, ring.modulus)


def format_phi(phi):
    if phi == UNIT:
        return "1"
    p, e = phi
    return f"ph{p}" if e == 1 else f"ph{p}^{e}"


class Aug:
    """An element of A_+ = A (+) R: an algebra part and a scalar part."""

    __slots__ = ("scalar", "alg")

    def __init__(self, scalar, alg):
        self.alg = alg
        self.scalar = alg.spec.ring.normalize(scalar)

    @property
    def spec(self):
        return self.alg.spec

    def is_zero(self):
        return self.scalar == 0 and self.alg.is_zero()

    def __add__(self, other):
        return Aug(self.scalar + other.scalar, self.alg + other.alg)

    def __neg__(self):
        return Aug(-self.scalar, -self.alg)

    def scale(self, c):
        return Aug(self.spec.ring.mul(self.scalar, c), self.alg.scale(c))

    def __mul__(self, other):
        """Unitalization product: (a + r)(b + s) = (ab + sa + rb) + rs."""
        alg = self.alg * other.alg + self.alg.scale(other.scalar) + other.alg.scale(self.scalar)
        return Aug(self.spec.ring.mul(self.scalar, other.scalar), alg)

    def reduce_mod(self, d):
        """Image in A_+/d (coefficients taken mod d > 0)."""
        return Aug(self.scalar % d, DPElement(self.spec, {m: c % d for m, c in self.alg.terms.items()}))

    def __eq__(self, other):
        return isinstance(other, Aug) and self.scalar == other.scalar and self.alg == other.alg

    def __hash__(self):
        return hash((self.scalar, self.alg))

    def __str__(self):
        if self.alg.is_zero():
            return str(self.scalar)
        if self.scalar == 0:
            return str(self.alg)
        return f"{self.alg} + {self.scalar}"

    def __repr__(self):
        return f"<Aug {self}>"


def aug_zero(spec):
    return Aug(0, algebra_zero(spec))


def aug_scalar(spec, r):
    return Aug(r, algebra_zero(spec))


def aug_algebra(a):
    return Aug(0, a)


class EnvelopeElement:
    """An element of U(A): a map from phi-monomials to A_+ coefficients."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms=None):
        self.spec = spec
        self.terms = {}
        if terms:
            for phi, aug in terms.items():
                aug = self._canonical_aug(spec, phi, aug)
                if not aug.is_zero():
                    self.terms[phi] = aug

    @staticmethod
    def _canonical_aug(spec, phi, aug):
        if phi == UNIT:
            return aug
        modulus = phi_coefficient_modulus(spec.ring, phi[0])
        if modulus == 1:
            return aug_zero(spec)
        return aug.reduce_mod(modulus)

    def is_zero(self):
        return not self.terms

    def _require_same(self, other):
        if self.spec != other.spec:
            raise ValueError("envelope elements live over different algebras")

    def __add__(self, other):
        self._require_same(other)
        out = dict(self.terms)
        for phi, aug in other.terms.items():
            merged = out.get(phi, aug_zero(self.spec)) + aug
            merged = self._canonical_aug(self.spec, phi, merged)
            if merged.is_zero():
                out.pop(phi, None)
            else:
                out[phi] = merged
        return self._raw(self.spec, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        out = {}
        for phi, aug in self.terms.items():
            scaled = self._canonical_aug(self.spec, phi, aug.scale(c))
            if not scaled.is_zero():
                out[phi] = scaled
        return self._raw(self.spec, out)

    def __mul__(self, other):
        """The twisted product of U(A) = A_+ (x) U(0).

        (c (x) unit) * (d (x) nu)      = c*d (x) nu
        (c (x) mu)   * ((b, s) (x) nu) = c * s^(deg mu) (x) mu*nu   for mu != unit
        (phi-monomials of distinct primes multiply to zero.)
        """
        self._require_same(other)
        spec = self.spec
        result = {}
        for phi_u, aug_u in self.terms.items():
            for phi_v, aug_v in other.terms.items():
                if phi_u == UNIT:
                    phi, aug = phi_v, aug_u * aug_v
                else:
                    phi = phi_mul(phi_u, phi_v)
                    if phi is None:
                        continue
                    twist = spec.ring.pow(aug_v.scalar, phi_degree(phi_u))
                    aug = aug_u.scale(twist)
                aug = self._canonical_aug(spec, phi, result.get(phi, aug_zero(spec)) + aug)
                if aug.is_zero():
                    result.pop(phi, None)
                else:
                    result[phi] = aug
        return self._raw(spec, result)

    def __eq__(self, other):
        return (
            isinstance(other, EnvelopeElement)
            and self.spec == other.spec
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: phi_sort_key(kv[0]))

    def __str__(self):
        if self.is_zero():
            return "0"
        return " + ".join(f"({aug})*{format_phi(phi)}" for phi, aug in self.sorted_terms())

    def __repr__(self):
        return f"<EnvelopeElement {self}>"

    @classmethod
    def _raw(cls, spec, terms):
        el = object.__new__(cls)
        el.spec = spec
        el.terms = terms
        return el


def env_zero(spec):
    return EnvelopeElement(spec)


def env_unit(spec, scalar=1):
    return EnvelopeElement(spec, {UNIT: aug_scalar(spec, scalar)})


def env_algebra(a):
    return EnvelopeElement(a.spec, {UNIT: aug_algebra(a)})


def env_phi(spec, p, e=1, scalar=1):
    return EnvelopeElement(spec, {(p, e): aug_scalar(spec, scalar)})


def envelope_mul(u, v):
    return u * v


def u0_basis_up_to(degree_cap, ring):
    """Canonical U(0) basis of degree <= cap: (phi-monomial, annihilator) pairs.

    The unit carries annihilator 0; phi_p^e carries p.  Terms whose
    coefficient ring R/p is trivial are omitted.  Ordered by degree, then p.
    """
    if degree_cap < 1:
        raise ValueError("degree cap must be >= 1")
    basis = [(UNIT, 0)]
    for n in prime_powers_up_to(degree_cap):
        p, e = prime_power_decomposition(n)
        if phi_coefficient_modulus(ring, p) > 1:
            basis.append(((p, e), p))
    return basis
