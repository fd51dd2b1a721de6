"""Coefficient rings, dyadic fractions and Tate classes.

Three rings with involution are supported, named by tag:

``"Zt+"``  integer polynomials with the trivial involution,
``"Zt-"``  integer polynomials with ``t -> -t``,
``"Z"``    the integers (constant polynomials).
"""

from dataclasses import dataclass

from . import poly as P
from .errors import (
    BadRing,
    DenominatorTooLarge,
    EvenVerschiebungOnMinusRing,
    NotInSubring,
    NotSelfConjugate,
)

RINGS = ("Zt+", "Zt-", "Z")
MODULI = ("none", "R", "2R", "1+*")


def check_ring(ring):
    if ring not in RINGS:
        raise BadRing(f"unknown ring {ring!r}")
    return ring


def is_minus(ring):
    return ring == "Zt-"


def conj(a, ring):
    """Involution on an integer polynomial."""
    return P.pconj(a, ring == "Zt-")


def reduce_numerator(num, k, modulus, ring):
    """Canonical numerator of ``num/2^k`` modulo the given ideal."""
    if modulus == "none":
        return P.trim(num)
    if modulus == "R":
        return P.pmod(num, 1 << k)
    m = 1 << (k + 1)
    if modulus == "2R" or ring != "Zt-":
        return P.pmod(num, m)
    # (1+*)R over Zt- is 2 * (even-exponent part); odd exponents are exact
    return P.trim(c % m if i % 2 == 0 else c for i, c in enumerate(num))


@dataclass(frozen=True)
class DyadicPoly:
    """The value ``numerator / 2^denom_exp`` modulo an ideal of the ring."""

    numerator: tuple
    denom_exp: int
    modulus: str = "none"
    ring: str = "Zt+"

    def __post_init__(self):
        check_ring(self.ring)
        if self.modulus not in MODULI:
            raise ValueError(f"unknown modulus {self.modulus!r}")
        num, k = tuple(self.numerator), self.denom_exp
        if self.ring == "Z" and len(P.trim(num)) > 1:
            raise BadRing("polynomial value over the integers")
        num = reduce_numerator(num, k, self.modulus, self.ring)
        while k > 0 and all(c % 2 == 0 for c in num):
            num = tuple(c // 2 for c in num)
            k -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denom_exp", k)

    @classmethod
    def parse(cls, text, modulus="none", ring="Zt+"):
        num, k = P.parse_value(text)
        return cls(num, k, modulus, ring)

    def __str__(self):
        return P.format_value(self.numerator, self.denom_exp)

    def is_zero(self):
        return not self.numerator

    def _align(self, other):
        if (self.modulus, self.ring) != (other.modulus, other.ring):
            raise ValueError("mixing values with different modulus or ring")
        k = max(self.denom_exp, other.denom_exp)
        a = P.pscale(self.numerator, 1 << (k - self.denom_exp))
        b = P.pscale(other.numerator, 1 << (k - other.denom_exp))
        return a, b, k

    def __add__(self, other):
        a, b, k = self._align(other)
        return DyadicPoly(P.padd(a, b), k, self.modulus, self.ring)

    def __sub__(self, other):
        a, b, k = self._align(other)
        return DyadicPoly(P.psub(a, b), k, self.modulus, self.ring)

    def __neg__(self):
        return DyadicPoly(P.pneg(self.numerator), self.denom_exp, self.modulus, self.ring)

    def scale(self, r):
        """Multiply by the integer polynomial ``r`` on the left."""
        return DyadicPoly(P.pmul(r, self.numerator), self.denom_exp, self.modulus, self.ring)

    def with_modulus(self, modulus):
        return DyadicPoly(self.numerator, self.denom_exp, modulus, self.ring)


def involve(x):
    return DyadicPoly(conj(x.numerator, x.ring), x.denom_exp, x.modulus, x.ring)


def verschiebung(x, k):
    if k < 1:
        raise ValueError("Verschiebung index must be positive")
    if x.ring == "Zt-" and k % 2 == 0:
        raise EvenVerschiebungOnMinusRing(f"V_{k} does not respect t -> -t")
    return DyadicPoly(P.psubst(x.numerator, k), x.denom_exp, x.modulus, x.ring)


def evodd_decompose(p):
    """Return ``(p_ev, p_od)`` with ``p = p_ev(t^2) + t*p_od(t^2)`` over F_2."""
    return P.gf2_even_odd(p)


def _reduce_in_variable(p):
    # replace the top even exponent 2k by k until only odd exponents (and 1) remain
    while True:
        evens = _even_mask(p) & ~1
        if not evens:
            return p
        e = evens.bit_length() - 1
        p ^= (1 << e) | (1 << (e // 2))


def _even_mask(p):
    n = (p.bit_length() + 1) // 2
    return p & int("01" * n, 2) if n else 0


SUBRINGS = ("Z2t", "Z2t2", "t2Z2t2")


def arf_reduce(p, subring="Z2t"):
    """Canonical representative of ``p`` modulo ``{x^2 + x}`` for ``x`` in the subring.

    ``p`` is a bit-mask polynomial over F_2.
    """
    if subring not in SUBRINGS:
        raise ValueError(f"unknown subring {subring!r}")
    if subring == "Z2t":
        return _reduce_in_variable(p)
    ev, od = P.gf2_even_odd(p)
    if od:
        raise NotInSubring("polynomial has odd exponents")
    if subring == "t2Z2t2" and ev & 1:
        raise NotInSubring("polynomial has a constant term")
    return P.gf2_subst(_reduce_in_variable(ev), 2)


@dataclass(frozen=True)
class TateClass:
    """Class in the Tate group of order two: a bit-mask polynomial over F_2.

    Over ``Zt-`` the representative only involves even exponents, over ``Z``
    it is a constant.
    """

    rep: int
    ring: str = "Zt+"

    def __post_init__(self):
        check_ring(self.ring)
        if self.ring == "Zt-" and P.gf2_even_odd(self.rep)[1]:
            raise NotInSubring("Tate class over Zt- must be even")
        if self.ring == "Z" and self.rep > 1:
            raise BadRing("Tate class over the integers is a constant")

    def __add__(self, other):
        return TateClass(self.rep ^ other.rep, self.ring)

    def act(self, a):
        """Frobenius-twisted action of ``a`` (bit mask over F_2): ``a^2 x``."""
        return TateClass(P.gf2_mul(P.gf2_square(a), self.rep), self.ring)

    def __str__(self):
        return P.format_gf2(self.rep)


def two_map(x):
    """``{2}``: half-integral values modulo R to ``R/2R`` (bit mask)."""
    if x.denom_exp > 1:
        raise DenominatorTooLarge("{2} needs denominator at most 2")
    if x.denom_exp == 0:
        return 0
    return P.to_gf2(x.numerator)


def two_inverse(p, ring="Zt+"):
    return DyadicPoly(P.from_gf2(p), 1, "R", ring)


def one_plus_star(x):
    """``{1+*}``: self-conjugate half-integral values modulo R to Tate classes."""
    if x.denom_exp > 1:
        raise DenominatorTooLarge("{1+*} needs denominator at most 2")
    if x.denom_exp == 0:
        return TateClass(0, x.ring)
    num = x.numerator
    diff = P.pmod(P.psub(num, conj(num, x.ring)), 2)
    if diff:
        raise NotSelfConjugate(f"{x} is not self-conjugate")
    s = P.padd(num, conj(num, x.ring))
    return TateClass(P.to_gf2(P.pdivexact(s, 2)), x.ring)


def one_plus_star_section(c):
    """Right inverse of ``{1+*}``; a true inverse over ``Zt+`` and ``Z``."""
    return DyadicPoly(P.from_gf2(c.rep), 1, "R", c.ring)
