"""Complete Witt-class coordinates for reduced quadratic linking forms.

Forms of higher exponent are first reduced to exponent 2 by alternating two
subLagrangian reductions: one kills the characteristic elements, the other
the top layer ``2^(n-1) M``. Exponent-2 classes are then read off as:

* ``Zt+``: ``(c1, c2)`` with ``c1`` in ``t Z/4[t]`` modulo ``2 t^(2j) = 2 t^j``
  and ``c2`` in ``t F_2[t]``;
* ``Zt-``: ``c`` in ``t^2 F_2[t^2]``;
* ``Z``: rank parity and Gauss sum.
"""

from dataclasses import dataclass

from . import forms as F
from . import invariants as I
from . import modules as MD
from . import poly as P
from .errors import (
    BadRing,
    EvenVerschiebungOnMinusRing,
    ExponentTooHigh,
    NotEvenType,
    NotInKernelOfQ,
    NotReducedClass,
    ObstructionNonzero,
    RingMismatch,
    Unsupported,
)
from .ring import check_ring

# ---- coordinates ----


def _odd_part(j):
    while j and j % 2 == 0:
        j //= 2
    return j


def canonical_c1(c):
    """Representative of ``c`` in ``Z/4[t]`` modulo ``2 t^(2j) - 2 t^j``.

    The mod-2 part keeps its {0,1} lift; each doubled monomial ``2 t^j`` moves
    to ``2 t^(odd part of j)``.
    """
    c = P.pmod(P.trim(c), 4)
    low = P.pmod(c, 2)
    high = P.to_gf2(P.pdivexact(P.psub(c, low), 2))
    folded = 0
    j = 0
    while high:
        if high & 1:
            folded ^= 1 << _odd_part(j)
        high >>= 1
        j += 1
    return P.pmod(P.padd(low, P.pscale(P.from_gf2(folded), 2)), 4)


@dataclass(frozen=True)
class WittCoord:
    """Witt coordinates. Unused fields stay at their zero values."""

    ring: str
    c1: tuple = ()
    c2: int = 0
    c: int = 0
    rk: int = 0
    gs: int = 0

    def __post_init__(self):
        check_ring(self.ring)
        if self.ring == "Zt+":
            object.__setattr__(self, "c1", canonical_c1(self.c1))
        if self.ring == "Z":
            object.__setattr__(self, "rk", self.rk % 2)
            object.__setattr__(self, "gs", self.gs % 8)

    def is_zero(self):
        return not (self.c1 or self.c2 or self.c or self.rk or self.gs)

    def __add__(self, other):
        if self.ring != other.ring:
            raise RingMismatch("adding coordinates over different rings")
        return WittCoord(self.ring, P.padd(self.c1, other.c1), self.c2 ^ other.c2,
                         self.c ^ other.c, self.rk + other.rk, self.gs + other.gs)

    def scale(self, k):
        c1 = P.pscale(self.c1, k)
        c2 = self.c2 if k % 2 else 0
        c = self.c if k % 2 else 0
        return WittCoord(self.ring, c1, c2, c, self.rk * k, self.gs * k)

    def to_json_obj(self):
        if self.ring == "Zt+":
            return {"ring": self.ring, "c1": P.format_poly(self.c1), "c2": P.format_gf2(self.c2)}
        if self.ring == "Zt-":
            return {"ring": self.ring, "c": P.format_gf2(self.c)}
        return {"ring": self.ring, "rk": self.rk, "gs": self.gs}

    @classmethod
    def from_json_obj(cls, obj):
        ring = check_ring(obj["ring"])
        if ring == "Zt+":
            return cls(ring, c1=P.parse_poly(obj.get("c1", "0")), c2=P.parse_gf2(obj.get("c2", "0")))
        if ring == "Zt-":
            return cls(ring, c=P.parse_gf2(obj.get("c", "0")))
        return cls(ring, rk=int(obj.get("rk", 0)), gs=int(obj.get("gs", 0)))

    def __str__(self):
        obj = self.to_json_obj()
        return ", ".join(f"{k}={v}" for k, v in obj.items() if k != "ring")


# ---- reduction to exponent 2 ----


def is_even_type(m, n=None):
    """``2^n q = 0``, checked on generators (``n`` defaults to the exponent)."""
    n = m.n if n is None else n
    if n < m.n:
        return False
    for num in m._q:
        num = P.pscale(num, 1 << (n - m.n))
        if any(c % 2 for c in num):
            return False
        if m.ring == "Zt-" and P.even_odd(num)[1]:
            return False
    return True


def _q_kernel_check(m, n, ce):
    for i, v in enumerate((ce.v0, ce.v1)):
        val = m.eval_q(v)
        if not val.is_zero():
            raise NotInKernelOfQ(f"q(v{i}) = {val} at level {n}")


def characteristic_submodule(m, n=None):
    """``closure <v0, v1>``; requires both ``q(v_i)`` to vanish."""
    n = m.n if n is None else n
    ce = I.char_elements(m, n)
    _q_kernel_check(m, n, ce)
    return MD.closure(MD.Submodule(m.module, [ce.v0, ce.v1]))


def devissage_G(m, n=None):
    """Reduce along the closure of the characteristic elements; the result has even type."""
    n = m.n if n is None else n
    T = characteristic_submodule(m, n)
    if T.is_zero():
        return m
    out = F.reduce_by(m, T).form
    if not is_even_type(out, n):
        raise NotEvenType("reduction by the characteristic submodule is not of even type")
    return out


def devissage_F(m, n=None):
    """Reduce an even-type form of exponent ``2^n`` along ``closure(2^(n-1) M)``."""
    n = m.n if n is None else n
    if n < 2:
        raise ValueError("the top-layer reduction needs n >= 2")
    if not is_even_type(m, n):
        raise NotEvenType("2^n q does not vanish")
    if m.n < n:
        return m
    M = m.module
    S = MD.closure(MD.Submodule(M, [M.scale((1 << (n - 1),), g) for g in M.generators]))
    if S.is_zero():
        return m
    return F.reduce_by(m, S).form


def _fused_step(m, n):
    """Both reductions at level ``n`` in one subLagrangian: ``closure(T + 2^(n-1) T^perp)``."""
    T = characteristic_submodule(m, n)
    M = m.module
    Tp = F.perp(m, T)
    top = [M.scale((1 << (n - 1),), g) for g in Tp.generators]
    S = MD.closure(MD.Submodule(M, list(T.generators) + top))
    if S.is_zero():
        return m
    return F.reduce_by(m, S).form


def reduce_to_exp2(m):
    """Witt-equivalent form of exponent 2.

    Raises :class:`ObstructionNonzero` when ``q(v0)`` at level 2 is nonzero;
    that value is the obstruction to lowering the exponent to 2.
    """
    while m.n > 1:
        n = m.n
        if n == 2:
            q0 = I.Q_inv(m, 2, 0)
            if q0.rep:
                raise ObstructionNonzero(f"Q at level 2 is {q0}", value=str(q0))
        m = _fused_step(m, n)
        if m.n >= n:
            raise ExponentTooHigh("exponent did not drop")
    return m


# ---- classification ----


def _N(p, g, ring="Zt+"):
    return F.N_form(p, g, ring)


def j1_form(c1):
    return _N(canonical_c1(c1), P.ONE)


def j2_form(c2):
    """``N(1, c2) - N(t, c2 / t)`` for ``c2`` in ``t F_2[t]``."""
    if c2 & 1:
        raise NotReducedClass("second coordinate must have no constant term")
    return F.form_sum(_N(P.ONE, P.from_gf2(c2)), F.form_neg(_N(P.T, P.from_gf2(c2 >> 1))))


def realize(coord):
    """A form with the given coordinates."""
    if coord.ring == "Zt+":
        return F.form_sum(j1_form(coord.c1), j2_form(coord.c2))
    if coord.ring == "Zt-":
        return _N(P.from_gf2(coord.c), P.ONE, "Zt-")
    z2 = F.make_form(MD.TorsionModule([MD.Cyclic(1)], "Z"), 1, [["1/2"]], ["1/2"], checks=0)
    z4 = F.build_template("rank1Z4", ring="Z")
    parts = [z2] * coord.rk + [F.form_multiple(z4, coord.gs - coord.rk)]
    return F.form_sum(*parts)


def _classify_plus(m):
    b1, b2 = I.B_inv(m, check_reduced=False)
    if b1 & 1 or b2 & 1:
        raise NotReducedClass("B has a constant term")
    lift = P.from_gf2(b1)
    residual = F.form_sum(m, F.form_neg(_N(lift, P.ONE)), F.form_neg(j2_form(b2)))
    even = devissage_G(residual, 1)
    arf = I.arf_invariant(I.alpha_pull(even)).rep
    if arf & 1:
        raise NotReducedClass("Arf invariant of the even part has a constant term")
    c1 = P.padd(lift, P.pscale(P.from_gf2(arf), 2))
    return WittCoord("Zt+", c1=c1, c2=b2)


def _classify_minus(m):
    val = m.eval_q(I.char_elements(m, 1).v0)
    if val.denom_exp:
        raise NotReducedClass(f"q(v0) = {val} is not integral")
    num = val.numerator
    if P.pmod(P.even_odd(num)[1], 2) or P.peval(num, 0) % 2:
        raise NotReducedClass(f"q(v0) = {val} is outside t^2 F_2[t^2]")
    return WittCoord("Zt-", c=P.to_gf2(num))


def classify(m, check_reduced=True, gs_cap=I.GAUSS_CAP):
    """Witt coordinates of a reduced quadratic linking form (any form over Z)."""
    if m.epsilon != 1:
        raise Unsupported("classification is for quadratic linking forms")
    if m.ring == "Z":
        rk, gs = I.classify_over_Z(m, gs_cap)
        return WittCoord("Z", rk=rk, gs=gs)
    if check_reduced and not I.is_reduced(m):
        raise NotReducedClass("the form is not Witt-trivial at t = 0")
    m = reduce_to_exp2(m)
    if m.ring == "Zt+":
        return _classify_plus(m)
    return _classify_minus(m)


def witt_equal(m1, m2):
    if m1.ring != m2.ring:
        raise RingMismatch("forms over different rings")
    if m1.ring == "Z":
        return classify(m1) == classify(m2)
    d = F.form_sum(m1, F.form_neg(m2))
    if not I.is_reduced(d):
        return False
    return classify(d, check_reduced=False).is_zero()


def element_order(coord):
    if coord.ring == "Z":
        k = 1
        while not coord.scale(k).is_zero():
            k += 1
        return k
    for k in (1, 2, 4):
        if coord.scale(k).is_zero():
            return k
    raise AssertionError("coordinates are annihilated by 4")


def _subst_gf2(x, k):
    return P.gf2_subst(x, k)


def v_action(coord, k):
    """Verschiebung ``V_k`` on coordinates."""
    if k < 1:
        raise ValueError("Verschiebung index must be positive")
    if coord.ring == "Z":
        raise BadRing("no Verschiebung over Z")
    if coord.ring == "Zt-":
        if k % 2 == 0:
            raise EvenVerschiebungOnMinusRing(f"V_{k} does not respect t -> -t")
        return WittCoord("Zt-", c=_subst_gf2(coord.c, k))
    c2 = _subst_gf2(coord.c2, k) if k % 2 else 0
    return WittCoord("Zt+", c1=P.psubst(coord.c1, k), c2=c2)


# ---- explicit Lagrangians for even-type forms over Zt- ----


def _minus_value(m, vec):
    """``q`` of a F_2[t]-coordinate vector on an even-type exponent-2 form over Zt-."""
    num = m.q_num(tuple(P.from_gf2(c) for c in vec))
    return P.to_gf2(P.pdivexact(num, 2))


def _reduce_value(a, b):
    """``c`` with ``a + c^2 b + ev(c)`` of lower degree than ``a``; ``a, b`` in F_2[t^2]."""
    # c(t)^2 = c(t^2), so this is division in the variable t^2
    quo = P.gf2_divmod(a, b)[0]
    return P.gf2_even_odd(quo)[0]


def _plane_isotropic(p, g):
    """Primitive ``(x, y)`` with ``x^2 p + y^2 g + ev(x y) = 0``.

    Euclid on the two values: ``e -> e + c f`` changes ``q(e)`` to
    ``p + c^2 g + ev(c)``, which has smaller degree whenever ``deg p >= deg g``.
    The only fixed point with both values nonzero is ``p = g = 1``, whose
    Arf invariant at ``t = 0`` is odd.
    """
    e, f = (1, 0), (0, 1)
    while p and g:
        if p == g == 1:
            raise NotReducedClass("plane has odd Arf invariant at t = 0")
        if P.gf2_deg(p) >= P.gf2_deg(g):
            c = _reduce_value(p, g)
            p ^= P.gf2_mul(P.gf2_square(c), g) ^ I._ev_part(c)
            e = (e[0] ^ P.gf2_mul(c, f[0]), e[1] ^ P.gf2_mul(c, f[1]))
        else:
            c = _reduce_value(g, p)
            g ^= P.gf2_mul(P.gf2_square(c), p) ^ I._ev_part(c)
            f = (f[0] ^ P.gf2_mul(c, e[0]), f[1] ^ P.gf2_mul(c, e[1]))
    return e if not p else f


def even_minus_lagrangian(m):
    """Lagrangian of a reduced even-type exponent-2 form over ``Zt-``.

    Splits the form into hyperbolic planes, pairs up planes whose values at
    ``t = 0`` are both odd, then reduces each plane to an isotropic line.
    """
    if m.ring != "Zt-":
        raise BadRing("this construction is for forms over Zt-")
    if not is_even_type(m) or not m.module.is_free_exp2():
        raise NotEvenType("needs an exponent-2 form of even type")
    M = m.module
    lam = [[P.to_gf2(v) for v in row] for row in m._G]
    pairs = I.symplectic_basis(I.QuadForm(lam, [0] * len(lam), "Zt-"))
    planes = [[e, f] for e, f in pairs]
    odd = [pl for pl in planes if _minus_value(m, pl[0]) & _minus_value(m, pl[1]) & 1]
    if len(odd) % 2:
        raise NotReducedClass("the form is not Witt-trivial at t = 0")
    for a, b in zip(odd[::2], odd[1::2]):
        e, f = a
        e2, f2 = b
        a[:] = [[x ^ y for x, y in zip(e, e2)], f]
        b[:] = [e2, [x ^ y for x, y in zip(f, f2)]]
    gens = []
    for e, f in planes:
        p, g = _minus_value(m, e), _minus_value(m, f)
        x, y = _plane_isotropic(p, g)
        vec = [P.gf2_mul(x, a) ^ P.gf2_mul(y, b) for a, b in zip(e, f)]
        gens.append(tuple(P.from_gf2(c) for c in vec))
    L = MD.Submodule(M, gens)
    if not F.is_lagrangian(m, L):
        raise AssertionError("constructed submodule is not a Lagrangian")
    return L
