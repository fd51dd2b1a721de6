"""Witt-class invariants of quadratic linking forms and of forms over F_2[t].

Over the integers: rank parity and the Gauss sum in Z/8. Over F_2[t]: the
Arf invariant. For linking forms: the characteristic elements ``v0, v1``,
the ``Q`` values ``q(v_i)`` and the pair ``B = (B1, B2)`` on exponent-2
forms over ``Zt+``.
"""

import random
from dataclasses import dataclass

import numpy as np

from . import forms as F
from . import linalg as LA
from . import modules as MD
from . import poly as P
from .errors import (
    BadDomain,
    BadRing,
    ExponentTooHigh,
    ModuleTooLarge,
    NoCandidateMatch,
    NotEvenType,
    NotReducedClass,
    NotSymplectic,
)
from .ring import DyadicPoly, TateClass, arf_reduce, check_ring, one_plus_star

GAUSS_CAP = 1 << 22


# ---- exact cyclotomic arithmetic ----


@dataclass(frozen=True)
class CyclotomicInt:
    """Element of ``Z[x]/(x^N + 1)`` with ``N`` a power of two and ``x = exp(pi i / N)``."""

    coeffs: tuple

    @property
    def order(self):
        return len(self.coeffs)

    @classmethod
    def zero(cls, N):
        return cls((0,) * N)

    @classmethod
    def power(cls, e, N, scale=1):
        """``scale * x^e``; exponents are read modulo ``2N``."""
        e %= 2 * N
        c = [0] * N
        c[e % N] = -scale if e >= N else scale
        return cls(tuple(c))

    def __add__(self, other):
        return CyclotomicInt(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CyclotomicInt(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(tuple(other * a for a in self.coeffs))
        N = self.order
        out = [0] * N
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    k = i + j
                    if k >= N:
                        out[k - N] -= a * b
                    else:
                        out[k] += a * b
        return CyclotomicInt(tuple(out))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coeffs)


def _sqrt_two_power(r, N):
    """``sqrt(2)^r`` in the cyclotomic ring of order ``N >= 4``."""
    base = CyclotomicInt.power(0, N, 1 << (r // 2))
    if r % 2:
        root2 = CyclotomicInt.power(N // 4, N) - CyclotomicInt.power(3 * N // 4, N)
        base = base * root2
    return base


# ---- invariants over Z ----


def _require_integers(m):
    if m.ring != "Z":
        raise BadRing("rank and Gauss sum are defined for forms over Z")


def module_order_log2(M):
    return sum(pc.exponent for pc in M.pieces)


def rank_inv(m):
    """Parity of ``log_2 |M|`` for a form over Z."""
    _require_integers(m)
    return module_order_log2(m.module) % 2


def _piece_units(m):
    # one generator per piece: over Z, M(p) is cyclic of order 4 generated by 1
    M = m.module
    return [M.unit(i, P.ONE) for i in range(M.rank)]


def _integer_data(m):
    """Values ``q(g_i)`` and pairings ``b(g_i, g_j)`` on generators, as numerators over ``2^n``."""
    cs = [m.coeffs(u) for u in _piece_units(m)]
    k = len(cs)
    diag = [P.peval(m.q_coeffs(c), 0) for c in cs]
    cross = [[P.peval(m.b_coeffs(cs[i], cs[j]), 0) for j in range(k)] for i in range(k)]
    return diag, cross


def _orthogonal_blocks(cross, mod):
    """Generator index sets that pair trivially with each other."""
    k = len(cross)
    seen = [False] * k
    blocks = []
    for s in range(k):
        if seen[s]:
            continue
        seen[s] = True
        block, stack = [], [s]
        while stack:
            i = stack.pop()
            block.append(i)
            for j in range(k):
                if not seen[j] and cross[i][j] % (mod // 2):
                    seen[j] = True
                    stack.append(j)
        blocks.append(sorted(block))
    return blocks


def _q_table(mods, diag, cross, mod):
    """All values ``q(x)`` on a block, as numerators mod ``mod``."""
    k = len(mods)
    if k == 0:
        return np.zeros(1, dtype=np.int64)
    grids = np.indices(mods, dtype=np.int64).reshape(k, -1)
    acc = np.zeros(grids.shape[1], dtype=np.int64)
    for i in range(k):
        xi = grids[i]
        acc = (acc + xi * xi % mod * diag[i]) % mod
        for j in range(i + 1, k):
            if cross[i][j]:
                acc = (acc + 2 * cross[i][j] * (xi * grids[j] % mod)) % mod
    return acc


def _block_gauss(values, n, size_log):
    N = max(4, 1 << n)
    # q = num / 2^n, so exp(pi i q) = x^(num * N / 2^n)
    step = N >> n
    hist = np.bincount((values * step) % (2 * N), minlength=2 * N)
    total = [0] * N
    for e, count in enumerate(hist.tolist()):
        if count:
            if e >= N:
                total[e - N] -= count
            else:
                total[e] += count
    S = CyclotomicInt(tuple(total))
    root = _sqrt_two_power(size_log, N)
    for k in range(8):
        if (root * CyclotomicInt.power(k * N // 4, N) - S).is_zero():
            return k
    raise NoCandidateMatch("Gauss sum matches no eighth root of unity; is the form nonsingular?")


def gauss_sum(m, cap=GAUSS_CAP):
    """Gauss sum class ``k`` in Z/8 with ``sum exp(pi i q(x)) = sqrt|M| exp(2 pi i k / 8)``.

    ``cap`` bounds ``|M|``. The sum factors over orthogonal blocks of
    generators, so each block is enumerated separately.
    """
    _require_integers(m)
    M = m.module
    size_log = module_order_log2(M)
    if (1 << size_log) > cap:
        raise ModuleTooLarge(f"module of order 2^{size_log} exceeds the cap")
    diag, cross = _integer_data(m)
    mod = 1 << (m.n + 1)
    total = 0
    for block in _orthogonal_blocks(cross, mod):
        mods = [M.mods[i] for i in block]
        values = _q_table(mods, [diag[i] for i in block], [[cross[i][j] for j in block] for i in block], mod)
        log = sum(M.pieces[i].exponent for i in block)
        total += _block_gauss(values, m.n, log)
    if not M.rank:
        total = _block_gauss(_q_table([], [], [], mod), m.n, 0)
    return total % 8


def classify_over_Z(m, cap=GAUSS_CAP):
    return rank_inv(m), gauss_sum(m, cap)


# ---- quadratic forms over F_2[t] ----


class QuadForm:
    """Even quadratic form over ``F_2[t]`` on a free module with a chosen basis.

    ``lam`` is a symmetric bit-mask matrix and ``mu`` the values on the basis;
    elsewhere ``mu(a x + b y) = a^2 mu(x) + b^2 mu(y) + a b lam(x, y)``.
    ``ring`` records the integral ring the form came from.
    """

    def __init__(self, lam, mu, ring="Zt+"):
        self.ring = check_ring(ring)
        self.lam = [list(r) for r in lam]
        self.mu = list(mu)
        k = len(self.mu)
        if len(self.lam) != k or any(len(r) != k for r in self.lam):
            raise ValueError("lam must be square with one row per basis vector")
        if ring == "Z" and (any(v > 1 for v in self.mu) or any(v > 1 for r in self.lam for v in r)):
            raise BadRing("polynomial entries in a form over F_2")

    @property
    def rank(self):
        return len(self.mu)

    def pair(self, x, y):
        acc = 0
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.lam[i]
            for j, b in enumerate(y):
                if b and row[j]:
                    acc ^= P.gf2_mul(P.gf2_mul(a, b), row[j])
        return acc

    def value(self, x):
        acc = 0
        idx = [i for i, a in enumerate(x) if a]
        for i in idx:
            if self.mu[i]:
                acc ^= P.gf2_mul(P.gf2_square(x[i]), self.mu[i])
        for a, i in enumerate(idx):
            for j in idx[a + 1:]:
                if self.lam[i][j]:
                    acc ^= P.gf2_mul(P.gf2_mul(x[i], x[j]), self.lam[i][j])
        return acc

    def check_symplectic(self):
        k = self.rank
        for i in range(k):
            if self.lam[i][i]:
                raise NotSymplectic("pairing is not alternating")
            for j in range(k):
                if self.lam[i][j] != self.lam[j][i]:
                    raise NotSymplectic("pairing is not symmetric")
        if k:
            snf = LA.smith_normal_form(self.lam, k)
            if snf.rank < k or any(snf.D[i][i] != 1 for i in range(k)):
                raise NotSymplectic("pairing is not unimodular")

    def key(self):
        return self.ring, tuple(map(tuple, self.lam)), tuple(self.mu)

    def __eq__(self, other):
        return isinstance(other, QuadForm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        mu = [P.format_gf2(v) for v in self.mu]
        return f"QuadForm(ring={self.ring!r}, lam={self.lam}, mu={mu})"


def _ev_part(p):
    ev, _ = P.gf2_even_odd(p)
    return P.gf2_subst(ev, 2)


def alpha_push(F_form):
    """Linking form ``(M, lam/2, beta(mu))`` on copies of ``Z_2[t]``."""
    ring = F_form.ring
    k = F_form.rank
    M = MD.TorsionModule([MD.Cyclic(1)] * k, ring)
    G = [[(P.from_gf2(v), 1) for v in row] for row in F_form.lam]
    # beta([y]) = (y + y*)/2 keeps the even exponents over Zt-
    mu = [_ev_part(v) if ring == "Zt-" else v for v in F_form.mu]
    q = [(P.from_gf2(v), 0) for v in mu]
    return F.make_form(M, 1, G, q, checks=0)


def is_even_type(m):
    """``2 q = 0`` on a module with ``2 M = 0``."""
    if not m.module.is_free_exp2():
        return False
    for num in m._q:
        if any(c % 2 for c in num):
            return False
        if m.ring == "Zt-" and P.even_odd(num)[1]:
            return False
    return True


def alpha_pull(m):
    """Quadratic form over ``F_2[t]`` underlying an exponent-2 form of even type."""
    if m.epsilon != 1:
        raise NotEvenType("even type is defined for quadratic linking forms")
    if not m.module.is_free_exp2():
        raise NotEvenType("alpha_pull needs 2M = 0")
    if not is_even_type(m):
        raise NotEvenType("2q does not vanish")
    lam = [[P.to_gf2(v) for v in row] for row in m._G]
    mu = [P.to_gf2(P.pdivexact(v, 2)) for v in m._q]
    return QuadForm(lam, mu, m.ring)


def _as_quadform(f):
    if isinstance(f, QuadForm):
        return f
    return alpha_pull(f)


def _random_unimodular(k, rng, steps=None):
    A = LA.identity(k)
    for _ in range(steps if steps is not None else 3 * k):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i == j:
            continue
        c = rng.randrange(1, 8)
        A[i] = [a ^ P.gf2_mul(c, b) for a, b in zip(A[i], A[j])]
    order = list(range(k))
    rng.shuffle(order)
    return [A[i] for i in order]


def symplectic_basis(f, rng=None):
    """Hyperbolic pairs ``[(e, f), ...]`` as coordinate vectors over ``F_2[t]``.

    ``rng`` scrambles the starting basis by a random unimodular change.
    """
    f.check_symplectic()
    k = f.rank
    basis = LA.identity(k)
    if rng is not None and k:
        basis = _random_unimodular(k, rng)
    pairs = []
    while basis:
        e, rest = basis[0], basis[1:]
        row = [f.pair(e, b) for b in rest]
        if not rest or not any(row):
            raise NotSymplectic("no hyperbolic partner found")
        snf = LA.smith_normal_form([row], len(rest))
        if snf.D[0][0] != 1:
            raise NotSymplectic("pairing is not unimodular")
        # new vectors are the columns of V applied to rest
        new = []
        for j in range(len(rest)):
            v = [0] * k
            for i, b in enumerate(rest):
                c = snf.V[i][j]
                if c:
                    v = [a ^ P.gf2_mul(c, x) for a, x in zip(v, b)]
            new.append(v)
        partner = new[0]
        # snf.U is a 1x1 unit, so lam(e, partner) = 1 exactly
        others = []
        for w in new[1:]:
            c = f.pair(w, partner)
            if c:
                w = [a ^ P.gf2_mul(c, x) for a, x in zip(w, e)]
            others.append(w)
        pairs.append((e, partner))
        basis = others
    return pairs


def _arf_class(rep, ring):
    if ring == "Zt-":
        # classes over Zt- embed into those over F_2[t] by t^u -> t^(2u)
        return TateClass(P.gf2_subst(arf_reduce(rep, "Z2t"), 2), ring)
    return TateClass(arf_reduce(rep, "Z2t"), ring)


def arf_invariant(f, rng=None):
    """Arf invariant ``sum mu(e_i) mu(f_i)`` modulo ``{x^2 + x}``.

    Accepts a :class:`QuadForm` or an exponent-2 linking form of even type.
    """
    f = _as_quadform(f)
    total = 0
    for e, g in symplectic_basis(f, rng):
        total ^= P.gf2_mul(f.value(e), f.value(g))
    return _arf_class(total, f.ring)


def arf_reduced_rep(f, rng=None):
    return arf_invariant(f, rng).rep


# ---- form builders ----


def P2_map(p, ring="Zt+"):
    """The exponent-2 even form with refinement values ``(p, 1)``."""
    p = P.to_gf2(F._poly_arg(p))
    if ring == "Zt-" and P.gf2_even_odd(p)[1]:
        raise BadDomain("over Zt- the argument must have even exponents only")
    if ring == "Z" and p > 1:
        raise BadDomain("over Z the argument is a constant")
    return F.P_form(P.from_gf2(p), P.ONE, ring)


def Q0_map(p):
    """Form over ``F_2[t]`` (from ``Zt-``) with values ``(t p', t)`` where ``p = t^2 p'``.

    The refinement values are odd, so the result is a :class:`QuadForm`.
    """
    p = P.to_gf2(F._poly_arg(p))
    ev, od = P.gf2_even_odd(p)
    if od or ev & 1:
        raise BadDomain("argument must lie in t^2 F_2[t^2]")
    tp = p >> 1
    return QuadForm([[0, 1], [1, 0]], [tp, 0b10], "Zt-")


# ---- characteristic elements ----


@dataclass(frozen=True)
class CharElements:
    v0: tuple
    v1: tuple
    level: int


def _phi_on_generators(m, n):
    e = m.n
    out = []
    for k in range(len(m._G)):
        g = m._G[k][k]
        # 2^(n-1) b(g, g) = g * 2^(n-1) / 2^e
        shift = n - 1 - e
        if shift >= 0:
            out.append(0)
            continue
        num = g
        if shift < -1:
            raise ExponentTooHigh(f"level {n} is below the module exponent {e}")
        out.append(one_plus_star(DyadicPoly(num, 1, "R", m.ring)).rep)
    return out


def _split_phi(phi, ring):
    ev, od = P.gf2_even_odd(phi)
    if ring == "Zt+":
        return ev, od
    return ev, 0


def _solve_char(m, values):
    """The element ``v`` with ``2 b(v, g_l) = values[l]`` and ``2 v = 0``."""
    M = m.module
    K = len(m._G)
    e = m.n
    if not any(values):
        return M.zero()
    B = [[m._G[k][l] for k in range(K)] for l in range(K)]
    rhs = [P.pscale(P.from_gf2(v), 1 << (e - 1)) for v in values]
    sol = LA.solve_mod2k(B, rhs, e, K)
    if sol is None:
        raise ValueError("characteristic equation has no solution; the form is singular")
    return M.from_gen_coeffs(sol[0])


def char_elements(m, n=None):
    M = m.module
    e = m.n
    n = e if n is None else n
    if n < max(e, 1):
        raise ExponentTooHigh(f"2^{n} does not annihilate the module")
    if M.rank == 0:
        return CharElements(M.zero(), M.zero(), n)
    phi = _phi_on_generators(m, n)
    parts = [_split_phi(v, m.ring) for v in phi]
    v0 = _solve_char(m, [a for a, _ in parts])
    v1 = _solve_char(m, [b for _, b in parts])
    ce = CharElements(v0, v1, n)
    _verify_char(m, ce, phi)
    return ce


def _two_b(m, v, g):
    # {2} b(v, g) for v in the 2-torsion
    num = m.b_num(v, g)
    return P.to_gf2(P.pdivexact(num, 1 << (m.n - 1))) if m.n else 0


def _verify_char(m, ce, phi):
    M = m.module
    for k, g in enumerate(M.generators):
        a = _two_b(m, ce.v0, g)
        b = _two_b(m, ce.v1, g)
        rhs = P.gf2_square(a) ^ P.gf2_mul(0b10, P.gf2_square(b))
        if rhs != phi[k]:
            raise ValueError("characteristic element check failed")
        if M.scale((2,), ce.v0) != M.zero() or M.scale((2,), ce.v1) != M.zero():
            raise ValueError("characteristic element is not 2-torsion")


def Q_inv(m, n=None, i=0):
    """``q(v_i)``: a value mod ``(1+*)`` at level 1, a Tate class above."""
    ce = char_elements(m, n)
    v = ce.v0 if i == 0 else ce.v1
    val = m.eval_q(v)
    if ce.level == 1:
        return val
    return _as_tate(val, m.ring)


def _as_tate(val, ring):
    if val.denom_exp:
        raise NotReducedClass(f"value {val} is not integral")
    num = val.numerator
    if ring == "Zt-" and P.pmod(P.even_odd(num)[1], 2):
        raise NotReducedClass(f"value {val} is not self-conjugate")
    return TateClass(P.to_gf2(num), ring)


def is_reduced(m):
    """``m`` evaluated at ``t = 0`` is Witt-trivial over Z."""
    if m.ring == "Z":
        return rank_inv(m) == 0 and gauss_sum(m) == 0
    m0 = F.evaluate_at(m, 0)
    return rank_inv(m0) == 0 and gauss_sum(m0) == 0


def B_inv(m, check_reduced=True):
    """``(B1, B2)`` as bit masks for an exponent-2 form over ``Zt+``."""
    if m.ring != "Zt+":
        raise BadRing("B is defined over Zt+")
    if not m.module.is_free_exp2():
        raise ExponentTooHigh("B needs an exponent-2 form")
    if check_reduced and not is_reduced(m):
        raise NotReducedClass("the form is not Witt-trivial at t = 0")
    ce = char_elements(m, 1)
    q0 = _as_tate(m.eval_q(ce.v0), m.ring).rep
    q1 = _as_tate(m.eval_q(ce.v1), m.ring).rep
    b1 = q0 ^ P.gf2_mul(0b10, q1)
    od0 = P.gf2_even_odd(q0)[1]
    od1 = P.gf2_even_odd(q1)[1]
    b2 = P.gf2_square(P.gf2_mul(0b10, od1)) ^ P.gf2_mul(0b10, P.gf2_square(od0))
    return b1, b2


def invariant_report(m, gs_cap=GAUSS_CAP):
    """Dictionary of the invariants that apply to ``m``."""
    out = {}
    if m.ring == "Z":
        out["Rk"] = rank_inv(m)
        out["GS"] = gauss_sum(m, gs_cap)
    if m.module.is_free_exp2() and m.epsilon == 1:
        if is_even_type(m):
            out["Arf"] = str(arf_invariant(m))
        q = m.eval_q(char_elements(m, 1).v0)
        out["Q"] = {"n": 1, "i": 0, "value": str(q)}
        if m.ring == "Zt+" and is_reduced(m):
            b1, b2 = B_inv(m, check_reduced=False)
            out["B"] = [P.format_gf2(b1), P.format_gf2(b2)]
    elif m.epsilon == 1 and m.module.rank:
        n = m.n
        out["Q"] = {"n": n, "i": 0, "value": str(Q_inv(m, n, 0))}
    return out


def random_quadform(rng: random.Random, pairs, deg=3, ring="Zt+"):
    """Random form built from a random unimodular change of a hyperbolic basis."""
    k = 2 * pairs

    def rp():
        v = rng.randrange(1 << (deg + 1))
        if ring == "Zt-":
            v = P.gf2_subst(v & ((1 << ((deg + 2) // 2)) - 1), 2)
        if ring == "Z":
            v &= 1
        return v

    lam = [[0] * k for _ in range(k)]
    for i in range(pairs):
        lam[2 * i][2 * i + 1] = lam[2 * i + 1][2 * i] = 1
    base = QuadForm(lam, [rp() for _ in range(k)], ring)
    if ring == "Z":
        return base
    A = _random_unimodular(k, rng, steps=k)
    new_lam = [[base.pair(a, b) for b in A] for a in A]
    return QuadForm(new_lam, [base.value(a) for a in A], ring)
