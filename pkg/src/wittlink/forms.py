"""Quadratic linking forms ``(M, b, q)`` and the operations on them.

The pairing ``b`` is linear in the first argument and conjugate-linear in
the second; ``q`` satisfies ``q(rx) = r q(x) r*`` and
``q(x + y) = q(x) + q(y) + {1+*} b(x, y)``. Both are stored on module
generators only. Internally every value is kept as an integer polynomial
numerator over ``2^n`` where ``n`` is the module exponent.
"""

import itertools
import json
import random

from . import linalg as LA
from . import modules as MD
from . import poly as P
from .errors import (
    BadEvaluationPoint,
    BadTemplateParams,
    NotSubLagrangian,
    QuadraticIncompatible,
    RingMismatch,
    SearchSpaceTooLarge,
    Singular,
    SymmetryViolated,
    Unsupported,
)
from .ring import DyadicPoly, conj, reduce_numerator


def _as_value(v, ring):
    if isinstance(v, DyadicPoly):
        return v.numerator, v.denom_exp
    if isinstance(v, str):
        return P.parse_value(v)
    if isinstance(v, int):
        return P.trim([v]), 0
    if isinstance(v, tuple) and len(v) == 2 and isinstance(v[1], int) and isinstance(v[0], tuple):
        return v
    raise ValueError(f"cannot read value {v!r}")


class LinkingForm:
    """A quadratic (``epsilon = 1``) or skew (``epsilon = -1``) linking form."""

    def __init__(self, module, epsilon, gram, qvec, checks=100, seed=0):
        self.module = module
        self.ring = module.ring
        self.epsilon = epsilon
        if epsilon not in (1, -1):
            raise ValueError("epsilon must be 1 or -1")
        if epsilon == -1 and self.ring == "Zt-":
            raise Unsupported("skew forms over Zt- are not constructed")
        n = module.exponent
        self.n = n
        K = len(module.generators)
        if len(gram) != K or any(len(row) != K for row in gram) or len(qvec) != K:
            raise ValueError(f"expected {K} generators in gram and q")
        self._G = [[self._scale(v, "b") for v in row] for row in gram]
        if epsilon == 1:
            self._q = [self._qred(self._scale(v, "q")) for v in qvec]
        else:
            for v in qvec:
                if P.trim(_as_value(v, self.ring)[0]):
                    raise QuadraticIncompatible("skew forms carry the zero quadratic refinement")
            self._q = [P.ZERO] * K
        if checks is not None:
            self._validate(checks, seed)

    # ---- internal arithmetic ----

    def _scale(self, v, what):
        num, k = _as_value(v, self.ring)
        num = reduce_numerator(num, k, "R" if what == "b" else "1+*", self.ring)
        while k > 0 and all(c % 2 == 0 for c in num):
            num = tuple(c // 2 for c in num)
            k -= 1
        if self.ring == "Z" and len(num) > 1:
            raise RingMismatch("polynomial entry in a form over the integers")
        if k > self.n:
            raise QuadraticIncompatible(f"{what}-value {P.format_value(num, k)} has denominator above 2^{self.n}")
        num = P.pscale(num, 1 << (self.n - k))
        if what == "b":
            return P.pmod(num, 1 << self.n)
        return num

    def _qred(self, num):
        m = 1 << (self.n + 1)
        if self.ring != "Zt-":
            return P.pmod(num, m)
        return P.trim(c % m if i % 2 == 0 else c for i, c in enumerate(num))

    def _conj(self, a):
        return conj(a, self.ring)

    def b_coeffs(self, c, d):
        """Numerator of ``b(sum c_k g_k, sum d_l g_l)`` over ``2^n``."""
        acc = P.ZERO
        dbar = [self._conj(x) if x else P.ZERO for x in d]
        for k, ck in enumerate(c):
            if not ck:
                continue
            row = self._G[k]
            inner = P.ZERO
            for l, dl in enumerate(dbar):
                if dl and row[l]:
                    inner = P.padd(inner, P.pmul(row[l], dl))
            if inner:
                acc = P.padd(acc, P.pmul(ck, inner))
        return P.pmod(acc, 1 << self.n)

    def _one_plus_star(self, y):
        return self._qred(P.padd(y, self._conj(y)))

    def q_coeffs(self, c):
        """Numerator of ``q(sum c_k g_k)`` over ``2^n``, reduced mod (1+*)."""
        if self.epsilon == -1:
            return P.ZERO
        acc = P.ZERO
        idx = [k for k, ck in enumerate(c) if ck]
        for k in idx:
            if self._q[k]:
                acc = P.padd(acc, P.pmul(P.pmul(c[k], self._q[k]), self._conj(c[k])))
        for a, k in enumerate(idx):
            for l in idx[a + 1:]:
                g = self._G[k][l]
                if g:
                    y = P.pmul(P.pmul(c[k], g), self._conj(c[l]))
                    acc = P.padd(acc, P.padd(y, self._conj(y)))
        return self._qred(acc)

    # ---- public evaluation ----

    def coeffs(self, x):
        return self.module.to_gen_coeffs(self.module.element(x))

    def eval_b(self, x, y):
        return DyadicPoly(self.b_coeffs(self.coeffs(x), self.coeffs(y)), self.n, "R", self.ring)

    def eval_q(self, x):
        return DyadicPoly(self.q_coeffs(self.coeffs(x)), self.n, "1+*", self.ring)

    def b_num(self, x, y):
        return self.b_coeffs(self.coeffs(x), self.coeffs(y))

    def q_num(self, x):
        return self.q_coeffs(self.coeffs(x))

    @property
    def gram(self):
        return [[DyadicPoly(v, self.n, "R", self.ring) for v in row] for row in self._G]

    @property
    def qvec(self):
        return [DyadicPoly(v, self.n, "1+*", self.ring) for v in self._q]

    @property
    def rank(self):
        return self.module.rank

    def is_zero_module(self):
        return self.module.rank == 0

    # ---- validation ----

    def _relations(self):
        """Generator-coefficient vectors spanning the relations among generators."""
        K = len(self.module.generators)
        rels = []
        k = 0
        for pc in self.module.pieces:
            if pc.kind == "cyclic":
                v = [P.ZERO] * K
                v[k] = (pc.modulus,)
                rels.append(v)
                k += 1
            else:
                v = [P.ZERO] * K
                v[k], v[k + 1] = (2,), P.pneg(pc.p)
                rels.append(v)
                w = [P.ZERO] * K
                w[k + 1] = (2,)
                rels.append(w)
                k += 2
        return rels

    def _validate(self, checks, seed):
        K = len(self._G)
        mod = 1 << self.n
        for k in range(K):
            for l in range(K):
                want = P.pmod(P.pscale(self._conj(self._G[k][l]), self.epsilon), mod)
                if self._G[l][k] != want:
                    raise SymmetryViolated(f"b(g{l},g{k}) is not {self.epsilon:+d} times the conjugate of b(g{k},g{l})")
        units = [[P.ONE if i == j else P.ZERO for i in range(K)] for j in range(K)]
        for r in self._relations():
            for u in units:
                if self.b_coeffs(r, u):
                    raise QuadraticIncompatible("pairing does not respect the module relations")
            if self.q_coeffs(r):
                raise QuadraticIncompatible("quadratic refinement does not vanish on relations")
        if self.epsilon == 1:
            for k in range(K):
                if P.pmod(P.psub(self._q[k], self._G[k][k]), mod):
                    raise QuadraticIncompatible(f"[q(g{k})] differs from b(g{k},g{k})")
        else:
            for k in range(K):
                if self._G[k][k]:
                    raise QuadraticIncompatible("skew form with b(x,x) nonzero")
        self._check_nonsingular()
        if checks:
            rng = random.Random(seed)
            M = self.module
            for _ in range(checks):
                x, y = M.random_element(rng, 2), M.random_element(rng, 2)
                lhs = P.psub(self.q_num(M.add(x, y)), P.padd(self.q_num(x), self.q_num(y)))
                rhs = self._one_plus_star(self.b_num(x, y)) if self.epsilon == 1 else P.ZERO
                if self._qred(P.psub(lhs, rhs)):
                    raise QuadraticIncompatible("crossterm axiom fails")
                if self.epsilon == 1 and P.pmod(P.psub(self.q_num(x), self.b_num(x, x)), mod):
                    raise QuadraticIncompatible("[q(x)] differs from b(x,x)")

    def _check_nonsingular(self):
        M = self.module
        n = self.n
        K = len(M.generators)
        if K == 0:
            return
        if M.is_free_exp2():
            A = [[P.to_gf2(v) for v in row] for row in self._G]
            snf = LA.smith_normal_form(A, K)
            if snf.rank < K or any(snf.D[i][i] != 1 for i in range(K)):
                raise Singular("adjoint of b is not invertible")
            return
        # column l of the system is generator l; equation k reads b(x, g_k)
        B = [[self._G[l][k] for l in range(K)] for k in range(K)]
        sol = LA.solve_mod2k(B, [P.ZERO] * K, n, K)
        for c in sol[1]:
            if any(M.from_gen_coeffs(c)):
                raise Singular("adjoint of b has a kernel")
        for f in self._dual_generators():
            rhs = [P.pmod(P.pscale(self._conj(v), self.epsilon), 1 << n) for v in f]
            if LA.solve_mod2k(B, rhs, n, K) is None:
                raise Singular("adjoint of b is not surjective")

    def _dual_generators(self):
        M = self.module
        n = self.n
        K = len(M.generators)
        out = []
        k = 0
        for pc in M.pieces:
            if pc.kind == "cyclic":
                f = [P.ZERO] * K
                f[k] = (1 << (n - pc.a),)
                out.append(f)
                k += 1
            else:
                f = [P.ZERO] * K
                f[k], f[k + 1] = P.pscale(pc.p, 1 << (n - 2)), (1 << (n - 1),)
                g = [P.ZERO] * K
                g[k] = (1 << (n - 1),)
                out += [f, g]
                k += 2
        return out

    # ---- serialization ----

    def to_json_obj(self):
        obj = self.module.to_json()
        obj["epsilon"] = self.epsilon
        obj["b"] = [[str(v) for v in row] for row in self.gram]
        obj["q"] = [str(v) for v in self.qvec]
        return obj

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    def key(self):
        return (self.module, self.epsilon, tuple(map(tuple, self._G)), tuple(self._q))

    def __eq__(self, other):
        if not isinstance(other, LinkingForm):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LinkingForm({self.to_json()})"


def make_form(module, epsilon, gram, qvec, checks=100):
    return LinkingForm(module, epsilon, gram, qvec, checks=checks)


def _internal(module, epsilon, gram, qvec):
    return LinkingForm(module, epsilon, gram, qvec, checks=None)


def form_from_json(obj, checks=100):
    if isinstance(obj, str):
        obj = json.loads(obj)
    M = MD.module_from_json(obj)
    return LinkingForm(M, int(obj.get("epsilon", 1)), obj["b"], obj["q"], checks=checks)


# ---- named forms ----


def _poly_arg(p):
    if isinstance(p, str):
        return P.parse_poly(p)
    if isinstance(p, int):
        return P.trim([p])
    return P.trim(p)


def build_template(kind, p=P.ZERO, g=P.ZERO, ring="Zt+", epsilon=1, a=1):
    """Named forms: ``"N"``, ``"P"``, ``"rank1Z4"`` and ``"hyperbolic"``.

    ``N`` and ``P`` live on two copies of ``Z_2[t]`` with pairings
    ``[[p/2, 1/2], [1/2, 0]]`` and ``[[0, 1/2], [1/2, 0]]`` and refinement
    values ``(p/2, g)`` and ``(p, g)``. ``hyperbolic`` is the split form on
    two copies of ``Z/2^a[t]`` (skew when ``epsilon = -1``).
    """
    p, g = _poly_arg(p), _poly_arg(g)
    if ring == "Z" and (len(p) > 1 or len(g) > 1):
        raise BadTemplateParams("polynomial parameters over the integers")
    if ring == "Zt-" and (P.even_odd(p)[1] or P.even_odd(g)[1]) and kind in ("N", "P"):
        raise BadTemplateParams("parameters over Zt- must be fixed by the involution")
    half = ((1,), 1)
    zero = (P.ZERO, 0)
    if kind == "N":
        if epsilon != 1:
            raise BadTemplateParams("N is symmetric")
        M = MD.TorsionModule([MD.Cyclic(1)] * 2, ring)
        return make_form(M, 1, [[(p, 1), half], [half, zero]], [(p, 1), (g, 0)], checks=20)
    if kind == "P":
        if epsilon != 1:
            raise BadTemplateParams("P is symmetric")
        M = MD.TorsionModule([MD.Cyclic(1)] * 2, ring)
        return make_form(M, 1, [[zero, half], [half, zero]], [(p, 0), (g, 0)], checks=20)
    if kind == "rank1Z4":
        M = MD.TorsionModule([MD.Cyclic(2)], ring)
        return make_form(M, 1, [[((1,), 2)]], [((1,), 2)], checks=20)
    if kind == "hyperbolic":
        if a < 1:
            raise BadTemplateParams("hyperbolic exponent must be positive")
        M = MD.TorsionModule([MD.Cyclic(a)] * 2, ring)
        u = ((1,), a)
        return make_form(M, epsilon, [[zero, u], [((epsilon,), a), zero]], [zero, zero], checks=20)
    raise BadTemplateParams(f"unknown template {kind!r}")


def N_form(p, g, ring="Zt+"):
    return build_template("N", p, g, ring)


def P_form(p, g, ring="Zt+"):
    return build_template("P", p, g, ring)


def zero_form(ring="Zt+", epsilon=1):
    return _internal(MD.TorsionModule([], ring), epsilon, [], [])


# ---- sums, negatives, pullbacks ----


def form_sum(*forms):
    if not forms:
        raise ValueError("form_sum needs at least one form")
    ring, eps = forms[0].ring, forms[0].epsilon
    for m in forms[1:]:
        if m.ring != ring or m.epsilon != eps:
            raise RingMismatch("direct sum of forms over different rings or symmetries")
    pieces = []
    for m in forms:
        pieces.extend(m.module.pieces)
    M = MD.TorsionModule(pieces, ring)
    K = len(M.generators)
    G = [[(P.ZERO, 0)] * K for _ in range(K)]
    q = []
    off = 0
    for m in forms:
        k = len(m._G)
        for i in range(k):
            for j in range(k):
                G[off + i][off + j] = (m._G[i][j], m.n)
            q.append((m._q[i], m.n))
        off += k
    return _internal(M, eps, G, q)


def form_neg(m):
    G = [[(P.pneg(v), m.n) for v in row] for row in m._G]
    q = [(P.pneg(v), m.n) for v in m._q]
    return _internal(m.module, m.epsilon, G, q)


def form_multiple(m, k):
    """``k``-fold orthogonal sum (negative ``k`` uses the negative form)."""
    if k == 0:
        return zero_form(m.ring, m.epsilon)
    base = m if k > 0 else form_neg(m)
    return form_sum(*([base] * abs(k)))


def pullback(m, images, module=None, checks=None):
    """Form on ``module`` (default ``m.module``) whose generators map to ``images``.

    The caller is responsible for ``images`` defining an isomorphism; use
    ``checks`` to validate.
    """
    module = module or m.module
    cs = [m.coeffs(x) for x in images]
    G = [[(m.b_coeffs(a, b), m.n) for b in cs] for a in cs]
    q = [(m.q_coeffs(a), m.n) for a in cs]
    return LinkingForm(module, m.epsilon, G, q, checks=checks)


def same_data(m1, m2):
    return m1.key() == m2.key()


# ---- perp, Lagrangians, reductions ----


def perp(m, S):
    M = m.module
    K = len(M.generators)
    gens = [g for g in S.generators if any(g)]
    if not gens:
        return MD.whole(M)
    rows = []
    for s in gens:
        d = m.coeffs(s)
        dbar = [m._conj(x) for x in d]
        row = []
        for k in range(K):
            acc = P.ZERO
            for l in range(K):
                if dbar[l] and m._G[k][l]:
                    acc = P.padd(acc, P.pmul(m._G[k][l], dbar[l]))
            row.append(P.pmod(acc, 1 << m.n))
        rows.append(row)
    sol = LA.solve_mod2k(rows, [P.ZERO] * len(rows), m.n, K)
    out = [M.from_gen_coeffs(c) for c in sol[1]]
    return MD.Submodule(M, [x for x in out if any(x)])


def _isotropic(m, gens):
    cs = [m.coeffs(g) for g in gens]
    if any(m.q_coeffs(c) for c in cs):
        return False
    for i, a in enumerate(cs):
        for b in cs[i:]:
            if m.b_coeffs(a, b):
                return False
    return True


def is_lagrangian(m, L):
    gens = [g for g in L.generators if any(g)]
    if not _isotropic(m, gens):
        return False
    return MD.is_contained(perp(m, L), MD.Submodule(m.module, gens))


def is_sublagrangian(m, L):
    gens = [g for g in L.generators if any(g)]
    if not _isotropic(m, gens):
        return False
    return MD.is_closed(MD.Submodule(m.module, gens))


class Reduction:
    """Record of a reduction ``m -> m_S`` with its coordinate maps."""

    def __init__(self, form, source, S, T, presentation):
        self.form = form
        self.source = source
        self.S = S
        self.T = T
        self.presentation = presentation

    def project(self, x):
        return self.presentation.project(x)

    def section(self, y):
        return self.presentation.section(y)

    def pull_back(self, L):
        """Preimage in ``source`` of a submodule ``L`` of the reduced form."""
        gens = [self.section(y) for y in L.generators] + list(self.S.generators)
        return MD.Submodule(self.source.module, gens)

    def certificate(self):
        """Diagonal submodule of ``m_S + (-m)`` built from ``S^perp``."""
        big = form_sum(self.form, form_neg(self.source))
        gens = [self.project(x) + x for x in self.T.generators]
        return big, MD.Submodule(big.module, gens)

    def verify(self):
        big, L = self.certificate()
        return is_lagrangian(big, L)


def reduce_by(m, S, verify=False, check=True):
    """Reduce along a subLagrangian and keep the coordinate maps."""
    if check and not is_sublagrangian(m, S):
        raise NotSubLagrangian("submodule is not a closed isotropic submodule")
    T = perp(m, S)
    pres = MD.quotient_presentation(S, T)
    Q = pres.module
    lifts = [m.coeffs(pres.section(g)) for g in Q.generators]
    G = [[(m.b_coeffs(a, b), m.n) for b in lifts] for a in lifts]
    q = [(m.q_coeffs(a), m.n) for a in lifts]
    form = LinkingForm(Q, m.epsilon, G, q, checks=None)
    red = Reduction(form, m, S, T, pres)
    if verify and not red.verify():
        raise NotSubLagrangian("reduction certificate failed")
    return red


def sublagrangian_reduce(m, S, verify=True):
    return reduce_by(m, S, verify=verify).form


# ---- base change ----


def apply_verschiebung(m, k):
    from .errors import EvenVerschiebungOnMinusRing

    if k < 1:
        raise ValueError("Verschiebung index must be positive")
    if m.ring == "Zt-" and k % 2 == 0:
        raise EvenVerschiebungOnMinusRing(f"V_{k} does not respect t -> -t")
    pieces = [pc if pc.kind == "cyclic" else MD.MP(P.psubst(pc.p, k)) for pc in m.module.pieces]
    M = MD.TorsionModule(pieces, m.ring)
    G = [[(P.psubst(v, k), m.n) for v in row] for row in m._G]
    q = [(P.psubst(v, k), m.n) for v in m._q]
    return _internal(M, m.epsilon, G, q)


def evaluate_at(m, c):
    """Base change along ``t -> c`` (``c`` in ``{0, 1}``) to a form over Z."""
    if c not in (0, 1):
        raise BadEvaluationPoint("evaluation point must be 0 or 1")
    if m.ring == "Z":
        return m
    if m.ring == "Zt-" and c == 1:
        raise BadEvaluationPoint("t -> 1 does not respect t -> -t")
    pieces, keep = [], []
    k = 0
    for pc in m.module.pieces:
        if pc.kind == "cyclic":
            pieces.append(MD.Cyclic(pc.a))
            keep.append(k)
            k += 1
        else:
            if P.peval(pc.p, c) % 2:
                pieces.append(MD.Cyclic(2))
                keep.append(k)
            else:
                pieces += [MD.Cyclic(1), MD.Cyclic(1)]
                keep += [k, k + 1]
            k += 2
    M = MD.TorsionModule(pieces, "Z")
    n = m.n

    def ev(v):
        return P.trim([P.peval(v, c)])

    G = [[(ev(m._G[i][j]), n) for j in keep] for i in keep]
    q = [(ev(m._q[i]), n) for i in keep]
    return LinkingForm(M, m.epsilon, G, q, checks=0)


# ---- brute force and skew nullification ----


def module_elements(M, cap=1 << 20):
    """All elements of a finite module over Z."""
    if M.ring != "Z":
        raise Unsupported("element enumeration needs a module over Z")
    size = 1
    for mod in M.mods:
        size *= mod
    if size > cap:
        raise SearchSpaceTooLarge(f"module of order {size} exceeds the search cap")
    ranges = [range(mod) for mod in M.mods]
    return [tuple(P.trim([v]) for v in combo) for combo in itertools.product(*ranges)]


def _brute_over_Z(m, cap):
    M = m.module
    elems = module_elements(M, cap)
    order = len(elems)
    root = int(round(order ** 0.5))
    if root * root != order:
        return None
    iso = [x for x in elems if any(x) and not m.q_num(x)]

    def grow(current, gens, start):
        if len(current) == root:
            return gens
        for idx in range(start, len(iso)):
            x = iso[idx]
            if x in current:
                continue
            if any(m.b_num(x, g) for g in gens):
                continue
            new = set(current)
            frontier = list(current)
            # close under adding multiples of x
            mult = x
            multiples = []
            while any(mult) and mult not in multiples:
                multiples.append(mult)
                mult = M.add(mult, x)
            for y in frontier:
                for z in multiples:
                    new.add(M.add(y, z))
            if len(new) > root:
                continue
            found = grow(frozenset(new), gens + [x], idx + 1)
            if found is not None:
                return found
        return None

    gens = grow(frozenset([M.zero()]), [], 0)
    if gens is None:
        return None
    L = MD.Submodule(M, gens)
    return L if is_lagrangian(m, L) else None


def _vectors(M, bound):
    per = 1 << (bound + 1)
    for combo in itertools.product(range(per), repeat=M.rank):
        if any(combo):
            yield tuple(P.from_gf2(c) for c in combo)


def brute_lagrangian(m, bound=3, cap=1 << 20):
    """Exhaustive Lagrangian search: finite forms over Z, or free exponent-2 forms
    with generator coordinates of degree at most ``bound``."""
    if m.ring == "Z":
        return _brute_over_Z(m, cap)
    if not m.module.is_free_exp2():
        raise Unsupported("bounded search needs a free exponent-2 module")
    if m.is_zero_module():
        return MD.Submodule(m.module, [])
    count = (1 << ((bound + 1) * m.rank))
    if count > cap:
        raise SearchSpaceTooLarge(f"{count} candidate vectors exceed the cap {cap}")
    for v in _vectors(m.module, bound):
        if m.q_num(v) or m.b_num(v, v):
            continue
        S = MD.closure(MD.Submodule(m.module, [v]))
        red = reduce_by(m, S, check=False)
        inner = brute_lagrangian(red.form, bound, cap)
        if inner is not None:
            L = red.pull_back(inner)
            if is_lagrangian(m, L):
                return L
    return None


def skew_nullify(m, verify=True):
    """Chain of subLagrangian reductions taking a skew form to the zero form.

    Returns a list of ``(S, m_S)`` pairs.
    """
    if m.epsilon != -1:
        raise Unsupported("skew nullification needs a skew form")
    if m.ring != "Zt+":
        raise Unsupported("skew nullification is implemented over Zt+")
    chain = []
    cur = m
    while cur.module.rank:
        M = cur.module
        n = M.exponent
        if n >= 2:
            gens = [M.scale((1 << (n - 1),), g) for g in M.generators]
        else:
            gens = [M.generators[0]]
        S = MD.closure(MD.Submodule(M, gens))
        red = reduce_by(cur, S, verify=verify)
        chain.append((S, red.form))
        cur = red.form
    return chain
