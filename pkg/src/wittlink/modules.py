"""Length-one torsion modules, submodules, closure and quotients.

A module is an ordered list of pieces. ``Cyclic(a)`` is ``Z/2^a[t]`` and
``MP(p)`` is the submodule generated by ``p`` and ``2`` inside ``Z/4[t]``.
Elements are tuples holding one integer polynomial per piece, reduced
modulo ``2^a`` (respectively ``4``).

All module operations reduce to linear systems over ``Z/2^n[t]`` solved by
:func:`wittlink.linalg.solve_mod2k`.
"""

import random
from dataclasses import dataclass, field
from typing import Callable

from . import linalg as LA
from . import poly as P
from .errors import (
    BadRing,
    ExponentTooHigh,
    NotASubmodule,
    NotLengthOne,
    QuotientNotLengthOne,
)
from .ring import check_ring


@dataclass(frozen=True)
class Piece:
    kind: str
    a: int = 0
    p: tuple = ()

    @property
    def exponent(self):
        return self.a if self.kind == "cyclic" else 2

    @property
    def modulus(self):
        return 1 << self.exponent

    def to_json(self):
        if self.kind == "cyclic":
            return {"kind": "cyclic", "a": self.a}
        return {"kind": "Mp", "p": P.format_poly(self.p)}


def Cyclic(a):
    return Piece("cyclic", a=a)


def MP(p):
    if isinstance(p, str):
        p = P.parse_poly(p)
    return Piece("Mp", a=2, p=P.pmod(p, 2))


class TorsionModule:
    def __init__(self, pieces, ring="Zt+"):
        self.ring = check_ring(ring)
        self.pieces = tuple(pieces)
        for pc in self.pieces:
            if pc.kind == "cyclic":
                if pc.a < 1:
                    raise NotLengthOne(f"cyclic piece of order 2^{pc.a}")
            elif pc.kind == "Mp":
                if not P.pmod(pc.p, 2):
                    raise NotLengthOne("M(p) needs p with an odd coefficient")
                if ring == "Z" and len(pc.p) > 1:
                    raise BadRing("M(p) with nonconstant p over the integers")
            else:
                raise ValueError(f"unknown piece kind {pc.kind!r}")
        self.mods = tuple(pc.modulus for pc in self.pieces)
        self.exponent = max((pc.exponent for pc in self.pieces), default=0)
        gens, owner = [], []
        for i, pc in enumerate(self.pieces):
            if pc.kind == "cyclic":
                gens.append(self.unit(i, P.ONE))
                owner.append((i, "g"))
            else:
                gens.append(self.unit(i, pc.p))
                gens.append(self.unit(i, (2,)))
                owner.append((i, "phi"))
                owner.append((i, "tau"))
        self.generators = tuple(gens)
        self.gen_owner = tuple(owner)

    def __repr__(self):
        return f"TorsionModule({[pc.to_json() for pc in self.pieces]}, {self.ring!r})"

    def __eq__(self, other):
        return isinstance(other, TorsionModule) and (self.ring, self.pieces) == (other.ring, other.pieces)

    def __hash__(self):
        return hash((self.ring, self.pieces))

    @property
    def rank(self):
        return len(self.pieces)

    def is_free_exp2(self):
        return all(pc.kind == "cyclic" and pc.a == 1 for pc in self.pieces)

    def to_json(self):
        return {"ring": self.ring, "pieces": [pc.to_json() for pc in self.pieces]}

    def zero(self):
        return tuple(P.ZERO for _ in self.pieces)

    def unit(self, i, value=P.ONE):
        return tuple(P.pmod(value, pc.modulus) if j == i else P.ZERO
                     for j, pc in enumerate(self.pieces))

    def element(self, coords):
        """Canonicalize and validate a coordinate tuple."""
        if len(coords) != len(self.pieces):
            raise ValueError("wrong number of coordinates")
        out = []
        for c, pc in zip(coords, self.pieces):
            if isinstance(c, str):
                c = P.parse_poly(c)
            elif isinstance(c, int):
                c = P.trim([c])
            c = P.pmod(c, pc.modulus)
            if self.ring == "Z" and len(c) > 1:
                raise BadRing("polynomial coordinate over the integers")
            if pc.kind == "Mp" and P.gf2_divmod(P.to_gf2(c), P.to_gf2(pc.p))[1]:
                raise ValueError("coordinate outside M(p)")
            out.append(c)
        return tuple(out)

    def add(self, x, y):
        return tuple(P.pmod(P.padd(a, b), m) for a, b, m in zip(x, y, self.mods))

    def sub(self, x, y):
        return tuple(P.pmod(P.psub(a, b), m) for a, b, m in zip(x, y, self.mods))

    def neg(self, x):
        return tuple(P.pmod(P.pneg(a), m) for a, m in zip(x, self.mods))

    def scale(self, r, x):
        return tuple(P.pmod(P.pmul(r, a), m) for a, m in zip(x, self.mods))

    def combine(self, coeffs, vectors):
        return LA.combine(coeffs, vectors, self.mods)

    def to_gen_coeffs(self, x):
        """Coefficients over ``self.generators`` representing ``x``."""
        out = []
        for c, pc in zip(x, self.pieces):
            if pc.kind == "cyclic":
                out.append(c)
            else:
                a, r = P.gf2_divmod(P.to_gf2(c), P.to_gf2(pc.p))
                if r:
                    raise ValueError("coordinate outside M(p)")
                a = P.from_gf2(a)
                b = P.pmod(P.pdivexact(P.pmod(P.psub(c, P.pmul(a, pc.p)), 4), 2), 2)
                out.extend([a, b])
        return out

    def from_gen_coeffs(self, coeffs):
        return self.combine(coeffs, self.generators)

    def random_element(self, rng: random.Random, deg=3):
        out = []
        for pc in self.pieces:
            d = 0 if self.ring == "Z" else deg
            if pc.kind == "cyclic":
                out.append(P.trim(rng.randrange(pc.modulus) for _ in range(d + 1)))
            else:
                a = P.trim(rng.randrange(2) for _ in range(d + 1))
                b = P.trim(rng.randrange(2) for _ in range(d + 1))
                out.append(P.pmod(P.padd(P.pmul(a, pc.p), P.pscale(b, 2)), 4))
        return tuple(out)


def make_module(pieces, ring="Zt+"):
    return TorsionModule(pieces, ring)


def module_from_json(obj):
    pieces = []
    for item in obj["pieces"]:
        if item["kind"] == "cyclic":
            pieces.append(Cyclic(int(item["a"])))
        elif item["kind"] in ("Mp", "MP", "mp"):
            pieces.append(MP(P.parse_poly(item["p"])))
        else:
            raise ValueError(f"unknown piece kind {item['kind']!r}")
    return TorsionModule(pieces, obj.get("ring", "Zt+"))


def module_sum(m1, m2):
    if m1.ring != m2.ring:
        raise BadRing("direct sum of modules over different rings")
    return TorsionModule(m1.pieces + m2.pieces, m1.ring)


# ---- linear systems in the ambient coordinates ----


def _scaled_rows(M, vectors):
    """Matrix whose column ``k`` is ``vectors[k]``, rows scaled to modulus ``2^n``."""
    n = M.exponent
    rows = []
    for i, pc in enumerate(M.pieces):
        s = 1 << (n - pc.exponent)
        rows.append([P.pscale(v[i], s) for v in vectors])
    return rows


def solve_combination(M, vectors, x):
    """Find ``c`` with ``sum c_k vectors[k] = x`` in ``M``.

    Returns ``(particular, kernel_generators)`` or ``None``.
    """
    n = M.exponent
    if n == 0:
        return [P.ZERO] * len(vectors), []
    B = _scaled_rows(M, vectors)
    rhs = [P.pscale(c, 1 << (n - pc.exponent)) for c, pc in zip(x, M.pieces)]
    return LA.solve_mod2k(B, rhs, n, len(vectors))


def relations_of(M, vectors):
    """Generators of the module of ``c`` with ``sum c_k vectors[k] = 0``."""
    sol = solve_combination(M, vectors, M.zero())
    return sol[1]


# ---- submodules ----


def _hnf_gf2(rows, width):
    """Reduced row echelon (Hermite) form over F_2[t]; canonical for the span."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while rows and col < width:
        live = [r for r in rows if r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: r[col].bit_length())
            piv = live[0]
            for r in live[1:]:
                q = P.gf2_divmod(r[col], piv[col])[0]
                for j in range(width):
                    if piv[j]:
                        r[j] ^= P.gf2_mul(q, piv[j])
            live = [r for r in live if r[col]]
        piv = live[0]
        rows = [r for r in rows if r is not piv and any(r)]
        for r in out:
            if r[col]:
                q = P.gf2_divmod(r[col], piv[col])[0]
                for j in range(width):
                    if piv[j]:
                        r[j] ^= P.gf2_mul(q, piv[j])
        out.append(piv)
        col += 1
    return out


class Submodule:
    def __init__(self, ambient, generators):
        self.ambient = ambient
        self.generators = tuple(ambient.element(g) for g in generators)
        self._basis = None

    def __repr__(self):
        return f"Submodule({list(self.generators)})"

    @property
    def basis(self):
        if self._basis is None:
            self._basis = self._compute_basis()
        return self._basis

    def _compute_basis(self):
        M = self.ambient
        gens = [g for g in self.generators if any(g)]
        if M.is_free_exp2():
            rows = _hnf_gf2([[P.to_gf2(c) for c in g] for g in gens], M.rank)
            return tuple(tuple(P.from_gf2(c) for c in r) for r in rows)
        kept = []
        for g in gens:
            if not kept or solve_combination(M, kept, g) is None:
                kept.append(g)
        return tuple(kept)

    def is_zero(self):
        return not self.basis


def span(M, gens):
    return Submodule(M, gens)


def whole(M):
    return Submodule(M, M.generators)


def zero_submodule(M):
    return Submodule(M, [])


def membership(S, x):
    """Return ``(True, coefficients)`` if ``x`` lies in ``S``, else ``(False, None)``."""
    M = S.ambient
    x = M.element(x)
    gens = list(S.generators)
    if not any(x):
        return True, [P.ZERO] * len(gens)
    if not gens:
        return False, None
    sol = solve_combination(M, gens, x)
    if sol is None:
        return False, None
    return True, list(sol[0])


def contains(S, x):
    return membership(S, x)[0]


def is_contained(S1, S2):
    return all(contains(S2, g) for g in S1.basis)


def submodule_equal(S1, S2):
    if S1.ambient.is_free_exp2():
        return S1.basis == S2.basis
    return is_contained(S1, S2) and is_contained(S2, S1)


def submodule_sum(S1, S2):
    return Submodule(S1.ambient, S1.generators + S2.generators)


def closure(S):
    """Smallest colength-one submodule containing ``S``."""
    M = S.ambient
    n = M.exponent
    gens = [g for g in S.generators if any(g)]
    if n == 0:
        return Submodule(M, [])
    width = M.rank
    if M.is_free_exp2():
        if not gens:
            return Submodule(M, [])
        A = [[P.to_gf2(c) for c in g] for g in gens]
        snf = LA.smith_normal_form(A, width)
        rows = [[P.from_gf2(c) for c in snf.Vinv[i]] for i in range(snf.rank)]
        return Submodule(M, rows)
    rel = [tuple((pc.modulus,) if j == i else P.ZERO for j in range(width))
           for i, pc in enumerate(M.pieces)]
    V, d = LA.local_smith(gens + rel, width, n)
    mod = 1 << n
    B = []
    for i in range(width):
        row = []
        for m in M.generators:
            acc = P.ZERO
            for j in range(width):
                if m[j] and V[j][i]:
                    acc = P.padd(acc, P.pmul(m[j], V[j][i]))
            row.append(P.pmod(P.pscale(acc, 1 << (n - d[i])), mod))
        B.append(row)
    sol = LA.solve_mod2k(B, [P.ZERO] * width, n, len(M.generators))
    out = [M.from_gen_coeffs(c) for c in sol[1]]
    return Submodule(M, [x for x in out if any(x)])


def is_closed(S):
    return is_contained(closure(S), S)


def length_one_cyclic(relations, ring="Zt+"):
    """Whether ``R/(relations)`` has length one; the ideal must contain a power of 2."""
    rels = [P.parse_poly(r) if isinstance(r, str) else P.trim(r) for r in relations]
    powers = [r[0] for r in rels if len(r) == 1 and r[0] and (abs(r[0]) & (abs(r[0]) - 1)) == 0]
    if not powers:
        raise NotLengthOne("relation ideal contains no power of 2")
    n = min(abs(x) for x in powers).bit_length() - 1
    if n == 0:
        return True
    F = TorsionModule([Cyclic(n)], ring)
    I = Submodule(F, [(P.pmod(r, 1 << n),) for r in rels])
    return is_closed(I)


# ---- quotients ----


@dataclass
class Presentation:
    """``T/S`` presented as a module with coordinate maps.

    ``project`` sends an element of ``T`` (ambient coordinates) to quotient
    coordinates; ``section`` sends quotient coordinates back to a lift in ``T``.
    ``chain`` lists the bit-mask polynomials ``p_i`` of the ``M(p_i)`` pieces
    and ``free_rank`` the number of exponent-2 free pieces.
    """

    module: TorsionModule
    project: Callable
    section: Callable
    chain: list = field(default_factory=list)
    free_rank: int = 0


class _Layer:
    """``T/S`` when ``2T`` lies in ``S``: a free F_2[t]-module with a basis of lifts."""

    def __init__(self, M, tgens, sgens):
        self.M = M
        self.tgens = list(tgens)
        self.sgens = list(sgens)
        m = len(self.tgens)
        rel = relations_of(M, self.tgens + self.sgens) if self.tgens else []
        rows = [[P.to_gf2(c) for c in r[:m]] for r in rel]
        rows = [r for r in rows if any(r)]
        snf = LA.smith_normal_form(rows, m)
        if any(snf.D[i][i] != 1 for i in range(snf.rank)):
            raise QuotientNotLengthOne("quotient has torsion over F_2[t]")
        self.snf = snf
        self.rank0 = snf.rank
        self.dim = m - snf.rank
        self.lifts = [self.lift_coeffs(snf.Vinv[i]) for i in range(snf.rank, m)]

    def lift_coeffs(self, c):
        return self.M.combine([P.from_gf2(a) for a in c], self.tgens)

    def coords(self, x):
        sol = solve_combination(self.M, self.tgens + self.sgens, x)
        if sol is None:
            raise NotASubmodule("element outside the numerator submodule")
        c = [P.to_gf2(a) for a in sol[0][: len(self.tgens)]]
        cv = LA.gf2_matmul([c], self.snf.V)[0] if c else []
        return cv[self.rank0:]

    def element(self, coeffs):
        return self.M.combine([P.from_gf2(a) for a in coeffs], self.lifts)


def quotient_presentation(S, T):
    M = S.ambient
    if T.ambient != M:
        raise NotASubmodule("submodules of different modules")
    sgens = [g for g in S.generators if any(g)]
    tgens = [g for g in T.generators if any(g)]
    Tfull = Submodule(M, tgens)
    for g in sgens:
        if not contains(Tfull, g):
            raise NotASubmodule("S is not contained in T")
    Ssub = Submodule(M, sgens)

    def killed(k):
        return all(contains(Ssub, M.scale((1 << k,), g)) for g in tgens)

    e = 0
    while not killed(e):
        e += 1
        if e > 2:
            raise ExponentTooHigh("quotient exponent exceeds 4")
    if e == 0:
        Q = TorsionModule([], M.ring)
        return Presentation(Q, lambda x: (), lambda y: M.zero())
    if e == 1:
        layer = _Layer(M, tgens, sgens)
        Q = TorsionModule([Cyclic(1)] * layer.dim, M.ring)
        return Presentation(
            Q,
            lambda x: tuple(P.from_gf2(c) for c in layer.coords(x)),
            lambda y: layer.element([P.to_gf2(c) for c in y]),
            [],
            layer.dim,
        )
    # exponent four: T2 = {x in T : 2x in S}
    k0 = len(tgens)
    rel = relations_of(M, [M.scale((2,), g) for g in tgens] + sgens)
    t2gens = [M.combine(list(r[:k0]), tgens) for r in rel]
    t2gens = [g for g in t2gens if any(g)] + sgens
    top = _Layer(M, tgens, t2gens)
    bottom = _Layer(M, t2gens, sgens)
    X = [bottom.coords(M.scale((2,), phi)) for phi in top.lifts]
    k, l = top.dim, bottom.dim
    snf = LA.smith_normal_form(X, l)
    if snf.rank != k:
        raise QuotientNotLengthOne("multiplication by 2 is not injective on the top layer")
    phis = [M.combine([P.from_gf2(a) for a in snf.U[i]], top.lifts) for i in range(k)]
    taus = [M.combine([P.from_gf2(a) for a in snf.Vinv[i]], bottom.lifts) for i in range(l)]
    chain = [snf.D[i][i] for i in range(k)]
    pieces = [Cyclic(2) if d == 1 else MP(P.from_gf2(d)) for d in chain]
    pieces += [Cyclic(1)] * (l - k)
    Q = TorsionModule(pieces, M.ring)
    plist = [P.from_gf2(d) for d in chain]

    def project(x):
        a = top.coords(x)
        a2 = LA.gf2_matmul([a], snf.Uinv)[0] if k else []
        lift = M.combine([P.from_gf2(c) for c in a2], phis)
        b = bottom.coords(M.sub(x, lift))
        b2 = LA.gf2_matmul([b], snf.V)[0] if l else []
        out = []
        for i in range(k):
            out.append(P.pmod(P.padd(P.pmul(P.from_gf2(a2[i]), plist[i]),
                                     P.pscale(P.from_gf2(b2[i]), 2)), 4))
        out.extend(P.from_gf2(b2[i]) for i in range(k, l))
        return Q.element(out)

    def section(y):
        coeffs, vecs = [], []
        for i in range(k):
            a, r = P.gf2_divmod(P.to_gf2(y[i]), chain[i])
            if r:
                raise ValueError("coordinate outside M(p)")
            ap = P.from_gf2(a)
            b = P.pmod(P.pdivexact(P.pmod(P.psub(y[i], P.pmul(ap, plist[i])), 4), 2), 2)
            coeffs += [ap, b]
            vecs += [phis[i], taus[i]]
        for i in range(k, l):
            coeffs.append(P.pmod(y[i], 2))
            vecs.append(taus[i])
        return M.combine(coeffs, vecs)

    return Presentation(Q, project, section, chain, l - k)


def structure_decompose(M):
    """Decompose a module of exponent at most 4 as ``+ M(p_i) + Z_2[t]^j``."""
    if M.exponent > 2:
        raise ExponentTooHigh("structure decomposition needs 4M = 0")
    return quotient_presentation(zero_submodule(M), whole(M))
