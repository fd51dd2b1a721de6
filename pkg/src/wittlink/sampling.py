"""Random forms for tests and demos.

Forms are built from named pieces and then scrambled by random changes of
generators, so every draw is valid by construction; each draw is still
validated before it is returned.
"""

import random

from . import forms as F
from . import modules as MD
from . import poly as P


def random_poly(rng: random.Random, deg, modulus=2, ring="Zt+", nonzero=False):
    while True:
        if ring == "Z":
            coeffs = [rng.randrange(modulus)]
        elif ring == "Zt-":
            coeffs = [rng.randrange(modulus) if i % 2 == 0 else 0 for i in range(deg + 1)]
        else:
            coeffs = [rng.randrange(modulus) for _ in range(deg + 1)]
        p = P.trim(coeffs)
        if p or not nonzero:
            return p


def random_gl(rng: random.Random, k, steps=None, deg=2):
    """Random invertible matrix over ``F_2[t]`` as bit masks."""
    A = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    if k < 2:
        return A
    for _ in range(steps if steps is not None else 2 * k):
        i, j = rng.sample(range(k), 2)
        c = rng.randrange(1, 1 << (deg + 1))
        A[i] = [a ^ P.gf2_mul(c, b) for a, b in zip(A[i], A[j])]
    rng.shuffle(A)
    return A


def scramble(m, rng: random.Random, deg=1):
    """Isometric copy of an exponent-2 form in a random basis."""
    M = m.module
    if not M.is_free_exp2() or M.rank < 2:
        return m
    A = random_gl(rng, M.rank, deg=deg)
    images = [tuple(P.from_gf2(c) for c in row) for row in A]
    return F.pullback(m, images, checks=5)


def constant_lift(m):
    """The form ``m`` evaluated at ``t = 0``, viewed again over ``m``'s ring."""
    m0 = F.evaluate_at(m, 0)
    M = MD.TorsionModule(m0.module.pieces, m.ring)
    G = [[(v, m0.n) for v in row] for row in m0._G]
    q = [(v, m0.n) for v in m0._q]
    return F.make_form(M, m0.epsilon, G, q, checks=0)


def make_reduced(m):
    """``m`` plus the negative of its constant part: Witt-trivial at ``t = 0``."""
    return F.form_sum(m, F.form_neg(constant_lift(m)))


def random_exp2_form(rng: random.Random, planes=2, deg=3, ring="Zt+", scrambled=True):
    parts = []
    for _ in range(planes):
        kind = rng.choice("NP")
        if kind == "N":
            p = random_poly(rng, deg, 4 if ring != "Zt-" else 2, ring)
            if ring == "Zt-":
                p = P.pscale(p, rng.choice((1, 3)))
        else:
            p = random_poly(rng, deg, 2, ring)
        g = random_poly(rng, deg, 2, ring)
        parts.append(F.build_template(kind, p, g, ring))
    m = F.form_sum(*parts)
    return scramble(m, rng) if scrambled else m


def random_reduced_exp2_form(rng: random.Random, planes=2, deg=3, ring="Zt+"):
    return scramble(make_reduced(random_exp2_form(rng, planes, deg, ring, scrambled=False)), rng)


def random_even_minus_form(rng: random.Random, planes=2, deg=4):
    """Reduced exponent-2 form of even type over ``Zt-``."""
    parts = []
    odd = 0
    for _ in range(planes):
        p = random_poly(rng, deg, 2, "Zt-")
        g = random_poly(rng, deg, 2, "Zt-")
        odd ^= P.peval(p, 0) % 2 & P.peval(g, 0) % 2
        parts.append(F.P_form(p, g, "Zt-"))
    if odd:
        parts.append(F.P_form(P.ONE, P.ONE, "Zt-"))
    return scramble(F.form_sum(*parts), rng)


def rank1_z4(u=P.ONE, w=P.ZERO, ring="Zt+"):
    """Form on ``Z/4[t]`` with ``b(1, 1) = u/4`` and ``q(1) = (u + 4w)/4``; ``u`` odd at 0."""
    M = MD.TorsionModule([MD.Cyclic(2)], ring)
    return F.make_form(M, 1, [[(P.trim(u), 2)]], [(P.padd(u, P.pscale(w, 4)), 2)], checks=20)


def hyperbolic_mp(p, epsilon=1, ring="Zt+"):
    """Split form on ``M(p) + M(p)``; the second copy is the dual of the first."""
    p = P.pmod(P.trim(p), 2)
    M = MD.TorsionModule([MD.MP(p), MD.MP(p)], ring)
    z = (P.ZERO, 0)
    half = ((1,), 1)
    # pairing of the first copy against the dual generators (Phi, T)
    top = [[(p, 2), half], [half, z]]
    e = epsilon
    G = [[z] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            num, k = top[i][j]
            G[i][2 + j] = (num, k)
            G[2 + j][i] = (P.pscale(num, e), k)
    return F.make_form(M, e, G, [z] * 4, checks=20)


def random_exp4_form(rng: random.Random, deg=2, ring="Zt+"):
    """Random exponent-4 form assembled from rank-one ``Z/4[t]`` pieces and split pieces."""
    parts = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(("z4", "z4", "hyp", "mp", "n"))
        if kind == "z4":
            u = P.padd((rng.choice((1, 3)),), P.pscale(P.pshift(random_poly(rng, deg, 2, ring), 1), 2))
            if ring == "Zt-":
                u = (rng.choice((1, 3)),)
            parts.append(rank1_z4(u, random_poly(rng, deg, 2, ring), ring))
        elif kind == "hyp":
            parts.append(F.build_template("hyperbolic", ring=ring, a=2))
        elif kind == "mp":
            parts.append(hyperbolic_mp(random_poly(rng, deg, 2, "Zt+", nonzero=True) or P.ONE, 1, ring)
                         if ring == "Zt+" else F.build_template("hyperbolic", ring=ring, a=2))
        else:
            parts.append(random_exp2_form(rng, 1, deg, ring))
    m = F.form_sum(*parts)
    if m.n < 2:
        m = F.form_sum(m, F.build_template("hyperbolic", ring=ring, a=2))
    return m


def random_skew_form(rng: random.Random, deg=2):
    """Skew form of exponent at most 4 with at most three generators per piece pair."""
    kind = rng.choice(("h1", "h2", "mp"))
    if kind == "h1":
        m = F.build_template("hyperbolic", ring="Zt+", epsilon=-1, a=1)
        return scramble(m, rng, deg)
    if kind == "h2":
        return F.build_template("hyperbolic", ring="Zt+", epsilon=-1, a=2)
    p = random_poly(rng, deg, 2, "Zt+", nonzero=True)
    if not P.pmod(p, 2):
        p = P.ONE
    return hyperbolic_mp(p, -1)


def random_submodule(rng: random.Random, M, count=2, deg=2):
    return MD.Submodule(M, [M.random_element(rng, deg) for _ in range(count)])


def brute_isotropic_count(m):
    """Number of isotropic vectors of a finite form over Z (for oracles)."""
    return sum(1 for x in F.module_elements(m.module) if not m.q_num(x))


__all__ = [
    "random_poly", "random_gl", "scramble", "constant_lift", "make_reduced",
    "random_exp2_form", "random_reduced_exp2_form", "random_even_minus_form",
    "rank1_z4", "hyperbolic_mp", "random_exp4_form", "random_skew_form",
    "random_submodule", "brute_isotropic_count",
]
