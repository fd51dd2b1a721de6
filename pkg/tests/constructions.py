"""Explicit forms shared by several test files."""

from wittlink import forms as F
from wittlink import modules as MD
from wittlink import poly as P
from wittlink import sampling as S


def cyclic_form(a, u=P.ONE, w=P.ZERO, ring="Zt+"):
    """Rank one on ``Z/2^a[t]`` with ``b(1, 1) = u/2^a``, ``q(1) = (u + 2^a w)/2^a``."""
    M = MD.TorsionModule([MD.Cyclic(a)], ring)
    return F.make_form(M, 1, [[(u, a)]], [(P.padd(u, P.pscale(w, 1 << a)), a)], checks=20)


def lift_to_four(m, rng):
    """``m`` plus metabolic exponent-4 pieces: same Witt class, exponent 4."""
    u = (rng.choice((1, 3)),)
    z = S.rank1_z4(u, S.random_poly(rng, 2))
    return F.form_sum(m, F.build_template("hyperbolic", a=2), z, F.form_neg(z))


def exponent_eight_examples(rng):
    odd = (1, 3, 5, 7)
    u = P.padd((rng.choice(odd),), P.pscale(P.pshift(S.random_poly(rng, 2, 8), 1), 2))
    c8 = cyclic_form(3, u, S.random_poly(rng, 2, 2))
    return [
        c8,
        F.build_template("hyperbolic", a=3),
        F.form_sum(c8, S.random_exp4_form(rng)),
        F.form_sum(c8, cyclic_form(3, (rng.choice(odd),)), S.random_exp2_form(rng, 1)),
    ]
