import random

import pytest
from hypothesis import given

from constructions import cyclic_form, exponent_eight_examples
from strategies import gf2, gf2_even, seeds
from wittlink import forms as F
from wittlink import invariants as I
from wittlink import modules as MD
from wittlink import poly as P
from wittlink import sampling as S
from wittlink.cli import alpha_form
from wittlink.errors import BadDomain, BadRing, NotEvenType, NotReducedClass, NotSymplectic
from wittlink.ring import TateClass, arf_reduce

Z2 = MD.TorsionModule([MD.Cyclic(1)], "Z")


def gf2_mul(*xs):
    acc = 1
    for x in xs:
        acc = P.gf2_mul(acc, x)
    return acc


def small_z_form(rng):
    parts = []
    for _ in range(rng.randint(1, 2)):
        kind = rng.choice("cNP")
        if kind == "c":
            parts.append(cyclic_form(rng.randint(1, 3), (rng.choice((1, 3, 5, 7)),), (rng.randrange(2),), "Z"))
        else:
            parts.append(F.build_template(kind, (rng.randrange(2),), (rng.randrange(2),), "Z"))
    return F.form_sum(*parts)


def n_form(p, g, ring="Zt+"):
    return F.N_form(P.from_gf2(p), P.from_gf2(g), ring)


class TestIntegerInvariants:
    def test_rank(self):
        one = F.make_form(Z2, 1, [["1/2"]], ["1/2"])
        assert I.rank_inv(one) == 1
        assert I.rank_inv(F.form_sum(one, one)) == 0
        assert I.rank_inv(F.evaluate_at(alpha_form(), 1)) == 0

    def test_gauss_alpha_at_one(self):
        assert I.gauss_sum(F.evaluate_at(alpha_form(), 1)) == 2

    def test_gauss_hyperbolic(self):
        assert I.gauss_sum(F.P_form("0", "0", "Z")) == 0

    def test_gauss_rank_one(self):
        # 1 + i = sqrt(2) exp(2 pi i / 8)
        assert I.gauss_sum(F.make_form(Z2, 1, [["1/2"]], ["1/2"])) == 1
        assert I.gauss_sum(F.make_form(Z2, 1, [["1/2"]], ["3/2"])) == 7

    def test_gauss_cyclic_of_order_eight(self):
        # sum over Z/8 of exp(pi i x^2 / 8) = 2 sqrt(2) exp(2 pi i / 8)
        assert I.gauss_sum(cyclic_form(3, ring="Z")) == 1

    def test_module_too_large(self):
        from wittlink.errors import ModuleTooLarge
        with pytest.raises(ModuleTooLarge):
            I.gauss_sum(F.form_multiple(F.P_form("0", "0", "Z"), 3), cap=32)

    def test_polynomial_ring_rejected(self):
        with pytest.raises(BadRing):
            I.gauss_sum(F.N_form("t", "1"))

    @given(seeds())
    def test_additive(self, seed):
        rng = random.Random(seed)
        m1, m2 = small_z_form(rng), small_z_form(rng)
        both = F.form_sum(m1, m2)
        assert I.gauss_sum(both) == (I.gauss_sum(m1) + I.gauss_sum(m2)) % 8
        assert I.rank_inv(both) == (I.rank_inv(m1) + I.rank_inv(m2)) % 2

    @given(seeds())
    def test_vanish_on_metabolic(self, seed):
        rng = random.Random(seed)
        m = small_z_form(rng)
        h = F.form_sum(m, F.form_neg(m))
        assert (I.rank_inv(h), I.gauss_sum(h)) == (0, 0)


class TestAlphaTransfer:
    @given(gf2(4), gf2(4))
    def test_push_is_p(self, p, g):
        f = I.QuadForm([[0, 1], [1, 0]], [p, g])
        assert I.alpha_push(f) == F.P_form(P.from_gf2(p), P.from_gf2(g))

    @given(seeds())
    def test_round_trip(self, seed):
        rng = random.Random(seed)
        f = I.random_quadform(rng, 2, 3)
        assert I.alpha_pull(I.alpha_push(f)) == f

    @given(seeds())
    def test_round_trip_minus(self, seed):
        # odd exponents of a value cancel in (y + y*)/2, so only even parts survive
        f = I.random_quadform(random.Random(seed), 2, 3, "Zt-")
        back = I.alpha_pull(I.alpha_push(f))
        assert back.lam == f.lam
        assert [P.gf2_even_odd(v)[0] for v in back.mu] == [P.gf2_even_odd(v)[0] for v in f.mu]
        assert I.alpha_push(back) == I.alpha_push(f)

    def test_pull_rejects_odd(self):
        with pytest.raises(NotEvenType):
            I.alpha_pull(F.N_form("1", "1"))
        with pytest.raises(NotEvenType):
            I.alpha_pull(F.build_template("rank1Z4"))


class TestArf:
    @given(gf2(5), gf2(5))
    def test_standard_plane(self, p, g):
        assert I.arf_invariant(F.P_form(P.from_gf2(p), P.from_gf2(g))).rep == \
            arf_reduce(P.gf2_mul(p, g))

    def test_examples(self):
        assert I.arf_invariant(F.P_form("0", "0")).rep == 0
        assert I.arf_invariant(F.P_form("t", "t")) == TateClass(0b10)

    def test_not_symplectic(self):
        with pytest.raises(NotSymplectic):
            I.arf_invariant(I.QuadForm([[0, 0], [0, 0]], [0, 0]))
        with pytest.raises(NotSymplectic):
            I.arf_invariant(I.QuadForm([[0, 0b10], [0b10, 0]], [0, 0]))

    @given(seeds())
    def test_basis_independent(self, seed):
        rng = random.Random(seed)
        for ring in ("Zt+", "Zt-"):
            f = I.random_quadform(rng, 3, 3, ring)
            first = I.arf_invariant(f)
            for _ in range(10):
                assert I.arf_invariant(f, random.Random(rng.random())) == first

    @given(seeds())
    def test_additive(self, seed):
        rng = random.Random(seed)
        f1 = I.alpha_push(I.random_quadform(rng, 2))
        f2 = I.alpha_push(I.random_quadform(rng, 1))
        assert I.arf_invariant(F.form_sum(f1, f2)) == I.arf_invariant(f1) + I.arf_invariant(f2)

    @given(gf2(8))
    def test_inverts_p2(self, p):
        assert I.arf_invariant(I.P2_map(P.from_gf2(p))).rep == arf_reduce(p)

    @given(gf2_even(8))
    def test_inverts_p2_minus(self, p):
        assert I.arf_invariant(I.P2_map(P.from_gf2(p), "Zt-")).rep == arf_reduce(p, "Z2t2")


class TestBuilders:
    def test_p2(self):
        assert I.P2_map(1) == F.P_form("1", "1")
        assert I.P2_map("t^2", "Zt-") == F.P_form("t^2", "1", "Zt-")

    def test_q0(self):
        f = I.Q0_map("t^2")
        assert f.ring == "Zt-"
        assert f == I.QuadForm([[0, 1], [1, 0]], [0b10, 0b10], "Zt-")

    def test_domains(self):
        with pytest.raises(BadDomain):
            I.P2_map("t", "Zt-")
        with pytest.raises(BadDomain):
            I.Q0_map("t^3")
        with pytest.raises(BadDomain):
            I.Q0_map("1 + t^2")

    @given(gf2(3))
    def test_p2_of_artin_schreier_is_trivial(self, p):
        m = I.P2_map(P.from_gf2(P.gf2_square(p) ^ p))
        L = F.brute_lagrangian(m, bound=3)
        assert L is not None and F.is_lagrangian(m, L)

    @given(gf2(4))
    def test_p2_commutes_with_verschiebung(self, p):
        for k in (2, 3, 5):
            assert F.apply_verschiebung(I.P2_map(P.from_gf2(p)), k) == I.P2_map(P.from_gf2(P.gf2_subst(p, k)))


class TestCharacteristicElements:
    @given(gf2(6), gf2(4))
    def test_n_form(self, p, g):
        ev, od = P.gf2_even_odd(p)
        ce = I.char_elements(n_form(p, g), 1)
        assert ce.v0 == (P.ZERO, P.from_gf2(ev))
        assert ce.v1 == (P.ZERO, P.from_gf2(od))

    def test_rank1_z4(self):
        assert I.char_elements(F.build_template("rank1Z4"), 2).v0 == ((2,),)

    @given(seeds())
    def test_even_type_vanish(self, seed):
        m = I.alpha_push(I.random_quadform(random.Random(seed), 2))
        ce = I.char_elements(m, 1)
        assert ce.v0 == ce.v1 == m.module.zero()

    @given(seeds())
    def test_in_closure_of_top_layer(self, seed):
        rng = random.Random(seed)
        m = S.random_exp4_form(rng)
        M = m.module
        ce = I.char_elements(m, 2)
        top = MD.closure(MD.Submodule(M, [M.scale((2,), g) for g in M.generators]))
        assert MD.contains(top, ce.v0) and MD.contains(top, ce.v1)

    @pytest.mark.parametrize("p", [(1,), (1, 1), (0, 1, 1), (1, 0, 1, 1)])
    def test_irreducible_mp_in_twice_module(self, p):
        m = S.hyperbolic_mp(p)
        M = m.module
        ce = I.char_elements(m, 2)
        twice = MD.Submodule(M, [M.scale((2,), g) for g in M.generators])
        assert MD.contains(twice, ce.v0) and MD.contains(twice, ce.v1)


class TestQ:
    def test_rank1_z4(self):
        assert I.Q_inv(F.build_template("rank1Z4"), 2, 0) == TateClass(1)
        assert I.Q_inv(F.build_template("rank1Z4"), 2, 1) == TateClass(0)

    @given(gf2_even(8))
    def test_minus_n_forms(self, p):
        tp = p << 2
        val = I.Q_inv(n_form(tp, 1, "Zt-"), 1, 0)
        assert val.numerator == P.from_gf2(tp) and val.denom_exp == 0

    @given(seeds())
    def test_vanish_on_metabolic(self, seed):
        rng = random.Random(seed)
        m = S.random_exp4_form(rng)
        h = F.form_sum(m, F.form_neg(m))
        assert I.Q_inv(h, 2, 0).rep == 0 and I.Q_inv(h, 2, 1).rep == 0

    @given(seeds())
    def test_exponent_four(self, seed):
        rng = random.Random(seed)
        for ring in ("Zt+", "Zt-"):
            m = S.random_exp4_form(rng, ring=ring)
            assert I.Q_inv(m, 2, 1).rep == 0
            assert I.Q_inv(m, 2, 0).rep in (0, 1)

    @given(seeds())
    def test_additive(self, seed):
        rng = random.Random(seed)
        m1, m2 = S.random_exp4_form(rng), S.random_exp4_form(rng)
        both = F.form_sum(m1, m2)
        assert I.Q_inv(both, 2, 0) == I.Q_inv(m1, 2, 0) + I.Q_inv(m2, 2, 0)

    @given(seeds())
    def test_exponent_eight_vanishes(self, seed):
        rng = random.Random(seed)
        for m in exponent_eight_examples(rng):
            for i in (0, 1):
                assert I.Q_inv(m, 3, i).rep == 0


class TestB:
    @given(gf2(5), gf2(5))
    def test_n_form(self, p, g):
        p <<= 1
        od = P.gf2_even_odd(g)[1]
        assert I.B_inv(n_form(p, g)) == (P.gf2_mul(p, g), gf2_mul(P.gf2_square(od), 0b10, p))

    @given(gf2(5))
    def test_generator_pair(self, p):
        tp = p << 1
        assert I.B_inv(n_form(tp, 1)) == (tp, 0)
        m = F.form_sum(n_form(1, tp), F.form_neg(n_form(0b10, p)))
        assert I.B_inv(m) == (0, tp)

    def test_unreduced(self):
        with pytest.raises(NotReducedClass):
            I.B_inv(F.N_form("1", "1"))
        with pytest.raises(BadRing):
            I.B_inv(F.N_form("t^2", "1", "Zt-"))

    @given(seeds())
    def test_additive_and_vanishing(self, seed):
        rng = random.Random(seed)
        m1 = S.random_reduced_exp2_form(rng)
        m2 = S.random_reduced_exp2_form(rng)
        b1, b2 = I.B_inv(m1), I.B_inv(m2)
        assert I.B_inv(F.form_sum(m1, m2)) == (b1[0] ^ b2[0], b1[1] ^ b2[1])
        assert I.B_inv(F.form_sum(m1, F.form_neg(m1))) == (0, 0)


class TestReport:
    def test_order_four_class(self):
        rep = I.invariant_report(alpha_form())
        assert rep["B"] == ["t", "t"] and rep["Q"]["n"] == 1
        assert I.invariant_report(F.evaluate_at(alpha_form(), 1))["GS"] == 2

    def test_n_t_1(self):
        rep = I.invariant_report(F.N_form("t", "1"))
        assert rep["B"] == ["t", "0"]
        assert "Arf" not in rep and "GS" not in rep

    def test_even_type(self):
        assert I.invariant_report(F.P_form("t", "t"))["Arf"] == "t"
