import random

import pytest
from hypothesis import given

from strategies import seeds
from wittlink import modules as MD
from wittlink import poly as P
from wittlink.errors import BadRing, ExponentTooHigh, NotASubmodule, NotLengthOne

ZT = "Zt+"


def free2(k=2, ring=ZT):
    return MD.TorsionModule([MD.Cyclic(1)] * k, ring)


def random_module(rng):
    choices = [[MD.Cyclic(1)] * 2, [MD.Cyclic(1)] * 3, [MD.Cyclic(2)], [MD.Cyclic(2), MD.Cyclic(1)],
               [MD.MP((1, 1))], [MD.MP((1, 0, 1)), MD.Cyclic(1)], [MD.Cyclic(2), MD.Cyclic(2)]]
    return MD.TorsionModule(rng.choice(choices), ZT)


class TestConstruction:
    def test_free_rank_two(self):
        M = free2()
        assert M.rank == 2 and M.exponent == 1 and M.is_free_exp2()

    def test_mp(self):
        M = MD.TorsionModule([MD.MP("1 + t")], ZT)
        assert M.exponent == 2
        phi, tau = M.generators
        assert phi == ((1, 1),) and tau == ((2,),)
        # 2 phi = p tau
        assert M.scale((2,), phi) == M.scale(P.pmod((1, 1), 2), tau)

    def test_cyclic_over_integers(self):
        M = MD.TorsionModule([MD.Cyclic(2)], "Z")
        assert M.mods == (4,)

    def test_zero_module(self):
        M = MD.TorsionModule([], ZT)
        assert M.rank == 0 and M.exponent == 0

    def test_rejections(self):
        with pytest.raises(NotLengthOne):
            MD.TorsionModule([MD.MP((2,))], ZT)
        with pytest.raises(NotLengthOne):
            MD.TorsionModule([MD.Cyclic(0)], ZT)
        with pytest.raises(BadRing):
            MD.TorsionModule([MD.MP((1, 1))], "Z")
        with pytest.raises(BadRing):
            MD.TorsionModule([MD.Cyclic(1)], "Zq")

    def test_element_canonicalization(self):
        M = MD.TorsionModule([MD.Cyclic(2), MD.MP((1, 1))], ZT)
        assert M.element(["5 + t", "3 + 3t"]) == ((1, 1), (3, 3))
        with pytest.raises(ValueError):
            M.element([0, "1"])

    def test_json_round_trip(self):
        M = MD.TorsionModule([MD.Cyclic(2), MD.MP((1, 0, 1))], "Zt-")
        assert MD.module_from_json(M.to_json()) == M


class TestLengthOneCatalogue:
    @pytest.mark.parametrize("rels, ok", [
        (["2"], True),
        (["4"], True),
        (["4", "2t"], False),
        (["4", "2 + 2t"], False),
        (["4", "2t + 2"], False),
        (["2", "t"], False),
        (["4", "1 + t"], False),
        (["4", "8t"], True),
        (["8", "4t"], False),
    ])
    def test_cyclic_quotients(self, rels, ok):
        assert MD.length_one_cyclic(rels) is ok

    def test_needs_power_of_two(self):
        with pytest.raises(NotLengthOne):
            MD.length_one_cyclic(["t"])

    @pytest.mark.parametrize("p", ["1", "t + 1", "t", "1 + t + t^3"])
    def test_mp_pieces_pass(self, p):
        M = MD.TorsionModule([MD.MP(p)], ZT)
        assert MD.is_closed(MD.zero_submodule(M))


class TestMembership:
    def test_multiple(self):
        M = free2()
        S = MD.Submodule(M, [((0, 1), ())])
        ok, coeffs = MD.membership(S, ((0, 0, 1), ()))
        assert ok and P.pmod(coeffs[0], 2) == (0, 1)

    def test_not_member(self):
        M = free2()
        S = MD.Submodule(M, [((0, 1), ())])
        assert MD.membership(S, ((1,), ())) == (False, None)

    def test_exponent_four(self):
        M = MD.TorsionModule([MD.Cyclic(2)], ZT)
        S = MD.Submodule(M, [((2,),)])
        ok, coeffs = MD.membership(S, ((0, 2),))
        assert ok and P.pmod(coeffs[0], 2) == (0, 1)

    @given(seeds())
    def test_generators_are_members(self, seed):
        rng = random.Random(seed)
        M = random_module(rng)
        gens = [M.random_element(rng, 2) for _ in range(2)]
        S = MD.Submodule(M, gens)
        x = M.add(M.scale((0, 1), gens[0]), gens[1])
        ok, c = MD.membership(S, x)
        assert ok
        assert M.combine(c, list(S.generators)) == x


class TestClosure:
    def test_free_example(self):
        M = free2()
        C = MD.closure(MD.Submodule(M, [((0, 1), ())]))
        assert MD.submodule_equal(C, MD.Submodule(M, [((1,), ())]))

    def test_cyclic_example(self):
        M = MD.TorsionModule([MD.Cyclic(2)], ZT)
        C = MD.closure(MD.Submodule(M, [((0, 2),)]))
        assert MD.submodule_equal(C, MD.Submodule(M, [((2,),)]))

    @given(seeds())
    def test_closure_properties(self, seed):
        rng = random.Random(seed)
        M = random_module(rng)
        S = MD.Submodule(M, [M.random_element(rng, 2) for _ in range(rng.randint(1, 2))])
        C = MD.closure(S)
        assert MD.is_contained(S, C)
        assert MD.submodule_equal(MD.closure(C), C)
        assert MD.is_closed(C)
        # the quotient by a closed submodule has length one
        MD.quotient_presentation(C, MD.whole(M))
        bigger = MD.submodule_sum(S, MD.Submodule(M, [M.random_element(rng, 2)]))
        assert MD.is_contained(C, MD.closure(bigger))

    @given(seeds())
    def test_saturation(self, seed):
        # x with t x in the closure lies in the closure
        rng = random.Random(seed)
        M = random_module(rng)
        x = M.random_element(rng, 2)
        C = MD.closure(MD.Submodule(M, [M.scale((1, 1), x)]))
        assert MD.contains(C, x)


class TestStructure:
    def test_cyclic_four_is_m1(self):
        pres = MD.structure_decompose(MD.TorsionModule([MD.Cyclic(2)], ZT))
        assert pres.chain == [1] and pres.free_rank == 0

    def test_mp_identity(self):
        pres = MD.structure_decompose(MD.TorsionModule([MD.MP("1 + t")], ZT))
        assert pres.chain == [0b11] and pres.free_rank == 0

    def test_free(self):
        pres = MD.structure_decompose(free2())
        assert pres.chain == [] and pres.free_rank == 2

    def test_exponent_cap(self):
        with pytest.raises(ExponentTooHigh):
            MD.structure_decompose(MD.TorsionModule([MD.Cyclic(3)], ZT))

    def test_round_trip_and_chain(self):
        rng = random.Random(7)
        for _ in range(40):
            M = random_module(rng)
            pres = MD.structure_decompose(M)
            for a, b in zip(pres.chain, pres.chain[1:]):
                assert P.gf2_divmod(b, a)[1] == 0
            for _ in range(25):
                x = M.random_element(rng, 3)
                assert pres.section(pres.project(x)) == x
                y = pres.module.random_element(rng, 3)
                assert pres.project(pres.section(y)) == y


class TestQuotients:
    def test_free_by_line(self):
        M = free2()
        pres = MD.quotient_presentation(MD.Submodule(M, [((1,), ())]), MD.whole(M))
        assert pres.module.pieces == (MD.Cyclic(1),)

    def test_cyclic_by_two(self):
        M = MD.TorsionModule([MD.Cyclic(2)], ZT)
        pres = MD.quotient_presentation(MD.Submodule(M, [((2,),)]), MD.whole(M))
        assert pres.module.pieces == (MD.Cyclic(1),)

    def test_equal(self):
        M = free2()
        S = MD.Submodule(M, [((1,), ())])
        assert MD.quotient_presentation(S, S).module.rank == 0

    def test_not_contained(self):
        M = free2()
        with pytest.raises(NotASubmodule):
            MD.quotient_presentation(MD.whole(M), MD.Submodule(M, [((1,), ())]))
