import pytest

from wittlink import assembly as A
from wittlink import classifier as C
from wittlink import forms as F
from wittlink.cli import alpha_form
from wittlink.errors import BadSignOrder

SIGNS = [(e1, e2) for e1 in (1, -1) for e2 in (1, -1)]
ORDER_FOUR = ("4", "2V2-2")


class TestUnil:
    def test_examples(self):
        assert str(A.unil_value(2, "+", "+")) == "V/<2, V2-1>"
        assert A.unil_value(0, "+", "+").is_zero()
        assert str(A.unil_value(3, "+", "+")) == "V/<4, 2V2-2> + sum_{i>=0} V/<2, V2>"
        assert str(A.unil_value(0, "-", "+")) == "Vod/<2>"

    @pytest.mark.parametrize("n", range(8))
    @pytest.mark.parametrize("signs", SIGNS)
    def test_periodic(self, n, signs):
        assert A.unil_value(n, *signs) == A.unil_value(n + 4, *signs)

    @pytest.mark.parametrize("n", range(4))
    def test_sign_flip_shifts_by_two(self, n):
        assert A.unil_value(n, -1, -1) == A.unil_value(n + 2, 1, 1)

    @pytest.mark.parametrize("n", range(4))
    def test_swap(self, n):
        assert A.unil_value(n, -1, 1) == A.unil_value(n, 1, -1)

    def test_json(self):
        obj = A.unil_value(3, 1, 1).to_json_obj()
        assert obj["summands"][0] == {"kind": "V-quot", "algebra": "V", "ideal": ["4", "2V2-2"], "mult": 1}
        assert obj["summands"][1]["mult"] == "inf" and obj["summands"][1]["index_from"] == 0

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            A.unil_value(0, "x", 1)

    def test_order_four_cross_check(self):
        # an order-4 Witt class exists exactly where the descriptor carries V/<4, 2V2-2>
        order = C.element_order(C.classify(alpha_form()))
        assert order == 4
        for n in range(4):
            for signs in SIGNS:
                has = A.unil_value(n, *signs).has_ideal(ORDER_FOUR)
                assert has == (n % 4 == 3 and signs == (1, 1) or n % 4 == 1 and signs == (-1, -1))

    def test_second_generator_order_two(self):
        b = F.form_sum(F.N_form("1", "t"), F.form_neg(F.N_form("t", "1")))
        assert C.element_order(C.classify(b)) == 2
        assert A.unil_value(3, 1, 1).has_ideal(("2", "V2"))


class TestDihedral:
    def test_exceptional(self):
        d = A.l_group_dihedral(1, -1, -1)
        assert d == A.unil_value(3, 1, 1) + A.l_integers(0)
        assert str(d) == "V/<4, 2V2-2> + sum_{i>=0} V/<2, V2> + Z"

    def test_general(self):
        d = A.l_group_dihedral(2, 1, 1)
        assert str(d) == "L~_2(Z[Z2],+) + L_2(Z[Z2],+) + V/<2, V2-1>"

    def test_mixed(self):
        d = A.l_group_dihedral(0, -1, 1)
        assert len(d.summands) == 3
        assert d.summands[2] == A.vquot("Vod", "2")
        assert [a.kind for a in d.summands[:2]] == ["symbolic", "symbolic"]

    def test_sign_order(self):
        with pytest.raises(BadSignOrder):
            A.l_group_dihedral(0, 1, -1)

    @pytest.mark.parametrize("n", range(4))
    def test_atoms_are_known_or_symbolic(self, n):
        for e1, e2 in [(-1, -1), (-1, 1), (1, 1)]:
            for a in A.l_group_dihedral(n, e1, e2).summands:
                assert a.kind in ("V-quot", "symbolic", "Z", "Z2")


class TestLaurent:
    def test_examples(self):
        assert str(A.l_laurent(0, "+")) == "(Z)^2"
        assert str(A.l_laurent(2, "+")) == "(Z2)^2 + (V/<2, V2-1>)^2"
        assert str(A.l_laurent(0, "-")) == "Z + Z2 + (Vod/<2>)^2"

    def test_twisted_is_flagged(self):
        assert A.l_laurent(1, "-").notes
        assert not A.l_laurent(1, "+").notes

    def test_odd_degrees(self):
        d = A.l_laurent(3, "+")
        assert d.has_ideal(ORDER_FOUR)
        assert str(A.l_laurent(1, "+")) == "0"

    @pytest.mark.parametrize("n", range(4))
    def test_periodic(self, n):
        for s in "+-":
            assert A.l_laurent(n, s) == A.l_laurent(n + 4, s)


class TestDescriptor:
    def test_merges_multiplicities(self):
        d = A.GroupDescriptor.of([A.z2(), A.z2(), A.integers(0)])
        assert str(d) == "(Z2)^2"

    def test_infinite_absorbs(self):
        v = A.vquot("V", "2", "V2", mult=A.INF)
        d = A.GroupDescriptor.of([v]) + A.GroupDescriptor.of([A.vquot("V", "2", "V2")])
        assert d.summands[0].mult == A.INF

    def test_zero(self):
        assert str(A.ZERO) == "0"
        assert A.ZERO.to_json_obj() == {"summands": []}
