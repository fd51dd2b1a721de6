"""Symbolic L-group and UNil descriptors.

Descriptors are normalized lists of atoms: quotients of the Verschiebung
algebra ``V`` (or its odd part ``Vod``) by explicit ideals, the groups ``Z``
and ``Z2``, and named symbolic groups whose values are not computed here.
"""

from dataclasses import dataclass, field

from .errors import BadSignOrder

INF = "inf"


@dataclass(frozen=True)
class Atom:
    kind: str
    algebra: str = ""
    ideal: tuple = ()
    name: str = ""
    mult: object = 1
    index_from: int = 0

    def to_json_obj(self):
        out = {"kind": self.kind}
        if self.kind == "V-quot":
            out["algebra"] = self.algebra
            out["ideal"] = list(self.ideal)
        if self.kind == "symbolic":
            out["name"] = self.name
        out["mult"] = self.mult
        if self.mult == INF:
            out["index_from"] = self.index_from
        return out

    def _base(self):
        return (self.kind, self.algebra, self.ideal, self.name, self.index_from)


def _add_mult(a, b):
    return INF if INF in (a, b) else a + b


def _times(m, k):
    return INF if m == INF else m * k


@dataclass(frozen=True)
class GroupDescriptor:
    summands: tuple = ()
    notes: tuple = field(default=(), compare=False)

    @classmethod
    def of(cls, atoms, notes=()):
        merged = {}
        order = []
        for a in atoms:
            if a is None or a.kind == "zero" or a.mult == 0:
                continue
            key = a._base()
            if key in merged:
                merged[key] = _add_mult(merged[key], a.mult)
            else:
                merged[key] = a.mult
                order.append((key, a))
        out = [Atom(a.kind, a.algebra, a.ideal, a.name, merged[key], a.index_from) for key, a in order]
        return cls(tuple(out), tuple(notes))

    def __add__(self, other):
        return GroupDescriptor.of(self.summands + other.summands, self.notes + other.notes)

    def times(self, k):
        return GroupDescriptor.of([Atom(a.kind, a.algebra, a.ideal, a.name, _times(a.mult, k), a.index_from)
                                   for a in self.summands], self.notes)

    def is_zero(self):
        return not self.summands

    def has_ideal(self, ideal):
        return any(a.kind == "V-quot" and a.ideal == tuple(ideal) for a in self.summands)

    def to_json_obj(self):
        out = {"summands": [a.to_json_obj() for a in self.summands]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def __str__(self):
        if not self.summands:
            return "0"
        parts = []
        for a in self.summands:
            if a.kind == "V-quot":
                s = f"{a.algebra}/<{', '.join(a.ideal)}>"
            elif a.kind == "symbolic":
                s = a.name
            else:
                s = a.kind
            if a.mult == INF:
                s = f"sum_{{i>={a.index_from}}} {s}"
            elif a.mult != 1:
                s = f"({s})^{a.mult}"
            parts.append(s)
        return " + ".join(parts)


ZERO = GroupDescriptor()


def vquot(algebra, *ideal, mult=1, index_from=0):
    return Atom("V-quot", algebra=algebra, ideal=tuple(ideal), mult=mult, index_from=index_from)


def symbolic(name):
    return Atom("symbolic", name=name)


def integers(mult=1):
    return Atom("Z", mult=mult)


def z2(mult=1):
    return Atom("Z2", mult=mult)


def _sign(e):
    if e in (1, "+", "+1", "1"):
        return 1
    if e in (-1, "-", "-1"):
        return -1
    raise ValueError(f"sign must be + or -, got {e!r}")


def _sign_str(e):
    return "+" if e == 1 else "-"


# UNil_n(Z; Z^e1, Z^e2) for the two base sign pairs
_PLUS_PLUS = {
    0: (),
    1: (),
    2: (vquot("V", "2", "V2-1"),),
    3: (vquot("V", "4", "2V2-2"), vquot("V", "2", "V2", mult=INF, index_from=0)),
}
_MINUS_PLUS = {
    0: (vquot("Vod", "2"),),
    1: (vquot("Vod", "2", mult=INF, index_from=1),),
    2: (vquot("Vod", "2"),),
    3: (vquot("Vod", "2", mult=INF, index_from=1),),
}


def unil_value(n, e1, e2):
    """``UNil_n(Z; Z^e1, Z^e2)``.

    Swapping the signs is an isomorphism, and flipping both signs shifts the
    degree by 2, so every pair resolves to ``(+,+)`` or ``(-,+)``.
    """
    n %= 4
    e1, e2 = _sign(e1), _sign(e2)
    if e1 == e2 == -1:
        return unil_value(n + 2, 1, 1)
    if e1 == e2 == 1:
        return GroupDescriptor.of(_PLUS_PLUS[n])
    return GroupDescriptor.of(_MINUS_PLUS[n])


def l_integers(n):
    """``L_n(Z)``: ``Z, 0, Z2, 0`` by ``n`` mod 4."""
    return {0: GroupDescriptor.of([integers()]), 1: ZERO,
            2: GroupDescriptor.of([z2()]), 3: ZERO}[n % 4]


def l_group_dihedral(n, e1, e2):
    """``L_n(Z[D_inf], w)`` with ``w`` sending the two generators to ``e1 <= e2``."""
    n %= 4
    e1, e2 = _sign(e1), _sign(e2)
    if e1 > e2:
        raise BadSignOrder("signs must satisfy e1 <= e2")
    unil = unil_value(n, e1, e2)
    if n == 1 and e1 == e2 == -1:
        return unil + l_integers(0)
    tilde = symbolic(f"L~_{n}(Z[Z2],{_sign_str(e1)})")
    plain = symbolic(f"L_{n}(Z[Z2],{_sign_str(e2)})")
    return GroupDescriptor.of([tilde, plain]) + unil


def l_laurent(n, sign):
    """``L_n`` of the Laurent ring ``Z[t, 1/t]`` with involution ``t -> sign * t``."""
    n %= 4
    s = _sign(sign)
    if s == 1:
        return l_integers(n).times(2) + unil_value(n, 1, 1).times(2)
    out = l_integers(n) + l_integers(n + 2) + unil_value(n, -1, 1).times(2)
    return GroupDescriptor(out.summands, ("formula for the twisted Laurent ring is asserted without proof",))
