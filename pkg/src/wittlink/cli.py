"""Command-line front end. Every invocation prints exactly one JSON document.

Exit status: 0 on success, 1 on a domain error, 2 on unreadable input or bad
flags.
"""

import argparse
import json
import os
import sys

from . import assembly as A
from . import classifier as C
from . import forms as F
from . import invariants as I
from . import modules as MD
from .errors import ExponentTooHigh, ParseError, RingMismatch, WittError
from .poly import format_poly

DEFAULT_EXP_CAP = 8
DEFAULT_DEG_CAP = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def alpha_form():
    """The order-four class: ``Z_2[t]^2`` with ``b = diag(1/2, 1/2)`` and ``q = (1/2, t - 1/2)``."""
    M = MD.TorsionModule([MD.Cyclic(1)] * 2, "Zt+")
    return F.make_form(M, 1, [["1/2", "0"], ["0", "1/2"]], ["1/2", "(2t - 1)/2"])


def _read_json(arg):
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    elif arg.lstrip().startswith(("{", "[")):
        text = arg
    else:
        raise FileNotFoundError(f"no such file: {arg}")
    return json.loads(text)


def _load_form(path, ring=None):
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise ParseError("a form file holds a JSON object")
    m = F.form_from_json(obj)
    if ring and m.ring != ring:
        raise RingMismatch(f"form is over {m.ring}, --ring asked for {ring}")
    return m


def _load_gens(m, arg):
    obj = _read_json(arg)
    if not isinstance(obj, list) or not all(isinstance(v, list) for v in obj):
        raise ParseError("generators are a JSON list of coordinate lists")
    return MD.Submodule(m.module, [m.module.element(v) for v in obj])


def _check_exp(m, cap):
    if m.n > cap:
        raise ExponentTooHigh(f"exponent 2^{m.n} exceeds --exp-cap {cap}")


def _coord_report(coord):
    out = coord.to_json_obj()
    out["order"] = C.element_order(coord)
    return out


# ---- verbs ----


def cmd_invariants(args):
    m = _load_form(args.form, args.ring)
    return I.invariant_report(m, gs_cap=args.gs_cap)


def cmd_classify(args):
    m = _load_form(args.form, args.ring)
    _check_exp(m, args.exp_cap)
    return _coord_report(C.classify(m, gs_cap=args.gs_cap))


def cmd_verify_lagrangian(args):
    m = _load_form(args.form, args.ring)
    if args.gens is not None:
        L = _load_gens(m, args.gens)
        return {"lagrangian": F.is_lagrangian(m, L), "sublagrangian": F.is_sublagrangian(m, L)}
    if m.ring == "Zt-" and C.is_even_type(m) and m.module.is_free_exp2():
        L = C.even_minus_lagrangian(m)
    else:
        L = F.brute_lagrangian(m, bound=args.deg_cap)
    if L is None:
        return {"found": False}
    return {"found": True, "generators": _gens_json(L), "lagrangian": F.is_lagrangian(m, L)}


def _gens_json(L):
    return [[format_poly(c) for c in g] for g in L.basis]


def cmd_reduce(args):
    m = _load_form(args.form, args.ring)
    _check_exp(m, args.exp_cap)
    if args.gens is not None:
        S = _load_gens(m, args.gens)
        return {"form": F.sublagrangian_reduce(m, S, verify=True).to_json_obj()}
    return {"form": C.reduce_to_exp2(m).to_json_obj()}


def cmd_vact(args):
    obj = _read_json(args.input)
    if not isinstance(obj, dict):
        raise ParseError("expected a form or a coordinate object")
    if "pieces" in obj:
        m = F.form_from_json(obj)
        if args.ring and m.ring != args.ring:
            raise RingMismatch(f"form is over {m.ring}, --ring asked for {args.ring}")
        coord = C.classify(F.apply_verschiebung(m, args.k), gs_cap=args.gs_cap)
    else:
        coord = C.WittCoord.from_json_obj(obj)
        if args.ring and coord.ring != args.ring:
            raise RingMismatch(f"coordinates are over {coord.ring}, --ring asked for {args.ring}")
        coord = C.v_action(coord, args.k)
    return _coord_report(coord)


def _signs(text):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise ParseError("--eps takes two signs, e.g. -1,1")
    return tuple(_sign(s) for s in parts)


def _sign(s):
    try:
        return A._sign(s)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def cmd_dihedral(args):
    e1, e2 = _signs(args.eps)
    return A.l_group_dihedral(args.n, e1, e2).to_json_obj()


def cmd_laurent(args):
    return A.l_laurent(args.n, _sign(args.sign)).to_json_obj()


def _demo_order4(args):
    a = alpha_form()
    at_one = F.evaluate_at(a, 1)
    coord = C.classify(a)
    four = C.classify(F.form_multiple(a, 4))
    return {"form": a.to_json_obj(), "Rk": I.rank_inv(at_one), "GS": I.gauss_sum(at_one),
            "coord": coord.to_json_obj(), "order": C.element_order(coord), "four_times_zero": four.is_zero()}


def _demo_obstruction(args):
    m = F.build_template("rank1Z4", ring="Zt+")
    return {"form": m.to_json_obj(), "Q": str(I.Q_inv(m, 2, 0))}


def _demo_minus(args):
    m = F.P_form("t^2", "t^2", "Zt-")
    L = C.even_minus_lagrangian(m)
    return {"form": m.to_json_obj(), "generators": _gens_json(L),
            "lagrangian": F.is_lagrangian(m, L)}


DEMOS = {"order4": _demo_order4, "obstruction": _demo_obstruction, "minus-lagrangian": _demo_minus}


def cmd_demo(args):
    return DEMOS[args.name](args)


# ---- plumbing ----


def _glue_values(argv):
    # argparse reads "-1,-1" as an option, so bind such values to their flag
    out = []
    it = iter(argv)
    for a in it:
        if a in ("--eps", "--sign"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--ring", choices=("Zt+", "Zt-", "Z"))
    common.add_argument("--exp-cap", type=int, default=DEFAULT_EXP_CAP, help="largest exponent accepted for reduction")
    common.add_argument("--gs-cap", type=int, default=I.GAUSS_CAP, help="largest module order for Gauss sums")
    common.add_argument("--deg-cap", type=int, default=DEFAULT_DEG_CAP, help="degree bound for searches")
    common.add_argument("--out", help="write the report here instead of standard output")
    common.add_argument("--pretty", action="store_true")

    parser = _Parser(prog="wittlink", description="Witt classes of quadratic linking forms.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", parents=[common])
    p.add_argument("form")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", parents=[common])
    p.add_argument("form")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-lagrangian", parents=[common])
    p.add_argument("form")
    p.add_argument("--gens", help="JSON list of coordinate lists, or a file holding one")
    p.set_defaults(func=cmd_verify_lagrangian)

    p = sub.add_parser("reduce", parents=[common])
    p.add_argument("form")
    p.add_argument("--gens", help="subLagrangian generators; omit to lower the exponent to 2")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("vact", parents=[common])
    p.add_argument("input", help="coordinate JSON or form file")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_vact)

    p = sub.add_parser("dihedral", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", required=True, help="two signs, e.g. -1,-1")
    p.set_defaults(func=cmd_dihedral)

    p = sub.add_parser("laurent", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sign", default="+", help="+ for t -> t, - for t -> -t")
    p.set_defaults(func=cmd_laurent)

    p = sub.add_parser("demo", parents=[common])
    p.add_argument("name", choices=sorted(DEMOS))
    p.set_defaults(func=cmd_demo)
    return parser


def _dump(obj, pretty):
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def run(argv=None):
    """Run one command; returns ``(exit_code, report)``."""
    try:
        args = build_parser().parse_args(_glue_values(sys.argv[1:] if argv is None else argv))
    except UsageError as exc:
        return 2, {"error": "UsageError", "message": str(exc)}
    return execute(args)


def execute(args):
    try:
        return 0, args.func(args)
    except ParseError as exc:
        return 2, {"error": exc.kind, "message": str(exc)}
    except WittError as exc:
        out = {"error": exc.kind, "message": str(exc)}
        if getattr(exc, "value", None) is not None:
            out["value"] = exc.value
        return 1, out
    except json.JSONDecodeError as exc:
        return 2, {"error": "ParseError", "message": f"invalid JSON: {exc}"}
    except (OSError, KeyError, TypeError, ValueError) as exc:
        return 2, {"error": "ParseError", "message": f"{type(exc).__name__}: {exc}"}


def main(argv=None):
    try:
        args = build_parser().parse_args(_glue_values(sys.argv[1:] if argv is None else argv))
    except UsageError as exc:
        sys.stdout.write(_dump({"error": "UsageError", "message": str(exc)}, False) + "\n")
        return 2
    code, report = execute(args)
    text = _dump(report, args.pretty) + "\n"
    if args.out and code == 0:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
