"""Command-line front end. Every verb prints one JSON object on stdout.

Exit codes: 0 success, 2 invalid input, 1 internal invariant violation.
"""

import argparse
import sys

from . import classgroup as cg
from .clifford import clifford, norm_form, oriented_similar
from .errors import InvariantError, ValidationError
from .forms import BinaryForm, proper_equivalent, reduce
from .hecke import hecke_table
from .jsonio import dumps
from .rings import GoodFrameModule, QuadraticRing
from .universal import verify_all


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _form(ns, prefix=""):
    return BinaryForm(getattr(ns, prefix + "a"), getattr(ns, prefix + "b"), getattr(ns, prefix + "c"))


def _add_form(p, prefix=""):
    for name in "abc":
        p.add_argument(prefix + name, type=int)


def cmd_reduce(ns):
    g, m = reduce(_form(ns))
    return {"form": list(g), "map": list(m)}


def cmd_equiv(ns):
    f, g = _form(ns), _form(ns, "g")
    if ns.narrow:
        return {"equivalent": proper_equivalent(f, g), "variant": cg.NARROW}
    return {"equivalent": oriented_similar(f, g), "variant": cg.WIDE}


def cmd_compose(ns):
    f, g = _form(ns), _form(ns, "g")
    h = cg.dirichlet_compose(f, g) if ns.oracle else cg.compose(f, g)
    return {"form": list(h)}


def cmd_classgroup(ns):
    return cg.class_group(ns.D, cg.NARROW if ns.narrow else cg.WIDE).to_json()


def cmd_clifford(ns):
    pair = clifford(_form(ns))
    return {
        "ring": pair.ring.to_json(),
        "module": pair.module.to_json(),
        "orientation": pair.orientation.sign,
    }


def cmd_norm(ns):
    I = GoodFrameModule(QuadraticRing(ns.t, ns.n), ns.a, ns.b, ns.c)
    return {"form": list(norm_form(I))}


def cmd_hecke(ns):
    return hecke_table(ns.D, ns.pmax)


def cmd_verify_universal(ns):
    reports = verify_all()
    failed = [r.name for r in reports if not r.ok]
    if failed:
        raise InvariantError(f"nonzero difference in {failed}: "
                             f"{[r.to_json() for r in reports if not r.ok]}")
    return {"ok": True, "reports": [r.to_json() for r in reports]}


def build_parser():
    parser = _Parser(prog="gausscomp", description="Binary quadratic forms, Clifford modules and class groups.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", help="reduced form and the map carrying f to it")
    _add_form(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("equiv", help="decide equivalence of two forms")
    _add_form(p)
    _add_form(p, "g")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--narrow", action="store_true", help="proper (SL2) equivalence")
    mode.add_argument("--wide", action="store_true", help="oriented similarity (default)")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("compose", help="compose two forms of the same discriminant")
    _add_form(p)
    _add_form(p, "g")
    p.add_argument("--oracle", action="store_true", help="use Dirichlet composition instead")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("classgroup", help="class group of discriminant D")
    p.add_argument("D", type=int)
    p.add_argument("--narrow", action="store_true")
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("clifford", help="even Clifford ring and odd Clifford module of a form")
    _add_form(p)
    p.set_defaults(func=cmd_clifford)

    p = sub.add_parser("norm", help="norm form of the good frame (a, b, c) over the ring (t, n)")
    p.add_argument("t", type=int)
    p.add_argument("n", type=int)
    _add_form(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("hecke", help="Hecke operators at split primes p <= pmax (D < 0)")
    p.add_argument("D", type=int)
    p.add_argument("pmax", type=int)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("verify-universal", help="re-run the symbolic certificates")
    p.set_defaults(func=cmd_verify_universal)
    return parser


def run(argv=None, out=None):
    out = out or sys.stdout
    try:
        ns = build_parser().parse_args(argv)
        result = ns.func(ns)
    except UsageError as exc:
        print(dumps({"error": "usage", "detail": str(exc)}), file=out)
        return 2
    except ValidationError as exc:
        print(dumps({"error": type(exc).__name__, "detail": str(exc)}), file=out)
        return 2
    except InvariantError as exc:
        print(dumps({"error": "InvariantError", "detail": str(exc)}), file=out)
        return 1
    print(dumps(result), file=out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
