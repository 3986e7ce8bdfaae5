"""Command-line interface.  Every command prints JSON (or the export text) on stdout.

Exit status: 0 ok, 1 domain error, 2 usage error.  Vectors are written
``1,1``; boxes ``LO:HI`` as in ``--box=-1,0:4,5`` (use ``=`` when the value
starts with a minus sign).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .cones import (ci_statement, cone_C_membership, fan_P_membership, project_to_W,
                    s2_preimage, supermodular_membership)
from .entropy import METHODS, entropy_vector
from .field import FieldError, parse_rational
from .io import LatticeFileError, matrix_to_json, lattice_to_json, parse_lattice_file
from .lattice import LatticeError, smith_decomposition
from .tropical import (TropicalError, TropicalPolynomial, box_points, export_tropical, phi_eval,
                       pmf_box, tail_prob)
from .verify import VerifyError, brute_force_index, empirical_tail_report, sample_valuations

DOMAIN_ERRORS = (LatticeFileError, FieldError, LatticeError, TropicalError, VerifyError,
                 ValueError, ZeroDivisionError)


def _vector(text: str) -> tuple:
    out = []
    for part in text.split(","):
        x = parse_rational(part)
        out.append(int(x) if x.denominator == 1 else x)
    return tuple(out)


def _box(text: str) -> tuple[tuple, tuple]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"box must look like LO:HI, got {text!r}")
    lo, hi = _vector(lo), _vector(hi)
    if any(isinstance(x, Fraction) for x in lo + hi):
        raise ValueError("box corners must be integer vectors")
    return lo, hi


def _subset(text: str) -> tuple[int, ...]:
    text = text.strip()
    return tuple(int(x) for x in text.split(",")) if text else ()


def _fmt(x) -> str:
    return str(Fraction(x))


def _tropical(L, method="hnf") -> TropicalPolynomial:
    return TropicalPolynomial(entropy_vector(L, method), L.field.q)


def _points(args):
    if args.v is not None and args.box is not None:
        raise ValueError("give either --v or --box, not both")
    if args.v is not None:
        return [_vector(args.v)]
    if args.box is not None:
        return list(box_points(*_box(args.box)))
    raise ValueError("one of --v or --box is required")


def cmd_entropy(args):
    return entropy_vector(parse_lattice_file(args.file), args.method).to_json()


def cmd_hnf(args):
    L = parse_lattice_file(args.file)
    return matrix_to_json(L.field, L.hnf)


def cmd_smith(args):
    L = parse_lattice_file(args.file)
    U, D, V = smith_decomposition(L.rep, L.field)
    fmt = L.field.format_entry
    return {"field": matrix_to_json(L.field, D)["field"],
            **{name: [[fmt(x) for x in r] for r in M] for name, M in (("U", U), ("D", D), ("V", V))}}


def cmd_phi(args):
    T = _tropical(parse_lattice_file(args.file), args.method)
    return [{"v": [_fmt(x) for x in v], "phi": _fmt(phi_eval(T, v))} for v in _points(args)]


def cmd_tail(args):
    T = _tropical(parse_lattice_file(args.file), args.method)
    return [{"v": [_fmt(x) for x in v], "tail": _fmt(tail_prob(T, v))} for v in _points(args)]


def cmd_pmf(args):
    T = _tropical(parse_lattice_file(args.file), args.method)
    if args.box is None:
        raise ValueError("pmf needs --box")
    table = pmf_box(T, *_box(args.box))
    return {"cells": [{"v": list(v), "pmf": _fmt(x)} for v, x in table.items()],
            "total": _fmt(sum(table.values(), Fraction(0)))}


def cmd_supermodular(args):
    return supermodular_membership(entropy_vector(parse_lattice_file(args.file), args.method)).to_json()


def cmd_ci(args):
    H = entropy_vector(parse_lattice_file(args.file), args.method)
    return ci_statement(H, args.i, args.j, _subset(args.given))


def cmd_sample(args):
    L = parse_lattice_file(args.file)
    hi = _box(args.box)[1] if args.box else None
    return sample_valuations(L, args.n, args.precision, args.seed, box_hi=hi).summary()


def cmd_report(args):
    if args.box is None:
        raise ValueError("report needs --box")
    L = parse_lattice_file(args.file)
    lo, hi = _box(args.box)
    batch = sample_valuations(L, args.n, args.precision, args.seed, box_hi=hi)
    rows = empirical_tail_report(batch, _tropical(L), lo, hi)
    records = [r.to_json() for r in rows]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["v", "empirical", "exact", "z"])
            for r in records:
                w.writerow([",".join(map(str, r["v"])), r["empirical"], r["exact"], r["z"] or ""])
    return records


def cmd_index(args):
    L = parse_lattice_file(args.file)
    v = _vector(args.v)
    return {"v": list(v), "modexp": args.modexp, "index": brute_force_index(L, v, args.modexp)}


def cmd_d3fan(args):
    H = entropy_vector(parse_lattice_file(args.file), args.method)
    pt = project_to_W(H)
    fan = fan_P_membership(pt)
    return {"point": pt.to_json(), "in_C": cone_C_membership(pt), "in_P": fan.member,
            "systems": fan.systems}


def cmd_s2pre(args):
    L = s2_preimage(parse_rational(args.x1), parse_rational(args.x2), parse_rational(args.x12))
    return {"lattice": lattice_to_json(L), "entropy": entropy_vector(L).to_json()}


def cmd_export_tropical(args):
    return export_tropical(_tropical(parse_lattice_file(args.file), args.method))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nalattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, file=True, method=False):
        sp = sub.add_parser(name)
        if file:
            sp.add_argument("file", help="lattice JSON file")
        if method:
            sp.add_argument("--method", choices=METHODS, default="hnf")
        sp.set_defaults(func=func)
        return sp

    add("entropy", cmd_entropy, method=True)
    add("hnf", cmd_hnf)
    add("smith", cmd_smith)
    for name, func in (("phi", cmd_phi), ("tail", cmd_tail), ("pmf", cmd_pmf)):
        sp = add(name, func, method=True)
        sp.add_argument("--v")
        sp.add_argument("--box")
    add("supermodular", cmd_supermodular, method=True)
    sp = add("ci", cmd_ci, method=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--given", default="")
    for name, func in (("sample", cmd_sample), ("report", cmd_report)):
        sp = add(name, func)
        sp.add_argument("--n", type=int, default=10000)
        sp.add_argument("--precision", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--box")
        if name == "report":
            sp.add_argument("--csv", help="also write the table to this CSV file")
    sp = add("index", cmd_index)
    sp.add_argument("--v", required=True)
    sp.add_argument("--modexp", type=int, required=True)
    add("d3fan", cmd_d3fan, method=True)
    sp = add("s2pre", cmd_s2pre, file=False)
    sp.add_argument("--x1", required=True)
    sp.add_argument("--x2", required=True)
    sp.add_argument("--x12", required=True)
    add("export-tropical", cmd_export_tropical, method=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("sample", "report") and args.seed is None:
        parser.error("--seed is required: sampling is deterministic only given a seed")
    try:
        result = args.func(args)
    except DOMAIN_ERRORS as e:
        print(f"nalattice {args.command}: {e}", file=sys.stderr)
        return 1
    if isinstance(result, str):
        sys.stdout.write(result)
    elif args.command == "report":
        for rec in result:
            print(json.dumps(rec))
    else:
        print(json.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
