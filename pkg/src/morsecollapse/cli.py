"""Command-line front end.

Every subcommand prints one JSON report on stdout (``export-dot`` prints DOT
text instead).  Exit codes: 0 success, 1 obstruction or failed hypothesis,
2 input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import catalog as catalog_mod
from .analysis import (HallViolation, HypothesisError, NoCollapsibilityObstruction,
                       critical_incidence_graph, hall_matching, morse_boundary,
                       morse_homology_check, theorem_gap_certificate)
from .complex import (ComplexError, SimplicialComplex, barycentric_subdivision, cell_key,
                      cell_name, euler_characteristic, is_connected)
from .field import DiscreteVectorField, FieldError, critical_report
from .formats import FormatError, parse_cplx, parse_field, write_cplx, write_field, write_mf
from .homology import homology, relaxed_hypotheses_hold
from .normalization import nkf, normalize
from .search import (DEFAULT_BUDGET, is_collapsible, min_critical_cells, nk, pl_probe,
                     prop3_witness)

EXIT_OK, EXIT_OBSTRUCTION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _cells(cells) -> list[list[str]]:
    return [list(c) for c in cells]


def _pairs(V: DiscreteVectorField) -> list[list[list[str]]]:
    pairs = sorted(V.pairs, key=lambda p: (cell_key(p[0]), cell_key(p[1])))
    return [[list(a), list(b)] for a, b in pairs]


def _h_table(K: SimplicialComplex, values) -> list[list]:
    return [[list(c), values[c]] for c in K.cells]


class _Inputs:
    def __init__(self):
        self.digest = hashlib.sha256()

    def complex(self, spec: str) -> SimplicialComplex:
        path = Path(spec)
        try:
            if path.is_file():
                K = parse_cplx(path.read_text(), source=str(path))
            else:
                K = catalog_mod.catalog(spec)
        except KeyError:
            raise InputError(f"{spec}: no such file or catalog complex") from None
        except (FormatError, ComplexError, OSError) as exc:
            raise InputError(str(exc)) from None
        self.digest.update(write_cplx(K).encode())
        return K

    def field(self, K: SimplicialComplex, spec: str) -> DiscreteVectorField:
        path = Path(spec)
        if not path.is_file():
            raise InputError(f"{spec}: no such file")
        try:
            V = parse_field(path.read_text(), K, source=str(path))
        except (FormatError, FieldError, ComplexError) as exc:
            raise InputError(str(exc)) from None
        self.digest.update(b"\0" + write_field(V).encode())
        return V


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


# -- subcommands ---------------------------------------------------------------
# Each returns (results, certificates, exact, exit code).

def cmd_info(args, inp):
    K = inp.complex(args.complex)
    return {"dimension": K.dimension, "f_vector": list(K.f_vector), "cells": len(K),
            "euler": euler_characteristic(K), "connected": is_connected(K)}, {}, True, EXIT_OK


def cmd_homology(args, inp):
    K = inp.complex(args.complex)
    return homology(K).to_json(), {}, True, EXIT_OK


def cmd_normalize(args, inp):
    K = inp.complex(args.complex)
    V = inp.field(K, args.field)
    h = normalize(V)
    _write(args.out, write_mf(K, h.values))
    return {"nkf": nkf(V).value}, {"h": _h_table(K, h.values)}, True, EXIT_OK


def cmd_nkf(args, inp):
    K = inp.complex(args.complex)
    V = inp.field(K, args.field)
    value = nkf(V)
    contributions = [[list(c), x] for c, x in sorted(value.contributions.items(), key=lambda i: cell_key(i[0]))]
    return ({"nkf": value.value, "full_sum": value.full_sum,
             "critical_vector": list(critical_report(V).counts)},
            {"critical_contributions": contributions}, True, EXIT_OK)


def _require_dim2(K):
    if K.dimension > 2 and not is_collapsible(K):
        raise InputError("search commands support dimension <= 2 (higher only when collapsible)")


def cmd_optimal(args, inp):
    K = inp.complex(args.complex)
    _require_dim2(K)
    r = min_critical_cells(K, args.budget, args.jobs)
    results = {"critical_vector": list(r.critical_vector), "total": r.total,
               "lower_bound": r.lower_bound, "nodes": r.nodes, "exact": r.exact}
    certs = {"witnesses": [_pairs(V) for V in r.witnesses]}
    return results, certs, r.exact, EXIT_OK if r.exact else EXIT_BUDGET


def cmd_nk(args, inp):
    K = inp.complex(args.complex)
    _require_dim2(K)
    r = nk(K, args.budget, args.jobs, certify=args.certify)
    results = {"value": r.value, "certified_fields": r.certified, "exact": r.exact, "optimal_total": r.optimal_total,
               "critical_vector": list(r.critical_vector), "fields_examined": r.fields_examined,
               "nodes": r.nodes, "note": r.note}
    certs = {}
    if r.witness is not None:
        value = nkf(r.witness)
        certs = {"witness_field": _pairs(r.witness),
                 "nkf": value.value,
                 "h": _h_table(K, normalize(r.witness).values)}
    return results, certs, r.exact, EXIT_OK if r.exact else EXIT_BUDGET


def cmd_collapse(args, inp):
    K = inp.complex(args.complex)
    r = is_collapsible(K, args.budget)
    results = {"collapsible": r.collapsible, "exact": r.exact, "note": r.note, "nodes": r.nodes}
    certs = {}
    if r.collapsible:
        V = prop3_witness(K, r)
        certs = {"sequence": [[list(a), list(b)] for a, b in r.sequence.steps],
                 "remaining": _cells(r.sequence.remaining),
                 "nkf": nkf(V).value}
    code = EXIT_OK if r.collapsible else (EXIT_OBSTRUCTION if r.exact else EXIT_BUDGET)
    return results, certs, r.exact, code


def cmd_certify(args, inp):
    K = inp.complex(args.complex)
    exact = True
    if args.field:
        V = inp.field(K, args.field)
    else:
        if K.dimension > 2:
            raise InputError("certify supports dimension <= 2")
        opt = min_critical_cells(K, args.budget, args.jobs)
        if not opt.witnesses:
            return {"certified": False, "reason": "no optimal field within budget"}, {}, False, EXIT_BUDGET
        V, exact = opt.witnesses[0], opt.exact
    results = {"acyclic": homology(K).acyclic,
               "relaxed_hypotheses": K.dimension <= 2 and relaxed_hypotheses_hold(K),
               "critical_vector": list(critical_report(V).counts)}
    certs = {"field": _pairs(V)}
    try:
        cert = theorem_gap_certificate(V)
    except HallViolation as exc:
        results.update(certified=False, reason="hall_violation")
        certs["hall"] = exc.certificate.to_json(list)
        return results, certs, exact, EXIT_OBSTRUCTION
    except (NoCollapsibilityObstruction, HypothesisError) as exc:
        results.update(certified=False, reason=str(exc))
        return results, certs, exact, EXIT_OBSTRUCTION
    results.update(certified=True, nkf=cert.nkf)
    certs["gaps"] = [{"edge": list(e), "triangle": list(t), "h_edge": he, "h_triangle": ht}
                     for e, t, he, ht in cert.rows]
    return results, certs, exact, EXIT_OK


def cmd_morse_complex(args, inp):
    K = inp.complex(args.complex)
    V = inp.field(K, args.field)
    mcc = morse_boundary(V)
    results = mcc.to_json()
    results["homology_matches"] = morse_homology_check(V)
    return results, {}, True, EXIT_OK


def cmd_hall(args, inp):
    K = inp.complex(args.complex)
    V = inp.field(K, args.field)
    if K.dimension > 2:
        raise InputError("hall supports dimension <= 2")
    G = critical_incidence_graph(V)
    cert = hall_matching(G)
    results = {"a_side": _cells(G.a_side), "b_side": _cells(G.b_side),
               "edges": sorted([list(a), list(b)] for a, b in G.edges)}
    return results, {"matching": cert.to_json(list)}, True, EXIT_OK


def cmd_plprobe(args, inp):
    K = inp.complex(args.complex)
    if K.dimension > 2:
        raise InputError("plprobe supports dimension <= 2")
    probe = pl_probe(K, args.depth, args.budget, args.jobs)
    results = {"depths": probe.depths, "best": probe.best, "exact": probe.exact, "caveat": probe.caveat}
    return results, {}, probe.exact, EXIT_OK if probe.exact else EXIT_BUDGET


def cmd_subdivide(args, inp):
    K = inp.complex(args.complex)
    for _ in range(args.times):
        K = barycentric_subdivision(K)
    text = write_cplx(K)
    _write(args.out, text)
    results = {"f_vector": list(K.f_vector), "euler": euler_characteristic(K)}
    certs = {} if args.out else {"cplx": text}
    return results, certs, True, EXIT_OK


def cmd_catalog(args, inp):
    if not args.name:
        return {"names": catalog_mod.names()}, {}, True, EXIT_OK
    K = inp.complex(args.name)
    text = write_cplx(K)
    _write(args.out, text)
    return {"name": args.name, "f_vector": list(K.f_vector)}, ({} if args.out else {"cplx": text}), True, EXIT_OK


def export_dot(V: DiscreteVectorField, h=None) -> str:
    """DOT digraph of the Hasse diagram: nodes ``cell:h``, critical cells doubled,
    matched pairs as bold arrows from the upper cell down to the lower one."""
    K = V.complex
    if h is None:
        h = normalize(V).values
    lines = ["digraph gradient {", "  rankdir=BT;", "  node [shape=ellipse];"]
    for i, c in enumerate(K.cells):
        extra = ", peripheries=2" if V.partner[i] < 0 else ""
        lines.append(f'  "{" ".join(c)}" [label="{cell_name(c)}:{h[c]}"{extra}];')
    for t, fs in enumerate(K.faces_of):
        for s in fs:
            lo, up = " ".join(K.cells[s]), " ".join(K.cells[t])
            if V.partner[s] == t:
                lines.append(f'  "{up}" -> "{lo}" [style=bold];')
            else:
                lines.append(f'  "{lo}" -> "{up}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "info": cmd_info, "homology": cmd_homology, "normalize": cmd_normalize, "nkf": cmd_nkf,
    "optimal": cmd_optimal, "nk": cmd_nk, "collapse": cmd_collapse, "certify": cmd_certify,
    "morse-complex": cmd_morse_complex, "hall": cmd_hall, "plprobe": cmd_plprobe,
    "subdivide": cmd_subdivide, "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    env_budget = os.environ.get("MORSE_BUDGET")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=int(env_budget) if env_budget else DEFAULT_BUDGET,
                        help="search node budget (default: $MORSE_BUDGET or 10^7)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for searches")
    common.add_argument("--timing", action="store_true", help="print wall time to stderr")

    parser = argparse.ArgumentParser(prog="morsecollapse", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *, fld=None, out=False, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        if name != "catalog":
            p.add_argument("complex", help=".cplx file or catalog name")
        if fld == "required":
            p.add_argument("field", help=".field file")
        elif fld == "optional":
            p.add_argument("field", nargs="?", help=".field file (default: an optimal field)")
        if out:
            p.add_argument("-o", "--out", help="output file")
        return p

    add("info", help="f-vector, Euler characteristic, connectivity")
    add("homology", help="integer homology")
    add("normalize", fld="required", out=True, help="normalized Morse function of a field")
    add("nkf", fld="required", help="alternating sum of the normalization")
    add("optimal", help="fewest critical cells")
    add("nk", help="least |N(K,f)| over optimal fields").add_argument(
        "--certify", action="store_true", help="check the value-gap certificate on every enumerated field")
    add("collapse", help="collapse to a vertex")
    add("certify", fld="optional", help="value-gap certificate for a non-collapsible complex")
    add("morse-complex", fld="required", help="Morse chain complex")
    add("hall", fld="required", help="critical incidence graph and Hall matching")
    add("plprobe", help="N over barycentric subdivisions").add_argument("--depth", type=int, default=1)
    add("subdivide", out=True, help="barycentric subdivision").add_argument("--times", type=int, default=1)
    add("export-dot", fld="required", out=True, help="DOT drawing of a field with normalized values")
    cat = add("catalog", out=True, help="list or write catalog complexes")
    cat.add_argument("name", nargs="?")
    return parser


def run(argv: list[str] | None = None) -> tuple[str, int]:
    """Execute a command; return (stdout text, exit code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return "", EXIT_INPUT if exc.code else EXIT_OK
    inp = _Inputs()
    start = time.perf_counter()
    try:
        if args.command == "export-dot":
            K = inp.complex(args.complex)
            text = export_dot(inp.field(K, args.field))
            if args.out:
                _write(args.out, text)
                text = ""
            code = EXIT_OK
        else:
            results, certs, exact, code = COMMANDS[args.command](args, inp)
            report = {"command": args.command, "input_digest": inp.digest.hexdigest(),
                      "exact": exact, "results": results, "certificates": certs}
            text = json.dumps(report, indent=2) + "\n"
    except InputError as exc:
        report = {"command": args.command, "error": str(exc)}
        text, code = json.dumps(report, indent=2) + "\n", EXIT_INPUT
    if args.timing:
        print(f"wall time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return text, code


def main(argv: list[str] | None = None) -> int:
    text, code = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
