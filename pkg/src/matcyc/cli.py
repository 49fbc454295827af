"""matcyc command line: parse matroid inputs, run analyses, render reports.

Exit codes: 0 success, 1 analysis failure (e.g. a verification that does
not pass), 2 usage or parse error, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import (
    DegenerateCodeError,
    InapplicableTheoremError,
    IncompatibleMatricesError,
    InputFormatError,
    InvalidArgumentError,
    InvalidEdgeError,
    InvalidMinorSpecError,
    InvalidSubsetError,
    NoLocalityError,
    ResourceLimitError,
)
from .fields import DEFAULT_CODEWORD_CAP, FieldMatrix, format_matrix, parse_matrix
from .lattice import (
    classify_edge,
    configuration,
    enumerate_cyclic_flats,
    enumerate_flats,
    label_edges,
    minor_cyclic_flats,
    to_dot,
)
from .matroid import (
    BRUTE_FORCE_MAX_GROUND,
    Matroid,
    UniformWitness,
    find_uniform_minor,
    parse_bases,
    parse_rank_table,
    parse_uniform_spec,
    uniform_parameters,
)
from .detect import carve_witness_from_edge, field_necessary_check, hasse_violations, tutte_binary_test
from .lrc import binary_structure_check, global_distance, verify_lrc

USAGE_EXIT = 2
RESOURCE_EXIT = 3


@dataclass
class InputSpec:
    """A parsed input: which format it was, the matroid, and the payload."""

    kind: str  # matrix | uniform | ranktable | bases
    matroid: Matroid
    matrix: FieldMatrix | None
    text: str


def load_input(path: str) -> InputSpec:
    text = Path(path).read_text()
    kind = _detect_kind(text)
    if kind == "matrix":
        matrix = parse_matrix(text)
        return InputSpec("matrix", Matroid.from_matrix(matrix), matrix, text)
    if kind == "uniform":
        return InputSpec("uniform", parse_uniform_spec(text), None, text)
    if kind == "ranktable":
        return InputSpec("ranktable", parse_rank_table(text), None, text)
    return InputSpec("bases", parse_bases(text), None, text)


def _detect_kind(text: str) -> str:
    first = None
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("%"):
            first = line
            break
    if first is None:
        raise InputFormatError("empty input")
    tok = first.split()[0]
    if tok == "uniform":
        return "uniform"
    if tok == "q" or tok.lstrip("-").isdigit():
        return "matrix"
    if tok == "n":
        return "ranktable" if "->" in text else "bases"
    raise InputFormatError(f"cannot detect input format from first line {first!r}")


def fmt_set(labels: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(labels)) + "}"


def parse_set(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    if text in ("", "-"):
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InvalidArgumentError(f"bad element set {text!r}: use comma-separated labels or '-'") from None


def parse_params(text: str) -> tuple[int, int]:
    try:
        n_str, k_str = text.split(",")
        return int(n_str), int(k_str)
    except ValueError:
        raise InvalidArgumentError(f"bad parameter pair {text!r}: expected 'n,k'") from None


def fmt_witness(w: UniformWitness) -> str:
    return (
        f"UNIFORM-MINOR U({w.n},{w.k}) restrict={fmt_set(w.restrict_to)} "
        f"contract={fmt_set(w.contract_by)} via={w.certificate}"
    )


def witness_dict(w: UniformWitness) -> dict:
    return {
        "n": w.n,
        "k": w.k,
        "restrict": list(w.restrict_to),
        "contract": list(w.contract_by),
        "via": w.certificate,
    }


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# -- subcommands ------------------------------------------------------


def cmd_rank(args) -> int:
    spec = load_input(args.input)
    subset = parse_set(args.set)
    r = spec.matroid.rank(subset)
    _emit(args, [f"rank({fmt_set(subset)}) = {r}"], {"set": sorted(subset), "rank": r})
    return 0


def cmd_closure(args) -> int:
    spec = load_input(args.input)
    subset = parse_set(args.set)
    out = spec.matroid.closure(subset)
    _emit(args, [f"closure({fmt_set(subset)}) = {fmt_set(out)}"],
          {"set": sorted(subset), "closure": list(out)})
    return 0


def cmd_cyc(args) -> int:
    spec = load_input(args.input)
    subset = parse_set(args.set)
    out = spec.matroid.cyc(subset)
    _emit(args, [f"cyc({fmt_set(subset)}) = {fmt_set(out)}"],
          {"set": sorted(subset), "cyc": list(out)})
    return 0


def cmd_flats(args) -> int:
    spec = load_input(args.input)
    if args.cyclic:
        lat = enumerate_cyclic_flats(spec.matroid, max_ground=args.max_n)
        items = [(node.elements, node.rank) for node in lat.nodes]
        title = "cyclic flats"
    else:
        items = list(enumerate_flats(spec.matroid, max_ground=args.max_n))
        title = "flats"
    lines = [f"{title}: {len(items)}"]
    lines.extend(f"{fmt_set(elements)} ρ={rank}" for elements, rank in items)
    _emit(args, lines, {title.replace(" ", "_"): [
        {"elements": list(e), "rank": r} for e, r in items
    ]})
    return 0


def cmd_lattice(args) -> int:
    spec = load_input(args.input)
    lat = enumerate_cyclic_flats(spec.matroid, max_ground=args.max_n)
    lines = [f"cyclic flats: {len(lat.nodes)}"]
    for node in lat.nodes:
        lines.append(f"{node.set_str()} ρ={node.rank} η={node.nullity}")
    lines.append(f"covering edges: {len(lat.edges)}")
    for edge, label in label_edges(lat):
        suffix = f" [{label.dot_label()}]" if label.dot_label() else ""
        lines.append(f"{edge.lower.set_str()} -> {edge.upper.set_str()}{suffix}")
    payload = {
        "nodes": [
            {"elements": list(n.elements), "rank": n.rank, "nullity": n.nullity}
            for n in lat.nodes
        ],
        "edges": [
            {
                "lower": list(e.lower.elements),
                "upper": list(e.upper.elements),
                "drank": e.drank,
                "dnullity": e.dnullity,
                "kind": classify_edge(e).kind,
            }
            for e in lat.edges
        ],
    }
    if args.dot:
        Path(args.dot).write_text(to_dot(lat))
        payload["dot"] = args.dot
        lines.append(f"dot written to {args.dot}")
    _emit(args, lines, payload)
    return 0


def cmd_minor(args) -> int:
    spec = load_input(args.input)
    restrict = parse_set(args.restrict) if args.restrict is not None else None
    contract = parse_set(args.contract) if args.contract is not None else ()
    flats = minor_cyclic_flats(spec.matroid, restrict, contract)
    minor = spec.matroid.minor(restrict, contract)
    lines = [f"minor ground: {fmt_set(minor.labels)}", f"cyclic flats: {len(flats)}"]
    lines.extend(f"{fmt_set(e)} ρ={r}" for e, r in flats)
    payload = {
        "ground": list(minor.labels),
        "cyclic_flats": [{"elements": list(e), "rank": r} for e, r in flats],
    }
    if args.test_uniform:
        params = uniform_parameters(minor)
        if params is None:
            lines.append("uniform: no")
            payload["uniform"] = None
        else:
            lines.append(f"uniform: U({params[0]},{params[1]})")
            payload["uniform"] = {"n": params[0], "k": params[1]}
    _emit(args, lines, payload)
    return 0


def cmd_scan(args) -> int:
    spec = load_input(args.input)
    n2, k2 = parse_params(args.uniform)
    lat = enumerate_cyclic_flats(spec.matroid, max_ground=args.max_n)
    witnesses = []
    edges = hasse_violations(spec.matroid, n2, k2, lat)
    for edge in edges:
        witnesses.append(carve_witness_from_edge(spec.matroid, edge, n2, k2))
    if not witnesses and args.brute:
        w = find_uniform_minor(spec.matroid, n2, k2,
                               max_ground=args.max_n or BRUTE_FORCE_MAX_GROUND)
        if w is not None:
            witnesses.append(w)
    if witnesses:
        _emit(args, [fmt_witness(w) for w in witnesses],
              {"witnesses": [witness_dict(w) for w in witnesses]})
    else:
        _emit(args, ["none"], {"witnesses": []})
    return 0


def cmd_binary_check(args) -> int:
    spec = load_input(args.input)
    lat = enumerate_cyclic_flats(spec.matroid, max_ground=args.max_n)
    ok, witness = tutte_binary_test(
        spec.matroid, lat, max_ground=args.max_n or BRUTE_FORCE_MAX_GROUND
    )
    lines = [f"binary: {'true' if ok else 'false'}"]
    payload: dict = {"binary": ok, "witness": None}
    if witness is not None:
        lines.append(fmt_witness(witness))
        payload["witness"] = witness_dict(witness)
    _emit(args, lines, payload)
    return 0


def cmd_field_check(args) -> int:
    spec = load_input(args.input)
    lat = enumerate_cyclic_flats(spec.matroid, max_ground=args.max_n)
    report = field_necessary_check(
        spec.matroid, args.q, lat, max_ground=args.max_n or BRUTE_FORCE_MAX_GROUND
    )
    lines = []
    if report.skipped_trivially:
        lines.append(
            f"note: ground set smaller than {args.q + 2}; no U({args.q + 2},k) minor can exist"
        )
    else:
        ks = ",".join(str(k) for _, k in report.checked)
        lines.append(f"field GF({args.q}): scanned for U({args.q + 2},k) minors, k in {{{ks}}}")
    lines.append(
        "note: necessary condition only (assumes the MDS conjecture); "
        f"a clean scan does not prove GF({args.q})-representability"
    )
    for w in report.witnesses:
        lines.append(fmt_witness(w))
    if report.clean:
        lines.append("clean")
    _emit(args, lines, {
        "q": report.q,
        "checked": [{"n": n, "k": k} for n, k in report.checked],
        "witnesses": [witness_dict(w) for w in report.witnesses],
        "skipped_trivially": report.skipped_trivially,
        "clean": report.clean,
        "caveat": "necessary condition only, conditional on the MDS conjecture",
    })
    return 0


def cmd_params(args) -> int:
    spec = load_input(args.input)
    lat = enumerate_cyclic_flats(spec.matroid, max_ground=args.max_n)
    report = verify_lrc(spec.matroid, spec.matroid.size, args.delta, lat)
    if not report.nondegenerate:
        raise DegenerateCodeError("input is a degenerate storage code; no (n,k,d,r,delta)")
    if report.achieved_r is None:
        raise NoLocalityError(
            f"coordinates {report.failing} have no repair set with local distance {args.delta}"
        )
    line = f"(n,k,d,r,delta) = ({report.n},{report.k},{report.d},{report.achieved_r},{report.delta})"
    _emit(args, [line], {
        "n": report.n, "k": report.k, "d": report.d,
        "r": report.achieved_r, "delta": report.delta,
    })
    return 0


def _report_lines(report) -> list[str]:
    lines = [f"(n,k,d) = ({report.n},{report.k},{report.d if report.d is not None else '?'})"]
    lines.append(f"nondegenerate: {'true' if report.nondegenerate else 'false'}")
    for loc in report.localities:
        lines.append(f"{loc.element}: r={loc.r} R={fmt_set(loc.repair_set)}")
    return lines


def _report_dict(report) -> dict:
    return {
        "n": report.n,
        "k": report.k,
        "d": report.d,
        "delta": report.delta,
        "r": report.r,
        "nondegenerate": report.nondegenerate,
        "elements": [
            {"element": loc.element, "r": loc.r, "repair_set": list(loc.repair_set)}
            for loc in report.localities
        ],
        "failing": list(report.failing),
        "achieved_r": report.achieved_r,
        "passed": report.passed,
    }


def cmd_lrc_verify(args) -> int:
    spec = load_input(args.input)
    lat = enumerate_cyclic_flats(spec.matroid, max_ground=args.max_n)
    report = verify_lrc(spec.matroid, args.r, args.delta, lat)
    lines = _report_lines(report)
    if report.failing:
        lines.append(f"failing: {fmt_set(report.failing)}")
    lines.append(f"locality (r,delta) = ({args.r},{args.delta}): {'PASS' if report.passed else 'FAIL'}")
    _emit(args, lines, _report_dict(report))
    return 0 if report.passed else 1


def cmd_binary_structure(args) -> int:
    spec = load_input(args.input)
    lat = enumerate_cyclic_flats(spec.matroid, max_ground=args.max_n)
    result = binary_structure_check(spec.matroid, args.r, args.delta, lat)
    d = global_distance(spec.matroid, lat)
    k = spec.matroid.full_rank
    lines = [f"(n,k,d) = ({spec.matroid.size},{k},{d})"]
    payload: dict = {
        "n": spec.matroid.size, "k": k, "d": d,
        "applicable": result.applicable,
        "reason": result.reason,
        "conditions": [
            {"name": c.name, "passed": c.passed, "counterexamples": list(c.counterexamples)}
            for c in result.conditions
        ],
        "passed": result.passed,
    }
    if not result.applicable:
        lines.append(f"binary structure: not applicable ({result.reason})")
        _emit(args, lines, payload)
        return 0
    for i, cond in enumerate(result.conditions, start=1):
        lines.append(f"condition {i} ({cond.name}): {'PASS' if cond.passed else 'FAIL'}")
        lines.extend(f"  counterexample: {c}" for c in cond.counterexamples)
    lines.append(f"binary structure: {'PASS' if result.passed else 'FAIL'}")
    _emit(args, lines, payload)
    return 0 if result.passed else 1


def cmd_echo(args) -> int:
    spec = load_input(args.input)
    if spec.kind == "matrix":
        assert spec.matrix is not None
        sys.stdout.write(format_matrix(spec.matrix))
    elif spec.kind == "uniform":
        m = spec.matroid
        print(f"uniform {m.size} {m.full_rank}")
    else:
        sys.stdout.write(spec.text if spec.text.endswith("\n") else spec.text + "\n")
    return 0


def cmd_configuration(args) -> int:
    spec = load_input(args.input)
    lat = enumerate_cyclic_flats(spec.matroid, max_ground=args.max_n)
    cfg = configuration(lat)
    lines = [f"nodes: {len(cfg.labels)}"]
    lines.extend(f"({size},{rank})" for size, rank in cfg.labels)
    lines.append(f"edges: {len(cfg.edges)}")
    lines.extend(f"{lo} -> {hi}" for lo, hi in cfg.edges)
    _emit(args, lines, {
        "labels": [list(x) for x in cfg.labels],
        "edges": [list(x) for x in cfg.edges],
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matcyc",
        description="Analyse matroids through their lattice of cyclic flats: "
        "uniform minors, binary representability, and locally repairable "
        "code parameters.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="input file: matrix, 'uniform n k', rank table, or bases")
    common.add_argument("--json", action="store_true", help="emit the JSON mirror of the report")
    common.add_argument("--max-n", type=int, default=None, metavar="N",
                        help="override the ground-set budget for enumeration and search")
    common.add_argument("--max-codewords", type=int, default=DEFAULT_CODEWORD_CAP, metavar="C",
                        help="override the codeword enumeration cap")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", parents=[common], help="rank of a column/element subset")
    p.add_argument("set", help="comma-separated labels, '-' for the empty set")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("closure", parents=[common], help="closure of a subset")
    p.add_argument("set")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("cyc", parents=[common], help="cyclic part of a subset")
    p.add_argument("set")
    p.set_defaults(func=cmd_cyc)

    p = sub.add_parser("flats", parents=[common], help="list flats (or cyclic flats)")
    p.add_argument("--cyclic", action="store_true", help="list only the cyclic flats")
    p.set_defaults(func=cmd_flats)

    p = sub.add_parser("lattice", parents=[common], help="lattice of cyclic flats with edge labels")
    p.add_argument("--dot", metavar="PATH", help="also write a Graphviz DOT rendering")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("minor", parents=[common], help="cyclic flats of a minor")
    p.add_argument("--restrict", metavar="SET", default=None)
    p.add_argument("--contract", metavar="SET", default=None)
    p.add_argument("--test-uniform", action="store_true", help="also test the minor for uniformity")
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("scan", parents=[common], help="search for a U(n,k) minor")
    p.add_argument("--uniform", metavar="N,K", required=True)
    p.add_argument("--brute", action="store_true",
                   help="fall back to exhaustive search when no edge certificate exists")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("binary-check", parents=[common], help="GF(2) representability test")
    p.set_defaults(func=cmd_binary_check)

    p = sub.add_parser("field-check", parents=[common],
                       help="scan for uniform minors forbidding GF(q) linearity")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_field_check)

    p = sub.add_parser("params", parents=[common], help="report (n,k,d,r,delta)")
    p.add_argument("--delta", type=int, default=2)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("lrc-verify", parents=[common], help="verify (r,delta) locality per element")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_lrc_verify)

    p = sub.add_parser("binary-structure", parents=[common],
                       help="lattice conditions satisfied by binary LRCs")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_binary_structure)

    p = sub.add_parser("configuration", parents=[common],
                       help="canonical (size,rank)-labelled lattice shape")
    p.set_defaults(func=cmd_configuration)

    p = sub.add_parser("echo", parents=[common], help="re-emit the parsed input canonically")
    p.set_defaults(func=cmd_echo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RESOURCE_EXIT
    except (
        InputFormatError,
        InvalidSubsetError,
        InvalidArgumentError,
        InvalidMinorSpecError,
        InvalidEdgeError,
        IncompatibleMatricesError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (DegenerateCodeError, NoLocalityError, InapplicableTheoremError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
