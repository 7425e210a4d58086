"""Command-line front end.

Exit status: 0 on success, 2 on bad input (one-line diagnostic on stderr),
3 when a result is inconclusive or a resource cap was hit (partial JSON
report on stdout).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .ar import tube_system
from .errors import GenericityNotFound, InputError, InternalInconsistency, QstabError, ResourceLimit
from .oracle import random_rep, semistable_bruteforce, subdims_bruteforce, verdict_json, verify_generic, end_dim
from .quiver import Quiver, parse_quiver
from .roots import base_roots
from .slopes import DEFAULT_BOUND, CaseTag, classify_mu_delta, compute_slope_set, format_slope
from .stability import generic_subdims, is_semistable_dim, slope

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qstab", description="Slope stability for Euclidean quivers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(name: str, help: str, weight=False, dim=False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("-q", "--quiver", required=True, help="quiver JSON document")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if weight:
            p.add_argument("-w", "--weight", type=_int_list, required=weight == "required")
        if dim:
            p.add_argument("-d", "--dim", type=_int_list, required=True)
        return p

    common("info", "type, Euler matrix, delta and Coxeter matrix")
    common("roots", "real roots below delta, split by class")
    common("tubes", "non-homogeneous tubes")
    p = common("semistable", "semistability of a dimension vector", weight="required", dim=True)
    p.add_argument(
        "--generic", action="store_true", help="accept any dimension vector (general representation)"
    )
    for name in ("slopes", "classify"):
        p = common(name, "slope set" if name == "slopes" else "category at slope mu(delta)", weight="required")
        p.add_argument("--bound", type=_positive_int, default=DEFAULT_BOUND)
        if name == "slopes":
            p.add_argument("--count", type=int, default=3, help="family members to list")
    p = common("oracle", "brute-force checks on an explicit representation", weight="optional", dim=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", type=int, default=2, help="prime field size")
    p.add_argument("--attempts", type=_positive_int, default=200)
    return parser


def _load(path: str) -> Quiver:
    try:
        with open(path, "rb") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_quiver(text)


def _check_len(q: Quiver, values, what: str):
    if values is not None and len(values) != q.n:
        raise InputError(f"{what} has {len(values)} entries, quiver has {q.n} vertices")


def _matrix_text(rows) -> list[str]:
    return ["  " + " ".join(f"{int(x):3d}" for x in row) for row in rows]


def _cmd_info(q: Quiver, args) -> tuple[int, dict, list[str]]:
    qt = q.quiver_type
    data: dict = {
        "vertices": list(q.vertices),
        "arrows": [[s, t] for s, t in q.arrows],
        "type": {"kind": qt.kind, "series": qt.series, "rank": qt.rank, "label": qt.label()},
        "euler_matrix": [list(r) for r in q.euler_matrix],
    }
    if qt.is_euclidean:
        phi, _ = q.coxeter_matrices
        data["delta"] = list(q.delta)
        data["coxeter_matrix"] = [[int(phi[i, j]) for j in range(q.n)] for i in range(q.n)]
    lines = [f"vertices: {' '.join(q.vertices)}", f"arrows: {len(q.arrows)}", f"type: {qt}"]
    lines += ["euler matrix:"] + _matrix_text(data["euler_matrix"])
    if "delta" in data:
        lines.append(f"delta: {data['delta']}")
        lines += ["coxeter matrix:"] + _matrix_text(data["coxeter_matrix"])
    return EXIT_OK, data, lines


def _cmd_roots(q: Quiver, args):
    roots = base_roots(q)
    data = {"delta": list(q.delta), **roots.to_json()}
    lines = [f"delta: {data['delta']}"]
    for key in ("preprojective", "regular", "preinjective"):
        lines.append(f"{key} ({len(data[key])}): " + " ".join(str(d) for d in data[key]))
    return EXIT_OK, data, lines


def _cmd_tubes(q: Quiver, args):
    ts = tube_system(q)
    data = ts.to_json()
    lines = [f"{len(data)} non-homogeneous tube(s)"]
    for t in data:
        lines.append(f"rank {t['rank']}: " + " ".join(str(d) for d in t["quasi_simples"]))
    return EXIT_OK, data, lines


def _cmd_semistable(q: Quiver, args):
    _check_len(q, args.weight, "weight")
    _check_len(q, args.dim, "dimension vector")
    v = is_semistable_dim(q, args.weight, args.dim, generic=args.generic)
    data = verdict_json(v)
    line = f"{v.status.value} at slope {data['slope']}"
    if v.violator is not None:
        line += f"; violator {list(v.violator)} of slope {format_slope(slope(args.weight, v.violator))}"
    return EXIT_OK, data, [line]


def _cmd_slopes(q: Quiver, args):
    _check_len(q, args.weight, "weight")
    report = compute_slope_set(q, args.weight, args.bound, family_count=max(0, args.count))
    code = EXIT_INCONCLUSIVE if report.verdict == "inconclusive" else EXIT_OK
    return code, report.to_json(), report.to_text().splitlines()


def _cmd_classify(q: Quiver, args):
    _check_len(q, args.weight, "weight")
    case = classify_mu_delta(q, args.weight, args.bound)
    size = {CaseTag.REGULAR: "infinite", CaseTag.TAME: "finite", CaseTag.DYNKIN: "finite"}.get(case.tag, "unknown")
    data = {
        "mu_delta": format_slope(slope(args.weight, q.delta)),
        "case": case.tag.value,
        "x_theta": size,
        "reason": case.reason,
    }
    if case.witness is not None:
        data["witness"] = list(case.witness)
    if case.tag is CaseTag.INCONCLUSIVE:
        data["bound"] = case.bound
        line = f"{case}; X_θ unknown"
    else:
        line = f"{case.tag.value}; X_θ {size}"
    code = EXIT_INCONCLUSIVE if case.tag is CaseTag.INCONCLUSIVE else EXIT_OK
    return code, data, [line, f"mu(delta) = {data['mu_delta']}", f"reason: {case.reason}"]


def _cmd_oracle(q: Quiver, args):
    _check_len(q, args.dim, "dimension vector")
    _check_len(q, args.weight, "weight")
    p = args.field
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise InputError(f"--field must be a prime, got {p}")
    try:
        rep = verify_generic(q, args.dim, p, attempts=args.attempts, seed=args.seed)
        certified = True
    except GenericityNotFound:
        rep = random_rep(q, args.dim, p, args.seed)
        certified = False
    subs = sorted(subdims_bruteforce(rep))
    data: dict = {
        "dimension": list(rep.dimension),
        "field": p,
        "seed": args.seed,
        "generic_certified": certified,
        "matrices": [m.tolist() for m in rep.matrices],
        "end_dim": end_dim(rep),
        "subdims": [list(e) for e in subs],
    }
    if certified:
        data["agrees_with_generic_subdims"] = set(subs) == set(generic_subdims(q, args.dim))
    if args.weight is not None:
        data["verdict"] = verdict_json(semistable_bruteforce(rep, args.weight))
    lines = [f"{k}: {v}" for k, v in data.items() if k != "matrices"]
    lines += [f"matrix {s}->{t}: {m}" for (s, t), m in zip(q.arrows, data["matrices"])]
    return EXIT_OK, data, lines


COMMANDS = {
    "info": _cmd_info,
    "roots": _cmd_roots,
    "tubes": _cmd_tubes,
    "semistable": _cmd_semistable,
    "slopes": _cmd_slopes,
    "classify": _cmd_classify,
    "oracle": _cmd_oracle,
}


def _emit(out: TextIO, fmt: str, data, lines: list[str]) -> None:
    if fmt == "json":
        out.write(json.dumps(data) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        err.write(f"qstab: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    fmt = args.format
    try:
        q = _load(args.quiver)
        code, data, lines = COMMANDS[args.command](q, args)
    except InputError as exc:
        err.write(f"qstab: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except (ResourceLimit, RecursionError, GenericityNotFound) as exc:
        name = "ResourceLimit" if isinstance(exc, RecursionError) else type(exc).__name__
        err.write(f"qstab: {name}: {exc}\n")
        out.write(json.dumps({"error": name, "message": str(exc), "command": args.command}) + "\n")
        return EXIT_INCONCLUSIVE
    except (InternalInconsistency, QstabError) as exc:
        err.write(f"qstab: {type(exc).__name__}: {exc}\n")
        return 1
    _emit(out, fmt, data, lines)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
