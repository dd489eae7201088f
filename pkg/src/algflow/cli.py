"""Command-line interface.

Subcommands:

* ``classify``         class, canonical form and certificate of A^[t]
* ``kce``              composition-law residual at one time triple
* ``iso``              isomorphism verdict for two times or two algebra files
* ``partition``        CSV/JSON export of the time-axis classification
* ``verify-theorems``  run the full verification suite

Exit codes: 0 success (for checks: passed), 1 check failed / not isomorphic,
2 usage or input error.  The environment variable ALGFLOW_SEED overrides the
default seed of the numeric isomorphism search.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

from .algebra import (
    AlgebraFD,
    algebra_from_json_dict,
    algebra_to_json_dict,
    is_associative,
    is_commutative,
)
from .checks import CHECK_NAMES, run_checks
from .classification import (
    FlowClassLabel,
    bekbaev_matrix,
    classify_time,
    class_representative,
    label_to_json_dict,
    to_bekbaev,
)
from .flow import flow_algebra, verify_kce, ROTATION_FAMILY
from .isomorphism import (
    IsoVerdict,
    SearchConfig,
    invariant_signature,
    iso_search,
    rotation_iso,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class PartitionRecord:
    """One grid point of the time-axis partition."""

    t: float
    label: FlowClassLabel
    commutative: bool
    associative: bool

    @classmethod
    def at(cls, t: float) -> "PartitionRecord":
        algebra = flow_algebra(t)
        return cls(
            t=t,
            label=classify_time(t),
            commutative=is_commutative(algebra),
            associative=is_associative(algebra),
        )

    def row(self) -> list[str]:
        c = "" if self.label.c is None else repr(self.label.c)
        return [
            repr(self.t),
            self.label.variant,
            c,
            "true" if self.commutative else "false",
            "true" if self.associative else "false",
        ]

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "class": self.label.variant,
            "param_c": self.label.c,
            "commutative": self.commutative,
            "associative": self.associative,
        }


def _emit(data: dict) -> None:
    print(json.dumps(data, indent=2))


def cmd_classify(args: argparse.Namespace) -> int:
    label = classify_time(args.t, args.tol)
    representative = class_representative(label)
    form, certificate = to_bekbaev(label)
    _emit({
        "t": args.t,
        "label": label_to_json_dict(label),
        "commutative": is_commutative(flow_algebra(args.t)),
        "associative": is_associative(flow_algebra(args.t)),
        "representative": algebra_to_json_dict(representative),
        "canonical_form": form.to_json_dict(),
        "canonical_matrix": bekbaev_matrix(form).values.tolist(),
        "basis_change": certificate.matrix.tolist(),
    })
    return EXIT_OK


def cmd_kce(args: argparse.Namespace) -> int:
    residual = verify_kce(ROTATION_FAMILY, args.s, args.tau, args.t)
    ok = residual < args.tol
    _emit({
        "s": args.s,
        "tau": args.tau,
        "t": args.t,
        "residual": residual,
        "tol": args.tol,
        "ok": ok,
    })
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _load_algebra(path: str) -> AlgebraFD:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read algebra file {path}: {exc}") from exc
    return algebra_from_json_dict(data)


def _file_iso(a: AlgebraFD, b: AlgebraFD, cfg: SearchConfig) -> IsoVerdict:
    sig_a, sig_b = invariant_signature(a), invariant_signature(b)
    separating = sig_a.first_difference(sig_b)
    if separating is not None:
        return IsoVerdict.separated(separating)
    return iso_search(a, b, cfg)


def cmd_iso(args: argparse.Namespace) -> int:
    time_mode = args.t1 is not None or args.t2 is not None
    file_mode = args.a is not None or args.b is not None
    if time_mode == file_mode or (time_mode and (args.t1 is None or args.t2 is None)) \
            or (file_mode and (args.a is None or args.b is None)):
        raise ValueError("pass either --t1 and --t2, or --a and --b")
    if time_mode:
        verdict = rotation_iso(args.t1, args.t2, args.tol)
        report = {"t1": args.t1, "t2": args.t2, **verdict.to_json_dict()}
    else:
        seed = args.seed
        if seed is None:
            seed = int(os.environ.get("ALGFLOW_SEED", SearchConfig().seed))
        cfg = SearchConfig(restarts=args.restarts, tol=args.tol, seed=seed)
        verdict = _file_iso(_load_algebra(args.a), _load_algebra(args.b), cfg)
        report = {"a": args.a, "b": args.b, **verdict.to_json_dict()}
    _emit(report)
    return EXIT_OK if verdict.is_isomorphic else EXIT_CHECK_FAILED


def _partition_times(t_max: float, step: float) -> list[float]:
    if t_max <= 0 or step <= 0:
        raise ValueError("t_max and step must be positive")
    times = [0.0]
    k = 1
    while k * step < t_max:
        times.append(k * step)
        k += 1
    times.append(t_max)
    for base in (0.0, math.pi / 2, 3 * math.pi / 4):
        n = 0
        while base + n * math.pi <= t_max:
            times.append(base + n * math.pi)  # exceptional points, inserted exactly
            n += 1
    unique = sorted(set(times))
    return unique


def cmd_partition(args: argparse.Namespace) -> int:
    records = [PartitionRecord.at(t) for t in _partition_times(args.t_max, args.step)]
    if args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["t", "class", "param_c", "commutative", "associative"])
        for record in records:
            writer.writerow(record.row())
        payload = buffer.getvalue()
    else:
        payload = json.dumps([r.to_json_dict() for r in records], indent=2) + "\n"
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    except OSError as exc:
        raise ValueError(f"cannot write {args.out}: {exc}") from exc
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def _parse_tol_override(item: str) -> tuple[str, float]:
    name, _, value = item.partition("=")
    if not value:
        raise ValueError(f"expected NAME=VALUE, got {item!r}")
    return name, float(value)


def cmd_verify_theorems(args: argparse.Namespace) -> int:
    overrides = dict(_parse_tol_override(s) for s in args.tol or [])
    results = run_checks(only=args.only or None, tol_overrides=overrides)
    for result in results:
        print(result.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algflow",
        description="Rotational flow of two-dimensional algebras: "
                    "classification, composition-law checks, isomorphism "
                    "testing and canonical forms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify the flow algebra at a time")
    p.add_argument("--t", type=float, required=True, help="time, t >= 0")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="band tolerance around the exceptional times")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("kce", help="composition-law residual at one triple")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(fn=cmd_kce)

    p = sub.add_parser("iso", help="isomorphism verdict for two times or files")
    p.add_argument("--t1", type=float)
    p.add_argument("--t2", type=float)
    p.add_argument("--a", help="JSON algebra file")
    p.add_argument("--b", help="JSON algebra file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--restarts", type=int, default=SearchConfig().restarts)
    p.add_argument("--seed", type=int, default=None,
                   help="search seed (default: ALGFLOW_SEED or 0)")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("partition", help="export the time-axis classification")
    p.add_argument("--t-max", dest="t_max", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("verify-theorems", help="run the verification suite")
    p.add_argument("--only", action="append", choices=CHECK_NAMES,
                   help="run only the named check (repeatable)")
    p.add_argument("--tol", action="append", metavar="NAME=VALUE",
                   help="override a check's headline tolerance (repeatable)")
    p.set_defaults(fn=cmd_verify_theorems)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
