"""Command line front end for active-sum verification of metacyclic groups.

Four subcommands:

* ``verify``  — run the full pipeline on one parameter tuple and report the
  verdict (text, JSON, or CSV).
* ``scan``    — enumerate every valid tuple with m*s <= max_order and emit
  one verdict row per tuple, sorted by (m*s, m, s, t, r).
* ``present`` — print the active-sum presentation for one tuple.
* ``oracle``  — cross-check the closed-form structure invariants (center,
  derived subgroup, Schur multiplier of the central quotient, Ganea bound)
  against independent brute-force computations.

Exit codes (fixed for CI use):

* 0 — success; for ``verify`` this additionally requires isomorphic = true.
* 1 — invalid input (bad flags or parameters violating the presentation
  constraints).
* 2 — resource limit hit (coset limit, element-enumeration cap, overflow).
* 3 — oracle mismatch or failed internal check (signals an implementation
  bug, never bad user input).
* 4 — ``verify`` completed but the active sum is not isomorphic to the
  group.  Codes 1-3 have fixed meanings above, so the legitimate negative
  answer gets its own code; "exit 0 iff isomorphic" still holds.

The ``METASUM_CAP`` environment variable overrides the element-enumeration
cap used by all commands.

JSON reports round-trip byte-identically: parse with ``json.loads``,
re-serialize with :func:`canonical_json`, and the bytes match.
"""

from __future__ import annotations

import argparse
import csv
import json
import multiprocessing
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .active_sum import build_active_sum_presentation, verdict
from .core import (
    MetacyclicParams,
    Subgroup,
    bruteforce_center,
    bruteforce_derived,
    default_cap,
    validate,
)
from .errors import (
    CapExceeded,
    ConstraintViolation,
    CosetLimitExceeded,
    InternalCheckError,
    OverflowDetected,
    SearchFailed,
)
from .families import Family, build_generator_family, divisibility_condition, transversal
from .hall import build_hall_family
from .structure import (
    bruteforce_derived_center_intersection,
    bruteforce_schur_of_central_quotient,
    center_closed_form,
    derived_center_intersection_order,
    derived_closed_form,
    ganea_check,
    schur_order_of_central_quotient,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RESOURCE = 2
EXIT_MISMATCH = 3
EXIT_NOT_ISOMORPHIC = 4

FAMILY_MODES = ("auto", "theorem3", "hall")
OUTPUT_FORMATS = ("text", "json", "csv")

SCAN_COLUMNS = (
    "m",
    "s",
    "t",
    "r",
    "divisibility",
    "regular",
    "independent",
    "ganea",
    "active_sum_order",
    "group_order",
    "isomorphic",
    "family_mode",
    "partial",
)


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation parameters, one instance per CLI run."""

    command: str
    m: int | None = None
    s: int | None = None
    t: int | None = None
    r: int | None = None
    max_order: int | None = None
    family_mode: str = "auto"
    max_cosets: int | None = None
    output: str = "text"
    jobs: int = 1


def canonical_json(obj: Any) -> str:
    """The one JSON serialization used everywhere, so reports round-trip."""
    return json.dumps(obj, indent=2, sort_keys=True)


def resolve_family_mode(p: MetacyclicParams, mode: str) -> str:
    """auto resolves to theorem3 when gcd(m, r-1) divides t, hall otherwise."""
    if mode == "auto":
        return "theorem3" if divisibility_condition(p) else "hall"
    return mode


def build_family(p: MetacyclicParams, mode: str) -> Family:
    if mode == "theorem3":
        return build_generator_family(p)
    if mode == "hall":
        return build_hall_family(p).family
    raise ConstraintViolation(f"unknown family mode {mode!r}")


def valid_tuples(max_order: int) -> list[MetacyclicParams]:
    """All canonical (m, s, t, r) with m*s <= max_order, sorted for reports.

    For each (m, s): r runs over [1, m] with r**s = 1 mod m, t over [0, m)
    with m | t*(r-1).  Sort key is (m*s, m, s, t, r).
    """
    if max_order < 1:
        raise ConstraintViolation(f"max_order must be positive, got {max_order}")
    out = []
    for m in range(1, max_order + 1):
        one = 1 % m
        for s in range(1, max_order // m + 1):
            for r in range(1, m + 1):
                if pow(r, s, m) != one:
                    continue
                for t in range(m):
                    if t * (r - 1) % m == 0:
                        out.append(MetacyclicParams(m=m, s=s, t=t, r=r))
    out.sort(key=lambda p: (p.order, p.m, p.s, p.t, p.r))
    return out


def _fmt_bool(value: bool | None) -> str:
    if value is None:
        return ""
    return "true" if value else "false"


def _element_lists(subgroups: Sequence[Subgroup]) -> list[list[int]]:
    return [list(sub.generator) for sub in subgroups]


def _sorted_elements(sub: Subgroup) -> list[list[int]]:
    return [list(e) for e in sorted(sub.elements)]


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def verdict_payload(
    p: MetacyclicParams,
    mode: str,
    family: Family,
    max_cosets: int | None = None,
) -> tuple[dict, Any]:
    """Run the pipeline and shape the report dict; returns (payload, verdict)."""
    v = verdict(p, family, max_cosets=max_cosets)
    trans = transversal(p, family)
    payload = {
        "params": {"m": p.m, "s": p.s, "t": p.t, "r": p.r},
        "family": _element_lists(family.subgroups),
        "family_mode": mode,
        "transversal": _element_lists(trans.representatives),
        "checks": {
            "generating": bool(v.generating),
            "regular": bool(v.regular),
            "independent": bool(v.independent),
            "ganea": bool(v.ganea_surjective),
        },
        "orders": {
            "group": v.group_order,
            "active_sum": v.active_sum_order,
            "ab_S": v.abelianized_order_s,
            "ab_G": v.abelianized_order_g,
        },
        "isomorphic": bool(v.isomorphic),
    }
    return payload, v


def _scan_row_from(p: MetacyclicParams, mode: str, v: Any) -> dict:
    return {
        "m": p.m,
        "s": p.s,
        "t": p.t,
        "r": p.r,
        "divisibility": divisibility_condition(p),
        "regular": bool(v.regular),
        "independent": bool(v.independent),
        "ganea": bool(v.ganea_surjective),
        "active_sum_order": v.active_sum_order,
        "group_order": v.group_order,
        "isomorphic": bool(v.isomorphic),
        "family_mode": mode,
        "partial": v.active_sum_order is None,
    }


def _print_verify_text(payload: dict) -> None:
    par = payload["params"]
    print(f"params: m={par['m']} s={par['s']} t={par['t']} r={par['r']}")
    print(f"family mode: {payload['family_mode']}")
    gens = " ".join(f"({g[0]},{g[1]})" for g in payload["family"])
    print(f"family generators: {gens}")
    reps = " ".join(f"({g[0]},{g[1]})" for g in payload["transversal"])
    print(f"transversal: {reps}")
    c = payload["checks"]
    print(
        "checks: generating={} regular={} independent={} ganea={}".format(
            _fmt_bool(c["generating"]),
            _fmt_bool(c["regular"]),
            _fmt_bool(c["independent"]),
            _fmt_bool(c["ganea"]),
        )
    )
    o = payload["orders"]
    active = "unknown" if o["active_sum"] is None else o["active_sum"]
    print(
        f"orders: |G|={o['group']} |S|={active} "
        f"ab(S)={o['ab_S']} ab(G)={o['ab_G']}"
    )
    print(f"isomorphic: {_fmt_bool(payload['isomorphic'])}")


def _print_rows_csv(rows: list[dict]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for row in rows:
        cells = []
        for col in SCAN_COLUMNS:
            value = row[col]
            if isinstance(value, bool):
                cells.append(_fmt_bool(value))
            elif value is None:
                cells.append("")
            else:
                cells.append(str(value))
        writer.writerow(cells)


def _print_rows_text(rows: list[dict]) -> None:
    table = [list(SCAN_COLUMNS)]
    for row in rows:
        cells = []
        for col in SCAN_COLUMNS:
            value = row[col]
            if isinstance(value, bool):
                cells.append(_fmt_bool(value))
            elif value is None:
                cells.append("-")
            else:
                cells.append(str(value))
        table.append(cells)
    widths = [max(len(line[i]) for line in table) for i in range(len(SCAN_COLUMNS))]
    for line in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())


def cmd_verify(config: RunConfig) -> int:
    p = validate(config.m, config.s, config.t, config.r)
    mode = resolve_family_mode(p, config.family_mode)
    family = build_family(p, mode)
    payload, v = verdict_payload(p, mode, family, max_cosets=config.max_cosets)
    if config.output == "json":
        print(canonical_json(payload))
    elif config.output == "csv":
        _print_rows_csv([_scan_row_from(p, mode, v)])
    else:
        _print_verify_text(payload)
    if v.active_sum_order is None:
        return EXIT_RESOURCE
    return EXIT_OK if v.isomorphic else EXIT_NOT_ISOMORPHIC


# --------------------------------------------------------------------------
# scan
# --------------------------------------------------------------------------


def compute_scan_row(
    p: MetacyclicParams, family_mode: str = "auto", max_cosets: int | None = None
) -> dict:
    """Verdict row for one tuple; partial (|S| = None) on coset-limit hits."""
    mode = resolve_family_mode(p, family_mode)
    family = build_family(p, mode)
    v = verdict(p, family, max_cosets=max_cosets)
    return _scan_row_from(p, mode, v)


def _scan_worker(task: tuple[int, int, int, int, str, int | None]) -> dict:
    m, s, t, r, mode, max_cosets = task
    return compute_scan_row(MetacyclicParams(m=m, s=s, t=t, r=r), mode, max_cosets)


def cmd_scan(config: RunConfig) -> int:
    if config.max_order is None or config.max_order < 1:
        raise ConstraintViolation("scan requires --max-order >= 1")
    if config.max_order > default_cap():
        raise ConstraintViolation(
            f"--max-order {config.max_order} exceeds the enumeration cap {default_cap()}"
        )
    tuples = valid_tuples(config.max_order)
    tasks = [(p.m, p.s, p.t, p.r, config.family_mode, config.max_cosets) for p in tuples]
    if config.jobs > 1:
        with multiprocessing.Pool(config.jobs) as pool:
            rows = pool.map(_scan_worker, tasks)
    else:
        rows = [_scan_worker(task) for task in tasks]
    if config.output == "json":
        print(canonical_json(rows))
    elif config.output == "csv":
        _print_rows_csv(rows)
    else:
        _print_rows_text(rows)
    return EXIT_OK


# --------------------------------------------------------------------------
# present
# --------------------------------------------------------------------------


def cmd_present(config: RunConfig) -> int:
    if config.output == "csv":
        raise ConstraintViolation("present supports text and json output only")
    p = validate(config.m, config.s, config.t, config.r)
    mode = resolve_family_mode(p, config.family_mode)
    family = build_family(p, mode)
    pres = build_active_sum_presentation(p, family)
    if config.output == "json":
        payload = {
            "params": {"m": p.m, "s": p.s, "t": p.t, "r": p.r},
            "family_mode": mode,
            "generators": [
                {"symbol": g.symbol, "order": g.order, "element": list(g.element)}
                for g in pres.generators
            ],
            "relators": [list(rel) for rel in pres.relators],
        }
        print(canonical_json(payload))
    else:
        print(pres.dump())
    return EXIT_OK


# --------------------------------------------------------------------------
# oracle
# --------------------------------------------------------------------------


def oracle_report(p: MetacyclicParams) -> dict:
    """Closed-form vs brute-force comparison table for one tuple.

    The Schur comparison is skipped (agree = null, with a note) when the
    central quotient is larger than the homology guard; skipped rows do not
    count as disagreement.
    """
    comparisons: dict[str, dict] = {}

    closed_center = _sorted_elements(center_closed_form(p))
    brute_center = _sorted_elements(bruteforce_center(p))
    comparisons["center"] = {
        "closed": closed_center,
        "brute": brute_center,
        "agree": closed_center == brute_center,
    }

    closed_derived = _sorted_elements(derived_closed_form(p))
    brute_derived = _sorted_elements(bruteforce_derived(p))
    comparisons["derived"] = {
        "closed": closed_derived,
        "brute": brute_derived,
        "agree": closed_derived == brute_derived,
    }

    closed_cap = derived_center_intersection_order(p)
    brute_cap = bruteforce_derived_center_intersection(p)
    comparisons["derived_center_intersection"] = {
        "closed": closed_cap,
        "brute": brute_cap,
        "agree": closed_cap == brute_cap,
    }

    closed_schur = schur_order_of_central_quotient(p)
    schur_note = None
    try:
        brute_schur = bruteforce_schur_of_central_quotient(p)
    except CapExceeded as exc:
        brute_schur = None
        schur_note = str(exc)
    comparisons["schur"] = {
        "closed": closed_schur,
        "brute": brute_schur,
        "agree": None if brute_schur is None else closed_schur == brute_schur,
    }
    if schur_note is not None:
        comparisons["schur"]["note"] = schur_note

    closed_ganea = ganea_check(p)
    comparisons["ganea"] = {
        "closed": bool(closed_ganea.surjective),
        "brute": None
        if brute_schur is None
        else bool(brute_schur <= brute_cap),
        "agree": None
        if brute_schur is None
        else bool(closed_ganea.surjective) == (brute_schur <= brute_cap),
    }

    all_agree = all(c["agree"] is not False for c in comparisons.values())
    return {
        "params": {"m": p.m, "s": p.s, "t": p.t, "r": p.r},
        "comparisons": comparisons,
        "all_agree": all_agree,
    }


def _print_oracle_text(report: dict) -> None:
    par = report["params"]
    print(f"params: m={par['m']} s={par['s']} t={par['t']} r={par['r']}")
    for name, comp in report["comparisons"].items():
        if comp["agree"] is None:
            note = comp.get("note", "brute-force route unavailable")
            print(f"{name}: skipped ({note})")
            continue
        status = "agree" if comp["agree"] else "MISMATCH"
        if isinstance(comp["closed"], list):
            detail = f"order {len(comp['closed'])} vs {len(comp['brute'])}"
        elif isinstance(comp["closed"], bool):
            detail = f"{_fmt_bool(comp['closed'])} vs {_fmt_bool(comp['brute'])}"
        else:
            detail = f"{comp['closed']} vs {comp['brute']}"
        print(f"{name}: {status} ({detail})")
    print(f"all agree: {_fmt_bool(report['all_agree'])}")


def cmd_oracle(config: RunConfig) -> int:
    if config.output == "csv":
        raise ConstraintViolation("oracle supports text and json output only")
    p = validate(config.m, config.s, config.t, config.r)
    report = oracle_report(p)
    if config.output == "json":
        print(canonical_json(report))
    else:
        _print_oracle_text(report)
    return EXIT_OK if report["all_agree"] else EXIT_MISMATCH


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with the invalid-input code on usage errors."""

    def error(self, message: str) -> None:  # noqa: A003 - argparse API
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _add_params(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-m", type=int, required=True, help="order of the normal generator a")
    sub.add_argument("-s", type=int, required=True, help="order of b modulo <a>")
    sub.add_argument("-t", type=int, required=True, help="exponent with b**s = a**t")
    sub.add_argument("-r", type=int, required=True, help="twist with b**-1 a b = a**r")


def _add_output(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--output",
        choices=OUTPUT_FORMATS,
        default="text",
        help="report format (default: text)",
    )


def _add_family(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--family",
        choices=FAMILY_MODES,
        default="auto",
        dest="family_mode",
        help="family construction; auto picks theorem3 when gcd(m, r-1) | t",
    )


def build_parser() -> _Parser:
    parser = _Parser(
        prog="metasum",
        description="Active sums of cyclic subgroups of finite metacyclic groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="verify one parameter tuple end to end")
    _add_params(p_verify)
    _add_family(p_verify)
    p_verify.add_argument(
        "--max-cosets",
        type=int,
        default=None,
        help="coset table size limit (default: 10 * m * s)",
    )
    _add_output(p_verify)

    p_scan = sub.add_parser("scan", help="verdict table over all tuples up to a group order")
    p_scan.add_argument("--max-order", type=int, required=True, help="largest m*s to include")
    _add_family(p_scan)
    p_scan.add_argument("--max-cosets", type=int, default=None)
    p_scan.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    _add_output(p_scan)

    p_present = sub.add_parser("present", help="print the active-sum presentation")
    _add_params(p_present)
    _add_family(p_present)
    _add_output(p_present)

    p_oracle = sub.add_parser("oracle", help="closed forms vs brute force cross-check")
    _add_params(p_oracle)
    _add_output(p_oracle)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        m=getattr(args, "m", None),
        s=getattr(args, "s", None),
        t=getattr(args, "t", None),
        r=getattr(args, "r", None),
        max_order=getattr(args, "max_order", None),
        family_mode=getattr(args, "family_mode", "auto"),
        max_cosets=getattr(args, "max_cosets", None),
        output=getattr(args, "output", "text"),
        jobs=getattr(args, "jobs", 1),
    )


def run(config: RunConfig) -> int:
    if config.command == "verify":
        return cmd_verify(config)
    if config.command == "scan":
        return cmd_scan(config)
    if config.command == "present":
        return cmd_present(config)
    if config.command == "oracle":
        return cmd_oracle(config)
    raise ConstraintViolation(f"unknown command {config.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    try:
        return run(config)
    except ConstraintViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CapExceeded, CosetLimitExceeded, OverflowDetected) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InternalCheckError, SearchFailed) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
