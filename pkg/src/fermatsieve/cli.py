"""Command-line entry point: ``fermatsieve <command> [options]``.

Exit codes: 0 pass, 1 mismatch, 2 data error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from . import fixtures
from .frey import Triple, TripleError
from .newforms import MissingEigenvalueError, NewformDataError, load_newforms

EXIT_PASS, EXIT_MISMATCH, EXIT_DATA, EXIT_CONFIG = 0, 1, 2, 3
DATA_ENV = "FERMATSIEVE_DATA"


class ConfigError(Exception):
    pass


class DataError(Exception):
    pass


@dataclass
class RunConfig:
    triple: Optional[Triple] = None
    p_max: Optional[int] = None
    p0: Optional[int] = None
    irr_search_limit: int = 200
    bound0: int = 5000
    bound1: int = 5000
    k_max: Optional[int] = None
    data_dir: Optional[str] = None
    output: Optional[str] = None
    workers: int = 1
    full_scan: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        for name in ("irr_search_limit", "bound0", "bound1", "workers"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        for name in ("p_max", "p0", "k_max"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ConfigError(f"{name} must be positive")


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_FACTOR = re.compile(r"^\s*(-?\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_int_expr(text: str) -> int:
    """'7225', '5^2*17^2' or '-3' -> integer."""
    sign = 1
    text = text.strip()
    if text.startswith("-"):
        sign, text = -1, text[1:]
    value = 1
    for part in text.split("*"):
        m = _FACTOR.match(part)
        if not m or m.group(1).startswith("-"):
            raise ConfigError(f"cannot parse {text!r}")
        value *= int(m.group(1)) ** int(m.group(2) or 1)
    return sign * value


def parse_triple(text: str) -> Triple:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"a triple needs three comma-separated entries, got {text!r}")
    try:
        return Triple(*(parse_int_expr(p) for p in parts))
    except TripleError as exc:
        raise ConfigError(str(exc)) from exc


def _known_level(triple: Triple) -> Optional[int]:
    for level, abc in fixtures.TRIPLES.items():
        if (triple.a, triple.b, triple.c) == abc:
            return level
    return None


def load_level(data_dir: Optional[str], level: int):
    directory = data_dir or os.environ.get(DATA_ENV)
    if not directory:
        raise DataError(f"no data directory (use --data-dir or set {DATA_ENV})")
    path = os.path.join(directory, f"{level}.json")
    if not os.path.isfile(path):
        raise DataError(f"missing newform file {path}")
    try:
        with open(path, "rb") as fh:
            classes = load_newforms(fh)
    except NewformDataError as exc:
        raise DataError(f"{path}: {exc}") from exc
    if any(f.level != level for f in classes):
        raise DataError(f"{path}: classes are not all of level {level}")
    return classes


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _emit(cfg: RunConfig, payload: dict, lines: Sequence[str], as_json: bool) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if as_json:
        sys.stdout.write(text)
    else:
        for line in lines:
            print(line, flush=True)


def _compare(label: str, got, want, lines: List[str]) -> bool:
    ok = got == want
    lines.append(f"{'ok' if ok else 'MISMATCH'}  {label}: computed {got}, expected {want}")
    return ok


def _require_triple(cfg: RunConfig) -> Triple:
    if cfg.triple is None:
        raise ConfigError("--triple is required")
    return cfg.triple


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_verify_table1(cfg: RunConfig, as_json: bool = False) -> int:
    from .localsolve import local_solvable
    from .sieve import SieveConfig, eliminate_big_primes, kraus_eliminate

    triple = _require_triple(cfg)
    level = _known_level(triple)
    expected = fixtures.TABLE1.get(level) if level else None
    p_max = cfg.p_max or (expected["p_max"] if expected else 3)
    classes = load_level(cfg.data_dir, triple.N0)
    scfg = SieveConfig(p_max=p_max, local_k_max=cfg.k_max)
    per_class, union = eliminate_big_primes(triple, p_max, classes, scfg.skip_p_equal_l)
    lines = [f"triple {triple}  level {triple.N0}  p_max {p_max}"]
    got_L = "all" if not isinstance(union, frozenset) else sorted(union - {3})
    payload = {"triple": [triple.a, triple.b, triple.c], "level": triple.N0, "p_max": p_max, "L_minus_3": got_L}
    ok = True
    if expected:
        ok &= _compare("L_(p_max) - {3}", got_L, list(expected["L_minus_3"]), lines)
        local = []
        for l, p in expected["local"]:
            v = local_solvable(triple, l, p, cfg.k_max)
            local.append(v.to_dict())
            ok &= _compare(f"local ({l},{p})", v.outcome, "Empty", lines)
        payload["local"] = local
        kraus = []
        for l, p in expected["kraus"]:
            hits = [f.name for f in classes if l in per_class[f.name] and kraus_eliminate(triple, l, p, f)]
            kraus.append({"l": l, "p": p, "eliminates": hits})
            ok &= _compare(f"Kraus ({l},{p}) eliminates a surviving class", bool(hits), True, lines)
        # every class with l in its survivor set must be removed by one of the listed witnesses
        for l in sorted({l for l, _ in expected["kraus"]}):
            need = {f.name for f in classes if l in per_class[f.name]}
            done = {h for e in kraus if e["l"] == l for h in e["eliminates"]}
            ok &= _compare(f"Kraus witnesses for l={l} cover every survivor", sorted(need - done), [], lines)
        payload["kraus"] = kraus
    payload["passed"] = bool(ok)
    _emit(cfg, payload, lines, as_json)
    return EXIT_PASS if ok else EXIT_MISMATCH


def cmd_verify_table2(cfg: RunConfig, as_json: bool = False) -> int:
    from .sieve import SieveConfig, full_report

    triple = _require_triple(cfg)
    level = _known_level(triple)
    expected = fixtures.TABLE2.get(level) if level else None
    p_max = cfg.p_max or (fixtures.TABLE1[level]["p_max"] if level else 3)
    p0 = cfg.p0 if cfg.p0 is not None else (expected["p0"] if expected else None)
    classes = load_level(cfg.data_dir, triple.N0)
    report = full_report(triple, SieveConfig(p_max=p_max, p0=p0, irr_search_limit=cfg.irr_search_limit), classes)
    t2 = report["tables"]["table2"]
    lines = [f"triple {triple}  level {triple.N0}  p0 {p0}"]
    ok = True
    if expected:
        ok &= _compare("p_irr", t2["p_irr"], expected["p_irr"], lines)
        ok &= _compare("N_p0 description", t2["classes"], list(expected["classes"]), lines)
        ok &= _compare("mod-9 primes", t2["mod9_primes"], list(expected["mod9"]), lines)
    for pr in t2["pairs"]:
        how = pr["eliminated_by"]
        lines.append(f"    {pr['cls']} {pr['prime']}: {how['kind'] if how else 'not eliminated'}")
    lines.append(f"    C3 rank: {t2['c3_rank']['status']}; point found: {t2['c3_rank']['point_found']}")
    report["passed"] = bool(ok)
    _emit(cfg, report, lines, as_json)
    return EXIT_PASS if ok else EXIT_MISMATCH


def cmd_verify_table3(cfg: RunConfig, as_json: bool = False) -> int:
    from .compare import BOUND0, BOUND1, table3_row

    triple = _require_triple(cfg)
    b0, b1 = (BOUND0, BOUND1) if cfg.full_scan else (cfg.bound0, cfg.bound1)
    row = table3_row(triple, b0, b1, workers=cfg.workers)
    level = _known_level(triple)
    reference = cfg.extra.get("reference", "printed")
    table = fixtures.TABLE3_PRINTED if reference == "printed" else fixtures.TABLE3_COMPUTED
    lines = [f"triple {triple}  bounds {b0}, {b1}  reference {reference}"]
    ok = True
    if level:
        want = table[level]
        flagged = set(row.flagged)
        ok &= _compare("p0", list(row.p0), [p for p in want["p0"] if p not in flagged], lines)
        ok &= _compare("p1", list(row.p1), [p for p in want["p1"] if p not in flagged], lines)
    lines.append(f"    flagged (p | N0, p = 1 mod 3): {list(row.flagged)}")
    payload = dict(row.to_dict(), triple=[triple.a, triple.b, triple.c], reference=reference, passed=bool(ok))
    _emit(cfg, payload, lines, as_json)
    return EXIT_PASS if ok else EXIT_MISMATCH


def cmd_level71(cfg: RunConfig, as_json: bool = False) -> int:
    from .deformation import verify_level71_scenario

    v = verify_level71_scenario()
    lines = [f"{c['status']:7s} {c['check']}" for c in v.checks] + [f"level 71: {'pass' if v.passed else 'FAIL'}"]
    _emit(cfg, v.to_dict(), lines, as_json)
    return EXIT_PASS if v.passed else EXIT_MISMATCH


def cmd_level935(cfg: RunConfig, as_json: bool = False) -> int:
    from .deformation import verify_level935_scenario

    classes = None
    if cfg.data_dir or os.environ.get(DATA_ENV):
        classes = load_level(cfg.data_dir, 935)
    v = verify_level935_scenario(classes)
    lines = [f"{c['status']:7s} {c['check']}" for c in v.checks] + [f"level 935: {'pass' if v.passed else 'FAIL'}"]
    _emit(cfg, v.to_dict(), lines, as_json)
    return EXIT_PASS if v.passed else EXIT_MISMATCH


def cmd_localsolve(cfg: RunConfig, as_json: bool = False) -> int:
    from .localsolve import local_points_everywhere_n9, local_solvable

    triple = _require_triple(cfg)
    n, p = cfg.extra.get("n"), cfg.extra.get("p")
    if n is None:
        raise ConfigError("--n is required")
    if n == 9 and p is None:
        verdicts = local_points_everywhere_n9(triple, cfg.extra.get("prime_bound", 100), cfg.k_max)
        lines = [f"p={v.p:3d} {v.outcome} (k={v.k})" for v in verdicts]
        ok = not any(v.is_empty for v in verdicts)
        _emit(cfg, {"n": 9, "verdicts": [v.to_dict() for v in verdicts]}, lines, as_json)
        return EXIT_PASS if ok else EXIT_MISMATCH
    if p is None:
        raise ConfigError("--p is required unless --n 9")
    v = local_solvable(triple, n, p, cfg.k_max)
    _emit(cfg, dict(v.to_dict(), n=n), [f"n={n} p={p}: {v.outcome} (k={v.k})"], as_json)
    return EXIT_PASS


def cmd_parity(cfg: RunConfig, as_json: bool = False) -> int:
    from .compare import parity_agreement

    triple = _require_triple(cfg)
    bound = cfg.extra.get("prime_bound", 1000)
    agree, total, bad = parity_agreement(triple, bound)
    lines = [f"parity agreement {agree}/{total} up to {bound}" + (f"; disagreements at {bad}" if bad else "")]
    _emit(cfg, {"agree": agree, "total": total, "disagree": bad, "bound": bound}, lines, as_json)
    return EXIT_PASS if not bad else EXIT_MISMATCH


def cmd_report(cfg: RunConfig, as_json: bool = False) -> int:
    from .sieve import SieveConfig, full_report

    triple = _require_triple(cfg)
    level = _known_level(triple)
    p_max = cfg.p_max or (fixtures.TABLE1[level]["p_max"] if level else 3)
    p0 = cfg.p0 if cfg.p0 is not None else (fixtures.TABLE2[level]["p0"] if level else None)
    classes = load_level(cfg.data_dir, triple.N0)
    report = full_report(triple, SieveConfig(p_max=p_max, p0=p0, irr_search_limit=cfg.irr_search_limit, local_k_max=cfg.k_max), classes)
    lines = [f"verdict: {report['verdict']}"] + [f"    gap: {g}" for g in report["gaps"]]
    _emit(cfg, report, lines, as_json)
    return EXIT_PASS if report["verdict"] == "complete" else EXIT_MISMATCH


def cmd_export(cfg: RunConfig, as_json: bool = False) -> int:
    from .export import ExportUnavailable, export_levels

    levels = cfg.extra.get("levels") or list(fixtures.LEVELS)
    out = cfg.data_dir or os.environ.get(DATA_ENV)
    if not out:
        raise ConfigError(f"--data-dir (or {DATA_ENV}) names the output directory")
    try:
        paths = export_levels(levels, out, cfg.extra.get("prime_bound", 600))
    except ExportUnavailable as exc:
        raise ConfigError(str(exc)) from exc
    _emit(cfg, {"written": paths}, [f"wrote {p}" for p in paths], as_json)
    return EXIT_PASS


COMMANDS = {
    "table1": cmd_verify_table1,
    "table2": cmd_verify_table2,
    "table3": cmd_verify_table3,
    "level71": cmd_level71,
    "level935": cmd_level935,
    "localsolve": cmd_localsolve,
    "parity": cmd_parity,
    "report": cmd_report,
    "export-newforms": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fermatsieve", description="Modular-method sieve for a x^n + b y^n + c z^n = 0.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--triple", help="a,b,c as integers or factored, e.g. 5^2,2^4,23^4")
    ap.add_argument("--level", type=int, help="use the worked triple of this level")
    ap.add_argument("--data-dir", help=f"newform JSON directory (default ${DATA_ENV})")
    ap.add_argument("--p-max", type=int)
    ap.add_argument("--p0", type=int)
    ap.add_argument("--irr-limit", type=int, default=200)
    ap.add_argument("--bound0", type=int, default=5000)
    ap.add_argument("--bound1", type=int, default=5000)
    ap.add_argument("--full", action="store_true", help="table3 up to 106^2 and 218^2")
    ap.add_argument("--reference", choices=("printed", "recomputed"), default="printed",
                    help="table3 values to compare against")
    ap.add_argument("--n", type=int)
    ap.add_argument("--p", type=int)
    ap.add_argument("--k-max", type=int)
    ap.add_argument("--prime-bound", type=int)
    ap.add_argument("--levels", help="comma-separated levels for export-newforms")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--output", "-o", help="also write the JSON result here")
    ap.add_argument("--json", action="store_true", help="print JSON instead of a summary")
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    triple = None
    if args.triple:
        triple = parse_triple(args.triple)
    elif args.level:
        if args.level not in fixtures.TRIPLES:
            raise ConfigError(f"no worked triple at level {args.level}")
        triple = Triple(*fixtures.TRIPLES[args.level])
    extra = {"reference": args.reference, "n": args.n, "p": args.p}
    if args.prime_bound:
        extra["prime_bound"] = args.prime_bound
    if args.levels:
        extra["levels"] = [int(x) for x in args.levels.split(",")]
    cfg = RunConfig(
        triple=triple,
        p_max=args.p_max,
        p0=args.p0,
        irr_search_limit=args.irr_limit,
        bound0=args.bound0,
        bound1=args.bound1,
        k_max=args.k_max,
        data_dir=args.data_dir,
        output=args.output,
        workers=args.workers,
        full_scan=args.full,
        extra=extra,
    )
    cfg.validate()
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        sys.stdout.reconfigure(encoding="utf-8", line_buffering=True)
    except AttributeError:
        pass
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        fn = COMMANDS[args.command]
        return fn(cfg, as_json=args.json)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataError, MissingEigenvalueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
