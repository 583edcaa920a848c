"""Command-line entry point.

Usage examples::

    toeplitz-odometer toeplitz window --from 0 --to 5
    toeplitz-odometer --q 6,12,24 toeplitz density --level 2 --format json
    toeplitz-odometer orbit eval --g digits:0+const:3 --fill 2 --from -6 --to 6
    toeplitz-odometer saturation claim --depth 3 --cases plain,shifted
    toeplitz-odometer saturation demo --a digits:0+const:3 --window 72 --levels 3..5
    toeplitz-odometer ndfinite scan --nmax 12 --dmax 3 --json

Exit status: 0 verified / ok, 1 violations found, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import ndfinite, orbit, saturation, toeplitz
from .odometer import (
    DepthExhausted,
    PeriodStructure,
    PeriodStructureError,
    parse_element,
    parse_rule,
)

log = logging.getLogger("toeplitz_odometer")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
DEFAULT_RULE = "geometric base=6 ratio=2"
DEFAULT_DEPTH = 8


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    structure: PeriodStructure
    command: str
    action: str
    params: dict = field(default_factory=dict)
    output: str = "text"
    verbosity: int = 0


def load_structure_config(path: str) -> PeriodStructure:
    """Read ``{"q": [...]}`` or ``{"rule": "geometric base=6 ratio=2", "depth": 8}``."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    if "q" in data and "rule" in data:
        raise UsageError("config declares both 'q' and 'rule'")
    if "q" in data:
        return PeriodStructure(tuple(data["q"]))
    if "rule" in data:
        return PeriodStructure.from_rule(parse_rule(data["rule"]), int(data.get("depth", DEFAULT_DEPTH)))
    raise UsageError("config needs 'q' or 'rule'")


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    grp = parser.add_argument_group("period structure")
    grp.add_argument("--q", default=d(None), help="explicit comma-separated q-list, e.g. 6,12,24")
    grp.add_argument("--q-rule", default=d(None), help='generator rule, e.g. "geometric base=6 ratio=2"')
    grp.add_argument("--depth", type=int, default=d(None), help=f"levels K for --q-rule (default {DEFAULT_DEPTH})")
    grp.add_argument("--config", default=d(None), help="JSON file declaring the period structure")
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("-v", "--verbose", action="count", default=d(0))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toeplitz-odometer", description=__doc__.split("\n\n")[0])
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name, **kw):
        p = group.add_parser(name, **kw)
        _common(p, suppress=True)
        return p

    tz = sub.add_parser("toeplitz", help="the sequence, its skeletons and densities")
    tzs = tz.add_subparsers(dest="action", required=True)
    p = leaf(tzs, "window")
    p.add_argument("--from", dest="a", type=int, required=True)
    p.add_argument("--to", dest="b", type=int, required=True)
    p = leaf(tzs, "skeleton")
    p.add_argument("--level", type=int, required=True)
    p = leaf(tzs, "density")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--csv", action="store_true", help="emit level,defined_count,p_i,d_i rows for levels 0..LEVEL")

    ob = sub.add_parser("orbit", help="orbit-closure points and fibers")
    obs = ob.add_subparsers(dest="action", required=True)
    p = leaf(obs, "eval")
    p.add_argument("--g", required=True, help="int:<m> | digits:<s0,s1,...>[+const:<c>|+unknown]")
    p.add_argument("--fill", type=int, default=0)
    p.add_argument("--from", dest="a", type=int, required=True)
    p.add_argument("--to", dest="b", type=int, required=True)
    p.add_argument("--max-level", type=int)
    p = leaf(obs, "fiber")
    p.add_argument("--g", required=True)
    p.add_argument("--max-level", type=int)
    p = leaf(obs, "proximal")
    p.add_argument("--g", required=True)
    p.add_argument("--fills", required=True, help="two fills, e.g. 0,3")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--max-level", type=int)

    sa = sub.add_parser("saturation", help="doubling claim and window demonstration")
    sas = sa.add_subparsers(dest="action", required=True)
    p = leaf(sas, "claim")
    p.add_argument("--depth-m", "--m", dest="m", type=int, help="block depth m (digits s_0..s_m)")
    p.add_argument("--cases", default="plain,shifted")
    p.add_argument("--start-level", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="include elapsed seconds (breaks byte-identical output)")
    p = leaf(sas, "demo")
    p.add_argument("--a", required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--levels", default="3..5", help="inclusive range like 2..5 or a list 3,4")
    p.add_argument("--variant-levels", type=int, default=1)
    p.add_argument("--timing", action="store_true")

    nd = sub.add_parser("ndfinite", help="N_d on finite rotations")
    nds = nd.add_subparsers(dest="action", required=True)
    p = leaf(nds, "scan")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--dmax", type=int, default=3)
    p.add_argument("--json", action="store_true", help="same as --format json")
    p = leaf(nds, "show")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--power", type=int)
    return parser


def _structure_from_args(ns: argparse.Namespace) -> PeriodStructure:
    chosen = [x for x in (ns.q, ns.q_rule, ns.config) if x is not None]
    if len(chosen) > 1:
        raise UsageError("--q, --q-rule and --config are mutually exclusive")
    if ns.config is not None:
        return load_structure_config(ns.config)
    if ns.q is not None:
        if ns.depth is not None:
            raise UsageError("--depth applies to --q-rule only")
        try:
            q = tuple(int(x) for x in ns.q.split(",") if x.strip())
        except ValueError as exc:
            raise UsageError(f"bad --q list {ns.q!r}") from exc
        return PeriodStructure(q)
    rule = parse_rule(ns.q_rule or DEFAULT_RULE)
    return PeriodStructure.from_rule(rule, ns.depth if ns.depth is not None else DEFAULT_DEPTH)


def parse_config(argv: list[str]) -> RunConfig:
    parser = build_parser()
    # depth M of the claim subcommand is spelled --depth there; rename before parsing
    argv = list(argv)
    if "saturation" in argv and "claim" in argv:
        start = argv.index("claim")
        argv = argv[: start + 1] + ["--m" if a == "--depth" else a for a in argv[start + 1 :]]
    ns = parser.parse_args(argv)
    structure = _structure_from_args(ns)
    params = {k: v for k, v in vars(ns).items() if k not in {"q", "q_rule", "depth", "config", "format", "verbose", "command", "action"}}
    output = "json" if params.get("json") else ns.format
    if ns.command == "saturation" and structure.depth < 4:
        raise UsageError(f"saturation subcommands need K >= 4 levels, got {structure.depth}")
    return RunConfig(structure, ns.command, ns.action, params, output, ns.verbose)


def _levels(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _eval_record(n: int, r: orbit.EvalResult) -> dict:
    if isinstance(r, orbit.Forced):
        return {"n": n, "kind": "forced", "symbol": r.symbol, "level": r.level}
    if isinstance(r, orbit.AperiodicCertified):
        return {"n": n, "kind": "aperiodic", "symbol": r.fill}
    return {"n": n, "kind": "undetermined", "horizon": r.horizon}


def _cert_record(c: orbit.FiberCertificate) -> dict:
    if isinstance(c, orbit.SingletonCertified):
        return {"certificate": "singleton", "defined_levels": list(c.witness_levels)}
    if isinstance(c, orbit.FiveCertified):
        return {"certificate": "five", "defined_levels": list(c.defined_levels)}
    return {"certificate": "unknown", "level": c.level, "defined_seen": c.defined_seen}


def execute(cfg: RunConfig) -> tuple[int, dict, str]:
    """Run one subcommand; returns (exit status, JSON record, text rendering)."""
    ps, P = cfg.structure, cfg.params
    status = EXIT_OK
    started = time.perf_counter()

    if cfg.command == "toeplitz":
        if cfg.action == "window":
            syms = toeplitz.window(ps, P["a"], P["b"])
            rec = {"from": P["a"], "to": P["b"], "symbols": list(syms)}
            text = " ".join(map(str, syms))
        elif cfg.action == "skeleton":
            tab = toeplitz.skeleton(ps, P["level"])
            rec = {
                "level": tab.level,
                "p_i": tab.period,
                "defined_count": tab.defined_count,
                "cells": list(tab.cells),
                "essential": toeplitz.is_essential(tab.cells),
            }
            text = (
                f"level {tab.level}  p_i={tab.period}  defined={tab.defined_count}\n"
                + "".join("." if c is None else str(c) for c in tab.cells)
            )
        else:
            if P.get("csv"):
                lines = ["level,defined_count,p_i,d_i"]
                rows = []
                for lvl in range(P["level"] + 1):
                    rep = toeplitz.density(ps, lvl)
                    rows.append(rep.as_record())
                    lines.append(f"{lvl},{rep.defined_count},{rep.period},{rep.density}")
                rec = {"rows": rows}
                text = "\n".join(lines)
            else:
                rep = toeplitz.density(ps, P["level"])
                rec = rep.as_record()
                text = (
                    f"level={rep.level} defined_count={rep.defined_count} p_i={rep.period} "
                    f"d_i={rep.density} classification={rep.classification}\n"
                    f"recursion(c={rep.recursion_constant})={rep.recursion_value} "
                    f"recursion(c={rep.alt_constant})={rep.alt_recursion_value}"
                    + ("  [constant discrepancy]" if rep.constant_discrepancy else "")
                )

    elif cfg.command == "orbit":
        g = parse_element(ps, P["g"])
        if cfg.action == "eval":
            pt = orbit.OrbitPoint(g, P["fill"])
            results = [_eval_record(n, orbit.point_eval(pt, n, P.get("max_level"))) for n in range(P["a"], P["b"] + 1)]
            rec = {"g": str(g), "fill": P["fill"], "positions": results}
            text = "\n".join(
                f"{r['n']}\t{r['kind']}\t{r.get('symbol', '?')}" + (f"\t@{r['level']}" if "level" in r else "")
                for r in results
            )
        elif cfg.action == "fiber":
            rec = {"g": str(g), **_cert_record(orbit.fiber_certificate(g, P.get("max_level")))}
            text = " ".join(f"{k}={v}" for k, v in rec.items())
        else:
            try:
                f1, f2 = (int(x) for x in P["fills"].split(","))
            except ValueError as exc:
                raise UsageError("--fills needs two comma-separated symbols") from exc
            res = orbit.proximal_witness(
                orbit.OrbitPoint(g, f1), orbit.OrbitPoint(g, f2), P["radius"], P["bound"], P.get("max_level")
            )
            found = not isinstance(res, orbit.NotFound)
            rec = {"g": str(g), "fills": [f1, f2], "radius": P["radius"], "bound": P["bound"],
                   "found": found, "k": res if found else None}
            text = f"k={res}" if found else f"not found within |k| <= {P['bound']}"

    elif cfg.command == "saturation":
        if cfg.action == "claim":
            m = P.get("m")
            if m is None:
                raise UsageError("saturation claim needs --depth M")
            try:
                cases = [saturation.Offset(c.strip()) for c in P["cases"].split(",") if c.strip()]
            except ValueError as exc:
                raise UsageError(f"bad --cases {P['cases']!r}") from exc
            rep = saturation.claim_check_exhaustive(ps, m, cases, P["start_level"])
            rec = rep.as_record()
            status = EXIT_OK if rep.ok else EXIT_VIOLATION
            text = (
                f"depth={m} start_level={rep.start} cases={','.join(rep.cases)} scanned={rep.scanned} "
                f"eligible={rep.eligible} checked={rep.checked}\nviolations: {len(rep.violations)}"
            )
        else:
            a = parse_element(ps, P["a"])
            rep = saturation.nonsat_demo(a, P["window"], _levels(P["levels"]), P["variant_levels"])
            rec = rep.as_record()
            viol = rep.violations
            status = EXIT_OK if not viol and rep.control_ok else EXIT_VIOLATION
            lines = [f"a={rep.a} b={rep.b} window={rep.window}"]
            for row in rep.rows:
                lines.append(
                    f"m={row.m} k={row.k} a-fill={row.a_fill_symbols} b-symbols={row.b_symbols} "
                    f"a-mismatches={len(row.a_side_mismatches)} b-reads-2={len(row.b_symbol_2_positions)}"
                )
            lines.append(f"realized fill pairs: {rep.realized_fill_pairs}")
            lines.append(f"control ok: {rep.control_ok}")
            lines.append(f"violations: {len(viol)}")
            text = "\n".join(lines)
        if P.get("timing"):
            rec["elapsed"] = round(time.perf_counter() - started, 3)

    else:
        if cfg.action == "scan":
            rows, bad = ndfinite.theorem_a_check(P["nmax"], P["dmax"])
            dec_fail = []
            cond_fail = []
            for row in rows:
                dec = ndfinite.decomposition_check(row.N, row.r, row.n, row.d)
                if not dec.ok:
                    dec_fail.append(row.as_record())
                if row.d < P["dmax"]:
                    c3 = ndfinite.condition_three_check(row.N, row.r, row.n, row.d)
                    eq_next = ndfinite.nd_set(ndfinite.FiniteRotation(row.N, row.r), row.d + 1).tuples == (
                        ndfinite.nd_power(ndfinite.FiniteRotation(row.N, row.r), row.n, row.d + 1).tuples
                    )
                    if c3 != eq_next:
                        cond_fail.append(row.as_record())
            rec = {
                "nmax": P["nmax"],
                "dmax": P["dmax"],
                "rows": [r.as_record() for r in rows],
                "counterexamples": [r.as_record() for r in bad],
                "decomposition_failures": dec_fail,
                "condition_three_mismatches": cond_fail,
            }
            status = EXIT_VIOLATION if (bad or dec_fail or cond_fail) else EXIT_OK
            text = (
                f"rows={len(rows)} counterexamples={len(bad)} decomposition_failures={len(dec_fail)} "
                f"condition_three_mismatches={len(cond_fail)}"
            )
        else:
            rec = ndfinite.show(P["N"], P["r"], P["d"], P.get("power"))
            text = " ".join(f"{k}={v}" for k, v in rec.items() if not k.startswith("tuples"))
    return status, rec, text


def run(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (UsageError, PeriodStructureError, DepthExhausted, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * min(cfg.verbosity, 2), format="%(levelname)s %(message)s")
    log.debug("structure q=%s rule=%s", cfg.structure.q, cfg.structure.rule)
    try:
        status, rec, text = execute(cfg)
    except (UsageError, DepthExhausted, saturation.CertificateMissing, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output == "json":
        out.write(json.dumps(rec, sort_keys=False) + "\n")
    else:
        out.write(text + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
