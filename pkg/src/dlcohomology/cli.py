"""Command-line front end.

Exit codes: 0 when every check passes, 1 on an inconsistency or unmet
precondition, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import cohomology as coh
from .brauer import BrauerLine, edge_partition_labels, hom_dim_table
from .characters import phi_d_blocks
from .errors import InconsistencyError, InvalidArgument, PreconditionViolation, UnsupportedRegime
from .partitions import Partition, m_core


class _Out:
    def __init__(self, quiet: bool):
        self.quiet = quiet
        self.lines: list[str] = []

    def __call__(self, text: str = "") -> None:
        self.lines.append(text)
        if not self.quiet:
            print(text)


def _common(parent: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    kw: dict[str, Any] = {"default": argparse.SUPPRESS} if parent else {}
    p.add_argument("--format", choices=["table", "json"], **({"default": "table"} if not parent else kw))
    p.add_argument("--p", type=int, **({"default": 2} if not parent else kw), help="prime of the coefficient field")
    p.add_argument("--seed", type=int, **({"default": None} if not parent else kw), help="accepted and ignored")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dlcoh", parents=[_common(False)],
                                     description="Cohomology tables of X_{n,d} and Brauer line checks")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(True)

    c = sub.add_parser("cohomology", parents=[common], help="cohomology table of X_{n,d}")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--mu", type=Partition.parse, default=None, help='coefficient partition, e.g. "2+1"')
    c.add_argument("--mod-m", type=int, default=None, dest="mod_m")
    c.add_argument("--override", action="store_true", help="assume torsion-freeness outside the gate")
    c.add_argument("--normalization", choices=["X", "C"], default=None)

    c = sub.add_parser("check-les", parents=[common], help="long exact sequence Euler identity sweep")
    c.add_argument("--max-n", type=int, required=True, dest="max_n")
    c.add_argument("--max-mu", type=int, default=6, dest="max_mu")

    c = sub.add_parser("invariants", parents=[common], help="structural invariants of one table")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, required=True)

    c = sub.add_parser("blocks", parents=[common], help="partitions of n grouped by d-core")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, required=True)

    c = sub.add_parser("brauer", parents=[common], help="Brauer line with m edges")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--r", type=int, default=1)
    c.add_argument("--labels", type=int, default=None, metavar="N")

    c = sub.add_parser("tilting", parents=[common], help="partial-tilting check of a truncated resolution")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--r", type=int, default=1)
    c.add_argument("--j", type=int, required=True)

    c = sub.add_parser("dl-complex", parents=[common], help="modular cohomology complex model")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--mod-m", type=int, required=True, dest="mod_m")
    c.add_argument("--r", type=int, default=1)
    c.add_argument("--override", action="store_true")

    c = sub.add_parser("verify-all", parents=[common], help="run every acceptance sweep")
    c.add_argument("--only", type=int, nargs="*", default=None, help="criterion numbers to run")
    return parser


def render_table(t: coh.CohomologyTable) -> list[str]:
    head = f"X_{{{t.n},{t.d}}}  coefficients N({t.mu})  ring={t.ring_tag}  degrees={t.normalization}"
    rows = [head, f"{'degree':>6}  {'eigenvalue':<10}  {'mod m':<5}  labels"]
    for (deg, e), v in t.table.items():
        mod = str(e % t.m) if t.m is not None else "-"
        labels = ", ".join(f"{c:+d} N({lam})" if c != 1 else f"N({lam})" for lam, c in v.items())
        line = f"{deg:>6}  q^{e:<8}  {mod:<5}  {labels}"
        if (deg, e) in t.annotations:
            line += f"   [{t.annotations[(deg, e)]}]"
        rows.append(line)
    rows += [f"note: {n}" for n in t.notes]
    return rows


def _cmd_cohomology(a, out) -> int:
    if a.mod_m is not None:
        t = coh.cohomology_mod_ell(a.n, a.d, a.mod_m, override=a.override)
        if a.normalization == "X":
            t = coh.to_X_normalization(t)
    else:
        t = coh.cohomology_trivial_table(a.n, a.d) if a.mu is None else coh.cohomology_with_coeffs(a.n, a.d, a.mu)
        if a.normalization == "C":
            t = coh.to_C_normalization(t)
    if a.format == "json":
        out(json.dumps(t.to_json(), indent=2))
    else:
        for line in render_table(t):
            out(line)
    return 0


def _cmd_check_les(a, out) -> int:
    from .partitions import partitions_of

    results = []
    for n in range(2, a.max_n + 1):
        for d in range(1, n + 1):
            if n - d > a.max_mu:
                continue
            for mu in partitions_of(n - d):
                results.append(coh.les_euler_check(n, d, mu))
    bad = [r for r in results if not r.passed]
    if a.format == "json":
        out(json.dumps({"cells": len(results), "failures": [r.to_json() for r in bad]}, indent=2))
    else:
        out(f"{len(results) - len(bad)}/{len(results)} cells balanced")
        for r in bad:
            out(f"IMBALANCE {r.name}: {r.failures}")
    return 1 if bad else 0


def _cmd_invariants(a, out) -> int:
    inv = coh.table_invariants(a.n, a.d)
    shape = coh.structural_check(a.n, a.d)
    if a.format == "json":
        out(json.dumps({"invariants": inv.to_json(), "shape": shape.to_json()}, indent=2))
    else:
        out(f"invariants({a.n},{a.d}): {'pass' if inv.passed else 'FAIL'}")
        for k, v in inv.details.items():
            out(f"  {k}: {v}")
        for f in inv.failures:
            out(f"  failure: {f}")
        for f in shape.failures:
            out(f"  note: {f}")
    return 0 if inv.passed else 1


def _cmd_blocks(a, out) -> int:
    groups = phi_d_blocks(a.n, a.d)
    data = []
    for g in groups:
        core = m_core(next(iter(g)), a.d)
        members = sorted(g, reverse=True)
        kind = "defect zero" if len(g) == 1 and core.n == a.n else "block"
        data.append({"core": str(core), "kind": kind, "labels": [str(x) for x in members]})
    if a.format == "json":
        out(json.dumps({"n": a.n, "d": a.d, "blocks": data}, indent=2))
    else:
        for b in data:
            out(f"core {b['core']:<10} {b['kind']:<12} {', '.join(b['labels'])}")
    return 0


def _cmd_brauer(a, out) -> int:
    line = BrauerLine(a.m, a.r, a.p)
    table = hom_dim_table(line)
    data: dict[str, Any] = {"m": a.m, "r": a.r, "p": a.p,
                            "projectives": {f"P{i}": line.P(i).composition_factors() for i in range(1, a.m + 1)},
                            "hom_dims": table}
    if a.labels is not None:
        labels, unresolved = edge_partition_labels(a.labels, a.m)
        data["labels"] = {str(k): str(v) for k, v in sorted(labels.items())}
        data["unresolved_edges"] = unresolved
    if a.format == "json":
        out(json.dumps(data, indent=2, default=str))
        return 0
    tree = "(exc)" + "".join(f"--S{i}--o" for i in range(a.m, 0, -1)) + " (trivial)"
    out(f"Brauer line m={a.m} r={a.r} over GF({a.p}):  {tree}")
    for i in range(1, a.m + 1):
        out(f"  P{i}: composition factors {line.P(i).composition_factors()}")
    out("  dim Hom(P_t, P_s):")
    for t, row in enumerate(table, start=1):
        out(f"    t={t}: " + " ".join(str(x) for x in row))
    if "labels" in data:
        for k, v in data["labels"].items():
            out(f"  edge {k}: S({v})")
        if data["unresolved_edges"]:
            out(f"  unresolved edges: {data['unresolved_edges']}")
    return 0


def _cmd_tilting(a, out) -> int:
    from .tilting import hom_k_dims, is_partial_tilting, truncated_E

    line = BrauerLine(a.m, a.r, a.p)
    E = truncated_E(line, a.j)
    ok, witness = is_partial_tilting(E)
    dims = hom_k_dims(E, E)
    if a.format == "json":
        out(json.dumps({"m": a.m, "r": a.r, "j": a.j, "p": a.p, "terms": E.to_json()["terms"],
                        "partial_tilting": ok, "hom_dims": {str(k): v for k, v in dims.items()},
                        "witness": witness}, indent=2))
    else:
        out("complex: " + "  ".join(E.labels()))
        out(f"partial-tilting: {str(ok).lower()}")
        out("dim Hom_K(E, E[a]): " + ", ".join(f"{k}:{v}" for k, v in dims.items()))
        if witness:
            out(f"witness: {witness}")
    return 0 if ok else 1


def _cmd_dl_complex(a, out) -> int:
    from .tilting import full_complex_model

    rep = full_complex_model(a.n, a.d, a.mod_m, a.r, a.p, override=a.override)
    if a.format == "json":
        out(json.dumps(rep.to_json(), indent=2, default=str))
    else:
        out(f"{rep.name}: partial-tilting {str(rep.details['partial_tilting']).lower()}")
        for s in rep.details["summands"]:
            out(f"  q^{s['eigen_exp']}: {s['kind']} S({s['label']}) in degree {s['degree']}")
        pr = rep.details.get("principal")
        if pr:
            out(f"  principal summand: j={pr['j']} (printed formula gives {pr['printed_j']}), "
                f"degrees {pr['beta']}..{pr['alpha']}, H^beta factors {pr['H_beta_factors']} "
                f"socle at edge {pr['H_beta_socle_edges']}, label {pr['H_beta_label']}")
            out("  terms: " + ", ".join(f"{k}:{'+'.join(v)}" for k, v in rep.details["principal_terms"].items()))
    return 0 if rep.passed else 1


def _cmd_verify_all(a, out) -> int:
    from .sweeps import run_all

    results = run_all(a.only)
    if a.format == "json":
        out(json.dumps([r.to_json() for r in results], indent=2))
    else:
        for r in results:
            out(r.line())
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "cohomology": _cmd_cohomology,
    "check-les": _cmd_check_les,
    "invariants": _cmd_invariants,
    "blocks": _cmd_blocks,
    "brauer": _cmd_brauer,
    "tilting": _cmd_tilting,
    "dl-complex": _cmd_dl_complex,
    "verify-all": _cmd_verify_all,
}


def run(argv: Sequence[str] | None = None, quiet: bool = False) -> tuple[int, list[str]]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), []
    out = _Out(quiet)
    try:
        code = COMMANDS[args.command](args, out)
    except (PreconditionViolation, InconsistencyError) as exc:
        out(f"error: {exc}")
        report = getattr(exc, "report", None)
        if report:
            out(f"details: {report}")
        code = 1
    except (InvalidArgument, UnsupportedRegime) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        code = 2
    return code, out.lines


def main(argv: Sequence[str] | None = None, quiet: bool = False) -> int:
    return run(argv, quiet)[0]


if __name__ == "__main__":
    sys.exit(main())
