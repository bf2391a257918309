"""Command-line front end.

Exit codes: 0 certified / clean, 1 negative verdict, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .criterion import AuditVerdict, Verdict, anisotropy_audit, dgss_check, snf_pattern_check
from .graph import GraphFormatError, OrientedGraph, anti_automorphism, parse_oriented_graph
from .linalg import DEFAULT_FACTOR_BOUND, determinant, factorize, is_prime, smith_normal_form
from .search import (
    DEFAULT_EXHAUSTIVE_BOUND,
    SearchBoundError,
    enumerate_oriented_graphs,
    find_mates,
    random_controllable_self_converse,
)
from .spectral import graph_walk_matrix

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

COMMANDS = ("check", "snf", "selfconverse", "mates", "enumerate", "audit")
FILE_COMMANDS = {"check", "snf", "selfconverse", "mates"}


class UsageError(Exception):
    pass


@dataclass
class CommandConfig:
    command: str
    input_path: Optional[str] = None
    n: Optional[int] = None
    json: bool = False
    audit: bool = False
    factor_bound: int = DEFAULT_FACTOR_BOUND
    seed: Optional[int] = None
    max_exhaustive: int = DEFAULT_EXHAUSTIVE_BOUND
    count: int = 200
    max_prime: int = 50

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command in FILE_COMMANDS and not self.input_path:
            raise UsageError(f"{self.command} requires an input file")
        if self.factor_bound < 2:
            raise UsageError("--factor-bound must be at least 2")


def _emit(cfg: CommandConfig, payload: dict, text: str) -> None:
    if cfg.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _load(cfg: CommandConfig) -> OrientedGraph:
    try:
        with open(cfg.input_path, encoding="utf-8") as fh:
            return parse_oriented_graph(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.input_path}: {exc.strerror or exc}") from None
    except GraphFormatError as exc:
        raise UsageError(f"{cfg.input_path}: {exc}") from None


def cmd_check(cfg: CommandConfig) -> int:
    g = _load(cfg)
    report = dgss_check(g, audit=cfg.audit, factor_bound=cfg.factor_bound)
    _emit(cfg, report.to_json(), report.to_text())
    return EXIT_OK if report.verdict is Verdict.CERTIFIED else EXIT_NEGATIVE


def cmd_snf(cfg: CommandConfig) -> int:
    g = _load(cfg)
    w = graph_walk_matrix(g)
    snf = smith_normal_form(w)
    det = determinant(w) if g.n else 1
    payload = {"n": g.n, "det_w": str(det), "rank": snf.rank, "snf": [str(x) for x in snf.d]}
    text = f"det W: {det}\nrank W: {snf.rank}\nSNF of W: diag({', '.join(map(str, snf.d))})"
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_selfconverse(cfg: CommandConfig) -> int:
    g = _load(cfg)
    perm = anti_automorphism(g)
    payload = {"self_converse": perm is not None, "anti_automorphism": None if perm is None else list(perm)}
    text = "not self-converse" if perm is None else f"self-converse, anti-automorphism {list(perm)}"
    _emit(cfg, payload, text)
    return EXIT_OK if perm is not None else EXIT_NEGATIVE


def cmd_mates(cfg: CommandConfig) -> int:
    g = _load(cfg)
    try:
        result = find_mates(g, cfg.max_exhaustive)
    except SearchBoundError as exc:
        raise UsageError(f"{exc}; raise --max-exhaustive to allow it") from None
    payload = result.to_json()
    lines = [
        f"scanned: {result.candidates_scanned}",
        f"cospectral mates: {len(result.cospectral_mates)}",
        f"nonisomorphic mates: {len(result.nonisomorphic_mates)}",
    ]
    for m in result.nonisomorphic_mates:
        lines.append("  " + " ".join(f"{u}->{v}" for u, v in m.sorted_arcs()))
    if result.q_evidence:
        levels = sorted({q.level for _, q in result.q_evidence})
        lines.append(f"levels of Q: {', '.join(map(str, levels))}")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if not result.nonisomorphic_mates else EXIT_NEGATIVE


def _graph_summary(idx: int, g: OrientedGraph) -> dict:
    w = graph_walk_matrix(g)
    snf = smith_normal_form(w).d if g.n else []
    matches = len(snf) == g.n and g.n > 0 and snf_pattern_check(snf, g.n).matches
    return {
        "index": idx,
        "arcs": [list(a) for a in g.sorted_arcs()],
        "self_converse": anti_automorphism(g) is not None,
        "snf": [str(x) for x in snf],
        "pattern": matches,
    }


def cmd_enumerate(cfg: CommandConfig) -> int:
    if cfg.n is None:
        raise UsageError("enumerate requires --n")
    if cfg.n < 0:
        raise UsageError("--n must be non-negative")
    if cfg.n > cfg.max_exhaustive:
        raise UsageError(f"n = {cfg.n} exceeds the exhaustive bound {cfg.max_exhaustive}")
    total = self_conv = matched = 0
    rows = []
    for idx, g in enumerate(enumerate_oriented_graphs(cfg.n)):
        row = _graph_summary(idx, g)
        total += 1
        self_conv += row["self_converse"]
        matched += row["self_converse"] and row["pattern"]
        if cfg.json:
            rows.append(row)
        else:
            arcs = " ".join(f"{u}->{v}" for u, v in row["arcs"]) or "-"
            print(
                f"{idx}\t{arcs}\tself_converse={int(row['self_converse'])}"
                f"\tsnf={','.join(row['snf'])}\tpattern={int(row['pattern'])}"
            )
    summary = {"graphs": total, "self_converse": self_conv, "certified": matched}
    if cfg.json:
        print(json.dumps({"n": cfg.n, "graphs": rows, "summary": summary}, indent=2))
    else:
        print(f"total {total}, self-converse {self_conv}, certified {matched}")
    return EXIT_OK


def _odd_primes_upto(limit: int) -> list[int]:
    return [p for p in range(3, limit + 1, 2) if is_prime(p)]


def cmd_audit(cfg: CommandConfig) -> int:
    if cfg.input_path:
        g = _load(cfg)
        det = determinant(graph_walk_matrix(g)) if g.n else 0
        if det == 0:
            raise UsageError("walk matrix is singular; the audit needs det W != 0")
        fac = factorize(det, cfg.factor_bound)
        audits = [anisotropy_audit(g, p) for p in sorted(fac.primes) if p != 2]
        payload = {
            "det_w": str(det),
            "audits": [a.to_json() for a in audits],
            "unaudited_cofactor": str(abs(fac.remainder)),
        }
        lines = [f"det W: {det}"]
        for a in audits:
            lines.append(f"p={a.p}: rank_p = {a.rank_p}, {a.verdict.value}, vTv = {a.self_inner_product}, Sv = 0: {a.lemma7_holds}")
        if abs(fac.remainder) != 1:
            lines.append(f"unaudited cofactor: {abs(fac.remainder)}")
        _emit(cfg, payload, "\n".join(lines))
        failed = any(a.verdict is AuditVerdict.ISOTROPIC or a.lemma7_holds is False for a in audits)
        return EXIT_NEGATIVE if failed else EXIT_OK

    seed = cfg.seed
    if seed is None:
        seed = secrets.randbits(64)
        print(f"seed: {seed}", file=sys.stderr)
    max_n = cfg.n if cfg.n is not None else 10
    if max_n < 2:
        raise UsageError("--n must be at least 2 for the random audit")
    primes = _odd_primes_upto(cfg.max_prime)
    applicable = 0
    failures = []
    for g, _, sub in random_controllable_self_converse(cfg.count, max_n, seed):
        for p in primes:
            a = anisotropy_audit(g, p)
            if a.verdict is AuditVerdict.NOT_APPLICABLE:
                continue
            applicable += 1
            if a.verdict is not AuditVerdict.ANISOTROPIC or not a.lemma7_holds:
                failures.append({"sub_seed": str(sub), "n": g.n, "p": str(p), "arcs": [list(x) for x in g.sorted_arcs()]})
    payload = {
        "seed": str(seed),
        "graphs": cfg.count,
        "primes": [str(p) for p in primes],
        "applicable_audits": applicable,
        "failures": failures,
    }
    text = (
        f"seed {seed}: {cfg.count} controllable self-converse graphs (n <= {max_n}), "
        f"{applicable} applicable audits, {len(failures)} failures"
    )
    _emit(cfg, payload, text)
    return EXIT_NEGATIVE if failures else EXIT_OK


HANDLERS = {
    "check": cmd_check,
    "snf": cmd_snf,
    "selfconverse": cmd_selfconverse,
    "mates": cmd_mates,
    "enumerate": cmd_enumerate,
    "audit": cmd_audit,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--audit", action="store_true", help="run the anisotropy audit on certified graphs")
    common.add_argument("--factor-bound", type=int, default=DEFAULT_FACTOR_BOUND, help="trial-division bound (default %(default)s)")
    common.add_argument("--max-exhaustive", type=int, default=DEFAULT_EXHAUSTIVE_BOUND, help="largest n for exhaustive scans (default %(default)s)")
    common.add_argument("--seed", type=int, help="seed for randomized commands")
    common.add_argument("--n", type=int, help="vertex count (enumerate) or largest n (random audit)")

    parser = argparse.ArgumentParser(
        prog="dgss",
        description="Decide whether a self-converse oriented graph is determined by its generalized skew spectrum.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("check", "run the SNF criterion on a graph file"),
        ("snf", "print the Smith normal form of the walk matrix"),
        ("selfconverse", "find an anti-automorphism"),
        ("mates", "exhaustively search generalized-cospectral mates"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input_path", metavar="FILE")
    p = sub.add_parser("enumerate", parents=[common], help="summarize every labelled graph on --n vertices")
    p = sub.add_parser("audit", parents=[common], help="anisotropy audit of a file, or a seeded random suite")
    p.add_argument("input_path", metavar="FILE", nargs="?")
    p.add_argument("--count", type=int, default=200, help="random graphs to audit (default %(default)s)")
    p.add_argument("--max-prime", type=int, default=50, help="audit odd primes up to this value (default %(default)s)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = CommandConfig(
            command=args.command,
            input_path=getattr(args, "input_path", None),
            n=args.n,
            json=args.json,
            audit=args.audit,
            factor_bound=args.factor_bound,
            seed=args.seed,
            max_exhaustive=args.max_exhaustive,
            count=getattr(args, "count", 200),
            max_prime=getattr(args, "max_prime", 50),
        )
        return HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"dgss: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
