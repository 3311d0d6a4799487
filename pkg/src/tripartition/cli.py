"""Command-line front end.

Exit codes: 0 when the property holds or a witness is found, 1 when it fails
or nothing is found, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .conjecture import DEFAULT_BUDGET, conjecture_scan, search_partition_exhaustive
from .errors import NotMinimallyRigid, TripartitionError
from .graph import (EdgePartition, Graph, banana_fixture_partitions, complete_graph, cone,
                    double_banana, parse_graph, serialize_graph)
from .partition import ROUTES, partition_for_edge, verify_partition
from .rigidity import is_minimally_rigid, is_rigid
from .sparsity import check_sparsity

FIXTURES = {
    "double-banana": double_banana,
    "k4": lambda: complete_graph(4),
    "k5": lambda: complete_graph(5),
}
SEED_ENV = "RIGIDITY_SEED"
OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    fixture: Optional[str] = None
    input: Optional[str] = None
    edge: Optional[tuple] = None
    seed: int = 0
    d: int = 3
    k: int = 2
    ell: int = 3
    budget: int = DEFAULT_BUDGET
    format: str = "text"
    minimal: bool = False
    route: str = "auto"
    partition_file: Optional[str] = None
    n_max: int = 6
    samples: int = 3
    candidates_dir: Optional[str] = None
    timing: bool = False


def _edge_arg(text: str) -> tuple:
    try:
        u, v = (int(a) for a in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"edge must look like 'u,v', got {text!r}")
    return u, v


def _seed_arg(text: str) -> int:
    try:
        seed = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= seed < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return seed


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--fixture", choices=sorted(FIXTURES))
    src.add_argument("--input", help="graph in .grf edge-list format")
    common.add_argument("--seed", type=_seed_arg, default=None,
                        help=f"64-bit seed (default: ${SEED_ENV} or 0)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="tripartition", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sparsity", parents=[common], help="(k,l) pebble game")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--ell", type=int, default=3)

    p = sub.add_parser("rigid", parents=[common], help="randomized rigidity test")
    p.add_argument("-d", type=int, default=3)
    p.add_argument("--minimal", action="store_true")

    for name in ("partition", "search"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--edge", type=_edge_arg, required=True)
        if name == "partition":
            p.add_argument("--route", choices=ROUTES, default="auto")
        else:
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("verify", parents=[common], help="check a partition JSON file")
    p.add_argument("partition_file")

    p = sub.add_parser("banana", parents=[common], help="double banana reproduction")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("scan", parents=[common], help="sample (3,6)-tight graphs")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--candidates-dir")
    p.add_argument("--timing", action="store_true", help="fill in elapsed_ms")

    sub.add_parser("cone", parents=[common], help="print the cone of the graph")
    return parser


def parse_config(argv=None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    seed = ns.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            seed = _seed_arg(env) if env else 0
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{SEED_ENV}: {exc}")
    fields = {k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__}
    fields["seed"] = seed
    return CliConfig(**fields)


def load_graph(cfg: CliConfig) -> Graph:
    if cfg.fixture:
        return FIXTURES[cfg.fixture]()
    if cfg.input:
        try:
            return parse_graph(Path(cfg.input).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.input}: {exc.strerror}")
    raise UsageError("need --fixture or --input")


def _emit(cfg: CliConfig, text: str, data) -> None:
    if cfg.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def cmd_sparsity(cfg: CliConfig) -> int:
    g = load_graph(cfg)
    try:
        res = check_sparsity(g, cfg.k, cfg.ell)
    except ValueError as exc:
        raise UsageError(str(exc))
    data = {"status": res.status.value, "k": cfg.k, "ell": cfg.ell}
    if res.witness is not None:
        data["witness"] = [list(e) for e in res.witness]
        data["witness_vertices"] = list(res.witness_vertices)
    _emit(cfg, res.status.value, data)
    return OK if res.sparse else FAIL


def cmd_rigid(cfg: CliConfig) -> int:
    g = load_graph(cfg)
    test = is_minimally_rigid if cfg.minimal else is_rigid
    v = test(g, cfg.d, cfg.seed)
    data = {"rigid": v.rigid, "rank": v.rank, "target": v.target, "d": v.d, "seed": cfg.seed,
            "trials": v.trials, "failure_bound": v.failure_bound}
    if cfg.minimal:
        data["minimal"] = v.minimal
    _emit(cfg, v.summary(), data)
    holds = v.minimal if cfg.minimal else v.rigid
    return OK if holds else FAIL


def _partition_text(part: EdgePartition) -> str:
    lines = []
    for name, s in zip(("S1", "S2", "S3"), part.parts):
        lines.append(f"{name} ({len(s)}): " + " ".join(f"{u}-{v}" for u, v in sorted(s)))
    return "\n".join(lines)


def cmd_partition(cfg: CliConfig) -> int:
    g = load_graph(cfg)
    try:
        part = partition_for_edge(g, cfg.edge, cfg.seed, route=cfg.route)
    except NotMinimallyRigid as exc:
        _emit(cfg, f"NOT-MINIMALLY-RIGID {exc}", {"error": "NotMinimallyRigid", "message": str(exc)})
        return FAIL
    _emit(cfg, _partition_text(part), part.to_json(cfg.edge, cfg.seed))
    return OK


def cmd_verify(cfg: CliConfig) -> int:
    g = load_graph(cfg)
    try:
        data = json.loads(Path(cfg.partition_file).read_text())
        edge, part = EdgePartition.from_json(data)
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.partition_file}: {exc.strerror}")
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad partition file: {exc}")
    report = verify_partition(g, edge, part)
    text = "OK" if report.ok else f"FAIL sizes={report.sizes} member={report.membership_ok} tight={report.rigid_ok}"
    _emit(cfg, text, report.to_json())
    return OK if report.ok else FAIL


def cmd_search(cfg: CliConfig) -> int:
    g = load_graph(cfg)
    res = search_partition_exhaustive(g, cfg.edge, cfg.budget)
    data = {"edge": list(res.edge), "status": res.status.value, "tried": res.tried}
    if res.witness is not None:
        data["witness"] = res.witness.to_json(res.edge)
    text = f"{res.status.value} tried={res.tried}"
    if res.witness is not None:
        text += "\n" + _partition_text(res.witness)
    _emit(cfg, text, data)
    return OK if res.found else FAIL


def banana_report(seed: int = 0, budget: int = DEFAULT_BUDGET) -> dict:
    """Tightness, non-rigidity at three seeds, both fixtures, all-edge search."""
    g = double_banana()
    tight = check_sparsity(g, 3, 6).tight
    ranks = []
    for s in (seed, seed + 1, seed + 2):
        v = is_rigid(g, 3, s)
        ranks.append({"seed": s, "rigid": v.rigid, "rank": v.rank, "target": v.target})
    fixtures = []
    for e, part in banana_fixture_partitions():
        fixtures.append({"edge": g.edge_name(e), "ok": verify_partition(g, e, part).ok})
    searches = []
    for e in g.sorted_edges():
        res = search_partition_exhaustive(g, e, budget)
        searches.append({"edge": g.edge_name(e), "status": res.status.value, "tried": res.tried})
    ok = (tight and all(not r["rigid"] and r["rank"] == 17 for r in ranks)
          and all(f["ok"] for f in fixtures) and all(s["status"] == "FOUND" for s in searches))
    return {"tight_3_6": tight, "rank": ranks, "fixtures": fixtures, "search": searches, "ok": ok}


def cmd_banana(cfg: CliConfig) -> int:
    start = time.perf_counter()
    rep = banana_report(cfg.seed, cfg.budget)
    found = sum(s["status"] == "FOUND" for s in rep["search"])
    lines = [
        f"(3,6): {'TIGHT' if rep['tight_3_6'] else 'NOT TIGHT'}",
        *(f"seed {r['seed']}: {'RIGID' if r['rigid'] else 'PROBABLY-FLEXIBLE'} rank={r['rank']}/{r['target']}"
          for r in rep["rank"]),
        *(f"fixture {f['edge']}: {'ok' if f['ok'] else 'FAIL'}" for f in rep["fixtures"]),
        f"search: {found}/{len(rep['search'])} edges have a partition",
        f"{'PASS' if rep['ok'] else 'FAIL'} ({time.perf_counter() - start:.1f}s)",
    ]
    _emit(cfg, "\n".join(lines), rep)
    return OK if rep["ok"] else FAIL


def cmd_scan(cfg: CliConfig) -> int:
    extra = []
    if cfg.fixture or cfg.input:
        extra.append((cfg.fixture or Path(cfg.input).stem, load_graph(cfg)))
    summary = conjecture_scan(cfg.n_max, cfg.samples, cfg.seed, cfg.budget, extra=extra,
                              candidates_dir=cfg.candidates_dir, timing=cfg.timing)
    if cfg.format == "json":
        sys.stdout.write(summary.jsonl())
    else:
        for rep in summary.graphs:
            state = "inconclusive" if rep.inconclusive else ("holds" if rep.holds else "fails")
            print(f"{rep.graph_id}: n={rep.graph.n} condition {state}, "
                  f"(3,6)-tight={rep.tightness_3_6}")
        print(f"{len(summary.candidates)} candidate(s)")
    return FAIL if summary.candidates else OK


def cmd_cone(cfg: CliConfig) -> int:
    h = cone(load_graph(cfg))
    _emit(cfg, serialize_graph(h).rstrip("\n"), {"n": h.n, "edges": [list(e) for e in h.sorted_edges()]})
    return OK


COMMANDS = {
    "sparsity": cmd_sparsity,
    "rigid": cmd_rigid,
    "partition": cmd_partition,
    "verify": cmd_verify,
    "search": cmd_search,
    "banana": cmd_banana,
    "scan": cmd_scan,
    "cone": cmd_cone,
}


def run(cfg: CliConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except TripartitionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except SystemExit as exc:
        # argparse exits with 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
