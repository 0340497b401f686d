"""Command line front end: build, homology, verify, export."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .chain import FreeChainComplex, Ring, homology_table, matrix_lines
from .spaces import REGISTRY, Space, SpaceError, resolve
from .suites import SUITES, SuiteContext, run_suite

DEFAULT_CAP = 8
CONSTRUCTIONS = ("chains", "loop", "path", "resolution", "cobar", "bar", "acyclic-cobar", "acyclic-bar",
                 "path-model", "triangulated-loop", "suspension")
EXPORTS = ("complex", "hga", "twisting", "space")


class CliError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    space: str = "sphere2"
    construction: str = "loop"
    suite: str = "all"
    what: str = "complex"
    max_degree: int | None = None
    ring: str = "Z"
    seed: int = 0
    format: str = "text"
    unsafe_degree: bool = False
    jobs: int = 1
    output: str | None = None


def degree_cap() -> int:
    raw = os.environ.get("CUBAR_MAX_DEGREE")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise CliError(f"CUBAR_MAX_DEGREE must be an integer, got {raw!r}") from None
    if cap < 1:
        raise CliError("CUBAR_MAX_DEGREE must be at least 1")
    return cap


def check_degree(cfg: RunConfig, default: int) -> int:
    n = default if cfg.max_degree is None else cfg.max_degree
    if n < 1:
        raise CliError("--max-degree must be at least 1")
    cap = degree_cap()
    if n > cap and not cfg.unsafe_degree:
        raise CliError(f"--max-degree {n} exceeds the cap {cap}; raise CUBAR_MAX_DEGREE or pass --unsafe-degree")
    return n


def parse_ring(text: str) -> Ring:
    try:
        return Ring.parse(text)
    except ValueError as exc:
        raise CliError(str(exc)) from None


# ----------------------------------------------------------------------------
# constructions
# ----------------------------------------------------------------------------

def construct(space: Space, construction: str, n: int, ring: Ring) -> FreeChainComplex:
    """The chain or cochain complex of a named construction, through degree n."""
    from . import barcobar as bc
    from .cubical import normalized_cubical_chains
    from .hga import path_model
    from .loop_path import cubical_resolution, loop_functor, path_functor, universal_tau
    from .models import suspension_cochain_model, suspension_model_from_json, triangulate
    from .simplicial import normalized_chains

    if construction == "suspension":
        if space.table is not None:
            return suspension_model_from_json(space.table, n, ring).complex()
        X = space.simplicial
        ident = {g: g for k in range(1, X.top_dim + 1) for g in X.generators(k)}
        return suspension_cochain_model(X, X, ident, n, ring).complex()
    if space.simplicial is None:
        raise CliError(f"construction {construction!r} needs a simplicial space, not a cohomology table")
    X = space.simplicial
    if construction == "chains":
        return normalized_chains(X, ring, min(n, X.top_dim))
    if construction == "loop":
        return normalized_cubical_chains(loop_functor(X, n), ring)
    if construction == "path":
        return normalized_cubical_chains(path_functor(X, n), ring)
    if construction == "resolution":
        return normalized_cubical_chains(cubical_resolution(X, n), ring)
    if construction == "cobar":
        return bc.cobar(bc.simplicial_coalgebra(X), n).complex(n, ring)
    if construction == "bar":
        return bc.bar(bc.cochain_algebra(X), n).complex(ring=ring)
    if construction == "acyclic-cobar":
        return bc.acyclic_cobar(bc.simplicial_coalgebra(X), n, ring)
    if construction == "acyclic-bar":
        return bc.acyclic_bar(bc.cochain_algebra(X), n, ring)
    if construction == "path-model":
        return path_model(X, n, ring).complex()
    if construction == "triangulated-loop":
        return normalized_chains(triangulate(universal_tau(X, n).Q, n).S, ring, n)
    raise CliError(f"unknown construction {construction!r}")


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------

def cmd_build(cfg: RunConfig) -> tuple[int, dict]:
    n = check_degree(cfg, 6)
    C = construct(resolve(cfg.space), cfg.construction, n, parse_ring(cfg.ring))
    ranks = {str(k): C.rank(k) for k in sorted(C.bases) if k <= n}
    entries = sum(len(col) for cols in C.d.values() for col in cols.values())
    return 0, {"name": C.name, "step": C.step, "ranks": ranks, "nonzero_entries": entries}


def cmd_homology(cfg: RunConfig) -> tuple[int, dict]:
    n = check_degree(cfg, 6)
    ring = parse_ring(cfg.ring)
    # one degree of headroom so the reported top degree is exact
    C = construct(resolve(cfg.space), cfg.construction, n + 1, ring)
    lo = max(C.degree_range[0], 0)
    hom = homology_table(C, ring, range(lo, min(n, C.degree_range[1]) + 1))
    return 0, {"name": C.name, "homology": [h.to_json() for h in hom], "betti": [h.betti for h in hom]}


def _suite_job(args) -> tuple[str, dict]:
    name, space, n, ring, seed = args
    return name, run_suite(name, SuiteContext(resolve(space), n, Ring.parse(ring), seed))


def cmd_verify(cfg: RunConfig) -> tuple[int, dict]:
    names = sorted(SUITES) if cfg.suite == "all" else [s.strip() for s in cfg.suite.split(",")]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise CliError(f"unknown suite(s) {', '.join(unknown)}; see --list-suites")
    parse_ring(cfg.ring)
    resolve(cfg.space)
    jobs = [(s, cfg.space, check_degree(cfg, SUITES[s][1]), cfg.ring, cfg.seed) for s in names]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = dict(pool.map(_suite_job, jobs))
    else:
        results = dict(map(_suite_job, jobs))
    ok = all(r["ok"] for r in results.values())
    return (0 if ok else 1), {"ok": ok, "suites": results}


def cmd_export(cfg: RunConfig) -> tuple[int, dict]:
    n = check_degree(cfg, 4)
    ring = parse_ring(cfg.ring)
    space = resolve(cfg.space)
    if cfg.what == "complex":
        C = construct(space, cfg.construction, n, ring)
        return 0, {"name": C.name, "step": C.step,
                   "bases": {str(k): [repr(b) for b in C.basis(k)] for k in sorted(C.bases)},
                   "matrix_lines": matrix_lines(C)}
    if space.simplicial is None:
        raise CliError(f"export {cfg.what!r} needs a simplicial space")
    X = space.simplicial
    if cfg.what == "hga":
        from .hga import cochain_hga, hga_to_json
        return 0, json.loads(hga_to_json(cochain_hga(X, n), n))
    if cfg.what == "twisting":
        from .barcobar import tau_chain_cochain, twisting_to_json
        from .loop_path import universal_tau
        lo, _ = tau_chain_cochain(universal_tau(X, n), n)
        return 0, json.loads(twisting_to_json(lo, n))
    if cfg.what == "space":
        return 0, X.to_json()
    raise CliError(f"unknown export {cfg.what!r}")


COMMANDS = {"build": cmd_build, "homology": cmd_homology, "verify": cmd_verify, "export": cmd_export}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Run one command; returns the exit status and the JSON report."""
    try:
        status, result = COMMANDS[cfg.command](cfg)
    except (CliError, SpaceError) as exc:
        return 2, {"schema": 1, "command": cfg.command, "error": str(exc)}
    except ValueError as exc:
        return 2, {"schema": 1, "command": cfg.command, "error": f"{type(exc).__name__}: {exc}"}
    config = {k: v for k, v in asdict(cfg).items() if k not in ("format", "jobs", "output")}
    return status, {"schema": 1, "command": cfg.command, "config": config, "result": result}


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def to_text(report: dict) -> str:
    if "error" in report:
        return f"error: {report['error']}\n"
    res, cmd = report["result"], report["command"]
    lines = []
    if cmd == "build":
        lines.append(f"{res['name']}  (step {res['step']:+d}, {res['nonzero_entries']} nonzero entries)")
        lines += [f"  degree {k}: rank {v}" for k, v in res["ranks"].items()]
    elif cmd == "homology":
        lines.append(f"{res['name']}")
        for h in res["homology"]:
            tor = " + ".join(f"Z/{t}" for t in h["torsion"])
            lines.append(f"  H_{h['degree']}: betti {h['betti']}" + (f", torsion {tor}" if tor else ""))
        lines.append("betti " + ",".join(map(str, res["betti"])))
    elif cmd == "verify":
        for name, rep in res["suites"].items():
            lines.append(f"{'PASS' if rep['ok'] else 'FAIL'}  {name}")
            for check, v in rep["checks"].items():
                if v["failures"]:
                    lines.append(f"      {check}: {v['failures']} failure(s) {' '.join(v['examples'])}")
        lines.append("all suites passed" if res["ok"] else "identity violations found")
    else:
        return to_json(report)
    return "\n".join(lines) + "\n"


def list_suites() -> str:
    width = max(map(len, SUITES))
    return "".join(f"{name:<{width}}  (default degree {deg})  {doc}\n" for name, (_, deg, doc) in sorted(SUITES.items()))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", default="sphere2",
                        help=f"one of {', '.join(sorted(REGISTRY))}, simplicial:<file> or suspension:<file>")
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument("--ring", default="Z", help="Z, Z2, Z3, ...")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", default=None, help="write the report to a file")
    common.add_argument("--unsafe-degree", action="store_true", help="allow degrees above the cap")

    p = argparse.ArgumentParser(prog="cubar", description=__doc__)
    p.add_argument("--list-suites", action="store_true", help="list verification suites and exit")
    sub = p.add_subparsers(dest="command")
    for name in ("build", "homology"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--construction", choices=CONSTRUCTIONS, default="loop")
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--suite", default="all", help="suite name, comma-separated names, or 'all'")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--list-suites", action="store_true")
    e = sub.add_parser("export", parents=[common])
    e.add_argument("--what", choices=EXPORTS, default="complex")
    e.add_argument("--construction", choices=CONSTRUCTIONS, default="loop")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_suites:
        sys.stdout.write(list_suites())
        return 0
    if args.command is None:
        parser.print_help()
        return 2
    fields = set(RunConfig.__dataclass_fields__)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in fields})
    status, report = run(cfg)
    text = to_json(report) if cfg.format == "json" or cfg.command == "export" else to_text(report)
    if "error" in report and cfg.format == "text":
        sys.stderr.write(text)
    elif cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
