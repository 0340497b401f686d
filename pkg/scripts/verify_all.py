"""Run every verification suite on a list of spaces and write one JSON report."""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from cubar.chain import Ring
from cubar.spaces import resolve
from cubar.suites import SUITES, SuiteContext, run_suite


@dataclass
class Config:
    spaces: list = field(default_factory=lambda: ["sphere2", "sphere3", "wedge22"])
    rings: list = field(default_factory=lambda: ["Z", "Z2"])
    seed: int = 7
    output: str = "verify_all.json"


def main(cfg: Config) -> int:
    out, failed = {}, 0
    for space in cfg.spaces:
        S = resolve(space)
        for ring in cfg.rings:
            for name, (_, degree, _) in sorted(SUITES.items()):
                t = time.perf_counter()
                rep = run_suite(name, SuiteContext(S, degree, Ring.parse(ring), cfg.seed))
                out[f"{space}/{ring}/{name}"] = rep
                failed += not rep["ok"]
                print(f"{'PASS' if rep['ok'] else 'FAIL'}  {space:8s} {ring:3s} {name:22s} {time.perf_counter() - t:6.1f}s",
                      flush=True)
    with open(cfg.output, "w") as fh:
        json.dump({"schema": 1, "config": asdict(cfg), "reports": out}, fh, sort_keys=True, indent=1)
    print(f"{len(out) - failed}/{len(out)} suite runs passed; report in {cfg.output}")
    return 1 if failed else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--spaces", nargs="+", default=Config().spaces)
    p.add_argument("--rings", nargs="+", default=Config().rings)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--output", default="verify_all.json")
    raise SystemExit(main(Config(**vars(p.parse_args()))))
