"""Path-fibration model with a triangulated loop-space fiber, compared with the cubical-fiber model."""
import argparse
import time
from dataclasses import dataclass

from cubar.hga import random_tuples
from cubar.models import brown_model_report, brown_multiplicative_report, brown_simplicial_model
from cubar.spaces import resolve


@dataclass
class Config:
    space: str = "sphere2"
    weight: int = 5
    triples: int = 200
    seed: int = 7


def main(cfg: Config) -> int:
    t0 = time.perf_counter()
    B = brown_simplicial_model(resolve(cfg.space).simplicial, cfg.weight)
    r = brown_model_report(B)
    print(f"{cfg.space}, weight {cfg.weight}: d^2 failures {len(r['d_squared'])}, Brown failures {len(r['brown'])},"
          f" Id x psi intertwining failures {len(r['intertwines'])}")
    print("homology " + ", ".join(f"H^{k}: {b}{'+' + str(t) if t else ''}" for k, (b, t) in sorted(r["homology"].items())))
    triples = random_tuples(B.simplicial, cfg.triples, 3, seed=cfg.seed, top=B.top - 1)
    triples = [x for x in triples if sum(B.weight_of(y) for y in x) <= cfg.weight]
    m = brown_multiplicative_report(B, triples=triples)
    print(f"Leibniz failures {len(m['leibniz'])} / {m['checked']} pairs, psi-multiplicativity failures"
          f" {len(m['psi_multiplicative'])}, associativity failures {len(m['associative'])} / {len(triples)} triples"
          f"  ({time.perf_counter() - t0:.1f}s)")
    return 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--space", default="sphere2")
    p.add_argument("--weight", type=int, default=5)
    p.add_argument("--triples", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    raise SystemExit(main(Config(**vars(p.parse_args()))))
