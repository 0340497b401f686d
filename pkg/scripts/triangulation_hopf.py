"""Triangulating cubes: simplex counts, the subdivision chain map, and whether it respects products and diagonals."""
import argparse
import math
import time
from dataclasses import dataclass, field

from cubar.cubical import StandardCube
from cubar.loop_path import universal_tau
from cubar.models import (
    triangulate_cube, triangulation_chain_map, triangulation_comultiplicative_failures,
    triangulation_multiplicative_failures, triangulation_report,
)
from cubar.spaces import resolve


@dataclass
class Config:
    max_cube: int = 5
    spaces: tuple = ("sphere2", "sphere3", "wedge22", "simplex3")
    truncation: int = 4
    # the triangulated loop space of simplex3 grows fast: about 4 min at truncation 4
    small_truncation: dict = field(default_factory=lambda: {"simplex3": 3})


def main(cfg: Config) -> None:
    for n in range(cfg.max_cube + 1):
        print(f"I^{n}: {len(triangulate_cube(n).generators(n))} top simplices (n! = {math.factorial(n)})")
    for n in (1, 2, 3):
        r = triangulation_report(StandardCube(n))
        print(f"I^{n}: chain map {not r['chain_map']}, quasi-isomorphism {r['quasi_isomorphism']}")
    for name in cfg.spaces:
        t0 = time.perf_counter()
        top = cfg.small_truncation.get(name, cfg.truncation)
        Q = universal_tau(resolve(name).simplicial, top).Q
        r = triangulation_report(Q, top)
        t = triangulation_chain_map(Q, top)
        mult = triangulation_multiplicative_failures(t)
        comult = triangulation_comultiplicative_failures(t)
        print(f"Omega {name} trunc {top}: chain map {not r['chain_map']}, quasi-iso {r['quasi_isomorphism']},"
              f" multiplicative failures {len(mult)}, comultiplicative failures {len(comult)}"
              f"  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-cube", type=int, default=5)
    p.add_argument("--spaces", nargs="+", default=list(Config.spaces))
    p.add_argument("--truncation", type=int, default=4)
    a = p.parse_args()
    main(Config(a.max_cube, tuple(a.spaces), a.truncation))
