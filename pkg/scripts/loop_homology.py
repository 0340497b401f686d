"""Loop homology of suspensions: cubical loop space, cobar route, and the tensor-algebra count side by side."""
import argparse
from dataclasses import dataclass

from cubar.chain import Ring, betti_numbers
from cubar.cubical import normalized_cubical_chains
from cubar.loop_path import loop_functor
from cubar.models import bott_samelson_check
from cubar.spaces import resolve


@dataclass
class Config:
    spaces: tuple = ("sphere2", "sphere3", "sphere4", "wedge22", "wedge23")
    max_degree: int = 6
    ring: str = "Z"
    # spaces with torsion in homology are compared over Z/2
    mod2_spaces: tuple = ("suspended_rp2",)


def main(cfg: Config) -> None:
    print(f"degrees 0..{cfg.max_degree - 1}")
    print(f"{'space':22s} {'cubical Omega':24s} {'T(H~_{*-1})':24s} Omega(iota) quasi-iso")
    runs = [(s, cfg.ring) for s in cfg.spaces] + [(s, "Z2") for s in cfg.mod2_spaces]
    for name, rname in runs:
        ring = Ring.parse(rname)
        X = resolve(name).simplicial
        n = cfg.max_degree
        cub = betti_numbers(normalized_cubical_chains(loop_functor(X, n), ring), ring, range(n))
        r = bott_samelson_check(X, n, ring)
        fmt = lambda v: ",".join(map(str, v))
        print(f"{name + ' (' + str(ring) + ')':22s} {fmt(cub):24s} {fmt(r['expected'][:n]):24s} {r['quasi_isomorphism']}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--spaces", nargs="+", default=list(Config.spaces))
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--ring", default="Z")
    a = p.parse_args()
    main(Config(tuple(a.spaces), a.max_degree, a.ring))
