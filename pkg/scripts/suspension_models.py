"""Small models of fibrations over a suspension: homology against the additive decomposition.

Y = Z = S^2 with f^* = k for a range of k, then Y = Z = S(RP^2) over Z/2 in table and
cochain form, and the non-natural table as a negative control.
"""
import argparse
from dataclasses import dataclass

from cubar.chain import Z2, ZZ
from cubar.hga import exhaustive_pairs, leibniz_failures
from cubar.models import (
    additive_decomposition_check, suspension_cochain_model, suspension_model_from_json,
)
from cubar.simplicial import projective_plane, suspension


@dataclass
class Config:
    ks: tuple = (0, 1, 2, 3, 4)
    max_degree: int = 7


def show(tag, r):
    print(f"{tag:28s} ranks {','.join(map(str, r['ranks']))}  decomposition {'matches' if r['match'] else 'DIFFERS'}"
          f"  torsion {r['torsion'] or '-'}  twisted pairs checked {r['pairs_checked']},"
          f" nonzero in homology {len(r['twisted_nonzero_in_homology'])}")


def main(cfg: Config) -> None:
    for k in cfg.ks:
        table = {"HY": {"0": 1, "2": 1}, "HZ": {"0": 1, "2": 1}, "fstar": {"z2": [["y2", k]]} if k else {}}
        for ring in (ZZ, Z2):
            M = suspension_model_from_json(table, cfg.max_degree, ring)
            show(f"S2, f* = {k}, {ring}", additive_decomposition_check(M, cfg.max_degree))
    rp = {"HY": {"0": 1, "2": 1, "3": 1}, "HZ": {"0": 1, "2": 1, "3": 1},
          "fstar": {"z2": [["y2", 1]], "z3": [["y3", 1]]},
          "sqY": {"y2,y2": [["y3", 1]]}, "sqZ": {"z2,z2": [["z3", 1]]}}
    M = suspension_model_from_json(rp, 6, Z2)
    show("S(RP2) table, Z2", additive_decomposition_check(M, 6))
    X = suspension(projective_plane())
    ident = {g: g for n in range(1, X.top_dim + 1) for g in X.generators(n)}
    show("S(RP2) cochains, Z2", additive_decomposition_check(suspension_cochain_model(X, X, ident, 5, Z2), 5))
    rp["sqZ"] = {}
    T = suspension_model_from_json(rp, 6, Z2).algebra
    print(f"non-natural table: {len(leibniz_failures(T, exhaustive_pairs(T, 5)))} Leibniz failures (expected > 0)")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ks", type=int, nargs="+", default=list(Config.ks))
    p.add_argument("--max-degree", type=int, default=7)
    a = p.parse_args()
    main(Config(tuple(a.ks), a.max_degree))
