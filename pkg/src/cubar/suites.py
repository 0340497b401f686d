"""Verification suites: each runs one family of exact checks on a space and returns a JSON-ready report.

A report maps check names to ``{"failures": n, "examples": [...]}`` or to plain
values; ``ok`` is false as soon as one asserted check has a failure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .chain import ZZ, Ring, homology_table, verify_d_squared
from .spaces import Space, SpaceError


@dataclass(frozen=True)
class SuiteContext:
    space: Space
    max_degree: int
    ring: Ring = ZZ
    seed: int = 0

    @property
    def X(self):
        if self.space.simplicial is None:
            raise SpaceError(f"{self.space.name} is a cohomology table; this suite needs a simplicial set")
        return self.space.simplicial


class Report:
    def __init__(self):
        self.checks: dict = {}
        self.info: dict = {}

    def expect_empty(self, name: str, failures) -> None:
        failures = list(failures)
        self.checks[name] = {"failures": len(failures), "examples": [repr(f) for f in failures[:3]]}

    def expect(self, name: str, ok: bool, detail=None) -> None:
        self.checks[name] = {"failures": 0 if ok else 1, "examples": [] if ok else [repr(detail)]}

    def to_json(self) -> dict:
        ok = all(c["failures"] == 0 for c in self.checks.values())
        return {"ok": ok, "checks": self.checks, "info": self.info}



def _reduced_diagonal_vanishes(X, ring) -> bool:
    from .barcobar import simplicial_coalgebra
    from .chain import reduce_chain
    C = simplicial_coalgebra(X)
    return all(not reduce_chain(C.reduced_diagonal(g), ring)
               for n in range(1, X.top_dim + 1) for g in X.generators(n))


# ----------------------------------------------------------------------------

def suite_d_squared(ctx: SuiteContext) -> dict:
    from .barcobar import (
        acyclic_bar, acyclic_cobar, algebra_as_module, bar, cobar, cochain_algebra, simplicial_coalgebra,
        tau_chain_cochain, twisted_tensor,
    )
    from .cubical import normalized_cubical_chains
    from .hga import path_model
    from .loop_path import cubical_resolution, loop_functor, path_functor, universal_tau
    from .simplicial import normalized_chains
    X, n, ring = ctx.X, ctx.max_degree, ctx.ring
    r = Report()
    C = simplicial_coalgebra(X)
    lo, _ = tau_chain_cochain(universal_tau(X, n), n)
    complexes = {
        "C(X)": lambda: normalized_chains(X, ring),
        "C(Omega X)": lambda: normalized_cubical_chains(loop_functor(X, n), ring),
        "C(P X)": lambda: normalized_cubical_chains(path_functor(X, n), ring),
        "C(X x_tau L)": lambda: normalized_cubical_chains(cubical_resolution(X, n), ring),
        "Omega C(X)": lambda: cobar(C, n).complex(n, ring),
        "B C^*(X)": lambda: bar(cochain_algebra(X), n).complex(ring=ring),
        "C(X) x_iota Omega C(X)": lambda: acyclic_cobar(C, n, ring),
        "C^*(X) x_pi B C^*(X)": lambda: acyclic_bar(cochain_algebra(X), n, ring),
        "C(X) x_tau C(Omega X)": lambda: twisted_tensor(lo, algebra_as_module(lo.target), n, ring),
        "C^*(X) x_tau C^*(Omega X)": lambda: path_model(X, n, ring).complex(),
    }
    for name, build in complexes.items():
        r.expect_empty(name, verify_d_squared(build(), ring))
    return r.to_json()


def suite_chain_identifications(ctx: SuiteContext) -> dict:
    from .barcobar import check_chain_identifications
    r = Report()
    for key, bad in check_chain_identifications(ctx.X, ctx.max_degree, ctx.ring).items():
        r.expect_empty(f"({key})", bad)
    return r.to_json()


def suite_loop_homology(ctx: SuiteContext) -> dict:
    from .cubical import normalized_cubical_chains
    from .loop_path import loop_functor
    from .models import tensor_algebra_ranks
    from .simplicial import normalized_chains
    X, n, ring = ctx.X, ctx.max_degree, ctx.ring
    r = Report()
    hom = homology_table(normalized_cubical_chains(loop_functor(X, n), ring), ring, range(n + 1))
    r.info["homology"] = [h.to_json() for h in hom]
    if _reduced_diagonal_vanishes(X, ring):
        hx = homology_table(normalized_chains(X, ring), ring, range(1, X.top_dim + 1))
        gens = [h.degree - 1 for h in hx for _ in range(h.betti)]
        expected = tensor_algebra_ranks(gens, n)
        r.info["expected"] = expected
        r.expect("tensor_algebra_ranks", [h.betti for h in hom] == expected, [h.betti for h in hom])
        if not any(h.torsion for h in hx):
            r.expect_empty("torsion_free", [h.degree for h in hom if h.torsion])
    return r.to_json()


def suite_path_acyclic(ctx: SuiteContext) -> dict:
    from .cubical import normalized_cubical_chains
    from .loop_path import path_functor
    n, ring = ctx.max_degree, ctx.ring
    r = Report()
    hom = homology_table(normalized_cubical_chains(path_functor(ctx.X, n), ring), ring, range(n))
    r.info["homology"] = [h.to_json() for h in hom]
    r.expect("acyclic", [(h.betti, h.torsion) for h in hom] == [(1, ())] + [(0, ())] * (n - 1))
    return r.to_json()


def suite_diagonals(ctx: SuiteContext) -> dict:
    from .cubical import serre_failures
    from .hga import baues_vs_serre, serre_algebra_map_failures
    from .loop_path import loop_functor
    from .simplicial import aw_is_chain_map, aw_is_coassociative, aw_is_counital
    X, n, ring = ctx.X, ctx.max_degree, ctx.ring
    r = Report()
    r.expect_empty("aw_chain_map", aw_is_chain_map(X))
    r.expect_empty("aw_coassociative", aw_is_coassociative(X))
    r.expect_empty("aw_counital", aw_is_counital(X))
    for key, bad in serre_failures(loop_functor(X, n), n, ring).items():
        r.expect_empty(f"serre_{key}", bad)
    r.expect_empty("serre_algebra_map", serre_algebra_map_failures(X, n))
    r.expect_empty("baues_equals_serre", baues_vs_serre(X, n))
    return r.to_json()


def _negative_controls(X, n, r: Report, tag: str) -> None:
    from .barcobar import (
        algebra_as_module, brown_condition_check, perturbed, simplicial_coalgebra, tau_chain_cochain,
        twisted_tensor, universal_cobar_cochain,
    )
    from .chain import reduce_chain
    from .loop_path import universal_tau
    C = simplicial_coalgebra(X)
    target = next((g for k in range(2, X.top_dim + 1) for g in X.generators(k)
                   if reduce_chain(C.reduced_diagonal(g), ZZ)), None)
    if target is None:
        return
    iota = universal_cobar_cochain(C, n)
    bad = perturbed(iota, target)
    r.expect(f"control_{tag}_brown_detects", bool(brown_condition_check(bad)))
    r.expect(f"control_{tag}_d_squared_detects",
             bool(verify_d_squared(twisted_tensor(bad, algebra_as_module(bad.target), n))))
    lo, _ = tau_chain_cochain(universal_tau(X, n), n)
    r.expect(f"control_{tag}_tau_detects", bool(brown_condition_check(perturbed(lo, target))))


def suite_twisting(ctx: SuiteContext) -> dict:
    from .barcobar import (
        acyclic_bar, acyclic_cobar, algebra_as_module, brown_condition_check, cochain_algebra,
        simplicial_coalgebra, tau_chain_cochain, twisted_tensor, universal_bar_cochain, universal_cobar_cochain,
    )
    from .hga import path_model
    from .loop_path import universal_tau
    from .simplicial import simplex_mod_1skeleton
    X, n, ring = ctx.X, ctx.max_degree, ctx.ring
    r = Report()
    C = simplicial_coalgebra(X)
    r.expect_empty("brown_universal_cobar", brown_condition_check(universal_cobar_cochain(C, n), None, ring))
    r.expect_empty("brown_universal_bar", brown_condition_check(universal_bar_cochain(cochain_algebra(X), n),
                                                                 n, ring))
    lo, up = tau_chain_cochain(universal_tau(X, n), n)
    r.expect_empty("brown_tau_lower", brown_condition_check(lo, None, ring))
    r.expect_empty("brown_tau_upper", brown_condition_check(up, n - 1, ring))
    r.expect_empty("d_squared_acyclic_cobar", verify_d_squared(acyclic_cobar(C, n, ring), ring))
    r.expect_empty("d_squared_acyclic_bar", verify_d_squared(acyclic_bar(cochain_algebra(X), n, ring), ring))
    r.expect_empty("d_squared_tau_lower", verify_d_squared(twisted_tensor(lo, algebra_as_module(lo.target), n,
                                                                          ring), ring))
    r.expect_empty("d_squared_tau_upper", verify_d_squared(path_model(X, n, ring).complex(), ring))
    # a sign flip is invisible where the reduced diagonal vanishes, so the controls also run on a fixed instance
    _negative_controls(simplex_mod_1skeleton(3), min(n, 4), r, "simplex3")
    _negative_controls(X, min(n, 4), r, "space")
    return r.to_json()


def suite_cubical_identities(ctx: SuiteContext) -> dict:
    from .cubical import verify_cubical_identities
    from .loop_path import cubical_resolution, loop_functor, path_functor, universal_tau, verify_truncating
    X, n = ctx.X, ctx.max_degree
    r = Report()
    r.expect_empty("loop_space", verify_cubical_identities(loop_functor(X, n)))
    r.expect_empty("path_space", verify_cubical_identities(path_functor(X, n)))
    r.expect_empty("resolution", verify_cubical_identities(cubical_resolution(X, n)))
    r.expect_empty("truncating_tau", verify_truncating(universal_tau(X, n), n - 1))
    return r.to_json()


def suite_hga(ctx: SuiteContext) -> dict:
    from .chain import reduce_chain
    from .hga import cochain_hga, cup1_oracle, formula_E, identity_residuals, verify_hga_axioms
    from .simplicial import standard_simplex
    X, n, ring = ctx.X, ctx.max_degree, ctx.ring
    r = Report()
    H = cochain_hga(X, n)
    for key, bad in identity_residuals(H, n, ring).items():
        r.expect_empty(f"identity_{key}", bad)
    for key, bad in verify_hga_axioms(H, n, ring).items():
        r.expect_empty(f"axiom_{key}", bad)
    D = standard_simplex(3)
    cells = [g for k in range(4) for g in D.generators(k)]
    mod2 = ring if ring.p == 2 else type(ring)(2)
    bad = [(a, b) for a in cells for b in cells
           if D.gen_dim[a] and D.gen_dim[a] + D.gen_dim[b] - 1 <= 3
           and reduce_chain(formula_E(D, (a,), b), mod2) != cup1_oracle(D, a, b)]
    r.expect_empty("cup1_oracle_simplex3", bad)
    return r.to_json()


def _algebra_checks(T, top: int, seed: int, r: Report, tag: str) -> None:
    from .hga import associativity_failures, exhaustive_pairs, exhaustive_triples, leibniz_failures, random_tuples
    triples = random_tuples(T, 200, 3, seed=seed)
    pairs = random_tuples(T, 200, 2, seed=seed)
    r.info[f"{tag}_random_triples"] = len(triples)
    r.expect_empty(f"{tag}_associative_random", associativity_failures(T, triples))
    r.expect_empty(f"{tag}_leibniz_random", leibniz_failures(T, pairs))
    r.expect_empty(f"{tag}_associative_exhaustive", associativity_failures(T, exhaustive_triples(T, min(top, 4))))
    r.expect_empty(f"{tag}_leibniz_exhaustive", leibniz_failures(T, exhaustive_pairs(T, min(top, 4))))


def suite_twisted_products(ctx: SuiteContext) -> dict:
    from .hga import path_model
    from .models import ModelError, suspension_cochain_model, suspension_model_from_json
    r = Report()
    n, ring = ctx.max_degree, ctx.ring
    if ctx.space.table is not None:
        _algebra_checks(suspension_model_from_json(ctx.space.table, n, ring).algebra, n, ctx.seed, r, "suspension")
        return r.to_json()
    X = ctx.X
    _algebra_checks(path_model(X, n, ring), n, ctx.seed, r, "path_model")
    ident = {g: g for k in range(1, X.top_dim + 1) for g in X.generators(k)}
    try:
        M = suspension_cochain_model(X, X, ident, n, ring)
    except ModelError as exc:
        r.info["suspension"] = f"skipped: {exc}"
    else:
        _algebra_checks(M.algebra, n, ctx.seed, r, "suspension")
    return r.to_json()


def suite_acyclic_bar(ctx: SuiteContext) -> dict:
    from .chain import betti_numbers
    from .hga import acyclic_bar_algebra, associativity_failures, cochain_hga, random_tuples
    n, ring = ctx.max_degree, ctx.ring
    r = Report()
    T = acyclic_bar_algebra(cochain_hga(ctx.X, n + 1), n, ring)
    triples = random_tuples(T, 200, 3, seed=ctx.seed)
    r.info["random_triples"] = len(triples)
    r.expect("enough_triples", len(triples) >= 200, len(triples))
    r.expect_empty("associative_random", associativity_failures(T, triples))
    r.expect("acyclic", betti_numbers(T.complex(), ring, range(n)) == [1] + [0] * (n - 1))
    return r.to_json()


def suite_triangulation(ctx: SuiteContext) -> dict:
    from .cubical import StandardCube
    from .loop_path import universal_tau
    from .models import (
        ModelError, triangulate_cube, triangulation_chain_map, triangulation_comultiplicative_failures,
        triangulation_multiplicative_failures, triangulation_report,
    )
    r = Report()
    counts = {k: len(triangulate_cube(k).generators(k)) for k in range(6)}
    r.info["top_simplices"] = counts
    r.expect("factorial_counts", all(c == math.factorial(k) for k, c in counts.items()), counts)
    top = min(ctx.max_degree, 4)
    cases = {"I2": (StandardCube(2), None), "I3": (StandardCube(3), None)}
    if ctx.space.simplicial is not None:
        cases[f"Omega {ctx.X.name} trunc {top}"] = (universal_tau(ctx.X, top).Q, top)
    for name, (Q, t) in cases.items():
        try:
            rep = triangulation_report(Q, t, ctx.ring)
        except ModelError as exc:
            r.info[name] = f"out of scope: {exc}"
            continue
        r.expect_empty(f"{name}_chain_map", rep["chain_map"])
        r.expect(f"{name}_quasi_isomorphism", rep["quasi_isomorphism"], rep["cone_homology"])
        if t is not None:
            tm = triangulation_chain_map(Q, t)
            r.info[f"{name}_multiplicative_failures"] = len(triangulation_multiplicative_failures(tm))
            r.info[f"{name}_comultiplicative_failures"] = len(triangulation_comultiplicative_failures(tm))
    return r.to_json()


def _sphere_tables(ctx: SuiteContext) -> dict:
    """Cohomology tables with f^* = k for k = 0, 1, 2 when Y = Z = the space is a torsion-free suspension."""
    from .simplicial import normalized_chains
    X = ctx.X
    if not _reduced_diagonal_vanishes(X, ZZ):
        raise SpaceError(f"{X.name} is not a suspension")
    hx = homology_table(normalized_chains(X), ZZ, range(1, X.top_dim + 1))
    if any(h.torsion for h in hx):
        raise SpaceError(f"{X.name} has torsion; pass a cohomology table with suspension:<file>")
    ranks = {"0": 1} | {str(h.degree): h.betti for h in hx if h.betti}
    out = {}
    for k in (0, 1, 2):
        fstar = {}
        for deg, rk in ranks.items():
            if deg == "0":
                continue
            for i in range(rk):
                s = "" if rk == 1 else f"_{i + 1}"
                if k:
                    fstar[f"z{deg}{s}"] = [[f"y{deg}{s}", k]]
        out[f"k={k}"] = {"HY": ranks, "HZ": ranks, "fstar": fstar}
    return out


def suite_suspension(ctx: SuiteContext) -> dict:
    from .models import additive_decomposition_check, higher_operation_violations, suspension_model_from_json
    r = Report()
    tables = {"table": ctx.space.table} if ctx.space.table is not None else _sphere_tables(ctx)
    for tag, table in tables.items():
        M = suspension_model_from_json(table, ctx.max_degree + 1, ctx.ring)
        rep = additive_decomposition_check(M, ctx.max_degree + 1)
        r.info[f"{tag}_ranks"] = rep["ranks"]
        r.info[f"{tag}_torsion"] = {str(k): v for k, v in rep["torsion"].items()}
        r.expect(f"{tag}_decomposition", rep["match"], {"ranks": rep["ranks"], "expected": rep["expected"]})
        r.expect_empty(f"{tag}_twisted_not_cycle", rep["twisted_not_cycle"])
        r.expect_empty(f"{tag}_twisted_vanish_in_homology", rep["twisted_nonzero_in_homology"])
        r.expect_empty(f"{tag}_higher_operations", higher_operation_violations(M, 2))
    return r.to_json()


def suite_bott_samelson(ctx: SuiteContext) -> dict:
    from .models import bott_samelson_check
    r = Report()
    rep = bott_samelson_check(ctx.X, ctx.max_degree, ctx.ring)
    r.info["ranks"] = rep["ranks"]
    r.info["expected"] = rep["expected"]
    r.expect("ranks", rep["match"])
    r.expect_empty("chain_map", rep["chain_map"])
    r.expect("quasi_isomorphism", rep["quasi_isomorphism"])
    return r.to_json()


def suite_brown_model(ctx: SuiteContext) -> dict:
    from .models import brown_model_report, brown_simplicial_model
    r = Report()
    weight = min(ctx.max_degree, 5)
    B = brown_simplicial_model(ctx.X, weight, ring=ctx.ring)
    rep = brown_model_report(B, ctx.ring)
    r.info["weight"] = weight
    r.info["homology"] = {str(k): [b, list(t)] for k, (b, t) in rep["homology"].items()}
    r.expect_empty("d_squared", rep["d_squared"])
    r.expect_empty("brown_condition", rep["brown"])
    r.expect_empty("intertwines", rep["intertwines"])
    r.expect("acyclic", all(v == (int(k == 0), ()) for k, v in rep["homology"].items() if k < weight))
    return r.to_json()


SUITES: dict[str, tuple[Callable[[SuiteContext], dict], int, str]] = {
    "d-squared": (suite_d_squared, 6, "d^2 = 0 on chains, loop/path/twisted cubical chains, cobar, bar, twisted tensors"),
    "chain-identifications": (suite_chain_identifications, 6, "cubical chains of Omega, P, X x_tau L against cobar models"),
    "loop-homology": (suite_loop_homology, 6, "homology of cubical Omega X against the tensor algebra"),
    "path-acyclic": (suite_path_acyclic, 6, "cubical P X is acyclic"),
    "diagonals": (suite_diagonals, 6, "AW and Serre diagonals; Baues diagonal equals Serre"),
    "twisting": (suite_twisting, 6, "Brown's condition for universal and tau cochains, with negative controls"),
    "cubical-identities": (suite_cubical_identities, 6, "cubical identities of Omega X, P X, X x_tau M and tau axioms"),
    "hga": (suite_hga, 5, "homotopy G-algebra identities and axioms, cup-1 oracle"),
    "twisted-products": (suite_twisted_products, 6, "associativity and Leibniz of twisted-tensor products"),
    "acyclic-bar": (suite_acyclic_bar, 6, "associativity of the acyclic bar product on seeded triples"),
    "triangulation": (suite_triangulation, 4, "triangulation of cubes and the subdivision chain map"),
    "suspension": (suite_suspension, 6, "small suspension models against the additive decomposition"),
    "bott-samelson": (suite_bott_samelson, 6, "loop homology of a suspension from homology cycles"),
    "brown-model": (suite_brown_model, 4, "simplicial-fiber model of the path fibration"),
}


def run_suite(name: str, ctx: SuiteContext) -> dict:
    fn = SUITES[name][0]
    return fn(ctx)
