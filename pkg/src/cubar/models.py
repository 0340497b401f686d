"""Comparison models: triangulated cubes, cochain models of fibrations and suspensions.

A nondegenerate simplex of the triangulated n-cube that is not contained in a
proper face is a strictly increasing vertex chain from 0...0 to 1...1; it is
recorded as the ordered partition of the coordinates {1..n} into the blocks
that switch on at each step.  Maximal chains are permutations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .chain import (
    FreeChainComplex, Ring, ZZ, Z2, add_into, add_term, homology_table, reduce_chain, smith_normal_form,
)
from .cubical import CubicalSet, StandardCube, normalized_cubical_chains, sorting_sign
from .simplicial import SimplexExpr, SimplicialSet, identity_expr, normalized_chains


class ModelError(ValueError):
    pass


# ----------------------------------------------------------------------------
# triangulation
# ----------------------------------------------------------------------------

def ordered_partitions(n: int, k: int | None = None):
    """Ordered set partitions of {1..n}, optionally with exactly k blocks."""
    if n == 0:
        if k in (None, 0):
            yield ()
        return
    ks = range(1, n + 1) if k is None else [k]
    for kk in ks:
        for labels in itertools.product(range(kk), repeat=n):
            if len(set(labels)) != kk:
                continue
            yield tuple(tuple(i + 1 for i in range(n) if labels[i] == b) for b in range(kk))


def _drop_coords(blocks, removed: Sequence[int]):
    """Renumber blocks after deleting coordinates ``removed``; empty blocks stay as ()."""
    gone = set(removed)
    keep = [c for c in range(1, 1 + sum(len(b) for b in blocks) + len(gone)) if c not in gone]
    new = {c: i + 1 for i, c in enumerate(keep)}
    return tuple(tuple(new[c] for c in b if c not in gone) for b in blocks)


class Triangulation:
    """The simplicial set T(Q) of a cubical set, generated by (cube, ordered partition)."""

    def __init__(self, Q: CubicalSet, max_cube_dim: int | None = None):
        self.Q = Q
        top = Q.top_dim if max_cube_dim is None else max_cube_dim
        self.max_cube_dim = top
        self.core_of: dict = {}
        dims: dict[int, list] = {}
        for n in range(top + 1):
            for core in Q.cells(n):
                if not Q.core_chain(core):
                    continue
                lab = Q.label(core)
                self.core_of[lab] = core
                for blocks in ordered_partitions(n):
                    dims.setdefault(len(blocks), []).append((lab, blocks))
        faces = {g: [self._face(g, i) for i in range(len(g[1]) + 1)]
                 for gs in dims.values() for g in gs if g[1]}
        base = dims[0][0]
        self.S = SimplicialSet(dims, faces, base, name=f"T({Q.name})")

    def _expr(self, x, blocks) -> SimplexExpr:
        etas, core = x
        if not self.Q.core_chain(core) and self.Q.core_dim(core):
            raise ModelError(f"face {self.Q.label(core)} is degenerate but not a product of etas")
        blocks = _drop_coords(blocks, etas)
        theta = [0]
        for b in blocks:
            theta.append(theta[-1] + (1 if b else 0))
        gen = (self.Q.label(core), tuple(b for b in blocks if b))
        return SimplexExpr(gen, tuple(theta))

    def _face(self, g, i: int) -> SimplexExpr:
        lab, blocks = g
        k = len(blocks)
        x = self.Q.elem(self.core_of[lab])
        if 0 < i < k:
            merged = blocks[:i - 1] + (tuple(sorted(blocks[i - 1] + blocks[i])),) + blocks[i + 1:]
            return identity_expr((lab, merged), k - 1)
        B = blocks[0] if i == 0 else blocks[-1]
        rest = blocks[1:] if i == 0 else blocks[:-1]
        y = self.Q.multi_face(x, B, 1 if i == 0 else 0)
        return self._expr(y, _drop_coords(rest, B))

    def chain_map(self, core) -> dict:
        """Subdivision of a cube: the signed sum of its maximal simplices."""
        n = self.Q.core_dim(core)
        lab = self.Q.label(core)
        if not self.Q.core_chain(core):
            return {}
        out: dict = {}
        for perm in itertools.permutations(range(1, n + 1)):
            add_term(out, (lab, tuple((c,) for c in perm)), sorting_sign(perm))
        return out


def triangulate_cube(n: int) -> SimplicialSet:
    """The standard triangulation of I^n (n! top simplices)."""
    return Triangulation(StandardCube(n)).S


def cube_simplices(n: int) -> list[tuple[tuple, int]]:
    """Maximal simplices of I^n as increasing vertex chains in {0,1}^n, with orientation signs."""
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        v = [0] * n
        chain = [tuple(v)]
        for c in perm:
            v[c - 1] = 1
            chain.append(tuple(v))
        out.append((tuple(chain), sorting_sign(perm)))
    return out


def triangulate(Q: CubicalSet, max_cube_dim: int | None = None) -> Triangulation:
    return Triangulation(Q, max_cube_dim)


# ----------------------------------------------------------------------------
# comparison of complexes
# ----------------------------------------------------------------------------

def mapping_cone(f: Callable[[object], Mapping], A: FreeChainComplex, B: FreeChainComplex,
                 ring: Ring = ZZ) -> FreeChainComplex:
    """Cone of a chain map A -> B (both with step -1): degree n is A_{n-1} + B_n."""
    if A.step != -1 or B.step != -1:
        raise ModelError("mapping cones are built for chain complexes")
    lo = min(B.degree_range[0], A.degree_range[0] + 1)
    hi = max(B.degree_range[1], A.degree_range[1] + 1)
    bases = {n: [("a", x) for x in A.basis(n - 1)] + [("b", y) for y in B.basis(n)] for n in range(lo, hi + 1)}
    bd: dict = {}
    for n in range(lo, hi + 1):
        for x in A.basis(n - 1):
            col: dict = {}
            for y, k in A.boundary_of(n - 1, x).items():
                add_term(col, ("a", y), -k, ring)
            for y, k in f(x).items():
                add_term(col, ("b", y), k, ring)
            bd.setdefault(n, {})[("a", x)] = col
        for y in B.basis(n):
            bd.setdefault(n, {})[("b", y)] = {("b", z): k for z, k in B.boundary_of(n, y).items()}
    return FreeChainComplex(bases, bd, -1, f"cone({A.name}->{B.name})")


def chain_map_failures(f: Callable[[object], Mapping], A: FreeChainComplex, B: FreeChainComplex,
                       ring: Ring = ZZ) -> list:
    bad = []
    for n in sorted(A.bases):
        if n + A.step not in A.bases:
            continue
        for x in A.basis(n):
            lhs = B.apply(f(x), n, ring)
            rhs: dict = {}
            for y, k in A.boundary_of(n, x).items():
                add_into(rhs, f(y), k, ring)
            if reduce_chain(lhs, ring) != reduce_chain(rhs, ring):
                bad.append((n, x))
    return bad


def quasi_isomorphism_report(f: Callable[[object], Mapping], A: FreeChainComplex, B: FreeChainComplex,
                             ring: Ring = ZZ, top: int | None = None) -> dict:
    """Homology of the mapping cone, degree by degree; a quasi-isomorphism has all entries zero.

    When both complexes are truncations, pass ``top`` below the truncation degree.
    """
    K = mapping_cone(f, A, B, ring)
    top = A.degree_range[1] + 1 if top is None else top
    out = {}
    for h in homology_table(K, ring, range(K.degree_range[0], top + 1)):
        out[h.degree] = (h.betti, h.torsion)
    return out


# ----------------------------------------------------------------------------
# the subdivision map of a cubical set and its duals
# ----------------------------------------------------------------------------

@dataclass
class TriangulationMap:
    """Subdivision chain map C^cube(Q) -> C(T(Q)) through cube dimension ``top``.

    Its dual is the cochain map C^*(T(Q)) -> C^*_cube(Q); on a cochain it reads
    off the values on maximal simplices.
    """
    T: Triangulation
    top: int

    @property
    def Q(self):
        return self.T.Q

    def cubical_complex(self, ring: Ring = ZZ) -> FreeChainComplex:
        return normalized_cubical_chains(self.Q, ring, self.top)

    def simplicial_complex(self, ring: Ring = ZZ) -> FreeChainComplex:
        return normalized_chains(self.T.S, ring, self.top)

    def __call__(self, core) -> dict:
        return self.T.chain_map(core)

    def dual(self, g) -> dict:
        """Value of the dual map on a basis cochain of T(Q): a cubical cochain."""
        lab, blocks = g
        if not blocks or any(len(b) != 1 for b in blocks):
            return {} if blocks else {self.T.core_of[lab]: 1}
        return {self.T.core_of[lab]: sorting_sign(tuple(b[0] for b in blocks))}

    def dual_chain(self, f: Mapping) -> dict:
        out: dict = {}
        for g, k in f.items():
            add_into(out, self.dual(g), k)
        return out


def triangulation_chain_map(Q: CubicalSet, top: int | None = None) -> TriangulationMap:
    top = Q.top_dim if top is None else top
    return TriangulationMap(Triangulation(Q, top), top)


def triangulation_report(Q: CubicalSet, top: int | None = None, ring: Ring = ZZ) -> dict:
    """Chain-map failures and cone homology of the subdivision map."""
    t = triangulation_chain_map(Q, top)
    A, B = t.cubical_complex(ring), t.simplicial_complex(ring)
    cone = quasi_isomorphism_report(t, A, B, ring)
    return {"chain_map": chain_map_failures(t, A, B, ring),
            "cone_homology": cone,
            "quasi_isomorphism": all(b == 0 and not tor for b, tor in cone.values())}


def shuffle_steps(k: int, l: int):
    """(k, l)-shuffles as step words over {0, 1} with their Eilenberg-Zilber signs."""
    for pos in itertools.combinations(range(k + l), k):
        word = [1] * (k + l)
        for i in pos:
            word[i] = 0
        inv = 0
        ones = 0
        for w in word:
            if w == 1:
                ones += 1
            else:
                inv += ones
        yield tuple(word), (-1 if inv % 2 else 1)


def simplex_product(T: Triangulation, g, h) -> dict:
    """Product of two simplices of T(G) for a monoidal G: shuffle, then multiply cubes."""
    Q = T.Q
    (la, ba), (lb, bb) = g, h
    ca, cb = T.core_of[la], T.core_of[lb]
    p = Q.core_dim(ca)
    prod = Q.multiply(Q.elem(ca), Q.elem(cb))
    if prod[0] or not Q.core_chain(prod[1]):
        return {}
    lab = Q.label(prod[1])
    if lab not in T.core_of:
        return {}
    bb = tuple(tuple(c + p for c in b) for b in bb)
    out: dict = {}
    for word, s in shuffle_steps(len(ba), len(bb)):
        ia = ib = 0
        blocks = []
        for w in word:
            if w == 0:
                blocks.append(ba[ia])
                ia += 1
            else:
                blocks.append(bb[ib])
                ib += 1
        add_term(out, (lab, tuple(blocks)), s)
    return out


def triangulation_multiplicative_failures(t: TriangulationMap, top: int | None = None) -> list:
    """Pairs of cubes with t(ab) != t(a) * t(b)."""
    Q, T = t.Q, t.T
    top = t.top if top is None else top
    bad = []
    for n in range(top + 1):
        for p in range(n + 1):
            for a in Q.cells(p):
                for b in Q.cells(n - p):
                    ab = Q.multiply(Q.elem(a), Q.elem(b))
                    lhs = {} if ab[0] else T.chain_map(ab[1])
                    rhs: dict = {}
                    for x, kx in T.chain_map(a).items():
                        for y, ky in T.chain_map(b).items():
                            add_into(rhs, simplex_product(T, x, y), kx * ky)
                    if lhs != rhs:
                        bad.append((a, b))
    return bad


def triangulation_comultiplicative_failures(t: TriangulationMap, top: int | None = None) -> list:
    """Cubes where Alexander-Whitney of the subdivision differs from the subdivided Serre diagonal."""
    Q, T = t.Q, t.T
    top = t.top if top is None else top
    bad = []
    for n in range(top + 1):
        for c in Q.cells(n):
            lhs: dict = {}
            for g, k in T.chain_map(c).items():
                for key, v in T.S.diagonal(T.S.gen(g)).items():
                    add_term(lhs, key, k * v)
            rhs: dict = {}
            for (a, b), k in Q.serre_diagonal(Q.elem(c)).items():
                for x, kx in T.chain_map(a).items():
                    for y, ky in T.chain_map(b).items():
                        add_term(rhs, (x, y), k * kx * ky)
            if lhs != rhs:
                bad.append(c)
    return bad


# ----------------------------------------------------------------------------
# twisted cochain model with a triangulated fiber
# ----------------------------------------------------------------------------

def triangulated_cochain_coalgebra(t: TriangulationMap, top: int):
    """C^*(T(G)) with the coproduct dual to the shuffle-then-multiply product of simplices.

    Only simplices of cubes of dimension <= t.top exist, so the coproduct is exact
    on pairs whose cube dimensions add up to at most t.top.
    """
    from .barcobar import DGCoalgebra, _transpose, simplicial_coalgebra
    T, Q = t.T, t.Q
    S = T.S
    C = simplicial_coalgebra(S)
    dT = _transpose(C, top)
    cube = {g: Q.core_dim(T.core_of[g[0]]) for n in range(top + 1) for g in S.generators(n)}
    diag: dict = {}
    gens = [g for n in range(top + 1) for g in S.generators(n)]
    for g in gens:
        for h in gens:
            if cube[g] + cube[h] > t.top or S.gen_dim[g] + S.gen_dim[h] > top:
                continue
            for f, k in simplex_product(T, g, h).items():
                add_term(diag.setdefault(f, {}), (g, h), k)
    return DGCoalgebra(
        name=f"C*({S.name})", step=1, unit=S.basepoint, degree=lambda g: S.gen_dim[g],
        basis=lambda n: S.generators(n) if n <= top else (),
        d=lambda f: dT.get(f, {}), diagonal=lambda f: diag.get(f, {}), top=top,
    ), cube


@dataclass
class BrownModel:
    """``C^*(Y) (x)_phi C^*(T(F))`` with phi = tau^* composed with the dual subdivision map.

    Elements ``a (x) m`` carry the weight |a| + (cube dimension of m); the
    differential and product never lower it, so everything is computed in the
    quotient by weight > ``weight``.  The comparison target is the cubical
    model ``C^*(Y) (x)_{tau^*} C^*_cube(F)`` truncated at the same weight.
    """
    X: SimplicialSet
    weight: int
    top: int
    t: TriangulationMap = field(repr=False)
    phi: object = field(repr=False)
    simplicial: object = field(repr=False)
    cubical: object = field(repr=False)
    cube: dict = field(repr=False)

    def weight_of(self, x) -> int:
        a, m = x
        return self.simplicial.H.A.degree(a) + self.cube[m]

    def _filter(self, chain: Mapping) -> dict:
        return {x: k for x, k in chain.items() if self.weight_of(x) <= self.weight}

    def complex(self) -> FreeChainComplex:
        K = self.simplicial.complex()
        bases = {n: [x for x in b if self.weight_of(x) <= self.weight] for n, b in K.bases.items()}
        bd = {n: {x: self._filter(col) for x, col in cols.items() if self.weight_of(x) <= self.weight}
              for n, cols in K.d.items()}
        return FreeChainComplex(bases, bd, K.step, f"brown({self.X.name})", check=False)

    def mul(self, x, y) -> dict:
        return self._filter(self.simplicial.mul(x, y))

    def psi(self, x) -> dict:
        """Id (x) dual subdivision on a basis element."""
        a, m = x
        return {(a, c): k for c, k in self.t.dual(m).items()}

    def psi_chain(self, chain: Mapping) -> dict:
        out: dict = {}
        for x, k in chain.items():
            add_into(out, self.psi(x), k)
        return out


def brown_simplicial_model(X: SimplicialSet, weight: int, top: int | None = None, ring: Ring = ZZ) -> BrownModel:
    """Path-fibration model over X with the triangulated loop space as fiber."""
    from .barcobar import TwistingCochain, cubical_chain_coalgebra, dual_algebra, tau_chain_cochain, cochain_algebra
    from .hga import TwistedAlgebra, cochain_hga
    from .loop_path import universal_tau
    top = weight if top is None else min(top, weight)
    tau = universal_tau(X, weight)
    _, up = tau_chain_cochain(tau, weight)
    t = triangulation_chain_map(tau.Q, weight)
    Cf, cube = triangulated_cochain_coalgebra(t, top)

    def values(f):
        out: dict = {}
        for c, k in t.dual(f).items():
            add_into(out, up(c), k)
        return out

    phi = TwistingCochain(Cf, up.target, values, "phi")
    H = cochain_hga(X, top + 1)
    Mf = cochain_algebra(t.T.S, top)
    simp = TwistedAlgebra(phi, H, Mf, Cf.diagonal, top, ring)
    Mc = dual_algebra(cubical_chain_coalgebra(tau.Q, weight), weight)
    cub = TwistedAlgebra(up, H, Mc, up.source.diagonal, top, ring)
    return BrownModel(X, weight, top, t, phi, simp, cub, cube)


def brown_model_report(B: BrownModel, ring: Ring = ZZ) -> dict:
    """d^2, Brown's condition for phi, acyclicity, and the comparison Id (x) psi."""
    from .barcobar import brown_condition_check
    from .chain import verify_d_squared
    K = B.complex()
    Kc = B.cubical.complex()
    cubical_weight = {x for n in Kc.bases for x in Kc.basis(n)}
    intertwine = []
    for n in sorted(K.bases):
        if n + 1 > B.top:
            continue
        for x in K.basis(n):
            lhs = B.psi_chain(K.boundary_of(n, x))
            rhs: dict = {}
            for y, k in B.psi(x).items():
                if y in cubical_weight:
                    add_into(rhs, Kc.boundary_of(n, y), k)
            lhs = {y: k for y, k in lhs.items() if B.cubical.H.A.degree(y[0]) + B.t.Q.core_dim(y[1]) <= B.weight}
            rhs = {y: k for y, k in rhs.items() if B.cubical.H.A.degree(y[0]) + B.t.Q.core_dim(y[1]) <= B.weight}
            if reduce_chain(lhs, ring) != reduce_chain(rhs, ring):
                intertwine.append(x)
    hom = homology_table(K, ring, range(0, B.top))
    return {
        "d_squared": verify_d_squared(K, ring),
        "brown": brown_condition_check(B.phi, B.top, ring),
        "homology": {h.degree: (h.betti, h.torsion) for h in hom},
        "intertwines": intertwine,
    }


def brown_multiplicative_report(B: BrownModel, pairs=None, triples=(), ring: Ring = ZZ) -> dict:
    """Leibniz and associativity of mu_phi, and multiplicativity of Id (x) psi, on the given tuples."""
    K = B.complex()
    deg = {x: n for n, b in K.bases.items() for x in b}

    def d(chain):
        out: dict = {}
        for x, k in chain.items():
            add_into(out, K.boundary_of(deg[x], x), k, ring)
        return out

    def mul(u: Mapping, v: Mapping, product=B.mul) -> dict:
        out: dict = {}
        for x, kx in u.items():
            for y, ky in v.items():
                add_into(out, product(x, y), kx * ky, ring)
        return reduce_chain(out, ring)

    if pairs is None:
        basis = [x for n in sorted(K.bases) for x in K.basis(n)]
        pairs = [(x, y) for x in basis for y in basis if deg[x] + deg[y] < B.top]
    leib, psi_bad = [], []
    cub_mul = B.cubical.mul
    lim = B.weight
    for x, y in pairs:
        lhs = d(B.mul(x, y))
        rhs = mul(d({x: 1}), {y: 1})
        add_into(rhs, mul({x: 1}, d({y: 1})), -1 if deg[x] % 2 else 1, ring)
        if reduce_chain(lhs, ring) != reduce_chain(rhs, ring):
            leib.append((x, y))
        p1 = B.psi_chain(B.mul(x, y))
        p2 = mul(B.psi(x), B.psi(y), cub_mul)
        p2 = {z: k for z, k in p2.items() if B.cubical.H.A.degree(z[0]) + B.t.Q.core_dim(z[1]) <= lim}
        if reduce_chain(p1, ring) != reduce_chain(p2, ring):
            psi_bad.append((x, y))
    assoc = []
    for x, y, z in triples:
        if mul(B.mul(x, y), {z: 1}) != mul({x: 1}, B.mul(y, z)):
            assoc.append((x, y, z))
    return {"leibniz": leib, "psi_multiplicative": psi_bad, "associative": assoc, "checked": len(pairs)}


# ----------------------------------------------------------------------------
# models of fibrations over a suspension
# ----------------------------------------------------------------------------

def cohomology_algebra(ranks: Mapping, prefix: str, products: Mapping | None = None):
    """Graded algebra with zero positive products from ``{degree: rank}`` (keys may be strings).

    Generators are named ``<prefix><degree>`` or ``<prefix><degree>_<i>`` when the rank exceeds one.
    """
    from .barcobar import graded_algebra
    degs = {}
    for key, r in sorted(((int(k), int(v)) for k, v in ranks.items())):
        if key == 0:
            if r != 1:
                raise ModelError("a connected space has H^0 of rank 1")
            continue
        for i in range(r):
            degs[f"{prefix}{key}" if r == 1 else f"{prefix}{key}_{i + 1}"] = key
    if products and any(v for v in products.values()):
        raise ModelError("not a suspension: positive-degree products must vanish")
    return graded_algebra(degs, name=f"H({prefix})")


def _sq_table(A, table: Mapping | None) -> dict:
    out = {}
    for key, val in (table or {}).items():
        a, b = key.split(",") if isinstance(key, str) else key
        a, b = a.strip(), b.strip()
        v = {t: int(k) for t, k in (val.items() if isinstance(val, Mapping) else val)}
        if any(A.degree(t) != A.degree(a) + A.degree(b) - 1 for t in v):
            raise ModelError(f"Sq_(1,1)({a},{b}) has the wrong degree")
        out[((a,), b)] = v
    return out


@dataclass
class SuspensionModel:
    """``A_Y (x) B(A_Z)`` twisted by f, with the product of the twisted algebra.

    In the cohomology form A_Y, A_Z are cohomology algebras and E_{1,1} is the
    table Sq_(1,1); in the cochain form they are normalized cochains of
    simplicial suspensions and E_{1,1} is the cup-1 product.
    """
    kind: str
    HY: object = field(repr=False)
    HZ: object = field(repr=False)
    fmap: Callable = field(repr=False)
    algebra: object = field(repr=False)
    max_degree: int = 6
    ring: Ring = ZZ

    def complex(self) -> FreeChainComplex:
        return self.algebra.complex()

    def mul(self, x, y) -> dict:
        return self.algebra.mul(x, y)

    def untwisted(self, x, y) -> dict:
        """The summand a1 a2 (x) m1 m2."""
        (a1, m1), (a2, m2) = x, y
        A, M = self.HY.A, self.algebra.M
        s = (-1) ** (A.degree(a2) * M.degree(m1))
        out: dict = {}
        for p, kp in A.mul(a1, a2).items():
            for q, kq in M.mul(m1, m2).items():
                add_term(out, (p, q), s * kp * kq, self.ring)
        return out

    def twisted(self, x, y) -> dict:
        """The summand carrying E_{1,1}(f(m1^1), a2)."""
        out = dict(self.mul(x, y))
        add_into(out, self.untwisted(x, y), -1, self.ring)
        return reduce_chain(out, self.ring)

    def two_term(self, x, y) -> dict:
        """The product assembled from its two summands directly, without iterated coactions."""
        (a1, m1), (a2, m2) = x, y
        A, M = self.HY.A, self.algebra.M
        out = self.untwisted(x, y)
        if m1:
            first, rest = m1[:1], m1[1:]
            c = self.fmap(first)
            s = (-1) ** (A.degree(a2) * M.degree(rest) + M.degree(first))
            e = self.HY.op([c], {a2: 1}, self.ring)
            for p, kp in A.mul_chains({a1: 1}, e, self.ring).items():
                for q, kq in M.mul(rest, m2).items():
                    add_term(out, (p, q), s * kp * kq, self.ring)
        return reduce_chain(out, self.ring)

    def basis(self, top: int | None = None) -> list:
        top = self.max_degree if top is None else top
        K = self.complex()
        return [x for n in range(top + 1) for x in K.basis(n)]


def _suspension_model(kind, HY, HZ, fvalues: Callable, max_degree: int, ring: Ring) -> SuspensionModel:
    from .barcobar import TwistingCochain, bar
    from .hga import TwistedAlgebra, bar_hopf_algebra
    M = bar_hopf_algebra(HZ, max_degree)
    B = bar(HZ.A, max_degree)

    def fmap(w):
        return fvalues(w[0]) if len(w) == 1 else {}

    phi = TwistingCochain(B, HY.A, fmap, "f")
    T = TwistedAlgebra(phi, HY, M, B.diagonal, max_degree, ring)
    return SuspensionModel(kind, HY, HZ, fmap, T, max_degree, ring)


def suspension_cohomology_model(HY: Mapping, HZ: Mapping, fstar: Mapping, sqY: Mapping | None = None,
                                sqZ: Mapping | None = None, max_degree: int = 6, ring: Ring = ZZ,
                                productsY: Mapping | None = None) -> SuspensionModel:
    """``H^*(Y) (x) B H^*(Z)`` with d(a m) twisted by f^* and the two-term product."""
    from .hga import table_hga
    AY = cohomology_algebra(HY, "y", productsY)
    AZ = cohomology_algebra(HZ, "z")
    hy = table_hga(AY, _sq_table(AY, sqY), "Y")
    hz = table_hga(AZ, _sq_table(AZ, sqZ), "Z")
    table = {}
    for z, vals in fstar.items():
        v = {t: int(k) for t, k in (vals.items() if isinstance(vals, Mapping) else vals)}
        if any(AY.degree(t) != AZ.degree(z) for t in v):
            raise ModelError(f"f^*({z}) has the wrong degree")
        table[z] = v
    return _suspension_model("cohomology", hy, hz, lambda m: table.get(m, {}), max_degree, ring)


def suspension_model_from_json(data: Mapping | str, max_degree: int = 6, ring: Ring = ZZ) -> SuspensionModel:
    import json
    if isinstance(data, str):
        data = json.loads(data)
    return suspension_cohomology_model(data["HY"], data["HZ"], data.get("fstar", {}), data.get("sqY"),
                                       data.get("sqZ"), max_degree, ring, data.get("productsY"))


def simplicial_map_cochains(Y: SimplicialSet, Z: SimplicialSet, fmap: Mapping) -> Callable:
    """f^# for a map sending each generator of Y to a generator of Z of equal dimension or to the basepoint."""
    from .simplicial import SimplexExpr as SE

    def image(g):
        h = fmap.get(g, Z.basepoint)
        if h != Z.basepoint and Z.gen_dim[h] != Y.gen_dim[g]:
            raise ModelError(f"{g} must map to a simplex of the same dimension or to the basepoint")
        return h

    def push(x):
        h = image(x.gen)
        return SE(Z.basepoint, (0,) * len(x.theta)) if h == Z.basepoint else SE(h, x.theta)

    for n in range(1, Y.top_dim + 1):
        for g in Y.generators(n):
            h = image(g)
            img = SE(Z.basepoint, (0,) * (n + 1)) if h == Z.basepoint else Z.gen(h)
            for i in range(n + 1):
                if push(Y.face(Y.gen(g), i)) != Z.face(img, i):
                    raise ModelError(f"the assignment is not simplicial at d_{i}({g})")
    pre: dict = {}
    for n in range(Y.top_dim + 1):
        for g in Y.generators(n):
            h = image(g)
            if n == 0 or h != Z.basepoint:
                pre.setdefault(h, {})[g] = 1
    return lambda z: dict(pre.get(z, {}))


def suspension_cochain_model(Y: SimplicialSet, Z: SimplicialSet, fmap: Mapping, max_degree: int = 6,
                             ring: Ring = ZZ) -> SuspensionModel:
    """``C^*(Y) (x) B C^*(Z)`` for simplicial suspensions Y, Z and a simplicial map given on generators."""
    from .hga import cochain_hga
    hy, hz = cochain_hga(Y, max_degree + 1), cochain_hga(Z, max_degree + 1)
    A = hy.A
    for p in range(1, A.top + 1):
        for q in range(1, A.top + 1 - p):
            for a in A.basis(p):
                for b in A.basis(q):
                    if reduce_chain(A.mul(a, b), ring):
                        raise ModelError("not a suspension: positive-degree products must vanish")
    return _suspension_model("cochain", hy, hz, simplicial_map_cochains(Y, Z, fmap), max_degree, ring)


def higher_operation_violations(model: SuspensionModel, arity: int = 2) -> list:
    """Nonzero E_{k,1} with 2 <= k <= arity on basis tuples of the base (should be empty)."""
    H = model.HY
    A = H.A
    top = model.max_degree
    pos = [a for n in range(1, top + 1) for a in A.basis(n)]
    bad = []
    for k in range(2, arity + 1):
        for args in itertools.product(pos, repeat=k):
            for a0 in pos:
                if sum(A.degree(a) for a in args) + A.degree(a0) - k > top:
                    continue
                if reduce_chain(H.op([{a: 1} for a in args], {a0: 1}, model.ring), model.ring):
                    bad.append((args, a0))
    return bad


def _series_product(f: list[int], g: list[int], top: int) -> list[int]:
    out = [0] * (top + 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            if a and b and i + j <= top:
                out[i + j] += a * b
    return out


def decomposition_ranks(model: SuspensionModel, top: int) -> list[int]:
    """Degree-wise ranks of  H^0(Y) (x) T_f  +  (H^{>0}(Y)/Im f) (x) B H(Z)  plus the unit class.

    Ranks are over Q for the integers and over Z/p otherwise.
    """
    from .chain import matrix_rank
    AY, AZ = model.HY.A, model.HZ.A
    ring = model.ring
    letters = [0] * (top + 2)
    for n in range(1, top + 2):
        if n - 1 <= top:
            letters[n - 1] += len(AZ.basis(n))
    bar = [1] + [0] * top
    power = [1] + [0] * top
    for _ in range(top + 1):
        power = _series_product(power, letters, top)
        bar = [a + b for a, b in zip(bar, power)]
    ker = [0] * (top + 1)
    quot = [0] * (top + 1)
    for n in range(1, top + 2):
        zs, ys = list(AZ.basis(n)), list(AY.basis(n))
        m = [[model.fmap((z,)).get(y, 0) for z in zs] for y in ys]
        r = matrix_rank(m, ring) if zs and ys else 0
        if n - 1 <= top:
            ker[n - 1] += len(zs) - r
        if n <= top:
            quot[n] += len(ys) - r
    tf = _series_product(ker, bar, top)
    out = _series_product(quot, bar, top)
    out = [a + b for a, b in zip(out, tf)]
    out[0] += 1
    return out


def additive_decomposition_check(model: SuspensionModel, top: int | None = None) -> dict:
    """Homology ranks against the decomposition, and the twisted product of cycles in homology."""
    from .chain import cycle_basis, is_boundary
    top = model.max_degree if top is None else top
    K = model.complex()
    ring = model.ring
    hom = homology_table(K, ring, range(0, top))
    ranks = [h.betti for h in hom]
    expected = decomposition_ranks(model, top - 1)
    cycles = {n: cycle_basis(K, n, ring) for n in range(top)}
    not_boundary, not_cycle = [], []
    checked = 0
    for p in range(top):
        for q in range(top - p):
            for u in cycles[p]:
                for v in cycles[q]:
                    tw: dict = {}
                    for x, kx in u.items():
                        for y, ky in v.items():
                            add_into(tw, model.twisted(x, y), kx * ky, ring)
                    checked += 1
                    if reduce_chain(K.apply(tw, p + q, ring), ring):
                        not_cycle.append((u, v))
                    elif not is_boundary(K, tw, p + q, ring):
                        not_boundary.append((u, v))
    return {"ranks": ranks, "expected": expected, "match": ranks == expected,
            "torsion": {h.degree: list(h.torsion) for h in hom if h.torsion},
            "twisted_not_cycle": not_cycle, "twisted_nonzero_in_homology": not_boundary,
            "pairs_checked": checked}


# ----------------------------------------------------------------------------
# loop homology of a suspension
# ----------------------------------------------------------------------------

def homology_basis(C: FreeChainComplex, n: int, ring: Ring = ZZ) -> list[dict]:
    """Cycles in degree n representing a basis of homology over Q (for ``ZZ``) or Z/p."""
    from .chain import cycle_basis, matrix_rank
    basis = C.basis(n)

    def rank(vs):
        return matrix_rank([[v.get(b, 0) for b in basis] for v in vs], ring) if vs else 0

    vecs = [col for s in C.basis(n - C.step) if (col := C.boundary_of(n - C.step, s))]
    r = rank(vecs)
    out = []
    for z in cycle_basis(C, n, ring):
        r2 = rank(vecs + [z])
        if r2 > r:
            vecs.append(z)
            out.append(z)
            r = r2
    return out


def tensor_algebra_ranks(gen_degrees: Sequence[int], top: int) -> list[int]:
    """Ranks of the free associative algebra on generators of the given positive degrees."""
    out = [1] + [0] * top
    for n in range(1, top + 1):
        out[n] = sum(out[n - d] for d in gen_degrees if 0 < d <= n)
    return out


def bott_samelson_check(Y: SimplicialSet, max_degree: int = 6, ring: Ring = ZZ) -> dict:
    """Loop homology of a suspension-type Y against the tensor algebra on its desuspended homology.

    Chosen cycles give a coalgebra map H_*(Y) -> C_*(Y) (the reduced diagonal of
    Y vanishes), hence an algebra map of cobar constructions; the report states
    whether it is a quasi-isomorphism through ``max_degree - 1``.
    """
    from .barcobar import DGCoalgebra, cobar, simplicial_coalgebra
    C = simplicial_coalgebra(Y)
    for n in range(1, Y.top_dim + 1):
        for g in Y.generators(n):
            if reduce_chain(C.reduced_diagonal(g), ring):
                raise ModelError("the reduced diagonal of Y must vanish")
    CY = normalized_chains(Y, ring)
    reps: dict = {}
    gens: dict[int, list] = {}
    for n in range(2, min(Y.top_dim, max_degree + 1) + 1):
        for i, z in enumerate(homology_basis(CY, n, ring)):
            lab = f"h{n}_{i + 1}"
            reps[lab] = z
            gens.setdefault(n, []).append(lab)
    degs = {lab: n for n, ls in gens.items() for lab in ls}
    unit = "h0"
    Hc = DGCoalgebra(
        name=f"H({Y.name})", step=-1, unit=unit, degree=lambda h: 0 if h == unit else degs[h],
        basis=lambda n: [unit] if n == 0 else gens.get(n, []), d=lambda h: {},
        diagonal=lambda h: {(unit, unit): 1} if h == unit else {(unit, h): 1, (h, unit): 1},
        top=max_degree + 1,
    )
    OH = cobar(Hc, max_degree).complex(ring=ring)
    OC = cobar(C, max_degree).complex(ring=ring)

    def omega_iota(w):
        out = {(): 1}
        for h in w:
            nxt: dict = {}
            for word, k in out.items():
                for c, kc in reps[h].items():
                    add_term(nxt, word + (c,), k * kc, ring)
            out = nxt
        return out

    ranks = [h.betti for h in homology_table(OC, ring, range(max_degree + 1))]
    expected = tensor_algebra_ranks([n - 1 for n, ls in gens.items() for _ in ls], max_degree)
    cone = quasi_isomorphism_report(omega_iota, OH, OC, ring, max_degree - 1)
    return {"ranks": ranks, "expected": expected, "match": ranks == expected,
            "chain_map": chain_map_failures(omega_iota, OH, OC, ring),
            "quasi_isomorphism": all(b == 0 and not t for b, t in cone.values()),
            "generators": {lab: sorted(map(str, z)) for lab, z in sorted(reps.items())}}
