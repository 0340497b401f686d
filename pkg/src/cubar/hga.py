"""Homotopy G-algebra structure on simplicial cochains.

The diagonal of the cobar construction of a 1-reduced X is computed from the
block formula: a letter [sigma] of dimension n+1 is a cube I^n, a subset J of
interior vertices cuts sigma into consecutive blocks on the left and keeps the
vertices 0, J, n+1 on the right, and the sign is the Serre sign of (I, J) with
I the complementary coordinates.  This is the Serre diagonal of the loop cube
read through the word identification, which ``baues_vs_serre`` checks cell by
cell.

Operations E_{k,1} on C^*(X) are the unsigned transposes of the components of
this diagonal with k letters on the left and one on the right.  Independently,
``formula_E`` evaluates the explicit vertex formula (ε¹-insertions included),
and ``cup1_oracle`` is a brute-force Steenrod ⌣₁ over Z/2.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .barcobar import (
    DGAlgebra, DGCoalgebra, _sgn, bar, cochain_algebra, cobar, simplicial_coalgebra, tensor_coalgebra,
    TwistingCochain, brown_condition_check, comultiplicative_extension, iterated_reduced_diagonal,
)
from .chain import Ring, ZZ, Z2, add_into, add_term, reduce_chain, sort_key
from .cubical import serre_sign
from .loop_path import LoopSpace, require_1_reduced
from .simplicial import SimplexExpr, SimplicialSet

EPS1 = "ε¹"


class HGAError(ValueError):
    pass


# ----------------------------------------------------------------------------
# the diagonal of the cobar construction
# ----------------------------------------------------------------------------

def _block_letter(X: SimplicialSet, sigma: SimplexExpr, verts: Sequence[int]):
    """Letter of the face on ``verts``: () for an edge, None when degenerate."""
    x = X.restrict(sigma, verts)
    if x.dim == 1:
        return ()
    if x.is_degenerate:
        return None
    return (x.gen,)


def baues_letter(X: SimplicialSet, g) -> dict:
    """Diagonal of the one-letter word [g] as ``{(left_word, right_word): coeff}``."""
    sigma = X.gen(g)
    n = sigma.dim - 1
    coords = tuple(range(1, n + 1))
    out: dict = {}
    for p in range(n + 1):
        for J in itertools.combinations(coords, p):
            I = tuple(k for k in coords if k not in J)
            cuts = (0,) + J + (n + 1,)
            left: tuple = ()
            for lo, hi in zip(cuts, cuts[1:]):
                t = _block_letter(X, sigma, range(lo, hi + 1))
                if t is None:
                    break
                left += t
            else:
                right = _block_letter(X, sigma, cuts)
                if right is not None:
                    add_term(out, (left, right), serre_sign(I, J))
    return out


def baues_letter_serre(Om: LoopSpace, g) -> dict:
    """The same diagonal computed by the cubical Serre diagonal of the loop cell."""
    from .barcobar import loop_word_of
    out: dict = {}
    for (a, b), k in Om.serre_diagonal(Om.letter(Om.X.gen(g))).items():
        add_term(out, (loop_word_of(a), loop_word_of(b)), k)
    return out


def _word_degree(X: SimplicialSet, w) -> int:
    return sum(X.gen_dim[g] - 1 for g in w)


def baues_diagonal(X: SimplicialSet) -> Callable[[tuple], dict]:
    """Multiplicative extension of ``baues_letter`` to all cobar words (Koszul signs)."""
    letter = lru_cache(maxsize=None)(lambda g: baues_letter(X, g))

    @lru_cache(maxsize=None)
    def delta(w):
        if not w:
            return {((), ()): 1}
        out: dict = {}
        for (u1, u2), k in delta(w[:-1]).items():
            for (v1, v2), l in letter(w[-1]).items():
                s = _sgn(_word_degree(X, u2) * _word_degree(X, v1))
                add_term(out, (u1 + v1, u2 + v2), s * k * l)
        return out

    return delta


def baues_vs_serre(X: SimplicialSet, max_degree: int) -> list:
    """Loop cells whose Serre diagonal differs from the cobar diagonal of their word."""
    from .barcobar import loop_word_of
    Om = LoopSpace(X, max_degree)
    delta = baues_diagonal(X)
    bad = []
    for n in range(max_degree + 1):
        for core in Om.cells(n):
            serre: dict = {}
            for (a, b), k in Om.serre_diagonal(Om.elem(core)).items():
                add_term(serre, (loop_word_of(a), loop_word_of(b)), k)
            if serre != delta(loop_word_of(core)):
                bad.append(loop_word_of(core))
    return bad


def serre_algebra_map_failures(X: SimplicialSet, max_degree: int) -> list:
    """Pairs of loop cells where the Serre diagonal of the concatenation is not the product of diagonals."""
    from .barcobar import loop_word_of
    Om = LoopSpace(X, max_degree)

    def serre(core) -> dict:
        out: dict = {}
        for (a, b), k in Om.serre_diagonal(Om.elem(core)).items():
            add_term(out, (loop_word_of(a), loop_word_of(b)), k)
        return out

    bad = []
    for n in range(max_degree + 1):
        for p in range(1, n):
            for a in Om.cells(p):
                for b in Om.cells(n - p):
                    ab = Om.multiply(Om.elem(a), Om.elem(b))
                    lhs = serre(ab[1]) if not ab[0] else {}
                    rhs: dict = {}
                    for (u1, u2), k in serre(a).items():
                        for (v1, v2), l in serre(b).items():
                            s = _sgn(_word_degree(X, u2) * _word_degree(X, v1))
                            add_term(rhs, (u1 + v1, u2 + v2), s * k * l)
                    if lhs != rhs:
                        bad.append((loop_word_of(a), loop_word_of(b)))
    return bad


def baues_coalgebra(X: SimplicialSet, max_degree: int) -> DGCoalgebra:
    """The cobar construction of C(X) with its multiplicative diagonal, as a coalgebra."""
    Om = cobar(simplicial_coalgebra(X), max_degree)
    return DGCoalgebra(f"Omega C({X.name})", -1, (), Om.degree, Om.basis, Om.d, baues_diagonal(X), max_degree)


def cooperation(X: SimplicialSet, g, k: int) -> dict:
    """Component E^{k,1} of the diagonal on the letter [g]: ``{((c_1..c_k), c_0): coeff}``."""
    out: dict = {}
    for (u, v), c in baues_letter(X, g).items():
        if len(u) == k and len(v) == 1:
            add_term(out, (u, v[0]), c)
    return out


def diagonal_shape_violations(X: SimplicialSet) -> list:
    """Letters whose diagonal has a right factor of length > 1 or a non-primitive length-0 side."""
    bad = []
    for n in range(2, X.top_dim + 1):
        for g in X.generators(n):
            for (u, v), c in baues_letter(X, g).items():
                if len(v) > 1 or (not v and u != (g,)) or (not u and v != (g,)):
                    bad.append((g, u, v))
            D = baues_letter(X, g)
            if D.get(((g,), ())) != 1 or D.get(((), (g,))) != 1:
                bad.append((g, "primitive"))
    return bad


# ----------------------------------------------------------------------------
# homotopy G-algebras
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class HGA:
    """A cochain algebra with operations ``E(a_1..a_k; a_0) = E_{k,1}`` on basis labels (k >= 1)."""
    A: DGAlgebra
    E: Callable[[tuple, object], dict]
    name: str = "hga"

    def op(self, chains: Sequence[Mapping], chain0: Mapping, ring: Ring | None = None) -> dict:
        """Multilinear extension of E_{k,1} to chains."""
        out: dict = {}
        for combo in itertools.product(*[list(c.items()) for c in chains]):
            labels = tuple(x for x, _ in combo)
            coeff = 1
            for _, k in combo:
                coeff *= k
            for a0, k0 in chain0.items():
                add_into(out, self.E(labels, a0), coeff * k0, ring)
        return out

    def cup1(self, a: Mapping, b: Mapping, ring: Ring | None = None) -> dict:
        return self.op([a], b, ring)


def cochain_hga(X: SimplicialSet, top: int | None = None) -> HGA:
    """C^*(X) of a 1-reduced X with E_{k,1} dual to the cobar diagonal."""
    require_1_reduced(X)
    A = cochain_algebra(X, top)
    table: dict = {}
    for n in range(2, A.top + 1):
        for g in X.generators(n):
            for (u, v), c in baues_letter(X, g).items():
                if len(v) == 1 and u:
                    add_term(table.setdefault((u, v[0]), {}), g, c)

    def E(labels, a0):
        return table.get((tuple(labels), a0), {})

    return HGA(A, E, f"C*({X.name})")


def zero_hga(A: DGAlgebra) -> HGA:
    """Trivial operations (a commutative algebra such as the cohomology of a suspension)."""
    return HGA(A, lambda labels, a0: {}, A.name)


def table_hga(A: DGAlgebra, table: Mapping[tuple, Mapping], name: str = "") -> HGA:
    """Operations given by a table ``{((a_1..a_k), a_0): chain}``."""
    t = {(tuple(k[0]), k[1]): dict(v) for k, v in table.items()}
    return HGA(A, lambda labels, a0: t.get((tuple(labels), a0), {}), name or A.name)


# ----------------------------------------------------------------------------
# the vertex formula and the brute-force oracle
# ----------------------------------------------------------------------------

def _evaluate(c, x: SimplexExpr) -> int:
    if c == EPS1:
        return 1 if x.dim == 1 else 0
    return 1 if x.nondegenerate and x.gen == c else 0


def _cdim(X: SimplicialSet, c) -> int:
    return 1 if c == EPS1 else X.gen_dim[c]


def tilde_E(X: SimplicialSet, cs: Sequence, c0) -> dict:
    """``Ẽ_{k,1}(c_1..c_k; c_0)`` on basis cochains (``EPS1`` allowed among the c_j)."""
    k = len(cs)
    if _cdim(X, c0) != k:
        return {}
    ms = [_cdim(X, c) for c in cs]
    n = sum(ms)
    cuts = [0]
    for m in ms:
        cuts.append(cuts[-1] + m)
    eps = sum((j) * (m - 1) for j, m in enumerate(ms))
    out: dict = {}
    for g in X.generators(n):
        sigma = X.gen(g)
        val = _evaluate(c0, X.restrict(sigma, cuts))
        for j, c in enumerate(cs):
            if not val:
                break
            val *= _evaluate(c, X.restrict(sigma, range(cuts[j], cuts[j + 1] + 1)))
        if val:
            add_term(out, g, _sgn(eps) * val)
    return out


def formula_E(X: SimplicialSet, labels: Sequence, a0) -> dict:
    """``E_{k,1}(a..; a_0) = sum_j Ẽ_{j,1}(ε¹, a_1, ε¹, .., a_k, ε¹; a_0)`` over all ε¹ fillings."""
    k = len(labels)
    j = X.gen_dim[a0]
    out: dict = {}
    for pos in itertools.combinations(range(j), k):
        cs = [EPS1] * j
        for p, a in zip(pos, labels):
            cs[p] = a
        add_into(out, tilde_E(X, cs, a0))
    return out


def formula_hga(X: SimplicialSet, top: int | None = None) -> HGA:
    A = cochain_algebra(X, top)
    return HGA(A, lru_cache(maxsize=None)(lambda labels, a0: formula_E(X, labels, a0)), f"C*({X.name})")


def cup1_oracle(X: SimplicialSet, a, b) -> dict:
    """Steenrod ⌣₁ over Z/2 by enumerating vertex sets: b on the outer part, a on an inner interval.

    A face pair (U, V) of an n-simplex contributes when V = [s..t] is an interval,
    U = [0..s] ∪ [t..n] and U ∪ V is every vertex.
    """
    p, q = X.gen_dim[a], X.gen_dim[b]
    n = p + q - 1
    out: dict = {}
    if n < 0:
        return out
    verts = set(range(n + 1))
    for g in X.generators(n):
        sigma = X.gen(g)
        total = 0
        for V in itertools.combinations(range(n + 1), p + 1):
            if list(V) != list(range(V[0], V[-1] + 1)):
                continue
            for U in itertools.combinations(range(n + 1), q + 1):
                if set(U) | set(V) != verts or set(U) & set(V) != {V[0], V[-1]}:
                    continue
                total += _evaluate(a, X.restrict(sigma, V)) * _evaluate(b, X.restrict(sigma, U))
        if total % 2:
            out[g] = 1
    return out


# ----------------------------------------------------------------------------
# identities among the operations
# ----------------------------------------------------------------------------

def _positive_basis(A: DGAlgebra, top: int) -> list:
    return [(a, n) for n in range(1, top + 1) for a in A.basis(n)]


def _lin(*terms, ring=None) -> dict:
    out: dict = {}
    for coeff, chain in terms:
        add_into(out, chain, coeff, ring)
    return out


def identity_residuals(H: HGA, max_degree: int | None = None, ring: Ring = ZZ) -> dict:
    """Residuals of the standard relations among products, ⌣₁ and E_{2,1}.

    ``cup1``     d(a⌣₁b) - da⌣₁b + (-1)^|a| a⌣₁db = (-1)^|a| ab - (-1)^{|a|(|b|+1)} ba
    ``hirsch``   c⌣₁(ab) = (c⌣₁a)b + (-1)^{|a|(|c|-1)} a(c⌣₁b)
    ``hirsch2``  the coboundary of E_{2,1} against the failure of the left Hirsch formula
    ``assoc``    a⌣₁(b⌣₁c) - (a⌣₁b)⌣₁c = E_{2,1}(a,b;c) + (-1)^{(|a|+1)(|b|+1)} E_{2,1}(b,a;c)

    Each value is a list of the basis tuples where the relation fails.
    """
    A = H.A
    top = A.top if max_degree is None else max_degree
    B = _positive_basis(A, top)
    mul, d = (lambda x, y: A.mul_chains(x, y, ring)), (lambda x: A.d_chain(x, ring))

    def E1(x, y):
        return H.op([x], y, ring)

    def E2(x, y, z):
        return H.op([x, y], z, ring)

    out: dict = {"cup1": [], "hirsch": [], "hirsch2": [], "assoc": []}
    for (a, p), (b, q) in itertools.product(B, repeat=2):
        if p + q - 1 > top:
            continue
        x, y = {a: 1}, {b: 1}
        r = _lin((1, d(E1(x, y))), (-1, E1(d(x), y)), (_sgn(p), E1(x, d(y))),
                 (-_sgn(p), mul(x, y)), (_sgn(p * (q + 1)), mul(y, x)), ring=ring)
        if r:
            out["cup1"].append((a, b))
    for (a, p), (b, q), (c, r_) in itertools.product(B, repeat=3):
        x, y, z = {a: 1}, {b: 1}, {c: 1}
        if p + q + r_ - 1 <= top:
            r = _lin((1, E1(z, mul(x, y))), (-1, mul(E1(z, x), y)), (-_sgn(p * (r_ - 1)), mul(x, E1(z, y))),
                     ring=ring)
            if r:
                out["hirsch"].append((c, a, b))
        if p + q + r_ - 2 <= top:
            r = _lin((1, d(E2(x, y, z))), (-1, E2(d(x), y, z)), (-_sgn(p), E2(x, d(y), z)),
                     (-_sgn(p + q), E2(x, y, d(z))),
                     (-_sgn(p + q), E1(mul(x, y), z)), (_sgn(p + q * r_), mul(E1(x, z), y)),
                     (_sgn(p + q), mul(x, E1(y, z))), ring=ring)
            if r:
                out["hirsch2"].append((a, b, c))
            r = _lin((1, E1(x, E1(y, z))), (-1, E1(E1(x, y), z)),
                     (-1, E2(x, y, z)), (-_sgn((p + 1) * (q + 1)), E2(y, x, z)), ring=ring)
            if r:
                out["assoc"].append((a, b, c))
    return out


# ----------------------------------------------------------------------------
# the product on the bar construction
# ----------------------------------------------------------------------------

def E_cochain(H: HGA, max_degree: int) -> TwistingCochain:
    """``E: BA (x) BA -> A`` assembled from E_{1,0} = E_{0,1} = id and the E_{k,1}."""
    B = bar(H.A, max_degree)
    BB = tensor_coalgebra(B, B, f"{B.name}x{B.name}")

    def values(xy):
        x, y = xy
        if not x and len(y) == 1:
            return {y[0]: 1}
        if not y and len(x) == 1:
            return {x[0]: 1}
        if len(y) == 1:
            return H.E(tuple(x), y[0])
        return {}

    return TwistingCochain(BB, H.A, values, "E")


def bar_product(H: HGA, max_degree: int) -> Callable:
    """mu_E on labels ``(x, y)`` of BA (x) BA: the comultiplicative extension of E."""
    return comultiplicative_extension(E_cochain(H, max_degree), max_degree)


def dual_diagonal_product(X: SimplicialSet, max_degree: int) -> Callable:
    """``mu(x (x) y) = sum_w <x (x) y, Delta w> w``: the transpose of the cobar diagonal."""
    Om = cobar(simplicial_coalgebra(X), max_degree)
    delta = baues_diagonal(X)
    table: dict = {}
    for n in range(max_degree + 1):
        for w in Om.basis(n):
            for key, k in delta(w).items():
                add_term(table.setdefault(key, {}), w, k)
    return lambda xy: table.get(tuple(xy), {})


def _mu_chains(mu, x: Mapping, y: Mapping, ring=None) -> dict:
    out: dict = {}
    for a, ka in x.items():
        for b, kb in y.items():
            add_into(out, mu((a, b)), ka * kb, ring)
    return out


def verify_hga_axioms(H: HGA, max_degree: int, ring: Ring = ZZ) -> dict:
    """Failures of the defining conditions, by name.

    ``degree``  E_{k,1} has degree 1-(k+1)
    ``twisting`` E is a twisting cochain BA (x) BA -> A
    ``chain_map``, ``comultiplicative``, ``unit``, ``associative``  for mu_E
    """
    A = H.A
    E = E_cochain(H, max_degree)
    BB = E.source
    B = bar(A, max_degree)
    mu = comultiplicative_extension(E, max_degree)
    from .barcobar import check_chain_map, check_comultiplicative
    report: dict = {"degree": [], "twisting": [], "chain_map": [], "comultiplicative": [], "unit": [],
                    "associative": []}
    for n in range(1, max_degree + 1):
        for xy in BB.basis(n):
            for t in E(xy):
                if A.degree(t) != n + 1:
                    report["degree"].append(xy)
    report["twisting"] = [r[0] for r in brown_condition_check(E, max_degree, ring)]
    report["chain_map"] = check_chain_map(mu, BB, B, max_degree, ring)
    report["comultiplicative"] = check_comultiplicative(mu, BB, B, max_degree, ring)
    for n in range(max_degree + 1):
        for x in B.basis(n):
            if reduce_chain(mu(((), x)), ring) != {x: 1} or reduce_chain(mu((x, ())), ring) != {x: 1}:
                report["unit"].append(x)
    for n in range(max_degree + 1):
        for p in range(1, n):
            for q in range(1, n - p):
                for x in B.basis(p):
                    for y in B.basis(q):
                        for z in B.basis(n - p - q):
                            lhs = _mu_chains(mu, _mu_chains(mu, {x: 1}, {y: 1}, ring), {z: 1}, ring)
                            rhs = _mu_chains(mu, {x: 1}, _mu_chains(mu, {y: 1}, {z: 1}, ring), ring)
                            if reduce_chain(lhs, ring) != reduce_chain(rhs, ring):
                                report["associative"].append((x, y, z))
    return report


def bar_hopf_algebra(H: HGA, max_degree: int) -> DGAlgebra:
    """BA with the product mu_E (unit the empty word)."""
    B = bar(H.A, max_degree)
    mu = bar_product(H, max_degree)
    return DGAlgebra(f"B{H.A.name}", 1, (), B.degree, B.basis, B.d, lambda x, y: mu((x, y)), max_degree)


def shuffle_product(x: tuple, y: tuple, degree: Callable[[tuple], int]) -> dict:
    """Signed shuffles of two bar words (letter degrees from ``degree((letter,))``)."""
    out: dict = {}
    n, m = len(x), len(y)
    for pos in itertools.combinations(range(n + m), n):
        w, i, j, s = [], 0, 0, 0
        for t in range(n + m):
            if t in pos:
                w.append(x[i])
                s += degree((x[i],)) * sum(degree((b,)) for b in y[:j])
                i += 1
            else:
                w.append(y[j])
                j += 1
        add_term(out, tuple(w), _sgn(s))
    return out


# ----------------------------------------------------------------------------
# twisted multiplications
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistedAlgebra:
    """``A (x)_phi M`` with its twisted differential and product.

    ``coaction(m) = {(c, m'): k}`` is a left C-coaction on the algebra M.  The
    product of ``a1 m1`` and ``a2 m2`` is

        sum_k (-1)^{|a2||m1'| + |c^1|+..+|c^k|} a1 E_{k,1}(phi c^1, .., phi c^k; a2) (x) m1' m2

    over the k-fold iterated coaction  m1 -> c^1 (x) .. (x) c^k (x) m1'.  The
    factor (-1)^{sum |c^i|} comes from the conventions fixed in ``barcobar``; it makes the product on
    ``A (x)_pi BA`` agree with the transposed Serre product of the path space.
    """
    phi: TwistingCochain
    H: HGA
    M: DGAlgebra
    coaction: Callable
    max_degree: int
    ring: Ring = ZZ

    def degree(self, x) -> int:
        return self.H.A.degree(x[0]) + self.M.degree(x[1])

    def complex(self):
        from .barcobar import DGComodule, twisted_tensor_comodule
        N = DGComodule(self.M.name, self.M.degree, self.M.basis, self.M.d, self.coaction, self.max_degree)
        return twisted_tensor_comodule(self.phi, N, self.max_degree, self.ring)

    def iterated(self, m, k: int) -> dict:
        unit = self.phi.source.unit
        cur = {((), m): 1}
        for _ in range(k):
            nxt: dict = {}
            for (cs, m1), v in cur.items():
                for (c, m2), w in self.coaction(m1).items():
                    if c != unit:
                        add_term(nxt, (cs + (c,), m2), v * w)
            cur = nxt
        return cur

    def mul(self, x, y) -> dict:
        A, C, M, phi, ring = self.H.A, self.phi.source, self.M, self.phi, self.ring
        (a1, m1), (a2, m2) = x, y
        out: dict = {}
        k = 0
        while True:
            it = self.iterated(m1, k)
            if not it:
                break
            for (cs, rest), v in it.items():
                s = _sgn(A.degree(a2) * M.degree(rest) + sum(C.degree(c) for c in cs)) * v
                e = self.H.op([phi(c) for c in cs], {a2: 1}, ring) if cs else {a2: 1}
                if not e:
                    continue
                left = A.mul_chains({a1: 1}, e, ring)
                if not left:
                    continue
                right = M.mul(rest, m2)
                for p, kp in left.items():
                    for q, kq in right.items():
                        add_term(out, (p, q), s * kp * kq, ring)
            k += 1
            if k > M.degree(m1) + 1:
                break
        return out

    def mul_chains(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for a, ka in x.items():
            for b, kb in y.items():
                add_into(out, self.mul(a, b), ka * kb, self.ring)
        return out


def acyclic_bar_algebra(H: HGA, max_degree: int, ring: Ring = ZZ) -> TwistedAlgebra:
    """``B(A; A) = A (x)_pi BA`` with the product built from E and mu_E."""
    from .barcobar import universal_bar_cochain
    pi = universal_bar_cochain(H.A, max_degree)
    M = bar_hopf_algebra(H, max_degree)
    return TwistedAlgebra(pi, H, M, pi.source.diagonal, max_degree, ring)


def path_model(X: SimplicialSet, max_degree: int, ring: Ring = ZZ) -> TwistedAlgebra:
    """``C^*(X) (x)_{tau^*} C^*_cube(Omega X)``: cochains of the path space with the twisted product."""
    from .barcobar import cubical_chain_coalgebra, dual_algebra, tau_chain_cochain
    from .loop_path import universal_tau
    tau = universal_tau(X, max_degree)
    _, up = tau_chain_cochain(tau, max_degree)
    M = dual_algebra(cubical_chain_coalgebra(tau.Q, max_degree), max_degree)
    return TwistedAlgebra(up, cochain_hga(X, max_degree + 1), M, up.source.diagonal, max_degree, ring)


def acyclic_bar_multiplication(H: HGA, max_degree: int, ring: Ring = ZZ) -> Callable:
    T = acyclic_bar_algebra(H, max_degree, ring)
    return T.mul


def _basis_upto(T: TwistedAlgebra, top: int) -> list:
    A, M = T.H.A, T.M
    return [(a, m) for n in range(top + 1) for p in range(n + 1) for a in A.basis(p) for m in M.basis(n - p)]


def leibniz_failures(T: TwistedAlgebra, pairs) -> list:
    """Pairs (x, y) where d(xy) != dx y + (-1)^|x| x dy."""
    K = T.complex()
    ring = T.ring

    def d(chain):
        out: dict = {}
        for z, k in chain.items():
            add_into(out, K.boundary_of(T.degree(z), z), k, ring)
        return out

    bad = []
    for x, y in pairs:
        if T.degree(x) + T.degree(y) + 1 > T.max_degree:
            continue
        lhs = d(T.mul(x, y))
        rhs = T.mul_chains(d({x: 1}), {y: 1})
        add_into(rhs, T.mul_chains({x: 1}, d({y: 1})), _sgn(T.degree(x)), ring)
        if reduce_chain(lhs, ring) != reduce_chain(rhs, ring):
            bad.append((x, y))
    return bad


def associativity_failures(T: TwistedAlgebra, triples) -> list:
    bad = []
    for x, y, z in triples:
        if T.degree(x) + T.degree(y) + T.degree(z) > T.max_degree:
            continue
        lhs = T.mul_chains(T.mul(x, y), {z: 1})
        rhs = T.mul_chains({x: 1}, T.mul(y, z))
        if reduce_chain(lhs, T.ring) != reduce_chain(rhs, T.ring):
            bad.append((x, y, z))
    return bad


def exhaustive_pairs(T: TwistedAlgebra, top: int) -> list:
    B = _basis_upto(T, top)
    return [(x, y) for x in B for y in B if T.degree(x) + T.degree(y) <= top]


def exhaustive_triples(T: TwistedAlgebra, top: int) -> list:
    B = _basis_upto(T, top)
    return [(x, y, z) for x in B for y in B if T.degree(x) + T.degree(y) <= top
            for z in B if T.degree(x) + T.degree(y) + T.degree(z) <= top]


def random_tuples(T: TwistedAlgebra, count: int, arity: int, seed: int, top: int | None = None) -> list:
    """Seeded random basis tuples whose total degree stays within ``top``.

    Each entry is drawn uniformly among basis elements fitting the remaining degree budget.
    """
    import random
    top = T.max_degree if top is None else top
    rng = random.Random(seed)
    by_deg: dict[int, list] = {}
    for x in _basis_upto(T, top):
        by_deg.setdefault(T.degree(x), []).append(x)
    out = []
    for _ in range(count):
        budget, t = top, []
        for _ in range(arity):
            pool = [x for n in range(budget + 1) for x in by_deg.get(n, [])]
            x = rng.choice(pool)
            t.append(x)
            budget -= T.degree(x)
        out.append(tuple(t))
    return out


# ----------------------------------------------------------------------------
# multiplicative twisting cochains
# ----------------------------------------------------------------------------

def multiplicative_cochain_failures(phi: TwistingCochain, C_mul: Callable, H: HGA, max_degree: int,
                                    ring: Ring = ZZ) -> list:
    """Pairs (x, y) with g_phi(xy) != g_phi(x) * g_phi(y) in (BA, mu_E); ``C_mul`` is the product of C."""
    g = comultiplicative_extension(phi, max_degree)
    mu = bar_product(H, max_degree)
    C = phi.source
    bad = []
    for n in range(max_degree + 1):
        for p in range(n + 1):
            for x in C.basis(p):
                for y in C.basis(n - p):
                    lhs: dict = {}
                    for z, k in C_mul(x, y).items():
                        add_into(lhs, g(z), k, ring)
                    rhs = _mu_chains(mu, g(x), g(y), ring)
                    if reduce_chain(lhs, ring) != reduce_chain(rhs, ring):
                        bad.append((x, y))
    return bad


def multiplicative_cochain_check(phi: TwistingCochain, C_mul: Callable, H: HGA, max_degree: int,
                                 ring: Ring = ZZ) -> bool:
    return not multiplicative_cochain_failures(phi, C_mul, H, max_degree, ring)


# ----------------------------------------------------------------------------
# Jacobi identity for the ⌣₁ commutator, modulo coboundaries
# ----------------------------------------------------------------------------

def bracket(H: HGA, a: Mapping, b: Mapping, p: int, q: int, ring: Ring | None = None) -> dict:
    """``[a, b] = a⌣₁b - (-1)^{(p+1)(q+1)} b⌣₁a`` for homogeneous a, b of degrees p, q."""
    out = H.cup1(a, b, ring)
    add_into(out, H.cup1(b, a, ring), -_sgn((p + 1) * (q + 1)), ring)
    return out


def is_coboundary(A: DGAlgebra, r: Mapping, n: int, ring: Ring = ZZ) -> bool:
    """Whether r (a cochain of degree n) lies in the image of d over ``ring``."""
    from .chain import matrix_rank, smith_normal_form
    r = reduce_chain(r, ring)
    if not r:
        return True
    src = list(A.basis(n - 1))
    tgt = list(A.basis(n))
    idx = {t: i for i, t in enumerate(tgt)}
    cols = []
    for s in src:
        col = [0] * len(tgt)
        for t, k in A.d(s).items():
            col[idx[t]] += k
        cols.append(col)
    rcol = [0] * len(tgt)
    for t, k in r.items():
        rcol[idx[t]] += k
    M0 = [list(row) for row in zip(*cols)] if cols else [[] for _ in tgt]
    M1 = [row + [rcol[i]] for i, row in enumerate(M0)]
    if ring.p:
        return matrix_rank(M0, ring) == matrix_rank(M1, ring)
    s0 = [x for x in smith_normal_form(M0) if x]
    s1 = [x for x in smith_normal_form(M1) if x]
    prod0 = 1
    for x in s0:
        prod0 *= x
    prod1 = 1
    for x in s1:
        prod1 *= x
    return len(s0) == len(s1) and abs(prod0) == abs(prod1)


def cocycle_basis_elements(A: DGAlgebra, top: int) -> list:
    return [(a, n) for n in range(1, top + 1) for a in A.basis(n) if not A.d(a)]


def cocycle_basis(A: DGAlgebra, top: int, ring: Ring = ZZ) -> list:
    """``(cocycle, degree)`` pairs spanning the cocycles of degrees 1..top (over Q for ``ZZ``)."""
    from .chain import cycle_basis
    K = A.complex(top + 1, ring)
    return [(z, n) for n in range(1, top + 1) for z in cycle_basis(K, n, ring)]


def jacobi_report(H: HGA, cocycles: Sequence[tuple], ring: Ring = ZZ, top: int | None = None) -> dict:
    """Graded Jacobi for the bracket on cocycle triples: ``{triple: "holds" | "inconclusive"}``.

    With shifted degrees p' = p - 1 the residual is
    (-1)^{a'c'}[a,[b,c]] + (-1)^{b'a'}[b,[c,a]] + (-1)^{c'b'}[c,[a,b]];
    it holds when the residual is a coboundary in the truncation.
    """
    A = H.A
    top = A.top if top is None else top
    out = {}
    for (a, p), (b, q), (c, r) in itertools.product(cocycles, repeat=3):
        n = p + q + r - 2
        if n > top:
            continue
        x, y, z = (dict(v) if isinstance(v, Mapping) else {v: 1} for v in (a, b, c))
        res: dict = {}
        add_into(res, bracket(H, x, bracket(H, y, z, q, r, ring), p, q + r - 1, ring), _sgn((p - 1) * (r - 1)), ring)
        add_into(res, bracket(H, y, bracket(H, z, x, r, p, ring), q, r + p - 1, ring), _sgn((q - 1) * (p - 1)), ring)
        add_into(res, bracket(H, z, bracket(H, x, y, p, q, ring), r, p + q - 1, ring), _sgn((r - 1) * (q - 1)), ring)
        key = tuple(sort_key(v) if isinstance(v, Mapping) else v for v in (a, b, c))
        out[key] = "holds" if is_coboundary(A, res, n, ring) else "inconclusive"
    return out


# ----------------------------------------------------------------------------
# export
# ----------------------------------------------------------------------------

def hga_to_json(H: HGA, max_degree: int, max_arity: int = 3) -> str:
    """``{"E": {"k,1": [{"args": [...], "value": [[label, coeff], ...]}]}}`` over basis tuples."""
    A = H.A
    B = [(a, n) for n in range(1, max_degree + 1) for a in A.basis(n)]
    out: dict = {}
    for k in range(1, max_arity + 1):
        rows = []
        for combo in itertools.product(B, repeat=k + 1):
            if sum(n for _, n in combo) - k > max_degree:
                continue
            labels = tuple(a for a, _ in combo[:-1])
            v = H.E(labels, combo[-1][0])
            if v:
                rows.append({"args": [str(a) for a, _ in combo],
                             "value": [[str(t), c] for t, c in sorted(v.items(), key=lambda x: sort_key(x[0]))]})
        if rows:
            rows.sort(key=lambda r: r["args"])
            out[f"{k},1"] = rows
    return json.dumps({"E": out, "schema": 1}, sort_keys=True)
