"""Cubical loop and path functors, truncating twisting functions and twisted products.

An element of the loop model is ``(etas, word)``: a tuple of letters (simplices
of X of dimension >= 1, letter of dimension m has cube dimension m-1) together
with the global set of degenerate coordinates.  Words are kept canonical:

* letters equal to ``s_0(*)`` are the unit and are dropped;
* a letter whose outermost degeneracy is the last one, ``s_{m-1} x``, is
  rewritten as ``eta_{m-1}`` of the letter ``x`` (recorded in ``etas``).

The relation ``eta_{p+1}(a) b ~ a eta_1(b)`` needs no rewriting since both
sides have the same global degenerate coordinate.  Letters that are degenerate
along a non-last degeneracy are genuine nondegenerate cubes; they span an
acyclic subcomplex and are dropped from normalized chains.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping, Sequence

from .chain import FreeChainComplex, Ring, ZZ, add_into, add_term
from .cubical import CubicalError, CubicalSet, Elem, embed_etas, normalized_cubical_chains
from .simplicial import SimplexExpr, SimplicialSet


class LoopError(ValueError):
    pass


def require_1_reduced(X: SimplicialSet) -> None:
    if X.reduced_level < 1:
        raise LoopError(f"{X.name or 'X'} is not 1-reduced (needs a single vertex and no nondegenerate edges)")


def shift_etas(S: Iterable[int], by: int) -> tuple[int, ...]:
    return tuple(s + by for s in S)


class MonoidalMixin:
    unit: Elem = ((), ())

    def multiply(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def product(self, elems: Sequence[Elem]) -> Elem:
        out = self.unit
        for e in elems:
            out = self.multiply(out, e)
        return out


# ----------------------------------------------------------------------------
# the loop functor
# ----------------------------------------------------------------------------

class LoopSpace(MonoidalMixin, CubicalSet):
    """The monoidal cubical set of words in desuspended simplices, truncated at ``max_degree``."""

    def __init__(self, X: SimplicialSet, max_degree: int):
        require_1_reduced(X)
        if max_degree < 0:
            raise LoopError("max_degree must be nonnegative")
        self.X = X
        self.max_degree = max_degree
        self.name = f"Omega({X.name})"
        self._cells: dict[int, list] = {}

    @property
    def top_dim(self) -> int:
        return self.max_degree

    # -- normal form ----------------------------------------------------------------
    def canon_letters(self, letters: Iterable[SimplexExpr]) -> Elem:
        X = self.X
        etas: list[int] = []
        out: list[SimplexExpr] = []
        offset = 0
        for x in letters:
            if x.dim < 1:
                raise LoopError(f"letter {x} has dimension 0")
            m = x.dim
            while x.dim >= 2 and x.theta[-1] == x.theta[-2]:
                etas.append(offset + x.dim - 1)
                x = SimplexExpr(x.gen, x.theta[:-1])
            if not (x.dim == 1 and x.gen == X.basepoint):
                out.append(x)
            offset += m - 1
        return (tuple(sorted(etas)), tuple(out))

    def letter(self, x: SimplexExpr) -> Elem:
        return self.canon_letters((x,))

    def word(self, *gens) -> Elem:
        """Element spelled by nondegenerate generators of X."""
        return self.canon_letters(self.X.gen(g) for g in gens)

    # -- cubical structure ------------------------------------------------------------
    def core_dim(self, core) -> int:
        return sum(x.dim - 1 for x in core)

    def _locate(self, core, i):
        for q, x in enumerate(core):
            m = x.dim - 1
            if i <= m:
                return q, i
            i -= m
        raise CubicalError("face index beyond word dimension")

    def _core_face(self, core, i, eps):
        q, j = self._locate(core, i)
        x = core[q]
        if eps == 0:
            new = (self.X.face_vertices(x, 0, j), self.X.face_vertices(x, j, x.dim))
        else:
            new = (self.X.face(x, j),)
        return self.canon_letters(core[:q] + new + core[q + 1:])

    def multiply(self, a: Elem, b: Elem) -> Elem:
        n = self.dim(a)
        return (tuple(a[0]) + shift_etas(b[0], n), tuple(a[1]) + tuple(b[1]))

    # -- chains -------------------------------------------------------------------------
    def cells(self, n: int) -> list:
        if n in self._cells:
            return self._cells[n]
        X = self.X
        letters = [(g, d - 1) for d, gs in sorted(X.dims.items()) if d >= 2 for g in gs]
        out: list = []

        def rec(prefix, remaining):
            if remaining == 0:
                out.append(tuple(X.gen(g) for g in prefix))
                return
            for g, k in letters:
                if k <= remaining:
                    rec(prefix + [g], remaining - k)

        if n <= self.max_degree:
            rec([], n)
        out.sort(key=lambda w: [x.gen for x in w].__repr__())
        self._cells[n] = out
        return out

    def core_chain(self, core) -> dict:
        if any(x.is_degenerate for x in core):
            return {}
        return {core: 1}

    def label(self, core) -> str:
        return "".join(f"[{x.gen}]" for x in core) or "e"


def loop_functor(X: SimplicialSet, max_degree: int) -> LoopSpace:
    return LoopSpace(X, max_degree)


def word_gens(core) -> tuple:
    return tuple(x.gen for x in core)


# ----------------------------------------------------------------------------
# the free monoid on one degenerate generator (cubical resolution target)
# ----------------------------------------------------------------------------

class PointMonoid(MonoidalMixin, CubicalSet):
    """``M = {e_k}``: e_k = e_1^k with trivial cubical structure (every e_k, k > 0, is degenerate)."""

    name = "M"
    top_dim = 0

    def core_dim(self, core) -> int:
        return 0

    def _core_face(self, core, i, eps):
        raise CubicalError("e_0 has no faces")

    def cells(self, n):
        return [()] if n == 0 else []

    def e(self, k: int) -> Elem:
        return (tuple(range(1, k + 1)), ())

    def multiply(self, a: Elem, b: Elem) -> Elem:
        return self.e(len(a[0]) + len(b[0]))

    def label(self, core) -> str:
        return "e"


# ----------------------------------------------------------------------------
# truncating twisting functions
# ----------------------------------------------------------------------------

class TwistingFunction:
    """A degree -1 map from all simplices of X into a monoidal cubical set Q."""

    def __init__(self, X: SimplicialSet, Q: MonoidalMixin, name: str = "tau"):
        self.X, self.Q, self.name = X, Q, name

    def __call__(self, x: SimplexExpr) -> Elem:
        raise NotImplementedError


class UniversalTau(TwistingFunction):
    def __init__(self, Omega: LoopSpace):
        super().__init__(Omega.X, Omega, "tau_U")

    def __call__(self, x):
        return self.Q.letter(x)


class ConstantTau(TwistingFunction):
    def __init__(self, X: SimplicialSet, M: PointMonoid | None = None):
        super().__init__(X, M or PointMonoid(), "const")

    def __call__(self, x):
        return self.Q.e(x.dim - 1)


class TableTau(TwistingFunction):
    """Values on nondegenerate generators (and optionally on chosen degenerate simplices).

    Totally degenerate basepoint simplices go to degeneracies of the unit and the
    last degeneracy is forced by ``tau s_n = eta_n tau``.  Other degenerate simplices
    must be listed explicitly.
    """

    def __init__(self, X: SimplicialSet, Q: MonoidalMixin, table: Mapping, name: str = "table"):
        super().__init__(X, Q, name)
        self.table = dict(table)

    def __call__(self, x):
        if x in self.table:
            return self.table[x]
        n = x.dim
        if x.gen == self.X.basepoint:
            return (tuple(range(1, n)), self.Q.unit[1])
        if x.nondegenerate:
            try:
                return self.table[x.gen]
            except KeyError:
                raise LoopError(f"{self.name}: no value for generator {x.gen!r}") from None
        if n >= 2 and x.theta[-1] == x.theta[-2]:
            return self.Q.degeneracy(self(SimplexExpr(x.gen, x.theta[:-1])), n - 1)
        raise LoopError(f"{self.name}: no value for degenerate simplex {x}")


def universal_tau(X: SimplicialSet, max_degree: int) -> UniversalTau:
    return UniversalTau(LoopSpace(X, max_degree))


def verify_truncating(tau: TwistingFunction, max_degree: int | None = None) -> list[tuple]:
    """Check the four axioms on every nondegenerate simplex of dimension <= max_degree + 1."""
    X, Q = tau.X, tau.Q
    top = X.top_dim if max_degree is None else min(X.top_dim, max_degree + 1)
    bad: list[tuple] = []
    for n in range(1, top + 1):
        for g in X.generators(n):
            x = X.gen(g)
            try:
                t = tau(x)
                if Q.dim(t) != n - 1:
                    bad.append((g, "degree", 0))
                    continue
                if n == 1 and t != Q.unit:
                    bad.append((g, "unit", 0))
                for i in range(1, n):
                    want = Q.multiply(tau(X.face_vertices(x, 0, i)), tau(X.face_vertices(x, i, n)))
                    if Q.face(t, i, 0) != want:
                        bad.append((g, "d0", i))
                    if Q.face(t, i, 1) != tau(X.face(x, i)):
                        bad.append((g, "d1", i))
                if Q.degeneracy(t, n) != tau(x.degeneracy(n)):
                    bad.append((g, "eta", n))
            except (LoopError, CubicalError) as exc:
                bad.append((g, "undefined", str(exc)))
    return bad


class MonoidalMap:
    """The monoidal extension ``f(x_1...x_k) = tau(x_1)...tau(x_k)`` on the loop model."""

    def __init__(self, tau: TwistingFunction, Omega: LoopSpace):
        self.tau, self.Omega, self.Q = tau, Omega, tau.Q

    def __call__(self, a: Elem) -> Elem:
        S, word = a
        n = self.Omega.dim(a)
        t = self.Q.product([self.tau(x) for x in word])
        return (embed_etas(S, n, t[0]), t[1])


def induced_monoidal_map(tau: TwistingFunction, Omega: LoopSpace, check: bool = True) -> MonoidalMap:
    if check:
        bad = verify_truncating(tau, Omega.max_degree)
        if bad:
            raise LoopError(f"{tau.name} is not a truncating twisting function: {bad[:3]}")
    return MonoidalMap(tau, Omega)


def verify_monoidal_map(f: MonoidalMap, max_degree: int | None = None) -> list[tuple]:
    """Faces, degeneracies, products and the factorization f(tau_U x) = tau x."""
    Om, Q = f.Omega, f.Q
    top = Om.max_degree if max_degree is None else max_degree
    bad = []
    for n in range(top + 1):
        for c in Om.cells(n):
            a = Om.elem(c)
            fa = f(a)
            for i in range(1, n + 1):
                for e in (0, 1):
                    if f(Om.face(a, i, e)) != Q.face(fa, i, e):
                        bad.append((Om.label(c), "face", i, e))
            for j in range(1, n + 2):
                if f(Om.degeneracy(a, j)) != Q.degeneracy(fa, j):
                    bad.append((Om.label(c), "eta", j))
        for m in range(n + 1):
            for c1 in Om.cells(m):
                for c2 in Om.cells(n - m):
                    a, b = Om.elem(c1), Om.elem(c2)
                    if f(Om.multiply(a, b)) != Q.multiply(f(a), f(b)):
                        bad.append((Om.label(c1), "product", Om.label(c2)))
    X = Om.X
    for d in range(1, min(X.top_dim, top + 1) + 1):
        for g in X.generators(d):
            x = X.gen(g)
            if f(Om.letter(x)) != f.tau(x):
                bad.append((g, "factorization"))
    return bad


# ----------------------------------------------------------------------------
# twisted Cartesian products and the path functor
# ----------------------------------------------------------------------------

class TwistedProduct(CubicalSet):
    """``X x_tau L``: cores are pairs (simplex of X, core of L).

    ``act(q, l)`` is the left action of Q on L (defaults to the product of Q when L is Q).
    """

    def __init__(self, X: SimplicialSet, tau: TwistingFunction, L: CubicalSet,
                 act: Callable[[Elem, Elem], Elem] | None = None, max_degree: int | None = None,
                 name: str = ""):
        require_1_reduced(X)
        self.X, self.tau, self.L = X, tau, L
        if act is None:
            if L is not tau.Q:
                raise LoopError("an action of Q on L is required")
            act = tau.Q.multiply
        self.act = act
        self.max_degree = L.top_dim if max_degree is None else max_degree
        self.name = name or f"{X.name}x_{tau.name}{L.name}"

    @property
    def top_dim(self) -> int:
        return self.max_degree

    def core_dim(self, core) -> int:
        return core[0].dim + self.L.core_dim(core[1])

    def _core_face(self, core, i, eps):
        x, y = core
        p = x.dim
        X = self.X
        if i > p:
            S, y2 = self.L._core_face(y, i - p, eps)
            return (shift_etas(S, p), (x, y2))
        if eps == 1:
            return ((), (X.face(x, i - 1), y))
        front = X.face_vertices(x, 0, i - 1)
        back = X.face_vertices(x, i - 1, p)
        S, y2 = self.act(self.tau(back), ((), y))
        return (shift_etas(S, i - 1), (front, y2))

    def cells(self, n):
        out = []
        for p in range(n + 1):
            for g in self.X.generators(p):
                out.extend((self.X.gen(g), y) for y in self.L.cells(n - p))
        return out

    def core_chain(self, core) -> dict:
        x, y = core
        if x.is_degenerate:
            return {}
        return {(x, l): c for l, c in self.L.core_chain(y).items()}

    def pair(self, x: SimplexExpr, y: Elem) -> Elem:
        return (shift_etas(y[0], x.dim), (x, y[1]))

    def projection(self, a: Elem) -> SimplexExpr:
        return a[1][0]

    def label(self, core) -> str:
        return f"{core[0]}|{self.L.label(core[1])}"


def twisted_cartesian_product(X, tau, L, act=None, max_degree=None) -> TwistedProduct:
    return TwistedProduct(X, tau, L, act, max_degree)


def path_functor(X: SimplicialSet, max_degree: int) -> TwistedProduct:
    Om = LoopSpace(X, max_degree)
    return TwistedProduct(X, UniversalTau(Om), Om, max_degree=max_degree, name=f"P({X.name})")


def cubical_resolution(X: SimplicialSet, max_degree: int) -> TwistedProduct:
    tau = ConstantTau(X)
    M = tau.Q
    return TwistedProduct(X, tau, M, max_degree=max_degree, name=f"{X.name}x_cM")


def include_loops(P: TwistedProduct, y: Elem) -> Elem:
    return (tuple(y[0]), (P.X.point(0), y[1]))


def d_subcomplex_leaks(Q: CubicalSet, max_degree: int, extra_cells: Callable[[int], Iterable] | None = None
                       ) -> list:
    """Cores dropped from chains whose boundary has surviving terms (should be empty)."""
    bad = []
    for n in range(1, max_degree + 1):
        for c in extra_cells(n) if extra_cells else ():
            x = Q.elem(c)
            if Q.core_chain(c):
                continue
            out: dict = {}
            for i in range(1, n + 1):
                s = -1 if i % 2 else 1
                add_into(out, Q.chain_of(Q.face(x, i, 0)), s)
                add_into(out, Q.chain_of(Q.face(x, i, 1)), -s)
            if out:
                bad.append(c)
    return bad


def loop_d_cells(Om: LoopSpace, n: int) -> list:
    """Words of degree n using at least one letter that is degenerate along a non-last degeneracy."""
    X = Om.X
    letters = []
    for d in range(3, n + 2):
        for k in range(2, d):
            for g in X.generators(k):
                for theta in _surjections(d, k):
                    if theta[-1] != theta[-2]:
                        letters.append(SimplexExpr(g, theta))
    base = [(X.gen(g), X.gen(g).dim - 1) for dd, gs in X.dims.items() if dd >= 2 for g in gs]
    extra = [(x, x.dim - 1) for x in letters]
    out = []

    def rec(prefix, rem, used):
        if rem == 0:
            if used:
                out.append(tuple(prefix))
            return
        for x, k in base + extra:
            if 0 < k <= rem:
                rec(prefix + [x], rem - k, used or x.is_degenerate)

    rec([], n, False)
    return out


def _surjections(d: int, k: int):
    """Nondecreasing surjections [d] -> [k]."""
    for cut in itertools.combinations(range(1, d + 1), k):
        theta = []
        v = 0
        for pos in range(d + 1):
            if v < k and pos == cut[v]:
                v += 1
            theta.append(v)
        yield tuple(theta)
