"""Bar and cobar constructions, twisting cochains and twisted tensor products.

Algebras and coalgebras are given by callables on basis labels; the unit
(resp. counit dual) is an explicit degree-0 label.  ``step`` is -1 for chain
objects and +1 for cochain objects, and every twisting cochain shifts degree
by the ``step`` of its source.

Sign conventions (fixed once here and exercised by the tests):

* cobar, |c-bar| = |c| - 1:  d[c] = -[dc] + sum (-1)^|c'| [c'|c''] over the
  reduced diagonal, extended as a derivation;
* bar of a cochain algebra, |a-bar| = |a| - 1:
  d[a_1|..|a_n] = -sum (-1)^e_i [..|da_i|..] - sum_{i>=2} (-1)^e_i [..|a_{i-1}a_i|..]
  with e_i the total degree of the letters before position i;
* Brown's condition  d(phi) + phi(d) + phi-cup-phi = 0,  with the Koszul sign
  (-1)^|c'| in  phi-cup-phi(c) = sum (-1)^|c'| phi(c') phi(c'');
* the universal cochain into the cobar is c -> -[c], the universal cochain
  out of the bar is [a] -> a.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .chain import FreeChainComplex, Ring, ZZ, add_into, add_term, reduce_chain, sort_key
from .cubical import CubicalSet
from .simplicial import SimplicialSet

Label = Hashable


class BarCobarError(ValueError):
    pass


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


# ----------------------------------------------------------------------------
# dg algebras, coalgebras, modules
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class DGCoalgebra:
    name: str
    step: int
    unit: Label
    degree: Callable[[Label], int]
    basis: Callable[[int], Sequence[Label]]
    d: Callable[[Label], dict]
    diagonal: Callable[[Label], dict]
    top: int

    def reduced_diagonal(self, c: Label) -> dict:
        u = self.unit
        return {k: v for k, v in self.diagonal(c).items() if k[0] != u and k[1] != u}

    def complex(self, max_degree: int | None = None, ring: Ring = ZZ) -> FreeChainComplex:
        return _as_complex(self, max_degree, ring)


@dataclass(frozen=True)
class DGAlgebra:
    name: str
    step: int
    unit: Label
    degree: Callable[[Label], int]
    basis: Callable[[int], Sequence[Label]]
    d: Callable[[Label], dict]
    mul: Callable[[Label, Label], dict]
    top: int

    def complex(self, max_degree: int | None = None, ring: Ring = ZZ) -> FreeChainComplex:
        return _as_complex(self, max_degree, ring)

    def mul_chains(self, a: Mapping, b: Mapping, ring: Ring | None = None) -> dict:
        out: dict = {}
        for x, cx in a.items():
            for y, cy in b.items():
                add_into(out, self.mul(x, y), cx * cy, ring)
        return out

    def d_chain(self, a: Mapping, ring: Ring | None = None) -> dict:
        out: dict = {}
        for x, c in a.items():
            add_into(out, self.d(x), c, ring)
        return out


@dataclass(frozen=True)
class DGModule:
    """Left dg module over an algebra."""
    name: str
    degree: Callable[[Label], int]
    basis: Callable[[int], Sequence[Label]]
    d: Callable[[Label], dict]
    act: Callable[[Label, Label], dict]
    top: int


@dataclass(frozen=True)
class DGComodule:
    """Left dg comodule over a coalgebra: ``coaction(m) = {(c, m'): k}``."""
    name: str
    degree: Callable[[Label], int]
    basis: Callable[[int], Sequence[Label]]
    d: Callable[[Label], dict]
    coaction: Callable[[Label], dict]
    top: int


def _as_complex(obj, max_degree, ring) -> FreeChainComplex:
    top = obj.top if max_degree is None else max_degree
    bases = {n: list(obj.basis(n)) for n in range(top + 1)}
    bd: dict = {}
    for n in range(top + 1):
        if not 0 <= n + obj.step <= top:
            continue
        for b in bases[n]:
            col = reduce_chain(obj.d(b), ring)
            if col:
                bd.setdefault(n, {})[b] = col
    return FreeChainComplex(bases, bd, obj.step, obj.name)


def algebra_as_module(A: DGAlgebra) -> DGModule:
    return DGModule(A.name, A.degree, A.basis, A.d, A.mul, A.top)


def coalgebra_as_comodule(C: DGCoalgebra) -> DGComodule:
    return DGComodule(C.name, C.degree, C.basis, C.d, C.diagonal, C.top)


def trivial_module(A: DGAlgebra) -> DGModule:
    """The ground ring in degree 0, with positive-degree elements acting by zero."""
    def act(a, m):
        return {m: 1} if a == A.unit else {}
    return DGModule("R", lambda m: 0, lambda n: ["1"] if n == 0 else [], lambda m: {}, act, 0)


def _memo(f):
    return lru_cache(maxsize=None)(f)


# ----------------------------------------------------------------------------
# concrete (co)algebras
# ----------------------------------------------------------------------------

def simplicial_coalgebra(X: SimplicialSet) -> DGCoalgebra:
    """Normalized chains of X with the Alexander-Whitney diagonal."""
    return DGCoalgebra(
        name=f"C({X.name})", step=-1, unit=X.basepoint,
        degree=lambda g: X.gen_dim[g],
        basis=lambda n: X.generators(n),
        d=_memo(lambda g: X.boundary(X.gen(g))),
        diagonal=_memo(lambda g: X.diagonal(X.gen(g))),
        top=X.top_dim,
    )


def cubical_chain_algebra(Q: CubicalSet, top: int | None = None) -> DGAlgebra:
    """Normalized chains of a monoidal cubical set with the induced product."""
    top = Q.top_dim if top is None else top
    unit_core = Q.unit[1]
    return DGAlgebra(
        name=f"C({Q.name})", step=-1, unit=unit_core,
        degree=lambda c: Q.core_dim(c),
        basis=lambda n: Q.cells(n) if n <= top else [],
        d=_memo(lambda c: Q.boundary(Q.elem(c))),
        mul=_memo(lambda a, b: Q.chain_of(Q.multiply(Q.elem(a), Q.elem(b)))),
        top=top,
    )


def cubical_chain_coalgebra(Q: CubicalSet, top: int | None = None) -> DGCoalgebra:
    """Normalized cubical chains with the Serre diagonal."""
    top = Q.top_dim if top is None else top
    zero = Q.cells(0)
    if len(zero) != 1:
        raise BarCobarError("a connected cubical set is required")
    return DGCoalgebra(
        name=f"C({Q.name})", step=-1, unit=zero[0],
        degree=lambda c: Q.core_dim(c),
        basis=lambda n: Q.cells(n) if n <= top else [],
        d=_memo(lambda c: Q.boundary(Q.elem(c))),
        diagonal=_memo(lambda c: Q.serre_diagonal(Q.elem(c))),
        top=top,
    )


def _transpose(obj, top: int) -> dict:
    out: dict = {}
    for n in range(top + 1):
        for b in obj.basis(n):
            for t, c in obj.d(b).items():
                add_term(out.setdefault(t, {}), b, c)
    return out


def dual_algebra(C: DGCoalgebra, top: int | None = None, name: str = "") -> DGAlgebra:
    """Degree-wise dual of a finite-type coalgebra: transposed differential, dual product.

    Pairing is the unsigned evaluation ``<f, x> = f(x)`` on dual bases.
    """
    top = C.top if top is None else min(top, C.top)
    dT = _transpose(C, top)
    prod: dict = {}
    for n in range(top + 1):
        for c in C.basis(n):
            for (a, b), k in C.diagonal(c).items():
                add_term(prod.setdefault((a, b), {}), c, k)
    return DGAlgebra(
        name=name or f"dual({C.name})", step=-C.step, unit=C.unit, degree=C.degree,
        basis=lambda n: C.basis(n) if n <= top else [],
        d=lambda f: dT.get(f, {}), mul=lambda a, b: prod.get((a, b), {}), top=top,
    )


def dual_coalgebra(A: DGAlgebra, top: int | None = None, name: str = "") -> DGCoalgebra:
    """Degree-wise dual of a finite-type algebra, truncated at ``top``."""
    top = A.top if top is None else min(top, A.top)
    dT = _transpose(A, top)
    diag: dict = {}
    for n in range(top + 1):
        for p in range(n + 1):
            for a in A.basis(p):
                for b in A.basis(n - p):
                    for c, k in A.mul(a, b).items():
                        add_term(diag.setdefault(c, {}), (a, b), k)
    return DGCoalgebra(
        name=name or f"dual({A.name})", step=-A.step, unit=A.unit, degree=A.degree,
        basis=lambda n: A.basis(n) if n <= top else [],
        d=lambda f: dT.get(f, {}), diagonal=lambda c: diag.get(c, {}), top=top,
    )


def cochain_algebra(X: SimplicialSet, top: int | None = None) -> DGAlgebra:
    """Normalized cochains C^*(X) with the cup product."""
    return dual_algebra(simplicial_coalgebra(X), top, name=f"C*({X.name})")


def graded_algebra(degrees: Mapping[Label, int], products: Mapping[tuple, Mapping] | None = None,
                   differential: Mapping[Label, Mapping] | None = None, unit: Label = "1",
                   step: int = 1, name: str = "A") -> DGAlgebra:
    """Small algebra from tables (products of non-unit generators; unlisted products vanish)."""
    degs = dict(degrees)
    degs.setdefault(unit, 0)
    by_deg: dict[int, list] = {}
    for g, n in degs.items():
        by_deg.setdefault(n, []).append(g)
    for gs in by_deg.values():
        gs.sort(key=sort_key)
    prods = {k: dict(v) for k, v in (products or {}).items()}
    diff = {k: dict(v) for k, v in (differential or {}).items()}

    def mul(a, b):
        if a == unit:
            return {b: 1}
        if b == unit:
            return {a: 1}
        return prods.get((a, b), {})

    return DGAlgebra(name, step, unit, lambda g: degs[g], lambda n: by_deg.get(n, []),
                     lambda g: diff.get(g, {}), mul, max(degs.values()))


# ----------------------------------------------------------------------------
# words
# ----------------------------------------------------------------------------

def _letters(obj, top: int, shift: int) -> list[tuple[Label, int]]:
    out = []
    for n in range(obj.top + 1):
        k = n + shift
        if k < 1 or k > top:
            continue
        out.extend((lab, k) for lab in obj.basis(n))
    return out


def words_of_degree(letters: Sequence[tuple[Label, int]], n: int) -> list[tuple]:
    out: list[tuple] = []

    def rec(prefix, rem):
        if rem == 0:
            out.append(tuple(prefix))
            return
        for lab, k in letters:
            if k <= rem:
                rec(prefix + [lab], rem - k)

    rec([], n)
    return out


def _require_reduced(obj, what: str) -> None:
    if list(obj.basis(0)) != [obj.unit] or list(obj.basis(1)):
        raise BarCobarError(f"{what} needs a 1-reduced input ({obj.name})")


# ----------------------------------------------------------------------------
# cobar construction
# ----------------------------------------------------------------------------

def cobar(C: DGCoalgebra, max_degree: int) -> DGAlgebra:
    """The tensor algebra on desuspended positive-degree elements of C."""
    if C.step != -1:
        raise BarCobarError("cobar is implemented for chain coalgebras")
    _require_reduced(C, "cobar")
    letters = _letters(C, max_degree, -1)
    ldeg = {lab: k for lab, k in letters}
    cache: dict[int, list] = {}

    def basis(n):
        if n not in cache:
            cache[n] = words_of_degree(letters, n) if 0 <= n <= max_degree else []
        return cache[n]

    def degree(w):
        return sum(ldeg[c] for c in w)

    @_memo
    def d_letter(c):
        out: dict = {}
        for t, k in C.d(c).items():
            if t != C.unit:
                add_term(out, (t,), -k)
        for (a, b), k in C.reduced_diagonal(c).items():
            add_term(out, (a, b), _sgn(C.degree(a)) * k)
        return out

    @_memo
    def d(w):
        out: dict = {}
        e = 0
        for i, c in enumerate(w):
            s = _sgn(e)
            for t, k in d_letter(c).items():
                add_term(out, w[:i] + t + w[i + 1:], s * k)
            e += ldeg[c]
        return out

    return DGAlgebra(f"Omega{C.name}", -1, (), degree, basis, d, lambda a, b: {a + b: 1}, max_degree)


def cobar_word_degree(C: DGCoalgebra, w: Sequence[Label]) -> int:
    return sum(C.degree(c) - 1 for c in w)


# ----------------------------------------------------------------------------
# bar construction
# ----------------------------------------------------------------------------

def bar(A: DGAlgebra, max_degree: int) -> DGCoalgebra:
    """The tensor coalgebra on desuspended positive-degree elements of a cochain algebra."""
    if A.step != 1:
        raise BarCobarError("bar is implemented for cochain algebras")
    _require_reduced(A, "bar")
    letters = _letters(A, max_degree, -1)
    ldeg = {lab: k for lab, k in letters}
    cache: dict[int, list] = {}

    def basis(n):
        if n not in cache:
            cache[n] = words_of_degree(letters, n) if 0 <= n <= max_degree else []
        return cache[n]

    def degree(w):
        return sum(ldeg[a] for a in w)

    @_memo
    def d(w):
        out: dict = {}
        e = 0
        for i, a in enumerate(w):
            s = _sgn(e)
            for t, k in A.d(a).items():
                add_term(out, w[:i] + (t,) + w[i + 1:], -s * k)
            if i >= 1:
                for t, k in A.mul(w[i - 1], a).items():
                    add_term(out, w[:i - 1] + (t,) + w[i + 1:], -s * k)
            e += ldeg[a]
        return out

    def diagonal(w):
        return {(w[:i], w[i:]): 1 for i in range(len(w) + 1)}

    return DGCoalgebra(f"B{A.name}", 1, (), degree, basis, d, diagonal, max_degree)


# ----------------------------------------------------------------------------
# twisting cochains
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistingCochain:
    source: DGCoalgebra
    target: DGAlgebra
    values: Callable[[Label], dict]
    name: str = "phi"

    @property
    def shift(self) -> int:
        return self.source.step

    def __call__(self, c: Label) -> dict:
        if c == self.source.unit:
            return {}
        return self.values(c)

    def apply(self, chain: Mapping, ring: Ring | None = None) -> dict:
        out: dict = {}
        for c, k in chain.items():
            add_into(out, self(c), k, ring)
        return out

    def cup(self, c: Label, ring: Ring | None = None) -> dict:
        """``phi-cup-phi(c) = sum (-1)^|c'| phi(c') phi(c'')``."""
        out: dict = {}
        for (a, b), k in self.source.reduced_diagonal(c).items():
            add_into(out, self.target.mul_chains(self(a), self(b)), _sgn(self.source.degree(a)) * k, ring)
        return out

    def to_json(self, max_degree: int) -> dict:
        vals = {}
        for n in range(1, max_degree + 1):
            for c in self.source.basis(n):
                v = self(c)
                if v:
                    vals[sort_key(c)] = [[sort_key(t), k] for t, k in sorted(v.items(), key=lambda x: sort_key(x[0]))]
        return {"degree_shift": self.shift, "values": vals}


def brown_condition_check(phi: TwistingCochain, max_degree: int | None = None, ring: Ring = ZZ) -> list:
    """Basis elements where  d(phi c) + phi(dc) + phi-cup-phi(c)  is nonzero, with the residual."""
    C, A = phi.source, phi.target
    top = C.top if max_degree is None else max_degree
    bad = []
    for n in range(1, top + 1):
        for c in C.basis(n):
            val = phi(c)
            if any(A.degree(t) != n + phi.shift for t in val):
                bad.append((c, "degree"))
                continue
            r = A.d_chain(val, ring)
            add_into(r, phi.apply(C.d(c), ring), 1, ring)
            add_into(r, phi.cup(c, ring), 1, ring)
            if r:
                bad.append((c, r))
    return bad


def universal_cobar_cochain(C: DGCoalgebra, max_degree: int) -> TwistingCochain:
    """C -> Omega C, c -> -[c]."""
    Om = cobar(C, max_degree)
    return TwistingCochain(C, Om, lambda c: {(c,): -1} if C.degree(c) - 1 <= max_degree else {}, "iota")


def universal_bar_cochain(A: DGAlgebra, max_degree: int) -> TwistingCochain:
    """BA -> A, [a] -> a and longer words -> 0."""
    B = bar(A, max_degree)
    return TwistingCochain(B, A, lambda w: {w[0]: 1} if len(w) == 1 else {}, "pi")


def tau_chain_cochain(tau, max_degree: int) -> tuple[TwistingCochain, TwistingCochain]:
    """The chain twisting cochain tau_* and its cochain counterpart tau^*.

    ``tau_*(x) = -[tau(x)]`` and ``tau^*(f)(x) = f([tau(x)])`` (so tau^* is minus
    the transpose of tau_* under the unsigned evaluation pairing).
    """
    X, Q = tau.X, tau.Q
    CX = simplicial_coalgebra(X)
    CQ = cubical_chain_algebra(Q, max_degree)

    @_memo
    def chain_tau(g):
        return Q.chain_of(tau(X.gen(g)))

    t_low = TwistingCochain(CX, CQ, lambda g: {k: -v for k, v in chain_tau(g).items()}, f"{tau.name}_*")
    dQ = dual_coalgebra(CQ, max_degree)
    dX = cochain_algebra(X, max_degree + 1)
    table: dict = {}
    for n in range(1, min(X.top_dim, max_degree + 1) + 1):
        for g in X.generators(n):
            for q, k in chain_tau(g).items():
                add_term(table.setdefault(q, {}), g, k)
    t_up = TwistingCochain(dQ, dX, lambda q: table.get(q, {}), f"{tau.name}^*")
    return t_low, t_up


# ----------------------------------------------------------------------------
# twisted tensor products
# ----------------------------------------------------------------------------

def twisted_tensor(phi: TwistingCochain, M: DGModule, max_degree: int, ring: Ring = ZZ,
                   name: str = "") -> FreeChainComplex:
    """``C (x)_phi M``:  d(c m) = dc m + (-1)^|c| c dm + sum (-1)^|c'| c' phi(c'') m."""
    C, A = phi.source, phi.target
    step = C.step
    bases: dict[int, list] = {}
    for p in range(max_degree + 1):
        for q in range(max_degree + 1 - p):
            bases.setdefault(p + q, []).extend((c, m) for c in C.basis(p) for m in M.basis(q))
    bd: dict = {}
    for n, labs in bases.items():
        if not 0 <= n + step <= max_degree:
            continue
        for c, m in labs:
            col: dict = {}
            for c2, k in C.d(c).items():
                add_term(col, (c2, m), k, ring)
            s = _sgn(C.degree(c))
            for m2, k in M.d(m).items():
                add_term(col, (c, m2), s * k, ring)
            for (a, b), k in C.diagonal(c).items():
                if b == C.unit:
                    continue
                s = _sgn(C.degree(a)) * k
                for x, kx in phi(b).items():
                    for m2, km in M.act(x, m).items():
                        add_term(col, (a, m2), s * kx * km, ring)
            if col:
                bd.setdefault(n, {})[(c, m)] = col
    return FreeChainComplex(bases, bd, step, name or f"{C.name}x_{phi.name}{M.name}")


def twisted_tensor_comodule(phi: TwistingCochain, N: DGComodule, max_degree: int, ring: Ring = ZZ,
                            name: str = "") -> FreeChainComplex:
    """``A (x)_phi N``:  d(a n) = da n + (-1)^|a| a dn - sum (-1)^|a| a phi(c) n'  for  nu(n) = c n'.

    The minus sign on the twisting term is forced by the bar and Brown
    conventions above: with it, ``A (x)_pi BA`` is the transpose of
    ``C (x)_iota Omega C``, and d^2 = 0 whenever cup products are nonzero.
    """
    C, A = phi.source, phi.target
    step = A.step
    bases: dict[int, list] = {}
    for p in range(max_degree + 1):
        for q in range(max_degree + 1 - p):
            bases.setdefault(p + q, []).extend((a, m) for a in A.basis(p) for m in N.basis(q))
    bd: dict = {}
    for n, labs in bases.items():
        if not 0 <= n + step <= max_degree:
            continue
        for a, m in labs:
            col: dict = {}
            for a2, k in A.d(a).items():
                add_term(col, (a2, m), k, ring)
            s = _sgn(A.degree(a))
            for m2, k in N.d(m).items():
                add_term(col, (a, m2), s * k, ring)
            for (c, m2), k in N.coaction(m).items():
                for x, kx in phi(c).items():
                    for y, ky in A.mul(a, x).items():
                        add_term(col, (y, m2), -s * k * kx * ky, ring)
            if col:
                bd.setdefault(n, {})[(a, m)] = col
    return FreeChainComplex(bases, bd, step, name or f"{A.name}x_{phi.name}{N.name}")


def acyclic_cobar(C: DGCoalgebra, max_degree: int, ring: Ring = ZZ) -> FreeChainComplex:
    """``Omega(C; C) = C (x)_iota Omega C``."""
    iota = universal_cobar_cochain(C, max_degree)
    return twisted_tensor(iota, algebra_as_module(iota.target), max_degree, ring, f"Omega({C.name};{C.name})")


def acyclic_bar(A: DGAlgebra, max_degree: int, ring: Ring = ZZ) -> FreeChainComplex:
    """``B(A; A) = A (x)_pi BA``."""
    pi = universal_bar_cochain(A, max_degree)
    return twisted_tensor_comodule(pi, coalgebra_as_comodule(pi.source), max_degree, ring,
                                   f"B({A.name};{A.name})")


def perturbed(phi: TwistingCochain, c: Label) -> TwistingCochain:
    """Negative control: flip the sign of phi on one basis element."""
    def values(x):
        v = phi(x)
        return {k: -w for k, w in v.items()} if x == c else v
    return TwistingCochain(phi.source, phi.target, values, f"{phi.name}~")


# ----------------------------------------------------------------------------
# extensions
# ----------------------------------------------------------------------------

def multiplicative_extension(phi: TwistingCochain, max_degree: int) -> Callable[[tuple], dict]:
    """``f([c_1|..|c_k]) = (-phi c_1)...(-phi c_k)``: the dga map Omega C -> A (identity for iota)."""
    A = phi.target

    @_memo
    def f(w):
        out = {A.unit: 1}
        for c in w:
            out = A.mul_chains(out, {k: -v for k, v in phi(c).items()})
        return out

    return f


def iterated_reduced_diagonal(C: DGCoalgebra, c: Label, k: int) -> dict:
    """``{(c_1, ..., c_k): coeff}`` for the k-fold reduced diagonal (k >= 1)."""
    cur = {(c,): 1}
    for _ in range(k - 1):
        nxt: dict = {}
        for t, v in cur.items():
            for (a, b), w in C.reduced_diagonal(t[-1]).items():
                add_term(nxt, t[:-1] + (a, b), v * w)
        cur = nxt
    return cur


def comultiplicative_extension(phi: TwistingCochain, max_degree: int) -> Callable[[Label], dict]:
    """``g(c) = sum_k [phi c_1|..|phi c_k]`` over the iterated reduced diagonal: the dgc map C -> BA."""
    C = phi.source

    @_memo
    def g(c):
        out: dict = {}
        if c == C.unit:
            return {(): 1}
        for k in range(1, C.degree(c) + 1):
            for t, v in iterated_reduced_diagonal(C, c, k).items():
                words = {(): v}
                for x in t:
                    nxt: dict = {}
                    for w, cw in words.items():
                        for y, cy in phi(x).items():
                            add_term(nxt, w + (y,), cw * cy)
                    words = nxt
                add_into(out, words)
        return out

    return g


def check_chain_map(f: Callable[[Label], dict], src, tgt, max_degree: int, ring: Ring = ZZ) -> list:
    """Labels x of ``src`` with  f(dx) != d f(x)."""
    bad = []
    for n in range(max_degree + 1):
        if not 0 <= n + src.step <= max_degree:
            continue
        for x in src.basis(n):
            lhs: dict = {}
            for y, k in src.d(x).items():
                add_into(lhs, f(y), k, ring)
            rhs: dict = {}
            for y, k in f(x).items():
                add_into(rhs, tgt.d(y), k, ring)
            if lhs != rhs:
                bad.append(x)
    return bad


def check_multiplicative(f: Callable[[Label], dict], src: DGAlgebra, tgt: DGAlgebra, max_degree: int,
                         ring: Ring = ZZ) -> list:
    bad = []
    for n in range(max_degree + 1):
        for p in range(n + 1):
            for a in src.basis(p):
                for b in src.basis(n - p):
                    lhs: dict = {}
                    for y, k in src.mul(a, b).items():
                        add_into(lhs, f(y), k, ring)
                    rhs = tgt.mul_chains(f(a), f(b), ring)
                    if lhs != rhs:
                        bad.append((a, b))
    return bad


def check_comultiplicative(g: Callable[[Label], dict], src: DGCoalgebra, tgt: DGCoalgebra, max_degree: int,
                           ring: Ring = ZZ) -> list:
    bad = []
    for n in range(max_degree + 1):
        for c in src.basis(n):
            lhs: dict = {}
            for w, k in g(c).items():
                add_into(lhs, tgt.diagonal(w), k, ring)
            rhs: dict = {}
            for (a, b), k in src.diagonal(c).items():
                for x, kx in g(a).items():
                    for y, ky in g(b).items():
                        add_term(rhs, (x, y), k * kx * ky, ring)
            if lhs != rhs:
                bad.append(c)
    return bad


# ----------------------------------------------------------------------------
# chain identifications with the cubical models
# ----------------------------------------------------------------------------

def compare_complexes(A: FreeChainComplex, B: FreeChainComplex, rel: Callable[[Label], Label],
                      max_degree: int) -> list:
    """Check that ``rel`` is a degree-wise basis bijection A -> B carrying d_A to d_B.

    Returns ``(degree, label, reason)`` triples; empty means the complexes agree.
    """
    bad = []
    for n in range(max_degree + 1):
        mapped = [rel(a) for a in A.basis(n)]
        if len(set(mapped)) != len(mapped) or set(mapped) != set(B.basis(n)):
            bad.append((n, None, "basis"))
            continue
        for a in A.basis(n):
            da = {rel(t): k for t, k in A.boundary_of(n, a).items()}
            if da != B.boundary_of(n, rel(a)):
                bad.append((n, a, "boundary"))
    return bad


def loop_word_of(core) -> tuple:
    return tuple(x.gen for x in core)


def check_chain_identifications(X: SimplicialSet, max_degree: int, ring: Ring = ZZ, tau=None, L=None) -> dict:
    """Compare cubical chains with the algebraic models.

    (i)   C(Omega X)      vs  Omega C(X)
    (ii)  C(P X)          vs  C(X) (x)_iota Omega C(X)
    (iii) C(X x_tau L)    vs  C(X) (x)_{tau_*} C(L)   (default: tau universal, L = Omega X)
    """
    from .cubical import normalized_cubical_chains
    from .loop_path import LoopSpace, TwistedProduct, UniversalTau, path_functor

    CX = simplicial_coalgebra(X)
    report = {}
    Om = LoopSpace(X, max_degree)
    cub = normalized_cubical_chains(Om, ring, max_degree)
    alg = cobar(CX, max_degree).complex(max_degree, ring)
    report["i"] = compare_complexes(cub, alg, loop_word_of, max_degree)

    P = path_functor(X, max_degree)
    cubP = normalized_cubical_chains(P, ring, max_degree)
    algP = acyclic_cobar(CX, max_degree, ring)
    report["ii"] = compare_complexes(cubP, algP, lambda c: (c[0].gen, loop_word_of(c[1])), max_degree)

    if tau is None:
        tau = UniversalTau(LoopSpace(X, max_degree))
        L = tau.Q
    T = TwistedProduct(X, tau, L, None if L is tau.Q else getattr(L, "act", None), max_degree)
    cubT = normalized_cubical_chains(T, ring, max_degree)
    t_low, _ = tau_chain_cochain(tau, max_degree)
    CL = cubical_module(L, tau.Q, T.act, max_degree)
    algT = twisted_tensor(t_low, CL, max_degree, ring)
    report["iii"] = compare_complexes(cubT, algT, lambda c: (c[0].gen, c[1]), max_degree)
    return report


def cubical_module(L: CubicalSet, Q: CubicalSet, act, top: int) -> DGModule:
    """Chains of a cubical Q-module as a module over the chain algebra of Q."""
    return DGModule(
        name=f"C({L.name})", degree=lambda c: L.core_dim(c),
        basis=lambda n: L.cells(n) if n <= top else [],
        d=_memo(lambda c: L.boundary(L.elem(c))),
        act=_memo(lambda q, c: L.chain_of(act(Q.elem(q), L.elem(c)))),
        top=top,
    )


def twisting_to_json(phi: TwistingCochain, max_degree: int) -> str:
    return json.dumps(phi.to_json(max_degree), sort_keys=True)


def tensor_coalgebra(C1: DGCoalgebra, C2: DGCoalgebra, name: str = "") -> DGCoalgebra:
    """``C1 (x) C2`` with the Koszul differential and diagonal (1 (x) T (x) 1)(Delta (x) Delta)."""
    if C1.step != C2.step:
        raise BarCobarError("cannot tensor chain and cochain coalgebras")
    top = C1.top + C2.top

    def basis(n):
        return [(a, b) for p in range(n + 1) for a in C1.basis(p) for b in C2.basis(n - p)]

    def degree(x):
        return C1.degree(x[0]) + C2.degree(x[1])

    def d(x):
        a, b = x
        out: dict = {}
        for a2, k in C1.d(a).items():
            add_term(out, (a2, b), k)
        s = _sgn(C1.degree(a))
        for b2, k in C2.d(b).items():
            add_term(out, (a, b2), s * k)
        return out

    def diagonal(x):
        a, b = x
        out: dict = {}
        for (a1, a2), k in C1.diagonal(a).items():
            for (b1, b2), l in C2.diagonal(b).items():
                s = _sgn(C2.degree(b1) * C1.degree(a2))
                add_term(out, ((a1, b1), (a2, b2)), s * k * l)
        return out

    return DGCoalgebra(name or f"{C1.name}x{C2.name}", C1.step, (C1.unit, C2.unit), degree, basis,
                       _memo(d), _memo(diagonal), top)
