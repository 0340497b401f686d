"""Cubical sets, normalized cubical chains and the Serre diagonal.

Every element of a cubical set is handled as a pair ``(etas, core)``: ``etas`` is
the sorted tuple of coordinates (1-based, in the final cube) along which the
element is degenerate and ``core`` is a nondegenerate element of dimension
``n - len(etas)``.  With this normal form the d/eta and eta/eta identities hold
by construction, so subclasses only describe faces of nondegenerate cores.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator, Mapping, Sequence

from .chain import FreeChainComplex, Ring, ZZ, add_into, add_term, sort_key

Elem = tuple  # (etas, core)


class CubicalError(ValueError):
    pass


def embed_etas(outer: Sequence[int], n: int, inner: Sequence[int]) -> tuple[int, ...]:
    """Merge degeneracy coordinates of an inner element into an n-cube with outer degenerate coordinates."""
    if not inner:
        return tuple(outer)
    out = set(outer)
    free = [k for k in range(1, n + 1) if k not in out]
    for s in inner:
        out.add(free[s - 1])
    return tuple(sorted(out))


def sorting_sign(seq: Sequence[int]) -> int:
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv % 2 else 1


# Sign of the term d^0_J x (x) d^1_I x of the Serre diagonal: the parity of the
# permutation sorting (I, J).  The other ordering breaks the chain-map property.
SERRE_ORDER = "IJ"


def serre_sign(I: Sequence[int], J: Sequence[int]) -> int:
    return sorting_sign(tuple(I) + tuple(J)) if SERRE_ORDER == "IJ" else sorting_sign(tuple(J) + tuple(I))


class CubicalSet:
    """Base class: subclasses provide ``core_dim``, ``_core_face`` and ``cells``."""

    name = ""

    # -- subclass hooks --------------------------------------------------------------
    def core_dim(self, core) -> int:
        raise NotImplementedError

    def _core_face(self, core, i: int, eps: int) -> Elem:
        raise NotImplementedError

    def cells(self, n: int) -> list:
        """Ordered basis of normalized chains in degree n (nondegenerate cores)."""
        raise NotImplementedError

    def core_chain(self, core) -> dict:
        return {core: 1}

    def label(self, core) -> str:
        return str(core)

    # -- element calculus ----------------------------------------------------------
    @staticmethod
    def elem(core) -> Elem:
        return ((), core)

    def dim(self, x: Elem) -> int:
        return len(x[0]) + self.core_dim(x[1])

    def face(self, x: Elem, i: int, eps: int) -> Elem:
        S, c = x
        n = len(S) + self.core_dim(c)
        if not 1 <= i <= n:
            raise CubicalError(f"d_{i}^{eps} undefined in dimension {n}")
        if eps not in (0, 1):
            raise CubicalError("epsilon must be 0 or 1")
        if i in S:
            return (tuple(s if s < i else s - 1 for s in S if s != i), c)
        ic = i - sum(1 for s in S if s < i)
        S1 = tuple(s if s < i else s - 1 for s in S)
        S2, c2 = self._core_face(c, ic, eps)
        return (embed_etas(S1, n - 1, S2), c2)

    def multi_face(self, x: Elem, idx: Sequence[int], eps: int) -> Elem:
        """``d^eps_{i_1} ... d^eps_{i_k} x`` for increasing ``idx`` (largest applied first)."""
        for i in sorted(idx, reverse=True):
            x = self.face(x, i, eps)
        return x

    def degeneracy(self, x: Elem, j: int) -> Elem:
        S, c = x
        n = len(S) + self.core_dim(c)
        if not 1 <= j <= n + 1:
            raise CubicalError(f"eta_{j} undefined in dimension {n}")
        return (tuple(sorted([s if s < j else s + 1 for s in S] + [j])), c)

    def is_degenerate(self, x: Elem) -> bool:
        return bool(x[0])

    # -- chains -----------------------------------------------------------------------
    def chain_of(self, x: Elem) -> dict:
        return {} if x[0] else self.core_chain(x[1])

    def boundary(self, x: Elem) -> dict:
        """``d x = sum_i (-1)^i (d_i^0 x - d_i^1 x)`` in normalized chains."""
        out: dict = {}
        if x[0]:
            return out
        n = self.core_dim(x[1])
        for i in range(1, n + 1):
            s = -1 if i % 2 else 1
            add_into(out, self.chain_of(self.face(x, i, 0)), s)
            add_into(out, self.chain_of(self.face(x, i, 1)), -s)
        return out

    def chain_boundary(self, chain: Mapping) -> dict:
        out: dict = {}
        for c, k in chain.items():
            add_into(out, self.boundary(self.elem(c)), k)
        return out

    def serre_diagonal(self, x: Elem) -> dict:
        """Serre diagonal on normalized chains as ``{(a, b): coeff}``."""
        out: dict = {}
        if x[0]:
            return out
        n = self.core_dim(x[1])
        coords = range(1, n + 1)
        for p in range(n + 1):
            for J in itertools.combinations(coords, p):
                I = tuple(k for k in coords if k not in J)
                left = self.chain_of(self.multi_face(x, J, 0))
                if not left:
                    continue
                right = self.chain_of(self.multi_face(x, I, 1))
                if not right:
                    continue
                s = serre_sign(I, J)
                for a, ca in left.items():
                    for b, cb in right.items():
                        add_term(out, (a, b), s * ca * cb)
        return out

    def chain_diagonal(self, chain: Mapping) -> dict:
        out: dict = {}
        for c, k in chain.items():
            add_into(out, self.serre_diagonal(self.elem(c)), k)
        return out


# ----------------------------------------------------------------------------
# chains and checks
# ----------------------------------------------------------------------------

def normalized_cubical_chains(Q: CubicalSet, ring: Ring = ZZ, max_degree: int | None = None
                              ) -> FreeChainComplex:
    top = Q.top_dim if max_degree is None else max_degree
    bases = {n: list(Q.cells(n)) for n in range(top + 1)}
    bd: dict = {}
    for n in range(1, top + 1):
        for c in bases[n]:
            col = Q.boundary(Q.elem(c))
            if ring.p is not None:
                col = {k: v % ring.p for k, v in col.items() if v % ring.p}
            bd.setdefault(n, {})[c] = col
    return FreeChainComplex(bases, bd, -1, f"C({Q.name})")


def verify_cubical_identities(Q: CubicalSet, max_degree: int | None = None) -> list[tuple]:
    """Check d/d, d/eta and eta/eta relations on every cell and its degeneracies."""
    top = Q.top_dim if max_degree is None else max_degree
    bad: list[tuple] = []
    for n in range(top + 1):
        for c in Q.cells(n):
            x = Q.elem(c)
            for i in range(1, n):
                for j in range(i, n):
                    for e1 in (0, 1):
                        for e2 in (0, 1):
                            lhs = Q.face(Q.face(x, i, e2), j, e1)
                            rhs = Q.face(Q.face(x, j + 1, e1), i, e2)
                            if lhs != rhs:
                                bad.append((c, ("dd", i, j, e1, e2)))
            for j in range(1, n + 2):
                y = Q.degeneracy(x, j)
                for i in range(1, n + 2):
                    for e in (0, 1):
                        got = Q.face(y, i, e)
                        if i < j:
                            want = Q.degeneracy(Q.face(x, i, e), j - 1)
                        elif i == j:
                            want = x
                        else:
                            want = Q.degeneracy(Q.face(x, i - 1, e), j)
                        if got != want:
                            bad.append((c, ("d-eta", i, j, e)))
                for i in range(1, j + 1):
                    if Q.degeneracy(y, i) != Q.degeneracy(Q.degeneracy(x, i), j + 1):
                        bad.append((c, ("eta-eta", i, j)))
    return bad


def _tensor_boundary(Q: CubicalSet, pairs: Mapping, dim) -> dict:
    out: dict = {}
    for (a, b), k in pairs.items():
        for a2, c in Q.boundary(Q.elem(a)).items():
            add_term(out, (a2, b), k * c)
        s = -1 if dim(a) % 2 else 1
        for b2, c in Q.boundary(Q.elem(b)).items():
            add_term(out, (a, b2), s * k * c)
    return out


def serre_failures(Q: CubicalSet, max_degree: int | None = None, ring: Ring = ZZ) -> dict[str, list]:
    """Cells violating coassociativity, counitality or the chain-map property."""
    top = Q.top_dim if max_degree is None else max_degree
    red = (lambda d: d) if ring.p is None else (lambda d: {k: v % ring.p for k, v in d.items() if v % ring.p})
    dim = lambda c: Q.core_dim(c)
    fails: dict[str, list] = {"coassociative": [], "counit": [], "chain_map": []}
    zero_cells = set(Q.cells(0))
    for n in range(top + 1):
        for c in Q.cells(n):
            x = Q.elem(c)
            D = Q.serre_diagonal(x)
            left: dict = {}
            right: dict = {}
            for (a, b), k in D.items():
                for (a1, a2), k1 in Q.serre_diagonal(Q.elem(a)).items():
                    add_term(left, (a1, a2, b), k * k1)
                for (b1, b2), k1 in Q.serre_diagonal(Q.elem(b)).items():
                    add_term(right, (a, b1, b2), k * k1)
            if red(left) != red(right):
                fails["coassociative"].append(c)
            lc: dict = {}
            rc: dict = {}
            for (a, b), k in D.items():
                if a in zero_cells:
                    add_term(lc, b, k)
                if b in zero_cells:
                    add_term(rc, a, k)
            if red(lc) != red({c: 1}) or red(rc) != red({c: 1}):
                fails["counit"].append(c)
            lhs = Q.chain_diagonal(Q.boundary(x))
            rhs = _tensor_boundary(Q, D, dim)
            if red(lhs) != red(rhs):
                fails["chain_map"].append(c)
    return fails


# ----------------------------------------------------------------------------
# finite cubical sets
# ----------------------------------------------------------------------------

class TableCubicalSet(CubicalSet):
    """Finite cubical set: generators per dimension and a face table ``faces[g][i-1][eps] = (etas, gen)``."""

    def __init__(self, dims: Mapping[int, Iterable], faces: Mapping[Hashable, Sequence[Sequence[Elem]]],
                 name: str = ""):
        self.name = name
        self.dims = {int(n): tuple(sorted(gs, key=sort_key)) for n, gs in dims.items() if gs}
        self.gdim = {g: n for n, gs in self.dims.items() for g in gs}
        self.faces = {}
        for g, n in self.gdim.items():
            fs = [tuple((tuple(e[0]), e[1]) for e in pair) for pair in faces.get(g, ())]
            if len(fs) != n or any(len(p) != 2 for p in fs):
                raise CubicalError(f"{g!r} needs {n} face pairs")
            for pair in fs:
                for S, h in pair:
                    if h not in self.gdim or len(S) + self.gdim[h] != n - 1:
                        raise CubicalError(f"bad face ({S}, {h!r}) of {g!r}")
            self.faces[g] = fs

    @property
    def top_dim(self) -> int:
        return max(self.dims, default=0)

    def core_dim(self, core) -> int:
        return self.gdim[core]

    def _core_face(self, core, i, eps):
        return self.faces[core][i - 1][eps]

    def cells(self, n):
        return list(self.dims.get(n, ()))

    def to_json(self) -> dict:
        return {"dims": {str(n): [str(g) for g in gs] for n, gs in sorted(self.dims.items())},
                "faces": {str(g): [[i + 1, e, [list(S), h]] for i, pair in enumerate(fs) for e, (S, h) in enumerate(pair)]
                          for g, fs in sorted(self.faces.items(), key=lambda t: sort_key(t[0])) if fs}}


def cubical_from_json(data: Mapping | str, name: str = "") -> TableCubicalSet:
    if isinstance(data, str):
        data = json.loads(data)
    dims = {int(n): gs for n, gs in data["dims"].items()}
    gdim = {g: int(n) for n, gs in dims.items() for g in gs}
    faces: dict = {}
    for g, entries in data.get("faces", {}).items():
        table = [[None, None] for _ in range(gdim[g])]
        for i, e, (S, h) in entries:
            table[i - 1][e] = (tuple(S), h)
        faces[g] = table
    return TableCubicalSet(dims, faces, name=name)


class StandardCube(CubicalSet):
    """The standard cube I^n; cells are strings over ``0``, ``1``, ``x``."""

    def __init__(self, n: int):
        if n < 0:
            raise CubicalError("dimension must be nonnegative")
        self.n = n
        self.name = f"I{n}"

    @property
    def top_dim(self) -> int:
        return self.n

    def core_dim(self, core) -> int:
        return core.count("x")

    def _core_face(self, core, i, eps):
        pos = [k for k, ch in enumerate(core) if ch == "x"][i - 1]
        return ((), core[:pos] + str(eps) + core[pos + 1:])

    def cells(self, k):
        out = []
        for pos in itertools.combinations(range(self.n), k):
            rest = [p for p in range(self.n) if p not in pos]
            for bits in itertools.product("01", repeat=len(rest)):
                s = ["x"] * self.n
                for p, b in zip(rest, bits):
                    s[p] = b
                out.append("".join(s))
        return sorted(out)


class ProductCubicalSet(CubicalSet):
    """``Q x Q'`` with (eta_{p+1} a, b) ~ (a, eta_1 b); cores are pairs of cores."""

    def __init__(self, A: CubicalSet, B: CubicalSet):
        self.A, self.B = A, B
        self.name = f"{A.name}x{B.name}"

    @property
    def top_dim(self) -> int:
        return self.A.top_dim + self.B.top_dim

    def core_dim(self, core) -> int:
        return self.A.core_dim(core[0]) + self.B.core_dim(core[1])

    def _core_face(self, core, i, eps):
        a, b = core
        p = self.A.core_dim(a)
        if i <= p:
            S, a2 = self.A._core_face(a, i, eps)
            return (S, (a2, b))
        S, b2 = self.B._core_face(b, i - p, eps)
        return (tuple(s + p for s in S), (a, b2))

    def cells(self, n):
        out = []
        for p in range(n + 1):
            if p > self.A.top_dim or n - p > self.B.top_dim:
                continue
            out.extend((a, b) for a in self.A.cells(p) for b in self.B.cells(n - p))
        return out

    def core_chain(self, core) -> dict:
        out: dict = {}
        for a, ka in self.A.core_chain(core[0]).items():
            for b, kb in self.B.core_chain(core[1]).items():
                add_term(out, (a, b), ka * kb)
        return out

    def pair(self, x: Elem, y: Elem) -> Elem:
        p = self.A.dim(x)
        return (tuple(x[0]) + tuple(s + p for s in y[0]), (x[1], y[1]))


def cubical_product(A: CubicalSet, B: CubicalSet) -> ProductCubicalSet:
    return ProductCubicalSet(A, B)


def point_cubical() -> TableCubicalSet:
    return TableCubicalSet({0: ["*"]}, {}, name="pt")


# ----------------------------------------------------------------------------
# block combinatorics of cube faces
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockWord:
    """Face of a standard cube written as blocks ``[0,..,j1][j1,..,j2]...``.

    With ``open_first`` the first block is written ``j1,...,js]``: all of its
    elements but the last are coordinates, whereas a closed block only uses its
    interior elements.
    """

    blocks: tuple[tuple[int, ...], ...]
    open_first: bool = False

    def __post_init__(self):
        bl = tuple(tuple(b) for b in self.blocks)
        object.__setattr__(self, "blocks", bl)
        if not bl:
            raise CubicalError("empty block word")
        for k, b in enumerate(bl):
            if any(u >= v for u, v in zip(b, b[1:])):
                raise CubicalError(f"block {b} is not strictly increasing")
            if (k > 0 or not self.open_first) and len(b) < 2:
                raise CubicalError(f"closed block {b} needs two elements")
            if k and bl[k - 1][-1] != b[0]:
                raise CubicalError("consecutive blocks must share their junction element")

    def coordinates(self) -> list[tuple[int, int]]:
        """(block, position) of each cube coordinate, in order."""
        out = []
        for k, b in enumerate(self.blocks):
            if k == 0 and self.open_first:
                out.extend((0, p) for p in range(len(b) - 1))
            else:
                out.extend((k, p) for p in range(1, len(b) - 1))
        return out

    @property
    def dim(self) -> int:
        return len(self.coordinates())

    def __str__(self) -> str:
        parts = []
        for k, b in enumerate(self.blocks):
            inner = ",".join(map(str, b))
            parts.append(f"{inner}]" if k == 0 and self.open_first else f"[{inner}]")
        return "".join(parts)

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks], "open": self.open_first}

    @classmethod
    def top(cls, n: int, open_first: bool = False) -> "BlockWord":
        """Top cell of I^n (closed: ``[0..n+1]``) or of I^(n+1) when open (``0..n+1]``)."""
        return cls((tuple(range(n + 2)),), open_first)


def block_face(b: BlockWord, i: int, eps: int) -> BlockWord:
    coords = b.coordinates()
    if not 1 <= i <= len(coords):
        raise CubicalError(f"face index {i} out of range for dimension {len(coords)}")
    k, p = coords[i - 1]
    blk = b.blocks[k]
    if eps == 0:
        new = (blk[:p + 1], blk[p:])
    else:
        new = (blk[:p] + blk[p + 1:],)
    return BlockWord(b.blocks[:k] + new + b.blocks[k + 1:], b.open_first)


def psi_projection(b: BlockWord) -> tuple[int, ...]:
    """Cellular projection of the cube onto the simplex: a face goes to its first block."""
    return b.blocks[0]
