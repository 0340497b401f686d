"""Finite simplicial sets presented by nondegenerate generators.

A simplex is stored as a generator together with the surjection
``theta: [N] -> [dim gen]`` through which it factors (``x = theta^* g``).  The
surjection is a nondecreasing tuple; positions ``j`` with
``theta[j] == theta[j+1]`` are exactly the degeneracies, so the normal form
``s_{j_k} ... s_{j_1} g`` with ``j_k > ... > j_1`` is read off directly and is
unique.  Faces are computed by restricting along vertex subsequences and
falling back on the face table of the generator when a vertex disappears.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .chain import FreeChainComplex, Ring, ZZ, add_into, add_term, sort_key


class SimplicialError(ValueError):
    pass


@dataclass(frozen=True)
class SimplexExpr:
    gen: Hashable
    theta: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.theta) - 1

    @property
    def gen_dim(self) -> int:
        return self.theta[-1]

    @property
    def degeneracies(self) -> tuple[int, ...]:
        """Indices of the normal-form word ``s_{j_k}...s_{j_1}``, left to right (strictly decreasing)."""
        t = self.theta
        return tuple(j for j in range(len(t) - 2, -1, -1) if t[j] == t[j + 1])

    @property
    def nondegenerate(self) -> bool:
        return self.gen_dim == self.dim

    @property
    def is_degenerate(self) -> bool:
        return self.gen_dim != self.dim

    def degeneracy(self, j: int) -> "SimplexExpr":
        if not 0 <= j <= self.dim:
            raise SimplicialError(f"s_{j} undefined in dimension {self.dim}")
        t = self.theta
        return SimplexExpr(self.gen, t[:j + 1] + t[j:])

    def __str__(self) -> str:
        word = "".join(f"s{j}" for j in self.degeneracies)
        return f"{word}({self.gen})" if word else str(self.gen)


def identity_expr(gen, n: int) -> SimplexExpr:
    return SimplexExpr(gen, tuple(range(n + 1)))


def degeneracy_word_to_theta(word: Sequence[int], n: int) -> tuple[int, ...]:
    """Surjection of ``s_{w_0} s_{w_1} ... s_{w_last}`` applied to an n-simplex (rightmost first)."""
    t = tuple(range(n + 1))
    for j in reversed(list(word)):
        if not 0 <= j <= len(t) - 1:
            raise SimplicialError(f"s_{j} undefined in dimension {len(t) - 1}")
        t = t[:j + 1] + t[j:]
    return t


class SimplicialSet:
    """Finite simplicial set: generators per dimension and a face table."""

    def __init__(self, dims: Mapping[int, Iterable[Hashable]], faces: Mapping[Hashable, Sequence[SimplexExpr]],
                 basepoint: Hashable, name: str = "", validate: bool = True):
        self.name = name
        self.dims: dict[int, tuple] = {int(n): tuple(sorted(gs, key=sort_key)) for n, gs in dims.items() if gs}
        self.gen_dim: dict[Hashable, int] = {}
        for n, gs in self.dims.items():
            for g in gs:
                if g in self.gen_dim:
                    raise SimplicialError(f"generator {g!r} listed twice")
                self.gen_dim[g] = n
        if basepoint not in self.gen_dim or self.gen_dim[basepoint] != 0:
            raise SimplicialError("basepoint must be a 0-dimensional generator")
        self.basepoint = basepoint
        self.faces: dict[Hashable, tuple[SimplexExpr, ...]] = {}
        for g, n in self.gen_dim.items():
            fs = tuple(faces.get(g, ()))
            if n == 0:
                if fs:
                    raise SimplicialError(f"vertex {g!r} cannot have faces")
            elif len(fs) != n + 1:
                raise SimplicialError(f"{g!r} needs {n + 1} faces, got {len(fs)}")
            for f in fs:
                if f.gen not in self.gen_dim:
                    raise SimplicialError(f"face of {g!r} uses unknown generator {f.gen!r}")
                if f.dim != n - 1 or self.gen_dim[f.gen] != f.gen_dim:
                    raise SimplicialError(f"face {f} of {g!r} has wrong dimension")
            self.faces[g] = fs
        self._restrict_cache: dict = {}
        if validate:
            bad = self.check_identities()
            if bad:
                raise SimplicialError(f"simplicial identities fail: {bad[:3]}")

    # -- structure -------------------------------------------------------------
    @property
    def top_dim(self) -> int:
        return max(self.dims)

    def generators(self, n: int) -> tuple:
        return self.dims.get(n, ())

    def gen(self, g) -> SimplexExpr:
        return identity_expr(g, self.gen_dim[g])

    def point(self, n: int) -> SimplexExpr:
        """The totally degenerate n-simplex on the basepoint."""
        return SimplexExpr(self.basepoint, (0,) * (n + 1))

    @property
    def reduced_level(self) -> int:
        """Largest r with a single vertex and no nondegenerate simplices in dims 1..r (-1 if several vertices)."""
        if len(self.generators(0)) != 1:
            return -1
        r = 0
        while r + 1 <= self.top_dim and not self.generators(r + 1):
            r += 1
        return r if r < self.top_dim else self.top_dim

    # -- faces -------------------------------------------------------------------
    def _restrict_gen(self, g, image: tuple[int, ...]) -> SimplexExpr:
        n = self.gen_dim[g]
        if len(image) == n + 1:
            return identity_expr(g, n)
        key = (g, image)
        hit = self._restrict_cache.get(key)
        if hit is not None:
            return hit
        k = next(v for v in range(n + 1) if v not in image)
        shifted = [v if v < k else v - 1 for v in image]
        res = self.restrict(self.faces[g][k], shifted)
        self._restrict_cache[key] = res
        return res

    def restrict(self, x: SimplexExpr, verts: Sequence[int]) -> SimplexExpr:
        """Face of ``x`` spanned by the nondecreasing vertex positions ``verts``."""
        tv = [x.theta[v] for v in verts]
        image = tuple(sorted(set(tv)))
        base = self._restrict_gen(x.gen, image)
        pos = {v: i for i, v in enumerate(image)}
        return SimplexExpr(base.gen, tuple(base.theta[pos[v]] for v in tv))

    def face(self, x: SimplexExpr, i: int) -> SimplexExpr:
        n = x.dim
        if not 0 <= i <= n or n == 0:
            raise SimplicialError(f"d_{i} undefined in dimension {n}")
        return self.restrict(x, [v for v in range(n + 1) if v != i])

    def face_vertices(self, x: SimplexExpr, lo: int, hi: int) -> SimplexExpr:
        """The face ``x(lo..hi)`` on consecutive vertices."""
        return self.restrict(x, range(lo, hi + 1))

    def normalize(self, word: Iterable[str | tuple[str, int]], gen) -> SimplexExpr:
        """Apply a word of ``d``/``s`` operators (rightmost first) to a generator."""
        x = self.gen(gen)
        ops = [_parse_op(w) for w in word]
        for kind, j in reversed(ops):
            if kind == "s":
                x = x.degeneracy(j)
            else:
                x = self.face(x, j)
        return x

    def check_identities(self) -> list[tuple]:
        bad = []
        for g, n in self.gen_dim.items():
            if n < 2:
                continue
            x = self.gen(g)
            for j in range(n + 1):
                for i in range(j):
                    if self.face(self.face(x, j), i) != self.face(self.face(x, i), j - 1):
                        bad.append((g, i, j))
        return bad

    # -- chains -------------------------------------------------------------------
    def chain_of(self, x: SimplexExpr) -> dict:
        return {x.gen: 1} if x.nondegenerate else {}

    def boundary(self, x: SimplexExpr) -> dict:
        out: dict = {}
        if x.dim == 0 or x.is_degenerate:
            return out
        for i in range(x.dim + 1):
            f = self.face(x, i)
            if f.nondegenerate:
                add_term(out, f.gen, -1 if i % 2 else 1)
        return out

    def aw_components(self, x: SimplexExpr, i: int) -> tuple[SimplexExpr, SimplexExpr]:
        n = x.dim
        if not 0 <= i <= n:
            raise SimplicialError(f"AW component {i} undefined in dimension {n}")
        return self.face_vertices(x, 0, i), self.face_vertices(x, i, n)

    def diagonal(self, x: SimplexExpr) -> dict:
        """Alexander-Whitney diagonal on normalized chains, as ``{(a, b): c}``."""
        out: dict = {}
        if x.is_degenerate:
            return out
        for i in range(x.dim + 1):
            a, b = self.aw_components(x, i)
            if a.nondegenerate and b.nondegenerate:
                add_term(out, (a.gen, b.gen), 1)
        return out

    # -- serialization -------------------------------------------------------------
    def to_json(self) -> dict:
        faces = {}
        for g, fs in self.faces.items():
            if fs:
                faces[str(g)] = [[[f"s{j}" for j in f.degeneracies], str(f.gen)] for f in fs]
        return {"basepoint": str(self.basepoint),
                "dims": {str(n): [str(g) for g in gs] for n, gs in sorted(self.dims.items())},
                "faces": dict(sorted(faces.items()))}

    def __repr__(self) -> str:
        return f"SimplicialSet({self.name!r}, {{{', '.join(f'{n}: {len(g)}' for n, g in sorted(self.dims.items()))}}})"


def _parse_op(w) -> tuple[str, int]:
    if isinstance(w, tuple):
        kind, j = w
    else:
        w = w.replace("∂", "d").strip()
        kind, j = w[0], int(w[1:])
    if kind not in ("d", "s"):
        raise SimplicialError(f"unknown operator {w!r}")
    return kind, int(j)


def normalize_simplex(X: SimplicialSet, word, gen) -> SimplexExpr:
    return X.normalize(word, gen)


def normalized_chains(X: SimplicialSet, ring: Ring = ZZ, max_degree: int | None = None) -> FreeChainComplex:
    top = X.top_dim if max_degree is None else max_degree
    bases = {n: list(X.generators(n)) for n in range(top + 1)}
    bd = {}
    for n in range(1, top + 1):
        for g in bases[n]:
            col = X.boundary(X.gen(g))
            if ring.p is not None:
                col = {k: v % ring.p for k, v in col.items() if v % ring.p}
            bd.setdefault(n, {})[g] = col
    return FreeChainComplex(bases, bd, -1, f"C({X.name})")


def tensor_boundary(d_left, d_right, pair_chain: Mapping, deg_left) -> dict:
    """Koszul differential on a chain of pairs, given boundary callables and a left-degree function."""
    out: dict = {}
    for (a, b), c in pair_chain.items():
        for a2, c2 in d_left(a).items():
            add_term(out, (a2, b), c * c2)
        s = -1 if deg_left(a) % 2 else 1
        for b2, c2 in d_right(b).items():
            add_term(out, (a, b2), s * c * c2)
    return out


def aw_is_chain_map(X: SimplicialSet, max_degree: int | None = None) -> list:
    bad = []
    top = X.top_dim if max_degree is None else max_degree
    d = lambda g: X.boundary(X.gen(g))
    for n in range(1, top + 1):
        for g in X.generators(n):
            lhs: dict = {}
            for h, c in d(g).items():
                add_into(lhs, X.diagonal(X.gen(h)), c)
            rhs = tensor_boundary(d, d, X.diagonal(X.gen(g)), lambda h: X.gen_dim[h])
            if lhs != rhs:
                bad.append(g)
    return bad


def aw_is_coassociative(X: SimplicialSet, max_degree: int | None = None) -> list:
    bad = []
    top = X.top_dim if max_degree is None else max_degree
    for n in range(top + 1):
        for g in X.generators(n):
            D = X.diagonal(X.gen(g))
            left: dict = {}
            right: dict = {}
            for (a, b), c in D.items():
                for (a1, a2), c1 in X.diagonal(X.gen(a)).items():
                    add_term(left, (a1, a2, b), c * c1)
                for (b1, b2), c1 in X.diagonal(X.gen(b)).items():
                    add_term(right, (a, b1, b2), c * c1)
            if left != right:
                bad.append(g)
    return bad


def aw_is_counital(X: SimplicialSet) -> list:
    bad = []
    b = X.basepoint
    for n, gs in X.dims.items():
        if len(X.generators(0)) != 1:
            break
        for g in gs:
            D = X.diagonal(X.gen(g))
            if D.get((b, g), 0) != 1 or D.get((g, b), 0) != 1:
                bad.append(g)
    return bad


# ----------------------------------------------------------------------------
# builders
# ----------------------------------------------------------------------------

def _vertex_label(vs: Sequence[int]) -> str:
    return "".join(str(v) for v in vs) if max(vs, default=0) < 10 else "-".join(str(v) for v in vs)


def standard_simplex(n: int) -> SimplicialSet:
    if n < 0:
        raise SimplicialError("dimension must be nonnegative")
    from itertools import combinations
    dims: dict[int, list] = {}
    faces: dict = {}
    for k in range(n + 1):
        for vs in combinations(range(n + 1), k + 1):
            lab = _vertex_label(vs)
            dims.setdefault(k, []).append(lab)
            if k:
                faces[lab] = [identity_expr(_vertex_label(vs[:i] + vs[i + 1:]), k - 1) for i in range(k + 1)]
    return SimplicialSet(dims, faces, "0", name=f"Delta{n}")


def minimal_sphere(n: int, cell: str = "s") -> SimplicialSet:
    if n < 1:
        raise SimplicialError("sphere dimension must be at least 1")
    pt = SimplexExpr("*", (0,) * n)
    return SimplicialSet({0: ["*"], n: [cell]}, {cell: [pt] * (n + 1)}, "*", name=f"S{n}")


def collapse(X: SimplicialSet, sub: Iterable, name: str = "") -> SimplicialSet:
    """Quotient ``X / A`` for a subcomplex ``A`` (given by generators, closed under faces), A -> basepoint."""
    sub = set(sub)
    for g in sub:
        for f in X.faces[g]:
            if f.gen not in sub:
                raise SimplicialError(f"{g!r} has face outside the collapsed subcomplex")
    star = "*"

    def m(e: SimplexExpr) -> SimplexExpr:
        return SimplexExpr(star, (0,) * len(e.theta)) if e.gen in sub else e

    dims = {0: [star]}
    for n, gs in X.dims.items():
        for g in gs:
            if g not in sub:
                if n == 0:
                    raise SimplicialError("collapsed quotient would keep several vertices; include them in A")
                dims.setdefault(n, []).append(g)
    faces = {g: [m(f) for f in X.faces[g]] for n, gs in dims.items() if n for g in gs}
    return SimplicialSet(dims, faces, star, name=name or f"{X.name}/A")


def simplex_mod_1skeleton(n: int) -> SimplicialSet:
    D = standard_simplex(n)
    return collapse(D, [g for k in (0, 1) for g in D.generators(k)], name=f"Delta{n}/sk1")


def wedge(*parts: SimplicialSet, name: str = "") -> SimplicialSet:
    """One-point union; generator ``g`` of the i-th summand becomes ``"g_i"`` (basepoints become ``"*"``)."""
    dims: dict[int, list] = {0: ["*"]}
    faces: dict = {}
    for idx, X in enumerate(parts, 1):
        def lab(g, X=X, idx=idx):
            return "*" if g == X.basepoint else f"{g}_{idx}"
        for n, gs in X.dims.items():
            for g in gs:
                if g == X.basepoint:
                    continue
                dims.setdefault(n, []).append(lab(g))
                faces[lab(g)] = [SimplexExpr(lab(f.gen), f.theta) for f in X.faces[g]]
    return SimplicialSet(dims, faces, "*", name=name or "v".join(X.name for X in parts))


def suspension(K: SimplicialSet, name: str = "") -> SimplicialSet:
    """Reduced suspension: cone on K with cone vertex first, modulo K and the cone on the basepoint.

    The generator ``S(x)`` has vertices ``(c, x_0, ..., x_n)``; ``d_0 S(x) = x`` collapses and
    ``d_i S(x) = S(d_{i-1} x)`` for ``i >= 1``.
    """
    if not K.gen_dim:
        raise SimplicialError("cannot suspend an empty simplicial set")
    star = "*"

    def S(e: SimplexExpr) -> SimplexExpr:
        if e.gen == K.basepoint:
            return SimplexExpr(star, (0,) * (len(e.theta) + 1))
        return SimplexExpr(f"S({e.gen})", (0,) + tuple(t + 1 for t in e.theta))

    dims: dict[int, list] = {0: [star]}
    faces: dict = {}
    for n, gs in K.dims.items():
        for g in gs:
            if g == K.basepoint:
                continue
            lab = f"S({g})"
            dims.setdefault(n + 1, []).append(lab)
            x = K.gen(g)
            fs = [SimplexExpr(star, (0,) * (n + 1))]
            if n == 0:
                fs.append(SimplexExpr(star, (0,)))
            else:
                fs.extend(S(K.face(x, i)) for i in range(n + 1))
            faces[lab] = fs
    return SimplicialSet(dims, faces, star, name=name or f"S{K.name}")


def _surjections_onto(n: int, p: int):
    """Nondecreasing surjections [n] -> [p]."""
    import itertools
    for jumps in itertools.combinations(range(1, n + 1), p):
        t, v = [], 0
        for pos in range(n + 1):
            if v < p and pos == jumps[v]:
                v += 1
            t.append(v)
        yield tuple(t)


def _squeeze(theta: Sequence[int], keep: Sequence[bool]) -> tuple[int, ...]:
    return tuple(t for t, k in zip(theta, keep) if k)


def product(X: SimplicialSet, Y: SimplicialSet, name: str = "") -> SimplicialSet:
    """Cartesian product; the generator ``(u,v)`` is a pair of simplices with no common degeneracy."""
    def label(u: SimplexExpr, v: SimplexExpr):
        if u.gen == X.basepoint and v.gen == Y.basepoint:
            return "*"
        return f"({u},{v})"

    def split(u: SimplexExpr, v: SimplexExpr) -> SimplexExpr:
        # factor out common degeneracies: (u, v) = theta^* (u0, v0)
        n = u.dim
        common = [j for j in range(n) if u.theta[j] == u.theta[j + 1] and v.theta[j] == v.theta[j + 1]]
        keep = [True] * (n + 1)
        for j in common:
            keep[j + 1] = False
        theta, k = [], 0
        for pos in range(n + 1):
            if pos and keep[pos]:
                k += 1
            theta.append(k)
        u0 = SimplexExpr(u.gen, _squeeze(u.theta, keep))
        v0 = SimplexExpr(v.gen, _squeeze(v.theta, keep))
        return SimplexExpr(label(u0, v0), tuple(theta))

    dims: dict[int, list] = {0: ["*"]}
    faces: dict = {}
    top = X.top_dim + Y.top_dim
    if len(X.generators(0)) != 1 or len(Y.generators(0)) != 1:
        raise SimplicialError("products are built for one-vertex simplicial sets")
    for n in range(1, top + 1):
        for p in range(n + 1):
            for g in X.generators(p):
                for q in range(n - p, n + 1):
                    for h in Y.generators(q):
                        for tu in _surjections_onto(n, p):
                            for tv in _surjections_onto(n, q):
                                if any(tu[j] == tu[j + 1] and tv[j] == tv[j + 1] for j in range(n)):
                                    continue
                                u, v = SimplexExpr(g, tu), SimplexExpr(h, tv)
                                lab = label(u, v)
                                dims.setdefault(n, []).append(lab)
                                faces[lab] = [split(X.face(u, i), Y.face(v, i)) for i in range(n + 1)]
    return SimplicialSet(dims, faces, "*", name=name or f"{X.name}x{Y.name}")


def two_points() -> SimplicialSet:
    return SimplicialSet({0: ["a", "b"]}, {}, "a", name="S0")


def one_vertex_torus() -> SimplicialSet:
    v = SimplexExpr("*", (0,))
    e = lambda g: identity_expr(g, 1)
    faces = {"a": [v, v], "b": [v, v], "c": [v, v],
             "U": [e("b"), e("c"), e("a")],
             "L": [e("a"), e("c"), e("b")]}
    return SimplicialSet({0: ["*"], 1: ["a", "b", "c"], 2: ["U", "L"]}, faces, "*", name="T2")


def projective_plane() -> SimplicialSet:
    """One-vertex RP^2: an edge a and a triangle with boundary a - s0(*) + a."""
    v = SimplexExpr("*", (0,))
    faces = {"a": [v, v], "f": [identity_expr("a", 1), SimplexExpr("*", (0, 0)), identity_expr("a", 1)]}
    return SimplicialSet({0: ["*"], 1: ["a"], 2: ["f"]}, faces, "*", name="RP2")


# ----------------------------------------------------------------------------
# JSON
# ----------------------------------------------------------------------------

def _parse_word(word) -> list[int]:
    if isinstance(word, str):
        word = [w for w in word.replace("s", " s").split()] if word else []
    out = []
    for w in word:
        kind, j = _parse_op(w)
        if kind != "s":
            raise SimplicialError(f"face entries may only use degeneracies, got {w!r}")
        out.append(j)
    return out


def from_json(data: Mapping | str, name: str = "") -> SimplicialSet:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        dims = {int(n): list(gs) for n, gs in data["dims"].items()}
        basepoint = data["basepoint"]
        raw_faces = data.get("faces", {})
    except (KeyError, TypeError, AttributeError) as exc:
        raise SimplicialError(f"malformed simplicial set JSON: {exc}") from None
    gen_dim = {g: n for n, gs in dims.items() for g in gs}
    faces = {}
    for g, entries in raw_faces.items():
        if g not in gen_dim:
            raise SimplicialError(f"faces given for unknown generator {g!r}")
        fs = []
        for entry in entries:
            if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                raise SimplicialError(f"face entry of {g!r} must be [word, generator]")
            word, h = entry
            if h not in gen_dim:
                raise SimplicialError(f"face of {g!r} uses unknown generator {h!r}")
            fs.append(SimplexExpr(h, degeneracy_word_to_theta(_parse_word(word), gen_dim[h])))
        faces[g] = fs
    return SimplicialSet(dims, faces, basepoint, name=name)


def load_json(path, name: str = "") -> SimplicialSet:
    with open(path) as fh:
        return from_json(json.load(fh), name=name or str(path))
