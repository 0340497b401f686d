"""Exact chain complexes over Z and Z/p.

Chains are sparse dicts ``{basis_label: coefficient}``.  A complex stores, for
every degree, the ordered basis and the sparse image of each basis element
under the differential.  Homological complexes have ``step == -1``; cochain
complexes produced by :func:`dualize` have ``step == +1``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping

Label = Hashable
Chain = dict


# ----------------------------------------------------------------------------
# coefficients
# ----------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class Ring:
    """Either the integers (``p is None``) or the prime field Z/p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"Z/{self.p}: modulus must be prime")

    @classmethod
    def parse(cls, text: str) -> "Ring":
        t = text.strip().upper().replace("/", "")
        if t in ("Z", "ZZ"):
            return cls()
        if t.startswith("Z") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown ring {text!r}")

    def reduce(self, c: int) -> int:
        return c if self.p is None else c % self.p

    def __str__(self) -> str:
        return "Z" if self.p is None else f"Z{self.p}"


ZZ = Ring()
Z2 = Ring(2)


# ----------------------------------------------------------------------------
# sparse linear combinations
# ----------------------------------------------------------------------------

def add_into(dst: dict, src: Mapping, coeff: int = 1, ring: Ring | None = None) -> dict:
    for k, v in src.items():
        c = dst.get(k, 0) + coeff * v
        if ring is not None and ring.p is not None:
            c %= ring.p
        if c:
            dst[k] = c
        else:
            dst.pop(k, None)
    return dst


def add_term(dst: dict, key, coeff: int, ring: Ring | None = None) -> None:
    c = dst.get(key, 0) + coeff
    if ring is not None and ring.p is not None:
        c %= ring.p
    if c:
        dst[key] = c
    else:
        dst.pop(key, None)


def reduce_chain(chain: Mapping, ring: Ring) -> dict:
    out = {}
    for k, v in chain.items():
        v = ring.reduce(v)
        if v:
            out[k] = v
    return out


def sort_key(label) -> str:
    # deterministic total order on heterogeneous structured labels
    return repr(label)


# ----------------------------------------------------------------------------
# complexes
# ----------------------------------------------------------------------------

class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class HomologySummary:
    degree: int
    betti: int
    torsion: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"degree": self.degree, "betti": self.betti, "torsion": list(self.torsion)}


class FreeChainComplex:
    """Graded free module with a sparse differential of fixed degree ``step``."""

    def __init__(self, bases: Mapping[int, Iterable[Label]],
                 boundary: Mapping[int, Mapping[Label, Mapping[Label, int]]] | None = None,
                 step: int = -1, name: str = "", check: bool = True):
        if step not in (-1, 1):
            raise ComplexError("step must be -1 or +1")
        self.step = step
        self.name = name
        self.bases: dict[int, tuple] = {int(n): tuple(b) for n, b in bases.items()}
        self._index = {n: {b: i for i, b in enumerate(bs)} for n, bs in self.bases.items()}
        for n, idx in self._index.items():
            if len(idx) != len(self.bases[n]):
                raise ComplexError(f"duplicate basis labels in degree {n}")
        self.d: dict[int, dict[Label, dict[Label, int]]] = {n: {} for n in self.bases}
        for n, cols in (boundary or {}).items():
            for src, col in cols.items():
                if check and src not in self._index.get(n, ()):
                    raise ComplexError(f"unknown label {src!r} in degree {n}")
                col = {t: c for t, c in col.items() if c}
                if check:
                    for t in col:
                        if t not in self._index.get(n + step, ()):
                            raise ComplexError(f"unknown label {t!r} in degree {n + step}")
                if col:
                    self.d[n][src] = col

    # -- basic queries -------------------------------------------------------
    @property
    def degree_range(self) -> tuple[int, int]:
        if not self.bases:
            return (0, -1)
        return (min(self.bases), max(self.bases))

    def basis(self, n: int) -> tuple:
        return self.bases.get(n, ())

    def rank(self, n: int) -> int:
        return len(self.bases.get(n, ()))

    def index(self, n: int, label) -> int:
        return self._index[n][label]

    def degree_of(self, label):
        for n, idx in self._index.items():
            if label in idx:
                return n
        raise KeyError(label)

    def boundary_of(self, n: int, label) -> dict:
        return self.d.get(n, {}).get(label, {})

    def apply(self, chain: Mapping, n: int, ring: Ring | None = None) -> dict:
        out: dict = {}
        for lab, c in chain.items():
            add_into(out, self.boundary_of(n, lab), c, ring)
        return out

    def matrix(self, n: int) -> list[list[int]]:
        """Dense matrix of the differential leaving degree ``n``."""
        rows = self.basis(n + self.step)
        cols = self.basis(n)
        ridx = self._index.get(n + self.step, {})
        m = [[0] * len(cols) for _ in rows]
        for j, src in enumerate(cols):
            for t, c in self.boundary_of(n, src).items():
                m[ridx[t]][j] = c
        return m

    def sparse_matrix(self, n: int) -> dict[int, dict[int, int]]:
        ridx = self._index.get(n + self.step, {})
        rows: dict[int, dict[int, int]] = {}
        for j, src in enumerate(self.basis(n)):
            for t, c in self.boundary_of(n, src).items():
                rows.setdefault(ridx[t], {})[j] = c
        return rows

    def truncate(self, lo: int, hi: int) -> "FreeChainComplex":
        bases = {n: b for n, b in self.bases.items() if lo <= n <= hi}
        bd = {}
        for n in bases:
            if lo <= n + self.step <= hi:
                bd[n] = self.d.get(n, {})
        return FreeChainComplex(bases, bd, self.step, self.name, check=False)

    def __repr__(self) -> str:
        ranks = {n: len(b) for n, b in sorted(self.bases.items())}
        return f"FreeChainComplex({self.name!r}, ranks={ranks}, step={self.step})"


def build_complex(bases: Mapping[int, Iterable[Label]],
                  boundary_entries: Iterable[tuple[int, Label, Label, int]] = (),
                  step: int = -1, name: str = "") -> FreeChainComplex:
    """Build a complex from ``(degree, source, target, coeff)`` entries."""
    bd: dict[int, dict] = {}
    for n, src, tgt, c in boundary_entries:
        col = bd.setdefault(n, {}).setdefault(src, {})
        col[tgt] = col.get(tgt, 0) + c
    return FreeChainComplex(bases, bd, step, name)


def verify_d_squared(C: FreeChainComplex, ring: Ring | None = None) -> list[tuple[int, Label]]:
    bad = []
    for n in sorted(C.bases):
        for lab in C.basis(n):
            dd = C.apply(C.boundary_of(n, lab), n + C.step, ring)
            if dd:
                bad.append((n, lab))
    return bad


# ----------------------------------------------------------------------------
# Smith normal form and ranks
# ----------------------------------------------------------------------------

def _to_sparse(matrix) -> dict[int, dict[int, int]]:
    if isinstance(matrix, dict):
        return {i: dict(r) for i, r in matrix.items() if r}
    rows = {}
    for i, row in enumerate(matrix):
        r = {j: v for j, v in enumerate(row) if v}
        if r:
            rows[i] = r
    return rows


def smith_normal_form(matrix) -> tuple[int, ...]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix.

    Pivoting picks the entry of smallest absolute value; rows and columns are
    cleared by integer division and the pivot shrinks whenever a remainder
    survives.  Accepts a dense list of rows or a sparse ``{row: {col: v}}``.
    """
    rows = _to_sparse(matrix)
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    diag: list[int] = []

    def set_entry(i, j, v):
        r = rows.setdefault(i, {})
        if v:
            r[j] = v
            cols.setdefault(j, set()).add(i)
        else:
            r.pop(j, None)
            s = cols.get(j)
            if s is not None:
                s.discard(i)
                if not s:
                    del cols[j]
            if not r:
                del rows[i]

    def row_op(target, source, q):
        # row[target] -= q * row[source]
        for j, v in list(rows[source].items()):
            set_entry(target, j, rows.get(target, {}).get(j, 0) - q * v)

    def col_op(target, source, q):
        for i in list(cols.get(source, ())):
            v = rows[i][source]
            set_entry(i, target, rows.get(i, {}).get(target, 0) - q * v)

    while rows:
        # smallest-magnitude pivot, ties broken by sparsity
        pi, pj, pv = None, None, None
        for i, r in rows.items():
            for j, v in r.items():
                a = abs(v)
                if pv is None or a < pv or (a == pv and len(r) + len(cols[j]) < len(rows[pi]) + len(cols[pj])):
                    pi, pj, pv = i, j, a
                    if a == 1 and len(r) == 1:
                        break
            if pv == 1 and len(rows[pi]) == 1:
                break
        while True:
            p = rows[pi][pj]
            changed = False
            for i in list(cols[pj]):
                if i == pi:
                    continue
                q = rows[i][pj] // p
                row_op(i, pi, q)
                if pj in rows.get(i, {}):
                    changed = True
            for j in list(rows[pi]):
                if j == pj:
                    continue
                q = rows[pi][j] // p
                col_op(j, pj, q)
                if j in rows.get(pi, {}):
                    changed = True
            if not changed:
                break
            # a remainder survived; move to the smallest entry in the pivot cross
            best = (abs(rows[pi][pj]), pi, pj)
            for i in cols[pj]:
                best = min(best, (abs(rows[i][pj]), i, pj))
            for j in rows[pi]:
                best = min(best, (abs(rows[pi][j]), pi, j))
            _, pi, pj = best
        diag.append(abs(rows[pi][pj]))
        set_entry(pi, pj, 0)
    # enforce the divisibility chain
    diag.sort()
    changed = True
    while changed:
        changed = False
        for a in range(len(diag)):
            for b in range(a + 1, len(diag)):
                g = math.gcd(diag[a], diag[b])
                if g != diag[a]:
                    diag[a], diag[b] = g, diag[a] * diag[b] // g
                    changed = True
        diag.sort()
    return tuple(diag)


def rank_mod_p(matrix, p: int) -> int:
    rows = [dict((j, v % p) for j, v in r.items() if v % p) for r in _to_sparse(matrix).values()]
    rows = [r for r in rows if r]
    rank = 0
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        r = dict(r)
        while r:
            j = min(r)
            if j in pivots:
                prow = pivots[j]
                f = r[j]
                for k, v in prow.items():
                    c = (r.get(k, 0) - f * v) % p
                    if c:
                        r[k] = c
                    else:
                        r.pop(k, None)
            else:
                inv = pow(r[j], -1, p)
                pivots[j] = {k: v * inv % p for k, v in r.items()}
                rank += 1
                break
    return rank


def matrix_rank(matrix, ring: Ring) -> int:
    if ring.p is not None:
        return rank_mod_p(matrix, ring.p)
    return len(smith_normal_form(matrix))


# ----------------------------------------------------------------------------
# homology
# ----------------------------------------------------------------------------

def homology(C: FreeChainComplex, degree: int, ring: Ring = ZZ) -> HomologySummary:
    lo, hi = C.degree_range
    if not lo <= degree <= hi:
        raise ComplexError(f"degree {degree} outside {C.degree_range}")
    n = C.rank(degree)
    out_rank = matrix_rank(C.sparse_matrix(degree), ring) if C.rank(degree + C.step) else 0
    src = degree - C.step
    torsion: tuple[int, ...] = ()
    if C.rank(src) and n:
        m = C.sparse_matrix(src)
        if ring.p is None:
            snf = smith_normal_form(m)
            in_rank = len(snf)
            torsion = tuple(d for d in snf if d > 1)
        else:
            in_rank = rank_mod_p(m, ring.p)
    else:
        in_rank = 0
    return HomologySummary(degree, n - out_rank - in_rank, torsion)


def homology_table(C: FreeChainComplex, ring: Ring = ZZ, degrees: Iterable[int] | None = None
                   ) -> list[HomologySummary]:
    lo, hi = C.degree_range
    degs = range(lo, hi + 1) if degrees is None else degrees
    return [homology(C, n, ring) for n in degs]


def betti_numbers(C: FreeChainComplex, ring: Ring = ZZ, degrees: Iterable[int] | None = None) -> list[int]:
    return [h.betti for h in homology_table(C, ring, degrees)]


# ----------------------------------------------------------------------------
# constructions
# ----------------------------------------------------------------------------

def tensor_complex(A: FreeChainComplex, B: FreeChainComplex, max_degree: int | None = None,
                   name: str = "") -> FreeChainComplex:
    """Tensor product with the Koszul sign ``d(a*b) = da*b + (-1)^|a| a*db``."""
    if A.step != B.step:
        raise ComplexError("cannot tensor a chain complex with a cochain complex")
    bases: dict[int, list] = {}
    for p, ba in A.bases.items():
        for q, bb in B.bases.items():
            if max_degree is not None and p + q > max_degree:
                continue
            bases.setdefault(p + q, []).extend((a, b) for a in ba for b in bb)
    bd: dict[int, dict] = {}
    for p, ba in A.bases.items():
        for q, bb in B.bases.items():
            n = p + q
            if max_degree is not None and (n > max_degree or n + A.step > max_degree):
                continue
            sgn = -1 if p % 2 else 1
            for a in ba:
                da = A.boundary_of(p, a)
                for b in bb:
                    col: dict = {}
                    for a2, c in da.items():
                        add_term(col, (a2, b), c)
                    for b2, c in B.boundary_of(q, b).items():
                        add_term(col, (a, b2), sgn * c)
                    if col:
                        bd.setdefault(n, {})[(a, b)] = col
    return FreeChainComplex(bases, bd, A.step, name or f"({A.name})x({B.name})")


def dualize(C: FreeChainComplex, max_degree: int | None = None) -> FreeChainComplex:
    """Degree-wise dual: same labels, transposed differential, reversed step."""
    lo, hi = C.degree_range
    if max_degree is None:
        max_degree = hi
    if max_degree < lo or max_degree > hi:
        raise ComplexError(f"max_degree {max_degree} outside {C.degree_range}")
    bases = {n: b for n, b in C.bases.items() if n <= max_degree}
    bd: dict[int, dict] = {}
    for n, cols in C.d.items():
        if n > max_degree or n + C.step > max_degree:
            continue
        for src, col in cols.items():
            for t, c in col.items():
                bd.setdefault(n + C.step, {}).setdefault(t, {})[src] = c
    return FreeChainComplex(bases, bd, -C.step, f"dual({C.name})")


def same_complex(A: FreeChainComplex, B: FreeChainComplex) -> bool:
    if A.step != B.step or set(A.bases) != set(B.bases):
        return False
    for n in A.bases:
        if set(A.basis(n)) != set(B.basis(n)):
            return False
        for lab in A.basis(n):
            if A.boundary_of(n, lab) != B.boundary_of(n, lab):
                return False
    return True


# ----------------------------------------------------------------------------
# exchange formats
# ----------------------------------------------------------------------------

def matrix_lines(C: FreeChainComplex) -> list[str]:
    """``degree row col value`` lines, indices into the ordered bases."""
    out = []
    for n in sorted(C.bases):
        for (i, row) in sorted(C.sparse_matrix(n).items()):
            for j, v in sorted(row.items()):
                out.append(f"{n} {i} {j} {v}")
    return out


def parse_matrix_lines(lines: Iterable[str]) -> dict[int, dict[int, dict[int, int]]]:
    mats: dict[int, dict[int, dict[int, int]]] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'degree row col value', got {line!r}")
        try:
            n, i, j, v = map(int, parts)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        mats.setdefault(n, {}).setdefault(i, {})[j] = v
    return mats


def complex_from_matrix_lines(ranks: Mapping[int, int], lines: Iterable[str], step: int = -1
                              ) -> FreeChainComplex:
    mats = parse_matrix_lines(lines)
    bases = {n: list(range(r)) for n, r in ranks.items()}
    entries = []
    for n, rows in mats.items():
        for i, row in rows.items():
            for j, v in row.items():
                entries.append((n, j, i, v))
    return build_complex(bases, entries, step)


def homology_report(C: FreeChainComplex, ring: Ring = ZZ, degrees: Iterable[int] | None = None) -> str:
    return json.dumps([h.to_json() for h in homology_table(C, ring, degrees)], sort_keys=True)


# ----------------------------------------------------------------------------
# cycles and boundaries as explicit chains
# ----------------------------------------------------------------------------

def _field_matrix(rows: int, cols: int, entries: Mapping[tuple[int, int], int], ring: Ring):
    from sympy import GF, QQ
    from sympy.polys.matrices import DomainMatrix
    K = QQ if ring.p is None else GF(ring.p)
    data = [[K(0)] * cols for _ in range(rows)]
    for (i, j), v in entries.items():
        data[i][j] = K(v)
    return DomainMatrix(data, (rows, cols), K)


def cycle_basis(C: FreeChainComplex, n: int, ring: Ring = ZZ) -> list[dict]:
    """A basis of the cycles in degree n over the field Q (for ``ZZ``) or Z/p, as integral chains."""
    basis = C.basis(n)
    tgt = C.basis(n + C.step)
    if not basis:
        return []
    if not tgt:
        return [{b: 1} for b in basis]
    entries = {}
    for j, b in enumerate(basis):
        for t, c in C.boundary_of(n, b).items():
            entries[(C.index(n + C.step, t), j)] = c
    null = _field_matrix(len(tgt), len(basis), entries, ring).nullspace().to_Matrix()
    out = []
    for r in range(null.rows):
        row = [null[r, j] for j in range(len(basis))]
        if ring.p is None:
            den = math.lcm(*[int(x.q) for x in row]) if row else 1
            ints = [int(x * den) for x in row]
            g = math.gcd(*ints) or 1
            ints = [x // g for x in ints]
        else:
            ints = [int(x) % ring.p for x in row]
        out.append({basis[j]: v for j, v in enumerate(ints) if v})
    return out


def is_boundary(C: FreeChainComplex, chain: Mapping, n: int, ring: Ring = ZZ) -> bool:
    """Whether ``chain`` (in degree n) lies in the image of the differential, exactly over ``ring``."""
    chain = reduce_chain(chain, ring)
    if not chain:
        return True
    src = n - C.step
    tgt = C.basis(n)
    cols = []
    for s in C.basis(src):
        col = [0] * len(tgt)
        for t, k in C.boundary_of(src, s).items():
            col[C.index(n, t)] += k
        cols.append(col)
    r = [0] * len(tgt)
    for t, k in chain.items():
        r[C.index(n, t)] += k
    M0 = [list(row) for row in zip(*cols)] if cols else [[] for _ in tgt]
    M1 = [row + [r[i]] for i, row in enumerate(M0)]
    if ring.p is not None:
        return matrix_rank(M0, ring) == matrix_rank(M1, ring)
    s0 = [x for x in smith_normal_form(M0) if x]
    s1 = [x for x in smith_normal_form(M1) if x]
    return len(s0) == len(s1) and math.prod(abs(x) for x in s0) == math.prod(abs(x) for x in s1)
