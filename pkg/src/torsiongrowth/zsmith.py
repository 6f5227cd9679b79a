"""Sparse integer matrices and Smith normal form over Z.

The elimination runs in two phases.  Entries equal to +-1 are pivoted away
first on the sparse structure (cheapest pivot by row length, then column
length); relator and boundary matrices are almost entirely unimodular, so
this removes nearly every row and column.  Whatever is left is densified
and finished with a textbook smallest-entry Smith reduction on Python ints.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator


class SparseIntMatrix:
    """Row-major sparse matrix with arbitrary-precision integer entries."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]] = ()):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative dimension")
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict[int, int]] = [{} for _ in range(nrows)]
        for r, c, v in entries:
            self.add(r, c, v)

    def add(self, r: int, c: int, v: int) -> None:
        """Add ``v`` to entry (r, c), dropping it if it cancels to zero."""
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"entry ({r}, {c}) outside {self.nrows}x{self.ncols}")
        if not v:
            return
        row = self.rows[r]
        w = row.get(c, 0) + v
        if w:
            row[c] = w
        else:
            del row[c]

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.rows[r].get(c, 0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.rows)

    def entries(self) -> Iterator[tuple[int, int, int]]:
        for r, row in enumerate(self.rows):
            for c in sorted(row):
                yield r, c, row[c]

    def transpose(self) -> SparseIntMatrix:
        return SparseIntMatrix(self.ncols, self.nrows, ((c, r, v) for r, c, v in self.entries()))

    def __matmul__(self, other: SparseIntMatrix) -> SparseIntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = SparseIntMatrix(self.nrows, other.ncols)
        for r, row in enumerate(self.rows):
            acc: dict[int, int] = {}
            for k, a in row.items():
                for c, b in other.rows[k].items():
                    acc[c] = acc.get(c, 0) + a * b
            out.rows[r] = {c: v for c, v in acc.items() if v}
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    @classmethod
    def from_dense(cls, rows: list[list[int]], ncols: int | None = None) -> SparseIntMatrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        out = cls(len(rows), ncols)
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            out.rows[r] = {c: int(v) for c, v in enumerate(row) if v}
        return out

    @classmethod
    def identity(cls, n: int) -> SparseIntMatrix:
        return cls(n, n, ((i, i, 1) for i in range(n)))

    @classmethod
    def diagonal(cls, nrows: int, ncols: int, diag: Iterable[int]) -> SparseIntMatrix:
        return cls(nrows, ncols, ((i, i, d) for i, d in enumerate(diag)))

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                out[r][c] = v
        return out

    def dumps(self) -> str:
        """Debug dump: ``rows cols nnz`` header, then one ``r c v`` per line."""
        lines = [f"{self.nrows} {self.ncols} {self.nnz}"]
        lines.extend(f"{r} {c} {v}" for r, c, v in self.entries())
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> SparseIntMatrix:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nrows, ncols, nnz = map(int, lines[0].split())
        if len(lines) - 1 != nnz:
            raise ValueError(f"header says {nnz} entries, found {len(lines) - 1}")
        out = cls(nrows, ncols)
        for ln in lines[1:]:
            r, c, v = map(int, ln.split())
            if c in out.rows[r]:
                raise ValueError(f"duplicate entry ({r}, {c})")
            out.add(r, c, v)
        return out


@dataclass(frozen=True)
class TorsionProfile:
    """Invariants of a finitely generated abelian group Z^betti + sum Z/d_i."""

    betti: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.betti < 0:
            raise ValueError("negative Betti number")
        for d in self.invariant_factors:
            if d <= 1:
                raise ValueError(f"invariant factor {d} is not > 1")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    @property
    def two_rank(self) -> int:
        return two_rank(self)

    @property
    def log2_torsion_lower_bound(self) -> int:
        return self.two_rank

    @property
    def torsion_order(self) -> int:
        return prod(self.invariant_factors)

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        for d, k in Counter(self.invariant_factors).items():
            parts.append(f"Z/{d}" if k == 1 else f"(Z/{d})^{k}")
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {
            "betti": self.betti,
            "invariant_factors": list(self.invariant_factors),
            "two_rank": self.two_rank,
        }


def two_rank(t: TorsionProfile) -> int:
    """Number of even invariant factors, i.e. the rank of tors / 2 tors."""
    return sum(1 for d in t.invariant_factors if d % 2 == 0)


class _Transforms:
    """Accumulates U, V and their inverses while A is being reduced.

    U and V^-1 are kept by rows, U^-1 and V by columns, so every elementary
    operation touches exactly two sparse vectors on each side.
    """

    def __init__(self, m: int, n: int):
        self.U = [{i: 1} for i in range(m)]
        self.Uinv = [{i: 1} for i in range(m)]  # columns
        self.V = [{j: 1} for j in range(n)]  # columns
        self.Vinv = [{j: 1} for j in range(n)]

    @staticmethod
    def _axpy(vecs: list[dict[int, int]], dst: int, src: int, k: int) -> None:
        d = vecs[dst]
        for idx, v in vecs[src].items():
            w = d.get(idx, 0) + k * v
            if w:
                d[idx] = w
            else:
                d.pop(idx, None)

    # row operations on A
    def row_add(self, i, j, k):  # row_i += k * row_j
        self._axpy(self.U, i, j, k)
        self._axpy(self.Uinv, j, i, -k)

    def row_neg(self, i):
        self.U[i] = {c: -v for c, v in self.U[i].items()}
        self.Uinv[i] = {c: -v for c, v in self.Uinv[i].items()}

    def row_swap(self, i, j):
        self.U[i], self.U[j] = self.U[j], self.U[i]
        self.Uinv[i], self.Uinv[j] = self.Uinv[j], self.Uinv[i]

    # column operations on A
    def col_add(self, j, i, k):  # col_j += k * col_i
        self._axpy(self.V, j, i, k)
        self._axpy(self.Vinv, i, j, -k)

    def col_swap(self, i, j):
        self.V[i], self.V[j] = self.V[j], self.V[i]
        self.Vinv[i], self.Vinv[j] = self.Vinv[j], self.Vinv[i]



def _eliminate_units(rows: list[dict[int, int]], ncols: int, tr: _Transforms | None):
    """Pivot on +-1 entries until none remain.  Mutates ``rows``.

    Returns the list of (row, col) unit pivots in elimination order.
    """
    cols: list[set[int]] = [set() for _ in range(ncols)]
    for r, row in enumerate(rows):
        for c in row:
            cols[c].add(r)

    heap = [(len(row), r) for r, row in enumerate(rows) if row]
    heapq.heapify(heap)
    pivots = []
    done_rows: set[int] = set()
    while heap:
        length, r = heapq.heappop(heap)
        prow = rows[r]
        if r in done_rows or length != len(prow) or not prow:
            continue
        best = None
        for c, v in prow.items():
            if v == 1 or v == -1:
                key = (len(cols[c]), c)
                if best is None or key < best:
                    best = key
        if best is None:
            continue
        c = best[1]
        u = prow[c]
        for i in sorted(cols[c]):
            if i == r:
                continue
            target = rows[i]
            k = -target[c] * u
            for j, v in prow.items():
                w = target.get(j, 0) + k * v
                if w:
                    if j not in target:
                        cols[j].add(i)
                    target[j] = w
                else:
                    del target[j]
                    cols[j].discard(i)
            if tr is not None:
                tr.row_add(i, r, k)
            heapq.heappush(heap, (len(target), i))
        for j, v in prow.items():
            cols[j].discard(r)
            if j != c and tr is not None:
                tr.col_add(j, c, -v * u)
        if u < 0 and tr is not None:
            tr.row_neg(r)
        rows[r] = {}
        done_rows.add(r)
        pivots.append((r, c))
    return pivots


def _dense_snf(M: list[list[int]], rid: list[int], cid: list[int], tr: _Transforms | None) -> list[int]:
    """Smith-reduce the dense block M in place.

    ``rid``/``cid`` map local indices to global row/column ids for the
    transform tracker; they are permuted alongside M.  Among minimal
    absolute-value pivots the smallest (row, col) wins.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    diag: list[int] = []

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            if tr is not None:
                tr.row_swap(rid[i], rid[j])

    def swap_cols(i, j):
        if i != j:
            for row in M:
                row[i], row[j] = row[j], row[i]
            if tr is not None:
                tr.col_swap(cid[i], cid[j])

    def row_add(i, j, k):
        if k:
            ri, rj = M[i], M[j]
            for c in range(n):
                if rj[c]:
                    ri[c] += k * rj[c]
            if tr is not None:
                tr.row_add(rid[i], rid[j], k)

    def col_add(j, i, k):
        if k:
            for row in M:
                if row[i]:
                    row[j] += k * row[i]
            if tr is not None:
                tr.col_add(cid[j], cid[i], k)

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    row_add(i, t, -(M[i][t] // p))
            for j in range(t + 1, n):
                if M[t][j]:
                    col_add(j, t, -(M[t][j] // p))
            # a remainder smaller than p survived: move the smallest onto the pivot
            cand = None
            for i in range(t + 1, m):
                v = M[i][t]
                if v and (cand is None or abs(v) < cand[0]):
                    cand = (abs(v), i, None)
            for j in range(t + 1, n):
                v = M[t][j]
                if v and (cand is None or abs(v) < cand[0]):
                    cand = (abs(v), None, j)
            if cand is not None:
                if cand[1] is not None:
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = M[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-v for v in M[t]]
            if tr is not None:
                tr.row_neg(rid[t])
        diag.append(M[t][t])
    return diag


def _reduce(A: SparseIntMatrix, tr: _Transforms | None):
    rows = [dict(row) for row in A.rows]
    pivots = _eliminate_units(rows, A.ncols, tr)
    core_rows = [r for r, row in enumerate(rows) if row]
    core_cols = sorted({c for r in core_rows for c in rows[r]})
    cpos = {c: k for k, c in enumerate(core_cols)}
    M = [[0] * len(core_cols) for _ in core_rows]
    for k, r in enumerate(core_rows):
        for c, v in rows[r].items():
            M[k][cpos[c]] = v
    rid, cid = list(core_rows), list(core_cols)
    core_diag = _dense_snf(M, rid, cid, tr)
    diag = [1] * len(pivots) + core_diag
    pivot_rows = [r for r, _ in pivots] + rid[: len(core_diag)]
    pivot_cols = [c for _, c in pivots] + cid[: len(core_diag)]
    return diag, pivot_rows, pivot_cols


def snf(A: SparseIntMatrix) -> list[int]:
    """Nonzero Smith invariants d1 | d2 | ... | dr of A, r = rank(A)."""
    return _reduce(A, None)[0]


@dataclass
class SNFCertificate:
    """``U @ A @ V == D`` with ``U @ U_inv == I`` and ``V @ V_inv == I``."""

    diagonal: list[int]
    U: SparseIntMatrix
    U_inv: SparseIntMatrix
    V: SparseIntMatrix
    V_inv: SparseIntMatrix

    def D(self, shape: tuple[int, int]) -> SparseIntMatrix:
        return SparseIntMatrix.diagonal(shape[0], shape[1], self.diagonal)

    def verify(self, A: SparseIntMatrix) -> bool:
        m, n = A.shape
        return (
            self.U @ A @ self.V == self.D(A.shape)
            and self.U @ self.U_inv == SparseIntMatrix.identity(m)
            and self.V @ self.V_inv == SparseIntMatrix.identity(n)
        )


def snf_with_transforms(A: SparseIntMatrix) -> SNFCertificate:
    """Smith form together with unimodular U, V (and their inverses)."""
    m, n = A.shape
    tr = _Transforms(m, n)
    diag, prows, pcols = _reduce(A, tr)
    # move pivot (prows[k], pcols[k]) to position (k, k)
    row_order = prows + sorted(set(range(m)) - set(prows))
    col_order = pcols + sorted(set(range(n)) - set(pcols))
    U = SparseIntMatrix(m, m)
    Uinv = SparseIntMatrix(m, m)
    for k, r in enumerate(row_order):
        U.rows[k] = dict(tr.U[r])
        for i, v in tr.Uinv[r].items():
            Uinv.rows[i][k] = v
    V = SparseIntMatrix(n, n)
    Vinv = SparseIntMatrix(n, n)
    for k, c in enumerate(col_order):
        Vinv.rows[k] = dict(tr.Vinv[c])
        for i, v in tr.V[c].items():
            V.rows[i][k] = v
    return SNFCertificate(diag, U, Uinv, V, Vinv)


def torsion_profile(A: SparseIntMatrix, ambient_rank: int | None = None) -> TorsionProfile:
    """Cokernel of the row space of A inside Z^ambient_rank."""
    if ambient_rank is None:
        ambient_rank = A.ncols
    if A.ncols != ambient_rank:
        raise ValueError(f"matrix has {A.ncols} columns, ambient rank is {ambient_rank}")
    diag = snf(A)
    return TorsionProfile(ambient_rank - len(diag), tuple(d for d in diag if d > 1))


def homology(d_in: SparseIntMatrix, d_out: SparseIntMatrix | None, dim: int) -> TorsionProfile:
    """H = ker(d_out) / im(d_in) on a chain group of rank ``dim``.

    Both boundary maps are given with one row per source cell, so ``d_in``
    has ``dim`` columns and ``d_out`` has ``dim`` rows.
    """
    t = torsion_profile(d_in, dim)
    rank_out = len(snf(d_out)) if d_out is not None else 0
    return TorsionProfile(t.betti - rank_out, t.invariant_factors)
