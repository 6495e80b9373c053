"""Tail-biting generator matrices (block circulants built from G(D))."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DegenerateTailBitingError,
    DimensionError,
    NotShiftStructuredError,
    SectionLengthError,
    SelectionError,
)
from .gf2 import BinaryMatrix, first_one, last_one, rank, rotate
from .polymatrix import PolyMatrix
from .spans import Span

__all__ = [
    "Tbgm",
    "build_tbgm",
    "polyrow_word",
    "natural_spans",
    "rows_to_polymatrix",
    "verify_duality",
    "format_blocks",
]


@dataclass(frozen=True)
class Tbgm:
    matrix: BinaryMatrix
    source: PolyMatrix
    N: int
    rank: int = field(default=-1, compare=False)

    @property
    def n0(self) -> int:
        return self.source.n0

    @property
    def k0(self) -> int:
        return self.source.k0

    @property
    def n(self) -> int:
        return self.n0 * self.N

    @property
    def k(self) -> int:
        return self.k0 * self.N

    @property
    def full_rank(self) -> bool:
        return self.rank == self.k

    def require_full_rank(self) -> "Tbgm":
        if not self.full_rank:
            raise DegenerateTailBitingError(
                f"tail-biting generator matrix has rank {self.rank} < {self.k} for N={self.N}"
            )
        return self

    def __str__(self):
        return format_blocks(self.matrix, self.n0)


def polyrow_word(row, n0: int, N: int) -> int:
    """Scalar row for one polynomial row: coefficient of D^t in column c sits at t*n0 + c."""
    n = n0 * N
    w = 0
    for c, e in enumerate(row):
        t = 0
        while e:
            if e & 1:
                w ^= 1 << ((t * n0 + c) % n)
            e >>= 1
            t += 1
    return w


def build_tbgm(G: PolyMatrix, N: int, M: int | None = None) -> Tbgm:
    """Row i*k0 + r is polynomial row r rotated right by i*n0.

    Requires max(L, M) + 1 <= N, where M is the check-matrix memory when
    known.  Rank deficiency does not raise here; inspect ``full_rank`` or
    call ``require_full_rank``.
    """
    need = max(G.memory, M or 0) + 1
    if N < need:
        raise SectionLengthError(f"N={N} is too small; need N >= {need}")
    n = G.n0 * N
    base = [polyrow_word(r, G.n0, N) for r in G.entries]
    rows = tuple(rotate(b, i * G.n0, n) for i in range(N) for b in base)
    M_ = BinaryMatrix(rows, n)
    return Tbgm(M_, G, N, rank(M_))


def natural_spans(t: Tbgm) -> list[Span]:
    """Span of each row in its own frame: block-0 span shifted right by i*n0."""
    n = t.n
    out = []
    base = []
    for r in t.source.entries:
        w = polyrow_word(r, t.n0, t.N)
        if w == 0:
            raise ValueError("zero row has no span")
        # unwrapped extent of the polynomial row
        hi = max((e.bit_length() - 1) * t.n0 + c for c, e in enumerate(r) if e)
        base.append(Span(first_one(w), hi, max(n, 2)))
    for i in range(t.N):
        for s in base:
            out.append(s.shift(i * t.n0))
    return out


def rows_to_polymatrix(rows: BinaryMatrix, spans, n0: int, k0: int, N: int) -> PolyMatrix:
    """Recover G'(D) from a shift-structured set of k0*N rows.

    Basic rows are those whose span starts in block 0; each must come with
    all N-1 of its right shifts by multiples of n0.  The coefficient of D^i
    in a basic row is read from column block i.
    """
    n = n0 * N
    if rows.ncols != n or len(spans) != rows.nrows:
        raise DimensionError("rows and spans do not match the block layout")
    basic = sorted(
        ((s.a, r) for r, s in zip(rows.rows, spans) if s.a < n0), key=lambda x: x[0]
    )
    if len(basic) != k0:
        raise SelectionError(f"found {len(basic)} basic rows, expected {k0}")
    expected = sorted(rotate(r, i * n0, n) for _, r in basic for i in range(N))
    if expected != sorted(rows.rows):
        raise NotShiftStructuredError("rows are not the block shifts of the basic rows")
    out = []
    for _, r in basic:
        entries = []
        for c in range(n0):
            entries.append(sum(1 << i for i in range(N) if r >> (i * n0 + c) & 1))
        out.append(tuple(entries))
    return PolyMatrix(tuple(out), n0)


def verify_duality(g: Tbgm, h: Tbgm) -> bool:
    if g.matrix.ncols != h.matrix.ncols:
        raise DimensionError("generator and check matrices have different lengths")
    if not g.matrix.matmul_t(h.matrix).is_zero():
        return False
    return g.rank + h.rank == g.matrix.ncols


def format_blocks(M: BinaryMatrix, n0: int, spans=None) -> str:
    """Render rows with a space between column blocks of width n0."""
    lines = []
    for i, r in enumerate(M.rows):
        bits = "".join("1" if r >> c & 1 else "0" for c in range(M.ncols))
        text = " ".join(bits[k:k + n0] for k in range(0, M.ncols, n0))
        if spans is not None:
            text += f"  {str(spans[i]):>10}"
        lines.append(text)
    return "\n".join(lines)
