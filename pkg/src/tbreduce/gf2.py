"""Dense GF(2) linear algebra on bit-packed rows.

A row is a Python int; bit ``c`` holds column ``c``.  Matrices are immutable
tuples of such ints together with an explicit column count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegenerateBasisError, DimensionError

__all__ = [
    "BinaryMatrix",
    "first_one",
    "last_one",
    "rotate",
    "cyclic_shift",
    "rref",
    "rank",
    "row_space_equal",
    "null_space",
    "minimal_span_form",
    "weight",
    "word_from_str",
    "word_to_str",
]


def weight(x: int) -> int:
    return bin(x).count("1")


def first_one(x: int) -> int:
    """Index of the lowest set bit, or -1 for zero."""
    return (x & -x).bit_length() - 1


def last_one(x: int) -> int:
    """Index of the highest set bit, or -1 for zero."""
    return x.bit_length() - 1


def word_from_str(s: str) -> int:
    s = "".join(s.split())
    if any(c not in "01" for c in s):
        raise ValueError(f"not a binary string: {s!r}")
    return sum(1 << i for i, c in enumerate(s) if c == "1")


def word_to_str(x: int, n: int) -> str:
    return "".join("1" if x >> i & 1 else "0" for i in range(n))


def rotate(x: int, j: int, n: int) -> int:
    """Cyclic right shift of an n-bit word by j positions (negative j shifts left)."""
    j %= n
    if j == 0:
        return x
    mask = (1 << n) - 1
    return ((x << j) | (x >> (n - j))) & mask


@dataclass(frozen=True)
class BinaryMatrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if self.ncols < 0:
            raise DimensionError("negative column count")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise DimensionError(f"row {r:#x} does not fit in {self.ncols} columns")

    @classmethod
    def from_strings(cls, strings: Iterable[str], ncols: int | None = None) -> "BinaryMatrix":
        strings = ["".join(s.split()) for s in strings]
        if ncols is None:
            ncols = len(strings[0]) if strings else 0
        if any(len(s) != ncols for s in strings):
            raise DimensionError("rows of unequal length")
        return cls(tuple(word_from_str(s) for s in strings), ncols)

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]], ncols: int | None = None) -> "BinaryMatrix":
        if ncols is None:
            ncols = len(lists[0]) if len(lists) else 0
        rows = []
        for row in lists:
            if len(row) != ncols:
                raise DimensionError("rows of unequal length")
            rows.append(sum(1 << c for c, v in enumerate(row) if int(v) & 1))
        return cls(tuple(rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BinaryMatrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def select(self, indices: Iterable[int]) -> "BinaryMatrix":
        return BinaryMatrix(tuple(self.rows[i] for i in indices), self.ncols)

    def to_lists(self) -> list[list[int]]:
        return [[r >> c & 1 for c in range(self.ncols)] for r in self.rows]

    def to_numpy(self):
        import numpy as np

        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.nrows, self.ncols)

    def to_strings(self) -> list[str]:
        return [word_to_str(r, self.ncols) for r in self.rows]

    def transpose(self) -> "BinaryMatrix":
        cols = []
        for c in range(self.ncols):
            cols.append(sum(1 << i for i, r in enumerate(self.rows) if r >> c & 1))
        return BinaryMatrix(tuple(cols), self.nrows)

    def matmul_t(self, other: "BinaryMatrix") -> "BinaryMatrix":
        """Return self @ other.T over GF(2)."""
        if self.ncols != other.ncols:
            raise DimensionError("column counts differ")
        out = []
        for r in self.rows:
            out.append(sum(1 << j for j, s in enumerate(other.rows) if weight(r & s) & 1))
        return BinaryMatrix(tuple(out), other.nrows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def support(self) -> int:
        """OR of all rows: the set of columns touched by the row space."""
        acc = 0
        for r in self.rows:
            acc |= r
        return acc

    def __str__(self):
        return "\n".join(self.to_strings())


def cyclic_shift(v, j: int, direction: str = "right", n: int | None = None):
    """Cyclic shift of a word or of every row of a matrix.

    ``right`` is rho_j (index i moves to i+j), ``left`` is sigma_j.
    Plain ints need the word length ``n``.
    """
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    step = j if direction == "right" else -j
    if isinstance(v, BinaryMatrix):
        if v.ncols == 0:
            return v
        return BinaryMatrix(tuple(rotate(r, step, v.ncols) for r in v.rows), v.ncols)
    if n is None:
        raise ValueError("word length n is required for integer words")
    return rotate(v, step, n)


def rref(M: BinaryMatrix) -> tuple[BinaryMatrix, list[int]]:
    """Reduced row-echelon form with the lowest column index as pivot.

    Zero rows are dropped.  Rows come out ordered by pivot column.
    """
    rows = [r for r in M.rows if r]
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r >> first_one(b) & 1:
                r ^= b
        if r:
            p = first_one(r)
            basis = [b ^ r if b >> p & 1 else b for b in basis]
            basis.append(r)
    basis.sort(key=first_one)
    return BinaryMatrix(tuple(basis), M.ncols), [first_one(b) for b in basis]


def rank(M: BinaryMatrix) -> int:
    return rref(M)[0].nrows


def row_space_equal(A: BinaryMatrix, B: BinaryMatrix) -> bool:
    if A.ncols != B.ncols:
        raise DimensionError(f"widths differ: {A.ncols} vs {B.ncols}")
    return rref(A)[0].rows == rref(B)[0].rows


def in_row_space(M: BinaryMatrix, x: int) -> bool:
    R, _ = rref(M)
    for b in R.rows:
        if x >> first_one(b) & 1:
            x ^= b
    return x == 0


def null_space(M: BinaryMatrix) -> BinaryMatrix:
    """Basis of {v : M v^T = 0}, one basis vector per free column."""
    R, pivots = rref(M)
    pivot_set = set(pivots)
    out = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for b, p in zip(R.rows, pivots):
            if b >> f & 1:
                v |= 1 << p
        out.append(v)
    return BinaryMatrix(tuple(out), M.ncols)


def minimal_span_form(M: BinaryMatrix):
    """Row-space-equal basis with distinct starts and distinct ends.

    Two greedy passes.  First, rows sharing a start are cleared against the
    one with the smallest end (ties: lowest index), scanning starts in
    ascending order.  Second, rows sharing an end are cleared against the
    one with the largest start, scanning ends in descending order.  Row
    order is preserved.  Returns the matrix and the conventional spans
    (start, end] of its rows.
    """
    from .spans import Span

    if rank(M) != M.nrows:
        raise DegenerateBasisError(f"rank {rank(M)} < {M.nrows} rows")
    rows = list(M.rows)
    _resolve(rows, key=first_one, pick=lambda g: min(g, key=lambda i: (last_one(rows[i]), i)), descending=False)
    _resolve(rows, key=last_one, pick=lambda g: max(g, key=lambda i: (first_one(rows[i]), -i)), descending=True)
    n = M.ncols
    spans = [Span(first_one(r), last_one(r), max(n, 2)) for r in rows]
    return BinaryMatrix(tuple(rows), n), spans


def _resolve(rows: list[int], key, pick, descending: bool) -> None:
    while True:
        groups: dict[int, list[int]] = {}
        for i, r in enumerate(rows):
            groups.setdefault(key(r), []).append(i)
        clash = [k for k, g in groups.items() if len(g) > 1]
        if not clash:
            return
        k = max(clash) if descending else min(clash)
        group = groups[k]
        p = pick(group)
        for i in group:
            if i != p:
                rows[i] ^= rows[p]
