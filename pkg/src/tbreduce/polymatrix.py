"""Polynomial matrices over GF(2)[D] and the column/row transformations on them."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import (
    DegenerateColumnError,
    InvalidEncoderError,
    NonCanonicalError,
    NonDivisibleError,
    ParseError,
    SectionLengthError,
)
from .gf2 import BinaryMatrix, null_space
from .poly import (
    factor,
    pdeg,
    pdivmod,
    pgcd,
    pinv_mod,
    pmod,
    pmul,
    poly_from_str,
    poly_to_str,
    preverse,
    valuation,
)

__all__ = [
    "PolyMatrix",
    "CoeffExpansion",
    "Metrics",
    "CanonicalDiagnosis",
    "parse_poly_matrix",
    "parse_octal",
    "format_octal",
    "octal_codec",
    "parse_encoder",
    "expand",
    "metrics",
    "column_monomial_factor",
    "divide_column",
    "multiply_column",
    "row_add",
    "scale_row",
    "determinant",
    "maximal_minors",
    "rational_rank",
    "validate_canonical",
    "smith_form",
    "invariant_factors",
    "basic_equivalent",
    "reduced_equivalent",
    "reciprocal_dual",
    "compute_check_matrix",
    "times_transpose",
]


@dataclass(frozen=True)
class PolyMatrix:
    """A k0 x n0 matrix of GF(2)[D] polynomials packed as ints."""

    entries: tuple[tuple[int, ...], ...]
    n0: int = -1

    def __post_init__(self):
        entries = tuple(tuple(int(e) for e in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        width = len(entries[0]) if entries else self.n0
        if width < 0:
            raise ValueError("an empty PolyMatrix needs an explicit n0")
        if any(len(r) != width for r in entries):
            raise ValueError("ragged polynomial matrix")
        if any(e < 0 for r in entries for e in r):
            raise ValueError("negative polynomial code")
        object.__setattr__(self, "n0", width)

    @classmethod
    def parse(cls, text: str) -> "PolyMatrix":
        return parse_poly_matrix(text)

    @classmethod
    def from_octal(cls, text) -> "PolyMatrix":
        return parse_octal(text)

    @property
    def k0(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.k0, self.n0)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    @property
    def row_degrees(self) -> tuple[int, ...]:
        return tuple(max(0, max(pdeg(e) for e in r)) for r in self.entries)

    @property
    def memory(self) -> int:
        return max(self.row_degrees, default=0)

    @property
    def constraint_length(self) -> int:
        return sum(self.row_degrees)

    def replace(self, i: int, j: int, value: int) -> "PolyMatrix":
        rows = [list(r) for r in self.entries]
        rows[i][j] = value
        return PolyMatrix(tuple(map(tuple, rows)), self.n0)

    def with_rows(self, rows) -> "PolyMatrix":
        return PolyMatrix(tuple(tuple(r) for r in rows), self.n0)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(tuple(self.col(j) for j in range(self.n0)), self.k0)

    def to_octal(self) -> str:
        return format_octal(self)

    def __str__(self):
        rows = [", ".join(poly_to_str(e) for e in r) for r in self.entries]
        if self.k0 == 1:
            return f"({rows[0]})"
        return "[" + "; ".join(rows) + "]"


class CoeffExpansion(NamedTuple):
    """Coefficient matrices G_0, ..., G_L, each k0 x n0."""

    matrices: tuple[BinaryMatrix, ...]

    def reassemble(self) -> PolyMatrix:
        k0, n0 = self.matrices[0].shape
        rows = []
        for r in range(k0):
            rows.append(
                tuple(
                    sum(1 << i for i, M in enumerate(self.matrices) if M.rows[r] >> c & 1)
                    for c in range(n0)
                )
            )
        return PolyMatrix(tuple(rows), n0)


class Metrics(NamedTuple):
    memory: int
    constraint_length: int
    row_degrees: tuple[int, ...]


class CanonicalDiagnosis(NamedTuple):
    basic: bool
    reduced: bool
    gcd_of_minors: int
    internal_degree: int
    external_degree: int

    @property
    def canonical(self) -> bool:
        return self.basic and self.reduced


# ---------------------------------------------------------------- text formats

def _strip_brackets(text: str) -> str:
    s = text.strip()
    while s and s[0] in "([" and s[-1] in ")]":
        s = s[1:-1].strip()
    return s


def parse_poly_matrix(text: str) -> PolyMatrix:
    """Parse ``"1+D, D; D^2, 1"``: rows split on ';', entries on ','."""
    s = _strip_brackets(text)
    if not s:
        raise ParseError("empty matrix")
    rows = []
    for row_text in s.split(";"):
        row_text = _strip_brackets(row_text)
        rows.append(tuple(poly_from_str(e) for e in row_text.split(",")))
    try:
        return PolyMatrix(tuple(rows))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _octal_token(tok: str) -> int:
    tok = tok.strip()
    if not tok or any(c not in "01234567" for c in tok):
        raise ParseError(f"not an octal token: {tok!r}")
    bits = "".join(format(int(c), "03b") for c in tok)
    return sum(1 << i for i, c in enumerate(bits) if c == "1")


def _octal_of(p: int) -> str:
    if p == 0:
        return "0"
    width = pdeg(p) + 1
    width += -width % 3
    bits = "".join("1" if p >> i & 1 else "0" for i in range(width))
    return "".join(str(int(bits[i:i + 3], 2)) for i in range(0, width, 3))


def parse_octal(text) -> PolyMatrix:
    """Left-justified octal: digits expand MSB first and read left to right as D^0, D^1, ...

    Accepts ``"(50,64)"``, a list of tokens, or a grid ``"(1,2,3;4,5,6)"``.
    """
    if not isinstance(text, str):
        text = ",".join(text)
    s = _strip_brackets(text)
    if not s:
        raise ParseError("empty octal matrix")
    rows = [tuple(_octal_token(t) for t in _strip_brackets(r).split(",")) for r in s.split(";")]
    try:
        return PolyMatrix(tuple(rows))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_octal(G: PolyMatrix) -> str:
    rows = [",".join(_octal_of(e) for e in r) for r in G.entries]
    return "(" + ";".join(rows) + ")"


def octal_codec(value, direction: str = "parse"):
    if direction == "parse":
        return parse_octal(value)
    if direction == "format":
        return format_octal(value)
    raise ValueError("direction must be 'parse' or 'format'")


def parse_encoder(octal: str | None = None, poly: str | None = None) -> PolyMatrix:
    if (octal is None) == (poly is None):
        raise ParseError("give exactly one of octal or polynomial text")
    return parse_octal(octal) if octal is not None else parse_poly_matrix(poly)


# ---------------------------------------------------------------- structure

def expand(G: PolyMatrix) -> CoeffExpansion:
    mats = []
    for i in range(G.memory + 1):
        rows = tuple(sum(1 << c for c, e in enumerate(r) if e >> i & 1) for r in G.entries)
        mats.append(BinaryMatrix(rows, G.n0))
    return CoeffExpansion(tuple(mats))


def metrics(G: PolyMatrix) -> Metrics:
    return Metrics(G.memory, G.constraint_length, G.row_degrees)


def column_monomial_factor(G: PolyMatrix, j: int) -> int:
    col = [e for e in G.col(j) if e]
    if not col:
        raise DegenerateColumnError(f"column {j} is all zero")
    return min(valuation(e) for e in col)


def divide_column(G: PolyMatrix, j: int, p: int) -> PolyMatrix:
    if p < 0:
        raise ValueError("power must be nonnegative")
    rows = [list(r) for r in G.entries]
    for r in rows:
        if r[j] and valuation(r[j]) < p:
            raise NonDivisibleError(f"D^{p} does not divide column {j}")
        r[j] >>= p
    return G.with_rows(rows)


def _check_sections(G: PolyMatrix, q: int, N: int | None) -> None:
    if N is not None and q + G.memory + 1 > N:
        raise SectionLengthError(f"need q + L + 1 <= N, got {q} + {G.memory} + 1 > {N}")


def multiply_column(G: PolyMatrix, j: int, q: int, N: int | None) -> PolyMatrix:
    if q < 0:
        raise ValueError("power must be nonnegative")
    _check_sections(G, q, N)
    rows = [list(r) for r in G.entries]
    for r in rows:
        r[j] <<= q
    return G.with_rows(rows)


def row_add(G: PolyMatrix, i: int, j: int, q: int, N: int | None) -> PolyMatrix:
    """g_j <- g_j + D^q g_i."""
    if i == j:
        raise ValueError("source and target rows must differ")
    if q < 0:
        raise ValueError("power must be nonnegative")
    _check_sections(G, q, N)
    rows = [list(r) for r in G.entries]
    rows[j] = [a ^ (b << q) for a, b in zip(rows[j], rows[i])]
    return G.with_rows(rows)


def scale_row(G: PolyMatrix, i: int, q: int) -> PolyMatrix:
    """Multiply row i by D^q (q may be negative when the row is divisible)."""
    rows = [list(r) for r in G.entries]
    if q >= 0:
        rows[i] = [e << q for e in rows[i]]
    else:
        if any(e and valuation(e) < -q for e in rows[i]):
            raise NonDivisibleError(f"row {i} is not divisible by D^{-q}")
        rows[i] = [e >> -q for e in rows[i]]
    return G.with_rows(rows)


def times_transpose(G: PolyMatrix, H: PolyMatrix) -> PolyMatrix:
    """G(D) H(D)^T."""
    if G.n0 != H.n0:
        raise ValueError("column counts differ")
    out = []
    for g in G.entries:
        row = []
        for h in H.entries:
            acc = 0
            for a, b in zip(g, h):
                acc ^= pmul(a, b)
            row.append(acc)
        out.append(tuple(row))
    return PolyMatrix(tuple(out), H.k0)


# ---------------------------------------------------------------- minors and rank

def determinant(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    acc = 0
    for c in range(n):
        if rows[0][c]:
            minor = [r[:c] + r[c + 1:] for r in rows[1:]]
            acc ^= pmul(rows[0][c], determinant(minor))
    return acc


def maximal_minors(G: PolyMatrix) -> dict[tuple[int, ...], int]:
    out = {}
    for cols in itertools.combinations(range(G.n0), G.k0):
        out[cols] = determinant([[r[c] for c in cols] for r in G.entries])
    return out


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over GF(2)(D) by fraction-free elimination."""
    work = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(work[0]) if work else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank]
        for i in range(rank + 1, len(work)):
            f = work[i][c]
            if f:
                work[i] = [pmul(p[c], x) ^ pmul(f, y) for x, y in zip(work[i], p)]
        rank += 1
    return rank


def validate_canonical(G: PolyMatrix) -> CanonicalDiagnosis:
    if rational_rank(G.entries) != G.k0:
        raise InvalidEncoderError(f"rank over rational functions is below k0={G.k0}")
    minors = [m for m in maximal_minors(G).values() if m]
    g = 0
    for m in minors:
        g = pgcd(g, m)
    internal = max(pdeg(m) for m in minors)
    external = G.constraint_length
    return CanonicalDiagnosis(g == 1, internal == external, g, internal, external)


# ---------------------------------------------------------------- invariant factors

def _matmul(A, B):
    return [[_dot(r, [b[j] for b in B]) for j in range(len(B[0]))] for r in A]


def _dot(a, b):
    acc = 0
    for x, y in zip(a, b):
        acc ^= pmul(x, y)
    return acc


def smith_form(G: PolyMatrix):
    """Return (U, S, V) with U G V = S diagonal, U and V unimodular.

    Pivot on the minimum-degree nonzero entry of the trailing submatrix,
    ties broken by row-major position.
    """
    k, m = G.k0, G.n0
    S = [list(r) for r in G.entries]
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(M, a, b):
        M[a], M[b] = M[b], M[a]

    def swap_cols(M, a, b):
        for r in M:
            r[a], r[b] = r[b], r[a]

    for t in range(min(k, m)):
        while True:
            cells = [(pdeg(S[i][j]), i, j) for i in range(t, k) for j in range(t, m) if S[i][j]]
            if not cells:
                return _pm(U), _pm(S, m), _pm(V)
            _, pi, pj = min(cells)
            swap_rows(S, t, pi)
            swap_rows(U, t, pi)
            swap_cols(S, t, pj)
            swap_cols(V, t, pj)
            piv = S[t][t]
            dirty = False
            for i in range(t + 1, k):
                if S[i][t]:
                    q, r = pdivmod(S[i][t], piv)
                    S[i] = [a ^ pmul(q, b) for a, b in zip(S[i], S[t])]
                    U[i] = [a ^ pmul(q, b) for a, b in zip(U[i], U[t])]
                    dirty |= r != 0
            for j in range(t + 1, m):
                if S[t][j]:
                    q, r = pdivmod(S[t][j], piv)
                    for row in S:
                        row[j] ^= pmul(q, row[t])
                    for row in V:
                        row[j] ^= pmul(q, row[t])
                    dirty |= r != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, k) for j in range(t + 1, m) if pmod(S[i][j], piv)),
                None,
            )
            if bad is None:
                break
            S[t] = [a ^ b for a, b in zip(S[t], S[bad])]
            U[t] = [a ^ b for a, b in zip(U[t], U[bad])]
    return _pm(U), _pm(S, m), _pm(V)


def _pm(rows, n0=None):
    rows = tuple(tuple(r) for r in rows)
    return PolyMatrix(rows, n0 if n0 is not None else len(rows[0]) if rows else 0)


def invariant_factors(G: PolyMatrix) -> tuple[int, ...]:
    _, S, _ = smith_form(G)
    return tuple(S[i, i] for i in range(min(S.k0, S.n0)))


def _left_dependency_mod(rows: list[list[int]], p: int) -> tuple[int, list[int]] | None:
    """Find i and c with c_i = 1, c_j = 0 for j > i and sum c_j g_j = 0 mod p."""
    basis: list[tuple[list[int], list[int]]] = []  # (reduced row, combination)
    k = len(rows)
    for i, g in enumerate(rows):
        v = [pmod(e, p) for e in g]
        comb = [int(j == i) for j in range(k)]
        for bv, bc in basis:
            c = next(c for c, x in enumerate(bv) if x)
            if v[c]:
                f = pmod(pmul(v[c], pinv_mod(bv[c], p)), p)
                v = [pmod(x ^ pmul(f, y), p) for x, y in zip(v, bv)]
                comb = [pmod(x ^ pmul(f, y), p) for x, y in zip(comb, bc)]
        if not any(v):
            return i, comb
        basis.append((v, comb))
    return None


def basic_equivalent(G: PolyMatrix) -> PolyMatrix:
    """Basic matrix with the same rational row space as G.

    The gcd of the maximal minors is the product of the invariant factors.
    Each irreducible factor p of it is removed in turn: modulo p the rows
    become dependent, and the last row taking part in the dependency is
    replaced by the dependency divided by p.  Rows untouched by any
    dependency survive unchanged.
    """
    if rational_rank(G.entries) != G.k0:
        raise InvalidEncoderError("rank over rational functions is below k0")
    rows = [list(r) for r in G.entries]
    while True:
        g = 0
        for m in maximal_minors(G.with_rows(rows)).values():
            g = pgcd(g, m)
        if g == 1:
            return G.with_rows(rows)
        p = factor(g)[0]
        i, comb = _left_dependency_mod(rows, p)
        acc = [0] * G.n0
        for c, r in zip(comb, rows):
            if c:
                acc = [a ^ pmul(c, e) for a, e in zip(acc, r)]
        new = []
        for e in acc:
            q, rem = pdivmod(e, p)
            assert rem == 0
            new.append(q)
        rows[i] = new


def reduced_equivalent(G: PolyMatrix, N: int | None = None) -> PolyMatrix:
    """Bring G to row-reduced form with row operations g_j += D^q g_i only.

    While the highest-degree coefficient matrix is singular, a dependency
    among its rows is used to lower the degree of the highest-degree row in
    it (ties: the later row).  Each step is one of the row additions that
    keep the tail-biting code unchanged, so ``N`` is checked when given.
    """
    cur = G
    while True:
        degs = cur.row_degrees
        lead = []
        for r, d in zip(cur.entries, degs):
            lead.append(sum(1 << c for c, e in enumerate(r) if e >> d & 1))
        dep = _gf2_dependency(lead, degs)
        if dep is None:
            return cur
        target = max(dep, key=lambda i: (degs[i], i))
        for i in dep:
            if i != target:
                cur = row_add(cur, i, target, degs[target] - degs[i], N)


def _gf2_dependency(rows: list[int], degs) -> list[int] | None:
    basis: list[tuple[int, int]] = []
    for i, r in enumerate(rows):
        comb = 1 << i
        for b, bc in basis:
            if r & (b & -b):
                r ^= b
                comb ^= bc
        if r == 0:
            return [j for j in range(len(rows)) if comb >> j & 1]
        basis.append((r, comb))
    return None


# ---------------------------------------------------------------- duals

def reciprocal_dual(H: PolyMatrix) -> PolyMatrix:
    """Substitute D^-1 for D and multiply row i by D^(row degree i)."""
    rows = []
    for r, d in zip(H.entries, H.row_degrees):
        rows.append(tuple(preverse(e, d) for e in r))
    return PolyMatrix(tuple(rows), H.n0)


def compute_check_matrix(G: PolyMatrix) -> PolyMatrix:
    """Minimal polynomial basis of the right kernel of G(D).

    Degree-bounded search: for d = 0, 1, ... the vectors h(D) with
    deg h <= d and G h^T = 0 form a GF(2) space.  Its basis vectors, in
    ascending order of their packed coefficients, are taken greedily when
    they raise the rank over rational functions.
    """
    diag = validate_canonical(G)
    if not diag.canonical:
        raise NonCanonicalError("G(D) must be basic and reduced")
    k0, n0 = G.shape
    want = n0 - k0
    nu = G.constraint_length
    L = G.memory
    found: list[tuple[int, ...]] = []
    d = 0
    while len(found) < want and d <= nu:
        w = d + 1
        eqs = []
        for r in G.entries:
            for s in range(L + d + 1):
                eq = 0
                for j, g in enumerate(r):
                    for t in range(w):
                        if s - t >= 0 and g >> (s - t) & 1:
                            eq |= 1 << (j * w + t)
                eqs.append(eq)
        K = null_space(BinaryMatrix(tuple(eqs), n0 * w))
        for v in sorted(K.rows):
            h = tuple((v >> (j * w)) & ((1 << w) - 1) for j in range(n0))
            if rational_rank(found + [h]) > len(found):
                found.append(h)
                if len(found) == want:
                    break
        d += 1
    H = PolyMatrix(tuple(found), n0)
    if len(found) < want or H.constraint_length != nu:
        raise NonCanonicalError("no check basis with row-degree sum equal to the constraint length")
    assert not any(any(r) for r in times_transpose(G, H).entries)
    return H
