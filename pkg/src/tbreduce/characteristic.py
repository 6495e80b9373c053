"""Characteristic matrices (X, T) of tail-biting codes and their span structure."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator

from .errors import DegenerateTailBitingError, FullSupportError, StructureError
from .gf2 import BinaryMatrix, cyclic_shift, first_one, last_one, minimal_span_form, rank, rotate, row_space_equal
from .spans import Span
from .tbgm import Tbgm, format_blocks

__all__ = [
    "MsfBasis",
    "CharacteristicPair",
    "CharacteristicDiagnosis",
    "SpanStructure",
    "compute_msf_bases",
    "assemble_characteristic",
    "characteristic_matrix",
    "verify_characteristic",
    "analyze_spans",
    "enumerate_variants",
    "span_word_ok",
]


@dataclass(frozen=True)
class MsfBasis:
    """Minimal-span basis of sigma_j(C), with spans in the sigma_j frame."""

    j: int
    matrix: BinaryMatrix
    spans: tuple[Span, ...]

    def unshifted(self) -> tuple[BinaryMatrix, tuple[Span, ...]]:
        """rho_j of the basis: generators and spans on the original axis."""
        return cyclic_shift(self.matrix, self.j, "right"), tuple(s.shift(self.j) for s in self.spans)


@dataclass(frozen=True)
class CharacteristicPair:
    X: BinaryMatrix
    T: tuple[Span, ...]
    n0: int
    N: int
    fast_path: bool = field(default=False, compare=False)

    @property
    def n(self) -> int:
        return self.X.ncols

    def generators(self) -> list[tuple[int, Span]]:
        return list(zip(self.X.rows, self.T))

    def row_for_span(self, s: Span) -> int:
        return self.X.rows[self.T.index(s)]

    def render(self) -> str:
        return format_blocks(self.X, self.n0, self.T)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "n0": self.n0,
            "N": self.N,
            "rows": self.X.to_strings(),
            "spans": [[s.a, s.b] for s in self.T],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "CharacteristicPair":
        X = BinaryMatrix.from_strings(d["rows"])
        return cls(X, tuple(Span(a, b, d["n"]) for a, b in d["spans"]), d["n0"], d["N"])


@dataclass(frozen=True)
class CharacteristicDiagnosis:
    generates_code: bool
    spans_valid: bool
    endpoints_distinct: bool
    coverage_exact: bool
    bad_rows: tuple[int, ...] = ()
    coverage: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.generates_code and self.spans_valid and self.endpoints_distinct and self.coverage_exact


@dataclass(frozen=True)
class SpanStructure:
    T0: tuple[Span, ...]
    basic_rows: tuple[int, ...]
    Theta: tuple[tuple[int, ...], ...]
    theta_i: tuple[int, ...]
    theta: int
    N: int
    variant_count: int
    ell: int
    ell_expected: int
    span_excess: int
    span_excess_expected: int


def compute_msf_bases(t: Tbgm) -> list[MsfBasis]:
    if not t.full_rank:
        raise DegenerateTailBitingError(f"rank {t.rank} < {t.k}")
    n = t.n
    if t.matrix.support() != (1 << n) - 1:
        missing = [c for c in range(n) if not t.matrix.support() >> c & 1]
        raise FullSupportError(f"code is zero on coordinates {missing}")
    out = []
    for j in range(t.n0):
        M, spans = minimal_span_form(cyclic_shift(t.matrix, j, "left"))
        out.append(MsfBasis(j, M, tuple(spans)))
    return out


def assemble_characteristic(bases: list[MsfBasis], N: int | None = None) -> CharacteristicPair:
    """Union of the shifted minimal-span bases, one generator per start.

    The generator for each start s < n0 is the first one produced (lowest j,
    then row order); every other row is its shift by a multiple of n0.  When
    all shifted bases only contribute spans already present in X_0* or
    rho_{n0}(X_0*), generators are drawn from those two alone.
    """
    n0 = len(bases)
    n = bases[0].matrix.ncols
    if N is None:
        N = n // n0
    produced: list[tuple[int, Span]] = []
    for b in bases:
        M, spans = b.unshifted()
        produced.extend(zip(M.rows, spans))

    base_rows, base_spans = bases[0].unshifted()
    fast_pool = list(zip(base_rows.rows, base_spans))
    fast_pool += [(rotate(r, n0, n), s.shift(n0)) for r, s in fast_pool]
    fast_spans = {s for _, s in fast_pool}
    fast = all(s in fast_spans for _, s in produced)
    pool = fast_pool if fast else produced

    basic: dict[int, tuple[int, Span]] = {}
    for w, s in pool:
        if s.a < n0 and s.a not in basic:
            basic[s.a] = (w, s)
    if sorted(basic) != list(range(n0)):
        raise StructureError(f"basic spans found only for starts {sorted(basic)}")

    gens = []
    for i in range(N):
        for a in range(n0):
            w, s = basic[a]
            gens.append((rotate(w, i * n0, n), s.shift(i * n0)))
    gens.sort(key=lambda g: g[1].a)
    T = tuple(s for _, s in gens)
    Tset = set(T)
    stray = [s for _, s in produced if s not in Tset]
    if stray or len({s.a for s in T}) != n or len({s.b for s in T}) != n:
        raise StructureError(f"inconsistent characteristic spans: {[str(s) for s in stray]}")
    X = BinaryMatrix(tuple(w for w, _ in gens), n)
    return CharacteristicPair(X, T, n0, N, fast)


def characteristic_matrix(t: Tbgm) -> CharacteristicPair:
    return assemble_characteristic(compute_msf_bases(t), t.N)


def span_word_ok(w: int, s: Span) -> bool:
    """Both endpoints of [a, b] are nonzero and no nonzero position lies outside it."""
    if not (w >> s.a & 1 and w >> s.b & 1):
        return False
    inside = s.mask() | (1 << s.a)
    return w & ~inside == 0


def verify_characteristic(c: CharacteristicPair, t: Tbgm) -> CharacteristicDiagnosis:
    n = c.n
    k = t.rank
    gen = c.X.ncols == t.matrix.ncols and row_space_equal(c.X, t.matrix)
    bad = tuple(i for i, (w, s) in enumerate(zip(c.X.rows, c.T)) if not span_word_ok(w, s))
    distinct = len({s.a for s in c.T}) == n and len({s.b for s in c.T}) == n and len(c.T) == n
    cover = tuple(sum(s.contains(j) for s in c.T) for j in range(n))
    return CharacteristicDiagnosis(
        gen, not bad, distinct, all(x == n - k for x in cover), bad, cover
    )


def analyze_spans(c: CharacteristicPair, n0: int, k0: int, N: int) -> SpanStructure:
    T = c.T
    n = n0 * N
    k = k0 * N
    T0 = tuple(sorted((s for s in T if s.a < n0), key=lambda s: s.a))
    if [s.a for s in T0] != list(range(n0)):
        raise StructureError("basic spans must start at 0, ..., n0-1")
    shifted = {s.shift(i * n0) for i in range(N) for s in T0}
    if shifted != set(T):
        raise StructureError("span list is not the union of block shifts of the basic spans")
    basic_rows = tuple(T.index(s) for s in T0)
    Theta = tuple(tuple(r for r, inner in enumerate(T) if s.includes(inner)) for s in T0)
    theta_i = tuple(len(x) for x in Theta)
    theta = sum(theta_i)
    ell = sum(s.length for s in T0)
    ell_expected = n0 * ((n0 - k0) * N + 1)
    excess = sum(s.length - 1 for s in T)
    if ell != ell_expected:
        raise StructureError(f"basic span lengths sum to {ell}, expected {ell_expected}")
    if excess != n * (n - k):
        raise StructureError(f"span excess {excess} != n(n-k) = {n * (n - k)}")
    return SpanStructure(
        T0, basic_rows, Theta, theta_i, theta, N, 2 ** (theta * N), ell, ell_expected, excess, n * (n - k)
    )


def _subsets(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def enumerate_variants(
    c: CharacteristicPair, s: SpanStructure, all_variants: bool = False
) -> Iterator[CharacteristicPair]:
    """Characteristic matrices obtained by adding generators with strictly included spans.

    By default only the 2^theta shift-symmetric variants are produced: the
    same choice is made for each basic generator and copied to every block.
    With ``all_variants`` every row chooses independently (2^(theta*N)).
    The first variant is always the input itself.
    """
    n, n0 = c.n, c.n0
    rows = c.X.rows
    if all_variants:
        inc = [tuple(r for r, inner in enumerate(c.T) if outer.includes(inner)) for outer in c.T]
        for choice in itertools.product(*(list(_subsets(x)) for x in inc)):
            new = list(rows)
            for l, sub in enumerate(choice):
                for r in sub:
                    new[l] ^= rows[r]
            yield CharacteristicPair(BinaryMatrix(tuple(new), n), c.T, n0, c.N, c.fast_path)
        return
    where = {}
    for l, span in enumerate(c.T):
        where[l] = (span.a % n0, span.a // n0)
    for choice in itertools.product(*(list(_subsets(x)) for x in s.Theta)):
        basic = []
        for b, sub in zip(s.basic_rows, choice):
            w = rows[b]
            for r in sub:
                w ^= rows[r]
            basic.append(w)
        new = tuple(rotate(basic[i], m * n0, n) for i, m in (where[l] for l in range(n)))
        yield CharacteristicPair(BinaryMatrix(new, n), c.T, n0, c.N, c.fast_path)
