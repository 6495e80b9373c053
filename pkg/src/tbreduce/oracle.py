"""Brute-force ground truth: code enumeration, branch shifts, tail-biting trellises,
and state-complexity profiles of the repeating trellis module."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetError, DimensionError
from .gf2 import BinaryMatrix, minimal_span_form, rref
from .polymatrix import PolyMatrix, expand
from .tbgm import Tbgm, build_tbgm, polyrow_word

__all__ = [
    "CodeSet",
    "TbTrellis",
    "TrellisModule",
    "enumerate_code",
    "code_of",
    "shift_word",
    "shift_code",
    "codes_equal",
    "build_tb_trellis",
    "matrix_module",
    "terminated_matrix",
    "state_profile",
    "trellis_module",
]

ENUMERATION_BUDGET = 24
STATE_BUDGET = 16


@dataclass(frozen=True, eq=False)
class CodeSet:
    """All codewords of a length-n code as a sorted array of packed words."""

    words: np.ndarray
    n: int
    provenance: str = ""

    def __len__(self):
        return len(self.words)

    def __contains__(self, w) -> bool:
        w = int(w)
        if self.n <= 64:
            w = np.uint64(w)
        i = np.searchsorted(self.words, w)
        return bool(i < len(self.words) and self.words[i] == w)

    def __iter__(self):
        return (int(w) for w in self.words)

    def __eq__(self, other):
        return isinstance(other, CodeSet) and codes_equal(self, other)

    __hash__ = None


def _dtype(n: int):
    return np.uint64 if n <= 64 else object


def _span_all(rows, n: int) -> np.ndarray:
    dt = _dtype(n)
    arr = np.zeros(1, dtype=dt)
    for r in rows:
        r = dt(r) if dt is np.uint64 else r
        arr = np.concatenate([arr, arr ^ r])
    return np.unique(arr)


def enumerate_code(t: Tbgm | BinaryMatrix, budget: int = ENUMERATION_BUDGET) -> CodeSet:
    """Every u * G over GF(2)^k, deduplicated."""
    M = t.matrix if isinstance(t, Tbgm) else t
    # reduce first: the row space is unchanged and duplicates vanish
    R, _ = rref(M)
    if M.nrows > budget and R.nrows > budget:
        raise BudgetError(f"{M.nrows} generator rows exceed the enumeration budget of {budget}")
    label = str(t.source) + f" N={t.N}" if isinstance(t, Tbgm) else "matrix"
    return CodeSet(_span_all(R.rows, M.ncols), M.ncols, label)


def code_of(G: PolyMatrix, N: int, budget: int = ENUMERATION_BUDGET) -> CodeSet:
    return enumerate_code(build_tbgm(G, N), budget)


def shift_word(w: int, shifts, n0: int, N: int) -> int:
    """Cyclically shift component j of every branch by shifts[j] branches (negative = left)."""
    if len(shifts) != n0:
        raise DimensionError(f"need {n0} shifts, got {len(shifts)}")
    out = 0
    for b in range(N):
        for j, s in enumerate(shifts):
            if w >> (b * n0 + j) & 1:
                out |= 1 << (((b + s) % N) * n0 + j)
    return out


def shift_code(cs: CodeSet, shifts, n0: int, N: int) -> CodeSet:
    if len(shifts) != n0:
        raise DimensionError(f"need {n0} shifts, got {len(shifts)}")
    if n0 * N != cs.n:
        raise DimensionError("block layout does not match the code length")
    w = cs.words
    out = np.zeros_like(w)
    for b in range(N):
        for j, s in enumerate(shifts):
            src = b * n0 + j
            dst = ((b + s) % N) * n0 + j
            if cs.n <= 64:
                out |= ((w >> np.uint64(src)) & np.uint64(1)) << np.uint64(dst)
            else:
                out = out | np.array([((int(x) >> src) & 1) << dst for x in w], dtype=object)
    return CodeSet(np.sort(out), cs.n, f"shift{tuple(shifts)}({cs.provenance})")


def codes_equal(a: CodeSet, b: CodeSet) -> bool:
    if a.n != b.n:
        raise DimensionError("codes have different lengths")
    return len(a.words) == len(b.words) and bool(np.all(a.words == b.words))


# ---------------------------------------------------------------- trellis

@dataclass(frozen=True)
class TbTrellis:
    """Controller-canonical realization unrolled over N sections.

    Row i of G(D) owns a register of length nu_i holding u_i(t-1), ...,
    u_i(t-nu_i); registers are concatenated in row order.  Branch labels
    pack output column c into bit c.
    """

    G: PolyMatrix
    N: int
    row_degrees: tuple[int, ...]
    next_state: tuple[tuple[int, ...], ...]
    output: tuple[tuple[int, ...], ...]

    @property
    def nu(self) -> int:
        return sum(self.row_degrees)

    @property
    def num_states(self) -> int:
        return 1 << self.nu

    @property
    def n0(self) -> int:
        return self.G.n0

    def state_label(self, s: int) -> str:
        return "(" + "".join(str(s >> i & 1) for i in range(self.nu)) + ")"

    def state_from_label(self, label: str) -> int:
        bits = label.strip("()")
        return sum(1 << i for i, c in enumerate(bits) if c == "1")

    def start_states(self, word: int) -> list[int]:
        """States from which ``word`` is a tail-biting path."""
        n0 = self.n0
        mask = (1 << n0) - 1
        out = []
        for s0 in range(self.num_states):
            cur = {s0}
            for t in range(self.N):
                lab = word >> (t * n0) & mask
                cur = {
                    self.next_state[s][u]
                    for s in cur
                    for u in range(len(self.output[s]))
                    if self.output[s][u] == lab
                }
                if not cur:
                    break
            if s0 in cur:
                out.append(s0)
        return out

    def accepts(self, word: int) -> bool:
        return bool(self.start_states(word))

    def tb_words(self) -> CodeSet:
        """Label sequences of all paths that end in their start state."""
        n0 = self.n0
        n = n0 * self.N
        found = []
        for s0 in range(self.num_states):
            frontier = [(s0, 0)]
            for t in range(self.N):
                shift = t * n0
                frontier = [
                    (self.next_state[s][u], w | (self.output[s][u] << shift))
                    for s, w in frontier
                    for u in range(len(self.output[s]))
                ]
            found.extend(w for s, w in frontier if s == s0)
        arr = np.unique(np.array(found, dtype=_dtype(n)))
        return CodeSet(arr, n, f"trellis {self.G} N={self.N}")

    def to_dict(self) -> dict:
        """Plot-ready description: every section lists its labeled edges."""
        k0 = self.G.k0
        n0 = self.n0
        edges = []
        for s in range(self.num_states):
            for u in range(1 << k0):
                edges.append(
                    {
                        "from": self.state_label(s),
                        "to": self.state_label(self.next_state[s][u]),
                        "input": "".join(str(u >> i & 1) for i in range(k0)),
                        "output": "".join(str(self.output[s][u] >> c & 1) for c in range(n0)),
                    }
                )
        return {
            "encoder": str(self.G),
            "sections": self.N,
            "tail_biting": True,
            "register_convention": "row-major registers, most recent input first",
            "states": [self.state_label(s) for s in range(self.num_states)],
            "section_edges": [{"section": t, "edges": edges} for t in range(self.N)],
        }


def build_tb_trellis(G: PolyMatrix, N: int, max_nu: int = STATE_BUDGET) -> TbTrellis:
    degs = G.row_degrees
    nu = sum(degs)
    if nu > max_nu:
        raise BudgetError(f"nu={nu} exceeds the state budget of {max_nu}")
    offsets = [sum(degs[:i]) for i in range(G.k0)]
    nxt, out = [], []
    for s in range(1 << nu):
        regs = [(s >> off) & ((1 << d) - 1) for off, d in zip(offsets, degs)]
        ns_row, out_row = [], []
        for u in range(1 << G.k0):
            lab = 0
            for c in range(G.n0):
                bit = 0
                for i in range(G.k0):
                    hist = (u >> i & 1) | (regs[i] << 1)  # bit m = u_i(t - m)
                    bit ^= bin(G.entries[i][c] & hist).count("1") & 1
                lab |= bit << c
            ns = 0
            for i in range(G.k0):
                reg = ((regs[i] << 1) | (u >> i & 1)) & ((1 << degs[i]) - 1)
                ns |= reg << offsets[i]
            ns_row.append(ns)
            out_row.append(lab)
        nxt.append(tuple(ns_row))
        out.append(tuple(out_row))
    return TbTrellis(G, N, degs, tuple(nxt), tuple(out))


# ---------------------------------------------------------------- trellis module

@dataclass(frozen=True)
class TrellisModule:
    module: BinaryMatrix
    profile: tuple[int, ...]


def matrix_module(G: PolyMatrix) -> BinaryMatrix:
    """The vertical slice [G_L; ...; G_0] stacked as k0(L+1) rows of width n0."""
    mats = expand(G).matrices
    rows = []
    for M in reversed(mats):
        rows.extend(M.rows)
    return BinaryMatrix(tuple(rows), G.n0)


def terminated_matrix(G: PolyMatrix, blocks: int) -> BinaryMatrix:
    """Zero-tail scalar generator matrix with ``blocks`` input blocks."""
    L = G.memory
    width = (blocks + L) * G.n0
    base = [polyrow_word(r, G.n0, blocks + L) for r in G.entries]
    rows = tuple(b << (i * G.n0) for i in range(blocks) for b in base)
    return BinaryMatrix(rows, width)


def state_profile(G: PolyMatrix) -> tuple[int, ...]:
    """Dimensions of the state spaces inside one steady-state trellis section.

    The terminated matrix is put in minimal-span form; the state space at
    depth tau has one dimension per row whose span (a, b] contains tau.
    Depths are read from a module far enough from both ends that the
    transients have died out.
    """
    L = G.memory
    blocks = 2 * L + 3
    M, spans = minimal_span_form(terminated_matrix(G, blocks))
    mid = (blocks + L) // 2
    profile = []
    for i in range(G.n0):
        tau = mid * G.n0 + i
        profile.append(sum(1 for s in spans if s.a < tau <= s.b))
    return tuple(profile)


def trellis_module(G: PolyMatrix) -> TrellisModule:
    return TrellisModule(matrix_module(G), state_profile(G))
