"""Search for tail-biting re-encodings with fewer trellis states.

A candidate is a shift-structured choice of k rows of a characteristic
matrix.  Its polynomial matrix G'(D) either has a smaller constraint length
outright, or gets one after dividing columns by monomials, which cyclically
shifts the matching codeword components.  High-rate codes may instead be
reduced from the dual side.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .characteristic import (
    CharacteristicPair,
    SpanStructure,
    analyze_spans,
    characteristic_matrix,
    enumerate_variants,
)
from .errors import (
    BudgetError,
    ExhaustedError,
    NonCanonicalError,
    VerificationError,
    NotShiftStructuredError,
    SectionLengthError,
    SelectionError,
)
from .gf2 import BinaryMatrix, rank, row_space_equal
from .oracle import code_of, codes_equal, shift_code, shift_word, state_profile
from .polymatrix import (
    PolyMatrix,
    basic_equivalent,
    column_monomial_factor,
    compute_check_matrix,
    divide_column,
    format_octal,
    multiply_column,
    parse_poly_matrix,
    reciprocal_dual,
    reduced_equivalent,
    row_add,
    scale_row,
    times_transpose,
    validate_canonical,
)
from .poly import valuation
from .spans import Span
from .tbgm import Tbgm, build_tbgm, rows_to_polymatrix

__all__ = [
    "ReductionCandidate",
    "ReductionReport",
    "BoundResult",
    "DualCandidate",
    "DualResult",
    "SimultaneousResult",
    "SelectionVerdict",
    "select_candidate",
    "division_plan",
    "reduce_candidate",
    "search_reduction",
    "verify_reduction",
    "section_bound",
    "dual_procedure",
    "simultaneous_reduce",
    "dual_selection_check",
    "is_shift_structured",
    "normalize_columns",
    "dual_assisted_reduction",
]

MAX_VARIANTS = 1 << 16
SEARCH_VARIANTS = 1 << 12


@dataclass(frozen=True)
class ReductionCandidate:
    basic_rows: tuple[int, ...]
    variant_index: int
    rows: BinaryMatrix | None
    spans: tuple[Span, ...]
    poly: PolyMatrix | None
    accepted: bool
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "variant": self.variant_index,
            "basic_rows": list(self.basic_rows),
            "spans": [str(s) for s in self.spans],
            "G_prime": str(self.poly) if self.poly is not None else None,
            "accepted": self.accepted,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class ReductionReport:
    original: PolyMatrix
    N: int
    nu: int
    success: bool
    reduced: PolyMatrix | None = None
    nu_reduced: int | None = None
    shift_vector: tuple[int, ...] = ()
    mode: str | None = None
    candidate: ReductionCandidate | None = None
    verification: str | None = None
    verification_method: str | None = None
    check_matrix: PolyMatrix | None = None
    notes: tuple[str, ...] = ()

    @property
    def shifted_columns(self) -> int:
        return sum(1 for s in self.shift_vector if s)

    def to_dict(self) -> dict:
        return {
            "original": format_octal(self.original),
            "original_poly": str(self.original),
            "N": self.N,
            "nu": self.nu,
            "success": self.success,
            "reduced": format_octal(self.reduced) if self.reduced is not None else None,
            "reduced_poly": str(self.reduced) if self.reduced is not None else None,
            "nu_reduced": self.nu_reduced,
            "shift_vector": list(self.shift_vector),
            "mode": self.mode,
            "candidate": self.candidate.to_dict() if self.candidate else None,
            "check_matrix": str(self.check_matrix) if self.check_matrix is not None else None,
            "verification": self.verification,
            "verification_method": self.verification_method,
            "notes": list(self.notes),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "ReductionReport":
        cand = None
        if d.get("candidate"):
            c = d["candidate"]
            cand = ReductionCandidate(
                tuple(c["basic_rows"]),
                c["variant"],
                None,
                tuple(_span_from_str(s, d["N"], parse_poly_matrix(d["original_poly"]).n0) for s in c["spans"]),
                parse_poly_matrix(c["G_prime"]) if c["G_prime"] else None,
                c["accepted"],
                c.get("reason", ""),
            )
        return cls(
            original=parse_poly_matrix(d["original_poly"]),
            N=d["N"],
            nu=d["nu"],
            success=d["success"],
            reduced=parse_poly_matrix(d["reduced_poly"]) if d.get("reduced_poly") else None,
            nu_reduced=d.get("nu_reduced"),
            shift_vector=tuple(d.get("shift_vector", ())),
            mode=d.get("mode"),
            candidate=cand,
            verification=d.get("verification"),
            verification_method=d.get("verification_method"),
            check_matrix=parse_poly_matrix(d["check_matrix"]) if d.get("check_matrix") else None,
            notes=tuple(d.get("notes", ())),
        )


def _span_from_str(text: str, N: int, n0: int) -> Span:
    a, b = text.strip("(]").split(",")
    return Span(int(a), int(b), n0 * N)


# ---------------------------------------------------------------- candidates

def is_shift_structured(spans: Iterable[Span], n0: int, count: int) -> bool:
    """True iff ``spans`` is exactly ``count`` basic spans plus their block shifts."""
    spans = list(spans)
    if not spans:
        return count == 0
    n = spans[0].n
    N = n // n0
    basic = [s for s in spans if s.a < n0]
    if len(basic) != count:
        return False
    return set(spans) == {s.shift(i * n0) for s in basic for i in range(N)} and len(spans) == count * N


def select_candidate(
    c: CharacteristicPair, basic_rows: Sequence[int], t: Tbgm, variant_index: int = 0
) -> ReductionCandidate:
    """Rows of X whose spans start at a chosen basic position (mod n0), in start order."""
    basic_rows = tuple(basic_rows)
    n0, k0 = t.n0, t.k0
    if len(basic_rows) != k0:
        raise SelectionError(f"need {k0} basic rows, got {len(basic_rows)}")
    chosen = [l for l, s in enumerate(c.T) if s.a % n0 in basic_rows]
    rows = c.X.select(chosen)
    spans = tuple(c.T[l] for l in chosen)
    if rank(rows) != t.k:
        return ReductionCandidate(basic_rows, variant_index, rows, spans, None, False, "rank deficit")
    if not row_space_equal(rows, t.matrix):
        return ReductionCandidate(basic_rows, variant_index, rows, spans, None, False, "not equivalent")
    try:
        poly = rows_to_polymatrix(rows, spans, n0, k0, t.N)
    except (NotShiftStructuredError, SelectionError) as exc:
        return ReductionCandidate(basic_rows, variant_index, rows, spans, None, False, str(exc))
    return ReductionCandidate(basic_rows, variant_index, rows, spans, poly, True)


def _divided(G: PolyMatrix, powers) -> PolyMatrix:
    for j, p in enumerate(powers):
        if p:
            G = divide_column(G, j, p)
    return G


def division_plan(G: PolyMatrix, partial_division: bool = False) -> tuple[int, ...]:
    """Column division powers reaching the smallest constraint length.

    Full division of every monomial factor gives the smallest reachable
    constraint length.  The default then lowers each column's power, in
    column order, as far as it can without losing that minimum.  With
    ``partial_division`` every combination of powers is tried and the one
    with the fewest divided columns, then the smallest total power, wins.
    """
    full = []
    for j in range(G.n0):
        full.append(column_monomial_factor(G, j) if any(G.col(j)) else 0)
    best_nu = _divided(G, full).constraint_length
    if partial_division:
        choices = itertools.product(*(range(f + 1) for f in full))
        ranked = []
        for ps in choices:
            nu = _divided(G, ps).constraint_length
            ranked.append((nu, sum(1 for p in ps if p), sum(ps), ps))
        return min(ranked)[3]
    plan = list(full)
    for j in range(G.n0):
        for p in range(full[j] + 1):
            trial = plan[:j] + [p] + plan[j + 1:]
            if _divided(G, trial).constraint_length == best_nu:
                plan[j] = p
                break
    return tuple(plan)


def reduce_candidate(
    cand: ReductionCandidate,
    nu: int,
    N: int,
    original: PolyMatrix | None = None,
    partial_division: bool = False,
) -> ReductionReport:
    if not cand.accepted:
        raise SelectionError(f"candidate was rejected: {cand.reason}")
    Gp = cand.poly
    plan = division_plan(Gp, partial_division)
    G2 = _divided(Gp, plan)
    nu2 = G2.constraint_length
    shifts = tuple(-p for p in plan)
    ok = nu2 < nu
    mode = None
    if ok:
        mode = "indirect" if any(plan) else "direct"
    return ReductionReport(
        original=original if original is not None else Gp,
        N=N,
        nu=nu,
        success=ok,
        reduced=G2,
        nu_reduced=nu2,
        shift_vector=shifts,
        mode=mode,
        candidate=cand,
    )


def verify_reduction(G: PolyMatrix, reduced: PolyMatrix, shifts, N: int) -> tuple[bool, str]:
    """Compare the shifted code of G with the code of the reduced encoder.

    Full enumeration when the code is small enough, otherwise the same
    comparison on row spaces of the shifted generator matrices.
    """
    try:
        a = shift_code(code_of(G, N), shifts, G.n0, N)
        b = code_of(reduced, N)
        return codes_equal(a, b), "enumeration"
    except BudgetError:
        t = build_tbgm(G, N)
        rows = BinaryMatrix(tuple(shift_word(r, shifts, G.n0, N) for r in t.matrix.rows), t.n)
        return row_space_equal(rows, build_tbgm(reduced, N).matrix), "row-space"


def _preconditions(G: PolyMatrix, N: int):
    diag = validate_canonical(G)
    if not diag.canonical:
        raise NonCanonicalError(f"G(D) is not canonical: {diag}")
    H = compute_check_matrix(G)
    M = H.memory if H.k0 else 0
    t = build_tbgm(G, N, M)
    t.require_full_rank()
    return H, t


def _evaluate(args):
    variant, vi, subset, t, nu, G, partial = args
    cand = select_candidate(variant, subset, t, vi)
    if not cand.accepted:
        return cand, None
    return cand, reduce_candidate(cand, nu, t.N, G, partial)


def _variant_stream(c, s, all_variants):
    if all_variants and 2 ** (s.theta * s.N) > MAX_VARIANTS:
        raise BudgetError(f"2^{s.theta * s.N} variants exceed the enumeration budget")
    return itertools.islice(enumerate_variants(c, s, all_variants), SEARCH_VARIANTS)


def search_reduction(
    G: PolyMatrix,
    N: int,
    all_variants: bool = False,
    partial_division: bool = False,
    dual: bool | str = "auto",
    jobs: int = 1,
    transcript: list | None = None,
    max_variants: int = SEARCH_VARIANTS,
) -> ReductionReport:
    """Best verified reduction over variants x basic-row subsets.

    Candidates are ordered by variant, then by lexicographic basic-row
    subset.  The winner has the smallest reduced constraint length; ties go
    to the fewest shifted columns, then the smallest total shift, the
    lexicographically first basic rows, the smaller peak and sum of the
    trellis-module profile, and finally the earliest candidate.
    ``dual="auto"`` adds the dual-side procedure for rates above 1/2.
    Raises ExhaustedError when nothing beats the original constraint length.
    """
    H, t = _preconditions(G, N)
    nu = G.constraint_length
    c = characteristic_matrix(t)
    s = analyze_spans(c, G.n0, G.k0, N)
    subsets = list(itertools.combinations(range(G.n0), G.k0))
    total = 2 ** (s.theta * (N if all_variants else 1))
    truncated = total > max_variants
    stream = itertools.islice(enumerate_variants(c, s, all_variants), max_variants)
    jobs_list = [
        (v, vi, sub, t, nu, G, partial_division)
        for vi, v in enumerate(stream)
        for sub in subsets
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_evaluate, jobs_list, chunksize=8))
    else:
        results = [_evaluate(j) for j in jobs_list]
    pool = []
    for order, (cand, rep) in enumerate(results):
        if transcript is not None:
            transcript.append(
                {
                    "variant": cand.variant_index,
                    "basic_rows": cand.basic_rows,
                    "accepted": cand.accepted,
                    "reason": cand.reason,
                    "G_prime": cand.poly,
                    "reduced": rep.reduced if rep else None,
                    "nu_reduced": rep.nu_reduced if rep else None,
                    "success": bool(rep and rep.success),
                    "basic_words": tuple(cand.rows.rows[i] for i, sp in enumerate(cand.spans) if sp.a < G.n0)
                    if cand.rows is not None
                    else (),
                }
            )
        if rep is not None and rep.success:
            pool.append((_rank_key(rep, order), rep))

    use_dual = dual is True or (dual == "auto" and 2 * G.k0 > G.n0)
    if use_dual:
        try:
            rep = dual_assisted_reduction(G, N, c, s, t, H)
        except ExhaustedError:
            rep = None
        if rep is not None and rep.success:
            pool.append((_rank_key(rep, len(results)), rep))

    bound = section_bound(G.n0, G.k0, nu, N)
    for _, rep in sorted(pool, key=lambda x: x[0]):
        ok, method = verify_reduction(G, rep.reduced, rep.shift_vector, N)
        if ok:
            notes = rep.notes + (f"section bound {bound.text}: {'holds' if bound else 'violated'}",)
            if truncated:
                notes += (f"searched {max_variants} of {total} characteristic matrices",)
            return _replace(rep, verification="pass", verification_method=method, check_matrix=H, notes=notes)
    if pool:
        raise VerificationError(f"{len(pool)} reducing candidates failed code-equality verification")
    msg = f"no reduction found for {G} with N={N}; section bound {bound.text} {'holds' if bound else 'violated'}"
    if truncated:
        msg += f"; searched {max_variants} of {total} characteristic matrices"
    err = ExhaustedError(msg)
    err.bound = bound
    err.structure = s
    raise err


def _rank_key(rep: ReductionReport, order: int):
    prof = state_profile(rep.reduced)
    return (
        rep.nu_reduced,
        rep.shifted_columns,
        sum(abs(x) for x in rep.shift_vector),
        rep.candidate.basic_rows if rep.candidate is not None else (),
        max(prof),
        sum(prof),
        order,
    )


def normalize_columns(G: PolyMatrix) -> tuple[PolyMatrix, tuple[int, ...]]:
    """Divide every column by its full monomial factor; returns the matrix and the shifts."""
    powers = tuple(column_monomial_factor(G, j) if any(G.col(j)) else 0 for j in range(G.n0))
    return _divided(G, powers), tuple(-p for p in powers)


def _replace(rep: ReductionReport, **kw) -> ReductionReport:
    from dataclasses import replace

    return replace(rep, **kw)


# ---------------------------------------------------------------- section bound

@dataclass(frozen=True)
class BoundResult:
    satisfied: bool
    n_max: float
    text: str

    def __bool__(self):
        return self.satisfied


def section_bound(n0: int, k0: int, nu: int, N: int) -> BoundResult:
    """k0((n0-k0)N + 1) <= n0(nu + k0), also returned as a bound on N."""
    ok = k0 * ((n0 - k0) * N + 1) <= n0 * (nu + k0)
    if n0 == k0:
        return BoundResult(ok, float("inf"), "N unbounded")
    n_max = (n0 * (nu + k0) - k0) // (k0 * (n0 - k0))
    if (n0, k0) == (2, 1):
        text = f"N <= 2*nu+1 = {n_max}"
    elif (n0, k0) == (3, 1):
        text = f"N <= floor(1.5*nu)+1 = {n_max}"
    elif (n0, k0) == (3, 2):
        text = f"N <= floor(1.5*nu)+2 = {n_max}"
    else:
        text = f"N <= {n_max}"
    return BoundResult(ok, n_max, text)


# ---------------------------------------------------------------- dual side

@dataclass(frozen=True)
class DualCandidate:
    basic_rows: tuple[int, ...]
    variant_index: int
    rows: BinaryMatrix
    spans: tuple[Span, ...]
    poly: PolyMatrix
    division: tuple[int, ...]
    swept: PolyMatrix


@dataclass(frozen=True)
class DualResult:
    H: PolyMatrix
    Ht: PolyMatrix
    Ht_tbgm: Tbgm
    Y: CharacteristicPair
    structure: SpanStructure
    selection: DualCandidate
    candidates: tuple[DualCandidate, ...]
    profile: tuple[int, ...]
    swept_profile: tuple[int, ...]

    @property
    def reducible(self) -> bool:
        return self.selection.swept.constraint_length < self.Ht.constraint_length


def dual_procedure(G: PolyMatrix, N: int, all_variants: bool = False) -> DualResult:
    """Shift-structured selection from a characteristic matrix of the dual code.

    Among all valid selections the one whose columns sweep down to the
    smallest constraint length is kept (ties: first found).
    """
    H = compute_check_matrix(G)
    Ht = reciprocal_dual(H)
    th = build_tbgm(Ht, N, G.memory)
    th.require_full_rank()
    Y = characteristic_matrix(th)
    s = analyze_spans(Y, Ht.n0, Ht.k0, N)
    found = []
    for vi, v in enumerate(_variant_stream(Y, s, all_variants)):
        for sub in itertools.combinations(range(Ht.n0), Ht.k0):
            cand = select_candidate(v, sub, th, vi)
            if not cand.accepted:
                continue
            plan = division_plan(cand.poly)
            found.append(DualCandidate(sub, vi, cand.rows, cand.spans, cand.poly, plan, _divided(cand.poly, plan)))
    if not found:
        raise ExhaustedError("no shift-structured selection generates the dual code")
    best = min(enumerate(found), key=lambda x: (x[1].swept.constraint_length, x[1].poly.constraint_length, x[0]))[1]
    return DualResult(
        H, Ht, th, Y, s, best, tuple(found), state_profile(best.poly), state_profile(best.swept)
    )


@dataclass(frozen=True)
class SimultaneousResult:
    G: PolyMatrix
    H: PolyMatrix
    shift_vector: tuple[int, ...]
    history: tuple[tuple[str, PolyMatrix, PolyMatrix], ...]


def _strip_content(H: PolyMatrix) -> PolyMatrix:
    rows = []
    for r in H.entries:
        v = min((valuation(e) for e in r if e), default=0)
        rows.append(tuple(e >> v for e in r))
    return H.with_rows(rows)


def _h_scale_column(H: PolyMatrix, j: int, e: int) -> PolyMatrix:
    """Multiply column j of H by D^e (e may be negative), then remove row monomial content."""
    rows = [list(r) for r in H.entries]
    for r in rows:
        if e >= 0:
            r[j] <<= e
        else:
            if r[j] and valuation(r[j]) < -e:
                lift = -e - valuation(r[j])
                for c in range(len(r)):
                    r[c] <<= lift
            r[j] >>= -e
    return _strip_content(H.with_rows(rows))


def _orthogonal(G: PolyMatrix, H: PolyMatrix) -> bool:
    return not any(any(r) for r in times_transpose(G, H).entries)


def _centered(powers: Sequence[int]) -> tuple[int, ...]:
    """Exponents c - p_j, with c chosen to minimize total and then largest shift."""
    lo, hi = min(powers), max(powers)
    best = min(
        range(lo, hi + 1),
        key=lambda c: (sum(abs(c - p) for p in powers), max(abs(c - p) for p in powers), c),
    )
    return tuple(best - p for p in powers)


def simultaneous_reduce(Gp: PolyMatrix, Hp: PolyMatrix, N: int, steps=None) -> SimultaneousResult:
    """Reduce G'(D) while carrying its check matrix along.

    Column j of G is divided by D^p exactly when column j of H is
    multiplied by D^p (and vice versa), so G H^T = 0 survives every step.
    Without explicit ``steps`` the exponents come from sweeping the column
    monomial factors of the reciprocal of Hp, balanced so the shifts are as
    small as possible; the result is then made basic and row-reduced.

    ``steps`` is a list of ("row_add", i, j, q), ("divide", j, p),
    ("multiply", j, q), ("basic",), ("reduce",) tuples.
    """
    if not _orthogonal(Gp, Hp):
        raise ValueError("G'(D) and H'(D) are not orthogonal")
    if steps is None:
        steps = _plan_steps(Gp, Hp)
    G, H = Gp, Hp
    shifts = [0] * G.n0
    history = [("start", G, H)]
    for step in steps:
        kind = step[0]
        if kind == "row_add":
            _, i, j, q = step
            G = row_add(G, i, j, q, N)
        elif kind == "scale_row":
            _, i, q = step
            if q > 0 and G.memory + q + 1 > N:
                raise SectionLengthError("row scaling exceeds the section budget")
            G = scale_row(G, i, q)
        elif kind == "divide":
            _, j, p = step
            G = divide_column(G, j, p)
            H = _h_scale_column(H, j, p)
            shifts[j] -= p
        elif kind == "multiply":
            _, j, q = step
            G = multiply_column(G, j, q, N)
            H = _h_scale_column(H, j, -q)
            shifts[j] += q
        elif kind == "basic":
            G = basic_equivalent(G)
        elif kind == "reduce":
            G = reduced_equivalent(G, N)
        else:
            raise ValueError(f"unknown step {step!r}")
        if not _orthogonal(G, H):
            raise AssertionError(f"orthogonality lost after {step}")
        history.append((" ".join(map(str, step)), G, H))
    return SimultaneousResult(G, H, tuple(shifts), tuple(history))


def _plan_steps(Gp: PolyMatrix, Hp: PolyMatrix) -> list:
    Ht = reciprocal_dual(Hp)
    exps = _centered(division_plan(Ht))
    steps = []
    G = Gp
    for j, e in enumerate(exps):
        if e < 0:
            for i, r in enumerate(G.entries):
                if r[j] and valuation(r[j]) < -e:
                    lift = -e - valuation(r[j])
                    steps.append(("scale_row", i, lift))
                    G = scale_row(G, i, lift)
            steps.append(("divide", j, -e))
            G = divide_column(G, j, -e)
    for j, e in enumerate(exps):
        if e > 0:
            steps.append(("multiply", j, e))
            G = multiply_column(G, j, e, None)
    steps.append(("basic",))
    steps.append(("reduce",))
    return steps


def dual_assisted_reduction(
    G: PolyMatrix,
    N: int,
    c: CharacteristicPair | None = None,
    s: SpanStructure | None = None,
    t: Tbgm | None = None,
    H: PolyMatrix | None = None,
) -> ReductionReport:
    """G' from the complement of the reversed dual selection, then simultaneous reduction."""
    if t is None:
        H, t = _preconditions(G, N)
    if c is None:
        c = characteristic_matrix(t)
        s = analyze_spans(c, G.n0, G.k0, N)
    d = dual_procedure(G, N)
    reversed_hat = {sp.reversed() for sp in d.selection.spans}
    S = [sp for sp in c.T if sp not in reversed_hat]
    if not is_shift_structured(S, G.n0, G.k0):
        raise ExhaustedError("dual selection does not induce a shift-structured primal selection")
    basic = tuple(sorted(sp.a for sp in S if sp.a < G.n0))
    for vi, v in enumerate(_variant_stream(c, s, False)):
        cand = select_candidate(v, basic, t, vi)
        if not cand.accepted:
            continue
        Hp = reciprocal_dual(d.selection.poly)
        if not _orthogonal(cand.poly, Hp):
            continue
        try:
            res = simultaneous_reduce(cand.poly, Hp, N)
        except (SectionLengthError, ValueError):
            continue
        nu2 = res.G.constraint_length
        return ReductionReport(
            original=G,
            N=N,
            nu=G.constraint_length,
            success=nu2 < G.constraint_length,
            reduced=res.G,
            nu_reduced=nu2,
            shift_vector=res.shift_vector,
            mode="dual-assisted" if nu2 < G.constraint_length else None,
            candidate=cand,
            notes=(f"dual selection {str(d.selection.poly)}, reciprocal check {str(Hp)}",),
        )
    raise ExhaustedError("no primal candidate matches the dual selection")


# ---------------------------------------------------------------- rank criterion

@dataclass(frozen=True)
class SelectionVerdict:
    conditions: dict
    predicted_rank: int | None
    direct_rank: int

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if not v]

    @property
    def ok(self) -> bool:
        return not self.failed

    @property
    def consistent(self) -> bool:
        return self.predicted_rank is None or self.predicted_rank == self.direct_rank


def dual_selection_check(
    X: BinaryMatrix,
    S: Sequence[Span],
    Y: BinaryMatrix,
    S_hat: Sequence[Span],
    T: Sequence[Span],
    T_hat: Sequence[Span],
    n0: int,
    k0: int,
) -> SelectionVerdict:
    """Check the six conditions under which the rows of X for S are independent."""
    T, T_hat = list(T), list(T_hat)
    n = X.ncols
    N = n // n0
    k = k0 * N
    Xs = X.select([T.index(sp) for sp in S])
    Ys = Y.select([T_hat.index(sp) for sp in S_hat])
    S_set = set(S)
    cond = {
        "i_primal_shift_structured": is_shift_structured(S, n0, k0),
        "ii_primal_no_inclusion": not any(a.includes(b) for a in S for b in T),
        "iii_dual_rank": rank(Ys) == n - k,
        "iv_dual_shift_structured": is_shift_structured(S_hat, n0, n0 - k0),
        "v_dual_no_inclusion": not any(a.includes(b) for a in S_hat for b in T_hat),
        "vi_reverse_complement": set(S_hat) == {sp.reversed() for sp in T if sp not in S_set},
    }
    predicted = k if all(cond.values()) else None
    return SelectionVerdict(cond, predicted, rank(Xs))
