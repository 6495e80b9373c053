"""Acceptance criteria 1-10.  Each criterion's verdict is printed in the terminal summary."""

import json
import sys

import pytest

from corpus import corpus
from oracles import (
    gf2_rank,
    coverage_count,
    profile_by_rank,
    shifted,
    tb_codewords,
    tbgm_rows,
    word_fits_span,
)
from tbreduce import (
    Span,
    analyze_spans,
    build_tb_trellis,
    build_tbgm,
    characteristic_matrix,
    code_of,
    codes_equal,
    compute_check_matrix,
    compute_msf_bases,
    divide_column,
    dual_procedure,
    dual_selection_check,
    enumerate_variants,
    multiply_column,
    parse_octal,
    parse_poly_matrix,
    reciprocal_dual,
    row_add,
    search_reduction,
    section_bound,
    shift_code,
    simultaneous_reduce,
    state_profile,
    verify_characteristic,
    verify_duality,
)
from tbreduce.cli import main
from tbreduce.errors import ExhaustedError
from tbreduce.gf2 import word_from_str
from tbreduce.reduction import normalize_columns, select_candidate


def spans(*pairs, n):
    return {Span(a, b, n) for a, b in pairs}


def pairs_of(ts):
    return [(s.a, s.b) for s in ts]


def check_characteristic(c, entries, N):
    """Properties 1-4 checked against the oracle only."""
    n = c.n
    code_rows = tbgm_rows(entries, N)
    k = gf2_rank(code_rows, n)
    assert gf2_rank(c.X.rows, n) == k
    assert gf2_rank(list(c.X.rows) + code_rows, n) == k
    for w, s in zip(c.X.rows, c.T):
        assert word_fits_span(w, s.a, s.b, n), (w, s)
    assert len({s.a for s in c.T}) == n
    assert len({s.b for s in c.T}) == n
    assert coverage_count(pairs_of(c.T), n) == [n - k] * n


# -- 1 ---------------------------------------------------------------------


@pytest.mark.criterion(1, "(1+D, D, 1+D) N=3: span list, characteristic-matrix checks, per-shift MSF bases")
def test_criterion_01_rate_third(capsys):
    G = parse_poly_matrix("1+D, D, 1+D")
    t = build_tbgm(G, 3)
    c = characteristic_matrix(t)
    expected = spans((0, 5), (1, 7), (2, 0), (3, 8), (4, 1), (5, 3), (6, 2), (7, 4), (8, 6), n=9)
    assert set(c.T) == expected
    assert verify_characteristic(c, t).ok
    check_characteristic(c, G.entries, 3)

    words = [word_from_str(s) for s in ("101111000", "000101111", "010010010")]
    basis_spans = [
        [(0, 5), (3, 8), (1, 7)],
        [(2, 0), (3, 8), (1, 7)],
        [(2, 0), (3, 8), (4, 1)],
    ]
    for basis, want in zip(compute_msf_bases(t), basis_spans):
        rows, sp = basis.unshifted()
        assert list(rows.rows) == words
        assert pairs_of(sp) == want

    assert main(["characteristic", "--poly", "1+D,D,1+D", "-N", "3", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert {tuple(p) for p in out["characteristic"]["spans"]} == {(s.a, s.b) for s in expected}


# -- 2 ---------------------------------------------------------------------


@pytest.mark.criterion(2, "[1+D, D, 1+D; D, 1, 1] N=3: basic spans, theta, variant count, ell")
def test_criterion_02_rate23():
    G = parse_poly_matrix("1+D, D, 1+D; D, 1, 1")
    t = build_tbgm(G, 3)
    c = characteristic_matrix(t)
    s = analyze_spans(c, 3, 2, 3)
    assert set(s.T0) == spans((0, 4), (1, 3), (2, 5), n=9)
    assert s.theta == 1
    assert s.variant_count == 8
    assert s.ell == 12 == 3 * ((3 - 2) * 3 + 1)
    assert sum(x.length for x in s.T0) == 12


# -- 3 ---------------------------------------------------------------------


@pytest.mark.criterion(3, "(7,5) N=5 reduces to (D, 1+D) with shifts (-2, 0), verified on 32 codewords")
def test_criterion_03_seven_five(capsys):
    G = parse_poly_matrix("1+D+D^2, 1+D^2")
    rep = search_reduction(G, 5)
    assert rep.reduced == parse_poly_matrix("D, 1+D")
    assert (rep.nu, rep.nu_reduced) == (2, 1)
    assert tuple(rep.shift_vector) == (-2, 0)
    assert rep.verification == "pass"

    original = tb_codewords(G.entries, 5)
    reduced = tb_codewords(rep.reduced.entries, 5)
    assert len(original) == len(reduced) == 32
    assert {shifted(w, (-2, 0), 2, 5) for w in original} == reduced

    w = word_from_str("1101100111")
    w_m = word_from_str("1101101101")
    assert w in original and w_m in reduced
    assert shifted(w, (-2, 0), 2, 5) == w_m

    assert main(["reduce", "--poly", "1+D+D^2, 1+D^2", "-N", "5"]) == 0
    out = capsys.readouterr().out
    assert "(D, 1+D)" in out and "(-2, 0)" in out


# -- 4 ---------------------------------------------------------------------

X_PRIME = (
    "111011110000 011001100000 001110111100 000110011000 000011101111 000001100110 "
    "110000111011 100000011001 111100001110 011000000110 101111000011 100110000001"
).split()


@pytest.mark.criterion(4, "(74,54) N=6: reduction via (1+D^2, D^3); the alternative X' gives none")
def test_criterion_04_g7454():
    G = parse_poly_matrix("1+D+D^2+D^3, 1+D^2+D^3")
    t = build_tbgm(G, 6)
    transcript = []
    rep = search_reduction(G, 6, all_variants=True, transcript=transcript)
    assert rep.candidate.poly == parse_poly_matrix("1+D^2, D^3")
    assert rep.reduced == parse_poly_matrix("1+D^2, D^2")
    assert tuple(rep.shift_vector) == (0, -1)
    assert {shifted(w, (0, -1), 2, 6) for w in tb_codewords(G.entries, 6)} == tb_codewords(rep.reduced.entries, 6)

    c = characteristic_matrix(t)
    s = analyze_spans(c, 2, 1, 6)
    target = {word_from_str(r) for r in X_PRIME}
    idx = [i for i, v in enumerate(enumerate_variants(c, s, all_variants=True)) if set(v.X.rows) == target]
    assert len(idx) == 1
    tried = [e for e in transcript if e["variant"] == idx[0]]
    assert tried and not any(e["success"] for e in tried)
    assert any(e["success"] for e in transcript)


# -- 5 ---------------------------------------------------------------------

WORKED_CASES = [
    ("1+D+D^4, 1+D^2+D^3+D^4", 6, "D^2, 1+D", "D, 1+D"),
    ("1+D+D^2+D^3+D^4+D^5, 1+D^3+D^5", 10, "D^4+D^5, 1+D+D^4", "D^3+D^4, 1+D+D^4"),
    ("1+D+D^4+D^5+D^6, 1+D^2+D^3+D^4+D^6", 8, "D+D^2+D^3, 1+D^2+D^3", "D+D^2+D^3, 1+D^2+D^3"),
    ("1+D+D^2+D^3+D^6, 1+D^2+D^3+D^5+D^6", 8, "1+D^2+D^3, D^2+D^3+D^4", "1+D^2+D^3, D+D^2+D^3"),
    ("1+D+D^2+D^3, 1+D+D^3, 1+D^2+D^3", 5, "D+D^2, D^3, 1", "1+D, D, 1"),
    ("D+D^2, 1+D, 1+D+D^2; 1, 1+D^2, 1+D^2", 6, "D^2, 1+D, D; D, 0, 1+D^2", "D, 1+D, D; 1, 0, 1+D^2"),
]


@pytest.mark.criterion(5, "six worked cases: G' and final encoder, oracle-verified")
@pytest.mark.parametrize("case", range(len(WORKED_CASES)), ids=[f"case{i + 1}" for i in range(len(WORKED_CASES))])
def test_criterion_05_worked_cases(case):
    g, N, gp, final = WORKED_CASES[case]
    G = parse_poly_matrix(g)
    rep = search_reduction(G, N)
    assert rep.candidate.poly == parse_poly_matrix(gp)
    assert rep.reduced == parse_poly_matrix(final)
    assert rep.nu_reduced < rep.nu
    if G.k0 * N <= 16:
        original = tb_codewords(G.entries, N)
        assert {shifted(w, rep.shift_vector, G.n0, N) for w in original} == tb_codewords(rep.reduced.entries, N)
    else:
        assert rep.verification == "pass"


# -- 6 ---------------------------------------------------------------------


@pytest.mark.criterion(6, "rate-2/3 nu=3 N=5: dual pipeline to [[1+D,1,D],[1,1,1]] with shifts (0,-1,+1)")
def test_criterion_06_rate23_dual():
    G = parse_poly_matrix("1+D, D, 1; D^2, 1, 1+D+D^2")
    N = 5
    Ht = reciprocal_dual(compute_check_matrix(G))
    assert Ht == parse_poly_matrix("1+D+D^2+D^3, 1+D+D^3, 1+D^2+D^3")

    d = dual_procedure(G, N)
    T_hat = [(0, 11), (1, 12), (2, 10), (3, 14), (4, 0), (5, 13), (6, 2), (7, 3),
             (8, 1), (9, 5), (10, 6), (11, 4), (12, 8), (13, 9), (14, 7)]
    assert set(d.Y.T) == spans(*T_hat, n=15)
    assert d.selection.poly == parse_poly_matrix("D+D^2, D^3, 1")

    t = build_tbgm(G, N)
    c = characteristic_matrix(t)
    reversed_hat = {s.reversed() for s in d.selection.spans}
    S = [s for s in c.T if s not in reversed_hat]
    basic = tuple(sorted(s.a for s in S if s.a < 3))
    Gp = select_candidate(c, basic, t).poly
    res = simultaneous_reduce(Gp, reciprocal_dual(d.selection.poly), N)
    assert res.G == parse_poly_matrix("1+D, 1, D; 1, 1, 1")
    assert tuple(res.shift_vector) == (0, -1, 1)

    original = tb_codewords(G.entries, N)
    assert len(original) == 1024
    assert {shifted(w, (0, -1, 1), 3, N) for w in original} == tb_codewords(res.G.entries, N)
    assert shifted(word_from_str("011001110001101"), (0, -1, 1), 3, N) == word_from_str("001011101000111")

    verdict = dual_selection_check(c.X, S, d.Y.X, d.selection.spans, c.T, d.Y.T, 3, 2)
    assert verdict.ok and not verdict.failed
    assert verdict.predicted_rank == verdict.direct_rank == 10
    assert gf2_rank([c.row_for_span(s) for s in S], 15) == 10

    rep = search_reduction(G, N)
    assert rep.reduced == res.G and rep.mode == "dual-assisted"


# -- 7 ---------------------------------------------------------------------


@pytest.mark.criterion(7, "negative control: (7,5) N=6 exhausted, section bound violated")
def test_criterion_07_negative_control(capsys):
    G = parse_poly_matrix("1+D+D^2, 1+D^2")
    with pytest.raises(ExhaustedError) as exc:
        search_reduction(G, 6)
    assert not exc.value.bound.satisfied
    assert "N <= 2*nu+1 = 5" in str(exc.value)
    b = section_bound(2, 1, 2, 6)
    assert not b and b.n_max == 5
    assert set(exc.value.structure.T0) == spans((0, 5), (1, 8), n=12)
    assert main(["reduce", "--octal", "(7,5)", "-N", "6"]) == 3
    assert "violated" in capsys.readouterr().out


# -- 8 ---------------------------------------------------------------------


@pytest.mark.criterion(8, "(50,64) N=5 to (6,7) and (46,60) N=6 to (54,60), equal modulo shifts")
@pytest.mark.parametrize(
    "octal, N, target, nu_target",
    [("(50,64)", 5, "(6,7)", 2), ("(46,60)", 6, "(54,60)", 3)],
)
def test_criterion_08_known_pairs(octal, N, target, nu_target):
    G = parse_octal(octal)
    T = parse_octal(target)
    rep = search_reduction(G, N)
    assert rep.nu_reduced == nu_target == T.constraint_length
    normal, extra = normalize_columns(rep.reduced)
    assert normal == T
    total = tuple(a + b for a, b in zip(rep.shift_vector, extra))
    assert codes_equal(shift_code(code_of(G, N), total, G.n0, N), code_of(T, N))
    assert {shifted(w, total, G.n0, N) for w in tb_codewords(G.entries, N)} == tb_codewords(T.entries, N)


# -- 9 ---------------------------------------------------------------------

CORPUS = corpus()


@pytest.mark.criterion(9, "property suites over a seeded corpus of random canonical encoders")
@pytest.mark.parametrize("idx", range(len(CORPUS)), ids=[f"{G}-N{N}" for G, N in CORPUS])
def test_criterion_09_properties(idx):
    G, N = CORPUS[idx]
    n0, k0 = G.n0, G.k0
    n, k = n0 * N, k0 * N
    L = G.memory
    t = build_tbgm(G, N)
    c = characteristic_matrix(t)

    check_characteristic(c, G.entries, N)
    assert sum(s.length - 1 for s in c.T) == n * (n - k)

    s = analyze_spans(c, n0, k0, N)
    rotated = {x.shift(i * n0) for x in s.T0 for i in range(N)}
    assert set(c.T) == rotated
    assert sum(x.length for x in s.T0) == n0 * ((n0 - k0) * N + 1)

    Ht = reciprocal_dual(compute_check_matrix(G))
    th = build_tbgm(Ht, N)
    for g in tbgm_rows(G.entries, N):
        for h in tbgm_rows(Ht.entries, N):
            assert bin(g & h).count("1") % 2 == 0
    assert verify_duality(t, th)

    blocks = 2 * L + 3
    assert state_profile(G) == state_profile(Ht) == profile_by_rank(G.entries, blocks, (blocks + L) // 2)

    for j in range(n0):
        for q in (1, 2):
            sections = N if q + L + 1 <= N else None
            assert divide_column(multiply_column(G, j, q, sections), j, q) == G

    base = tbgm_rows(G.entries, N)
    for i in range(k0):
        for j in range(k0):
            if i != j and L + 2 <= N:
                moved = row_add(G, i, j, 1, N)
                rows = tbgm_rows(moved.entries, N)
                assert gf2_rank(base, n) == gf2_rank(rows, n) == gf2_rank(base + rows, n)

    assert set(build_tb_trellis(G, N).tb_words()) == tb_codewords(G.entries, N)


def test_corpus_shape():
    assert len(CORPUS) >= 20
    for G, N in CORPUS:
        assert G.n0 <= 4 and G.constraint_length <= 4 and N <= 8


# -- 10 --------------------------------------------------------------------


@pytest.mark.criterion(10, "rate-2/3 N=3 full enumeration: 2^(theta N) = 8 distinct valid matrices")
def test_criterion_10_counting():
    G = parse_poly_matrix("1+D, D, 1+D; D, 1, 1")
    t = build_tbgm(G, 3)
    c = characteristic_matrix(t)
    s = analyze_spans(c, 3, 2, 3)
    variants = list(enumerate_variants(c, s, all_variants=True))
    assert len(variants) == 2 ** (s.theta * 3) == 8
    assert len({(v.X, v.T) for v in variants}) == 8
    for v in variants:
        assert verify_characteristic(v, t).ok
        check_characteristic(v, G.entries, 3)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
