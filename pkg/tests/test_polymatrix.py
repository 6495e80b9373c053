import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import gf2_rank, tbgm_rows
from tbreduce import (
    PolyMatrix,
    basic_equivalent,
    compute_check_matrix,
    divide_column,
    expand,
    metrics,
    multiply_column,
    parse_octal,
    parse_poly_matrix,
    reciprocal_dual,
    row_add,
    validate_canonical,
)
from tbreduce.errors import (
    DegenerateColumnError,
    NonDivisibleError,
    ParseError,
    SectionLengthError,
)
from tbreduce.poly import pdeg, pdivmod, pgcd, pmod, pmul, poly_from_str, poly_to_str, preverse, valuation
from tbreduce.polymatrix import (
    column_monomial_factor,
    format_octal,
    invariant_factors,
    maximal_minors,
    octal_codec,
    rational_rank,
    reduced_equivalent,
    scale_row,
    smith_form,
    times_transpose,
)

P = parse_poly_matrix
polys = st.integers(0, (1 << 8) - 1)
nonzero = st.integers(1, (1 << 8) - 1)


def encoders(max_n0=4, max_k0=2, max_deg=3):
    return st.integers(2, max_n0).flatmap(
        lambda n0: st.integers(1, min(max_k0, n0 - 1)).flatmap(
            lambda k0: st.lists(
                st.lists(st.integers(0, (1 << (max_deg + 1)) - 1), min_size=n0, max_size=n0).map(tuple),
                min_size=k0,
                max_size=k0,
            ).map(lambda rows: PolyMatrix(tuple(rows)))
        )
    )


# -- scalar polynomials ----------------------------------------------------


def test_poly_basics():
    assert pdeg(0) == -1 and pdeg(1) == 0 and pdeg(0b1011) == 3
    assert valuation(0b1100) == 2
    assert pmul(0b11, 0b11) == 0b101
    assert pdivmod(0b111, 0b11) == (0b10, 0b1)
    assert pgcd(0b1010, 0b110) == 0b110
    assert preverse(0b011, 2) == 0b110
    assert preverse(0b011, 3) == 0b1100


def test_poly_text():
    assert poly_to_str(0b111) == "1+D+D^2"
    assert poly_to_str(0) == "0"
    assert poly_from_str("D**2 + 1") == 0b101
    assert poly_from_str("D^3+D") == 0b1010
    with pytest.raises(ParseError):
        poly_from_str("1+X")


@given(polys, nonzero)
def test_divmod_identity(a, b):
    q, r = pdivmod(a, b)
    assert pmul(q, b) ^ r == a
    assert pdeg(r) < pdeg(b)


@given(nonzero, nonzero)
def test_gcd_divides(a, b):
    g = pgcd(a, b)
    assert pmod(a, g) == 0 and pmod(b, g) == 0


@given(polys)
def test_poly_text_round_trip(p):
    assert poly_from_str(poly_to_str(p)) == p


# -- octal codec -----------------------------------------------------------


def test_octal_examples():
    assert octal_codec("7") == P("1+D+D^2")
    assert parse_octal("(6,7)").constraint_length == 2
    G = parse_octal("(50,64)")
    assert G == P("1+D^2, 1+D+D^3") and G.constraint_length == 3
    assert octal_codec("0").entries == ((0,),)
    assert parse_octal("(7,5)") == P("1+D+D^2, 1+D^2")
    assert format_octal(P("1+D+D^2+D^3, 1+D^2+D^3")) == "(74,54)"
    with pytest.raises(ParseError):
        parse_octal("(8,1)")


@given(encoders())
def test_octal_round_trip(G):
    assert parse_octal(format_octal(G)) == G


@given(encoders())
def test_poly_grid_round_trip(G):
    assert P(str(G)) == G


# -- expansion and metrics -------------------------------------------------


def test_expand_examples():
    assert [m.to_strings() for m in expand(P("1+D, D, 1+D")).matrices] == [["101"], ["111"]]
    assert [m.to_strings() for m in expand(P("1+D+D^2, 1+D^2")).matrices] == [["11"], ["10"], ["11"]]
    assert len(expand(P("1, 0; 0, 1")).matrices) == 1


@given(encoders())
def test_expand_reassemble(G):
    assert expand(G).reassemble() == G


def test_metrics_examples():
    m = metrics(P("1+D, D, 1; D^2, 1, 1+D+D^2"))
    assert (m.constraint_length, m.row_degrees) == (3, (1, 2))
    assert metrics(P("D^3, 1+D")).constraint_length == 3
    assert P("0, 0; 1, D").row_degrees == (0, 1)


# -- column and row transforms ---------------------------------------------


def test_column_monomial_factor_examples():
    assert column_monomial_factor(P("D^3, 1+D"), 0) == 3
    assert column_monomial_factor(P("D^3, 1+D"), 1) == 0
    Hp = P("D+D^2, D^3, 1")
    assert column_monomial_factor(Hp, 0) == 1
    assert column_monomial_factor(Hp, 1) == 3
    with pytest.raises(DegenerateColumnError):
        column_monomial_factor(P("0, 1"), 0)


def test_divide_column_examples():
    assert divide_column(P("D^3, 1+D"), 0, 2) == P("D, 1+D")
    assert divide_column(P("1+D^2, D^3"), 1, 1) == P("1+D^2, D^2")
    assert divide_column(P("1+D^2, D^3"), 1, 0) == P("1+D^2, D^3")
    with pytest.raises(NonDivisibleError):
        divide_column(P("D^3, 1+D"), 1, 1)


def test_multiply_column_examples():
    G3 = P("1+D, 1, 1; D, D, 1")
    assert multiply_column(G3, 2, 1, 5) == P("1+D, 1, D; D, D, D")
    assert multiply_column(G3, 2, 0, 5) == G3
    with pytest.raises(SectionLengthError):
        multiply_column(G3, 2, 4, 5)


def test_row_add_examples():
    Gp = P("1+D, D, 1; D^2, 0, 1+D")
    assert row_add(Gp, 0, 1, 1, 5) == P("1+D, D, 1; D, D^2, 1")
    assert row_add(row_add(Gp, 0, 1, 1, 5), 0, 1, 1, 5) == Gp
    with pytest.raises(ValueError):
        row_add(Gp, 0, 0, 0, 5)


def test_scale_row():
    assert scale_row(P("D, D^2; 1, 1"), 0, -1) == P("1, D; 1, 1")
    assert scale_row(P("1, 1"), 0, 2) == P("D^2, D^2")


@given(encoders(), st.data())
def test_divide_multiply_round_trip(G, data):
    j = data.draw(st.integers(0, G.n0 - 1))
    q = data.draw(st.integers(0, 4))
    assert divide_column(multiply_column(G, j, q, None), j, q) == G


two_row = st.lists(st.lists(st.integers(0, 7), min_size=3, max_size=3).map(tuple), min_size=2, max_size=2).map(
    lambda rows: PolyMatrix(tuple(rows))
)


@settings(max_examples=40)
@given(two_row, st.data())
def test_row_add_preserves_tbgm_row_space(G, data):
    q = data.draw(st.integers(0, 1))
    N = G.memory + q + 2
    moved = row_add(G, 0, 1, q, N)
    a, b = tbgm_rows(G.entries, N), tbgm_rows(moved.entries, N)
    n = G.n0 * N
    assert gf2_rank(a, n) == gf2_rank(b, n) == gf2_rank(a + b, n)


# -- canonical forms ---------------------------------------------------------


def test_validate_canonical_examples():
    G4 = P("1+D, 1, D; D, D, D")
    d = validate_canonical(G4)
    assert not d.basic and not d.canonical
    assert validate_canonical(P("1+D+D^2, 1+D^2")).canonical
    assert validate_canonical(P("1, 0; 0, 1")).canonical
    assert validate_canonical(P("1+D, D, 1; D^2, 1, 1+D+D^2")).canonical


def test_basic_equivalent_examples():
    assert basic_equivalent(P("1+D, 1, D; D, D, D")) == P("1+D, 1, D; 1, 1, 1")
    assert basic_equivalent(P("D, D")) == P("1, 1")
    G = P("1+D, D, 1; D^2, 1, 1+D+D^2")
    assert basic_equivalent(G) == G


def test_reduced_equivalent():
    G = reduced_equivalent(P("1+D, 1, D; D, 0, 1+D"))
    assert G == P("1+D, 1, D; 1, 1, 1")
    assert validate_canonical(G).canonical


def test_smith_form():
    G = P("1+D, 1, D; D, D, D")
    U, S, V = smith_form(G)
    prod = times_transpose(times_transpose(U, G.transpose()), V.transpose())
    assert prod == S
    assert invariant_factors(G) == (1, 0b10)


@settings(max_examples=40)
@given(encoders(max_n0=3, max_k0=2, max_deg=2))
def test_basic_equivalent_properties(G):
    assume(rational_rank(G.entries) == G.k0)
    B = basic_equivalent(G)
    assert validate_canonical(B).basic
    assert rational_rank(G.entries + B.entries) == G.k0


# -- duals -------------------------------------------------------------------


def test_reciprocal_dual_examples():
    G = P("1+D, D, 1; D^2, 1, 1+D+D^2")
    H = compute_check_matrix(G)
    assert reciprocal_dual(H) == P("1+D+D^2+D^3, 1+D+D^3, 1+D^2+D^3")
    pal = P("1+D+D^2, 1+D^2")
    assert reciprocal_dual(pal) == pal
    assert reciprocal_dual(reciprocal_dual(H)) == H


def test_check_matrix_examples():
    G = P("1+D+D^2, 1+D^2")
    H = compute_check_matrix(G)
    assert H == P("1+D^2, 1+D+D^2")
    assert times_transpose(G, H) == PolyMatrix(((0,),))
    assert compute_check_matrix(P("1")).k0 == 0


@settings(max_examples=40, deadline=None)
@given(encoders(max_n0=4, max_k0=2, max_deg=2))
def test_check_matrix_properties(G):
    assume(rational_rank(G.entries) == G.k0 and validate_canonical(G).canonical)
    H = compute_check_matrix(G)
    assert H.k0 == G.n0 - G.k0
    assert all(all(x == 0 for x in row) for row in times_transpose(G, H).entries)
    assert sum(H.row_degrees) == G.constraint_length
    assert validate_canonical(H).canonical


def test_maximal_minors():
    minors = maximal_minors(P("1+D, D, 1; D^2, 1, 1+D+D^2"))
    assert len(minors) == 3
    assert pgcd(pgcd(*list(minors.values())[:2]), list(minors.values())[2]) == 1
