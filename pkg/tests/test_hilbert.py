"""Series numerators, multiplicity tables, Hilbert polynomials, coarsening."""

import math
from fractions import Fraction

import pytest

from mixedmult import (
    EnumerationGuardError,
    HilbertSeriesRep,
    Ideal,
    InvariantViolation,
    LaurentPolyZ,
    NotMultihomogeneousError,
    coarsened_multiplicity,
    graded_piece_dim,
    hilbert_polynomial,
    irrelevant_ideal,
    k_polynomial,
    mixed_mult_series,
    monomial_dimension,
    quotient_dimension,
    series_coefficient,
    series_table,
)

from helpers import mk, p1xp1, random_monomial_ideal, ring_blocks

R = p1xp1()
DIAGONAL = mk(R, "x0*y1 - x1*y0")


def nbar() -> Ideal:
    return irrelevant_ideal(R)


# ---------------------------------------------------------------------------
# Dimension


def test_dimension_of_zero_ideal():
    assert monomial_dimension(Ideal(R, ())) == 4


def test_dimension_of_maximal_ideal():
    assert monomial_dimension(mk(R, "x0", "x1", "y0", "y1")) == 0


def test_dimension_of_one_mixed_monomial():
    assert monomial_dimension(mk(R, "x0*y1")) == 3


def test_dimension_of_zero_ring():
    assert monomial_dimension(mk(R, "1")) == -1


def test_dimension_rejects_non_monomial_generators():
    with pytest.raises(ValueError):
        monomial_dimension(DIAGONAL)


def test_dimension_guard_at_seventeen_variables():
    big = ring_blocks(tuple(f"v{i}" for i in range(17)))
    with pytest.raises(EnumerationGuardError):
        monomial_dimension(Ideal(big, ()))


def test_quotient_dimension_via_leading_terms():
    assert quotient_dimension(DIAGONAL) == 3
    assert quotient_dimension(nbar()) == 2
    assert quotient_dimension(Ideal(R, ())) == 4
    assert quotient_dimension(mk(R, "x0 - x1", "x0 + x1")) == 2


# ---------------------------------------------------------------------------
# K-polynomial numerators


def test_k_polynomial_of_zero_ideal():
    rep = k_polynomial(Ideal(R, ()))
    assert rep.numerator.as_dict() == {(0, 0): 1}
    assert rep.denominator_exponents == (2, 2)
    assert rep.shift is None


def test_k_polynomial_one_mixed_monomial():
    rep = k_polynomial(mk(R, "x0*y1"))
    assert rep.numerator.as_dict() == {(0, 0): 1, (1, 1): -1}


def test_k_polynomial_two_monomials():
    rep = k_polynomial(mk(R, "x0*y0", "x0*y1"))
    assert rep.numerator.as_dict() == {(0, 0): 1, (1, 1): -2, (1, 2): 1}


def test_k_polynomial_of_diagonal_matches_leading_term_ideal():
    assert k_polynomial(DIAGONAL).numerator.as_dict() == {
        (0, 0): 1,
        (1, 1): -1,
    }


def test_k_polynomial_rejects_inhomogeneous_generators():
    with pytest.raises(NotMultihomogeneousError):
        k_polynomial(mk(R, "x0 + y0"))
    with pytest.raises(NotMultihomogeneousError):
        k_polynomial(mk(R, "x0 + 1"))


def test_k_polynomial_shift_multiplies_numerator():
    plain = k_polynomial(DIAGONAL)
    shifted = k_polynomial(DIAGONAL.with_shift((1, 2)))
    assert shifted.shift == (1, 2)
    assert shifted.numerator == plain.numerator.shifted((1, 2))


def test_k_polynomial_pivot_rule_independence():
    for J in (DIAGONAL, mk(R, "x0*y0", "x0*y1"), nbar()):
        assert (
            k_polynomial(J, pivot_rule="default").numerator
            == k_polynomial(J, pivot_rule="antipodal").numerator
        )


def test_k_polynomial_unknown_pivot_rule():
    with pytest.raises(ValueError):
        k_polynomial(DIAGONAL, pivot_rule="sideways")


def test_series_coefficients_match_piece_dimensions():
    for J in (Ideal(R, ()), mk(R, "x0*y1"), mk(R, "x0*y0", "x0*y1"), nbar()):
        rep = k_polynomial(J)
        for a in range(4):
            for b in range(4):
                assert series_coefficient(rep, (a, b)) == graded_piece_dim(
                    J, (a, b)
                )


# ---------------------------------------------------------------------------
# Series-route multiplicity tables


def test_series_table_full_ring_two_by_two():
    table = mixed_mult_series(Ideal(R, ()))
    assert table.dimension == 4
    assert table.route == "series"
    assert table.entries == {(1, 1): 1}
    assert table.value((1, 1)) == 1
    assert table.value((2, 0)) == 0


def test_series_table_full_ring_three_by_two():
    ring = ring_blocks(("x0", "x1", "x2"), ("y0", "y1"))
    table = mixed_mult_series(Ideal(ring, ()))
    assert table.dimension == 5
    assert table.entries == {(2, 1): 1}


def test_series_table_diagonal():
    table = mixed_mult_series(DIAGONAL)
    assert table.dimension == 3
    assert table.entries == {(1, 0): 1, (0, 1): 1}


def test_series_table_irrelevant_ideal_has_negative_types():
    table = mixed_mult_series(nbar())
    assert table.dimension == 2
    assert table.entries == {(1, -1): 1, (-1, 1): 1}


def test_series_table_rejects_low_degree_contamination():
    # numerator 1 with claimed dimension 3 leaves a nonzero component below
    # the codimension level, which the extraction must refuse
    rep = HilbertSeriesRep(
        ring=R,
        numerator=LaurentPolyZ(2, [((0, 0), 1)]),
        denominator_exponents=(2, 2),
    )
    with pytest.raises(InvariantViolation):
        series_table(rep, 3)


def test_series_table_rejects_negative_multiplicity():
    rep = HilbertSeriesRep(
        ring=R,
        numerator=LaurentPolyZ(2, [((0, 0), -1)]),
        denominator_exponents=(2, 2),
    )
    with pytest.raises(InvariantViolation):
        series_table(rep, 4)


def test_series_table_additivity_on_direct_sums():
    J1 = DIAGONAL
    J2 = mk(R, "x0*y0", "x0*y1")
    rep1, rep2 = k_polynomial(J1), k_polynomial(J2)
    assert quotient_dimension(J1) == quotient_dimension(J2) == 3
    summed = HilbertSeriesRep(
        ring=R,
        numerator=rep1.numerator + rep2.numerator,
        denominator_exponents=(2, 2),
    )
    t1 = mixed_mult_series(J1)
    t2 = mixed_mult_series(J2)
    combined = series_table(summed, 3)
    keys = set(t1.entries) | set(t2.entries)
    assert combined.entries == {
        n: t1.value(n) + t2.value(n)
        for n in keys
        if t1.value(n) + t2.value(n)
    }


def test_series_table_additivity_drops_lower_dimension():
    # dim 2 summand contributes nothing at the dim 3 level
    rep1 = k_polynomial(DIAGONAL)
    rep2 = k_polynomial(nbar())
    summed = HilbertSeriesRep(
        ring=R,
        numerator=rep1.numerator + rep2.numerator,
        denominator_exponents=(2, 2),
    )
    assert series_table(summed, 3).entries == mixed_mult_series(DIAGONAL).entries


# ---------------------------------------------------------------------------
# Hilbert polynomials


def test_polynomial_full_ring_closed_form():
    for sizes in ((2, 2), (3, 2)):
        ring = ring_blocks(
            tuple(f"x{i}" for i in range(sizes[0])),
            tuple(f"y{i}" for i in range(sizes[1])),
        )
        poly = hilbert_polynomial(Ideal(ring, ()))
        n, m = sizes
        assert poly.total_degree() == n + m - 2
        for a in range(5):
            for b in range(5):
                expected = math.comb(a + n - 1, n - 1) * math.comb(
                    b + m - 1, m - 1
                )
                assert poly.evaluate_int((a, b)) == expected


def test_polynomial_full_ring_exact_coefficients():
    poly = hilbert_polynomial(Ideal(R, ()))
    one = Fraction(1)
    assert poly.coefficients == {
        (0, 0): one,
        (1, 0): one,
        (0, 1): one,
        (1, 1): one,
    }


def test_polynomial_of_irrelevant_ideal_is_zero():
    poly = hilbert_polynomial(nbar())
    assert poly.coefficients == {}
    assert poly.total_degree() is None
    assert poly.leading_table().dimension is None
    assert poly.leading_table().entries == {}


def test_polynomial_of_diagonal():
    poly = hilbert_polynomial(DIAGONAL)
    one = Fraction(1)
    assert poly.coefficients == {(0, 0): one, (1, 0): one, (0, 1): one}
    assert poly.validity_threshold == (1, 1)
    table = poly.leading_table()
    assert table.dimension == 1
    assert table.entries == {(1, 0): 1, (0, 1): 1}


def test_polynomial_matches_pieces_beyond_threshold():
    for J in (DIAGONAL, mk(R, "x0*y0", "x0*y1"), mk(R, "x0^2*y1", "x1*y0")):
        poly = hilbert_polynomial(J)
        base = tuple(max(t, 0) for t in poly.validity_threshold)
        for da in range(4):
            for db in range(4):
                nu = (base[0] + da, base[1] + db)
                assert poly.evaluate_int(nu) == graded_piece_dim(J, nu)


# ---------------------------------------------------------------------------
# Graded pieces


def test_piece_of_free_module():
    assert graded_piece_dim(Ideal(R, ()), (2, 3)) == 12


def test_piece_of_diagonal():
    assert graded_piece_dim(DIAGONAL, (1, 1)) == 3


def test_piece_of_irrelevant_ideal_vanishes_in_mixed_degrees():
    assert graded_piece_dim(nbar(), (1, 1)) == 0
    assert graded_piece_dim(nbar(), (2, 0)) == 3


def test_piece_respects_shift():
    shifted = DIAGONAL.with_shift((1, 1))
    assert graded_piece_dim(shifted, (2, 2)) == graded_piece_dim(
        DIAGONAL, (1, 1)
    )
    # below the shift nothing lives
    assert graded_piece_dim(shifted, (0, 0)) == 0


def test_piece_enumeration_guard():
    big = ring_blocks(tuple(f"v{i}" for i in range(10)))
    with pytest.raises(EnumerationGuardError):
        graded_piece_dim(Ideal(big, ()), (40,))


# ---------------------------------------------------------------------------
# Coarsened multiplicity


def test_coarsened_full_ring():
    assert coarsened_multiplicity(Ideal(R, ())) == 1


def test_coarsened_diagonal():
    assert coarsened_multiplicity(DIAGONAL) == 2


def test_coarsened_irrelevant_ideal():
    assert coarsened_multiplicity(nbar()) == 2


def test_coarsened_zero_ring():
    assert coarsened_multiplicity(mk(R, "1")) == 0


def test_coarsening_identity_on_examples():
    for J in (Ideal(R, ()), DIAGONAL, nbar(), mk(R, "x0*y0", "x0*y1")):
        assert coarsened_multiplicity(J) == mixed_mult_series(J).total()


# ---------------------------------------------------------------------------
# Property corpus: seeded random monomial ideals


CORPUS = [random_monomial_ideal(seed) for seed in range(8)]


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_corpus_extraction_invariants_hold(idx):
    # the extraction itself asserts vanishing below the codimension level,
    # nonnegativity and support bounds; reaching the table is the test
    J = CORPUS[idx]
    table = mixed_mult_series(J)
    d = quotient_dimension(J)
    assert table.dimension == d
    D = J.ring.block_sizes
    for n, v in table.entries.items():
        assert v > 0
        assert all(k >= -1 for k in n)
        assert sum(k + 1 for k in n) == d
        assert all(k + 1 <= Di for k, Di in zip(n, D))


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_corpus_shift_invariance(idx):
    J = CORPUS[idx]
    base = mixed_mult_series(J)
    for shift in ((1, 2), (3, 1), (2, 2)):
        shifted = mixed_mult_series(J.with_shift(shift))
        assert shifted.entries == base.entries
        assert shifted.dimension == base.dimension


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_corpus_pivot_independence(idx):
    J = CORPUS[idx]
    assert (
        k_polynomial(J, pivot_rule="default").numerator
        == k_polynomial(J, pivot_rule="antipodal").numerator
    )


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_corpus_polynomial_matches_pieces(idx):
    J = CORPUS[idx]
    poly = hilbert_polynomial(J)
    base = tuple(max(t, 0) for t in poly.validity_threshold)
    for da in range(4):
        for db in range(4):
            nu = (base[0] + da, base[1] + db)
            assert poly.evaluate_int(nu) == graded_piece_dim(J, nu)
