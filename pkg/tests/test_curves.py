"""Curve counting series, knot comparisons, quotient module slices."""

import pytest

from gkmslice.curves import (
    ALTERNATE_FACTOR,
    PUNCTUAL_FACTOR,
    QL_RING,
    conjecture_vs_msv,
    family_quotient_identity,
    grdim_family_check,
    knot_compare,
    knot_substitution,
    line_series,
    msv_assemble,
    node_series,
    pair_diff_kernel,
    punctual_series,
    quotient_hilbert_slice,
    tacnode_closed_form,
    tacnode_spec,
    three_lines_closed_form,
    three_lines_spec,
    torus_2_4_reference,
    torus_3_3_reference,
)
from gkmslice.rings import MultiPoly
from gkmslice.series import RationalSeries, equal_up_to_monomial


def test_three_lines_golden_identity():
    assert msv_assemble(three_lines_spec()) == three_lines_closed_form()


def test_tacnode_golden_identity():
    assert msv_assemble(tacnode_spec()) == tacnode_closed_form()


def test_node_series_decomposition():
    # (1 - q + q^2 L)/((1-q)^2 (1-qL)^2) = 1/((1-q)^2(1-qL)^2) - q/((1-q)^2(1-qL))
    one = MultiPoly.one(QL_RING)
    q = MultiPoly.gen(QL_RING, "q")
    L = MultiPoly.gen(QL_RING, "L")
    lhs = RationalSeries(one, ((one - q, 2), (one - q * L, 2))) - RationalSeries(
        q, ((one - q, 2), (one - q * L, 1))
    )
    assert lhs == node_series()


def test_line_series_expansion():
    # one smooth branch: qL + q^2(L + L^2) + ... (box counts)
    q = MultiPoly.gen(QL_RING, "q")
    L = MultiPoly.gen(QL_RING, "L")
    t = line_series().expand(2, ["q"])
    assert t == q * L + q * q * (L + L * L)


def test_knot_t24_normalization_zero():
    report = knot_compare("T(2,4)")
    assert report.ok and report.shift == 0
    assert report.factor_used == PUNCTUAL_FACTOR


def test_knot_t33_normalization_three():
    report = knot_compare("T33")
    assert report.ok and report.shift == 3
    assert report.alternate_factor == ALTERNATE_FACTOR


def test_alternate_punctual_factor_fails():
    # the (1 - L^2)^r factor does not reproduce the reference series
    one = MultiPoly.one(QL_RING)
    L = MultiPoly.gen(QL_RING, "L")
    alt = msv_assemble(tacnode_spec()) * RationalSeries((one - L * L) ** 2)
    mapped = knot_substitution(alt)
    assert equal_up_to_monomial(mapped, torus_2_4_reference(), "T") is None


def test_unknown_link_rejected():
    with pytest.raises(ValueError):
        knot_compare("T(5,5)")


def test_pair_diff_kernel_small():
    # ker(d/dy1 - d/dy2) on linear forms in y: spanned by y1 + y2 (n = 2)
    basis = pair_diff_kernel(2, 1, 2, 1, 1)
    assert len(basis) == 1
    rg = basis[0].ring
    y1, y2 = MultiPoly.gen(rg, "y1"), MultiPoly.gen(rg, "y2")
    assert basis[0] == y1 + y2
    # n = 3 adds the untouched variable y3
    assert len(pair_diff_kernel(3, 1, 2, 1, 1)) == 2


def test_quotient_slice_two_points_degree_two():
    # H2-style count: bidegree (2, 2) gives n + 1
    assert quotient_hilbert_slice(2, 1, (2, 2)) == 3
    assert quotient_hilbert_slice(3, 1, (2, 2)) == 4


def test_quotient_slice_odd_t_degree_vanishes():
    assert quotient_hilbert_slice(2, 1, (2, 1)) == 0


@pytest.mark.parametrize("n,d", [(2, 1), (3, 1), (2, 2)])
def test_conjecture_matches_series(n, d):
    report = conjecture_vs_msv(n, d, order=4)
    assert report.ok, report.mismatches[:3]


def test_conjecture_rejects_unknown_pair():
    with pytest.raises(ValueError):
        conjecture_vs_msv(4, 1)


def test_family_dimensions_match_closed_forms():
    report = grdim_family_check(order=4)
    assert report.ok, report.mismatches[:3]


def test_family_quotient_identity_exact():
    assert family_quotient_identity()


def test_punctual_series_clears_poles():
    s = punctual_series(msv_assemble(tacnode_spec()), 2)
    # no (1 - qL) factor survives in the denominator
    L = MultiPoly.gen(QL_RING, "L")
    q = MultiPoly.gen(QL_RING, "q")
    one = MultiPoly.one(QL_RING)
    assert all(f != one - q * L for f, m in s.factors)


def test_torus_references_differ():
    assert equal_up_to_monomial(torus_2_4_reference(), torus_3_3_reference(), "T") is None
