"""Diagonal ideal slices, quotients, and windowed lattice modules."""

import itertools

import pytest

from gkmslice.arrangement import (
    alternant,
    alternant_slice,
    anti_invariant_inclusion_check,
    catalan_quotient,
    flag_pair_element,
    flag_rank1_module_slice,
    flag_step_element,
    freeness_check,
    full_slice,
    graded_product_check_poly,
    graded_product_check_root,
    jd_ktheory_slice,
    jd_root_slice,
    jd_slice,
    ordinary_homology_quotient_slice,
    pair_ideal_slice,
    symbolic_power_oracle,
    vanishing_slice,
    xy_grading,
    xy_ring,
)
from gkmslice.rings import MultiPoly
from gkmslice.rootdata import root_datum


def xy_gens(n):
    rg = xy_ring(n)
    xs = [MultiPoly.gen(rg, f"x{i+1}") for i in range(n)]
    ys = [MultiPoly.gen(rg, f"y{i+1}") for i in range(n)]
    return rg, xs, ys


def test_pair_slice_rank():
    assert pair_ideal_slice(2, (1, 2), 1, (1, 1)).rank == 3
    assert pair_ideal_slice(2, (1, 2), 2, (1, 1)).rank == 1


def test_jd_slice_pure_x():
    result = jd_slice(2, 2, (2, 0))
    assert result.rank == 1
    rg, xs, ys = xy_gens(2)
    assert result.contains_poly((xs[0] - xs[1]) ** 2)


def test_jd_membership_examples():
    rg, xs, ys = xy_gens(2)
    s = jd_slice(2, 1, (1, 1))
    assert s.contains_poly((xs[0] - xs[1]) * (ys[0] - ys[1]))
    assert not s.contains_poly(xs[0] * ys[0])


def test_oracle_detects_vanishing_order():
    rg, xs, ys = xy_gens(2)
    f = (xs[0] - xs[1]) ** 2 * (ys[0] - ys[1])
    assert symbolic_power_oracle(f, 2, 3)
    assert not symbolic_power_oracle(f, 2, 4)
    assert symbolic_power_oracle(MultiPoly.zero(rg), 2, 5)


@pytest.mark.parametrize("n,d", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_spanning_matches_vanishing_pipeline(n, d):
    for total in range(0, 5):
        for a in range(total + 1):
            deg = (a, total - a)
            lhs = jd_slice(n, d, deg, method="spanning")
            rhs = vanishing_slice(n, d, deg)
            assert lhs.space == rhs.space, (n, d, deg)


@pytest.mark.parametrize("n,d", [(2, 1), (2, 2), (3, 1)])
def test_alternant_slice_matches_jd(n, d):
    for total in range(0, 5):
        for a in range(total + 1):
            deg = (a, total - a)
            assert alternant_slice(n, d, deg).rank == jd_slice(n, d, deg).rank


def test_alternant_is_antisymmetric():
    rg, xs, ys = xy_gens(2)
    a = alternant(2, (1, 0, 0, 0))  # x1 - x2
    assert a == xs[0] - xs[1]
    swapped = a.substitute(
        {"x1": xs[1], "x2": xs[0], "y1": ys[1], "y2": ys[0]}, rg
    )
    assert swapped == -a


def test_catalan_n2():
    report = catalan_quotient(2)
    assert report.total == 2
    assert report.table == {(1, 0): 1, (0, 1): 1}
    assert report.boundary_zero


def test_catalan_n3_table_symmetric():
    report = catalan_quotient(3)
    assert report.total == 5
    assert report.table == {
        (3, 0): 1, (2, 1): 1, (1, 2): 1, (0, 3): 1, (1, 1): 1,
    }
    assert all(report.table[(b, a)] == v for (a, b), v in report.table.items())


def test_freeness_small():
    report = freeness_check(2, 1, 5)
    assert report.ok
    assert report.stages_checked > 0


def test_full_slice_dimension():
    # all monomials of bidegree (1, 1) for n = 2
    assert full_slice(2, (1, 1)).rank == 4


def test_jd_root_slice_gl2_memberships():
    rd = root_datum("GL2")
    bounds = [(0, 2), (0, 2)]
    result = jd_root_slice(rd, 1, 0, bounds)
    assert result.status == "stabilized"
    assert result.rank == 4
    rg = result.ring
    x1, x2 = MultiPoly.gen(rg, "x1"), MultiPoly.gen(rg, "x2")
    assert result.contains_poly(x1 - x2)
    assert result.contains_poly(x1 * x2 - x2 * x2)
    assert not result.contains_poly(MultiPoly.one(rg))


def test_jd_root_slice_gl2_ydeg1():
    rd = root_datum("GL2")
    result = jd_root_slice(rd, 1, 1, [(0, 2), (0, 2)])
    assert result.status == "stabilized"
    rg = result.ring
    y1, y2 = MultiPoly.gen(rg, "y1"), MultiPoly.gen(rg, "y2")
    assert result.contains_poly(y1 - y2)
    assert not result.contains_poly(y1)


def test_ordinary_quotient_gl2():
    rd = root_datum("GL2")
    result = ordinary_homology_quotient_slice(rd, 1, 0, [(0, 1), (0, 1)])
    assert result.status == "stabilized"
    assert result.ambient_dim == 4
    assert result.quotient_dim == 3
    rows = [str(p) for p in result.submodule.row_polys()]
    assert rows == ["x2 - x1"]


def test_flag_module_window():
    result = flag_rank1_module_slice((0, 3))
    assert result.status == "stabilized"
    assert result.ambient_dim == 8
    assert result.quotient_dim == 1
    for k in range(0, 4):
        assert result.contains(flag_pair_element(k))
    for k in range(1, 4):
        assert result.contains(flag_step_element(k))
    # the class of a single vertex is not in the submodule
    assert not result.contains({(0, "e"): 1})


def test_anti_invariant_inclusion_gl2():
    rd = root_datum("GL2")
    samples = [((1, 0), ()), ((2, 0), ()), ((2, 1), ())]
    report = anti_invariant_inclusion_check(rd, 1, [(0, 3), (0, 3)], samples)
    assert report.ok
    assert report.checked == 3


def test_ktheory_slice_gl2():
    rd = root_datum("GL2")
    box = [(-1, 1), (-1, 1)]
    result = jd_ktheory_slice(rd, 1, box, box, margin=1)
    assert result.status == "stabilized"
    rg = result.ring
    x1, x2 = MultiPoly.gen(rg, "x1"), MultiPoly.gen(rg, "x2")
    y1, y2 = MultiPoly.gen(rg, "y1"), MultiPoly.gen(rg, "y2")
    assert result.contains_poly(x1 - x2)
    assert result.contains_poly(y1 - y2)
    assert not result.contains_poly(MultiPoly.one(rg))


def test_stabilize_reports_inconclusive_growth():
    from gkmslice.arrangement import SliceResult, _stabilize
    from gkmslice.linalg import SliceBasis, span
    from gkmslice.rationals import rat

    def growing(m):
        # rank m + 1 forever: never stabilizes
        vecs = [{i: rat(1)} for i in range(m + 1)]
        basis = SliceBasis(list(range(40)))
        return SliceResult(basis, span(vecs, 40), xy_ring(1), margin=m)

    result = _stabilize(growing, 0, tries=3)
    assert result.status == "inconclusive"

    def constant(m):
        basis = SliceBasis(list(range(4)))
        return SliceResult(basis, span([{0: rat(1)}], 4), xy_ring(1), margin=m)

    assert _stabilize(constant, 1).status == "stabilized"


def test_graded_products_stay_in_higher_power():
    report = graded_product_check_poly(3, 1, 1, (1, 1), (1, 1))
    assert report.ok
    assert report.checked > 0
    rd = root_datum("GL2")
    root_report = graded_product_check_root(rd, 1, 1, 0, 0, [(0, 2), (0, 2)])
    assert root_report.ok
    assert root_report.checked > 0
