"""Diagonal arrangement ideals and their graded or windowed slices.

Type A side: the polynomial ring Q[x_1..x_n, y_1..y_n] with the pair
ideals (x_i - x_j, y_i - y_j)^d, their intersection over all pairs, the
order-of-vanishing oracle along each pairwise diagonal, alternant
products, the sign-isotypic quotient table, and the regular sequence
check for the y variables.

Lattice side: the group algebra Q[Lambda] tensor Q[y] (x variables
Laurent) with per-root ideals (y_alpha, 1 - x^coroot)^d, a doubly
Laurent K-theory variant, the homology quotient by derivation kernels,
and the rank-one affine flag module. Windowed slices are computed by
spanning generators over a margin-enlarged box and then cutting back to
vectors supported inside the window; ranks are monotone in the margin
and results carry a stabilization status.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import (
    SliceBasis,
    Subspace,
    basis_for_monomials,
    intersect_subspaces,
    kernel_of_rows,
    restrict_to_columns,
    span,
    sum_subspaces,
)
from .rationals import ONE, ZERO, rat
from .rings import Exp, Grading, MultiPoly, Ring, grading_for, ring, slice_monomials
from .rootdata import RootDatum, mat_vec, weyl_elements

# ---- type A ring helpers ----


def xy_ring(n: int) -> Ring:
    return ring([f"x{i+1}" for i in range(n)] + [f"y{i+1}" for i in range(n)])


def xy_grading(n: int, convention: str = "algebraic") -> Grading:
    """algebraic: deg x = (1,0), deg y = (0,1); curve: deg y = (1,2)."""
    table = {}
    for i in range(n):
        table[f"x{i+1}"] = (1, 0)
        table[f"y{i+1}"] = (0, 1) if convention == "algebraic" else (1, 2)
    return grading_for(xy_ring(n), table)


def _gens(rg: Ring, names: Iterable[str]) -> list[MultiPoly]:
    return [MultiPoly.gen(rg, n) for n in names]


@dataclass
class SliceResult:
    """One computed slice: ordered basis keys plus the row space."""

    basis: SliceBasis
    space: Subspace
    ring: Ring
    status: str = "exact"  # exact | stabilized | inconclusive
    margin: int | None = None

    @property
    def rank(self) -> int:
        return self.space.rank

    def row_polys(self) -> list[MultiPoly]:
        return [self.basis.poly(self.ring, row) for row in self.space.rows]

    def contains_poly(self, p: MultiPoly) -> bool:
        vec = self.basis.vector_from_poly(p, strict=False)
        return vec is not None and self.space.contains(vec)


# ---- pair ideals and their intersection (polynomial, graded) ----


def pair_ideal_slice(n: int, pair: tuple[int, int], d: int, deg: tuple[int, int]) -> SliceResult:
    """Slice of (x_i - x_j, y_i - y_j)^d at one bidegree (1-based pair)."""
    rg = xy_ring(n)
    grading = xy_grading(n)
    i, j = pair
    if not (1 <= i < j <= n):
        raise ValueError("pair must satisfy 1 <= i < j <= n")
    xi, xj = MultiPoly.gen(rg, f"x{i}"), MultiPoly.gen(rg, f"x{j}")
    yi, yj = MultiPoly.gen(rg, f"y{i}"), MultiPoly.gen(rg, f"y{j}")
    basis = basis_for_monomials(slice_monomials(rg, grading, deg))
    space = Subspace(len(basis))
    for e in range(d + 1):
        gen = (xi - xj) ** e * (yi - yj) ** (d - e)
        gdeg = (e, d - e)
        rem = (deg[0] - gdeg[0], deg[1] - gdeg[1])
        if rem[0] < 0 or rem[1] < 0:
            continue
        for m in slice_monomials(rg, grading, rem):
            vec = basis.vector_from_poly(gen * MultiPoly.monomial(rg, m))
            space.insert(vec)
    return SliceResult(basis, space, rg)


def full_slice(n: int, deg: tuple[int, int]) -> SliceResult:
    rg = xy_ring(n)
    basis = basis_for_monomials(slice_monomials(rg, xy_grading(n), deg))
    space = Subspace(len(basis))
    for idx in range(len(basis)):
        space.insert({idx: ONE})
    return SliceResult(basis, space, rg)


def jd_slice(n: int, d: int, deg: tuple[int, int], method: str = "spanning") -> SliceResult:
    """Slice of the intersection over all pairs of the d-th pair ideal powers.

    method "spanning" intersects the spanned pair slices; "vanishing"
    solves the linearized order-d vanishing conditions instead (same
    subspace, independent pipeline).
    """
    if d == 0:
        return full_slice(n, deg)
    if method == "vanishing":
        return vanishing_slice(n, d, deg)
    if method != "spanning":
        raise ValueError(f"unknown method {method!r}")
    parts = [
        pair_ideal_slice(n, (i, j), d, deg)
        for i, j in itertools.combinations(range(1, n + 1), 2)
    ]
    space = parts[0].space
    for part in parts[1:]:
        space = intersect_subspaces(space, part.space)
    return SliceResult(parts[0].basis, space, parts[0].ring)


# ---- order-of-vanishing oracle along pairwise diagonals ----


def _diagonal_shift(n: int, pair: tuple[int, int]) -> tuple[Ring, Mapping[str, MultiPoly]]:
    """Substitution x_j -> x_i + u, y_j -> y_i + v into an extended ring."""
    i, j = pair
    ext = ring([f"x{k+1}" for k in range(n)] + [f"y{k+1}" for k in range(n)] + ["u", "v"])
    images = {
        f"x{j}": MultiPoly.gen(ext, f"x{i}") + MultiPoly.gen(ext, "u"),
        f"y{j}": MultiPoly.gen(ext, f"y{i}") + MultiPoly.gen(ext, "v"),
    }
    return ext, images


def symbolic_power_oracle(f: MultiPoly, n: int, d: int) -> bool:
    """Does f vanish to order >= d along every pairwise diagonal?

    Substitutes x_j = x_i + u, y_j = y_i + v for each pair i < j and
    requires every term of total (u, v)-degree below d to cancel. The
    pair ideals are complete intersections cut out by linear forms, so
    this order of vanishing characterizes membership in their d-th
    powers, and the conjunction over pairs characterizes the
    intersection.
    """
    if f.ring != xy_ring(n):
        raise ValueError("oracle expects the n-variable diagonal ring")
    if d == 0:
        return True
    for pair in itertools.combinations(range(1, n + 1), 2):
        ext, images = _diagonal_shift(n, pair)
        g = f.substitute(images, ext)
        ui, vi = ext.index("u"), ext.index("v")
        for exp in g.terms:
            if exp[ui] + exp[vi] < d:
                return False
    return True


def vanishing_slice(n: int, d: int, deg: tuple[int, int]) -> SliceResult:
    """Subspace cut out by the oracle's linear conditions at one bidegree."""
    rg = xy_ring(n)
    grading = xy_grading(n)
    basis = basis_for_monomials(slice_monomials(rg, grading, deg))
    cond_index: dict = {}
    rows = [dict() for _ in range(len(basis))]
    for pidx, pair in enumerate(itertools.combinations(range(1, n + 1), 2)):
        ext, images = _diagonal_shift(n, pair)
        ui, vi = ext.index("u"), ext.index("v")
        for bidx, exp in enumerate(basis.keys):
            g = MultiPoly.monomial(rg, exp).substitute(images, ext)
            for gexp, c in g.terms.items():
                if gexp[ui] + gexp[vi] >= d:
                    continue
                key = (pidx, gexp)
                col = cond_index.setdefault(key, len(cond_index))
                rows[bidx][col] = rows[bidx].get(col, ZERO) + c
    kern = kernel_of_rows(rows, len(cond_index))
    return SliceResult(basis, kern, rg)


# ---- alternants (type A: simultaneous permutation of x and y) ----


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternant(n: int, exp: Exp) -> MultiPoly:
    """Signed symmetrization of one monomial under the diagonal S_n action."""
    rg = xy_ring(n)
    terms: dict = {}
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        xpart = exp[:n]
        ypart = exp[n:]
        new = [0] * (2 * n)
        for src in range(n):
            new[perm[src]] = xpart[src]
            new[n + perm[src]] = ypart[src]
        key = tuple(new)
        terms[key] = terms.get(key, ZERO) + sign
    return MultiPoly(rg, terms)


def alternant_basis(n: int, deg: tuple[int, int]) -> list[MultiPoly]:
    """Independent alternants spanning the sign-isotypic part of one slice."""
    rg = xy_ring(n)
    grading = xy_grading(n)
    basis = basis_for_monomials(slice_monomials(rg, grading, deg))
    space = Subspace(len(basis))
    out = []
    for exp in basis.keys:
        p = alternant(n, exp)
        if p.is_zero():
            continue
        if space.insert(basis.vector_from_poly(p)):
            out.append(p)
    return out


def alternant_slice(n: int, d: int, deg: tuple[int, int]) -> SliceResult:
    """Span of (product of d alternants) * monomial at one bidegree."""
    rg = xy_ring(n)
    grading = xy_grading(n)
    basis = basis_for_monomials(slice_monomials(rg, grading, deg))
    space = Subspace(len(basis))
    if d == 0:
        return full_slice(n, deg)
    pool: list[MultiPoly] = []
    for a in range(deg[0] + 1):
        for b in range(deg[1] + 1):
            if a == 0 and b == 0:
                continue
            pool.extend(alternant_basis(n, (a, b)))
    for combo in itertools.combinations_with_replacement(range(len(pool)), d):
        prod = MultiPoly.one(rg)
        for idx in combo:
            prod = prod * pool[idx]
        pdeg = grading.poly_degree(prod)
        if prod.is_zero() or pdeg is None:
            continue
        rem = (deg[0] - pdeg[0], deg[1] - pdeg[1])
        if rem[0] < 0 or rem[1] < 0:
            continue
        for m in slice_monomials(rg, grading, rem):
            space.insert(basis.vector_from_poly(prod * MultiPoly.monomial(rg, m)))
    return SliceResult(basis, space, rg)


# ---- sign-isotypic quotient table (Catalan numbers) ----


@dataclass
class CatalanReport:
    n: int
    table: dict  # (a, b) -> dim, nonzero entries only
    total: int
    top_degree: int
    boundary_zero: bool  # every entry on the first uncounted diagonal is 0
    method: str


def catalan_quotient(n: int, method: str = "spanning") -> CatalanReport:
    """Bigraded dimensions of J / (x, y) J for the pairwise diagonal ideal.

    J is the d = 1 intersection; the quotient is supported in total
    degree <= n(n-1)/2, and the first diagonal past the top is computed
    and checked to vanish.
    """
    top = n * (n - 1) // 2
    slices: dict[tuple[int, int], SliceResult] = {}
    for a in range(top + 2):
        for b in range(top + 2 - a):
            slices[(a, b)] = jd_slice(n, 1, (a, b), method=method)
    table: dict[tuple[int, int], int] = {}
    for (a, b), cur in slices.items():
        if cur.rank == 0:
            continue
        sub = Subspace(len(cur.basis))
        for (pa, pb), gen_name in (((a - 1, b), "x"), ((a, b - 1), "y")):
            if pa < 0 or pb < 0:
                continue
            prev = slices[(pa, pb)]
            for i in range(n):
                var = cur.ring.index(f"{gen_name}{i+1}")
                for row in prev.space.rows:
                    shifted = {}
                    for col, c in row.items():
                        exp = list(prev.basis.keys[col])
                        exp[var] += 1
                        shifted[cur.basis.index[tuple(exp)]] = c
                    sub.insert(shifted)
                if sub.rank == cur.rank:
                    break
            if sub.rank == cur.rank:
                break
        dim = cur.rank - sub.rank
        if dim:
            table[(a, b)] = dim
    boundary_zero = all(a + b <= top for a, b in table)
    return CatalanReport(
        n=n,
        table=dict(sorted(table.items())),
        total=sum(table.values()),
        top_degree=top,
        boundary_zero=boundary_zero,
        method=method,
    )


# ---- regular sequence check for y_1..y_n on the intersection ideal ----


def stage_injective(
    module_dim: int, rel_prev_dim: int, image_plus_rel_dim: int, rel_prev_next_dim: int
) -> bool:
    """Multiplication by y_k is injective on M/(y_1..y_{k-1})M at one slice
    iff dim M - dim rel = dim (y_k M + rel') - dim rel'."""
    return module_dim - rel_prev_dim == image_plus_rel_dim - rel_prev_next_dim


@dataclass
class FreenessReport:
    n: int
    d: int
    max_total: int
    ok: bool
    failures: list = field(default_factory=list)  # (stage k, (a, b))
    stages_checked: int = 0


def freeness_check(n: int, d: int, max_total: int, method: str = "spanning") -> FreenessReport:
    """Are y_1..y_n a regular sequence on the d-th intersection ideal?

    Checked slice by slice through the given total degree: at stage k the
    map 'multiply by y_k' on J/(y_1..y_{k-1})J must be injective on every
    bidegree (a, b) with a + b <= max_total.
    """
    rg = xy_ring(n)
    slices: dict[tuple[int, int], SliceResult] = {}
    for a in range(max_total + 2):
        for b in range(max_total + 2 - a):
            slices[(a, b)] = jd_slice(n, d, (a, b), method=method)

    def shift_rows(src: SliceResult, dst: SliceResult, var: str) -> list[dict]:
        vi = rg.index(var)
        out = []
        for row in src.space.rows:
            shifted = {}
            for col, c in row.items():
                exp = list(src.basis.keys[col])
                exp[vi] += 1
                shifted[dst.basis.index[tuple(exp)]] = c
            out.append(shifted)
        return out

    def rel_space(k: int, a: int, b: int) -> Subspace:
        """Span of y_1..y_k times the slice one y-degree down, inside (a, b)."""
        dst = slices[(a, b)]
        out = Subspace(len(dst.basis))
        if b >= 1 and k >= 1:
            src = slices[(a, b - 1)]
            for i in range(1, k + 1):
                for row in shift_rows(src, dst, f"y{i}"):
                    out.insert(row)
        return out

    report = FreenessReport(n=n, d=d, max_total=max_total, ok=True)
    for k in range(1, n + 1):
        for a in range(max_total + 1):
            for b in range(max_total + 1 - a):
                here = slices[(a, b)]
                nxt = slices[(a, b + 1)]
                rel_here = rel_space(k - 1, a, b)
                rel_next = rel_space(k - 1, a, b + 1)
                image_plus = rel_next.copy()
                for row in shift_rows(here, nxt, f"y{k}"):
                    image_plus.insert(row)
                report.stages_checked += 1
                if not stage_injective(
                    here.rank, rel_here.rank, image_plus.rank, rel_next.rank
                ):
                    report.ok = False
                    report.failures.append((k, (a, b)))
    return report


# ---- windowed slices over the cocharacter lattice ----


def lattice_ring(rd: RootDatum, y_laurent: bool = False) -> Ring:
    xnames = [f"x{i+1}" for i in range(rd.rank)]
    ynames = ["y"] if rd.yrank == 1 else [f"y{i+1}" for i in range(rd.yrank)]
    laurent = list(xnames) + (list(ynames) if y_laurent else [])
    return ring(xnames + ynames, laurent=laurent)


def lattice_grading(rd: RootDatum, rg: Ring) -> Grading:
    ynames = ["y"] if rd.yrank == 1 else [f"y{i+1}" for i in range(rd.yrank)]
    return grading_for(rg, {n: (1, 0) for n in ynames})


def _enlarged(bounds: Sequence[tuple[int, int]], amount: int) -> list[tuple[int, int]]:
    return [(lo - amount, hi + amount) for lo, hi in bounds]


def _coroot_reach(rd: RootDatum) -> int:
    return max((max(abs(c) for c in cor) for cor in rd.coroots), default=1)


def _window_dict(rg: Ring, bounds: Sequence[tuple[int, int]], extra: Mapping | None = None) -> dict:
    win = {f"x{i+1}": tuple(b) for i, b in enumerate(bounds)}
    if extra:
        win.update(extra)
    return win


def coroot_monomial(rd: RootDatum, rg: Ring, root_index: int) -> MultiPoly:
    """x^(coroot of the given positive root)."""
    cor = rd.coroots[root_index]
    exp = [0] * rg.nvars
    for i, c in enumerate(cor):
        exp[rg.index(f"x{i+1}")] = c
    return MultiPoly.monomial(rg, tuple(exp))


def _restricted(
    rows: Iterable[dict],
    ambient: SliceBasis,
    window_keys: Sequence,
) -> tuple[Subspace, SliceBasis]:
    """Cut a spanned subspace down to vectors supported on window_keys."""
    big = span(rows, len(ambient))
    keep = [ambient.index[k] for k in window_keys]
    small = restrict_to_columns(big, keep)
    return small, SliceBasis(window_keys)


def root_ideal_slice(
    rd: RootDatum,
    root_index: int,
    d: int,
    ydeg: int,
    bounds: Sequence[tuple[int, int]],
    margin: int,
) -> SliceResult:
    """Windowed y-degree slice of (y_alpha, 1 - x^coroot)^d for one root."""
    rg = lattice_ring(rd)
    grading = lattice_grading(rd, rg)
    ynames = ["y"] if rd.yrank == 1 else [f"y{i+1}" for i in range(rd.yrank)]
    reach = _coroot_reach(rd)
    big_bounds = _enlarged(bounds, (margin + d) * reach)
    gen_bounds = _enlarged(bounds, margin * reach)
    ambient = basis_for_monomials(
        slice_monomials(rg, grading, (ydeg, 0), _window_dict(rg, big_bounds))
    )
    window_keys = slice_monomials(rg, grading, (ydeg, 0), _window_dict(rg, bounds))
    y_alpha = rd.root_form(rg, root_index, ynames)
    one_minus = MultiPoly.one(rg) - coroot_monomial(rd, rg, root_index)
    rows = []
    for e in range(d + 1):
        if e > ydeg:
            continue
        gen = y_alpha**e * one_minus ** (d - e)
        for m in slice_monomials(rg, grading, (ydeg - e, 0), _window_dict(rg, gen_bounds)):
            vec = ambient.vector_from_poly(gen * MultiPoly.monomial(rg, m), strict=False)
            if vec is not None:
                rows.append(vec)
    space, basis = _restricted(rows, ambient, window_keys)
    return SliceResult(basis, space, rg, status="stabilized", margin=margin)


def _stabilize(compute: Callable[[int], SliceResult], margin0: int, tries: int = 4) -> SliceResult:
    """Increase the margin until one further step does not change the rank."""
    prev = compute(margin0)
    m = margin0
    for _ in range(tries):
        nxt = compute(m + 1)
        if nxt.rank == prev.rank:
            prev.status = "stabilized"
            prev.margin = m
            return prev
        prev, m = nxt, m + 1
    prev.status = "inconclusive"
    prev.margin = m
    return prev


def jd_root_slice(
    rd: RootDatum,
    d: int,
    ydeg: int,
    bounds: Sequence[tuple[int, int]],
    margin: int | None = None,
) -> SliceResult:
    """Windowed slice of the intersection over roots of (y_alpha, 1-x^coroot)^d."""
    if rd.npos == 0:
        raise ValueError("root datum has no positive roots")
    margin0 = 2 * d if margin is None else margin

    def compute(m: int) -> SliceResult:
        parts = [
            root_ideal_slice(rd, i, d, ydeg, bounds, m) for i in range(rd.npos)
        ]
        space = parts[0].space
        for part in parts[1:]:
            space = intersect_subspaces(space, part.space)
        return SliceResult(parts[0].basis, space, parts[0].ring, margin=m)

    return _stabilize(compute, margin0)


def ktheory_ideal_slice(
    rd: RootDatum,
    root_index: int,
    d: int,
    xbounds: Sequence[tuple[int, int]],
    ybounds: Sequence[tuple[int, int]],
    margin: int,
) -> SliceResult:
    """Box slice of (1 - y^alpha, 1 - x^coroot)^d, both sides Laurent."""
    rg = lattice_ring(rd, y_laurent=True)
    ynames = ["y"] if rd.yrank == 1 else [f"y{i+1}" for i in range(rd.yrank)]
    reach = _coroot_reach(rd)
    yreach = max(max(abs(c) for c in r) for r in rd.roots)
    window = _window_dict(rg, xbounds, {n: tuple(b) for n, b in zip(ynames, ybounds)})
    big = _window_dict(
        rg,
        _enlarged(xbounds, (margin + d) * reach),
        {
            n: tuple(b)
            for n, b in zip(ynames, _enlarged(ybounds, (margin + d) * yreach))
        },
    )
    gen_win = _window_dict(
        rg,
        _enlarged(xbounds, margin * reach),
        {n: tuple(b) for n, b in zip(ynames, _enlarged(ybounds, margin * yreach))},
    )
    ambient = basis_for_monomials(slice_monomials(rg, None, None, big))
    window_keys = slice_monomials(rg, None, None, window)
    alpha = rd.roots[root_index]
    yexp = [0] * rg.nvars
    for i, c in enumerate(alpha):
        yexp[rg.index(ynames[i])] = c
    one_minus_y = MultiPoly.one(rg) - MultiPoly.monomial(rg, tuple(yexp))
    one_minus_x = MultiPoly.one(rg) - coroot_monomial(rd, rg, root_index)
    rows = []
    for e in range(d + 1):
        gen = one_minus_y**e * one_minus_x ** (d - e)
        for m in slice_monomials(rg, None, None, gen_win):
            vec = ambient.vector_from_poly(gen * MultiPoly.monomial(rg, m), strict=False)
            if vec is not None:
                rows.append(vec)
    space, basis = _restricted(rows, ambient, window_keys)
    return SliceResult(basis, space, rg, status="stabilized", margin=margin)


def jd_ktheory_slice(
    rd: RootDatum,
    d: int,
    xbounds: Sequence[tuple[int, int]],
    ybounds: Sequence[tuple[int, int]],
    margin: int | None = None,
) -> SliceResult:
    margin0 = 2 * d if margin is None else margin

    def compute(m: int) -> SliceResult:
        parts = [
            ktheory_ideal_slice(rd, i, d, xbounds, ybounds, m)
            for i in range(rd.npos)
        ]
        space = parts[0].space
        for part in parts[1:]:
            space = intersect_subspaces(space, part.space)
        return SliceResult(parts[0].basis, space, parts[0].ring, margin=m)

    return _stabilize(compute, margin0)


# ---- homology quotient by derivation kernels ----


def _derivation_kernel(rd: RootDatum, rg: Ring, root_index: int, k: int, ydeg: int) -> list[MultiPoly]:
    """Basis of ker(d_alpha^k) on degree-ydeg polynomials in y.

    d_alpha differentiates along the coroot: sum_i <basis_root_i, coroot>
    partial_{y_i}.
    """
    ynames = ["y"] if rd.yrank == 1 else [f"y{i+1}" for i in range(rd.yrank)]
    coeffs = [rd.pair_coroot(tuple(1 if a == i else 0 for a in range(rd.yrank)), rd.coroots[root_index]) for i in range(rd.yrank)]

    def d_alpha(p: MultiPoly) -> MultiPoly:
        out = MultiPoly.zero(rg)
        for c, nm in zip(coeffs, ynames):
            if c:
                out = out + p.derivative(nm) * c
        return out

    ygrading = grading_for(rg, {n: (1, 0) for n in ynames})
    pin_x = {f"x{i+1}": (0, 0) for i in range(rd.rank)}
    dom_keys = slice_monomials(rg, ygrading, (ydeg, 0), pin_x)
    domain = SliceBasis(dom_keys)
    if ydeg < k:
        return [MultiPoly.monomial(rg, e) for e in dom_keys]
    cod_keys = slice_monomials(rg, ygrading, (ydeg - k, 0), pin_x)
    codomain = SliceBasis(cod_keys)
    rows = []
    for e in dom_keys:
        p = MultiPoly.monomial(rg, e)
        for _ in range(k):
            p = d_alpha(p)
        rows.append(codomain.vector_from_poly(p))
    kern = kernel_of_rows(rows, len(codomain))
    return [domain.poly(rg, row) for row in kern.rows]


@dataclass
class QuotientResult:
    ambient_dim: int
    submodule_rank: int
    quotient_dim: int
    status: str
    margin: int | None
    submodule: SliceResult


def ordinary_homology_quotient_slice(
    rd: RootDatum,
    d: int,
    ydeg: int,
    bounds: Sequence[tuple[int, int]],
    margin: int | None = None,
) -> QuotientResult:
    """Window slice of Q[Lambda] (x) Q[y] modulo the derivation-kernel relations.

    The relation submodule is the span of (1 - x^coroot)^k x^lam K with
    K in ker(d_alpha^k), summed over positive roots and 1 <= k <= d.
    """
    rg = lattice_ring(rd)
    grading = lattice_grading(rd, rg)
    margin0 = 2 * d if margin is None else margin
    reach = _coroot_reach(rd)
    window_keys = slice_monomials(rg, grading, (ydeg, 0), _window_dict(rg, bounds))

    kernels = {
        (i, k): _derivation_kernel(rd, rg, i, k, ydeg)
        for i in range(rd.npos)
        for k in range(1, d + 1)
    }

    def compute(m: int) -> SliceResult:
        big_bounds = _enlarged(bounds, (m + d) * reach)
        gen_bounds = _enlarged(bounds, m * reach)
        ambient = basis_for_monomials(
            slice_monomials(rg, grading, (ydeg, 0), _window_dict(rg, big_bounds))
        )
        rows = []
        for i in range(rd.npos):
            for k in range(1, d + 1):
                shell = (MultiPoly.one(rg) - coroot_monomial(rd, rg, i)) ** k
                for lam in _lattice_points(rg, gen_bounds):
                    base = shell * MultiPoly.monomial(rg, lam)
                    for K in kernels[(i, k)]:
                        vec = ambient.vector_from_poly(base * K, strict=False)
                        if vec is not None:
                            rows.append(vec)
        space, basis = _restricted(rows, ambient, window_keys)
        return SliceResult(basis, space, rg, margin=m)

    sub = _stabilize(compute, margin0)
    return QuotientResult(
        ambient_dim=len(window_keys),
        submodule_rank=sub.rank,
        quotient_dim=len(window_keys) - sub.rank,
        status=sub.status,
        margin=sub.margin,
        submodule=sub,
    )


def _lattice_points(rg: Ring, bounds: Sequence[tuple[int, int]]) -> list[Exp]:
    """x-monomial exponent tuples (y parts zero) for all points of the box."""
    pts = [[0] * rg.nvars]
    for i, (lo, hi) in enumerate(bounds):
        vi = rg.index(f"x{i+1}")
        nxt = []
        for p in pts:
            for e in range(lo, hi + 1):
                q = list(p)
                q[vi] = e
                nxt.append(q)
        pts = nxt
    return [tuple(p) for p in pts]


# ---- rank-one affine flag module at t = 0 ----


@dataclass
class FlagModuleResult:
    basis: SliceBasis  # keys (level, "e"/"s")
    space: Subspace
    ambient_dim: int
    quotient_dim: int
    status: str
    margin: int | None

    def contains(self, element: Mapping) -> bool:
        vec = {}
        for key, c in element.items():
            idx = self.basis.index.get(key)
            if idx is None:
                return False
            vec[idx] = c
        return self.space.contains(vec)


def flag_rank1_module_slice(bounds: tuple[int, int], margin: int | None = None) -> FlagModuleResult:
    """Window slice of the span of {1 - s, 1 - x, y} inside the group algebra.

    Keys are (level, coset) with coset "e" or "s"; this is the y-degree
    zero layer, where the generators contribute x^m (1 - s) supported on
    {(m,e),(m,s)} and x^m (1 - x) supported on {(m,e),(m+1,e)}.
    """
    lo, hi = bounds
    margin0 = 0 if margin is None else margin
    window_keys = [(a, w) for a in range(lo, hi + 1) for w in ("e", "s")]

    def compute(m: int) -> SliceResult:
        big = [(a, w) for a in range(lo - m - 1, hi + m + 2) for w in ("e", "s")]
        ambient = SliceBasis(big)
        rows = []
        for a in range(lo - m, hi + m + 1):
            rows.append(ambient.vector({(a, "e"): ONE, (a, "s"): -ONE}))
            rows.append(ambient.vector({(a, "e"): ONE, (a + 1, "e"): -ONE}))
        space, basis = _restricted(rows, ambient, window_keys)
        return SliceResult(basis, space, ring(["x"], laurent=["x"]), margin=m)

    sub = _stabilize(compute, margin0)
    return FlagModuleResult(
        basis=sub.basis,
        space=sub.space,
        ambient_dim=len(window_keys),
        quotient_dim=len(window_keys) - sub.rank,
        status=sub.status,
        margin=sub.margin,
    )


def flag_step_element(k: int) -> dict:
    """y times the t = 0 limit of the step class: (k,e) - (k-1,s)."""
    return {(k, "e"): ONE, (k - 1, "s"): -ONE}


def flag_pair_element(k: int) -> dict:
    """y times the t = 0 limit of the pair class: (k,e) - (k,s)."""
    return {(k, "e"): ONE, (k, "s"): -ONE}


# ---- anti-invariants and graded products ----


def lattice_alternant(rd: RootDatum, rg: Ring, lam: Exp, ydeg_exp: Exp) -> MultiPoly:
    """Signed Weyl symmetrization of x^lam y^exp over the lattice ring."""
    ynames = ["y"] if rd.yrank == 1 else [f"y{i+1}" for i in range(rd.yrank)]
    out = MultiPoly.zero(rg)
    ymono = {n: e for n, e in zip(ynames, ydeg_exp)}
    for lat, ymat, sign in weyl_elements(rd):
        new_lam = mat_vec(lat, lam)
        exp = [0] * rg.nvars
        for i, e in enumerate(new_lam):
            exp[rg.index(f"x{i+1}")] = e
        xpart = MultiPoly.monomial(rg, tuple(exp), sign)
        ypart = MultiPoly.one(rg)
        for col, name in enumerate(ynames):
            e = ymono.get(name, 0)
            if not e:
                continue
            image = MultiPoly.zero(rg)
            for row_i in range(rd.yrank):
                if ymat[row_i][col]:
                    image = image + MultiPoly.gen(rg, ynames[row_i]) * ymat[row_i][col]
            ypart = ypart * image**e
        out = out + xpart * ypart
    return out


@dataclass
class InclusionReport:
    ok: bool
    checked: int
    failures: list = field(default_factory=list)
    status: str = "stabilized"


def anti_invariant_inclusion_check(
    rd: RootDatum,
    d: int,
    bounds: Sequence[tuple[int, int]],
    samples: Sequence[tuple[Exp, Exp]],
    margin: int | None = None,
) -> InclusionReport:
    """Products of d alternants lie in the windowed root-ideal intersection.

    samples are (lattice point, y exponent) seeds; each d-fold product of
    their alternants is tested for membership. The window must contain
    the full Weyl orbits of the sampled supports.
    """
    rg = lattice_ring(rd)
    grading = lattice_grading(rd, rg)
    report = InclusionReport(ok=True, checked=0)
    alts = [lattice_alternant(rd, rg, lam, yexp) for lam, yexp in samples]
    alts = [a for a in alts if not a.is_zero()]
    slices: dict[int, SliceResult] = {}
    for combo in itertools.combinations_with_replacement(range(len(alts)), d):
        prod = MultiPoly.one(rg)
        for idx in combo:
            prod = prod * alts[idx]
        if prod.is_zero():
            continue
        ydeg = grading.poly_degree(prod)
        if ydeg is None:
            raise ValueError("alternant product is not y-homogeneous")
        target = slices.get(ydeg[0])
        if target is None:
            target = jd_root_slice(rd, d, ydeg[0], bounds, margin)
            slices[ydeg[0]] = target
            if target.status != "stabilized":
                report.status = "inconclusive"
        report.checked += 1
        if not target.contains_poly(prod):
            report.ok = False
            report.failures.append(str(prod))
    return report


def graded_product_check_poly(
    n: int, d1: int, d2: int, deg1: tuple[int, int], deg2: tuple[int, int]
) -> InclusionReport:
    """Products of the two type A slices satisfy the order-(d1+d2) oracle."""
    s1 = jd_slice(n, d1, deg1)
    s2 = jd_slice(n, d2, deg2)
    report = InclusionReport(ok=True, checked=0, status="exact")
    for p in s1.row_polys():
        for q in s2.row_polys():
            report.checked += 1
            if not symbolic_power_oracle(p * q, n, d1 + d2):
                report.ok = False
                report.failures.append(f"({p}) * ({q})")
    return report


def graded_product_check_root(
    rd: RootDatum,
    d1: int,
    d2: int,
    ydeg1: int,
    ydeg2: int,
    bounds: Sequence[tuple[int, int]],
    margin: int | None = None,
) -> InclusionReport:
    """Windowed product check: slice(d1) * slice(d2) inside slice(d1+d2).

    The product slice is computed over the sum box so supports fit.
    """
    s1 = jd_root_slice(rd, d1, ydeg1, bounds, margin)
    s2 = jd_root_slice(rd, d2, ydeg2, bounds, margin)
    big = [(lo + lo2, hi + hi2) for (lo, hi), (lo2, hi2) in zip(bounds, bounds)]
    target = jd_root_slice(rd, d1 + d2, ydeg1 + ydeg2, big, margin)
    report = InclusionReport(ok=True, checked=0)
    if "inconclusive" in (s1.status, s2.status, target.status):
        report.status = "inconclusive"
    for p in s1.row_polys():
        for q in s2.row_polys():
            report.checked += 1
            if not target.contains_poly(p * q):
                report.ok = False
                report.failures.append(f"({p}) * ({q})")
    return report
