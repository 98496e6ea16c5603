"""Exact row reduction over Q and subspace operations on graded slices.

Vectors are sparse index->coefficient dicts over an ordered basis of
hashable keys (monomial exponent tuples, or richer keys for module
slices). A Subspace keeps its rows in reduced row echelon form at all
times, so equal subspaces have identical representations and every
operation is deterministic.

Intersections and kernels use the augmented-row trick: stack generators
with identity tags, reduce on the original columns only, and read the
relations off rows whose original part vanished.
"""

from __future__ import annotations

import bisect
from typing import Callable, Hashable, Iterable, Sequence

from .rationals import ONE, ZERO
from .rings import MultiPoly, Ring, monomial_key

Row = dict  # int -> rational, nonzero entries only


class SliceBasis:
    """Ordered basis keys with O(1) lookup; bridges polynomials and vectors."""

    def __init__(self, keys: Sequence[Hashable]):
        self.keys = tuple(keys)
        self.index = {k: i for i, k in enumerate(self.keys)}
        if len(self.index) != len(self.keys):
            raise ValueError("duplicate basis keys")

    def __len__(self) -> int:
        return len(self.keys)

    def vector(self, coeffs: dict) -> Row:
        """Key->coefficient dict to a sparse vector; unknown keys are errors."""
        out: Row = {}
        for k, c in coeffs.items():
            if c == 0:
                continue
            out[self.index[k]] = c
        return out

    def vector_from_poly(self, p: MultiPoly, strict: bool = True) -> Row | None:
        """Polynomial to a vector over exponent keys.

        strict=True errors when the support leaves the basis; strict=False
        returns None instead (used by windowed membership tests).
        """
        out: Row = {}
        for exp, c in p.terms.items():
            i = self.index.get(exp)
            if i is None:
                if strict:
                    raise KeyError(f"monomial {exp} outside slice basis")
                return None
            out[i] = c
        return out

    def poly(self, ring: Ring, vec: Row) -> MultiPoly:
        return MultiPoly(ring, {self.keys[i]: c for i, c in vec.items()})


def basis_for_monomials(exps: Iterable[tuple]) -> SliceBasis:
    return SliceBasis(sorted(exps, key=monomial_key))


def _axpy(dst: Row, src: Row, c) -> None:
    """dst += c*src in place."""
    for j, v in src.items():
        s = dst.get(j, ZERO) + c * v
        if s == 0:
            dst.pop(j, None)
        else:
            dst[j] = s


class Subspace:
    """Row space in reduced row echelon form over a fixed column count."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[Row] = []  # sorted by pivot column
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "Subspace":
        out = Subspace(self.ncols)
        out.rows = [dict(r) for r in self.rows]
        out.pivots = list(self.pivots)
        return out

    def reduce(self, vec: Row) -> Row:
        """Remainder of vec modulo the row space (fresh dict)."""
        v = dict(vec)
        for p, row in zip(self.pivots, self.rows):
            c = v.get(p)
            if c is not None:
                _axpy(v, row, -c)
        return v

    def contains(self, vec: Row) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: Row) -> bool:
        """Add one vector; True when the rank grew."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = ONE / v[p]
        v = {j: c * inv for j, c in v.items()}
        for row in self.rows:
            c = row.get(p)
            if c is not None:
                _axpy(row, v, -c)
        at = bisect.bisect_left(self.pivots, p)
        self.pivots.insert(at, p)
        self.rows.insert(at, v)
        return True

    def extend(self, vectors: Iterable[Row]) -> None:
        for v in vectors:
            self.insert(v)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ncols == other.ncols
            and self.pivots == other.pivots
            and self.rows == other.rows
        )


def span(vectors: Iterable[Row], ncols: int) -> Subspace:
    sub = Subspace(ncols)
    sub.extend(vectors)
    return sub


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    if a.ncols != b.ncols:
        raise ValueError("column count mismatch")
    out = a.copy()
    out.extend(b.rows)
    return out


def _tagged_elimination(groups: Sequence[Sequence[Row]], ncols: int) -> list[list[Row]]:
    """Reduce stacked rows on the first ncols columns, identity-tagged.

    Returns, for each fully reduced stacked row whose original part became
    zero, the tag split back into per-group coefficient vectors. Tags of
    group g live at columns ncols + offset(g) + i.
    """
    offsets = []
    total = 0
    for g in groups:
        offsets.append(total)
        total += len(g)
    work = Subspace(ncols + total)
    null_tags: list[list[Row]] = []
    for gi, g in enumerate(groups):
        for i, row in enumerate(g):
            v = dict(row)
            v[ncols + offsets[gi] + i] = ONE
            v = work.reduce(v)
            left = {j for j in v if j < ncols}
            if left:
                # insert with pivot restricted to the original columns
                p = min(left)
                inv = ONE / v[p]
                v = {j: c * inv for j, c in v.items()}
                for row2 in work.rows:
                    c = row2.get(p)
                    if c is not None:
                        _axpy(row2, v, -c)
                at = bisect.bisect_left(work.pivots, p)
                work.pivots.insert(at, p)
                work.rows.insert(at, v)
            else:
                tags = []
                for off, grp in zip(offsets, groups):
                    tags.append(
                        {
                            j - ncols - off: c
                            for j, c in v.items()
                            if off <= j - ncols < off + len(grp)
                        }
                    )
                null_tags.append(tags)
    return null_tags


def intersect_subspaces(a: Subspace, b: Subspace) -> Subspace:
    """A cap B via relations u*A + v*B = 0."""
    if a.ncols != b.ncols:
        raise ValueError("column count mismatch")
    out = Subspace(a.ncols)
    for tags in _tagged_elimination([a.rows, b.rows], a.ncols):
        u = tags[0]
        elem: Row = {}
        for i, c in u.items():
            _axpy(elem, a.rows[i], c)
        if elem:
            out.insert(elem)
    return out


def intersect_many(subspaces: Sequence[Subspace]) -> Subspace:
    if not subspaces:
        raise ValueError("nothing to intersect")
    acc = subspaces[0].copy()
    for s in subspaces[1:]:
        acc = intersect_subspaces(acc, s)
    return acc


def kernel_of_rows(rows: Sequence[Row], ncols: int) -> Subspace:
    """Kernel of u -> sum u_i rows_i, as a subspace of Q^len(rows)."""
    out = Subspace(len(rows))
    for tags in _tagged_elimination([rows], ncols):
        out.insert(tags[0])
    return out


def restrict_to_columns(sub: Subspace, keep: Sequence[int]) -> Subspace:
    """Subspace of vectors in `sub` supported on `keep`, reindexed to keep.

    Reduction is redone with the complementary columns ordered first, so
    rows pivoting inside the keep block have zero support outside it.
    """
    keep_set = set(keep)
    drop = [j for j in range(sub.ncols) if j not in keep_set]
    order = {j: i for i, j in enumerate(drop)}
    base = len(drop)
    for i, j in enumerate(keep):
        order[j] = base + i
    perm = Subspace(sub.ncols)
    for row in sub.rows:
        perm.insert({order[j]: c for j, c in row.items()})
    out = Subspace(len(keep))
    for p, row in zip(perm.pivots, perm.rows):
        if p >= base:
            out.insert({j - base: c for j, c in row.items()})
    return out


def rank_of(vectors: Iterable[Row], ncols: int) -> int:
    return span(vectors, ncols).rank


def linear_map_rows(
    domain: SliceBasis, codomain: SliceBasis, image: Callable[[Hashable], dict]
) -> list[Row]:
    """Matrix rows of a linear map given on basis keys.

    `image(key)` returns a codomain key->coefficient dict.
    """
    return [codomain.vector(image(k)) for k in domain.keys]


def kernel_of_map(
    domain: SliceBasis, codomain: SliceBasis, image: Callable[[Hashable], dict]
) -> Subspace:
    rows = linear_map_rows(domain, codomain, image)
    return kernel_of_rows(rows, len(codomain))
