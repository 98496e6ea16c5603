"""Moment graphs for lattice windows and localized class verification.

Vertices are lattice points inside a finite window (or (point, coset)
pairs for the rank-one flag variant). An edge joins two points differing
by k times a positive coroot, 1 <= k <= d; its weight is the affine
character y_alpha + (<alpha, lam> - k) t, a linear form in the y
variables and t.

A localized class assigns some vertices a rational form num / prod of
affine-linear factors. Verification checks the two residue conditions:
every pole is simple and parallel to an incident edge weight, and for
each character chi the residues along chi = 0 sum to zero on every
connected component of the chi-subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd
from typing import Any, Mapping, Sequence

from .rationals import ONE, rat, rat_parts
from .rings import MultiPoly, Ring, poly_from_json, poly_to_json, ring
from .rootdata import RootDatum
from .series import RationalSeries

VertexKey = Any  # lattice tuple, or (level, "e"/"s") for the flag graph


def y_names(yrank: int) -> list[str]:
    return ["y"] if yrank == 1 else [f"y{i+1}" for i in range(yrank)]


def weight_ring(yrank: int) -> Ring:
    return ring(y_names(yrank) + ["t"])


@dataclass(frozen=True)
class GkmGraph:
    label: str
    ring: Ring  # (y..., t)
    vertices: tuple[VertexKey, ...]
    edges: tuple[tuple[VertexKey, VertexKey, MultiPoly], ...]

    def vertex_set(self) -> set:
        return set(self.vertices)

    def incident_weights(self, v: VertexKey) -> list[MultiPoly]:
        return [w for a, b, w in self.edges if a == v or b == v]


def lattice_window(bounds: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    """All lattice points of a coordinate box, sorted."""
    pts = [()]
    for lo, hi in bounds:
        if lo > hi:
            raise ValueError("empty window")
        pts = [p + (e,) for p in pts for e in range(lo, hi + 1)]
    return sorted(pts)


def build_gkm_graph(rd: RootDatum, d: int, bounds: Sequence[tuple[int, int]]) -> GkmGraph:
    """Moment graph of the degree-d lattice window for a root datum.

    bounds has one (lo, hi) pair per lattice coordinate. d = 0 gives an
    edgeless graph.
    """
    if len(bounds) != rd.rank:
        raise ValueError(f"need {rd.rank} window bounds, got {len(bounds)}")
    if d < 0:
        raise ValueError("d must be nonnegative")
    rg = weight_ring(rd.yrank)
    names = y_names(rd.yrank)
    verts = lattice_window(bounds)
    vset = set(verts)
    edges = []
    for lam in verts:
        for i in range(rd.npos):
            cor = rd.coroots[i]
            for k in range(1, d + 1):
                mu = tuple(a - k * c for a, c in zip(lam, cor))
                if mu not in vset:
                    continue
                m = rd.pair(i, lam) - k
                weight = rd.root_form(rg, i, names) + MultiPoly.gen(rg, "t") * m
                edges.append((lam, mu, weight))
    edges.sort(key=lambda e: (e[0], e[1]))
    return GkmGraph(
        label=f"{rd.label} d={d}", ring=rg, vertices=tuple(verts), edges=tuple(edges)
    )


def build_flag_rank1_graph(bounds: tuple[int, int], d: int = 1) -> GkmGraph:
    """Rank-one affine flag moment graph over levels in `bounds` (d = 1 only).

    Vertices are (level, "e") and (level, "s"). Level k carries an edge
    (k,e)-(k,s) of weight y + 2kt and an edge (k+1,e)-(k,s) of weight
    y + (2k+1)t.
    """
    if d != 1:
        raise ValueError("flag graph implemented for d = 1 only")
    lo, hi = bounds
    rg = weight_ring(1)
    y = MultiPoly.gen(rg, "y")
    t = MultiPoly.gen(rg, "t")
    verts = [(k, w) for k in range(lo, hi + 1) for w in ("e", "s")]
    edges = []
    for k in range(lo, hi + 1):
        edges.append(((k, "e"), (k, "s"), y + 2 * k * t))
        if k + 1 <= hi:
            edges.append(((k + 1, "e"), (k, "s"), y + (2 * k + 1) * t))
    edges.sort(key=lambda e: (e[0], e[1]))
    return GkmGraph(label=f"flag-rank1 d={d}", ring=rg, vertices=tuple(sorted(verts)), edges=tuple(edges))


@dataclass(frozen=True)
class LocalForm:
    """num / prod(den); every den entry must stay affine-linear."""

    num: MultiPoly
    den: tuple[MultiPoly, ...] = ()

    def scaled(self, c) -> "LocalForm":
        return LocalForm(self.num * c, self.den)


ClassTuple = dict  # VertexKey -> LocalForm


def linear_coeffs(p: MultiPoly) -> tuple:
    """Coefficient vector of a homogeneous linear form; errors otherwise."""
    coeffs = [rat(0)] * p.ring.nvars
    for exp, c in p.terms.items():
        if sum(exp) != 1 or min(exp) < 0:
            raise ValueError(f"not a linear form: {p}")
        coeffs[exp.index(1)] = c
    return tuple(coeffs)


def primitive_direction(p: MultiPoly) -> tuple[int, ...]:
    """Integer direction vector of a linear form, first nonzero positive."""
    coeffs = linear_coeffs(p)
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * rat_parts(c)[1] // gcd(den_lcm, rat_parts(c)[1])
    ints = [int(c * den_lcm) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        raise ValueError("zero linear form has no direction")
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def parallel(p: MultiPoly, q: MultiPoly) -> bool:
    try:
        return primitive_direction(p) == primitive_direction(q)
    except ValueError:
        return False


def _substitution_for(chi: MultiPoly) -> tuple[str, Mapping[str, MultiPoly]]:
    """Images realizing chi = 0 by eliminating its first supported variable."""
    rg = chi.ring
    coeffs = linear_coeffs(chi)
    pivot = next(i for i, c in enumerate(coeffs) if c != 0)
    a = coeffs[pivot]
    image = MultiPoly.zero(rg)
    for i, c in enumerate(coeffs):
        if i == pivot or c == 0:
            continue
        image = image - MultiPoly.gen(rg, rg.names[i]) * (c / a)
    return rg.names[pivot], {rg.names[pivot]: image}


def residue_along(form: LocalForm, chi: MultiPoly) -> RationalSeries:
    """Residue of the form along the hyperplane chi = 0.

    Zero when the form has no pole parallel to chi; errors on a higher
    order pole. The result depends on the scale of chi only through a
    global factor, so zero-tests of residue sums are scale independent.
    """
    rg = form.num.ring
    on_wall = [f for f in form.den if parallel(f, chi)]
    off_wall = [f for f in form.den if not parallel(f, chi)]
    if len(on_wall) > 1:
        raise ValueError("pole of order > 1 along the character")
    if not on_wall:
        return RationalSeries.zero(rg)
    chi_c = linear_coeffs(chi)
    wall_c = linear_coeffs(on_wall[0])
    pivot = next(i for i, c in enumerate(chi_c) if c != 0)
    ratio = wall_c[pivot] / chi_c[pivot]
    _, images = _substitution_for(chi)
    num = form.num.substitute(images, rg) * (ONE / ratio)
    factors = [(f.substitute(images, rg), 1) for f in off_wall]
    return RationalSeries(num, factors)


@dataclass
class VerifyReport:
    ok: bool
    characters_checked: int = 0
    components_checked: int = 0
    failures: list = field(default_factory=list)

    def add_failure(self, kind: str, **info):
        self.ok = False
        self.failures.append({"kind": kind, **info})


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def verify_residue_conditions(graph: GkmGraph, cls: ClassTuple) -> VerifyReport:
    """Check a localized class tuple against the moment graph.

    Conditions: support inside the window; each denominator factor is
    parallel to an incident edge weight and no two factors at one vertex
    are parallel (simple poles); for every edge character chi, residues
    along chi = 0 sum to zero over each connected component of the
    chi-subgraph.
    """
    report = VerifyReport(ok=True)
    vset = graph.vertex_set()
    for v, form in cls.items():
        if v not in vset:
            report.add_failure("vertex-outside-window", vertex=repr(v))
            return report
    # pole positions and orders
    for v in sorted(cls, key=repr):
        form = cls[v]
        incident = [primitive_direction(w) for w in graph.incident_weights(v)]
        seen = []
        for f in form.den:
            try:
                direction = primitive_direction(f)
            except ValueError:
                report.add_failure("bad-denominator", vertex=repr(v), factor=str(f))
                continue
            if direction not in incident:
                report.add_failure(
                    "pole-not-an-edge", vertex=repr(v), factor=str(f)
                )
            if direction in seen:
                report.add_failure(
                    "pole-order-too-high", vertex=repr(v), factor=str(f)
                )
            seen.append(direction)
    if not report.ok:
        return report
    # residue sums per character and component
    directions: dict[tuple, MultiPoly] = {}
    for _, _, w in graph.edges:
        directions.setdefault(primitive_direction(w), w)
    for direction in sorted(directions):
        chi = directions[direction]
        uf = _UnionFind(graph.vertices)
        for a, b, w in graph.edges:
            if primitive_direction(w) == direction:
                uf.union(a, b)
        report.characters_checked += 1
        sums: dict = {}
        for v, form in cls.items():
            if not any(parallel(f, chi) for f in form.den):
                continue
            root = uf.find(v)
            acc = sums.get(root)
            res = residue_along(form, chi)
            sums[root] = res if acc is None else acc + res
        for root in sorted(sums, key=repr):
            report.components_checked += 1
            total = sums[root]
            if not total.is_zero():
                report.add_failure(
                    "residue-sum-nonzero",
                    character=str(chi),
                    component=repr(root),
                    residue=str(total),
                )
    return report


# ---- classes for the rank-one lattice (d fibers) ----


def smearing_factors(d: int, k: int, j: int, rg: Ring) -> list[MultiPoly]:
    """Denominator factors at slot j: y + (2k + i + j) t for i in 0..d, i != j."""
    y = MultiPoly.gen(rg, "y")
    t = MultiPoly.gen(rg, "t")
    return [y + (2 * k + i + j) * t for i in range(d + 1) if i != j]


def f_poly(d: int, k: int, j: int, rg: Ring | None = None) -> MultiPoly:
    """Product of the slot-j denominator factors."""
    rg = rg or weight_ring(1)
    out = MultiPoly.one(rg)
    for f in smearing_factors(d, k, j, rg):
        out = out * f
    return out


def sl2_classes(d: int, k: int) -> ClassTuple:
    """Degree-d homology class supported on lattice points k..k+d.

    Entry at k+j is (-1)^j binom(d, j) / prod_{i != j} (y + (2k+i+j) t).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    rg = weight_ring(1)
    cls: ClassTuple = {}
    for j in range(d + 1):
        num = MultiPoly.constant(rg, (-1) ** j * comb(d, j))
        cls[(k + j,)] = LocalForm(num, tuple(smearing_factors(d, k, j, rg)))
    return cls


def residue_antisymmetry_check(d: int, k: int, j: int, jp: int) -> tuple[bool, RationalSeries, RationalSeries]:
    """Residues of slots j and jp along their shared pole are opposite.

    The shared factor is y + (2k + j + jp) t; returns (ok, res_j, res_jp).
    """
    if not 0 <= j < jp <= d:
        raise ValueError("need 0 <= j < jp <= d")
    cls = sl2_classes(d, k)
    rg = weight_ring(1)
    y = MultiPoly.gen(rg, "y")
    t = MultiPoly.gen(rg, "t")
    chi = y + (2 * k + j + jp) * t
    res_j = residue_along(cls[(k + j,)], chi)
    res_jp = residue_along(cls[(k + jp,)], chi)
    ok = (res_j + res_jp).is_zero() and not res_j.is_zero()
    return ok, res_j, res_jp


def specialize_t0(cls: ClassTuple) -> MultiPoly:
    """Set t = 0 in a rank-one lattice class tuple.

    Each denominator factor must keep a nonzero y part (no residual t
    poles); the entry at lattice point (a,) becomes x^a times a Laurent
    monomial in y. Returns one polynomial in the Laurent ring (x, y).
    """
    out_ring = ring(["x", "y"], laurent=["x", "y"])
    total = MultiPoly.zero(out_ring)
    for v in sorted(cls):
        form = cls[v]
        if len(v) != 1 or not isinstance(v[0], int):
            raise ValueError("t = 0 specialization needs rank-one lattice keys")
        scale = ONE
        order = 0
        for f in form.den:
            coeffs = linear_coeffs(f)
            y_part = coeffs[f.ring.index("y")]
            if y_part == 0:
                raise ValueError(f"residual t pole at vertex {v}: {f}")
            scale = scale * y_part
            order += 1
        num0 = form.num.specialize("t", 0)
        for exp, c in num0.terms.items():
            ydeg = exp[num0.ring.index("y")]
            key = (v[0], ydeg - order)
            total = total + MultiPoly.monomial(out_ring, key, c / scale)
    return total


# ---- classes for the rank-one affine flag graph ----


def flag_rank1_classes(kind: str, k: int = 0) -> ClassTuple:
    """Pole-carrying basis classes on the rank-one flag graph.

    kind "pair": 1/(y+2kt) at (k,e) and -1/(y+2kt) at (k,s).
    kind "step": 1/(y+(2k-1)t) at (k,e) and -1/(y+(2k-1)t) at (k-1,s).
    The constant class lives in flag_constant_class (needs the window).
    """
    rg = weight_ring(1)
    y = MultiPoly.gen(rg, "y")
    t = MultiPoly.gen(rg, "t")
    one = MultiPoly.one(rg)
    if kind == "pair":
        w = y + 2 * k * t
        return {(k, "e"): LocalForm(one, (w,)), (k, "s"): LocalForm(-one, (w,))}
    if kind == "step":
        w = y + (2 * k - 1) * t
        return {(k, "e"): LocalForm(one, (w,)), (k - 1, "s"): LocalForm(-one, (w,))}
    raise ValueError(f"unknown flag class kind {kind!r}")


def flag_constant_class(graph: GkmGraph) -> ClassTuple:
    one = MultiPoly.one(graph.ring)
    return {v: LocalForm(one, ()) for v in graph.vertices}


# ---- perturbations used by falsification tests ----


def perturb_numerator(cls: ClassTuple, vertex: VertexKey) -> ClassTuple:
    """Add 1 to one entry's numerator over the same denominator."""
    out = dict(cls)
    form = out[vertex]
    out[vertex] = LocalForm(form.num + 1, form.den)
    return out


def perturb_with_unit_pole(cls: ClassTuple, vertex: VertexKey, weight: MultiPoly) -> ClassTuple:
    """Add 1/weight to one entry: num/den + 1/weight over the merged den."""
    out = dict(cls)
    form = out[vertex]
    out[vertex] = LocalForm(
        form.num * weight + _product(form.den, weight.ring), form.den + (weight,)
    )
    return out


def _product(factors: Sequence[MultiPoly], rg: Ring) -> MultiPoly:
    out = MultiPoly.one(rg)
    for f in factors:
        out = out * f
    return out


# ---- serialization ----


def vertex_name(v: VertexKey) -> str:
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


def graph_to_json(graph: GkmGraph) -> dict:
    return {
        "label": graph.label,
        "ring": list(graph.ring.names),
        "vertices": [vertex_name(v) for v in graph.vertices],
        "edges": [
            {"a": vertex_name(a), "b": vertex_name(b), "weight": str(w)}
            for a, b, w in graph.edges
        ],
    }


def graph_to_dot(graph: GkmGraph) -> str:
    lines = ["graph moment {"]
    for v in graph.vertices:
        lines.append(f'  "{vertex_name(v)}";')
    for a, b, w in graph.edges:
        lines.append(f'  "{vertex_name(a)}" -- "{vertex_name(b)}" [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def class_to_json(cls: ClassTuple) -> dict:
    """Serialize a tuple of local forms; vertices sort in key order."""
    entries = []
    for v in sorted(cls.keys()):
        form = cls[v]
        entries.append(
            {
                "vertex": list(v),
                "num": poly_to_json(form.num),
                "den": [poly_to_json(f) for f in form.den],
            }
        )
    return {"entries": entries}


def class_from_json(obj: Mapping, rg: Ring) -> ClassTuple:
    cls: ClassTuple = {}
    for entry in obj["entries"]:
        raw = entry["vertex"]
        v = tuple(x if isinstance(x, str) else int(x) for x in raw)
        num = poly_from_json(entry["num"], rg)
        den = tuple(poly_from_json(f, rg) for f in entry["den"])
        cls[v] = LocalForm(num, den)
    return cls
