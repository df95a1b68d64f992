"""Desk-scale rank-2 building combinatorics: projective planes, triangle
presentations, their quotient complexes, sector graphs, and the shape-lattice
weight law.

The sector graphs live on the incident point-line pairs of the plane.  The
exact incidence rule that picks the successor pair is geometric in origin and
not uniquely pinned down by combinatorics alone, so it is pluggable: the
default rule determines the new pair through the join of the current triple's
third generator with the chosen new point (and dually through line meets in
the reverse direction).  Whatever the rule, the cardinality contract (out
degree exactly q^2) is enforced and its violation raises AmbiguousSector
rather than silently producing a defective graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complexes import Oriented2Complex, build_complex
from .errors import AmbiguousSector, InputError, InvalidTriple, NonpositiveBase
from .exact import scalar_sign, scalar_to_float
from .graphs import DirectedGraph, build_graph
from .solver import DEFAULT_EPS, SpecialWeightFamily, solve_special_weights


@dataclass(frozen=True)
class IncidencePlane:
    """Finite projective plane of order q given by its point set and lines
    (as point sets)."""

    points: tuple[str, ...]
    lines: tuple[frozenset, ...]
    q: int

    def validate(self) -> None:
        n = self.q * self.q + self.q + 1
        if len(self.points) != n:
            raise InputError(f"expected {n} points, got {len(self.points)}")
        if len(set(self.lines)) != n:
            raise InputError(f"expected {n} distinct lines, got {len(set(self.lines))}")
        for line in self.lines:
            if len(line) != self.q + 1:
                raise InputError(f"line {sorted(line)} does not have q+1 points")
        for p in self.points:
            deg = sum(1 for line in self.lines if p in line)
            if deg != self.q + 1:
                raise InputError(f"point {p!r} lies on {deg} lines, expected {self.q + 1}")
        for p1, p2 in combinations(self.points, 2):
            common = [line for line in self.lines if p1 in line and p2 in line]
            if len(common) != 1:
                raise InputError(f"points {p1!r},{p2!r} lie on {len(common)} common lines")

    def join(self, p1: str, p2: str) -> frozenset:
        """The unique line through two distinct points."""
        for line in self.lines:
            if p1 in line and p2 in line:
                return line
        raise InputError(f"no line through {p1!r} and {p2!r}")

    def meet(self, l1: frozenset, l2: frozenset) -> str:
        """The unique intersection point of two distinct lines."""
        common = l1 & l2
        if len(common) != 1:
            raise InputError("lines do not meet in a single point")
        return next(iter(common))


def fano_plane() -> IncidencePlane:
    """The 7-point plane from the difference set {0, 1, 3} mod 7."""
    points = tuple(f"p{i}" for i in range(7))
    lines = tuple(
        frozenset({f"p{i % 7}", f"p{(i + 1) % 7}", f"p{(i + 3) % 7}"}) for i in range(7)
    )
    plane = IncidencePlane(points, lines, 2)
    plane.validate()
    return plane


@dataclass(frozen=True)
class TrianglePresentation:
    """Relation triples over a projective plane with a point-line bijection.

    Triples are stored closed under cyclic rotation; every rotation (x, y, .)
    requires y on the line of x, and each incident pair extends to exactly
    one triple (so ``third`` is single valued)."""

    plane: IncidencePlane
    line_of: dict  # point -> frozenset of points (a line of the plane)
    triples: tuple[tuple[str, str, str], ...]

    def validate(self) -> None:
        if set(self.line_of.keys()) != set(self.plane.points):
            raise InvalidTriple("point-line map is not total")
        images = {self.line_of[p] for p in self.plane.points}
        if len(images) != len(self.plane.points):
            raise InvalidTriple("point-line map is not a bijection")
        if not images <= set(self.plane.lines):
            raise InvalidTriple("point-line map does not land in the plane's lines")
        closure = set()
        for (x, y, z) in self.triples:
            closure |= {(x, y, z), (y, z, x), (z, x, y)}
        pair_third: dict = {}
        for (x, y, z) in closure:
            if y not in self.line_of[x]:
                raise InvalidTriple(f"triple ({x},{y},{z}): {y!r} is not on the line of {x!r}")
            if (x, y) in pair_third and pair_third[(x, y)] != z:
                raise InvalidTriple(f"pair ({x},{y}) extends to two different triples")
            pair_third[(x, y)] = z

    def rotation_closure(self) -> set[tuple[str, str, str]]:
        out = set()
        for (x, y, z) in self.triples:
            out |= {(x, y, z), (y, z, x), (z, x, y)}
        return out

    def incident_pairs(self) -> list[tuple[str, str]]:
        """All (a, b) with b on the line of a, in stable point order."""
        order = {p: i for i, p in enumerate(self.plane.points)}
        out = []
        for a in self.plane.points:
            for b in sorted(self.line_of[a], key=order.get):
                out.append((a, b))
        return out

    def third(self, a: str, b: str) -> str:
        matches = {z for (x, y, z) in self.rotation_closure() if (x, y) == (a, b)}
        if len(matches) != 1:
            raise AmbiguousSector(
                f"pair ({a},{b}) lies in {len(matches)} triples", vertex=(a, b)
            )
        return next(iter(matches))


def presentation_from_spec(spec: dict) -> TrianglePresentation:
    """Parse the JSON presentation format: q, points, lines (point lists),
    lambda (point -> line index), triples."""
    points = tuple(spec["points"])
    lines = tuple(frozenset(line) for line in spec["lines"])
    plane = IncidencePlane(points, lines, int(spec["q"]))
    plane.validate()
    line_of = {p: lines[int(idx)] for p, idx in spec["lambda"].items()}
    tp = TrianglePresentation(plane, line_of, tuple(tuple(t) for t in spec["triples"]))
    tp.validate()
    return tp


def presentation_complex(tp: TrianglePresentation) -> Oriented2Complex:
    """One-vertex quotient complex: a loop per generator, a triangular face
    per cyclic relation class (each class contributes once, with the stored
    starting generator)."""
    tp.validate()
    seen_classes: set[frozenset] = set()
    canonical: list[tuple[str, str, str]] = []
    for t in tp.triples:
        cls = frozenset({t, (t[1], t[2], t[0]), (t[2], t[0], t[1])})
        if cls not in seen_classes:
            seen_classes.add(cls)
            canonical.append(t)
    spec = {
        "vertices": ["v"],
        "edges": [{"id": p, "src": "v", "dst": "v"} for p in tp.plane.points],
        "faces": [
            {"id": f"sigma{i}", "boundary": list(t)} for i, t in enumerate(canonical)
        ],
    }
    return build_complex(spec)


# ---------------------------------------------------------------------------
# Sector graphs
# ---------------------------------------------------------------------------

def _pair_id(a: str, b: str) -> str:
    return f"{a}|{b}"


class TripleJoinSectorRule:
    """Default successor rule for the sector graphs.

    Forward direction: from (a, b), with x the third generator of the triple
    through (a, b), each admissible new point d (off the line of b) selects
    the unique c whose line joins x and d.  Reverse direction, dually: each
    admissible new point c (with a off the line of c) selects d as the meet
    of the lines of c and x.
    """

    name = "triple-join"

    def plus_targets(self, tp: TrianglePresentation, a: str, b: str) -> list[tuple[str, str]]:
        x = tp.third(a, b)
        plane = tp.plane
        line_to_point = {tp.line_of[p]: p for p in plane.points}
        out = []
        for d in plane.points:
            if d in tp.line_of[b]:
                continue
            if d == x:
                raise AmbiguousSector(
                    f"degenerate choice d == x for pair ({a},{b})", vertex=(a, b), choice=d
                )
            line = plane.join(x, d)
            c = line_to_point.get(line)
            if c is None:
                raise AmbiguousSector(
                    f"no generator with line through {x!r} and {d!r}", vertex=(a, b), choice=d
                )
            out.append((c, d))
        return out

    def minus_targets(self, tp: TrianglePresentation, a: str, b: str) -> list[tuple[str, str]]:
        x = tp.third(a, b)
        plane = tp.plane
        out = []
        for c in plane.points:
            if a in tp.line_of[c]:
                continue
            if c == x:
                raise AmbiguousSector(
                    f"degenerate choice c == x for pair ({a},{b})", vertex=(a, b), choice=c
                )
            d = plane.meet(tp.line_of[c], tp.line_of[x])
            out.append((c, d))
        return out


def sector_graphs(tp: TrianglePresentation, rule=None) -> tuple[DirectedGraph, DirectedGraph]:
    """Build the forward and reverse sector graphs on the incident pairs.

    Both graphs are validated against the cardinality contract: exactly q^2
    out-edges at every vertex, every target an incident pair.  Violations
    raise AmbiguousSector with the failing pair in the payload.
    """
    tp.validate()
    rule = rule or TripleJoinSectorRule()
    pairs = tp.incident_pairs()
    q2 = tp.plane.q ** 2
    pair_set = set(pairs)
    graphs = []
    for direction, targets_of in (("plus", rule.plus_targets), ("minus", rule.minus_targets)):
        edges = []
        for (a, b) in pairs:
            targets = targets_of(tp, a, b)
            if len(targets) != q2 or len(set(targets)) != q2:
                raise AmbiguousSector(
                    f"{direction} rule yields {len(targets)} targets at ({a},{b}), expected {q2}",
                    vertex=(a, b),
                    candidates=targets,
                )
            for (c, d) in targets:
                if (c, d) not in pair_set:
                    raise AmbiguousSector(
                        f"{direction} rule left the vertex set at ({a},{b}) -> ({c},{d})",
                        vertex=(a, b),
                        choice=(c, d),
                    )
                edges.append({
                    "id": f"{_pair_id(a, b)}>{_pair_id(c, d)}",
                    "src": _pair_id(a, b),
                    "dst": _pair_id(c, d),
                })
        graphs.append(
            build_graph({"vertices": [_pair_id(a, b) for (a, b) in pairs], "edges": edges})
        )
    return graphs[0], graphs[1]


@dataclass
class MatchedPair:
    """Weights on the two sector graphs agreeing on the product lam*g at
    every vertex (after fixing the relative scale)."""

    plus: SpecialWeightFamily
    minus: SpecialWeightFamily
    scale: float
    psi_values: dict[str, float]


def matched_weight_search(gplus: DirectedGraph, gminus: DirectedGraph, eps=DEFAULT_EPS) -> list[MatchedPair]:
    """Search constant-edge-weight faithful weights on both sector graphs and
    keep the pairs whose vertexwise products lam*g agree up to one global
    rescaling of g- (weights are only defined up to scale)."""
    if set(gplus.vertices) != set(gminus.vertices):
        raise InputError("sector graphs must share their vertex set")
    rp = solve_special_weights(gplus, eps)
    rm = solve_special_weights(gminus, eps)
    out = []
    for fp in rp.faithful_families():
        vp = dict(zip(gplus.vertices, fp.kernel.positive_floats()))
        lp = fp.eta.to_float()
        prod_p = {v: lp * vp[v] for v in gplus.vertices}
        for fm in rm.faithful_families():
            vm = dict(zip(gminus.vertices, fm.kernel.positive_floats()))
            lm = fm.eta.to_float()
            prod_m = {v: lm * vm[v] for v in gminus.vertices}
            ratios = [prod_p[v] / prod_m[v] for v in gplus.vertices]
            t = ratios[0]
            if all(abs(r - t) <= 1e-10 * max(1.0, abs(t)) for r in ratios):
                out.append(
                    MatchedPair(plus=fp, minus=fm, scale=t, psi_values=dict(prod_p))
                )
    return out


# ---------------------------------------------------------------------------
# Shape-lattice weights
# ---------------------------------------------------------------------------

@dataclass
class ShapeLattice:
    """Truncated grid of parallelogram shapes (m1, m2) with q^2-fold
    branching per direction: every node of shape m has q^2 children of shape
    m + e_i in direction i, all sharing the node's base letter."""

    q: int
    bound: tuple[int, int]
    weights: dict  # (letter, m1, m2) -> scalar

    @property
    def branching(self) -> int:
        return self.q * self.q


def decay_law(q: int):
    """The balanced solution law: each unit shape step divides the weight by
    the branching factor q^2, so a node equals the sum of its children."""
    ratio = Fraction(1, q * q)

    def law(m1: int, m2: int) -> Fraction:
        return ratio ** (m1 + m2)

    return law


@dataclass
class LatticeReport:
    passed: bool
    max_residual: float
    residuals: dict
    lattice: ShapeLattice
    exact: bool

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "residuals": {
                f"{k[0]},{k[1]},{k[2]},dir{k[3]}": str(v) for k, v in self.residuals.items()
            },
            "exact": self.exact,
        }


def lattice_weight_check(q: int, bound: tuple[int, int], base: dict, law=None) -> LatticeReport:
    """Instantiate weights on the truncated shape lattice and verify the
    branching equation g(u) = sum of g over the q^2 children, in both
    directions, at every node whose children stay inside the bound.

    ``base`` gives the positive value at each base letter; ``law`` maps a
    shape to its decay multiplier and defaults to the balanced law.
    """
    if q < 1:
        raise InputError("q must be positive")
    m1max, m2max = bound
    lawf = law or decay_law(q)
    for letter, v in base.items():
        if scalar_sign(v) <= 0:
            raise NonpositiveBase(f"base value for {letter!r} must be positive")
    weights = {}
    for letter, v in base.items():
        for m1 in range(m1max + 1):
            for m2 in range(m2max + 1):
                weights[(letter, m1, m2)] = v * lawf(m1, m2)
    lattice = ShapeLattice(q, bound, weights)
    branch = lattice.branching
    residuals = {}
    exact = True
    for (letter, m1, m2), val in weights.items():
        for direction, (c1, c2) in ((1, (m1 + 1, m2)), (2, (m1, m2 + 1))):
            if c1 > m1max or c2 > m2max:
                continue
            child = weights[(letter, c1, c2)]
            r = val - branch * child
            if isinstance(r, float):
                exact = False
            residuals[(letter, m1, m2, direction)] = r
    maxr = max((abs(scalar_to_float(r)) for r in residuals.values()), default=0.0)
    passed = all(
        (r == 0 if not isinstance(r, float) else abs(r) <= 1e-12) for r in residuals.values()
    )
    return LatticeReport(
        passed=passed,
        max_residual=maxr,
        residuals=residuals,
        lattice=lattice,
        exact=exact,
    )
