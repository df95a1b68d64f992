"""Formal path monomials and the weight functional on them.

Monomials are reduced words S_mu S_nu* over a directed graph: two composable
edge paths with a common range, a complex coefficient, and the empty pair at
a vertex playing the role of the vertex projection.  Products reduce by the
usual prefix rules (a word is killed unless one inner path extends the
other), which is exactly the Cuntz-Krieger calculus on the dense span.

The functional induced by a graph weight is diagonal:

    psi(S_mu S_nu*) = delta(mu, nu) * lam(nu_1) ... lam(nu_n) * g(dst(nu))

and the modular flow scales a monomial by (lam(mu)/lam(nu))^(i t).  At the
imaginary times t = +-i used by the equilibrium identity the factor is the
exact real ratio, so the identity check stays exact for exact weights.

Rank 2 monomials are pairs of a skeleton monomial and a boundary-graph
monomial; their functional is the product of the two induced functionals,
with the boundary graph carrying (lam, eta o face) as its weight.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .complexes import Oriented2Complex, boundary_graph
from .cwweights import Rank2Weight
from .errors import GraphMismatch, InputError, NonpositiveWeight
from .exact import scalar_sign, scalar_to_float
from .graphs import DirectedGraph
from .solver import GraphWeight


@dataclass(frozen=True)
class Path:
    """Composable edge sequence anchored at a source vertex; the anchor
    matters only for the empty path."""

    src: str
    edges: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)


def make_path(graph: DirectedGraph, edges, src: str | None = None) -> Path:
    edges = tuple(edges)
    if not edges:
        if src is None:
            raise InputError("empty path needs an anchor vertex")
        if not graph.has_vertex(src):
            raise InputError(f"unknown anchor vertex {src!r}")
        return Path(src, ())
    for eid in edges:
        if not graph.has_edge(eid):
            raise InputError(f"unknown edge {eid!r}")
    for e1, e2 in zip(edges, edges[1:]):
        if graph.dst(e1) != graph.src(e2):
            raise InputError(f"path breaks between {e1!r} and {e2!r}")
    start = graph.src(edges[0])
    if src is not None and src != start:
        raise InputError(f"anchor {src!r} does not match first edge source {start!r}")
    return Path(start, edges)


def path_range(graph: DirectedGraph, p: Path) -> str:
    return graph.dst(p.edges[-1]) if p.edges else p.src


def _is_prefix(p: Path, q: Path) -> bool:
    return p.src == q.src and q.edges[: len(p.edges)] == p.edges


def _concat(graph: DirectedGraph, p: Path, q: Path) -> Path:
    return Path(p.src, p.edges + q.edges)


@dataclass(frozen=True)
class PathMonomial:
    graph: DirectedGraph
    mu: Path
    nu: Path
    coeff: complex = 1

    def __post_init__(self):
        if path_range(self.graph, self.mu) != path_range(self.graph, self.nu):
            raise InputError("mu and nu must share their range vertex")

    def star(self) -> "PathMonomial":
        return PathMonomial(self.graph, self.nu, self.mu, _conj(self.coeff))

    def is_projection(self) -> bool:
        return not self.mu.edges and not self.nu.edges and self.mu.src == self.nu.src

    def scaled(self, c) -> "PathMonomial":
        return replace(self, coeff=self.coeff * c)


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def vertex_projection(graph: DirectedGraph, v: str) -> PathMonomial:
    p = make_path(graph, (), v)
    return PathMonomial(graph, p, p, 1)


def edge_isometry(graph: DirectedGraph, eid: str) -> PathMonomial:
    mu = make_path(graph, (eid,))
    nu = make_path(graph, (), graph.dst(eid))
    return PathMonomial(graph, mu, nu, 1)


def monomial(graph: DirectedGraph, mu_edges, nu_edges, src: str | None = None, coeff=1) -> PathMonomial:
    """Convenience constructor.  An empty path is anchored at the other
    path's range; ``src`` is required only when both are empty."""
    mu_edges, nu_edges = tuple(mu_edges), tuple(nu_edges)
    if not mu_edges and not nu_edges:
        mu = nu = make_path(graph, (), src)
        return PathMonomial(graph, mu, nu, coeff)
    if mu_edges and nu_edges:
        return PathMonomial(graph, make_path(graph, mu_edges), make_path(graph, nu_edges), coeff)
    full = make_path(graph, mu_edges or nu_edges)
    empty = make_path(graph, (), path_range(graph, full))
    if mu_edges:
        return PathMonomial(graph, full, empty, coeff)
    return PathMonomial(graph, empty, full, coeff)


def monomial_product(a: PathMonomial, b: PathMonomial) -> list[PathMonomial]:
    """Reduced product; the result is the empty list (zero) or one monomial.

    (S_mu S_nu*)(S_alpha S_beta*) survives only if alpha extends nu or nu
    extends alpha, collapsing to S_(mu alpha') S_beta* or S_mu S_(beta nu')*.
    """
    if a.graph != b.graph:
        raise GraphMismatch("monomials over different graphs")
    g = a.graph
    coeff = a.coeff * b.coeff
    if coeff == 0:
        return []
    nu, alpha = a.nu, b.mu
    if _is_prefix(nu, alpha):
        rest = Path(path_range(g, nu), alpha.edges[len(nu.edges):])
        return [PathMonomial(g, _concat(g, a.mu, rest), b.nu, coeff)]
    if _is_prefix(alpha, nu):
        rest = Path(path_range(g, alpha), nu.edges[len(alpha.edges):])
        return [PathMonomial(g, a.mu, _concat(g, b.nu, rest), coeff)]
    return []


@dataclass(frozen=True)
class Rank2Monomial:
    """Tensor monomial: a skeleton factor and a boundary-graph factor."""

    skeleton_part: PathMonomial
    boundary_part: PathMonomial

    @property
    def coeff(self):
        return self.skeleton_part.coeff * self.boundary_part.coeff


def rank2_product(a: Rank2Monomial, b: Rank2Monomial) -> list[Rank2Monomial]:
    ps = monomial_product(a.skeleton_part, b.skeleton_part)
    if not ps:
        return []
    pb = monomial_product(a.boundary_part, b.boundary_part)
    if not pb:
        return []
    return [Rank2Monomial(ps[0], pb[0])]


# ---------------------------------------------------------------------------
# Weight functionals and the modular flow
# ---------------------------------------------------------------------------

@dataclass
class WeightFunctional:
    """Functional induced by a graph weight, together with the sign
    convention of the equilibrium identity.

    With the flow sigma_t(S_e) = lam(e)^(i t), the identity
    psi(x y) = psi(y sigma_(i * beta_sign)(x)) holds at beta_sign = -1 for
    weights satisfying the weight equation; the sign stays configurable
    because the opposite convention is also in circulation.
    """

    graph: DirectedGraph
    weight: GraphWeight
    beta_sign: int = -1

    def lam_of_path(self, p: Path):
        acc = None
        for eid in p.edges:
            v = self.weight.lam[eid]
            acc = v if acc is None else acc * v
        return acc if acc is not None else Fraction(1)

    def __call__(self, m: PathMonomial):
        return self.eval(m)

    def eval(self, m: PathMonomial):
        if m.graph != self.graph:
            raise GraphMismatch("monomial over a different graph")
        if m.mu != m.nu:
            return 0
        value = self.lam_of_path(m.nu) * self.weight.g[path_range(self.graph, m.nu)]
        return m.coeff * value if m.coeff != 1 else value

    def evolve(self, m: PathMonomial, t) -> PathMonomial:
        """Apply sigma_t; ``t`` may be real or purely imaginary (s*1j with
        integer s keeps exact coefficients)."""
        ratio = self._positive_ratio(m)
        return m.scaled(_power_it(ratio, t))

    def _positive_ratio(self, m: PathMonomial):
        num = self.lam_of_path(m.mu)
        den = self.lam_of_path(m.nu)
        for p in (m.mu, m.nu):
            for eid in p.edges:
                if scalar_sign(self.weight.lam[eid]) <= 0:
                    raise NonpositiveWeight(f"lambda({eid}) must be positive for the flow")
        return num / den


def _power_it(ratio, t):
    """(ratio)^(i t) for positive ratio: exact for t = s*1j with integer s,
    numeric otherwise."""
    if t == 0:
        return 1
    tc = complex(t)
    if tc.real == 0:
        s = tc.imag
        if s == int(s):
            n = -int(s)  # (r)^(i * i s) = r^(-s)
            if n >= 0:
                out = 1
                for _ in range(n):
                    out = out * ratio
                return out
            out = 1
            for _ in range(-n):
                out = out * ratio
            return 1 / out
    import cmath
    import math

    return cmath.exp(1j * tc * math.log(scalar_to_float(ratio)))


@dataclass
class Rank2Functional:
    """Product functional psi1 (x) psi2 on rank 2 monomials: psi1 from
    (g, lambda_tilde) on the skeleton, psi2 from (lam, eta o face) on the
    boundary graph."""

    skeleton: WeightFunctional
    boundary: WeightFunctional
    beta_sign: int = -1

    def __call__(self, m: Rank2Monomial):
        return self.eval(m)

    def eval(self, m: Rank2Monomial):
        v1 = self.skeleton.eval(m.skeleton_part)
        if v1 == 0:
            return 0
        v2 = self.boundary.eval(m.boundary_part)
        return v1 * v2

    def evolve(self, m: Rank2Monomial, t) -> Rank2Monomial:
        return Rank2Monomial(
            self.skeleton.evolve(m.skeleton_part, t),
            self.boundary.evolve(m.boundary_part, t),
        )


def functional_from_graph_weight(graph: DirectedGraph, w: GraphWeight, beta_sign: int = -1) -> WeightFunctional:
    from .errors import MissingValue

    if not w.is_total_on(graph):
        raise MissingValue("weight is not total on the graph")
    return WeightFunctional(graph, w, beta_sign)


def functional_from_rank2(c: Oriented2Complex, w: Rank2Weight, beta_sign: int = -1) -> Rank2Functional:
    from .errors import MissingValue

    if not w.is_total_on(c):
        raise MissingValue("rank-2 weight is not total on the complex")
    bg = boundary_graph(c)
    eta_edges = {}
    for eid, (fid, pos) in bg.labels.items():
        eta_edges[eid] = w.eta_at(fid, pos)
    psi1 = WeightFunctional(c.skeleton, GraphWeight(dict(w.g), dict(w.lambda_tilde)), beta_sign)
    psi2 = WeightFunctional(bg.graph, GraphWeight(dict(w.lam), eta_edges), beta_sign)
    return Rank2Functional(psi1, psi2, beta_sign)


# ---------------------------------------------------------------------------
# Identity checkers
# ---------------------------------------------------------------------------

@dataclass
class KMSReport:
    passed: bool
    pairs_checked: int
    max_discrepancy: float
    worst_pair: tuple | None
    tol: float

    def to_dict(self) -> dict:
        worst = None
        if self.worst_pair is not None:
            worst = [repr(self.worst_pair[0]), repr(self.worst_pair[1])]
        return {
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
            "max_discrepancy": self.max_discrepancy,
            "worst_pair": worst,
            "tol": self.tol,
        }


def _product_eval(psi, x, y):
    if isinstance(x, Rank2Monomial):
        terms = rank2_product(x, y)
    else:
        terms = monomial_product(x, y)
    acc = 0
    for t in terms:
        acc = acc + psi.eval(t)
    return acc


def _to_complex(v) -> complex:
    if isinstance(v, complex):
        return v
    return complex(scalar_to_float(v))


def kms_check(psi, sample: list[tuple], tol=Fraction(1, 10**10)) -> KMSReport:
    """Check psi(x y) = psi(y sigma_(i beta_sign)(x)) over monomial pairs."""
    tol_f = float(tol)
    worst = None
    maxd = 0.0
    t = 1j * psi.beta_sign
    for x, y in sample:
        lhs = _product_eval(psi, x, y)
        rhs = _product_eval(psi, y, psi.evolve(x, t))
        d = abs(_to_complex(lhs) - _to_complex(rhs))
        if d > maxd:
            maxd = d
            worst = (x, y)
    return KMSReport(
        passed=maxd <= tol_f,
        pairs_checked=len(sample),
        max_discrepancy=maxd,
        worst_pair=worst,
        tol=tol_f,
    )


@dataclass
class GaugeReport:
    passed: bool
    checked: int
    violations: list

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "violations": [repr(v) for v in self.violations]}


def gauge_check(psi, sample: list, z_samples: tuple = (1j, complex(-0.6, 0.8))) -> GaugeReport:
    """Gauge invariance: on the diagonal support of psi the path lengths
    agree, so gamma_z rescales by z^(|mu|-|nu|) = 1.  Checks the support
    condition exactly and spot-checks the rescaled values at sample z."""
    violations: list = []
    for m in sample:
        val = _to_complex(psi.eval(m))
        if val == 0:
            continue
        if isinstance(m, Rank2Monomial):
            ks = [
                len(m.skeleton_part.mu) - len(m.skeleton_part.nu),
                len(m.boundary_part.mu) - len(m.boundary_part.nu),
            ]
        else:
            ks = [len(m.mu) - len(m.nu)]
        if any(k != 0 for k in ks):
            violations.append(m)
            continue
        for z in z_samples:
            for k in ks:
                if abs((z ** k) * val - val) > 1e-12:
                    violations.append((m, z))
    return GaugeReport(passed=not violations, checked=len(sample), violations=violations)


# ---------------------------------------------------------------------------
# Enumeration helpers for property sweeps
# ---------------------------------------------------------------------------

def all_paths(graph: DirectedGraph, max_len: int) -> list[Path]:
    """Every composable path of length <= max_len, in deterministic order."""
    out = [Path(v, ()) for v in graph.vertices]
    frontier = list(out)
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            tail = path_range(graph, p)
            for eid in graph.out_edges(tail):
                nxt.append(Path(p.src, p.edges + (eid,)))
        out.extend(nxt)
        frontier = nxt
    return out


def all_monomials(graph: DirectedGraph, max_len: int) -> list[PathMonomial]:
    """Every reduced monomial S_mu S_nu* with both path lengths <= max_len."""
    paths = all_paths(graph, max_len)
    by_range: dict[str, list[Path]] = {}
    for p in paths:
        by_range.setdefault(path_range(graph, p), []).append(p)
    out = []
    for group in by_range.values():
        for mu in group:
            for nu in group:
                out.append(PathMonomial(graph, mu, nu, 1))
    return out
