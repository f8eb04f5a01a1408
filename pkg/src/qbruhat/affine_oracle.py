"""First-principles verification in the affine orbit of a dominant shape.

The orbit of the shape inside the affine weight lattice consists of the
elements x*lambda + n*delta with x a coset representative and n an integer;
they are stored as (vertex, delta) pairs.  The partial order is generated by
steps mu -> r_xi(mu) with <mu, xi^vee> < 0, where xi runs over the positive
finite roots gamma and the affine roots delta - gamma.  On level-zero
weights the affine reflection acts by

    r_{delta-gamma}(mu) = r_gamma(mu) + <mu, gamma^vee> delta,

because the delta-gamma coroot differs from -gamma^vee by a central term
that pairs to zero with level-zero weights.  Both step kinds therefore
reduce to integer bookkeeping on (vertex, delta):

* finite gamma, valid when <x Lambda, gamma^vee> < 0: delta unchanged;
* affine delta-gamma, valid when <x Lambda, gamma^vee> > 0: delta grows
  by that pairing.

Covers never need other reflections, so chain searches over these steps are
exhaustive.  Delta never decreases along a step, which bounds every search
between the two endpoint delta-coefficients; the window parameter only
guards entry and is reported distinctly from "no chain".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import LevelZeroShape, pair
from .qbg import PQBG


class InconclusiveSearch(RuntimeError):
    """The requested check does not fit inside the delta window."""


@dataclass(frozen=True)
class AffineOrbitElement:
    vertex: int  # coset-representative vertex in the graph
    delta: int  # integer delta-coefficient


@dataclass(frozen=True)
class RaisingStep:
    kind: str  # "finite" | "affine"
    root: int  # index of gamma among the positive roots
    source: AffineOrbitElement
    target: AffineOrbitElement
    pairing: int  # <source, xi^vee>, always negative


@dataclass(frozen=True)
class CoverEdgeReport:
    window: int
    covers_checked: int
    edges_checked: int
    mismatches: tuple[str, ...]
    inconclusive: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "covers_checked": self.covers_checked,
            "edges_checked": self.edges_checked,
            "mismatches": list(self.mismatches),
            "inconclusive": list(self.inconclusive),
        }


@dataclass
class AffineOracle:
    """Chain searches and cover/edge correspondence for one shape and graph."""

    shape: LevelZeroShape
    g: PQBG
    default_window: int = 10
    _pairings: list[tuple[int, ...]] = field(init=False, repr=False)
    _step_vertex: list[tuple[int, ...]] = field(init=False, repr=False)
    _dist_memo: dict = field(default_factory=dict, repr=False)
    _chain_memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        g, rs = self.g, self.g.rs
        if g.J != self.shape.parabolic:
            # orbit elements are keyed by vertex, which is only faithful when
            # the graph uses the shape's own parabolic set
            raise ValueError("oracle requires the graph built for the shape's parabolic set")
        lam = self.shape.classical
        group = g.group
        # <x Lambda, gamma^vee> and the vertex of proj(r_gamma x), per (vertex, root)
        pairings = []
        step_vertex = []
        for v in range(g.num_vertices):
            w = g.orbit_weight(v, lam)
            pairings.append(tuple(pair(w, c) for c in rs.positive_coroots))
            step_vertex.append(
                tuple(
                    g.vertex_of_element(group.mul(group.reflection(i), g.rep_id(v)))
                    for i in range(rs.num_positive)
                )
            )
        self._pairings = pairings
        self._step_vertex = step_vertex

    def _window(self, window: int | None) -> int:
        return self.default_window if window is None else window

    def _check_window(self, window: int, *elements: AffineOrbitElement) -> None:
        for mu in elements:
            if abs(mu.delta) > window:
                raise InconclusiveSearch(
                    f"delta-coefficient {mu.delta} outside window {window}; enlarge the window"
                )

    # -- steps ---------------------------------------------------------------

    def raising_steps(self, mu: AffineOrbitElement) -> tuple[RaisingStep, ...]:
        """All order-lowering steps out of mu over the two admissible root kinds."""
        steps = []
        prow = self._pairings[mu.vertex]
        trow = self._step_vertex[mu.vertex]
        for i, p in enumerate(prow):
            if p < 0:
                steps.append(
                    RaisingStep("finite", i, mu, AffineOrbitElement(trow[i], mu.delta), p)
                )
            elif p > 0:
                steps.append(
                    RaisingStep("affine", i, mu, AffineOrbitElement(trow[i], mu.delta + p), -p)
                )
        return tuple(steps)

    # -- order ---------------------------------------------------------------

    def dist(self, mu: AffineOrbitElement, nu: AffineOrbitElement, window: int | None = None) -> int | None:
        """Maximal chain length from mu down to nu, or None when mu is not above nu.

        Every traversed delta lies between mu.delta and nu.delta, so the
        result is window-independent once both endpoints fit.
        """
        w = self._window(window)
        self._check_window(w, mu, nu)
        return self._dist(mu, nu)

    def _dist(self, mu: AffineOrbitElement, nu: AffineOrbitElement) -> int | None:
        if mu == nu:
            return 0
        if mu.delta > nu.delta:
            return None
        key = (mu, nu)
        if key in self._dist_memo:
            return self._dist_memo[key]
        best = None
        for step in self.raising_steps(mu):
            if step.target.delta > nu.delta:
                continue
            sub = self._dist(step.target, nu)
            if sub is not None and (best is None or sub + 1 > best):
                best = sub + 1
        self._dist_memo[key] = best
        return best

    def is_cover(self, mu: AffineOrbitElement, nu: AffineOrbitElement, window: int | None = None) -> bool:
        return self.dist(mu, nu, window) == 1

    # -- chains ----------------------------------------------------------------

    def verify_sigma_chain(
        self,
        mu: AffineOrbitElement,
        nu: AffineOrbitElement,
        sigma: Fraction,
        window: int | None = None,
    ) -> bool:
        """Whether some saturated cover chain from mu to nu has all pairings sigma-integral."""
        w = self._window(window)
        self._check_window(w, mu, nu)
        q = sigma.denominator
        return self._sigma_chain(mu, nu, q)

    def _sigma_chain(self, mu: AffineOrbitElement, nu: AffineOrbitElement, q: int) -> bool:
        if mu == nu:
            return True
        if mu.delta > nu.delta:
            return False
        key = (mu, nu, q)
        if key in self._chain_memo:
            return self._chain_memo[key]
        self._chain_memo[key] = False  # steps strictly descend, so re-entry cannot occur
        ok = False
        for step in self.raising_steps(mu):
            if step.target.delta > nu.delta or step.pairing % q != 0:
                continue
            if self._dist(mu, step.target) == 1 and self._sigma_chain(step.target, nu, q):
                ok = True
                break
        self._chain_memo[key] = ok
        return ok

    # -- path-level checks -------------------------------------------------------

    def verify_ls_path(self, lifted, window: int | None = None) -> bool:
        """Certify a lifted path: adjacent weights strictly ordered with sigma-chains.

        ``lifted`` is any object with ``weights`` (orbit elements) and
        ``times`` attributes, as produced by the degree module.  With
        ``window=None`` the window is auto-sized to the lift.
        """
        weights = tuple(lifted.weights)
        if window is None:
            window = max(
                self.default_window, max((abs(m.delta) for m in weights), default=0)
            )
        self._check_window(window, *weights)
        for k in range(len(weights) - 1):
            mu, nu = weights[k], weights[k + 1]
            d = self._dist(mu, nu)
            if d is None or d < 1:
                return False
            sigma = lifted.times[k + 1]
            if not self._sigma_chain(mu, nu, sigma.denominator):
                return False
        return True

    # -- cover/edge correspondence --------------------------------------------------

    def _edge_root_from_cover(self, step: RaisingStep) -> tuple[int, ...]:
        # beta = w^{-1} gamma (finite) or -w^{-1} gamma (affine), w the smaller
        # element's representative; returned in simple-root coordinates.
        g = self.g
        group = g.group
        winv = group.inverse(g.rep_id(step.target.vertex))
        coords = group.apply_root_coords(winv, g.rs.positive_roots[step.root].coords)
        if step.kind == "affine":
            coords = tuple(-c for c in coords)
        return coords

    def covers_to_edges(self, window: int | None = None) -> CoverEdgeReport:
        """Exhaustive two-way check between orbit covers and graph edges in a slice.

        Every cover found in the |delta| <= window slice must map to a graph
        edge of the matching kind, and every graph edge instantiated at each
        delta in the slice must map back to a cover.
        """
        w = self._window(window)
        g = self.g
        values = g.pair_values(self.shape.classical)
        mismatches: list[str] = []
        inconclusive: list[str] = []
        covers = 0
        edges_checked = 0

        def name(mu: AffineOrbitElement) -> str:
            return f"({g.vertex_name(mu.vertex)}, {mu.delta}d)"

        for v in range(g.num_vertices):
            for n in range(-w, w + 1):
                mu = AffineOrbitElement(v, n)
                for step in self.raising_steps(mu):
                    if abs(step.target.delta) > w:
                        inconclusive.append(f"step {name(mu)} -> {name(step.target)} leaves the window")
                        continue
                    if self._dist(mu, step.target) != 1:
                        continue
                    covers += 1
                    beta = self._edge_root_from_cover(step)
                    idx = g.rs.root_index(beta)
                    if idx is None or idx not in g.labels:
                        mismatches.append(f"cover {name(mu)} > {name(step.target)}: bad label {beta}")
                        continue
                    e = g.edge(step.target.vertex, idx)
                    want_quantum = step.kind == "affine"
                    if e is None or e.target != mu.vertex or e.quantum != want_quantum:
                        mismatches.append(
                            f"cover {name(mu)} > {name(step.target)}: no matching {step.kind} edge"
                        )

        for e in g.edges:
            wmoved = g.group.apply_root_coords(g.rep_id(e.source), g.rs.positive_roots[e.label].coords)
            positive = all(c >= 0 for c in wmoved)
            if positive == e.quantum:
                mismatches.append(
                    f"edge {g.vertex_name(e.source)} -> {g.vertex_name(e.target)}: "
                    f"sign of the moved label contradicts the edge kind"
                )
                continue
            # the smaller element sits at the edge source; its cover partner at
            # the target has delta lowered by the pairing on quantum edges
            gain = 0 if not e.quantum else values[e.label]
            for n in range(-w, w + 1):
                edges_checked += 1
                nu = AffineOrbitElement(e.source, n)
                mu = AffineOrbitElement(e.target, n - gain)
                if abs(mu.delta) > w:
                    inconclusive.append(f"edge lift {name(mu)} > {name(nu)} leaves the window")
                    continue
                if self._dist(mu, nu) != 1:
                    mismatches.append(f"edge lift {name(mu)} > {name(nu)} is not a cover")

        return CoverEdgeReport(w, covers, edges_checked, tuple(mismatches), tuple(inconclusive))
