"""The degree of a quantum LS path, with its certifying affine lift.

The degree is computed from the closed formula

    deg(eta) = - sum_{p=1}^{s-1} (1 - sigma_p) <Lambda, wt(d_p)>,

where d_p is any shortest sigma_p-admissible directed path connecting the
p-th pair of directions; the pairing does not depend on that choice (the
well-definedness is property-tested, not assumed silently).  The lift
raises each direction x_p to the affine orbit element with delta-coefficient
equal to the sum of the earlier segment energies, and records the cover
chain each segment path induces; the oracle re-certifies those chains from
first principles.  The formula is the product here; the lift is retained
purely as verification machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine_oracle import AffineOrbitElement
from .cartan import LevelZeroShape, Weight, pair
from .qbg import PQBG, DirectedPath
from .qls import QLSPath, _structure_ok

SegmentCache = dict


class InvalidQLSPath(ValueError):
    """The input is not a valid strong-variant quantum LS path."""


class NonIntegralDegree(RuntimeError):
    """The degree sum failed an exactness assertion; this signals a bug."""


@dataclass(frozen=True)
class SegmentData:
    index: int
    source: int  # x_{p+1}
    target: int  # x_p
    sigma: Fraction
    path: DirectedPath  # a shortest sigma-admissible path from source to target
    energy: int  # <Lambda, wt(path)>


@dataclass(frozen=True)
class AffineLSPath:
    """A lifted path: orbit weights sharing the source times, plus per-segment chains."""

    weights: tuple[AffineOrbitElement, ...]
    times: tuple[Fraction, ...]
    segment_chains: tuple[tuple[AffineOrbitElement, ...], ...]


def segment_energy(
    g: PQBG,
    lam: Weight,
    x_next: int,
    x_cur: int,
    sigma: Fraction,
    index: int = 0,
    tie_break: str = "forward",
) -> SegmentData:
    """One canonical segment datum for the pair (x_cur <- x_next) at time sigma."""
    if x_next == x_cur:
        return SegmentData(index, x_next, x_cur, sigma, DirectedPath((x_cur,), (), ()), 0)
    result = g.sigma_path(x_cur, x_next, sigma, lam, tie_break=tie_break)
    if result.path is None or not result.shortest:
        raise InvalidQLSPath(
            f"no admissible shortest path from vertex {x_next} to {x_cur} at sigma={sigma}"
        )
    return SegmentData(index, x_next, x_cur, sigma, result.path, pair(lam, g.path_weight(result.path)))


def _segments(
    path: QLSPath,
    shape: LevelZeroShape,
    g: PQBG,
    cache: SegmentCache | None,
    tie_break: str,
) -> list[SegmentData]:
    if not _structure_ok(g, path):
        raise InvalidQLSPath(f"structurally invalid path {path}")
    lam = shape.classical
    out = []
    for p, (x_cur, x_next, sigma) in enumerate(path.turning_points(), start=1):
        key = (x_next, x_cur, sigma)
        seg = cache.get(key) if cache is not None else None
        if seg is None:
            seg = segment_energy(g, lam, x_next, x_cur, sigma, index=p, tie_break=tie_break)
            if cache is not None:
                cache[key] = seg
        out.append(seg)
    return out


def degree(
    path: QLSPath,
    shape: LevelZeroShape,
    g: PQBG,
    cache: SegmentCache | None = None,
    tie_break: str = "forward",
) -> int:
    """Exact degree of a strong-variant path; always a nonpositive integer."""
    total = Fraction(0)
    for seg in _segments(path, shape, g, cache, tie_break):
        total += (1 - seg.sigma) * seg.energy
    if total.denominator != 1 or total < 0:
        raise NonIntegralDegree(f"degree sum {total} is not a nonpositive integer")
    return -int(total)


def lift(
    path: QLSPath,
    shape: LevelZeroShape,
    g: PQBG,
    cache: SegmentCache | None = None,
    tie_break: str = "forward",
) -> AffineLSPath:
    """Raise the path into the affine orbit, with the per-segment cover chains.

    The p-th weight is (x_p, sum of the energies of segments before p); each
    segment contributes the chain through its path's intermediate vertices,
    where a quantum step adds the pairing of its label to the running
    delta-coefficient and a Bruhat step leaves it unchanged.
    """
    segments = _segments(path, shape, g, cache, tie_break)
    lam = shape.classical
    values = g.pair_values(lam)

    weights = [AffineOrbitElement(path.directions[0], 0)]
    cumulative = 0
    for p, seg in enumerate(segments):
        cumulative += seg.energy
        weights.append(AffineOrbitElement(path.directions[p + 1], cumulative))

    chains = []
    for p, seg in enumerate(segments):
        base = weights[p].delta
        chain = [weights[p]]
        delta = base
        d = seg.path
        for k in range(d.length):
            if d.quantum[k]:
                delta += values[d.labels[k]]
            chain.append(AffineOrbitElement(d.vertices[k + 1], delta))
        if chain[-1] != weights[p + 1]:
            raise NonIntegralDegree("segment chain does not land on the next lifted weight")
        chains.append(tuple(chain))

    return AffineLSPath(tuple(weights), path.times, tuple(chains))


def endpoint_delta(lifted: AffineLSPath) -> int:
    """Delta-coefficient of the lift evaluated at time 1; a nonnegative integer."""
    total = Fraction(0)
    for k in range(1, len(lifted.times)):
        total += (lifted.times[k] - lifted.times[k - 1]) * lifted.weights[k - 1].delta
    if total.denominator != 1 or total < 0:
        raise NonIntegralDegree(f"endpoint delta {total} is not a nonnegative integer")
    return int(total)


def endpoint_classical(lifted: AffineLSPath, g: PQBG, lam: Weight) -> tuple[Fraction, ...]:
    """Classical part of the lift at time 1 (for cross-checks against evaluation)."""
    acc = [Fraction(0)] * g.rs.rank
    for k in range(1, len(lifted.times)):
        span = lifted.times[k] - lifted.times[k - 1]
        w = g.orbit_weight(lifted.weights[k - 1].vertex, lam)
        for i, c in enumerate(w.coords):
            acc[i] += span * c
    return tuple(acc)


def degree_table(
    shape: LevelZeroShape,
    g: PQBG,
    paths,
    tie_break: str = "forward",
) -> list[dict]:
    """One record per path: directions, times, per-segment energies and the degree."""
    cache: SegmentCache = {}
    rows = []
    for path in paths:
        segs = _segments(path, shape, g, cache, tie_break)
        rows.append(
            {
                "dirs": [g.vertex_name(v) for v in path.directions],
                "times": [str(t) for t in path.times],
                "energies": [seg.energy for seg in segs],
                "deg": degree(path, shape, g, cache=cache, tie_break=tie_break),
            }
        )
    return rows
