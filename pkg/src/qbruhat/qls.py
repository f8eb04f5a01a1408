"""Quantum Lakshmibai-Seshadri paths: enumeration and evaluation.

A path is a pair (directions; times): directions are graph vertices with
adjacent entries distinct, times are strictly increasing rationals from 0
to 1.  The strong ("hat") variant asks each internal time sigma_k for a
sigma_k-admissible directed path from x_{k+1} to x_k that is as short as an
unrestricted one; the weak ("tilde") variant only asks for reachability in
the sigma_k-admissible subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import LevelZeroShape, Weight
from .qbg import PQBG

RationalVector = tuple[Fraction, ...]


class EnumerationCap(RuntimeError):
    """Path enumeration exceeded its configured budget."""


@dataclass(frozen=True)
class QLSPath:
    directions: tuple[int, ...]  # vertex indices, adjacent entries distinct
    times: tuple[Fraction, ...]  # 0 = t_0 < t_1 < ... < t_s = 1

    @property
    def segments(self) -> int:
        return len(self.directions)

    def turning_points(self) -> tuple[tuple[int, int, Fraction], ...]:
        """Triples (x_k, x_{k+1}, sigma_k) for the internal times."""
        return tuple(
            (self.directions[k], self.directions[k + 1], self.times[k + 1])
            for k in range(len(self.directions) - 1)
        )


def path_sort_key(path: QLSPath):
    return (len(path.directions), path.directions, path.times)


def sigma_candidates(shape: LevelZeroShape, g: PQBG) -> tuple[Fraction, ...]:
    """Every rational in (0,1) whose reduced denominator divides some edge-label value.

    This is a finite superset of all internal times that can occur: a valid
    internal time sigma has at least one admissible edge (the directions are
    distinct, so the connecting path is nonempty), and sigma * <Lambda,
    beta^vee> integral with sigma = a/b in lowest terms forces b to divide
    the pairing value of that edge's label.
    """
    values = g.pair_values(shape.classical)
    out: set[Fraction] = set()
    for label in sorted({e.label for e in g.edges}):
        v = values[label]
        for b in range(2, v + 1):
            if v % b == 0:
                for a in range(1, b):
                    out.add(Fraction(a, b))
    return tuple(sorted(out))


def _structure_ok(g: PQBG, path: QLSPath) -> bool:
    dirs, times = path.directions, path.times
    if len(times) != len(dirs) + 1 or not dirs:
        return False
    if times[0] != 0 or times[-1] != 1:
        return False
    if any(t1 >= t2 for t1, t2 in zip(times, times[1:])):
        return False
    if any(not 0 <= v < g.num_vertices for v in dirs):
        return False
    return all(a != b for a, b in zip(dirs, dirs[1:]))


def is_hat_path(shape: LevelZeroShape, g: PQBG, path: QLSPath) -> bool:
    """Independent validator for the strong variant (used to re-check enumerations)."""
    if not _structure_ok(g, path):
        return False
    lam = shape.classical
    return all(
        g.sigma_path(x, y, sigma, lam).shortest for x, y, sigma in path.turning_points()
    )


def is_tilde_path(shape: LevelZeroShape, g: PQBG, path: QLSPath) -> bool:
    """Independent validator for the weak variant."""
    if not _structure_ok(g, path):
        return False
    lam = shape.classical
    return all(
        g.sigma_path(x, y, sigma, lam).path is not None
        for x, y, sigma in path.turning_points()
    )


def _relation_tables(
    shape: LevelZeroShape, g: PQBG, candidates: tuple[Fraction, ...], strong: bool
) -> dict[Fraction, list[list[bool]]]:
    # rel[sigma][x][y]: the pair (x_k, x_{k+1}) = (x, y) is allowed at time sigma
    lam = shape.classical
    tables: dict[Fraction, list[list[bool]]] = {}
    m = g.num_vertices
    for sigma in candidates:
        rel = [[False] * m for _ in range(m)]
        for y in range(m):
            sdist = g.sigma_distances_from(y, sigma, lam)
            full = g.distances_from(y)
            for x in range(m):
                if x == y:
                    continue
                rel[x][y] = sdist[x] == full[x] if strong else sdist[x] >= 0
        tables[sigma] = rel
    return tables


def _enumerate(shape: LevelZeroShape, g: PQBG, strong: bool, cap: int) -> frozenset[QLSPath]:
    candidates = sigma_candidates(shape, g)
    rel = _relation_tables(shape, g, candidates, strong)
    out: list[QLSPath] = []
    zero, one = Fraction(0), Fraction(1)

    def extend(dirs: list[int], times: list[Fraction], last: int) -> None:
        out.append(QLSPath(tuple(dirs), (zero, *times, one)))
        if len(out) > cap:
            raise EnumerationCap(f"more than {cap} paths; raise the cap to continue")
        cur = dirs[-1]
        for si in range(last + 1, len(candidates)):
            sigma = candidates[si]
            row = rel[sigma][cur]
            for nxt in range(g.num_vertices):
                if row[nxt]:
                    dirs.append(nxt)
                    times.append(sigma)
                    extend(dirs, times, si)
                    dirs.pop()
                    times.pop()

    for start in range(g.num_vertices):
        extend([start], [], -1)
    return frozenset(out)


def enumerate_hat(shape: LevelZeroShape, g: PQBG, cap: int = 10**6) -> frozenset[QLSPath]:
    """All paths of the strong variant for this shape."""
    return _enumerate(shape, g, True, cap)


def enumerate_tilde(shape: LevelZeroShape, g: PQBG, cap: int = 10**6) -> frozenset[QLSPath]:
    """All paths of the weak variant; coincides with the strong set (tested, not assumed)."""
    return _enumerate(shape, g, False, cap)


def evaluate(g: PQBG, path: QLSPath, t: Fraction, lam: Weight) -> RationalVector:
    """The piecewise-linear map at time t, exactly.

    On the segment t in [t_{k-1}, t_k] the value is
    sum_{l<k} (t_l - t_{l-1}) x_l Lambda + (t - t_{k-1}) x_k Lambda.
    """
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"time {t} outside [0, 1]")
    acc = [Fraction(0)] * g.rs.rank
    times, dirs = path.times, path.directions
    for k in range(1, len(times)):
        lo, hi = times[k - 1], times[k]
        if t <= hi:
            w = g.orbit_weight(dirs[k - 1], lam)
            for i, c in enumerate(w.coords):
                acc[i] += (t - lo) * c
            break
        w = g.orbit_weight(dirs[k - 1], lam)
        for i, c in enumerate(w.coords):
            acc[i] += (hi - lo) * c
    return tuple(acc)


def path_to_json(g: PQBG, path: QLSPath) -> dict:
    return {
        "dirs": [g.vertex_name(v) for v in path.directions],
        "times": [str(t) for t in path.times],
    }


def path_from_json(g: PQBG, record: dict) -> QLSPath:
    dirs = tuple(g.vertex_of_element(g.group.parse_word(w)) for w in record["dirs"])
    times = tuple(Fraction(t) for t in record["times"])
    return QLSPath(dirs, times)
