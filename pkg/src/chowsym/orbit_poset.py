"""
B-orbits on GL(2n)/O(2n), indexed by involutions of {1..2n}.

An orbit O_w contains the permutation-matrix form q_w(e_i, e_j) = [w(i) = j].
Its codimension is (length(w) + #2-cycles(w)) / 2, cross-checked by
`orbit_codimension_oracle`, which computes the dimension of the Borel
stabilizer Lie algebra at q_w by exact elimination over the rationals.

Closure order: O_inner lies in the closure of O_outer iff every lower-right
corner rank of q_inner is at most the corresponding rank of q_outer.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .perm_core import Involution, coxeter_length, cycle_stats, enumerate_involutions

__all__ = [
    "Orbit", "Edge", "OrbitGraph", "GraphTooLarge",
    "orbit_codimension", "orbit_codimension_oracle", "closure_contains",
    "corner_ranks", "stratum_index", "stratum_closure", "representative_form",
    "build_orbit_graph", "FPF_CAP", "ALL_CAP",
]

log = logging.getLogger(__name__)

# default caps on n for build_orbit_graph
FPF_CAP = 6
ALL_CAP = 5


class GraphTooLarge(ValueError):
    pass


@lru_cache(maxsize=1 << 18)
def _codim(images: tuple[int, ...]) -> int:
    w = Involution(images)
    _, t = cycle_stats(w)
    num = coxeter_length(w) + t
    assert num % 2 == 0, f"odd codimension numerator for {w}"
    return num // 2


def orbit_codimension(w: Involution) -> int:
    return _codim(w.images)


def representative_form(w: Involution) -> np.ndarray:
    """Integer matrix Q with Q[i][j] = 1 iff w(i+1) = j+1 (0-based storage)."""
    m = w.m
    q = np.zeros((m, m), dtype=np.int64)
    for k, wk in enumerate(w.images):
        q[k, wk - 1] = 1
    return q


def _rational_rank(rows: list[list[Fraction]], ncols: int) -> int:
    rank = 0
    rows = [r[:] for r in rows]
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if f:
                f = f / p[col]
                row = rows[r]
                for c in range(col, ncols):
                    if p[c]:
                        row[c] -= f * p[c]
        rank += 1
    return rank


def orbit_codimension_oracle(w: Involution) -> int:
    """Dimension of {X upper triangular : X Q + Q X^T = 0}, Q = q_w.

    Entry (i, j) of X Q + Q X^T is X[i, w(j)] + X[j, w(i)]; the system is
    symmetric, so only i <= j is imposed.  Computed with exact Fractions.
    """
    m = w.m
    unknowns = {(a, b): idx for idx, (a, b) in
                enumerate((a, b) for a in range(1, m + 1) for b in range(a, m + 1))}
    q = representative_form(w)
    rows = []
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            row = [Fraction(0)] * len(unknowns)
            # (XQ)_{ij} = sum_k X[i,k] Q[k,j];  (QX^T)_{ij} = sum_k Q[i,k] X[j,k]
            for k in range(1, m + 1):
                if q[k - 1, j - 1] and (i, k) in unknowns:
                    row[unknowns[i, k]] += 1
                if q[i - 1, k - 1] and (j, k) in unknowns:
                    row[unknowns[j, k]] += 1
            rows.append(row)
    return len(unknowns) - _rational_rank(rows, len(unknowns))


@lru_cache(maxsize=1 << 18)
def _corner(images: tuple[int, ...]) -> tuple[int, ...]:
    # s[i][j] = #{k >= i : w(k) >= j} for 1 <= i, j <= m, flattened row-major
    m = len(images)
    s = [[0] * (m + 2) for _ in range(m + 2)]
    for i in range(m, 0, -1):
        wi = images[i - 1]
        below, cur = s[i + 1], s[i]
        for j in range(1, m + 1):
            cur[j] = below[j] + (1 if wi >= j else 0)
    return tuple(s[i][j] for i in range(1, m + 1) for j in range(1, m + 1))


def corner_ranks(w: Involution) -> np.ndarray:
    """m x m array, entry [i-1, j-1] = rank of the lower-right corner of q_w
    on rows >= i and columns >= j."""
    return np.array(_corner(w.images), dtype=np.int16).reshape(w.m, w.m)


def closure_contains(outer: Involution, inner: Involution) -> bool:
    """True iff O_inner is contained in the closure of O_outer."""
    if outer.m != inner.m:
        raise ValueError(f"size mismatch: {outer.m} vs {inner.m}")
    return all(map(int.__le__, _corner(inner.images), _corner(outer.images)))


def stratum_index(w: Involution) -> int:
    """The i with O_w in X_i, i.e. the unique i where q_w(e_i, e_2n) != 0."""
    return w(w.m)


def stratum_closure(m: int, i: int) -> list[int]:
    """Strata making up the closure of X_i: all X_j with j <= i."""
    if not 1 <= i <= m:
        raise ValueError(f"stratum {i} out of range 1..{m}")
    return list(range(1, i + 1))


@dataclass(frozen=True, order=True)
class Orbit:
    w: Involution
    codim: int
    fpf: bool
    stratum: int

    @classmethod
    def of(cls, w: Involution) -> Orbit:
        return cls(w, orbit_codimension(w), cycle_stats(w)[0] == 0, stratum_index(w))

    @property
    def label(self) -> str:
        return f"O_{self.w.cycle_notation()}"


@dataclass(frozen=True, order=True)
class Edge:
    """Codimension-one closure inclusion: source lies in the closure of target."""
    source: Involution
    target: Involution
    cross_stratum: bool


@dataclass(frozen=True)
class OrbitGraph:
    n: int
    fpf_only: bool
    vertices: tuple[Orbit, ...]
    edges: tuple[Edge, ...]

    def by_codim(self) -> dict[int, list[Orbit]]:
        rows: dict[int, list[Orbit]] = {}
        for v in self.vertices:
            rows.setdefault(v.codim, []).append(v)
        return dict(sorted(rows.items()))


def _level_edges(deep: list[Orbit], shallow: list[Orbit]) -> list[Edge]:
    # vectorized closure test for every (deep, shallow) pair one codim apart
    if not deep or not shallow:
        return []
    d = np.array([_corner(o.w.images) for o in deep], dtype=np.int8)
    s = np.array([_corner(o.w.images) for o in shallow], dtype=np.int8)
    edges = []
    chunk = max(1, 4_000_000 // max(1, len(shallow) * d.shape[1]))
    for start in range(0, len(deep), chunk):
        block = d[start:start + chunk]
        ok = (block[:, None, :] <= s[None, :, :]).all(axis=2)
        for a, b in zip(*np.nonzero(ok)):
            src, tgt = deep[start + a], shallow[b]
            edges.append(Edge(src.w, tgt.w, src.stratum != tgt.stratum))
    return edges


def build_orbit_graph(n: int, fpf_only: bool = True, *, workers: int | None = 1,
                      max_n_override: bool = False) -> OrbitGraph:
    """Orbit graph of GL(2n)/O(2n): vertices are orbits, edges run from each
    orbit to the orbits one codimension shallower whose closure contains it.

    `workers` > 1 (or None for os.cpu_count()) spreads codimension levels
    over a thread pool; the result is identical to the serial one.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    cap = FPF_CAP if fpf_only else ALL_CAP
    if n > cap and not max_n_override:
        raise GraphTooLarge(f"n={n} exceeds the default cap {cap} "
                            f"({'fpf' if fpf_only else 'all'} orbits); pass max_n_override")

    vertices = sorted((Orbit.of(w) for w in enumerate_involutions(2 * n, fpf_only)),
                      key=lambda o: (o.codim, o.w))
    levels: dict[int, list[Orbit]] = {}
    for v in vertices:
        levels.setdefault(v.codim, []).append(v)
    jobs = [(levels[c + 1], levels[c]) for c in sorted(levels) if c + 1 in levels]

    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _level_edges(*job), jobs))
    else:
        parts = [_level_edges(*job) for job in jobs]
    edges = sorted(e for part in parts for e in part)
    log.debug("orbit graph n=%d fpf=%s: %d vertices, %d edges",
              n, fpf_only, len(vertices), len(edges))
    return OrbitGraph(n, fpf_only, tuple(vertices), tuple(edges))
