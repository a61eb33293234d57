"""
The double cover GL(2n)/SO(2n) -> GL(2n)/O(2n) at the level of B-orbits,
and the fibrations f_i : X_i -> GL(2n-2)/SO(2n-2) on orbit indices.

On involutions f_i deletes the 2-cycle (i, 2n) and relabels the remaining
letters order-preservingly onto 1..2n-2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .orbit_poset import Orbit
from .perm_core import Involution, cycle_stats

__all__ = [
    "CoverLift", "FibrationSpec",
    "orbit_splits", "stabilizer_component_order", "lifts",
    "fibration_image", "fibration_pullback", "fiber_dimension", "fibration_spec",
    "survivor_involution",
]


@dataclass(frozen=True)
class CoverLift:
    """An orbit upstairs. `sign` is "+" or "-" when the base orbit splits, else None."""
    base: Orbit
    split: bool
    sign: str | None = None

    def __post_init__(self):
        if self.split != self.base.fpf:
            raise ValueError(f"{self.base.label}: split must equal fpf")
        if self.split and self.sign not in ("+", "-"):
            raise ValueError("a split lift needs sign '+' or '-'")
        if not self.split and self.sign is not None:
            raise ValueError("a non-split lift carries no sign")

    def swapped(self) -> CoverLift:
        if not self.split:
            return self
        return CoverLift(self.base, True, "-" if self.sign == "+" else "+")


@dataclass(frozen=True)
class FibrationSpec:
    n: int
    i: int
    fiber_dim: int


def orbit_splits(w: Involution) -> bool:
    """The preimage of O_w is two orbits exactly when w has no fixed points."""
    return cycle_stats(w)[0] == 0


def stabilizer_component_order(w: Involution) -> int:
    """Order of the component group (Z/2)^l of the torus stabilizer of q_w,
    l = number of fixed points."""
    return 2 ** cycle_stats(w)[0]


def lifts(w: Involution) -> list[CoverLift]:
    base = Orbit.of(w)
    if base.fpf:
        return [CoverLift(base, True, "+"), CoverLift(base, True, "-")]
    return [CoverLift(base, False)]


def fibration_image(w: Involution) -> Involution:
    m = w.m
    i = w(m)
    if i == m:
        raise ValueError(f"{w} lies in X_{m}; the fibration is undefined there")
    kept = [k for k in range(1, m + 1) if k not in (i, m)]
    relabel = {old: new for new, old in enumerate(kept, start=1)}
    return Involution(tuple(relabel[w(k)] for k in kept))


def fibration_pullback(n: int, i: int, w_small: Involution) -> Involution:
    """Orbit of X_i lying over O_{w_small}: transport w_small onto the
    letters {1..2n} minus {i, 2n} and adjoin the 2-cycle (i, 2n)."""
    m = 2 * n
    if not 1 <= i <= m - 1:
        raise ValueError(f"stratum {i} out of range 1..{m - 1}")
    if w_small.m != m - 2:
        raise ValueError(f"expected an involution on {m - 2} letters, got {w_small.m}")
    kept = [k for k in range(1, m + 1) if k not in (i, m)]
    images = [0] * m
    for src, dst in enumerate(w_small.images):
        images[kept[src] - 1] = kept[dst - 1]
    images[i - 1], images[m - 1] = m, i
    return Involution(tuple(images))


def fiber_dimension(n: int, i: int) -> int:
    """Dimension of the fiber C* x C^(2n+i-2) of f_i."""
    if not 1 <= i <= 2 * n - 1:
        raise ValueError(f"stratum {i} out of range 1..{2 * n - 1}")
    return 2 * n + i - 1


def fibration_spec(n: int, i: int) -> FibrationSpec:
    return FibrationSpec(n, i, fiber_dimension(n, i))


def survivor_involution(n: int) -> Involution:
    """(12)(34)...(2n-1 2n), built as the iterated pullback into the top
    non-open stratum X_{2k-1}."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    w = Involution(())
    for k in range(1, n + 1):
        w = fibration_pullback(k, 2 * k - 1, w)
    return w
