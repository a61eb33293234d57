"""
Involutions of {1..m} in one-line notation, their Coxeter length and cycle
statistics, and the rank-table comparison underlying the Bruhat order.

>>> w = Involution.from_cycles("(1 3)(2 4)")
>>> w.images, coxeter_length(w), cycle_stats(w)
((3, 4, 1, 2), 4, (0, 2))
>>> bruhat_leq(Involution.from_cycles("(12)(34)"), w)
True
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Involution", "RankTable",
    "enumerate_involutions", "iter_involutions", "coxeter_length", "cycle_stats",
    "rank_table", "bruhat_leq", "parse_involution",
]


@dataclass(frozen=True, order=True)
class Involution:
    """A self-inverse permutation of {1..m}, stored in one-line notation.

    Ordering is lexicographic on `images`, which is the enumeration order.
    The empty involution (m = 0) is allowed; it is the base of the
    fibration pullback chain.
    """
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(k) for k in self.images)
        object.__setattr__(self, "images", images)
        m = len(images)
        if sorted(images) != list(range(1, m + 1)):
            raise ValueError(f"not a permutation of 1..{m}: {images}")
        for k, wk in enumerate(images, start=1):
            if images[wk - 1] != k:
                raise ValueError(f"not an involution: {images}")

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        """Image of the 1-based letter `k`."""
        return self.images[k - 1]

    @classmethod
    def identity(cls, m: int) -> Involution:
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_pairs(cls, m: int, pairs) -> Involution:
        images = list(range(1, m + 1))
        for a, b in pairs:
            if images[a - 1] != a or images[b - 1] != b:
                raise ValueError(f"letter reused in cycles: {pairs}")
            images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, text: str, m: int | None = None) -> Involution:
        return parse_involution(text, m)

    def transpositions(self) -> list[tuple[int, int]]:
        """The 2-cycles (a, b) with a < b, sorted by a."""
        return [(k, wk) for k, wk in enumerate(self.images, start=1) if wk > k]

    def fixed_points(self) -> list[int]:
        return [k for k, wk in enumerate(self.images, start=1) if wk == k]

    def cycle_notation(self) -> str:
        """Compact cycle notation, e.g. ``(12)(34)``.

        Letters are comma separated once m >= 10 so the label stays
        unambiguous; the identity is written ``()``.
        """
        sep = "," if self.m >= 10 else ""
        pairs = self.transpositions()
        if not pairs:
            return "()"
        return "".join(f"({a}{sep}{b})" for a, b in pairs)

    def __str__(self) -> str:
        return self.cycle_notation()


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_involution(text: str, m: int | None = None) -> Involution:
    """Parse cycle notation such as ``"(1 6)(2 5)(3 4)"`` or ``"(16)(25)(34)"``.

    Whitespace and commas separate letters.  A run of digits with no
    separator is split into single letters, which is only unambiguous for
    m <= 9.  One-line notation is accepted in brackets: ``"[2,1,4,3]"``.
    When `m` is omitted it defaults to the largest letter mentioned.
    """
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unterminated one-line notation: {text!r}")
        body = text[1:-1].replace(",", " ").split()
        w = Involution(tuple(int(tok) for tok in body))
        if m is not None and w.m != m:
            raise ValueError(f"expected {m} letters, got {w.m}")
        return w

    squeezed = re.sub(r"\s+", " ", text)
    if _CYCLE.sub("", squeezed).strip():
        raise ValueError(f"unparseable cycle notation: {text!r}")
    pairs = []
    for body in _CYCLE.findall(squeezed):
        tokens = body.replace(",", " ").split()
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        letters = [int(tok) for tok in tokens]
        if len(letters) == 0 or len(letters) == 1:
            continue
        if len(letters) != 2:
            raise ValueError(f"involutions have only 2-cycles, got ({body})")
        pairs.append(tuple(letters))
    largest = max((max(p) for p in pairs), default=0)
    if m is None:
        m = largest
    if largest > m or any(min(p) < 1 for p in pairs):
        raise ValueError(f"letters out of range 1..{m}: {text!r}")
    return Involution.from_pairs(m, pairs)


def _check_size(m: int) -> None:
    if not isinstance(m, int) or m < 2 or m % 2:
        raise ValueError(f"m must be an even integer >= 2, got {m!r}")


def iter_involutions(m: int, fpf_only: bool = False):
    """Lazily yield one-line tuples of the involutions of {1..m}, in
    lexicographic order.  Use this instead of `enumerate_involutions` when
    m is large (I(16) is about 4.6e7)."""
    _check_size(m)
    images = [0] * (m + 1)

    def rec(free):
        if not free:
            yield tuple(images[1:])
            return
        a, rest = free[0], free[1:]
        if not fpf_only:
            images[a] = a
            yield from rec(rest)
        for idx, b in enumerate(rest):
            images[a], images[b] = b, a
            yield from rec(rest[:idx] + rest[idx + 1:])

    yield from rec(tuple(range(1, m + 1)))


_CACHE_LIMIT = 12
_cache: dict[tuple[int, bool], tuple[Involution, ...]] = {}


def enumerate_involutions(m: int, fpf_only: bool = False) -> list[Involution]:
    """All involutions of {1..m} (only fixed-point-free ones if `fpf_only`),
    sorted lexicographically by one-line notation."""
    _check_size(m)
    key = (m, fpf_only)
    if key in _cache:
        return list(_cache[key])
    found = tuple(Involution(images) for images in iter_involutions(m, fpf_only))
    if m <= _CACHE_LIMIT:
        _cache[key] = found
    return list(found)


@lru_cache(maxsize=1 << 18)
def _length(images: tuple[int, ...]) -> int:
    return sum(1 for i, a in enumerate(images) for b in images[i + 1:] if a > b)


def coxeter_length(w: Involution) -> int:
    """Number of inversions #{(i, j) : i < j, w(i) > w(j)}."""
    return _length(w.images)


def cycle_stats(w: Involution) -> tuple[int, int]:
    """(fixed points, 2-cycles) of `w`."""
    moved = sum(1 for k, wk in enumerate(w.images, start=1) if wk != k)
    return w.m - moved, moved // 2


@dataclass(frozen=True)
class RankTable:
    """r[i][j] = #{k <= i : w(k) >= j} for 0 <= i, j <= m (column 0 mirrors column 1)."""
    m: int
    r: tuple[tuple[int, ...], ...]

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.r[i]


@lru_cache(maxsize=1 << 18)
def _rank_rows(images: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    m = len(images)
    rows = [(0,) * (m + 1)]
    for i in range(1, m + 1):
        prev = rows[-1]
        wi = images[i - 1]
        # column j gains one when w(i) >= j
        rows.append(tuple(prev[j] + (1 if wi >= max(j, 1) else 0) for j in range(m + 1)))
    return tuple(rows)


def rank_table(w: Involution) -> RankTable:
    return RankTable(w.m, _rank_rows(w.images))


def bruhat_leq(u: Involution, v: Involution) -> bool:
    """u <= v in Bruhat order, by comparing every rank-table entry."""
    if u.m != v.m:
        raise ValueError(f"size mismatch: {u.m} vs {v.m}")
    ru, rv = _rank_rows(u.images), _rank_rows(v.images)
    return all(a <= b for row_u, row_v in zip(ru, rv) for a, b in zip(row_u, row_v))
