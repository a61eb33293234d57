"""Exhaustive invariant checks backing `chowsym verify`."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .chow_engine import chow_group, expected_chow_group
from .double_cover import (
    fibration_image, fibration_pullback, orbit_splits, stabilizer_component_order,
)
from .orbit_poset import (
    _corner, orbit_codimension, orbit_codimension_oracle, representative_form, stratum_index,
)
from .perm_core import Involution, cycle_stats, enumerate_involutions

__all__ = [
    "CheckResult", "involution_count", "check_formula_vs_oracle", "check_fibrations",
    "check_stratum_monotonicity", "check_double_cover", "check_chow_group", "run_suite",
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    seconds: float
    failures: list[str]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.cases} cases, {self.seconds:.2f}s"


def involution_count(m: int) -> int:
    """I(m) = I(m-1) + (m-1) I(m-2), I(0) = I(1) = 1."""
    a, b = 1, 1
    for k in range(2, m + 1):
        a, b = b, b + (k - 1) * a
    return b


def _timed(name, body) -> CheckResult:
    start = time.perf_counter()
    failures: list[str] = []
    cases = body(failures)
    return CheckResult(name, not failures, cases, time.perf_counter() - start, failures[:20])


def check_formula_vs_oracle(m: int) -> CheckResult:
    def body(failures):
        invs = enumerate_involutions(m)
        if len(invs) != involution_count(m):
            failures.append(f"enumerated {len(invs)} involutions, recurrence gives "
                            f"{involution_count(m)}")
        for w in invs:
            a, b = orbit_codimension(w), orbit_codimension_oracle(w)
            if a != b:
                failures.append(f"{w}: formula {a}, oracle {b}")
        return len(invs)
    return _timed(f"codim formula == stabilizer oracle (2n={m})", body)


def check_fibrations(m: int) -> CheckResult:
    n = m // 2

    def body(failures):
        cases = 0
        small = enumerate_involutions(m - 2) if m > 2 else [Involution(())]
        for i in range(1, m):
            for w in small:
                cases += 1
                up = fibration_pullback(n, i, w)
                if fibration_image(up) != w:
                    failures.append(f"image(pullback({n},{i},{w})) != {w}")
                if stratum_index(up) != i:
                    failures.append(f"pullback({n},{i},{w}) has stratum {stratum_index(up)}")
                if orbit_codimension(up) != orbit_codimension(w) + (m - i):
                    failures.append(f"codim bookkeeping fails for pullback({n},{i},{w})")
        for w in enumerate_involutions(m, fpf_only=True):
            cases += 1
            if stratum_index(w) < m and cycle_stats(fibration_image(w))[0] != 0:
                failures.append(f"fibration image of fpf {w} has fixed points")
        return cases
    return _timed(f"fibration round trip, fpf preservation, codim shift (2n={m})", body)


def check_stratum_monotonicity(m: int) -> CheckResult:
    def body(failures):
        invs = enumerate_involutions(m)
        ranks = np.array([_corner(w.images) for w in invs], dtype=np.int8)
        strata = np.array([stratum_index(w) for w in invs])
        for a, outer in enumerate(invs):
            contains = (ranks <= ranks[a]).all(axis=1)  # closure of `outer` contains these
            bad = np.nonzero(contains & (strata > strata[a]))[0]
            for b in bad[:3]:
                failures.append(f"closure of {outer} contains {invs[b]} in a higher stratum")
        return len(invs) ** 2
    return _timed(f"stratum monotonic under closure (2n={m})", body)


def check_double_cover(m: int) -> CheckResult:
    def body(failures):
        invs = enumerate_involutions(m)
        for w in invs:
            fixed = cycle_stats(w)[0]
            if orbit_splits(w) != (fixed == 0):
                failures.append(f"{w}: splits={orbit_splits(w)} with {fixed} fixed points")
            if stabilizer_component_order(w) != 2 ** fixed:
                failures.append(f"{w}: component order {stabilizer_component_order(w)}")
            if orbit_splits(w) != (stabilizer_component_order(w) == 1):
                failures.append(f"{w}: split/component mismatch")
            q = representative_form(w)
            for j in range(1, m + 1):
                if (q[j - 1, m - 1] != 0) != (stratum_index(w) == j):
                    failures.append(f"{w}: g_{j} nonvanishing does not match stratum")
        return len(invs)
    return _timed(f"double cover splitting, component groups, g_j (2n={m})", body)


def check_chow_group(n: int) -> CheckResult:
    def body(failures):
        try:
            got = chow_group(n)
        except Exception as exc:  # report, never crash the suite
            failures.append(f"n={n}: {exc}")
            return 1
        if got != expected_chow_group(n):
            failures.append(f"n={n}: {got}")
        return 1
    return _timed(f"CH* = Z [deg 0] + Z [deg n] (n={n})", body)


def run_suite(up_to: int) -> list[CheckResult]:
    results = []
    for k in range(1, up_to + 1):
        m = 2 * k
        results += [check_formula_vs_oracle(m), check_fibrations(m),
                    check_stratum_monotonicity(m), check_double_cover(m), check_chow_group(k)]
    return results
