"""Exit criteria.  Run with ``pytest tests/test_acceptance.py``; a summary
line per criterion is printed at the end of the session."""

import json
import random
import time
from pathlib import Path

import pytest

from chowsym.cli import main
from chowsym.double_cover import (
    fibration_image, fibration_pullback, orbit_splits, stabilizer_component_order,
)
from chowsym.export import export_json
from chowsym.orbit_poset import (
    build_orbit_graph, closure_contains, orbit_codimension, orbit_codimension_oracle,
    representative_form, stratum_index,
)
from chowsym.perm_core import Involution, cycle_stats, enumerate_involutions, parse_involution
from chowsym.snf import det, matmul, smith_normal_form

from test_snf import naive_reduce

FIXTURE = Path(__file__).parent / "fixtures" / "gl6_fpf_figure.txt"


def load_gl6_figure():
    """Vertices and arrows of the transcribed figure, resolved from grid offsets."""
    cells, arrows = {}, []
    for line in FIXTURE.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        head, _, tail = line.partition(":")
        row, col, cycles = head.split()
        cells[int(row), int(col)] = parse_involution(cycles, 6)
        for tok in tail.split():
            dashed = tok.startswith("~")
            dr, dc = map(int, tok.lstrip("~").split(","))
            arrows.append(((int(row), int(col)), (int(row) + dr, int(col) + dc), dashed))
    edges = {(cells[a], cells[b]) for a, b, _ in arrows}
    assert len(edges) == len(arrows)
    return cells, edges


def cold_caches():
    """Drop memoized tables so timed criteria start from scratch."""
    from chowsym import orbit_poset, perm_core
    for fn in (orbit_poset._codim, orbit_poset._corner, perm_core._length, perm_core._rank_rows):
        fn.cache_clear()
    perm_core._cache.clear()


def cli_json(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    assert code == 0
    return json.loads(out)


@pytest.mark.criterion("C1 CH* = Z + Z y, chow --n 1..6")
def test_c1_chow_group(criterion, capsys):
    cold_caches()
    start = time.perf_counter()
    for k in range(1, 7):
        doc = cli_json(capsys, "chow", "--n", str(k), "--format", "json")
        assert doc["chow_group"] == {"0": {"rank": 1, "torsion": []},
                                     str(k): {"rank": 1, "torsion": []}}
    elapsed = time.perf_counter() - start
    criterion.note(f"{elapsed:.2f}s (limit 10s)")
    assert elapsed < 10


@pytest.mark.criterion("C2 GL(4) figure: 3-chain, codims 2,3,4")
def test_c2_gl4(criterion):
    g = build_orbit_graph(2, True)
    chain = [parse_involution(c) for c in ("(12)(34)", "(13)(24)", "(14)(23)")]
    assert [v.w for v in g.vertices] == chain
    assert [v.codim for v in g.vertices] == [2, 3, 4]
    assert {(e.source, e.target) for e in g.edges} == {(chain[1], chain[0]), (chain[2], chain[1])}
    assert closure_contains(chain[0], chain[1]) and closure_contains(chain[1], chain[2])
    criterion.note("exact")


@pytest.mark.criterion("C3 GL(6) figure: 15 orbits, rows 1,2,3,3,3,2,1, 26 arrows")
def test_c3_gl6(criterion):
    cells, figure_edges = load_gl6_figure()
    assert len(cells) == 15 and len(figure_edges) == 26
    # each figure row holds orbits of one codimension, deepest on top
    for (row, _), w in cells.items():
        assert orbit_codimension(w) == 9 - row
    g = build_orbit_graph(3, True)
    assert {v.w for v in g.vertices} == set(cells.values())
    assert [len(r) for r in g.by_codim().values()] == [1, 2, 3, 3, 3, 2, 1]
    assert sorted(g.by_codim()) == list(range(3, 10))
    assert {(e.source, e.target) for e in g.edges} == figure_edges
    criterion.note("computed edge set == transcription")


@pytest.mark.criterion("C4 GL(8) figure: 105 fpf orbits, strata {1..7}")
def test_c4_gl8(criterion):
    cold_caches()
    start = time.perf_counter()
    g = build_orbit_graph(4, True)
    doc = json.loads(export_json(g).payload)
    elapsed = time.perf_counter() - start
    assert len(doc["vertices"]) == 105
    assert {v["stratum"] for v in doc["vertices"]} == set(range(1, 8))
    criterion.note(f"{elapsed:.2f}s (limit 5s)")
    assert elapsed < 5


@pytest.mark.criterion("C5 codim formula == stabilizer oracle, 2n <= 8")
def test_c5_formula_oracle(criterion):
    cold_caches()
    start = time.perf_counter()
    counts = []
    for m in (2, 4, 6, 8):
        invs = enumerate_involutions(m)
        counts.append(len(invs))
        for w in invs:
            assert orbit_codimension(w) == orbit_codimension_oracle(w), w
    # I(m) = I(m-1) + (m-1) I(m-2)
    table = [1, 1]
    for k in range(2, 9):
        table.append(table[k - 1] + (k - 1) * table[k - 2])
    assert counts == [table[2], table[4], table[6], table[8]] == [2, 10, 76, 764]
    elapsed = time.perf_counter() - start
    criterion.note(f"{sum(counts)} cases, {elapsed:.2f}s (limit 60s)")
    assert elapsed < 60


@pytest.mark.criterion("C6 fibration suite, 2n <= 8")
def test_c6_fibrations(criterion):
    cases = 0
    for m in (2, 4, 6, 8):
        n = m // 2
        small = enumerate_involutions(m - 2) if m > 2 else [Involution(())]
        for i in range(1, m):
            for w in small:
                up = fibration_pullback(n, i, w)
                assert fibration_image(up) == w
                assert orbit_codimension(up) == orbit_codimension(w) + (m - i)
                cases += 1
        for w in enumerate_involutions(m, fpf_only=True):
            if stratum_index(w) < m:
                assert cycle_stats(fibration_image(w))[0] == 0
                cases += 1
    criterion.note(f"{cases} cases")


@pytest.mark.criterion("C7 stratum monotone under closure, all pairs 2n <= 8")
def test_c7_stratum_monotonicity(criterion):
    pairs = 0
    for m in (2, 4, 6, 8):
        invs = enumerate_involutions(m)
        strata = {w: stratum_index(w) for w in invs}
        for outer in invs:
            for inner in invs:
                if closure_contains(outer, inner):
                    assert strata[inner] <= strata[outer], (outer, inner)
                pairs += 1
    criterion.note(f"{pairs} pairs")


@pytest.mark.criterion("C8 double-cover suite, 2n <= 8")
def test_c8_double_cover(criterion):
    cases = 0
    for m in (2, 4, 6, 8):
        for w in enumerate_involutions(m):
            fixed = cycle_stats(w)[0]
            assert orbit_splits(w) == (fixed == 0)
            assert stabilizer_component_order(w) == 2 ** fixed
            q = representative_form(w)
            for j in range(1, m + 1):
                assert (q[j - 1, m - 1] != 0) == (stratum_index(w) == j)
            cases += 1
    criterion.note(f"{cases} involutions")


@pytest.mark.criterion("C9 SNF: unimodular, divisibility, 200 random vs brute force")
def test_c9_snf(criterion):
    rng = random.Random(2001)
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        M = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        res = smith_normal_form(M)
        assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
        assert matmul(matmul(res.U, M), res.V) == res.D
        f = res.invariant_factors
        assert all(f[k + 1] % f[k] == 0 for k in range(len(f) - 1))
        assert f == naive_reduce(M)
    criterion.note("200 matrices")


@pytest.mark.criterion("C10 fpf graph 2n=10 under 10s; parallel identical")
def test_c10_scale(criterion):
    cold_caches()
    start = time.perf_counter()
    serial = build_orbit_graph(5, True, workers=1)
    elapsed = time.perf_counter() - start
    assert len(serial.vertices) == 945
    parallel = build_orbit_graph(5, True, workers=4)
    assert parallel.edges == serial.edges and parallel.vertices == serial.vertices
    criterion.note(f"{len(serial.edges)} edges, serial {elapsed:.2f}s (limit 10s)")
    assert elapsed < 10
