import pytest

from chowsym.chow_engine import (
    CertificateError, ChowConsistencyError, ChowRelation, GradedAbelianGroup, Reason,
    base_chow_group, build_presentation, certificate, certify_presentation, chow_group,
    graded_quotient,
)
from chowsym.double_cover import survivor_involution
from chowsym.orbit_poset import closure_contains, orbit_codimension, stratum_index
from chowsym.perm_core import Involution, cycle_stats, parse_involution

P = parse_involution


def test_base_chow_group():
    for n in (1, 3):
        g = base_chow_group(n)
        assert g.rank(0) == 1 and g.torsion(0) == []
        assert all(g.rank(d) == 0 for d in range(1, 3 * n))


def _gens(pres):
    return {g.label: (g.orbit, g.degree) for g in pres.generators}


def test_presentation_n2():
    pres = build_presentation(2)
    assert _gens(pres) == {
        "x0_tilde": (Involution.identity(4), 0),
        "pullback_y(1)": (P("(14)(23)"), 4),
        "pullback_y(2)": (P("(13)(24)"), 3),
        "pullback_y(3)": (P("(12)(34)"), 2),
    }
    killed = sorted(label for r in pres.relations for label in r.kills)
    assert killed == ["pullback_y(1)", "pullback_y(2)"]


def test_presentation_n1():
    pres = build_presentation(1)
    assert _gens(pres) == {"x0_tilde": (Involution.identity(2), 0),
                           "pullback_y(1)": (P("(12)"), 1)}
    assert not any(r.kills for r in pres.relations)
    assert not any(r.reason is Reason.NON_FPF_VANISHES for r in pres.relations)


def test_presentation_n3():
    pres = build_presentation(3)
    assert sorted(g.degree for g in pres.generators) == [0, 3, 4, 5, 6, 7]
    killed_degrees = sorted(r.degree for r in pres.relations if r.kills)
    assert killed_degrees == [4, 5, 6, 7]
    orbits = [str(pres.generator(f"pullback_y({i})").orbit) for i in range(5, 0, -1)]
    assert orbits == ["(12)(34)(56)", "(12)(35)(46)", "(12)(36)(45)",
                      "(13)(26)(45)", "(16)(23)(45)"]


@pytest.mark.parametrize("n", range(1, 7))
def test_presentation_invariants(n):
    pres = build_presentation(n)
    m = 2 * n
    for g in pres.generators[1:]:
        assert g.degree == (n - 1) + (m - g.stratum)
        assert stratum_index(g.orbit) == g.stratum
        assert cycle_stats(g.orbit)[0] == 0
    by_label = {g.label: g for g in pres.generators}
    for rel in pres.relations:
        if rel.reason is Reason.NON_FPF_VANISHES:
            assert cycle_stats(rel.orbit)[0] > 0
            assert rel.coefficients == {}
        elif rel.reason is Reason.DIVISOR_OF_G:
            upper = by_label[f"pullback_y({rel.j})"]
            lower = by_label[f"pullback_y({rel.j - 1})"]
            assert rel.kills == [lower.label]
            assert (upper.stratum, lower.stratum) == (rel.j, rel.j - 1)
            assert lower.degree == upper.degree + 1
            assert closure_contains(upper.orbit, lower.orbit)
        assert all(c.passed for c in rel.side_conditions)


@pytest.mark.parametrize("n", range(1, 7))
def test_chow_group(n):
    g = chow_group(n)
    assert g == GradedAbelianGroup({0: (1, []), n: (1, [])})
    for d in range(0, 4 * n):
        assert g.rank(d) == (1 if d in (0, n) else 0)
        assert g.torsion(d) == []
    assert g.rank(0) == base_chow_group(n).rank(0)


def test_graded_group_roundtrip_and_str():
    g = GradedAbelianGroup({0: (1, []), 2: (0, [2, 1]), 3: (0, [])})
    assert g.to_dict() == {"0": {"rank": 1, "torsion": []}, "2": {"rank": 0, "torsion": [2]}}
    assert GradedAbelianGroup.from_dict(g.to_dict()) == g
    assert str(GradedAbelianGroup({0: (1, []), 2: (1, [])})) == "Z [deg 0] + Z [deg 2]"
    assert str(GradedAbelianGroup()) == "0"


def test_quotient_detects_torsion_and_raises():
    pres = build_presentation(2)
    pres.relations.append(ChowRelation(Reason.DIVISOR_OF_G, 2, {"pullback_y(3)": 2}, j=3))
    group, _ = graded_quotient(pres)
    assert group.torsion(2) == [2] and group.rank(2) == 0


def test_chow_group_consistency_error(monkeypatch):
    import chowsym.chow_engine as engine
    real = engine.build_presentation

    def broken(n):
        pres = real(n)
        pres.relations = [r for r in pres.relations if r.reason is not Reason.DIVISOR_OF_G]
        return pres

    monkeypatch.setattr(engine, "build_presentation", broken)
    with pytest.raises(ChowConsistencyError) as info:
        chow_group(3)
    assert info.value.presentation.n == 3


def test_inhomogeneous_relation_rejected():
    pres = build_presentation(2)
    pres.relations.append(ChowRelation(Reason.DIVISOR_OF_G, 2,
                                       {"pullback_y(1)": 1, "pullback_y(3)": 1}, j=2))
    with pytest.raises(ValueError):
        pres.validate()


def test_certificate_n2():
    cert = certificate(2)
    assert cert["schema_version"] == 1
    assert cert["survivor"]["orbit"]["cycles"] == "(12)(34)"
    assert cert["survivor"]["codim"] == 2
    assert cert["killing_relations"] == 2
    assert cert["failed_checks"] == 0
    assert len(cert["assumptions"]) == 2


def test_certificate_n1():
    cert = certificate(1)
    assert cert["survivor"]["orbit"]["cycles"] == "(12)"
    assert cert["killing_relations"] == 0


def test_certificate_n3():
    cert = certificate(3)
    assert cert["survivor"]["orbit"]["cycles"] == "(12)(34)(56)"
    divisors = [r for r in cert["relations"] if r["reason"] == "DivisorOfG"]
    assert [(r["j"], list(r["coefficients"])) for r in divisors] == [
        (j, [f"pullback_y({j - 1})"]) for j in range(2, 6)]
    assert any("base-case" in note for note in divisors[0]["notes"])
    assert all("inductive" in r["notes"][-1] for r in divisors[1:])


def test_certificate_failure_reports_fact():
    pres = build_presentation(3)
    # swap the X_3 generator orbit for a same-codim fpf orbit of X_4
    gens = pres.generators
    idx = next(k for k, g in enumerate(gens) if g.label == "pullback_y(3)")
    wrong = P("(13)(25)(46)")
    assert orbit_codimension(wrong) == gens[idx].degree
    gens[idx] = type(gens[idx])(gens[idx].label, wrong, orbit_codimension(wrong), stratum=3)
    with pytest.raises(CertificateError) as info:
        certify_presentation(pres)
    assert "stratum" in str(info.value)


def test_survivor_matches_engine():
    for n in range(1, 6):
        cert = certificate(n)
        assert cert["survivor"]["orbit"]["one_line"] == list(survivor_involution(n).images)
        assert cert["survivor"]["stratum"] == 2 * n - 1
