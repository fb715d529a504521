from __future__ import annotations

import json
from dataclasses import replace
from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from coincidence import rules
from coincidence.errors import BadModulus, MalformedRecord, NotLarge
from coincidence.io import record_from_json
from coincidence.matgroup import MatGroup, closure, gl2, sl2
from coincidence.rules import (
    Bound,
    CMData,
    CurveRecord,
    CyclotomicData,
    IdealData,
    LocalData,
    Reduction,
    Verdict,
    audit,
    cyclotomic_requirement,
    large_image_analysis,
    ramification_bound,
)

SINGLE_RULES = ["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"]
TWO_CURVE_RULES = ["R1'", "R2'", "R3'", "R4'"]


def deck():
    corpus = json.loads(resources.files("coincidence").joinpath("fixtures/corpus.json").read_text())
    return [fx for fx in corpus["fixtures"] if fx["kind"] == "audit" and "error" not in fx["expected"]]


def run(fx):
    inp = fx["inputs"]
    rec = record_from_json(inp["record"])
    rec2 = record_from_json(inp["record2"]) if "record2" in inp else None
    return audit(inp["m"], inp["n"], rec, rec2)


def local(p, red, e=1, v_j=None):
    return {p: LocalData(p, (IdealData(e, Reduction(red), v_j),))}


@pytest.mark.parametrize("fx", deck(), ids=lambda fx: fx["id"])
def test_rule_deck(fx):
    report = run(fx)
    fired = sorted({f.rule for f in report.findings if f.verdict is Verdict.OBSTRUCTED})
    assert report.overall.value == fx["expected"]["overall"]
    assert fired == fx["expected"]["obstructed_by"]


def test_every_rule_fires_and_holds_somewhere_in_the_deck():
    fired, held = set(), set()
    for fx in deck():
        report = run(fx)
        for f in report.findings:
            if f.verdict is Verdict.OBSTRUCTED:
                fired.add(f.rule)
            elif f.verdict is Verdict.SATISFIED:
                held.add(f.rule)
    for rule in SINGLE_RULES + TWO_CURVE_RULES:
        assert rule in fired, rule
        assert rule in held, rule
    assert len(deck()) >= 12


def test_ramification_table():
    assert ramification_bound(Reduction.GOOD, 7) is Bound.UNRAMIFIED
    assert ramification_bound(Reduction.MULT_SPLIT, 3) is Bound.TAME
    assert ramification_bound(Reduction.MULT_SPLIT, 2) is Bound.TAME
    assert ramification_bound(Reduction.MULT_NONSPLIT, 2) is Bound.VP_AT_MOST_1
    assert ramification_bound(Reduction.ADDITIVE_POT_GOOD, 5) is Bound.TAME
    assert ramification_bound(Reduction.ADDITIVE_NOT_POT_GOOD, 3) is Bound.TAME
    assert ramification_bound(Reduction.ADDITIVE_POT_GOOD, 3) is Bound.VP_AT_MOST_1
    assert ramification_bound(Reduction.ADDITIVE_POT_GOOD, 2) is Bound.VP_AT_MOST_3


def test_cyclotomic_requirements():
    assert not cyclotomic_requirement(Bound.UNRAMIFIED, 5, 1, 1).holds
    assert cyclotomic_requirement(Bound.UNRAMIFIED, 5, 1, 4).holds
    assert cyclotomic_requirement(Bound.TAME, 3, 2, 3).holds
    assert not cyclotomic_requirement(Bound.TAME, 3, 2, 1).holds
    assert cyclotomic_requirement(Bound.VP_AT_MOST_3, 2, 4, 1).holds
    assert not cyclotomic_requirement(Bound.VP_AT_MOST_1, 2, 4, 1).holds
    with pytest.raises(BadModulus):
        cyclotomic_requirement(Bound.TAME, 4, 1, 1)


def test_large_image_analysis():
    info = large_image_analysis(gl2(5))
    assert info.derived_is_sl2 and info.abelian_part == "full_cyclotomic"
    info = large_image_analysis(sl2(3))
    assert not info.derived_is_sl2 and info.abelian_part == "cyclotomic_plus_z3"
    assert large_image_analysis(sl2(5)).derived_is_sl2
    with pytest.raises(BadModulus):
        large_image_analysis(gl2(4))
    with pytest.raises(NotLarge):
        large_image_analysis(closure(5, [(1, 1, 0, 1)]))


def test_missing_data_names_the_field():
    report = audit(5, 25, CurveRecord())
    missing = {f.rule: f.missing for f in report.findings if f.verdict is Verdict.NOT_APPLICABLE}
    assert missing["R4"] == "cyclotomic_trivial"
    assert missing["R6"] == "cm"
    assert missing["R8"] == "images"
    assert report.overall is Verdict.SATISFIED


def test_mixed_query_without_entanglement_set_is_not_applicable():
    rec = CurveRecord(cm=CMData(True))
    report = audit(6, 18, rec)
    (r6,) = report.by_rule("R6")
    assert r6.verdict is Verdict.NOT_APPLICABLE and r6.missing == "entanglement_set"
    # with 3 outside S the 3-part is isolated and the CM rule applies
    report = audit(6, 18, CurveRecord(cm=CMData(True), entanglement_set=frozenset({2})))
    assert report.by_rule("R6")[0].verdict is Verdict.OBSTRUCTED
    # with 3 inside S the hypothesis is not met
    report = audit(6, 18, CurveRecord(cm=CMData(True), entanglement_set=frozenset({3})))
    assert report.by_rule("R6")[0].verdict is Verdict.SATISFIED


def test_entanglement_set_adds_sub_queries():
    rec = CurveRecord(cm=CMData(True), entanglement_set=frozenset({3}))
    report = audit(6, 18, rec)
    subjects = [f.subject for f in report.findings]
    assert any(s.startswith("sub(3,9)") for s in subjects)
    assert report.by_rule("S")[0].verdict is Verdict.SATISFIED
    # the nested query (3, 9) is a CM vertical step, so it is obstructed
    assert any(f.subject.startswith("sub(3,9)") and f.rule == "R6" and f.verdict is Verdict.OBSTRUCTED for f in report.findings)


def test_two_curve_audits_use_only_primed_rules():
    rec = CurveRecord(
        field_disc_primes=frozenset(),
        cm=CMData(True),
        cyclotomic_trivial={5: CyclotomicData(None, 0)},
        images={5: gl2(5)},
    )
    report = audit(5, 25, rec, CurveRecord(field_disc_primes=frozenset()))
    assert report.two_curves
    assert {f.rule for f in report.findings} <= set(TWO_CURVE_RULES)
    with pytest.raises(MalformedRecord):
        audit(5, 25, rec, CurveRecord(field_disc_primes=frozenset({3})))


def test_large_image_rule_at_levels_divisible_by_72(monkeypatch):
    # GL2(72) is far above the enumeration cap; only the branch logic is exercised
    monkeypatch.setattr(rules, "contains_sl2", lambda G: True)
    image = MatGroup(72, [(1, 1, 0, 1)])

    def at_72(m, n, rec):
        return [f for f in audit(m, n, rec).by_rule("R7") if f.subject == "level 72"]

    rec = CurveRecord(zeta_in_F=frozenset({2}), cyclotomic_disjoint=True, images={72: image})
    assert [f.verdict for f in at_72(72, 5, rec)] == [Verdict.OBSTRUCTED]
    assert [f.verdict for f in at_72(72, 8, rec)] == [Verdict.SATISFIED]
    rec = CurveRecord(zeta_in_F=frozenset({2}), images={72: image})
    assert [f.missing for f in at_72(72, 5, rec)] == ["cyclotomic_disjoint"]


def test_large_image_rule_with_three_dividing_m_and_disjoint_cyclotomic_field():
    rec = CurveRecord(zeta_in_F=frozenset({2}), cyclotomic_disjoint=True, images={3: sl2(3)})
    # [Q(zeta_9) : Q(zeta_3)] = 3 is allowed, [Q(zeta_15) : Q(zeta_3)] = 4 is not
    assert audit(3, 9, rec).by_rule("R7")[0].verdict is Verdict.SATISFIED
    assert audit(3, 5, rec).by_rule("R7")[0].verdict is Verdict.OBSTRUCTED


def test_cube_root_finding_is_informational():
    rec = CurveRecord(j_cube_root_in_F=False, images={3: sl2(3)})
    (f,) = audit(3, 9, rec).by_rule("J3")
    assert f.verdict is Verdict.SATISFIED
    with pytest.raises(MalformedRecord):
        audit(3, 9, CurveRecord(j_cube_root_in_F=True, images={3: sl2(3)}))


def test_record_validation():
    with pytest.raises(MalformedRecord):
        CurveRecord(field_disc_primes=frozenset({4}))
    with pytest.raises(MalformedRecord):
        CurveRecord(cyclotomic_trivial={5: CyclotomicData(None, 1)})
    with pytest.raises(MalformedRecord):
        CurveRecord(field_disc_primes=frozenset(), cyclotomic_trivial={5: CyclotomicData(0, 1)})
    with pytest.raises(MalformedRecord):
        CurveRecord(images={9: gl2(3)})
    with pytest.raises(MalformedRecord):
        LocalData(4, (IdealData(1, Reduction.GOOD),))
    with pytest.raises(MalformedRecord):
        audit(0, 5, CurveRecord())


def test_report_rendering_and_json():
    rec = CurveRecord(field_disc_primes=frozenset(), conductor_norm_primes=frozenset({11}), local=local(7, "good_ordinary"))
    report = audit(5, 35, rec)
    text = report.render()
    assert text.splitlines()[0] == "query F(E[5]) = F(E[35]): obstructed"
    assert "R1 / " in text
    data = report.to_json()
    assert data["overall"] == "obstructed"
    assert all("citation" in f for f in data["findings"])


# -- monotonicity in the data ------------------------------------------------------------

QUERIES = [(3, 9), (5, 25), (2, 4), (2, 8), (5, 15), (2, 18), (5, 35), (3, 12), (9, 27), (6, 18), (7, 49), (3, 5)]
IMAGES = {3: [gl2(3), sl2(3), closure(3, [(1, 1, 0, 1), (2, 0, 0, 1)])], 5: [gl2(5), closure(5, [(2, 0, 0, 1), (1, 0, 0, 2)])], 2: [gl2(2), closure(2, [(0, 1, 1, 0)])]}
FIELDS = [
    "field_disc_primes",
    "conductor_norm_primes",
    "local",
    "cm",
    "cyclotomic_trivial",
    "zeta_in_F",
    "cyclotomic_disjoint",
    "images",
    "entanglement_set",
]


@st.composite
def full_record(draw):
    primes = [2, 3, 5, 7, 11]
    disc = set(draw(st.sets(st.sampled_from(primes))))
    cyc = {}
    for p in draw(st.sets(st.sampled_from([2, 3, 5, 7]))):
        if p != 2 and p in disc and draw(st.booleans()):
            cyc[p] = CyclotomicData(0, 1)
        else:
            cyc[p] = CyclotomicData(draw(st.sampled_from([None, 0, 1, 2])), 0)
    loc = {}
    for p in draw(st.sets(st.sampled_from(primes))):
        ideals = tuple(
            IdealData(draw(st.sampled_from([1, 2, 3, 4])), draw(st.sampled_from(list(Reduction))), draw(st.sampled_from([None, -1, -3, 0, 2])))
            for _ in range(draw(st.integers(1, 2)))
        )
        loc[p] = LocalData(p, ideals)
    images = {level: draw(st.sampled_from(groups)) for level, groups in IMAGES.items() if draw(st.booleans())}
    return CurveRecord(
        field_disc_primes=frozenset(disc),
        conductor_norm_primes=frozenset(draw(st.sets(st.sampled_from(primes)))),
        local=loc,
        cm=CMData(draw(st.booleans())),
        cyclotomic_trivial=cyc,
        zeta_in_F=frozenset(draw(st.sets(st.sampled_from([2, 3, 4, 5, 6, 8, 12]), min_size=1))),
        cyclotomic_disjoint=draw(st.booleans()),
        images=images,
        entanglement_set=frozenset(draw(st.sets(st.sampled_from([2, 3, 5, 7])))),
    )


def obstructed_keys(report):
    return {f.key for f in report.findings if f.verdict is Verdict.OBSTRUCTED}


@settings(max_examples=150)
@given(full_record(), st.sets(st.sampled_from(FIELDS)), st.sampled_from(QUERIES))
def test_adding_data_never_removes_an_obstruction(full, dropped, query):
    sparse = CurveRecord(**{f: (None if f in dropped else getattr(full, f)) for f in FIELDS})
    m, n = query
    assert obstructed_keys(audit(m, n, sparse)) <= obstructed_keys(audit(m, n, full))


@settings(max_examples=40)
@given(full_record(), full_record(), st.sets(st.sampled_from(FIELDS)), st.sampled_from(QUERIES))
def test_adding_data_never_removes_an_obstruction_for_two_curves(full, other, dropped, query):
    # both records describe curves over the same field
    shared = ("field_disc_primes", "cyclotomic_trivial", "zeta_in_F", "cyclotomic_disjoint")
    other = replace(other, **{f: getattr(full, f) for f in shared})
    sparse = CurveRecord(**{f: (None if f in dropped else getattr(full, f)) for f in FIELDS})
    sparse_other = CurveRecord(**{f: (None if f in dropped else getattr(other, f)) for f in FIELDS})
    m, n = query
    assert obstructed_keys(audit(m, n, sparse, sparse_other)) <= obstructed_keys(audit(m, n, full, other))
