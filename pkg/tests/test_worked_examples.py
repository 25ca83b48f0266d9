"""Hand-checkable values on the named fixtures, one assertion group per quantity."""

from fractions import Fraction

import pytest

from fixtures import CHAIN_GAP, FIVE_USER, FIVE_USER_JAMMED, MUTUAL_FULL, ONE_RX_TWO_IF, PAIR_BLOCKED, SIX_USER
from timcm import (
    Schedule,
    Slot,
    Topology,
    TopologyError,
    analyze,
    best_secure_partition,
    brute_force_best_schedule,
    canonical_form,
    check_feasibility,
    classify_all,
    find_jammer_set,
    fractional_sis_bound,
    mu,
    nonsecure_fractional_is_bound,
    parse_topology,
    schedule_from_weights,
    secure_tdma_schedule,
    symmetric_rate,
    verify_schedule,
)
from timcm.achievability import FractionalScheduleBound
from timcm.converse import enumerate_generators
from timcm.secure_sets import (
    enumerate_secure_independent_sets,
    is_independent_set,
    maximum_independent_sets,
    maximum_secure_independent_sets,
)
from timcm.topology import derived_sets, relabel
from timcm.verifier import schedule_is_valid

EDGELESS = Topology.from_interference(4, {})
FULL2 = Topology.from_interference(2, {1: {2}, 2: {1}})
FULL3 = Topology.from_interference(3, {1: {2, 3}, 2: {1, 3}, 3: {1, 2}})
SINGLE = Topology.from_interference(1, {})


def test_parsing():
    assert parse_topology("2\n10\n11\n").heard == (frozenset({1}), frozenset({1, 2}))
    six = parse_topology("6\n100100\n111100\n101000\n001110\n001010\n001001\n")
    assert six == SIX_USER
    assert [sorted(h) for h in six.heard] == [[1, 4], [1, 2, 3, 4], [1, 3], [3, 4, 5], [3, 5], [3, 6]]
    with pytest.raises(TopologyError):
        parse_topology("3\n100\n110\n100\n")


def test_derived_sets():
    assert SIX_USER.interferers(2) == {1, 3, 4}
    assert SIX_USER.reach(4) == {1, 2, 4}
    assert derived_sets(SINGLE, 1) == (frozenset(), {1}, {1})


def test_canonical_forms():
    a = Topology(2, ({1, 2}, {2}))
    b = Topology(2, ({1}, {1, 2}))
    assert canonical_form(a) == canonical_form(b)
    swapped = relabel(SIX_USER, {1: 2, 2: 1, 3: 4, 4: 3, 5: 5, 6: 6})
    assert canonical_form(swapped) == canonical_form(SIX_USER)


def test_independence():
    assert is_independent_set(SIX_USER, {1, 5, 6})
    assert is_independent_set(SIX_USER, {2, 5, 6})
    for t in (SIX_USER, FIVE_USER, FULL3):
        assert is_independent_set(t, set())
        assert all(is_independent_set(t, {k}) for k in range(1, t.k + 1))


def test_jammer_sets():
    assert find_jammer_set(SIX_USER, {5, 6}) == {4}
    assert find_jammer_set(SIX_USER, {2, 6}) == frozenset()
    assert find_jammer_set(FIVE_USER, {2, 3, 5}) == {1}
    # in the mutually interfering class, 2 and 3 can only be jammed by 1, heard at both
    assert find_jammer_set(MUTUAL_FULL, {2}) is None
    assert find_jammer_set(MUTUAL_FULL, {3}) is None


def test_secure_set_listings():
    users = {w.users for w in enumerate_secure_independent_sets(SIX_USER)}
    assert {frozenset(s) for s in ({1}, {3}, {2, 6}, {4, 6}, {5, 6})} <= users
    assert [(w.users, w.jammers) for w in enumerate_secure_independent_sets(SINGLE)] == [({1}, frozenset())]
    assert maximum_secure_independent_sets(SIX_USER) == [{2, 6}, {4, 6}, {5, 6}]
    assert maximum_secure_independent_sets(FIVE_USER) == [{2, 3, 5}]
    assert maximum_secure_independent_sets(FULL3) == []
    assert maximum_independent_sets(SIX_USER) == [{1, 5, 6}, {2, 5, 6}]
    # {2, 3, 5} is secure, hence independent, so it ties with {3, 4, 5}
    assert maximum_independent_sets(FIVE_USER) == [{2, 3, 5}, {3, 4, 5}]
    assert is_independent_set(FIVE_USER, {1, 2})
    assert maximum_independent_sets(EDGELESS) == [{1, 2, 3, 4}]


def test_feasibility_examples():
    assert check_feasibility(PAIR_BLOCKED).witness[:2] == (1, 2)
    for i1 in ({}, {2}, {3}, {2, 3}):
        t = Topology.from_interference(3, {1: i1, 2: {1, 3}, 3: {1, 2}})
        v = check_feasibility(t)
        assert not v.feasible
        assert v.witness[:2] in ((2, 3), (1, 2), (1, 3))
    assert check_feasibility(MUTUAL_FULL).witness[:2] == (2, 3)
    assert check_feasibility(EDGELESS).feasible


def test_slot_examples():
    assert schedule_is_valid(FIVE_USER_JAMMED, Schedule(5, (Slot({1}, {5}),)))
    assert not schedule_is_valid(FIVE_USER_JAMMED, Schedule(5, (Slot({1}),)))
    assert secure_tdma_schedule(CHAIN_GAP).slots[0] == Slot({1}, {2})
    assert schedule_is_valid(SIX_USER, Schedule(6, (Slot({2, 6}),)))
    assert schedule_is_valid(CHAIN_GAP, Schedule(3, (Slot({3}),)))
    assert schedule_is_valid(FIVE_USER, Schedule(5, (Slot({4}),)))
    (d,) = verify_schedule(FIVE_USER, Schedule(5, (Slot({1}),)))
    assert d.secrecy_violations == ((1, 4),)


def test_partitions():
    p6 = best_secure_partition(SIX_USER)
    assert len(p6.parts) == 5 and p6.value == Fraction(1, 5)
    p5 = best_secure_partition(FIVE_USER)
    assert len(p5.parts) == 3 and p5.value == Fraction(1, 3)
    alt = Schedule(5, tuple(Slot(g, find_jammer_set(FIVE_USER, g)) for g in ({2, 3, 5}, {1}, {4})))
    assert schedule_is_valid(FIVE_USER, alt)
    p3 = best_secure_partition(ONE_RX_TWO_IF)
    assert p3.parts == ({1, 3}, {2}) and p3.jammers == ({2}, frozenset())


def _sets_with_jammers(t, groups):
    return {frozenset(g): find_jammer_set(t, g) for g in groups}


def test_five_slot_schedule():
    weights = {
        frozenset({1, 2}): Fraction(2, 5),
        frozenset({2, 3, 5}): Fraction(1, 5),
        frozenset({3, 4}): Fraction(1, 5),
        frozenset({4, 5}): Fraction(1, 5),
    }
    jam = _sets_with_jammers(FIVE_USER, weights)
    assert None not in jam.values()
    s = schedule_from_weights(FIVE_USER, FractionalScheduleBound(Fraction(2, 5), weights, jam))
    assert len(s) == 5
    assert schedule_is_valid(FIVE_USER, s)
    assert symmetric_rate(s) == Fraction(2, 5)
    assert fractional_sis_bound(FIVE_USER).value >= Fraction(2, 5)
    assert fractional_sis_bound(SIX_USER).value >= Fraction(1, 5)


def test_weight_realization_edge_cases():
    one = fractional_sis_bound(SINGLE)
    assert one.value == 1 and one.weights == {frozenset({1}): 1}
    s = schedule_from_weights(EDGELESS, fractional_sis_bound(EDGELESS))
    assert len(s) == 1 and symmetric_rate(s) == 1
    p = best_secure_partition(SIX_USER)
    uniform = FractionalScheduleBound(p.value, {u: p.value for u in p.parts}, dict(zip(p.parts, p.jammers)))
    s = schedule_from_weights(SIX_USER, uniform)
    assert sorted(s.slots, key=repr) == sorted(p.schedule(6).slots, key=repr)


def test_nonsecure_values():
    assert nonsecure_fractional_is_bound(FIVE_USER) == Fraction(1, 2)
    assert nonsecure_fractional_is_bound(EDGELESS) == 1
    assert nonsecure_fractional_is_bound(FULL2) == Fraction(1, 2)


def test_mu_examples():
    assert mu(SIX_USER, {2, 4, 6}, {1, 3, 5}).value == 0
    assert mu(FIVE_USER, {1, 4}, {2, 3}).value == 0
    assert mu(SIX_USER, {1, 2, 3}, set()).value == 0


def test_generator_examples():
    six = {g.generated: g.lasts for g in enumerate_generators(SIX_USER, 2)}
    assert 3 in six[frozenset({3, 4})]
    chain = {g.generated: g.lasts for g in enumerate_generators(CHAIN_GAP, 3)}
    assert 1 in chain[frozenset({1, 2})]
    assert [g.generated for g in enumerate_generators(CHAIN_GAP, 1)] == [frozenset()]


def test_rate_examples():
    s = secure_tdma_schedule(SIX_USER)
    assert symmetric_rate(s) == Fraction(1, 6)
    assert symmetric_rate(Schedule(3, (Slot({1}), Slot({2})))) == 0


def test_oracle_examples():
    assert brute_force_best_schedule(ONE_RX_TWO_IF, 2)[0] == Fraction(1, 2)
    for t_max in (1, 2, 3):
        assert brute_force_best_schedule(MUTUAL_FULL, t_max)[0] == 0
    assert brute_force_best_schedule(SINGLE, 1)[0] == 1


def test_analysis_examples():
    h = analyze(CHAIN_GAP)
    assert h.best_lower == Fraction(1, 3) and h.thm5.value == Fraction(1, 3) and h.optimal == Fraction(1, 3)
    six = analyze(SIX_USER)
    assert six.best_lower == Fraction(1, 5) and six.combined_upper == Fraction(1, 4) and six.optimal is None
    assert analyze(MUTUAL_FULL).optimal == 0
    assert analyze(ONE_RX_TWO_IF).optimal == Fraction(1, 2)


def test_classification_examples():
    c1 = classify_all(1)
    assert len(c1.rows) == 1 and c1.rows[0].optimal == 1
    assert len(classify_all(2).rows) == 3
    c3 = classify_all(3)
    assert c3.summary() == {"k": 3, "classes": 16, "zero": 9, "positive": 7, "settled": 7}
