import pytest
from hypothesis import given, strategies as st

from rigid_invariants.fingerprints import (
    DPRIME,
    PRIME,
    Fingerprint,
    FingerprintError,
    bare_merged,
    condition_ii_report,
    extract,
    fingerprint,
    fingerprint_trace,
    merge_with_provenance,
    parse_fingerprint,
    sign,
    sp_map,
    tau,
)
from rigid_invariants.partitions import (
    MERGE_READING,
    Conventions,
    OperatorPair,
    Partition,
    TheoryLabel,
    enumerate_pairs,
    transpose,
)

B6_PAIR = OperatorPair(TheoryLabel("B", 6), [2, 2] + [1] * 9, [])
B2_MIXED = OperatorPair(TheoryLabel("B", 2), [1], [1, 1, 1, 1])
C2_PAIR = OperatorPair(TheoryLabel("C", 2), [2, 1, 1], [])


def test_sp_map_examples():
    assert sp_map([2, 2] + [1] * 9) == (2, 2) + (1,) * 8
    assert sp_map([1, 1, 1, 1, 1]) == (1, 1, 1, 1)
    assert sp_map([3, 1]) == (2, 2)
    assert sp_map([3, 3]) == (3, 3)


def test_sp_map_examples_hold_under_the_position_sign_too():
    conv = Conventions(sign="position")
    assert sp_map([2, 2] + [1] * 9, conv) == (2, 2) + (1,) * 8
    assert sp_map([1, 1, 1, 1, 1], conv) == (1, 1, 1, 1)
    assert sp_map([3, 1], conv) == (2, 2)
    assert sp_map([3, 3], conv) == (3, 3)


def test_sign_rules():
    lam = [3, 2, 1]
    assert [sign(lam, i) for i in (1, 2, 3)] == [-1, -1, 1]  # partial sums 3, 5, 6
    pos = Conventions(sign="position")
    assert [sign(lam, i, pos) for i in (1, 2, 3)] == [-1, 1, -1]


def test_merge_with_provenance():
    m = merge_with_provenance(B2_MIXED)
    assert m.rows == (4, 1) and m.origins == (DPRIME, PRIME)
    assert m.underlying == (2, 1, 1, 1)
    literal = merge_with_provenance(B2_MIXED, MERGE_READING)
    assert literal.rows == (1, 1, 1, 1, 1)
    assert literal.origins == (DPRIME,) * 4 + (PRIME,)
    assert set(merge_with_provenance(B6_PAIR).origins) == {PRIME}
    assert set(merge_with_provenance(C2_PAIR, MERGE_READING).origins) == {PRIME}


def test_b6_operator():
    tr = fingerprint_trace(B6_PAIR)
    assert tr.mu == (2, 2) + (1,) * 8
    assert tr.tau.signs == {2: 1}
    assert tr.fingerprint == Fingerprint([2, 1, 1, 1, 1], [])


def test_default_reading_on_small_examples():
    tr = fingerprint_trace(B2_MIXED)
    assert tr.mu == (2, 1, 1)
    assert tr.tau.triggers[2] == {"iii"}
    assert tr.fingerprint == Fingerprint([1], [1])
    tr = fingerprint_trace(C2_PAIR)
    assert tr.mu == (2, 1, 1)
    assert tr.fingerprint == Fingerprint([1], [1])


def test_merge_reading_on_small_examples():
    tr = fingerprint_trace(B2_MIXED, MERGE_READING)
    assert tr.mu == (1, 1, 1, 1) and tr.tau.signs == {}
    assert tr.fingerprint == Fingerprint([1, 1], [])
    tr = fingerprint_trace(C2_PAIR, MERGE_READING)
    assert tr.mu == (2, 2)
    assert tr.tau.signs == {2: -1} and "i" in tr.tau.triggers[2]
    assert tr.fingerprint == Fingerprint([], [1, 1])
    assert fingerprint(B6_PAIR, MERGE_READING) == fingerprint(B6_PAIR)


def test_extract():
    assert extract([2, 2, 1, 1], {2: 1}) == Fingerprint([2, 1], [])
    assert extract([2, 2, 1, 1], {2: -1}) == Fingerprint([1], [1, 1])
    with pytest.raises(FingerprintError):
        extract([3, 1], {})


@pytest.mark.parametrize("family", "BCD")
def test_size_accounting(family):
    for n in range(1, 7):
        for pair in enumerate_pairs(TheoryLabel(family, n)):
            tr = fingerprint_trace(pair)
            assert tr.mu.size == 2 * n
            assert tr.fingerprint.size == n


@pytest.mark.parametrize("family", "BC")
def test_condition_ii_silent_on_rigid_rank_four(family):
    report = condition_ii_report(enumerate_pairs(TheoryLabel(family, 4)))
    assert report.checked > 0 and report.ok


def test_condition_ii_matters_on_a_gapped_shape():
    # (5,4,2): the 2 of mu=(4,4,2) is unmoved and not signalled by (iii);
    # only the partial sums see the earlier change
    m = bare_merged([5, 4, 2])
    mu = sp_map(m.underlying)
    assert mu == (4, 4, 2)
    assert tau(m, mu, use_ii=True).signs == {4: -1, 2: -1}
    assert tau(m, mu, use_ii=False).signs == {4: -1, 2: 1}
    assert not condition_ii_report([m]).ok


def test_text_form():
    fp = Fingerprint([2, 1, 1, 1, 1], [])
    assert str(fp) == "alpha=[2,1,1,1,1];beta=[]"
    assert parse_fingerprint(str(fp)) == fp
    with pytest.raises(ValueError):
        parse_fingerprint("alpha=[1]")


@given(st.lists(st.integers(1, 9), max_size=10).map(lambda xs: Partition(sorted(xs, reverse=True))))
def test_sp_map_moves_parts_by_at_most_one(lam):
    steps = list(lam) + [0]
    if any(steps[i] - steps[i + 1] > 1 for i in range(len(lam))):
        return
    try:
        mu = sp_map(lam)
    except FingerprintError:
        return
    assert mu.size in (lam.size - 1, lam.size, lam.size + 1)
    assert all(abs(a - b) <= 1 for a, b in zip(mu, list(lam) + [0]))


def test_transposed_merge_is_the_sum_of_parts():
    m = merge_with_provenance(B2_MIXED)
    assert transpose(m.rows) == (2, 1, 1, 1)


@pytest.mark.parametrize("family", "BCD")
def test_moved_parts_are_odd_and_follow_the_sign(family):
    for n in range(1, 7):
        for pair in enumerate_pairs(TheoryLabel(family, n)):
            lam = merge_with_provenance(pair).underlying
            mu = sp_map(lam)
            for i in range(1, max(len(lam), len(mu)) + 1):
                d = mu.part(i) - lam.part(i)
                if d:
                    assert lam.part(i) % 2 == 1
                    assert d == sign(lam, i)
