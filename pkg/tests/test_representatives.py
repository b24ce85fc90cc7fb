from collections import defaultdict

import pytest

from rigid_invariants.fingerprints import Fingerprint, fingerprint, fingerprint_trace
from rigid_invariants.partitions import OperatorPair, Partition, TheoryLabel, enumerate_pairs, is_rigid, merge
from rigid_invariants.representatives import (
    LineDiagram,
    ReconstructionError,
    assemble_lines,
    candidates,
    counterexample_report,
    fingerprint_back,
    fingerprint_of_representative,
    lines_of,
    mu_from_fingerprint,
    reconstruct_from_symbol,
    row_from_line,
    symbol_of_mu_r,
)
from rigid_invariants.symbols import EMPTY_SYMBOL, Symbol, canonicalize, symbol_of, symbol_of_pair

B6_PAIR = OperatorPair(TheoryLabel("B", 6), [2, 2] + [1] * 9, [])


def classes(theory):
    out = defaultdict(list)
    for p in enumerate_pairs(theory):
        out[symbol_of_pair(p)].append(p)
    return out


def test_lines_of_examples():
    d = lines_of(Symbol((0, 0, 0, 0, 1, 2, 2), (1, 2, 2, 2, 2, 3)))
    assert sorted(d.top_lines) == [2, 3]
    assert sorted(d.bottom_lines) == [1, 5, 6]
    assert lines_of(Symbol((0, 0, 0), ())) == LineDiagram((), ())


def test_lines_of_rejects_decreasing_rows():
    with pytest.raises(ReconstructionError):
        lines_of(Symbol((1, 0), ()))


@pytest.mark.parametrize("family", "BCD")
def test_lines_round_trip(family):
    for n in range(1, 7):
        for s in classes(TheoryLabel(family, n)):
            assert assemble_lines(lines_of(s), len(s.top), len(s.bottom)) == s


def test_row_from_line_inverts_the_table():
    # B: row 1 of length 5 gives a bottom line of length 2
    assert row_from_line("bottom", 2, 1, "B") == 5
    # D: row 1 of length 4 gives a top line of length 2
    assert row_from_line("top", 2, 1, "D") == 4


def test_reconstruct_examples():
    b2 = TheoryLabel("B", 2)
    rec = reconstruct_from_symbol(symbol_of_pair(OperatorPair(b2, [1] * 5, [])), b2)
    assert symbol_of_pair(rec.pair) == Symbol((0, 0, 0), (1, 1))
    rec = reconstruct_from_symbol(Symbol((0, 0), (2,)), b2)
    assert symbol_of_pair(rec.pair) == Symbol((0, 0), (2,))
    for n in range(1, 5):
        bn = TheoryLabel("B", n)
        rec = reconstruct_from_symbol(Symbol((0,) * (n + 1), (1,) * n), bn)
        assert (rec.pair.lambda1, rec.pair.lambda2) == (Partition([1] * (2 * n + 1)), Partition())


def test_reconstruct_rejects_foreign_symbols():
    with pytest.raises(ReconstructionError):
        reconstruct_from_symbol(Symbol((0, 0), (5,)), TheoryLabel("B", 2))


@pytest.mark.parametrize("family", "BCD")
def test_reconstruction_lands_in_the_class(family):
    for n in range(1, 6):
        theory = TheoryLabel(family, n)
        for s, members in classes(theory).items():
            rec = reconstruct_from_symbol(s, theory)
            assert symbol_of_pair(rec.pair) == s
            assert rec.pair in members
            t1, t2 = rec.pair.factor_theories()
            assert is_rigid(rec.pair.lambda1, t1) and is_rigid(rec.pair.lambda2, t2)
            assert rec.assignment.lemma_violations() == []


@pytest.mark.parametrize("family", "BCD")
def test_candidate_search_finds_the_whole_class(family):
    for n in range(1, 5):
        theory = TheoryLabel(family, n)
        for s, members in classes(theory).items():
            found = {pair for pair, _, _ in candidates(s, theory)}
            assert found == set(members)


def test_mu_from_fingerprint_examples():
    assert mu_from_fingerprint(Fingerprint([2, 1, 1, 1, 1], [])) == (
        Partition([2, 2] + [1] * 8),
        Partition(),
        Partition([2, 2] + [1] * 8),
    )
    assert mu_from_fingerprint(Fingerprint([], [1, 1])) == (Partition(), Partition([2, 2]), Partition([2, 2]))
    assert mu_from_fingerprint(Fingerprint()) == (Partition(), Partition(), Partition())


def test_symbol_of_mu_r_examples():
    fp = fingerprint(B6_PAIR)
    assert symbol_of_mu_r(fp) == canonicalize(symbol_of([2, 2] + [1] * 8, "C"))
    assert symbol_of_mu_r(Fingerprint([1, 1], [])) == canonicalize(symbol_of([1, 1, 1, 1], "C"))
    assert symbol_of_mu_r(Fingerprint()) == EMPTY_SYMBOL


@pytest.mark.parametrize("family", "BCD")
def test_mu_r_is_the_sp_image(family):
    for n in range(1, 7):
        for pair in enumerate_pairs(TheoryLabel(family, n)):
            tr = fingerprint_trace(pair)
            l1, l2, mu_r = mu_from_fingerprint(tr.fingerprint)
            assert mu_r == tr.mu
            assert mu_r == merge(l1, l2)
            assert fingerprint_back(mu_r, tr.fingerprint) == tr.fingerprint


def test_fingerprint_of_representative_examples():
    fp, info = fingerprint_of_representative(B6_PAIR)
    assert fp == Fingerprint([2, 1, 1, 1, 1], [])
    assert info["fallback"] is False
    mixed = OperatorPair(TheoryLabel("B", 2), [1], [1, 1, 1, 1])
    assert fingerprint_of_representative(mixed)[0] == fingerprint(mixed)


@pytest.mark.parametrize("family", "BCD")
def test_fingerprint_of_representative_matches_generic_path(family):
    for n in range(1, 7):
        theory = TheoryLabel(family, n)
        for s in classes(theory):
            pair = reconstruct_from_symbol(s, theory).pair
            assert fingerprint_of_representative(pair)[0] == fingerprint(pair)


def test_counterexample_detector():
    corpus = enumerate_pairs(TheoryLabel("B", 6))
    report = counterexample_report(corpus)
    assert B6_PAIR in report.flagged
    assert B6_PAIR in report.without_witness  # no pair of its class has lambda = mu_r
    for pair in corpus:
        tr = fingerprint_trace(pair)
        assert (pair in report.flagged) == (tr.merged.underlying != tr.mu)
