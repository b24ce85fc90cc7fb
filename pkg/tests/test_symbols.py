import pytest
from hypothesis import given, strategies as st

from rigid_invariants.partitions import OperatorPair, Partition, TheoryLabel, enumerate_rigid
from rigid_invariants.symbols import (
    EMPTY_SYMBOL,
    Symbol,
    SymbolContribution,
    SymbolError,
    _b_rule,
    add_symbols,
    assemble,
    canonicalize,
    constructive_symbol,
    contributions,
    format_symbol,
    parse_symbol,
    symbol_of,
    symbol_of_pair,
    table_agreement_report,
    zero_frame,
)


def S(top, bottom):
    return Symbol(top, bottom)


def test_symbol_of_examples():
    assert symbol_of([1, 1, 1, 1, 1], "B") == S((0, 0, 0), (1, 1))
    assert symbol_of([2, 2, 1], "B") == S((0, 0), (2,))
    assert symbol_of([1, 1, 1, 1], "D") == S((1, 1), (0,))
    for fam in "BCD":
        assert symbol_of([], fam) == EMPTY_SYMBOL


def test_worked_addition_example():
    a = S((0, 0, 0, 0, 0, 1, 1), (1, 1, 1, 1, 1, 2))
    b = S((0, 0, 0, 1, 1, 1), (1, 1, 1, 1, 1))
    assert add_symbols(a, b) == S((0, 0, 0, 0, 1, 2, 2), (1, 2, 2, 2, 2, 3))
    assert a + b == add_symbols(b, a)


def test_addition_trivia():
    s = S((0, 0), (2,))
    assert s + EMPTY_SYMBOL == s
    assert s + s == S((0, 0), (4,))


def test_canonicalize():
    assert canonicalize(S((0, 0, 0), (0, 2))) == S((0, 0), (2,))
    assert canonicalize(S((0, 0), (2,))) == S((0, 0), (2,))
    assert canonicalize(EMPTY_SYMBOL) == EMPTY_SYMBOL


def test_symbol_of_pair_examples():
    b2 = TheoryLabel("B", 2)
    assert symbol_of_pair(OperatorPair(b2, [2, 2, 1], [])) == S((0, 0), (2,))
    assert symbol_of_pair(OperatorPair(b2, [1, 1, 1, 1, 1], [])) == S((0, 0, 0), (1, 1))
    mixed = OperatorPair(b2, [1], [1, 1, 1, 1])
    assert symbol_of_pair(mixed) == canonicalize(symbol_of([1], "B") + symbol_of([1, 1, 1, 1], "D"))


def test_d_deletion_rejects_invalid_input():
    # a single part is not a D shape; the two leading bottom zeros are missing
    with pytest.raises(SymbolError):
        symbol_of([3], "D")
    with pytest.raises(SymbolError):
        symbol_of([3, 2], "D")


def test_contributions_examples():
    (c,) = contributions([1, 1, 1, 1, 1], "B")
    assert (c.side, c.length, c.row_index, c.case) == ("bottom", 2, 1, ("odd", "odd"))
    (d,) = contributions([1, 1, 1, 1], "D")
    assert (d.side, d.length, d.case) == ("top", 2, ("even", "odd"))
    for n in range(9):
        (e,) = contributions([1] * (2 * n + 1), "B")
        assert (e.side, e.length) == ("bottom", n)


def test_assemble_examples():
    frame = zero_frame(3, 2)
    c = SymbolContribution("bottom", 2, 1, 5, ("odd", "odd"))
    assert assemble([c], frame) == symbol_of([1, 1, 1, 1, 1], "B")
    assert assemble([], frame) == frame
    assert assemble([("bottom", 2), ("bottom", 1)], zero_frame(0, 2)).bottom == (1, 2)
    with pytest.raises(SymbolError):
        assemble([("top", 4)], frame)


@pytest.mark.parametrize("family", "BCD")
def test_row_contributions_agree_with_shifted_parts(family):
    report = table_agreement_report(family, 6)
    assert report.checked > 0
    assert report.mismatches == []


def test_cumulative_reading_is_only_a_partial_match():
    # kept for comparison; the cumulative-sum reading misses most classes
    report = table_agreement_report("B", 6, cumulative_rows=True)
    assert 0 < report.agreed < report.checked


@pytest.mark.parametrize("family", "BCD")
def test_nonempty_symbols_have_defect_one(family):
    for n in range(1, 7):
        for p in enumerate_rigid(TheoryLabel(family, n)):
            s = symbol_of(p, family)
            assert s.defect == 1
            assert s.rows_increasing()


def test_text_form_round_trip():
    s = S((0, 0, 0, 0, 1, 2, 2), (1, 2, 2, 2, 2, 3))
    assert format_symbol(s) == "top=[0,0,0,0,1,2,2];bottom=[1,2,2,2,2,3]"
    assert parse_symbol(format_symbol(s)) == s
    assert parse_symbol("top=[];bottom=[]") == EMPTY_SYMBOL
    with pytest.raises(ValueError):
        parse_symbol("top=[1]")


# -- properties --------------------------------------------------------------------

rows = st.lists(st.integers(0, 5), max_size=6).map(sorted)
symbols = st.builds(lambda t, b: Symbol(t, b), rows, rows)
partitions = st.lists(st.integers(1, 8), min_size=1, max_size=8).map(lambda xs: Partition(sorted(xs, reverse=True)))


@given(symbols, symbols)
def test_addition_commutes(a, b):
    assert a + b == b + a


@given(symbols, symbols, symbols)
def test_addition_associates(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(symbols)
def test_canonicalize_is_idempotent(s):
    c = canonicalize(s)
    assert canonicalize(c) == c
    assert canonicalize(Symbol((0,) + c.top, (0,) + c.bottom)) == c


@given(partitions)
def test_zero_padding_adds_only_a_zero_column(p):
    top, bottom, _ = _b_rule(list(p))
    ptop, pbottom, _ = _b_rule(list(p) + [0, 0])
    assert canonicalize(Symbol(ptop, pbottom)) == canonicalize(Symbol(top, bottom))


@pytest.mark.parametrize("family", "BCD")
@given(data=st.data())
def test_constructive_route_matches_shifted_parts_at_higher_rank(family, data):
    rank = data.draw(st.integers(7, 8))
    p = data.draw(st.sampled_from(enumerate_rigid(TheoryLabel(family, rank))))
    assert canonicalize(constructive_symbol(p, family)) == canonicalize(symbol_of(p, family))
