"""Symbol invariant of B/C/D partitions and of rigid pairs.

Two routes compute the symbol of a single partition:

* :func:`symbol_of` -- the normative shifted-parts construction;
* :func:`contributions` + :func:`assemble` -- one right-aligned string of 1's
  per transpose row, read off the row-contribution table.

They are compared in :func:`table_agreement_report`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .partitions import (
    DEFAULT,
    Conventions,
    OperatorPair,
    Partition,
    TheoryLabel,
    transpose,
)


class SymbolError(ValueError):
    """Raised when a construction step meets an input it cannot accept."""


@dataclass(frozen=True)
class Symbol:
    top: tuple[int, ...] = ()
    bottom: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "top", tuple(int(x) for x in self.top))
        object.__setattr__(self, "bottom", tuple(int(x) for x in self.bottom))
        if any(x < 0 for x in self.top + self.bottom):
            raise SymbolError(f"negative symbol entry: {self}")

    @property
    def is_empty(self) -> bool:
        return not self.top and not self.bottom

    @property
    def defect(self) -> int:
        """len(top) - len(bottom)."""
        return len(self.top) - len(self.bottom)

    def rows_increasing(self) -> bool:
        return all(_weakly_increasing(r) for r in (self.top, self.bottom))

    def __add__(self, other: "Symbol") -> "Symbol":
        return add_symbols(self, other)

    def __str__(self) -> str:
        return format_symbol(self)


EMPTY_SYMBOL = Symbol()


def _weakly_increasing(row: Sequence[int]) -> bool:
    return all(row[i] <= row[i + 1] for i in range(len(row) - 1))


@dataclass(frozen=True)
class SymbolIntermediates:
    shifted: tuple[int, ...]
    f: tuple[int, ...]
    g: tuple[int, ...]


def _b_rule(parts: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...], SymbolIntermediates]:
    l = len(parts)
    shifted = tuple(parts[k] + l - (k + 1) for k in range(l))
    f = sorted((a - 1) // 2 for a in shifted if a % 2)
    g = sorted(a // 2 for a in shifted if a % 2 == 0)
    alpha = tuple(fi - i for i, fi in enumerate(f))
    beta = tuple(gi - i for i, gi in enumerate(g))
    return alpha, beta, SymbolIntermediates(shifted, tuple(f), tuple(g))


def symbol_with_intermediates(p: Iterable[int], family: str) -> tuple[Symbol, SymbolIntermediates | None]:
    parts = list(Partition(p))
    if not parts:
        return EMPTY_SYMBOL, None
    if family == "B":
        top, bottom, mid = _b_rule(parts)
    elif family == "C":
        if len(parts) % 2 == 0:
            top, bottom, mid = _b_rule(parts)
            top = (0,) + top
        else:
            top, bottom, mid = _b_rule(parts + [0])
            if not bottom or bottom[0] != 0:
                raise SymbolError(f"C rule: first bottom entry of {parts} is not 0")
            bottom = bottom[1:]
    elif family == "D":
        top, bottom, mid = _b_rule(parts + [0])
        if len(bottom) < 2 or bottom[0] != 0 or bottom[1] != 0:
            raise SymbolError(f"D rule: first two bottom entries of {parts} are not 0")
        bottom = bottom[2:]
    else:
        raise SymbolError(f"unknown family {family!r}")
    return Symbol(top, bottom), mid


def symbol_of(p: Iterable[int], theory: TheoryLabel | str) -> Symbol:
    """Symbol of one partition under the family rule of ``theory``.

    The empty partition maps to the empty symbol.
    """
    family = theory if isinstance(theory, str) else theory.family
    return symbol_with_intermediates(p, family)[0]


def _right_add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    a = (0,) * (n - len(a)) + tuple(a)
    b = (0,) * (n - len(b)) + tuple(b)
    return tuple(x + y for x, y in zip(a, b))


def add_symbols(s1: Symbol, s2: Symbol) -> Symbol:
    """Entrywise sum with each row pair right-aligned."""
    return Symbol(_right_add(s1.top, s2.top), _right_add(s1.bottom, s2.bottom))


def canonicalize(s: Symbol) -> Symbol:
    top, bottom = list(s.top), list(s.bottom)
    while top and bottom and top[0] == 0 and bottom[0] == 0:
        top.pop(0)
        bottom.pop(0)
    return Symbol(top, bottom)


def symbol_of_pair(pair: OperatorPair) -> Symbol:
    f1, f2 = pair.signature.families
    return canonicalize(add_symbols(symbol_of(pair.lambda1, f1), symbol_of(pair.lambda2, f2)))


# -- row contributions ------------------------------------------------------------


@dataclass(frozen=True)
class SymbolContribution:
    side: str  # "top" | "bottom"
    length: int  # L
    row_index: int  # 1-based index into transpose rows
    row_length: int
    case: tuple[str, str]  # (parity of row, parity of i + t + 1)


def parity(x: int) -> str:
    return "odd" if x % 2 else "even"


# (row parity, parity of i+t+1) -> (side, delta) with L = (row + delta) / 2
TABLE = {
    ("odd", "even"): ("top", 1),
    ("even", "odd"): ("top", 0),
    ("even", "even"): ("bottom", 0),
    ("odd", "odd"): ("bottom", -1),
}


def t_of(family: str) -> int:
    return {"B": -1, "C": 0, "D": 1}[family]


def row_contribution(row_length: int, i: int, family: str) -> SymbolContribution:
    case = (parity(row_length), parity(i + t_of(family) + 1))
    side, delta = TABLE[case]
    twice = row_length + delta
    if twice % 2:
        raise SymbolError(f"non-integral L for row {i} of length {row_length}")
    return SymbolContribution(side, twice // 2, i, row_length, case)


def contributions(
    p: Iterable[int], theory: TheoryLabel | str, cumulative_rows: bool = False
) -> list[SymbolContribution]:
    """One contribution per transpose row, longest row first.

    The table's tail sum over k >= i of n_k (the number of parts equal to k)
    is the length of transpose row i, which is what enters L.  With
    ``cumulative_rows`` the sum instead runs over the lengths of transpose
    rows i..m; that reading is kept only for comparison reports.
    """
    family = theory if isinstance(theory, str) else theory.family
    rows = transpose(p)
    if cumulative_rows:
        sums = [sum(rows[i:]) for i in range(len(rows))]
        out = []
        for i, (r, total) in enumerate(zip(rows, sums), start=1):
            case = (parity(r), parity(i + t_of(family) + 1))
            side, delta = TABLE[case]
            if (total + delta) % 2:
                raise SymbolError(f"non-integral L for row {i}: ({total} + {delta}) / 2")
            out.append(SymbolContribution(side, (total + delta) // 2, i, r, case))
        return out
    return [row_contribution(r, i, family) for i, r in enumerate(rows, start=1)]


def zero_frame(top_width: int, bottom_width: int) -> Symbol:
    return Symbol((0,) * top_width, (0,) * bottom_width)


def assemble(contribs: Iterable[SymbolContribution | tuple[str, int]], frame: Symbol) -> Symbol:
    """Add each contribution's right-aligned 1-string into ``frame``."""
    top, bottom = list(frame.top), list(frame.bottom)
    for c in contribs:
        side, length = (c.side, c.length) if isinstance(c, SymbolContribution) else c
        row = top if side == "top" else bottom
        if length > len(row):
            raise SymbolError(f"contribution of length {length} overflows {side} row of width {len(row)}")
        for j in range(len(row) - length, len(row)):
            row[j] += 1
    return Symbol(top, bottom)


def constructive_symbol(
    p: Iterable[int], theory: TheoryLabel | str, frame: Symbol | None = None, cumulative_rows: bool = False
) -> Symbol:
    """Symbol built from row contributions.

    Without a frame, the narrowest frame with top one entry longer than
    bottom is used, which lands directly on the canonical form.
    """
    cs = contributions(p, theory, cumulative_rows)
    if frame is None:
        max_top = max((c.length for c in cs if c.side == "top"), default=0)
        max_bottom = max((c.length for c in cs if c.side == "bottom"), default=0)
        width = max(max_bottom, max_top - 1, 0)
        frame = zero_frame(width + 1, width)
    return assemble(cs, frame)


@dataclass
class AgreementReport:
    family: str
    max_rank: int
    checked: int
    agreed: int
    mismatches: list[tuple[Partition, Symbol, Symbol]]

    @property
    def fraction(self) -> float:
        return self.agreed / self.checked if self.checked else 1.0


def table_agreement_report(
    family: str, max_rank: int, conv: Conventions = DEFAULT, cumulative_rows: bool = False
) -> AgreementReport:
    """Compare the row-contribution route with the shifted-parts route."""
    from .partitions import enumerate_rigid

    checked = agreed = 0
    mismatches = []
    for n in range(max_rank + 1):
        for p in enumerate_rigid(TheoryLabel(family, n), conv):
            if not p:
                continue
            checked += 1
            want = canonicalize(symbol_of(p, family))
            try:
                got = canonicalize(constructive_symbol(p, family, cumulative_rows=cumulative_rows))
            except SymbolError:
                got = None
            if got == want:
                agreed += 1
            else:
                mismatches.append((p, want, got))
    return AgreementReport(family, max_rank, checked, agreed, mismatches)


# -- text syntax ----------------------------------------------------------------

_SYMBOL_RE = re.compile(r"^\s*top\s*=\s*\[([^\]]*)\]\s*;\s*bottom\s*=\s*\[([^\]]*)\]\s*$")


def _ints(body: str) -> tuple[int, ...]:
    body = body.strip()
    return tuple(int(x) for x in body.split(",")) if body else ()


def parse_symbol(text: str) -> Symbol:
    m = _SYMBOL_RE.match(text)
    if not m:
        raise ValueError(f"bad symbol {text!r} (expected 'top=[...];bottom=[...]')")
    return Symbol(_ints(m.group(1)), _ints(m.group(2)))


def format_symbol(s: Symbol) -> str:
    return "top=[" + ",".join(map(str, s.top)) + "];bottom=[" + ",".join(map(str, s.bottom)) + "]"
