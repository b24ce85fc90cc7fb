"""Representative elements.

From a symbol: split the symbol into right-aligned lines, hand each line to
a row of lambda' or lambda'' (longest first, lambda'' and the top side
preferred), recover row lengths by inverting the row-contribution table, and
accept only assignments whose pair reproduces the symbol exactly.

From a fingerprint: rebuild lambda'_r, lambda''_r and mu_r.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .blocks import BlockError, block_fingerprint
from .fingerprints import (
    DPRIME,
    PRIME,
    Fingerprint,
    FingerprintError,
    extract,
    fingerprint,
    fingerprint_trace,
)
from .partitions import (
    DEFAULT,
    Conventions,
    OperatorPair,
    Partition,
    TheoryLabel,
    factor_theory,
    is_rigid,
    merge,
    signatures,
    transpose,
)
from .symbols import (
    EMPTY_SYMBOL,
    Symbol,
    SymbolError,
    assemble,
    canonicalize,
    symbol_of,
    symbol_of_pair,
    t_of,
    zero_frame,
)


class ReconstructionError(ValueError):
    pass


@dataclass(frozen=True)
class LineDiagram:
    top_lines: tuple[int, ...]
    bottom_lines: tuple[int, ...]

    def lines(self) -> list[tuple[int, str]]:
        """All lines, longest first; the top side first among equal lengths."""
        out = [(x, "top") for x in self.top_lines] + [(x, "bottom") for x in self.bottom_lines]
        out.sort(key=lambda t: (-t[0], t[1] != "top"))
        return out


def _row_lines(row: tuple[int, ...]) -> tuple[int, ...]:
    if any(row[i] > row[i + 1] for i in range(len(row) - 1)):
        raise ReconstructionError(f"row {list(row)} is not weakly increasing; not a sum of right-aligned lines")
    # conjugate of the entries read right to left
    return tuple(transpose(reversed(row)))


def lines_of(s: Symbol) -> LineDiagram:
    return LineDiagram(_row_lines(s.top), _row_lines(s.bottom))


def assemble_lines(diagram: LineDiagram, top_width: int, bottom_width: int) -> Symbol:
    contribs = [("top", x) for x in diagram.top_lines] + [("bottom", x) for x in diagram.bottom_lines]
    return assemble(contribs, zero_frame(top_width, bottom_width))


# -- row recovery -------------------------------------------------------------------


def row_from_line(side: str, length: int, i: int, family: str) -> int:
    """Invert the contribution table: the transpose-row length that yields
    a line of ``length`` on ``side`` at row index ``i``."""
    q_odd = (i + t_of(family) + 1) % 2 == 1
    if side == "top":
        return 2 * length if q_odd else 2 * length - 1
    return 2 * length + 1 if q_odd else 2 * length


def invisible_row_allowed(i: int, family: str) -> bool:
    """A row of length 1 at index i contributes an empty line."""
    return (i + t_of(family) + 1) % 2 == 1


@dataclass(frozen=True)
class AssignedLine:
    length: int
    side: str
    owner: str  # PRIME | DPRIME
    row_index: int
    row_length: int
    role: str  # single-first | pair-first | pair-second | nested-single


@dataclass
class RowAssignment:
    lines: list[AssignedLine]

    def owner_sides(self, owner: str) -> list[str]:
        return [a.side for a in sorted(self.lines, key=lambda a: a.row_index) if a.owner == owner]

    def lemma_violations(self, literal: bool = False) -> list[tuple[str, int]]:
        """(owner, row index) where consecutive lines of one owner share a side.

        Only boundaries between two paired rows count: a boundary touching an
        unpaired row (the B/D first row, or a trailing single row) is exempt.
        ``literal`` instead exempts just each owner's first two rows.
        """
        bad = []
        for owner in (PRIME, DPRIME):
            own = sorted((a for a in self.lines if a.owner == owner), key=lambda a: a.row_index)
            for a, b in zip(own, own[1:]):
                if a.side != b.side or b.row_index != a.row_index + 1:
                    continue
                if literal:
                    if a.row_index >= 2:
                        bad.append((owner, a.row_index))
                elif "single" not in a.role and "single" not in b.role:
                    bad.append((owner, a.row_index))
        return bad


def _roles(rows: list[int], family: str) -> list[str]:
    # pairs start after the single first row for B/D, at row 1 for C;
    # a pair left without a partner at the end is a trailing single
    out = []
    for idx in range(1, len(rows) + 1):
        if family != "C" and idx == 1:
            out.append("single-first")
            continue
        k = idx - (0 if family == "C" else 1)
        if k % 2 == 0:
            out.append("pair-second")
        elif idx == len(rows):
            out.append("nested-single")
        else:
            out.append("pair-first")
    return out


def _prefix_ok(rows: list[int], family: str) -> bool:
    """Row parities so far fit the family's first-row and pairwise pattern."""
    if not rows:
        return True
    if family == "B" and rows[0] % 2 != 1:
        return False
    if family == "D" and rows[0] % 2 != 0:
        return False
    start = 0 if family == "C" else 1
    return all(rows[k] % 2 == rows[k + 1] % 2 for k in range(start, len(rows) - 1, 2))


def _owner_families(theory_family: str, rows: dict) -> dict | None:
    if theory_family == "B":
        return {PRIME: "B", DPRIME: "D"}
    if theory_family == "C":
        return {PRIME: "C", DPRIME: "C"}
    # D theory: both factors even-orthogonal or both odd-orthogonal
    kinds = {"D" if own[0] % 2 == 0 else "B" for own in rows.values() if own}
    if len(kinds) > 1:
        return None
    kind = kinds.pop() if kinds else "D"
    return {PRIME: kind, DPRIME: kind}


@dataclass
class Reconstruction:
    symbol: Symbol
    theory: TheoryLabel
    pair: OperatorPair
    assignment: RowAssignment
    greedy: bool  # first descent succeeded without backtracking
    backtracks: int
    equal_first_lines: bool  # the two longest lines tie
    diagnostics: dict = field(default_factory=dict)


def _signature_for(theory: TheoryLabel, rows1: list[int], rows2: list[int], conv: Conventions):
    size1, size2 = sum(rows1), sum(rows2)
    if size1 + size2 != theory.boxes:
        return None
    for sig in signatures(theory, conv):
        try:
            t1 = factor_theory(sig.first_kind, size1)
            t2 = factor_theory(sig.second_kind, size2)
        except ValueError:
            continue
        p1, p2 = transpose(rows1), transpose(rows2)
        if is_rigid(p1, t1, conv) and is_rigid(p2, t2, conv):
            return OperatorPair(theory, p1, p2, sig)
    return None


def _assignments(
    lines: list[tuple[int, str]], family: str
) -> Iterator[tuple[list[tuple[int, str, str, int, int]], int]]:
    """Depth-first over line -> owner assignments, preferred branches first.

    Yields (assigned lines, backtracks so far).  Each assigned line is
    (length, side, owner, row index, row length).
    """
    remaining = Counter(lines)
    rows = {PRIME: [], DPRIME: []}
    chosen: list[tuple[int, str, str, int, int]] = []
    backtracks = 0

    def options():
        if not remaining:
            return []
        top_len = max(length for length, _ in remaining)
        sides = [s for s in ("top", "bottom") if remaining[(top_len, s)] > 0]
        return [(top_len, s, o) for s in sides for o in (DPRIME, PRIME)]

    def rec():
        nonlocal backtracks
        if not remaining:
            yield list(chosen), backtracks
            return
        for length, side, owner in options():
            own = rows[owner]
            i = len(own) + 1
            r = row_from_line(side, length, i, family)
            if r <= 0 or (own and r >= own[-1]):
                continue
            own.append(r)
            fams = _owner_families(family, rows)
            ok = fams is not None and _prefix_ok(own, fams[owner])
            own.pop()
            if not ok:
                continue
            remaining[(length, side)] -= 1
            if remaining[(length, side)] == 0:
                del remaining[(length, side)]
            own.append(r)
            chosen.append((length, side, owner, i, r))
            yield from rec()
            chosen.pop()
            own.pop()
            remaining[(length, side)] += 1
            backtracks += 1

    yield from rec()


def _complete(rows: list[int], family: str) -> list[list[int]]:
    """Row lists with and without a trailing invisible row of length 1."""
    out = [rows]
    if invisible_row_allowed(len(rows) + 1, family) and (not rows or rows[-1] > 1):
        out.append(rows + [1])
    return out


def candidates(s: Symbol, theory: TheoryLabel, conv: Conventions = DEFAULT) -> Iterator[tuple[OperatorPair, list, int]]:
    """Every rigid pair of ``theory`` whose symbol is ``s``, preferred first."""
    s = canonicalize(s)
    lines = lines_of(s).lines()
    family = theory.family
    seen = set()
    for chosen, backtracks in _assignments(lines, family):
        rows1 = [r for _, _, o, _, r in chosen if o == PRIME]
        rows2 = [r for _, _, o, _, r in chosen if o == DPRIME]
        for full2 in _complete(rows2, family):
            for full1 in _complete(rows1, family):
                pair = _signature_for(theory, full1, full2, conv)
                if pair is None or (pair.lambda1, pair.lambda2) in seen:
                    continue
                try:
                    if symbol_of_pair(pair) != s:
                        continue
                except SymbolError:
                    continue
                seen.add((pair.lambda1, pair.lambda2))
                yield pair, chosen, backtracks


def _assignment_record(pair: OperatorPair, chosen, family: str) -> RowAssignment:
    roles = {}
    for owner, part in ((PRIME, pair.lambda1), (DPRIME, pair.lambda2)):
        rows = list(transpose(part))
        for idx, role in enumerate(_roles(rows, family), start=1):
            roles[(owner, idx)] = role
    out = [
        AssignedLine(length, side, owner, i, r, roles.get((owner, i), "pair-first"))
        for length, side, owner, i, r in chosen
    ]
    return RowAssignment(out)


def reconstruct_from_symbol(s: Symbol, theory: TheoryLabel, conv: Conventions = DEFAULT) -> Reconstruction:
    """Representative rigid pair of ``theory`` with symbol ``s``.

    Raises ReconstructionError when ``s`` is not a sum of right-aligned lines
    or no rigid pair of the theory has this symbol.
    """
    s = canonicalize(s)
    lines = lines_of(s).lines()
    for pair, chosen, backtracks in candidates(s, theory, conv):
        assignment = _assignment_record(pair, chosen, theory.family)
        tie = len(lines) >= 2 and lines[0][0] == lines[1][0]
        rec = Reconstruction(s, theory, pair, assignment, backtracks == 0, backtracks, tie)
        rec.diagnostics = structure_diagnostics(pair)
        return rec
    raise ReconstructionError(f"no rigid {theory} pair has symbol {s}")


def structure_diagnostics(pair: OperatorPair) -> dict:
    """Parity facts about how lambda' rows sit among lambda'' rows."""
    rows1 = list(transpose(pair.lambda1))
    rows2 = list(transpose(pair.lambda2))
    nested = []
    for r in rows1:
        above = [x for x in rows2 if x > r]
        below = [x for x in rows2 if x < r]
        nested.append(
            {
                "row": r,
                "above": above[-1] if above else None,
                "below": below[0] if below else None,
            }
        )
    return {
        "lambda1_rows": rows1,
        "lambda2_rows": rows2,
        "first_row_parity": {
            "lambda1": rows1[0] % 2 if rows1 else None,
            "lambda2": rows2[0] % 2 if rows2 else None,
        },
        "lambda1_placement": nested,
    }


# -- from a fingerprint ----------------------------------------------------------------


def mu_from_fingerprint(fp: Fingerprint) -> tuple[Partition, Partition, Partition]:
    """(lambda'_r, lambda''_r, mu_r): a -> a,a ; b -> 2b ; mu_r is their merge."""
    l1 = Partition(sorted([a for a in fp.alpha for _ in range(2)], reverse=True))
    l2 = Partition(sorted([2 * b for b in fp.beta], reverse=True))
    return l1, l2, merge(l1, l2)


def fingerprint_back(mu_r: Partition, fp: Fingerprint) -> Fingerprint:
    """Re-extract [alpha; beta] from mu_r, routing exactly the beta values."""
    signs = {2 * b: -1 for b in fp.beta}
    return extract(mu_r, signs)


def symbol_of_mu_r(fp: Fingerprint, theory: TheoryLabel | None = None) -> Symbol:
    """Symbol of mu_r read with the symplectic rule (mu_r is built of pairs)."""
    _, _, mu_r = mu_from_fingerprint(fp)
    if not mu_r:
        return EMPTY_SYMBOL
    return canonicalize(symbol_of(mu_r, "C"))


# -- fingerprint via blocks ------------------------------------------------------------


def fingerprint_of_representative(pair: OperatorPair, conv: Conventions = DEFAULT) -> tuple[Fingerprint, dict]:
    """[alpha; beta] from block-local mu and the per-block sign rules.

    Falls back to the generic computation when the blocks do not tile.
    """
    try:
        fp, info = block_fingerprint(pair, conv)
        info["fallback"] = False
        return fp, info
    except (BlockError, FingerprintError) as exc:
        return fingerprint(pair, conv), {"fallback": True, "reason": str(exc)}


# -- the mu_r counterexample ------------------------------------------------------------


@dataclass
class CounterexampleReport:
    flagged: list[OperatorPair]  # lambda != mu
    without_witness: list[OperatorPair]  # flagged and no class member has lambda == mu_r


def lambda_of(pair: OperatorPair, conv: Conventions = DEFAULT) -> Partition:
    return fingerprint_trace(pair, conv).merged.underlying


def counterexample_report(corpus: list[OperatorPair], conv: Conventions = DEFAULT) -> CounterexampleReport:
    """Find pairs whose combined lambda is moved by the Sp map, and whether any
    pair with the same fingerprint has lambda equal to mu_r."""
    traces = {p: fingerprint_trace(p, conv) for p in corpus}
    witnesses: dict[Fingerprint, bool] = {}
    for p, tr in traces.items():
        _, _, mu_r = mu_from_fingerprint(tr.fingerprint)
        if tr.merged.underlying == mu_r:
            witnesses[tr.fingerprint] = True
    flagged = [p for p, tr in traces.items() if tr.merged.underlying != tr.mu]
    lonely = [p for p in flagged if not witnesses.get(traces[p].fingerprint)]
    return CounterexampleReport(flagged, lonely)
