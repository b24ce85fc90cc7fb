"""Block decomposition of the merged rows and the block-local Sp action.

Rows here are transpose rows of lambda = lambda' + lambda'' (both factors'
rows interleaved).  Rows are grouped into units: in B/D the first row stands
alone and the rest pair up as (2,3), (4,5), ...; in C they pair up from the
top.  A cut after row c is allowed when row c is strictly longer than row
c+1, the rows below hold an even number of boxes, and c ends a unit.  With
those cuts, each block transforms on its own:

* a lone first row loses its last box when the block's rows from it down
  hold an odd number of boxes;
* in a pair whose lower row starts an odd-sized remainder of the block, the
  upper row gains a box and the lower one loses a box (each only when strictly
  separated from its outside neighbour) -- the "odd pairwise rows" move;
* in C the roles flip: the upper row of such a pair loses and the row after
  it gains.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fingerprints import DPRIME, PRIME, Fingerprint, MergedOperator, extract, merge_with_provenance
from .partitions import DEFAULT, Conventions, OperatorPair, Partition, transpose


class BlockError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    kind: str  # "I" | "II" | "III"
    start: int  # 0-based, inclusive
    stop: int  # 0-based, exclusive
    operator: str

    @property
    def span(self) -> range:
        return range(self.start, self.stop)


def _unit_ends(m: int, family: str) -> set[int]:
    # 1-based row indices after which a unit closes
    if family == "C":
        return {c for c in range(2, m + 1, 2)} | {m}
    return {1} | {c for c in range(3, m + 1, 2)} | {m}


def cut_points(merged: MergedOperator) -> list[int]:
    rows = list(merged.rows) + [0]
    m = len(merged.rows)
    tails = [sum(rows[j:]) for j in range(m + 1)]
    ends = _unit_ends(m, merged.theory.family)
    return [c for c in range(1, m + 1) if c in ends and rows[c - 1] > rows[c] and tails[c] % 2 == 0]


def _parity_letter(rows: list[int]) -> str:
    return "o" if rows and rows[0] % 2 else "e"


def _single_origin_operator(rows: list[int]) -> str:
    return "mu_e" if all(r % 2 == 0 for r in rows) else "mu_o"


def _classify(merged: MergedOperator, start: int, stop: int, leading: bool) -> Block:
    family = merged.theory.family
    origins = merged.origins[start:stop]
    rows = list(merged.rows[start:stop])
    kinds = set(origins)
    if len(kinds) == 1:
        return Block("II", start, stop, _single_origin_operator(rows))
    if leading and family != "C":
        # lone first row plus the rows of both factors up to the first cut
        host = merged.origins[0]
        guest = PRIME if host == DPRIME else DPRIME
        host_pairs = [r for r, o in zip(rows[1:], origins[1:]) if o == host]
        letter = _parity_letter(host_pairs) if host_pairs else _parity_letter(rows[:1])
        guest_at = [k for k, o in enumerate(origins) if o == guest]
        digit = "1" if guest_at[0] <= 1 else "2"
        return Block("I", start, stop, f"mu_{letter}{digit}")
    # III: one origin brackets a contiguous run of the other
    outer = origins[0]
    inner_idx = [k for k, o in enumerate(origins) if o != outer]
    if inner_idx != list(range(inner_idx[0], inner_idx[-1] + 1)):
        raise BlockError(f"rows {start + 1}..{stop} interleave origins more than once")
    inner_rows = [rows[k] for k in inner_idx]
    first = "1" if inner_idx[0] == 0 else "2"
    last = "1" if inner_idx[-1] == len(rows) - 1 else "2"
    return Block("III", start, stop, f"mu_{_parity_letter(inner_rows)}{first}{last}")


def decompose_blocks(merged: MergedOperator) -> list[Block]:
    """Tile the merged rows into blocks; single-origin neighbours coalesce."""
    if not merged.transposed:
        raise BlockError("blocks are defined on merged transpose rows (combine='sum')")
    cuts = cut_points(merged)
    if not merged.rows:
        return []
    if not cuts or cuts[-1] != len(merged.rows):
        raise BlockError("last row does not close a block")
    blocks = []
    start = 0
    for c in cuts:
        blocks.append(_classify(merged, start, c, leading=start == 0))
        start = c
    # coalesce neighbouring II blocks of one origin
    out: list[Block] = []
    for b in blocks:
        prev = out[-1] if out else None
        if (
            prev is not None
            and prev.kind == b.kind == "II"
            and merged.origins[prev.start] == merged.origins[b.start]
        ):
            rows = list(merged.rows[prev.start : b.stop])
            out[-1] = Block("II", prev.start, b.stop, _single_origin_operator(rows))
        else:
            out.append(b)
    if merged.theory.family == "C" and any(b.kind == "I" for b in out):
        raise BlockError("I-type block in the C family")
    return out


def _block_changes(rows: list[int], start: int, family: str) -> list[int]:
    """Per-row change (-1, 0, +1) of one block, from the block's rows alone.

    ``start`` is the block's 0-based position, fixing the unit alignment.
    The row above the block (if any) and the row below are strictly
    separated from it by construction of the cuts.
    """
    n = len(rows)
    delta = [0] * n
    below = [sum(rows[k:]) for k in range(n)] + [0]

    def longer_than_next(k: int) -> bool:
        return k == n - 1 or rows[k] > rows[k + 1]

    def shorter_than_prev(k: int) -> bool:
        return k == 0 or rows[k - 1] > rows[k]

    k = 0
    while k < n:
        g = start + k + 1  # global 1-based index
        if family != "C" and g == 1:
            if below[0] % 2 and longer_than_next(0):
                delta[0] -= 1
            k += 1
            continue
        upper, lower = k, k + 1
        if family == "C":
            # pair (odd index, even index): upper loses on an odd remainder
            # from itself; the lower gains on an odd remainder after the pair
            if below[upper] % 2 and longer_than_next(upper):
                delta[upper] -= 1
            if lower <= n and below[min(lower + 1, n)] % 2 and longer_than_next(upper):
                if lower < n:
                    delta[lower] += 1
                else:
                    delta.append(1)
        else:
            # pair (even index, odd index): odd remainder from the lower row
            odd = below[min(lower, n)] % 2 == 1
            if odd and shorter_than_prev(upper):
                delta[upper] += 1
            if odd and lower < n and longer_than_next(lower):
                delta[lower] -= 1
        k += 2
    return delta


def mu_rows_via_blocks(merged: MergedOperator, blocks: list[Block]) -> list[int]:
    family = merged.theory.family
    out: list[int] = []
    for b in blocks:
        rows = list(merged.rows[b.start : b.stop])
        d = _block_changes(rows, b.start, family)
        new = [r + x for r, x in zip(rows, d)] + d[len(rows) :]
        out += new
    return sorted((r for r in out if r > 0), reverse=True)


def mu_via_blocks(merged: MergedOperator, blocks: list[Block] | None = None) -> Partition:
    if blocks is None:
        blocks = decompose_blocks(merged)
    return transpose(mu_rows_via_blocks(merged, blocks))


def changed_columns(merged: MergedOperator, blocks: list[Block]) -> set[int]:
    """1-based columns whose height the block moves change."""
    cols = set()
    family = merged.theory.family
    for b in blocks:
        rows = list(merged.rows[b.start : b.stop])
        d = _block_changes(rows, b.start, family)
        for k, x in enumerate(d):
            r = rows[k] if k < len(rows) else 0
            if x > 0:
                cols.add(r + 1)
            elif x < 0:
                cols.add(r)
    return cols


def block_fingerprint(pair: OperatorPair, conv: Conventions = DEFAULT) -> tuple[Fingerprint, dict]:
    """[alpha; beta] from the block picture alone.

    Condition (i) comes from the columns the block moves touch, condition
    (iii) from the lambda' (and for C also lambda'') rows; the partial-sum
    condition is not consulted (it adds nothing on gap-free lambda).
    """
    merged = merge_with_provenance(pair, conv)
    blocks = decompose_blocks(merged)
    mu = mu_via_blocks(merged, blocks)
    moved = changed_columns(merged, blocks)
    symplectic = merged.theory.family == "C"
    rows1 = merged.rows_of(PRIME)
    rows2 = merged.rows_of(DPRIME)

    def height(rows: list[int], col: int) -> int:
        return sum(1 for r in rows if r >= col)

    negative: set[int] = set()
    for col in range(1, len(mu) + 1):
        m = mu.part(col)
        if m % 2:
            continue
        if col in moved:
            negative.add(m)
            continue
        h1 = height(rows1, col)
        if symplectic:
            hs = [h1] + ([height(rows2, col)] if conv.symplectic_iii_both else [])
            if any(h > 0 and h % 2 == 0 for h in hs):
                negative.add(m)
        elif h1 % 2 == 1:
            negative.add(m)
    signs = {m: (-1 if m in negative else 1) for m in mu if m % 2 == 0}
    info = {"blocks": [(b.kind, b.start, b.stop, b.operator) for b in blocks]}
    return extract(mu, signs), info
