"""Partition arithmetic, B/C/D validity and rigidity, and exhaustive enumeration.

Partitions are stored in the multiplicity-rule convention: ``parts`` are the
numbers whose multiplicities the B/C/D rules constrain.  The structural
propositions about "rows" are evaluated on the transpose.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

FAMILIES = ("B", "C", "D")

ODD_ORTHOGONAL = "odd-orthogonal"
EVEN_ORTHOGONAL = "even-orthogonal"
SYMPLECTIC = "symplectic"

# factor kind -> family whose multiplicity rules it obeys
KIND_FAMILY = {ODD_ORTHOGONAL: "B", EVEN_ORTHOGONAL: "D", SYMPLECTIC: "C"}


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction; anything else that is not
    weakly decreasing raises ``ValueError``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(x) for x in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(x < 0 for x in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        if 0 in parts:
            raise ValueError(f"zero part inside {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part access; out-of-range reads as 0."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def multiplicities(self) -> Counter:
        return Counter(self)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return format_partition(self)


EMPTY = Partition()


@dataclass(frozen=True, order=True)
class TheoryLabel:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    @property
    def boxes(self) -> int:
        return 2 * self.rank + 1 if self.family == "B" else 2 * self.rank

    @property
    def t(self) -> int:
        """The row-contribution offset: -1, 0, +1 for B, C, D."""
        return {"B": -1, "C": 0, "D": 1}[self.family]

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class PairSignature:
    first_kind: str
    second_kind: str

    @property
    def families(self) -> tuple[str, str]:
        return KIND_FAMILY[self.first_kind], KIND_FAMILY[self.second_kind]


B_SIGNATURE = PairSignature(ODD_ORTHOGONAL, EVEN_ORTHOGONAL)
C_SIGNATURE = PairSignature(SYMPLECTIC, SYMPLECTIC)
D_EVEN_SIGNATURE = PairSignature(EVEN_ORTHOGONAL, EVEN_ORTHOGONAL)
D_ODD_SIGNATURE = PairSignature(ODD_ORTHOGONAL, ODD_ORTHOGONAL)


@dataclass(frozen=True)
class Conventions:
    """Switchable readings of points the construction leaves open.

    The defaults are the ones every module and test uses unless a comparison
    run asks otherwise.
    """

    # rigid "no gaps" also checks the last part against an implicit 0
    gap_to_zero: bool = True
    # D pairs with two odd-box-count factors
    include_odd_odd_d: bool = True
    # how lambda' and lambda'' combine before the Sp map:
    # "sum" adds parts index-wise (merges transpose rows), "merge" merges parts
    combine: str = "sum"
    # Sp sign p(i): "partial_sum" is (-1)**(lambda_1 + ... + lambda_i),
    # "position" is (-1)**(i + sign_shift)
    sign: str = "partial_sum"
    sign_shift: int = 0
    # condition (iii): "direct" reads lambda'_i by index,
    # "provenance" reads the origin tag of merged part i (needs combine="merge")
    condition_iii: str = "direct"
    # symplectic condition (iii) also fires on an even lambda''_i
    symplectic_iii_both: bool = True
    # equal rows in a merge: lambda''-origin first
    second_first: bool = True

    def __post_init__(self):
        if self.combine not in ("sum", "merge"):
            raise ValueError(f"combine must be 'sum' or 'merge', not {self.combine!r}")
        if self.sign not in ("partial_sum", "position"):
            raise ValueError(f"sign must be 'partial_sum' or 'position', not {self.sign!r}")
        if self.condition_iii not in ("direct", "provenance"):
            raise ValueError(f"unknown condition_iii reading {self.condition_iii!r}")
        if self.condition_iii == "provenance" and self.combine != "merge":
            raise ValueError("provenance reading of condition (iii) needs combine='merge'")


# the conventions a literal merge-of-parts reading would use; kept for audits
MERGE_READING = Conventions(combine="merge", sign="position", condition_iii="provenance", symplectic_iii_both=False)

DEFAULT = Conventions()


@dataclass(frozen=True)
class OperatorPair:
    theory: TheoryLabel
    lambda1: Partition
    lambda2: Partition
    signature: PairSignature = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "lambda1", Partition(self.lambda1))
        object.__setattr__(self, "lambda2", Partition(self.lambda2))
        if self.signature is None:
            object.__setattr__(self, "signature", infer_signature(self.theory, self.lambda1, self.lambda2))

    def factor_theories(self) -> tuple[TheoryLabel, TheoryLabel]:
        return (
            factor_theory(self.signature.first_kind, self.lambda1.size),
            factor_theory(self.signature.second_kind, self.lambda2.size),
        )

    def is_valid(self, conv: Conventions = DEFAULT) -> bool:
        if self.lambda1.size + self.lambda2.size != self.theory.boxes:
            return False
        try:
            t1, t2 = self.factor_theories()
        except ValueError:
            return False
        return is_rigid(self.lambda1, t1, conv) and is_rigid(self.lambda2, t2, conv)

    def __str__(self) -> str:
        return f"{self.theory}:{format_partition(self.lambda1)};{format_partition(self.lambda2)}"


def factor_theory(kind: str, boxes: int) -> TheoryLabel:
    family = KIND_FAMILY[kind]
    if (family == "B") != (boxes % 2 == 1):
        raise ValueError(f"{kind} factor cannot have {boxes} boxes")
    return TheoryLabel(family, boxes // 2)


def infer_signature(theory: TheoryLabel, lambda1: Partition, lambda2: Partition) -> PairSignature:
    if theory.family == "B":
        return B_SIGNATURE
    if theory.family == "C":
        return C_SIGNATURE
    return D_ODD_SIGNATURE if sum(lambda1) % 2 else D_EVEN_SIGNATURE


# -- arithmetic -------------------------------------------------------------


def transpose(p: Iterable[int]) -> Partition:
    p = tuple(p)
    if not p:
        return EMPTY
    return Partition(sum(1 for x in p if x >= j) for j in range(1, p[0] + 1))


def partwise_sum(p: Iterable[int], q: Iterable[int]) -> Partition:
    p, q = list(p), list(q)
    n = max(len(p), len(q))
    p += [0] * (n - len(p))
    q += [0] * (n - len(q))
    return Partition(a + b for a, b in zip(p, q))


def merge(p: Iterable[int], q: Iterable[int]) -> Partition:
    return Partition(sorted([*p, *q], reverse=True))


# -- predicates -------------------------------------------------------------


def is_valid(p: Iterable[int], theory: TheoryLabel) -> bool:
    p = Partition(p)
    if p.size != theory.boxes:
        return False
    forbidden = 1 if theory.family == "C" else 0  # parity whose multiplicity must be even
    return all(m % 2 == 0 for v, m in p.multiplicities().items() if v % 2 == forbidden)


def has_no_gaps(p: Iterable[int], gap_to_zero: bool = True) -> bool:
    p = tuple(p)
    tail = (0,) if gap_to_zero else ()
    q = p + tail
    return all(q[i] - q[i + 1] <= 1 for i in range(len(q) - 1))


def is_rigid(p: Iterable[int], theory: TheoryLabel, conv: Conventions = DEFAULT) -> bool:
    p = Partition(p)
    if not is_valid(p, theory):
        return False
    if not has_no_gaps(p, conv.gap_to_zero):
        return False
    twice = 0 if theory.family == "C" else 1  # parity that may not appear exactly twice
    return not any(m == 2 and v % 2 == twice for v, m in p.multiplicities().items())


@dataclass
class StructureReport:
    family: str
    rows: Partition
    clauses: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())


def _pairwise(rows: tuple[int, ...]) -> bool:
    """Consecutive pairs (rows[0], rows[1]), (rows[2], rows[3]), ... share parity.

    A trailing unpaired row is not constrained here.
    """
    return all(rows[k] % 2 == rows[k + 1] % 2 for k in range(0, len(rows) - 1, 2))


def check_structure(p: Iterable[int], theory: TheoryLabel) -> StructureReport:
    """Evaluate the family's row-structure clauses on ``transpose(p)``."""
    rows = transpose(p)
    m = len(rows)
    shortest_even = m == 0 or rows[-1] % 2 == 0
    fam = theory.family
    if fam == "C":
        clauses = {
            "pairwise_from_first": _pairwise(rows),
            "odd_count_shortest_even": m % 2 == 0 or shortest_even,
        }
    else:
        first = rows[0] if rows else None
        clauses = {
            "first_row_parity": first is None or first % 2 == (1 if fam == "B" else 0),
            "pairwise_after_first": _pairwise(rows[1:]),
            "even_count_shortest_even": m % 2 == 1 or shortest_even,
        }
        if fam == "B":
            clauses["odd_last_row_odd_count"] = m == 0 or rows[-1] % 2 == 0 or m % 2 == 1
    return StructureReport(fam, rows, clauses)


# -- enumeration ------------------------------------------------------------


def partitions_of(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of ``n`` in lexicographically decreasing order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for head in range(min(n, largest), 0, -1):
        for tail in partitions_of(n - head, head):
            yield (head,) + tail


def _gap_free(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    # parts descend by at most 1 and finish at 1
    if n == 0:
        yield ()
        return
    for head in range(min(n, largest), 0, -1):
        for tail in _gap_free(n - head, head):
            if (tail[0] if tail else 0) >= head - 1:
                yield (head,) + tail


@lru_cache(maxsize=None)
def _rigid_cached(theory: TheoryLabel, conv: Conventions) -> tuple[Partition, ...]:
    n = theory.boxes
    source = _gap_free(n, n) if conv.gap_to_zero else partitions_of(n)
    return tuple(Partition(p) for p in source if is_rigid(p, theory, conv))


def enumerate_rigid(theory: TheoryLabel, conv: Conventions = DEFAULT) -> list[Partition]:
    """Every rigid partition of the theory, lexicographically decreasing."""
    return list(_rigid_cached(theory, conv))


def signatures(theory: TheoryLabel, conv: Conventions = DEFAULT) -> list[PairSignature]:
    if theory.family == "B":
        return [B_SIGNATURE]
    if theory.family == "C":
        return [C_SIGNATURE]
    return [D_EVEN_SIGNATURE, D_ODD_SIGNATURE] if conv.include_odd_odd_d else [D_EVEN_SIGNATURE]


def _pair_sort_key(pair: OperatorPair):
    return (pair.lambda1.size, tuple(pair.lambda1), tuple(pair.lambda2))


def enumerate_pairs(theory: TheoryLabel, conv: Conventions = DEFAULT) -> list[OperatorPair]:
    """All ordered rigid pairs (lambda', lambda'') of the theory.

    Sorted descending by (size of lambda', parts of lambda', parts of lambda'').
    """
    out = []
    total = theory.boxes
    for sig in signatures(theory, conv):
        for size1 in range(total + 1):
            try:
                t1 = factor_theory(sig.first_kind, size1)
                t2 = factor_theory(sig.second_kind, total - size1)
            except ValueError:
                continue
            for p1 in enumerate_rigid(t1, conv):
                for p2 in enumerate_rigid(t2, conv):
                    out.append(OperatorPair(theory, p1, p2, sig))
    out.sort(key=_pair_sort_key, reverse=True)
    return out


# -- text syntax --------------------------------------------------------------

_THEORY_RE = re.compile(r"^\s*([BCDbcd])\s*(\d+)\s*$")


def parse_theory(text: str) -> TheoryLabel:
    m = _THEORY_RE.match(text)
    if not m:
        raise ValueError(f"bad theory label {text!r} (expected e.g. B6, C4, D5)")
    return TheoryLabel(m.group(1).upper(), int(m.group(2)))


def parse_partition(text: str) -> Partition:
    """Parse ``[2^2,1^9]`` style text; exponent shorthand is expanded."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"partition must be bracketed: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return EMPTY
    parts: list[int] = []
    for item in body.split(","):
        item = item.strip()
        if "^" in item:
            base, exp = item.split("^", 1)
            parts += [int(base)] * int(exp)
        else:
            parts.append(int(item))
    if any(x <= 0 for x in parts):
        raise ValueError(f"parts must be positive: {text!r}")
    return Partition(sorted(parts, reverse=True))


def format_partition(p: Iterable[int]) -> str:
    return "[" + ",".join(str(x) for x in p) + "]"


def parse_pair(text: str, theory: TheoryLabel) -> OperatorPair:
    if ";" not in text:
        raise ValueError(f"pair must be 'lambda1;lambda2': {text!r}")
    a, b = text.split(";", 1)
    return OperatorPair(theory, parse_partition(a), parse_partition(b))
