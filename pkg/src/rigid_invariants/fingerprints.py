"""Fingerprint invariant: the Sp map, tau signs, [alpha; beta] extraction,
and the block-local description of the Sp map used as a cross-check.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .partitions import DEFAULT, Conventions, OperatorPair, Partition, TheoryLabel, transpose

PRIME = "l1"  # lambda'
DPRIME = "l2"  # lambda''


class FingerprintError(ValueError):
    pass


def sign(lam: Sequence[int], i: int, conv: Conventions = DEFAULT) -> int:
    """p(i) for 1-based position i of ``lam``."""
    if conv.sign == "partial_sum":
        exponent = sum(lam[:i])
    else:
        exponent = i + conv.sign_shift
    return -1 if exponent % 2 else 1


def sp_map(lam: Iterable[int], conv: Conventions = DEFAULT) -> Partition:
    """mu_i = lambda_i + p(i) when lambda_i is odd and differs from lambda_{i-p(i)}."""
    lam = Partition(lam)
    out = []
    for i in range(1, len(lam) + 1):
        x = lam.part(i)
        p = sign(lam, i, conv)
        if x % 2 and x != lam.part(i - p):
            out.append(x + p)
        else:
            out.append(x)
    if any(out[i] < out[i + 1] for i in range(len(out) - 1)):
        raise FingerprintError(f"Sp map of {list(lam)} is not weakly decreasing: {out}")
    return Partition(out)


@dataclass(frozen=True)
class MergedOperator:
    """Rows of both factors interleaved in decreasing order, tagged by origin.

    With ``transposed`` the rows are transpose rows, so the partition fed to
    the Sp map is the index-wise sum of the factors' parts; otherwise the rows
    are the parts themselves and the Sp input is their merge.
    """

    theory: TheoryLabel
    rows: tuple[int, ...]
    origins: tuple[str, ...]
    transposed: bool = True

    @property
    def underlying(self) -> Partition:
        return transpose(self.rows) if self.transposed else Partition(self.rows)

    def rows_of(self, origin: str) -> list[int]:
        return [r for r, o in zip(self.rows, self.origins) if o == origin]


def merge_with_provenance(pair: OperatorPair, conv: Conventions = DEFAULT) -> MergedOperator:
    """Sorted merge of both factors' rows with each row tagged by its origin.

    Among equal rows, lambda''-origin rows come first by default.
    """
    transposed = conv.combine == "sum"
    get = transpose if transposed else Partition
    tagged = [(x, PRIME) for x in get(pair.lambda1)] + [(x, DPRIME) for x in get(pair.lambda2)]
    first = DPRIME if conv.second_first else PRIME
    tagged.sort(key=lambda t: (-t[0], t[1] != first))
    return MergedOperator(pair.theory, tuple(x for x, _ in tagged), tuple(o for _, o in tagged), transposed)


@dataclass
class TauAssignment:
    signs: dict[int, int]
    triggers: dict[int, frozenset[str]]

    def __getitem__(self, m: int) -> int:
        return self.signs[m]


def _condition_iii(merged: MergedOperator, pair: OperatorPair | None, i: int, conv: Conventions) -> bool:
    # i is 1-based
    symplectic = merged.theory.family == "C"
    if conv.condition_iii == "provenance" or pair is None:
        if merged.transposed or i > len(merged.rows) or merged.origins[i - 1] != PRIME:
            return False
        values = [merged.rows[i - 1]]
    else:
        values = [pair.lambda1.part(i)]
        if symplectic and conv.symplectic_iii_both:
            values.append(pair.lambda2.part(i))
    if symplectic:
        return any(x > 0 and x % 2 == 0 for x in values)
    return any(x % 2 == 1 for x in values)


def tau(
    merged: MergedOperator,
    mu: Sequence[int] | None = None,
    conv: Conventions = DEFAULT,
    use_ii: bool = True,
    pair: OperatorPair | None = None,
) -> TauAssignment:
    lam = merged.underlying
    if mu is None:
        mu = sp_map(lam, conv)
    mu = Partition(mu)
    triggers: dict[int, set[str]] = {m: set() for m in mu if m % 2 == 0}
    lam_sum = mu_sum = 0
    for i in range(1, max(len(mu), len(lam)) + 1):
        lam_sum += lam.part(i)
        mu_sum += mu.part(i)
        m = mu.part(i)
        if m == 0 or m % 2:
            continue
        if m != lam.part(i):
            triggers[m].add("i")
        if use_ii and mu_sum != lam_sum:
            triggers[m].add("ii")
        if _condition_iii(merged, pair, i, conv):
            triggers[m].add("iii")
    return TauAssignment(
        {m: -1 if t else 1 for m, t in triggers.items()},
        {m: frozenset(t) for m, t in triggers.items()},
    )


@dataclass(frozen=True)
class Fingerprint:
    alpha: Partition = field(default_factory=Partition)
    beta: Partition = field(default_factory=Partition)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Partition(self.alpha))
        object.__setattr__(self, "beta", Partition(self.beta))

    @property
    def size(self) -> int:
        return self.alpha.size + self.beta.size

    def __str__(self) -> str:
        return format_fingerprint(self)


def extract(mu: Iterable[int], signs: dict[int, int]) -> Fingerprint:
    """Route parts of mu to alpha (equal pairs) or beta (halved tau=-1 evens)."""
    beta = []
    rest: Counter = Counter()
    for m in mu:
        if m % 2 == 0 and signs.get(m) == -1:
            beta.append(m // 2)
        else:
            rest[m] += 1
    alpha = []
    for a, count in rest.items():
        if count % 2:
            raise FingerprintError(f"part {a} of mu is left unpaired ({count} copies)")
        alpha += [a] * (count // 2)
    return Fingerprint(sorted(alpha, reverse=True), sorted(beta, reverse=True))


@dataclass
class FingerprintTrace:
    merged: MergedOperator
    mu: Partition
    tau: TauAssignment
    fingerprint: Fingerprint


def fingerprint_trace(pair: OperatorPair, conv: Conventions = DEFAULT) -> FingerprintTrace:
    merged = merge_with_provenance(pair, conv)
    mu = sp_map(merged.underlying, conv)
    t = tau(merged, mu, conv, pair=pair)
    return FingerprintTrace(merged, mu, t, extract(mu, t.signs))


def fingerprint(pair: OperatorPair, conv: Conventions = DEFAULT) -> Fingerprint:
    return fingerprint_trace(pair, conv).fingerprint


@dataclass
class ConditionIIReport:
    checked: int
    differences: list[tuple[object, int, int, int]]  # (item, m, with, without)

    @property
    def ok(self) -> bool:
        return not self.differences


def condition_ii_report(corpus: Iterable[OperatorPair | MergedOperator], conv: Conventions = DEFAULT) -> ConditionIIReport:
    """Signs of tau with and without the partial-sum condition, per even value."""
    diffs = []
    n = 0
    for item in corpus:
        n += 1
        if isinstance(item, OperatorPair):
            merged, pair = merge_with_provenance(item, conv), item
        else:
            merged, pair = item, None
        mu = sp_map(merged.underlying, conv)
        with_ii = tau(merged, mu, conv, use_ii=True, pair=pair).signs
        without = tau(merged, mu, conv, use_ii=False, pair=pair).signs
        for m in sorted(with_ii):
            if with_ii[m] != without[m]:
                diffs.append((item, m, with_ii[m], without[m]))
    return ConditionIIReport(n, diffs)


def bare_merged(lam: Iterable[int], family: str = "B") -> MergedOperator:
    """A merged operator over ``lam`` with no lambda' rows, so (iii) never fires."""
    rows = transpose(lam)
    return MergedOperator(TheoryLabel(family, 0), tuple(rows), (DPRIME,) * len(rows))


# -- text syntax --------------------------------------------------------------


def format_fingerprint(fp: Fingerprint) -> str:
    return "alpha=[" + ",".join(map(str, fp.alpha)) + "];beta=[" + ",".join(map(str, fp.beta)) + "]"


def parse_fingerprint(text: str) -> Fingerprint:
    from .partitions import parse_partition

    fields = {}
    for chunk in text.split(";"):
        if "=" not in chunk:
            raise ValueError(f"bad fingerprint {text!r} (expected 'alpha=[...];beta=[...]')")
        k, v = chunk.split("=", 1)
        fields[k.strip()] = parse_partition(v)
    if set(fields) != {"alpha", "beta"}:
        raise ValueError(f"bad fingerprint {text!r} (expected 'alpha=[...];beta=[...]')")
    return Fingerprint(fields["alpha"], fields["beta"])
