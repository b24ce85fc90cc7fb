"""Catalogs of rigid pairs with their invariants, class grouping, the
symbol => fingerprint verifier, B/C dual matching, and JSON Lines files.
"""

from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from .blocks import BlockError, decompose_blocks, mu_via_blocks
from .fingerprints import (
    Fingerprint,
    FingerprintError,
    condition_ii_report,
    fingerprint,
    fingerprint_trace,
    sp_map,
)
from .partitions import (
    D_ODD_SIGNATURE,
    DEFAULT,
    FAMILIES,
    MERGE_READING,
    Conventions,
    OperatorPair,
    Partition,
    TheoryLabel,
    enumerate_pairs,
)
from .symbols import Symbol, symbol_of_pair

MAX_RANK = 10  # hard cap on catalog builds


class CatalogError(RuntimeError):
    pass


def class_id(kind: str, theory: TheoryLabel, payload: Sequence[Sequence[int]]) -> str:
    """Content hash of a canonical invariant; stable across runs and versions."""
    text = f"{kind}|{theory}|" + "|".join(",".join(map(str, row)) for row in payload)
    return hashlib.sha256(text.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class CatalogRecord:
    pair: OperatorPair
    symbol: Symbol
    fingerprint: Fingerprint
    symbol_class: str
    fingerprint_class: str
    flags: tuple[str, ...] = ()

    @property
    def theory(self) -> TheoryLabel:
        return self.pair.theory

    def to_json(self) -> dict:
        return {
            "theory": self.theory.family,
            "rank": self.theory.rank,
            "lambda1": list(self.pair.lambda1),
            "lambda2": list(self.pair.lambda2),
            "symbol_top": list(self.symbol.top),
            "symbol_bottom": list(self.symbol.bottom),
            "alpha": list(self.fingerprint.alpha),
            "beta": list(self.fingerprint.beta),
            "symbol_class": self.symbol_class,
            "fingerprint_class": self.fingerprint_class,
            "flags": list(self.flags),
        }

    @classmethod
    def from_json(cls, d: dict) -> "CatalogRecord":
        theory = TheoryLabel(d["theory"], d["rank"])
        return cls(
            OperatorPair(theory, Partition(d["lambda1"]), Partition(d["lambda2"])),
            Symbol(d["symbol_top"], d["symbol_bottom"]),
            Fingerprint(d["alpha"], d["beta"]),
            d["symbol_class"],
            d["fingerprint_class"],
            tuple(d["flags"]),
        )


def _flags(pair: OperatorPair, fp: Fingerprint, conv: Conventions) -> tuple[str, ...]:
    flags = []
    if pair.signature == D_ODD_SIGNATURE:
        flags.append("odd_odd_d")
    trace = fingerprint_trace(pair, conv)
    try:
        blocks = decompose_blocks(trace.merged)
        if mu_via_blocks(trace.merged, blocks) != trace.mu:
            flags.append("block_mismatch")
    except BlockError:
        flags.append("block_fallback")
    if condition_ii_report([pair], conv).differences:
        flags.append("condition_ii_delta")
    if conv != MERGE_READING:
        try:
            other = fingerprint(pair, MERGE_READING)
        except FingerprintError:
            other = None
        if other != fp:
            flags.append("merge_reading_differs")
    return tuple(sorted(flags))


def make_record(pair: OperatorPair, conv: Conventions = DEFAULT) -> CatalogRecord:
    try:
        s = symbol_of_pair(pair)
        fp = fingerprint(pair, conv)
    except ValueError as exc:
        raise CatalogError(f"invariants of {pair} failed: {exc}") from exc
    if fp.size != pair.theory.rank:
        raise CatalogError(f"{pair}: size(alpha)+size(beta) = {fp.size}, expected {pair.theory.rank}")
    return CatalogRecord(
        pair,
        s,
        fp,
        class_id("symbol", pair.theory, (s.top, s.bottom)),
        class_id("fingerprint", pair.theory, (fp.alpha, fp.beta)),
        _flags(pair, fp, conv),
    )


def build_catalog(theory: TheoryLabel, conv: Conventions = DEFAULT, max_rank: int = MAX_RANK) -> list[CatalogRecord]:
    """One record per rigid pair, in enumeration order."""
    if theory.rank > max_rank:
        raise CatalogError(f"rank {theory.rank} exceeds the configured cap {max_rank}")
    return [make_record(p, conv) for p in enumerate_pairs(theory, conv)]


def group_classes(records: Iterable[CatalogRecord], key) -> dict[str, list[CatalogRecord]]:
    """Group records by ``key``: "symbol", "fingerprint", or a callable."""
    if key == "symbol":
        get = lambda r: r.symbol_class  # noqa: E731
    elif key == "fingerprint":
        get = lambda r: r.fingerprint_class  # noqa: E731
    elif callable(key):
        get = key
    else:
        raise ValueError(f"unknown class key {key!r}")
    out: dict[str, list[CatalogRecord]] = defaultdict(list)
    for r in records:
        out[get(r)].append(r)
    return dict(sorted(out.items()))


# -- verification --------------------------------------------------------------------


@dataclass
class VerificationReport:
    corpus: str
    counts: dict[str, int] = field(default_factory=dict)
    symbol_classes: int = 0
    fingerprint_classes: int = 0
    # (theory, symbol class id, sorted distinct fingerprint class ids)
    violations: list[tuple[str, str, tuple[str, ...]]] = field(default_factory=list)
    size_failures: list[str] = field(default_factory=list)
    condition_ii_deltas: int = 0
    block_checked: int = 0
    block_tiled: int = 0
    block_mismatches: list[str] = field(default_factory=list)
    merge_reading_deltas: int = 0

    @property
    def block_rate(self) -> float:
        return self.block_tiled / self.block_checked if self.block_checked else 1.0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.size_failures and not self.block_mismatches

    @property
    def strict_ok(self) -> bool:
        return self.ok and self.condition_ii_deltas == 0

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            corpus=f"{self.corpus}+{other.corpus}" if self.corpus else other.corpus,
            counts={**self.counts, **other.counts},
            symbol_classes=self.symbol_classes + other.symbol_classes,
            fingerprint_classes=self.fingerprint_classes + other.fingerprint_classes,
            violations=self.violations + other.violations,
            size_failures=self.size_failures + other.size_failures,
            condition_ii_deltas=self.condition_ii_deltas + other.condition_ii_deltas,
            block_checked=self.block_checked + other.block_checked,
            block_tiled=self.block_tiled + other.block_tiled,
            block_mismatches=self.block_mismatches + other.block_mismatches,
            merge_reading_deltas=self.merge_reading_deltas + other.merge_reading_deltas,
        )

    def to_json(self) -> dict:
        return {
            "corpus": self.corpus,
            "counts": self.counts,
            "symbol_classes": self.symbol_classes,
            "fingerprint_classes": self.fingerprint_classes,
            "violations": [list(v) for v in self.violations],
            "size_failures": self.size_failures,
            "condition_ii_deltas": self.condition_ii_deltas,
            "block_checked": self.block_checked,
            "block_tiled": self.block_tiled,
            "block_rate": round(self.block_rate, 6),
            "block_mismatches": self.block_mismatches,
            "merge_reading_deltas": self.merge_reading_deltas,
            "ok": self.ok,
        }


def verify_implication(records: Sequence[CatalogRecord], corpus: str = "") -> VerificationReport:
    """Check that each symbol class carries a single fingerprint, plus audits."""
    report = VerificationReport(corpus)
    by_theory: dict[TheoryLabel, list[CatalogRecord]] = defaultdict(list)
    for r in records:
        by_theory[r.theory].append(r)
    for theory in sorted(by_theory):
        recs = by_theory[theory]
        report.counts[str(theory)] = len(recs)
        sym = group_classes(recs, "symbol")
        report.symbol_classes += len(sym)
        report.fingerprint_classes += len(group_classes(recs, "fingerprint"))
        for sid, members in sym.items():
            fps = sorted({m.fingerprint_class for m in members})
            if len(fps) > 1:
                report.violations.append((str(theory), sid, tuple(fps)))
    for r in records:
        if r.fingerprint.size != r.theory.rank:
            report.size_failures.append(str(r.pair))
        report.block_checked += 1
        if "block_fallback" not in r.flags:
            report.block_tiled += 1
        if "block_mismatch" in r.flags:
            report.block_mismatches.append(str(r.pair))
        report.condition_ii_deltas += "condition_ii_delta" in r.flags
        report.merge_reading_deltas += "merge_reading_differs" in r.flags
    return report


def corrupt(records: Sequence[CatalogRecord], index: int) -> list[CatalogRecord]:
    """Copy of ``records`` with one fingerprint class id replaced (self-test)."""
    out = list(records)
    r = out[index]
    out[index] = replace(r, fingerprint_class="corrupt-" + r.fingerprint_class)
    return out


def self_test(records: Sequence[CatalogRecord]) -> bool:
    """Corrupting one record of a multi-member symbol class yields exactly one violation."""
    classes = group_classes(records, "symbol")
    for members in classes.values():
        if len(members) > 1:
            idx = next(i for i, r in enumerate(records) if r is members[0])
            return len(verify_implication(corrupt(records, idx)).violations) == 1
    return True  # nothing to corrupt meaningfully


def verify_theories(
    families: Iterable[str], max_rank: int, conv: Conventions = DEFAULT, min_rank: int = 1
) -> tuple[VerificationReport, list[CatalogRecord]]:
    report = VerificationReport("")
    everything: list[CatalogRecord] = []
    for fam in families:
        for n in range(min_rank, max_rank + 1):
            theory = TheoryLabel(fam, n)
            recs = build_catalog(theory, conv)
            everything += recs
            report = report.merge(verify_implication(recs, str(theory)))
    return report, everything


# -- duality candidates -----------------------------------------------------------------


@dataclass
class DualReport:
    rank: int | None
    families: tuple[str, str]
    counts: tuple[int, int]
    matches: list[tuple[str, list[str], list[str]]]  # (key, left pairs, right pairs)
    unmatched_left: list[str]
    unmatched_right: list[str]

    def swapped(self) -> "DualReport":
        return DualReport(
            self.rank,
            self.families[::-1],
            self.counts[::-1],
            [(k, r, l) for k, l, r in self.matches],
            self.unmatched_right,
            self.unmatched_left,
        )

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "families": list(self.families),
            "counts": list(self.counts),
            "matches": [{"key": k, "left": l, "right": r} for k, l, r in self.matches],
            "unmatched_left": self.unmatched_left,
            "unmatched_right": self.unmatched_right,
        }


def _dual_key(r: CatalogRecord, by: str) -> str:
    if by == "symbol":
        return str(r.symbol)
    if by == "fingerprint":
        return str(r.fingerprint)
    raise ValueError(f"unknown match key {by!r}")


def find_dual_candidates(
    catalog_b: Sequence[CatalogRecord], catalog_c: Sequence[CatalogRecord], by: str = "symbol"
) -> DualReport:
    """Match records of two catalogs of one rank by equal invariant."""
    ranks = {r.theory.rank for r in [*catalog_b, *catalog_c]}
    if len(ranks) > 1:
        raise ValueError(f"catalogs span ranks {sorted(ranks)}; dual matching needs one rank")
    fams = (
        catalog_b[0].theory.family if catalog_b else "",
        catalog_c[0].theory.family if catalog_c else "",
    )
    left: dict[str, list[str]] = defaultdict(list)
    right: dict[str, list[str]] = defaultdict(list)
    for r in catalog_b:
        left[_dual_key(r, by)].append(str(r.pair))
    for r in catalog_c:
        right[_dual_key(r, by)].append(str(r.pair))
    matches = [(k, left[k], right[k]) for k in sorted(set(left) & set(right))]
    return DualReport(
        ranks.pop() if ranks else None,
        fams,
        (len(catalog_b), len(catalog_c)),
        matches,
        sorted(p for k in set(left) - set(right) for p in left[k]),
        sorted(p for k in set(right) - set(left) for p in right[k]),
    )


# -- persistence ------------------------------------------------------------------------


def dumps_jsonl(records: Iterable[CatalogRecord]) -> str:
    return "".join(json.dumps(r.to_json(), separators=(",", ":")) + "\n" for r in records)


def write_jsonl(records: Iterable[CatalogRecord], path: str | Path) -> None:
    Path(path).write_text(dumps_jsonl(records))


def read_jsonl(path: str | Path) -> list[CatalogRecord]:
    out = []
    for line in Path(path).read_text().splitlines():
        if line.strip():
            out.append(CatalogRecord.from_json(json.loads(line)))
    return out


def parse_families(text: str) -> list[str]:
    if text.lower() == "all":
        return list(FAMILIES)
    fams = [c.upper() for c in text if c.strip() and c != ","]
    if not fams or any(f not in FAMILIES for f in fams):
        raise ValueError(f"bad family list {text!r} (expected 'all' or letters from BCD)")
    return fams
