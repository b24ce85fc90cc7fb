"""Compare readings of the fingerprint construction over the rigid corpus.

For each reading: how many pairs fail size accounting or leave a part of mu
unpaired, how many symbol classes carry two fingerprints, and how many
symbol / fingerprint classes there are.

    python scripts/convention_audit.py --max-rank 6
"""

from __future__ import annotations

import argparse
from collections import defaultdict
from dataclasses import dataclass, replace

from rigid_invariants.fingerprints import FingerprintError, fingerprint
from rigid_invariants.partitions import DEFAULT, MERGE_READING, Conventions, TheoryLabel, enumerate_pairs
from rigid_invariants.symbols import symbol_of_pair


@dataclass
class AuditConfig:
    max_rank: int = 6
    families: str = "BCD"


@dataclass
class AuditRow:
    reading: str
    family: str
    pairs: int = 0
    size_failures: int = 0
    unpaired: int = 0
    violations: int = 0
    symbol_classes: int = 0
    fingerprint_classes: int = 0


READINGS = {
    "default (sum, partial-sum sign, direct iii)": DEFAULT,
    "sum, position sign": replace(DEFAULT, sign="position"),
    "sum, iii on lambda' only": replace(DEFAULT, symplectic_iii_both=False),
    "merge, position sign, provenance iii": MERGE_READING,
    "merge, partial-sum sign, direct iii": Conventions(combine="merge"),
}


def audit(conv: Conventions, family: str, cfg: AuditConfig, name: str) -> AuditRow:
    row = AuditRow(name, family)
    for n in range(1, cfg.max_rank + 1):
        classes = defaultdict(set)
        fps = set()
        for pair in enumerate_pairs(TheoryLabel(family, n), conv):
            row.pairs += 1
            try:
                fp = fingerprint(pair, conv)
            except FingerprintError:
                row.unpaired += 1
                continue
            row.size_failures += fp.size != n
            classes[symbol_of_pair(pair)].add(fp)
            fps.add(fp)
        row.violations += sum(1 for v in classes.values() if len(v) > 1)
        row.symbol_classes += len(classes)
        row.fingerprint_classes += len(fps)
    return row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=AuditConfig.max_rank)
    ap.add_argument("--families", default=AuditConfig.families)
    args = ap.parse_args()
    cfg = AuditConfig(args.max_rank, args.families.upper())

    print(f"{'reading':45s} fam  pairs size unpaired viol sym-cls fp-cls")
    for name, conv in READINGS.items():
        for fam in cfg.families:
            r = audit(conv, fam, cfg, name)
            print(
                f"{name:45s} {fam:3s} {r.pairs:6d} {r.size_failures:4d} {r.unpaired:8d} {r.violations:4d}"
                f" {r.symbol_classes:7d} {r.fingerprint_classes:6d}"
            )


if __name__ == "__main__":
    main()
