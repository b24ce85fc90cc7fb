"""Per-rank counts: rigid partitions, rigid pairs, symbol and fingerprint
classes, and B-vs-C symbol matches.  Output is a markdown table, meant to be
versioned as a regression fixture.

    python scripts/count_tables.py --max-rank 6 > counts.md
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from rigid_invariants.catalog import build_catalog, find_dual_candidates, group_classes
from rigid_invariants.partitions import TheoryLabel, enumerate_rigid


@dataclass
class CountConfig:
    max_rank: int = 6


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=CountConfig.max_rank)
    cfg = CountConfig(ap.parse_args().max_rank)

    print("| theory | rigid partitions | rigid pairs | symbol classes | fingerprint classes |")
    print("|---|---|---|---|---|")
    catalogs = {}
    for fam in "BCD":
        for n in range(1, cfg.max_rank + 1):
            t = TheoryLabel(fam, n)
            recs = catalogs[t] = build_catalog(t)
            print(
                f"| {t} | {len(enumerate_rigid(t))} | {len(recs)} | {len(group_classes(recs, 'symbol'))}"
                f" | {len(group_classes(recs, 'fingerprint'))} |"
            )
    print()
    print("| rank | B pairs | C pairs | matched symbols | unmatched B | unmatched C |")
    print("|---|---|---|---|---|---|")
    for n in range(1, cfg.max_rank + 1):
        rep = find_dual_candidates(catalogs[TheoryLabel("B", n)], catalogs[TheoryLabel("C", n)])
        print(f"| {n} | {rep.counts[0]} | {rep.counts[1]} | {len(rep.matches)} | {len(rep.unmatched_left)} | {len(rep.unmatched_right)} |")


if __name__ == "__main__":
    main()
