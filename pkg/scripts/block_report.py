"""Block taxonomy over the rigid corpus: how often each block kind and
operator label occurs, how many pairs tile, and how often the block moves
agree with the Sp map.

    python scripts/block_report.py --max-rank 7
"""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass

from rigid_invariants.blocks import BlockError, decompose_blocks, mu_via_blocks
from rigid_invariants.fingerprints import merge_with_provenance, sp_map
from rigid_invariants.partitions import TheoryLabel, enumerate_pairs


@dataclass
class BlockConfig:
    max_rank: int = 7
    show_failures: int = 3


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=BlockConfig.max_rank)
    ap.add_argument("--show-failures", type=int, default=BlockConfig.show_failures)
    args = ap.parse_args()
    cfg = BlockConfig(args.max_rank, args.show_failures)

    for fam in "BCD":
        kinds: Counter = Counter()
        total = tiled = agree = 0
        failures = []
        for n in range(1, cfg.max_rank + 1):
            for pair in enumerate_pairs(TheoryLabel(fam, n)):
                total += 1
                m = merge_with_provenance(pair)
                try:
                    blocks = decompose_blocks(m)
                except BlockError as exc:
                    failures.append((pair, exc))
                    continue
                tiled += 1
                agree += mu_via_blocks(m, blocks) == sp_map(m.underlying)
                kinds.update(f"{b.kind}:{b.operator}" for b in blocks)
        print(f"{fam}: {tiled}/{total} tiled, {agree}/{tiled} agree with the Sp map")
        for k, v in sorted(kinds.items()):
            print(f"    {k:12s} {v}")
        for pair, exc in failures[: cfg.show_failures]:
            print(f"    not tiled: {pair} ({exc})")


if __name__ == "__main__":
    main()
