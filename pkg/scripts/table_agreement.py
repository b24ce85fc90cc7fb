"""Row-contribution route vs the shifted-parts symbol, per family.

Two readings of the row-table tail sum are compared: the length of transpose
row i (default) and the cumulative size of rows i..m.

    python scripts/table_agreement.py --max-rank 8 --show 3
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from rigid_invariants.symbols import table_agreement_report


@dataclass
class AgreementConfig:
    max_rank: int = 8
    show: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=AgreementConfig.max_rank)
    ap.add_argument("--show", type=int, default=AgreementConfig.show, help="mismatches to print per line")
    args = ap.parse_args()
    cfg = AgreementConfig(args.max_rank, args.show)

    for cumulative in (False, True):
        label = "cumulative rows" if cumulative else "row length"
        for fam in "BCD":
            r = table_agreement_report(fam, cfg.max_rank, cumulative_rows=cumulative)
            print(f"{label:16s} {fam}: {r.agreed}/{r.checked} ({r.fraction:.1%})")
            for p, want, got in r.mismatches[: cfg.show]:
                print(f"    {list(p)}: want {want}, got {got}")


if __name__ == "__main__":
    main()
