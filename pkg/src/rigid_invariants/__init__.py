"""Symbol and fingerprint invariants of rigid B/C/D partitions and pairs."""

from .partitions import (
    DEFAULT,
    Conventions,
    OperatorPair,
    Partition,
    TheoryLabel,
    enumerate_pairs,
    enumerate_rigid,
    is_rigid,
    parse_pair,
    parse_partition,
    parse_theory,
    transpose,
)
from .symbols import Symbol, add_symbols, canonicalize, symbol_of, symbol_of_pair
from .fingerprints import Fingerprint, fingerprint, sp_map
from .representatives import mu_from_fingerprint, reconstruct_from_symbol
from .catalog import build_catalog, find_dual_candidates, group_classes, verify_implication

__all__ = [
    "DEFAULT",
    "Conventions",
    "OperatorPair",
    "Partition",
    "TheoryLabel",
    "enumerate_pairs",
    "enumerate_rigid",
    "is_rigid",
    "parse_pair",
    "parse_partition",
    "parse_theory",
    "transpose",
    "Symbol",
    "add_symbols",
    "canonicalize",
    "symbol_of",
    "symbol_of_pair",
    "Fingerprint",
    "fingerprint",
    "sp_map",
    "mu_from_fingerprint",
    "reconstruct_from_symbol",
    "build_catalog",
    "find_dual_candidates",
    "group_classes",
    "verify_implication",
]
