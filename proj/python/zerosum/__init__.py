"""Zero-sum invariants of finite groups."""

from ._zerosum import (
    Group,
    Sequence,
    ZerosumError,
    big_pi_set,
    bass_check,
    condition_b_audit,
    constant_report,
    counterexample_scan,
    davenport_bounds,
    davenport_exact,
    find_k_product_one,
    gao_exact,
    has_k_product_one,
    is_product_one_free,
    k_solver,
    ord_mod,
    pi_set,
    pigeonhole_pairs,
    template_match,
    verify_dicyclic_presentation,
)

__all__ = [
    "Group",
    "Sequence",
    "ZerosumError",
    "big_pi_set",
    "bass_check",
    "condition_b_audit",
    "constant_report",
    "counterexample_scan",
    "davenport_bounds",
    "davenport_exact",
    "find_k_product_one",
    "gao_exact",
    "has_k_product_one",
    "is_product_one_free",
    "k_solver",
    "ord_mod",
    "pi_set",
    "pigeonhole_pairs",
    "template_match",
    "verify_dicyclic_presentation",
]
