"""Gamma factors of cuspidal representations over finite and p-adic fields."""

from ._core import (
    base_change,
    bessel_value,
    char_value,
    gamma_finite,
    gamma_local,
    gauss_sum,
    is_regular,
    regular_orbits,
    run_suite,
    verify_chain,
    xi_product_check,
)

__all__ = [
    "base_change",
    "bessel_value",
    "char_value",
    "gamma_finite",
    "gamma_local",
    "gauss_sum",
    "is_regular",
    "regular_orbits",
    "run_suite",
    "verify_chain",
    "xi_product_check",
]
