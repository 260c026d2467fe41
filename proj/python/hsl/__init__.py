"""Exact verification toolkit for the higher spin Laplace operator."""

from ._hsl import (
    DimensionError,
    DomainError,
    ParseError,
    SingularParameter,
    a_k,
    apply,
    basis,
    check_ids,
    hk_constant,
    kernel,
    product_gauss_table,
    sphere_area,
    verify,
)

__all__ = [
    "DimensionError",
    "DomainError",
    "ParseError",
    "SingularParameter",
    "a_k",
    "apply",
    "basis",
    "check_ids",
    "hk_constant",
    "kernel",
    "product_gauss_table",
    "sphere_area",
    "verify",
]
