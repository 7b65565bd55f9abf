"""Kernel w(xi, z), the CLF operator and sampled kernel bounds."""

from domains.kernel.bounds import KernelBoundReport, kernel_bound_scan
from domains.kernel.clf import (
    CLF_PREFACTOR,
    KERNEL_GUARD,
    REPRODUCING_FAMILY,
    clf_apply,
    clf_reproducing_check,
    patch_image,
    w_boundary,
    w_eval,
    w_interior,
)

__all__ = [
    "CLF_PREFACTOR",
    "KERNEL_GUARD",
    "REPRODUCING_FAMILY",
    "KernelBoundReport",
    "clf_apply",
    "clf_reproducing_check",
    "kernel_bound_scan",
    "patch_image",
    "w_boundary",
    "w_eval",
    "w_interior",
]
