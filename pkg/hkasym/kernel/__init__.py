"""Evaluation of the reduced heat kernel p(n, m; u, v)."""

from ..config import QuadratureConfig
from .contour import ContourTerms, contour_terms, p_contour, residue_coefficients
from .direct import p_direct
from .params import KernelParams
from .recurrence import ROUTES, derive_m_plus_2, evaluate, heat_kernel, integrate_key2

__all__ = [
    "ROUTES",
    "ContourTerms",
    "KernelParams",
    "QuadratureConfig",
    "contour_terms",
    "derive_m_plus_2",
    "evaluate",
    "heat_kernel",
    "integrate_key2",
    "p_contour",
    "p_direct",
    "residue_coefficients",
]
