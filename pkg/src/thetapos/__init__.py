"""Exact positivity checks for theta-tail quotients over three coprime parts."""

from .bounds import FamilyParams, RationalQuadratic, Thresholds, ceil_root, ceil_T, compute_thresholds
from .periodic import CoprimeTriple, CoprimeTuple45, decompose
from .series import IntegerSeries, ThetaForm
from .verifier import PositivityCertificate, certify_family, gamma_series

__version__ = "0.1.0"

__all__ = [
    "CoprimeTriple",
    "CoprimeTuple45",
    "FamilyParams",
    "IntegerSeries",
    "PositivityCertificate",
    "RationalQuadratic",
    "ThetaForm",
    "Thresholds",
    "ceil_T",
    "ceil_root",
    "certify_family",
    "compute_thresholds",
    "decompose",
    "gamma_series",
]
