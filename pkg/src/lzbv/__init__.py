"""Exact quasiclassical homotopy BV algebra on the beta-gamma light-mode complex.

Everything is computed over ``fractions.Fraction``; coefficients may be square
matrices, which realizes the tensor product with a matrix algebra.
"""
from .calibration import DEFAULT, SignCalibration
from .homotopy_checker import CheckReport, SamplerConfig, full_battery, search_calibration
from .light_complex import LightElement, apply_b0, apply_Q, apply_Q_eta, apply_R_eta
from .lz_ops import bracket0, bracket0_eta, m0, mu0, mu0_eta, n0, nu_eta
from .maurer_cartan import (Decomposition, GaugeParam, MCField, covariant_ym_residual, decompose,
                            eliminate_v, embed, gauge_transform, heisenberg_ym_residual,
                            mc_residual)
from .polynomials import Poly, partial
from .scalars import DimensionError, MatCoeff, commutator, mat_mul, sl2_basis
from .sections import Eta, GenSection, OneForm, VecField, dorfman, pairing

__version__ = "0.1.0"

__all__ = [
    "DEFAULT", "SignCalibration",
    "CheckReport", "SamplerConfig", "full_battery", "search_calibration",
    "LightElement", "apply_b0", "apply_Q", "apply_Q_eta", "apply_R_eta",
    "bracket0", "bracket0_eta", "m0", "mu0", "mu0_eta", "n0", "nu_eta",
    "Decomposition", "GaugeParam", "MCField", "covariant_ym_residual", "decompose",
    "eliminate_v", "embed", "gauge_transform", "heisenberg_ym_residual", "mc_residual",
    "Poly", "partial",
    "DimensionError", "MatCoeff", "commutator", "mat_mul", "sl2_basis",
    "Eta", "GenSection", "OneForm", "VecField", "dorfman", "pairing",
]
