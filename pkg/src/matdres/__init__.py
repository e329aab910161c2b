"""Exact matrix differential resultants, spectral curves and Burchnall-Chaundy
generators for matrix ordinary differential operators."""
from .bc import BCReport, bc_generator, detect_polynomial_in_L, is_bc, minimal_exponents
from .difffield import DIFFPOLY, RATFUNC, DiffField, FieldElement, fe_arith, fe_derive, fe_reduce
from .dres import CurveReport, companion, dres, m_matrix, p_seq, spectral_curve, spectral_matrix, spectral_poly
from .errors import MatDresError
from .gaussian import I, QI, GaussianRational
from .matrix import Matrix
from .modo import MODO, commutes, modo_commutator, modo_mul, op_eval_poly
from .parser import SessionConfig, parse_config, parse_field_element, parse_operator, parse_poly
from .poly import Poly
from .polyring import (LAM, MU, EvalRing, Factorization, PolyRing, bp_arith, bp_eval_commuting, bp_factor,
                       bp_gcd, bp_sqrt, bp_squarefree, lam, mu)
from .render import render_bivar, render_field_element, render_modo, render_value
from .spectral import (CurvePoint, KernelBasis, SpectralFraction, kernel_at_point, on_curve, phi_ratio,
                       riccati_expression, riccati_residual)

__version__ = "0.1.0"
