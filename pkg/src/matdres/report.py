"""Serialisation of results to plain dicts of canonical strings, and the
invariant suite run by ``matdres verify``."""
from __future__ import annotations

from typing import Dict, List, Optional

from .bc import BCReport
from .dres import CurveReport, spectral_curve, spectral_matrix
from .errors import MatDresError, NotAKNSShape
from .modo import MODO, modo_commutator, op_eval_poly
from .render import render_bivar, render_modo, render_value
from .spectral import CurvePoint, KernelBasis, akns_potentials, on_curve, riccati_residual


def curve_dict(rep: CurveReport) -> Dict:
    return {
        "f": render_bivar(rep.f),
        "coefficients_in": "Q(i)" if rep.over_gaussian else "K (differential constants)",
        "constancy_verified": rep.constancy_verified,
        "commutator_is_zero": rep.commutator_is_zero,
        "ell": rep.ell,
        "order_B": rep.order_B,
        "degree_mu": rep.degree_mu,
        "degree_lambda": rep.degree_lambda,
        "mu_leading_coeff": render_value(rep.mu_leading_coeff),
        "leading_lambda_coeff": render_value(rep.leading_lambda_coeff),
        "expected_lambda_coeff": render_value(rep.expected_lambda_coeff),
        "degree_structure_ok": rep.degree_structure_ok,
        "warnings": list(rep.warnings),
    }


def bc_dict(rep: BCReport) -> Dict:
    out = {
        "f": render_bivar(rep.f),
        "f_is_bc": rep.f_is_bc,
        "f_red": render_bivar(rep.f_red) if rep.f_red is not None else None,
        "factors": [{"poly": render_bivar(h), "sigma": s, "r": r} for h, s, r in rep.factors],
        "F": render_bivar(rep.F) if rep.F is not None else None,
        "decomposition": list(rep.decomposition),
        "trivial_case": render_bivar(rep.trivial_case) if rep.trivial_case is not None else None,
        "factorization_source": rep.factorization_source,
    }
    if rep.residual is not None:
        out["f_of_L_B"] = render_modo(rep.residual)
    return out


def kernel_dict(kb: KernelBasis, pt: CurvePoint, f=None) -> Dict:
    out = {
        "point": {"lambda": render_value(pt.lambda0), "mu": render_value(pt.mu0)},
        "rank": kb.rank,
        "nullity": kb.nullity,
        "vectors": [[render_value(x) for x in v] for v in kb.vectors],
    }
    if f is not None:
        out["on_curve"] = on_curve(f, pt)
    return out


def matrix_strings(M) -> List[List[str]]:
    return [[render_bivar(x) for x in row] for row in M.rows]


def verify_pair(L: MODO, B: MODO) -> List[Dict]:
    """Run every applicable invariant check; each entry has name/passed/detail."""
    checks: List[Dict] = []

    def add(name, passed, detail=""):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    comm = modo_commutator(L, B)
    add("commutator_zero", not comm, "" if not comm else render_modo(comm))
    try:
        rep = spectral_curve(L, B)
    except MatDresError as e:
        add("spectral_curve", False, f"{e.code}: {e}")
        return checks
    add("coefficients_constant", rep.constancy_verified)
    add("degree_structure", rep.degree_structure_ok,
        f"deg_mu={rep.degree_mu}, deg_lambda={rep.degree_lambda}, "
        f"lambda coefficient {render_value(rep.leading_lambda_coeff)} vs {render_value(rep.expected_lambda_coeff)}")
    if rep.commutator_is_zero:
        res = op_eval_poly(rep.f, L, B)
        add("f_of_L_B_zero", not res, "" if not res else render_modo(res))
    try:
        akns_potentials(L)
    except NotAKNSShape:
        pass
    else:
        r = riccati_residual(L, B)
        add("riccati_identity", not r, "" if not r else "nonzero residual")
    return checks


def spectral_matrix_strings(L: MODO, B: MODO) -> List[List[str]]:
    return matrix_strings(spectral_matrix(L, B))
