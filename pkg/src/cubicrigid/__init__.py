"""Exact-arithmetic certificates for transversal intersections of the
critical-orbit curves of the marked cubic family z^3 - 3x^2 z + y."""

from .exactpoly import BivarPoly, ModBivarPoly, NEG_INF
from .cubicdyn import (build_F, build_F_tail, build_G, build_G_tail,
                       coefficient_profile, iterate_critical,
                       mod3_closed_form, verify_factor_identity,
                       verify_odd_symmetry)
from .frobres import (FieldTower, FrobeniusOperator, apply_operator,
                      artin_schreier_resultant_closed,
                      artin_schreier_resultant_oracle,
                      brute_force_sum_product, op_divide_exact, op_multiply,
                      sum_product_closed)
from .sylvester import (SylvesterMatrix, build_sylvester,
                        determinant_eval_interp, determinant_fraction_free,
                        leading_data, resultant_x)
from .rigidity import (PCFSolution, TransversalityReport, certify_jacobian_mod3,
                       certify_resultant, integrality_certificate, jacobian,
                       solve_pcf, transversality_report)

__version__ = "0.1.0"

__all__ = [
    "BivarPoly", "ModBivarPoly", "NEG_INF",
    "build_F", "build_F_tail", "build_G", "build_G_tail",
    "coefficient_profile", "iterate_critical", "mod3_closed_form",
    "verify_factor_identity", "verify_odd_symmetry",
    "FieldTower", "FrobeniusOperator", "apply_operator",
    "artin_schreier_resultant_closed", "artin_schreier_resultant_oracle",
    "brute_force_sum_product", "op_divide_exact", "op_multiply",
    "sum_product_closed",
    "SylvesterMatrix", "build_sylvester", "determinant_eval_interp",
    "determinant_fraction_free", "leading_data", "resultant_x",
    "PCFSolution", "TransversalityReport", "certify_jacobian_mod3",
    "certify_resultant", "integrality_certificate", "jacobian",
    "solve_pcf", "transversality_report",
    "__version__",
]
