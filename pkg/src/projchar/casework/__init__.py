"""Case analysis per dimension: equations, executable steps, scripts, printed forms."""
from .equations import Quantity, dim6_quadratic_setup, quantities, quantity
from .printed import PRINTED_FORMS, compare_all, compare_form
from .scripts import raw_c1_candidates, render_certificate, run_dimension
from .steps import EliminationCertificate, EliminationStep, compute_verdicts, execute

__all__ = [
    "Quantity",
    "quantities",
    "quantity",
    "dim6_quadratic_setup",
    "PRINTED_FORMS",
    "compare_all",
    "compare_form",
    "raw_c1_candidates",
    "render_certificate",
    "run_dimension",
    "EliminationCertificate",
    "EliminationStep",
    "compute_verdicts",
    "execute",
]
