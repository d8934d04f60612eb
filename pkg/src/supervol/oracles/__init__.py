"""Independent checks of the closed-form volumes: Berezin integration on
charts, delta-function reduction, Gaussian integrals, U(1|1) and Hopf."""
from .cp import cp_volume_chart
from .gaussian import gaussian_closed_form, gaussian_super_integral, random_admissible
from .hopf import cavalieri_check, hopf_factorization_check
from .quadrature import QuadratureSpec
from .report import REPORT_SCHEMA, VerificationReport, compare
from .sphere import sphere_volume_chart, sphere_volume_delta
from .u11 import u11_maurer_cartan

__all__ = [
    "cp_volume_chart",
    "gaussian_closed_form",
    "gaussian_super_integral",
    "random_admissible",
    "cavalieri_check",
    "hopf_factorization_check",
    "QuadratureSpec",
    "REPORT_SCHEMA",
    "VerificationReport",
    "compare",
    "sphere_volume_chart",
    "sphere_volume_delta",
    "u11_maurer_cartan",
]
