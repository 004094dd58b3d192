from .analysis import (
    FiberReport,
    Quartic,
    double_section_discriminant,
    euler_report,
    verify_conic_pencil_identity,
    verify_deg4_parametrization,
    verify_nu0_eigenvalue,
    verify_trivialization,
)
from .specs import (
    CoordX,
    CoordZ,
    DoubleSection,
    FibrationSpec,
    TwoSection,
    as_surface_elem,
    fibration_from_json,
    leading_coefficient,
)

__all__ = [
    "CoordX",
    "CoordZ",
    "DoubleSection",
    "FiberReport",
    "FibrationSpec",
    "Quartic",
    "TwoSection",
    "as_surface_elem",
    "double_section_discriminant",
    "euler_report",
    "fibration_from_json",
    "leading_coefficient",
    "verify_conic_pencil_identity",
    "verify_deg4_parametrization",
    "verify_nu0_eigenvalue",
    "verify_trivialization",
]
