"""Torsion of toric 1-motives over a discretely valued field.

Monodromy and the Raynaud decomposition, Kummer classes of the n-torsion
sequences, symmetric 2-cocycles of finite abelian groups, the explicit
algebra of the finite logarithmic model, and truncated Dieudonne data.
"""

from .cocycles import Cocycle2, ExtensionGroup, carry_cocycle, extension_group, is_coboundary, is_cocycle
from .dieudonne import artin_hasse_log, build_dieudonne, coproduct_identity_check, padic_log, second_kind_integral
from .extension_classes import (
    KatoPair,
    KummerClass,
    baer_sum_class,
    eta_class,
    extends_over_R,
    kato_pair,
    push_theorem_check,
    reconstruct,
    theta_class,
)
from .groups import FinAbGroup
from .local_field import KElement, PiMonomial, nth_power_class, valuation
from .log_model import ModelAlgebra, build_model_algebra, generic_fibre_check, integrality_report
from .motive import (
    MonodromyMatrix,
    Motive,
    compute_monodromy,
    plus_minus_motives,
    random_motive,
    raynaud_decompose,
    tate_motive,
)

__version__ = "0.1.0"

__all__ = [
    "Cocycle2",
    "ExtensionGroup",
    "FinAbGroup",
    "KElement",
    "KatoPair",
    "KummerClass",
    "ModelAlgebra",
    "MonodromyMatrix",
    "Motive",
    "PiMonomial",
    "artin_hasse_log",
    "baer_sum_class",
    "build_dieudonne",
    "build_model_algebra",
    "carry_cocycle",
    "compute_monodromy",
    "coproduct_identity_check",
    "eta_class",
    "extends_over_R",
    "extension_group",
    "generic_fibre_check",
    "integrality_report",
    "is_coboundary",
    "is_cocycle",
    "kato_pair",
    "nth_power_class",
    "padic_log",
    "plus_minus_motives",
    "push_theorem_check",
    "random_motive",
    "raynaud_decompose",
    "reconstruct",
    "second_kind_integral",
    "tate_motive",
    "theta_class",
    "valuation",
]
