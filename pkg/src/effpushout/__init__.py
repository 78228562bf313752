"""
effpushout - effective homology of homotopy pushouts of simplicial sets.

Example usage:
    from effpushout import circle, degree_map, cofiber_span, pushout_efhm
    from effpushout import homology_via_equivalence

    f, g = cofiber_span(degree_map(2))
    result = pushout_efhm(f, g)
    homology_via_equivalence(result.equivalence, 1)   # Z/2Z
"""

from effpushout.chains import Chain, ChainComplex, Generator, direct_sum, suspension
from effpushout.cones import cone, cone2, cone_efhm
from effpushout.homology import (
    AbelianGroup,
    homology_effective,
    homology_via_equivalence,
    smith_normal_form,
)
from effpushout.pipeline import PushoutEfhm, pushout_efhm, ses1, ses2
from effpushout.reductions import HomotopyEquivalence, Reduction, trivial_equivalence
from effpushout.simplicial import SimplicialMorphism, SimplicialSet, cartesian_product
from effpushout.spaces import (
    circle,
    cofiber_span,
    degree_map,
    delta,
    join,
    join_span,
    point,
    sphere,
    suspension_span,
    wedge,
    wedge_span,
)

__version__ = "0.1.0"
__all__ = [
    "AbelianGroup",
    "Chain",
    "ChainComplex",
    "Generator",
    "HomotopyEquivalence",
    "PushoutEfhm",
    "Reduction",
    "SimplicialMorphism",
    "SimplicialSet",
    "cartesian_product",
    "circle",
    "cofiber_span",
    "cone",
    "cone2",
    "cone_efhm",
    "degree_map",
    "delta",
    "direct_sum",
    "homology_effective",
    "homology_via_equivalence",
    "join",
    "join_span",
    "point",
    "pushout_efhm",
    "ses1",
    "ses2",
    "smith_normal_form",
    "sphere",
    "suspension",
    "suspension_span",
    "trivial_equivalence",
    "wedge",
    "wedge_span",
]
