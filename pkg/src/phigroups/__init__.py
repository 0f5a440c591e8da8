"""Finite groups as Cayley tables, the totient-like count phi(G), subgroup
lattices, and exhaustive checks of the phi-divisibility classification."""

from .analysis import (
    SchmidtReport,
    VerdictReport,
    classification_predicate,
    condition1,
    condition2,
    is_nilpotent_lcs,
    is_nilpotent_sections,
    is_schmidt,
    lemma21_check,
    lemma22_case_probe,
    recognize_sylow_shape,
    schmidt_structure_report,
    search_nonnilpotent_with_subgroup_phi,
    sylow_subgroup,
    verify_theorem,
)
from .constructors import (
    ActionTable,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    extraspecial_E_p3,
    generalized_quaternion,
    modular_M_p3,
    multiplicative_order,
    schmidt_group,
    semidirect_product,
    symmetric,
)
from .core import (
    GroupTable,
    OrderSpectrum,
    PhiReport,
    SubgroupSet,
    center,
    derived_subgroup,
    element_order,
    exponent,
    generated_subgroup,
    order_spectrum,
    phi,
    validate_table,
)
from .lattice import Lattice, QuotientResult, all_sections, all_subgroups, frattini, is_normal, lattice_to_dot, maximal_subgroups, quotient

__version__ = "0.1.0"
