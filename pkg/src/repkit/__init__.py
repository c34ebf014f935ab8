"""Finite subgroups of SU(2), their representation theory, McKay graphs,
module-category actions of Rep(SU(2)) and the label-level time functor."""
from .characters import (CharacterTable, Irrep, character_table, dimension_profile,
                         fusion_tensor, search_generation_groups, tensor_multiplicity)
from .groups import (ConjClass, FiniteGroup, GroupSpec, Kind, Quaternion, build_group,
                     catalog, conjugacy_classes, parse_group_spec, product_group)
from .mckay import McKayGraph, cartan_null_check, classify_affine_ade, mckay_graph, to_dot
from .module_action import (SpinLabel, action_matrix, induction_row, restrict_spin, spin,
                            su2_character_at, su2_fusion, verify_module_axiom)
from .time_functor import (Diagram, ImmirziParam, colax_check, find_injective_homs,
                           ft_euclidean, ft_lorentzian, is_ample, product_module_check)

__version__ = "0.1.0"
