"""Intersection graphs of subgroups of finite groups.

Build concrete finite groups, enumerate their subgroup lattices,
construct the intersection graph on the proper non-trivial subgroups,
compute its vertex connectivity, and audit the low-connectivity
classification predicates against brute-force computation.
"""

from .errors import (
    CapExceeded,
    ClosureCapExceeded,
    CosetLimitExceeded,
    IntgraphError,
    IsomorphismBudgetExceeded,
    LatticeCapExceeded,
    ValidationError,
)
from .groups import (
    FiniteGroup,
    are_isomorphic,
    cyclic,
    direct_product,
    element_order,
    from_permutation_generators,
    quotient_group,
    semidirect_product,
)
from .presentations import Presentation, todd_coxeter, todd_coxeter_with_generators
from .lattice import (
    Subgroup,
    SubgroupLattice,
    all_subgroups,
    center,
    centralizer,
    container_count,
    frattini,
    is_nilpotent,
    is_normal,
    is_solvable,
    is_supersolvable,
    minimal_subgroups,
    normalizer,
    order_length,
    p_core,
    satisfies_k_valency,
    sylow_subgroups,
)
from .graphs import (
    IntersectionGraph,
    build_graph,
    connected_components,
    cut_vertices,
    is_k_connected,
    is_upward_closed,
    kappa,
    kappa_all_pairs,
    max_independent_paths,
    min_separating_set_bruteforce,
)
from .classify import (
    ClassificationReport,
    abelian_cut_vertex_shape,
    audit,
    disconnected_case,
    not_three_connected_case,
    not_two_connected_case,
    p2q_three_connected_shape,
    predicted_connectivity_band,
)
from . import catalog
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "ClosureCapExceeded",
    "CosetLimitExceeded",
    "IntgraphError",
    "IsomorphismBudgetExceeded",
    "LatticeCapExceeded",
    "ValidationError",
    "FiniteGroup",
    "are_isomorphic",
    "cyclic",
    "direct_product",
    "element_order",
    "from_permutation_generators",
    "quotient_group",
    "semidirect_product",
    "Presentation",
    "todd_coxeter",
    "todd_coxeter_with_generators",
    "Subgroup",
    "SubgroupLattice",
    "all_subgroups",
    "center",
    "centralizer",
    "container_count",
    "frattini",
    "is_nilpotent",
    "is_normal",
    "is_solvable",
    "is_supersolvable",
    "minimal_subgroups",
    "normalizer",
    "order_length",
    "p_core",
    "satisfies_k_valency",
    "sylow_subgroups",
    "IntersectionGraph",
    "build_graph",
    "connected_components",
    "cut_vertices",
    "is_k_connected",
    "is_upward_closed",
    "kappa",
    "kappa_all_pairs",
    "max_independent_paths",
    "min_separating_set_bruteforce",
    "ClassificationReport",
    "abelian_cut_vertex_shape",
    "audit",
    "disconnected_case",
    "not_three_connected_case",
    "not_two_connected_case",
    "p2q_three_connected_shape",
    "predicted_connectivity_band",
    "catalog",
    "KERNEL_BACKEND",
    "__version__",
]
