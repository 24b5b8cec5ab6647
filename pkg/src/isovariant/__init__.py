"""Link orbit categories, linking simplices and isovariant G-complexes for finite groups."""

from .colimits import (
    Diagram,
    PushoutData,
    attach_cell,
    coend,
    constant_diagram,
    double_mapping_cylinder,
    flip_disk,
    generating_sets,
    hocolim_pi0_property_test,
    mapping_telescope,
    pushout,
    representable_diagram,
)
from .errors import *  # noqa: F401,F403
from .g_complex import (
    GSemiSimplicialSet,
    GSimplicialMap,
    check_equivariant,
    check_isovariant,
    exact_stratum,
    g_isomorphic,
    isovariant_product,
    isovariant_product_discrete,
    isovariant_product_membership,
    stratum_pi0,
    we_obstruction,
)
from .groups import FiniteGroup, Subgroup, all_subgroups, make_group, named_group, normalizer
from .link_category import (
    LinkMorphism,
    LinkOrbitCategory,
    SubgroupChain,
    compose,
    export_category,
    hom,
    identity,
    verify_axioms,
)
from .linking_simplex import induced_map, point, realize, stabilizer, to_semisimplicial, verify_functor

__version__ = "0.1.0"
