"""Half-space and maximal closed-set separation in finite closure
systems: abstract greedy separation with geodesic, hull-trace,
order-interval and bag-induced closure operators."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .core import (
    ElementSet,
    FunctionClosure,
    GroundSet,
    Inseparable,
    InstrumentedClosure,
    Separated,
    hss_decide_kakutani,
    is_closed,
    is_half_space,
    mcs_separate,
    verify_closure_laws,
)
from .euclid import AlphaClosure, PointSet, alpha_closure, generate_d2_instance, in_convex_hull
from .graphs import (
    GammaClosure,
    Graph,
    GSPartition,
    SigmaClosure,
    apsp,
    gamma_closure,
    interval,
    k23_minor_free,
    pasch_check,
    random_tree,
    random_tree_halfspace_labeling,
    sigma_closure,
)
from .lattices import (
    FiniteLattice,
    FormalContext,
    LambdaClosure,
    LatticeNo,
    LatticeSeparated,
    build_lattice,
    concept_lattice,
    inf,
    is_distributive,
    lambda_closure,
    lattice_kakutani_check,
    lattice_separate,
    partition_lattice,
    sup,
)
from .oracles import (
    brute_force_kakutani,
    brute_force_maximal_separations,
    check_partition_characterization,
    enumerate_closed_sets,
)

__version__ = "0.1.0"
