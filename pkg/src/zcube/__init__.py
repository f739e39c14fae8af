"""Z-cube interconnection topologies.

Implicit-graph construction of the recursively-matched cube families,
the exact prefix-width/bound arithmetic behind them, constructive
Hamiltonian-path and robust-walk routing, and exact BFS ground truth at
desk scale.
"""

from .bitstring import BitString
from .errors import CapExceeded, ContractViolation, ParseError, Unsupported
from .kappa import (
    BoundsRow,
    bounds_row,
    jump_set,
    kappa,
    kappa_inverse,
    lower_bound,
    sigma,
    thm1_bound,
    zk_bound,
    zstar_bound,
)
from .topology import (
    CubeFamily,
    adjacent,
    export_edges,
    neighbor_at,
    neighbor_table,
    neighbors,
    phi,
    phi_k,
)
from .routing import (
    RobustnessCertificate,
    Walk,
    covering_walk,
    hamiltonian_path,
    qn_path,
    robust_route,
    route,
)
from .analysis import (
    DistanceSummary,
    HamConnectivityReport,
    VerificationReport,
    WalkReport,
    antipodal_distance,
    average_distance,
    bfs,
    diameter_exact,
    distance_summary,
    eccentricity_sample,
    ham_connected_bruteforce,
    verify_graph,
    verify_walk,
)

__version__ = "0.1.0"

__all__ = [
    "BitString",
    "BoundsRow",
    "CapExceeded",
    "ContractViolation",
    "CubeFamily",
    "DistanceSummary",
    "HamConnectivityReport",
    "ParseError",
    "RobustnessCertificate",
    "Unsupported",
    "VerificationReport",
    "Walk",
    "WalkReport",
    "adjacent",
    "antipodal_distance",
    "average_distance",
    "bfs",
    "bounds_row",
    "covering_walk",
    "diameter_exact",
    "distance_summary",
    "eccentricity_sample",
    "export_edges",
    "ham_connected_bruteforce",
    "hamiltonian_path",
    "jump_set",
    "kappa",
    "kappa_inverse",
    "lower_bound",
    "neighbor_at",
    "neighbor_table",
    "neighbors",
    "phi",
    "phi_k",
    "qn_path",
    "robust_route",
    "route",
    "sigma",
    "thm1_bound",
    "verify_graph",
    "verify_walk",
    "zk_bound",
    "zstar_bound",
]
