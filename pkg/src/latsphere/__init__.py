"""Codes over modular lattices: exact sphere sizes, bounds and channel runs.

The package has two independent computation routes that are tested against
each other: closed-form counting for the two enumerable lattice families
(subspace lattices of F_q^N, submodule lattices of Z_{p^s}^N), and explicit
brute-force lattices for small modules.  On top sit code-size bounds and a
random linear forwarding simulator.
"""

from .bounds import (
    BoundRequest,
    BoundResult,
    covering_bound,
    covering_sweep,
    packing_bound,
    packing_sweep,
    singleton_bound,
    singleton_sweep,
    tightest,
)
from .channel import (
    ChannelOutcome,
    DecodeResult,
    NetworkTopology,
    butterfly_topology,
    era_err,
    md_decode,
    simulate,
)
from .enumerable import (
    CountTable,
    LatticeProfile,
    alpha,
    alpha_chain,
    beta,
    beta_chain,
    count_of_height,
    count_of_type,
    count_table,
    gamma,
    gamma_dual,
    sphere_layer_by_height,
    sphere_layer_by_type,
    sphere_size,
)
from .oracle import (
    CodeSearchResult,
    ConcreteLattice,
    ConcreteModule,
    EnumerabilityReport,
    check_enumerability,
    check_layer_disjointness_theorem,
    enumerate_lattice,
    max_code_search,
    parse_module_spec,
    type_of_submodule,
)
from .partitions import Partition, complement, partitions_of
from .qcalc import gaussian_binomial, ppow
from .verify import VerificationReport, verify_module

__version__ = "0.1.0"

__all__ = [
    "BoundRequest",
    "BoundResult",
    "ChannelOutcome",
    "CodeSearchResult",
    "ConcreteLattice",
    "ConcreteModule",
    "CountTable",
    "DecodeResult",
    "EnumerabilityReport",
    "LatticeProfile",
    "NetworkTopology",
    "Partition",
    "VerificationReport",
    "alpha",
    "alpha_chain",
    "beta",
    "beta_chain",
    "butterfly_topology",
    "check_enumerability",
    "check_layer_disjointness_theorem",
    "complement",
    "count_of_height",
    "count_of_type",
    "count_table",
    "covering_bound",
    "covering_sweep",
    "era_err",
    "enumerate_lattice",
    "gamma",
    "gamma_dual",
    "gaussian_binomial",
    "max_code_search",
    "md_decode",
    "packing_bound",
    "packing_sweep",
    "parse_module_spec",
    "partitions_of",
    "ppow",
    "simulate",
    "singleton_bound",
    "singleton_sweep",
    "sphere_layer_by_height",
    "sphere_layer_by_type",
    "sphere_size",
    "tightest",
    "type_of_submodule",
    "verify_module",
]
