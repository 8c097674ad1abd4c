"""Constant-query property testing on hierarchical scale-free multigraphs.

A desk-scale laboratory for isolated-clique contraction hierarchies:
immutable multigraphs with the general-model query surface, the
contraction cascade and its red/blue/yellow partition, a deterministic
local partitioning oracle, disk-frequency vectors with canonical codes,
a universal property tester, and generators plus brute-force oracles
that validate every bound at small scale.
"""

__version__ = "0.1.0"

from .multigraph import ContractionResult, Multigraph, load_edge_list, parse_edge_list, save_edge_list
from .isoclique import (IsolatedClique, contract_all, enumerate_isolated_cliques,
                        enumerate_isolated_cliques_bruteforce, is_c_isolated_clique)
from .hierarchy import (ContractionCascade, EdgeColoring, Partition, StructureTree,
                        build_structure_tree, cascade, color_edges, global_partition,
                        hyperfiniteness_bound, partition_from_tree)
from .oracle import QuerySession, oracle_query, query_bound
from .disks import (FreqVector, RootedMultigraph, canonical_code, canonical_form,
                    count_rooted_classes, disk, disk_distribution, l1_distance,
                    sampled_freq)
from .genverify import (HsfParams, degree_histogram, derive_delta, generate_clique_chain,
                        generate_hsf, k_min, verify_hsf, verify_sf, zeta_tail)
from .tester import (PROPERTIES, PropertySpec, ReferenceFreqSet, TesterConfig,
                     build_reference_set, calibrate_success_rate, calibrated_config,
                     dist, dist_to_property, universal_test)
