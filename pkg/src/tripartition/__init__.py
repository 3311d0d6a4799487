"""Edge tripartitions of minimally 3-rigid graphs: exact construction,
verification, and exhaustive search."""
from .conjecture import (ConditionReport, ScanSummary, SearchResult, SearchStatus, check_condition_all_edges,
                         conjecture_scan, random_tight_graph, search_partition_exhaustive)
from .errors import (BadNeighbors, BadPrime, DegenerateSample, EdgeNotPresent, GenerationStalled,
                     InternalAssertionFailed, MissingCoordinates, NotAPartition, NotMinimallyRigid,
                     NotSpanningTree, ParseError, Singular, TripartitionError)
from .graph import (EdgePartition, Graph, banana_fixture_partitions, complete_graph, cone, contract_edge,
                    double_banana, henneberg_0_extend, henneberg_chain, parse_graph, path_graph,
                    serialize_graph)
from .linalg import ExactMatrix, det_exact, invert_exact, laplace_split, rank_exact, rank_modular
from .partition import (EliminationWorkspace, PartitionReport, lemma1_partition, lemma2_spanning_tree,
                        partition_for_edge, verify_partition)
from .rigidity import (NormalizedRealization, Realization, RigidityVerdict, is_minimally_rigid, is_rigid,
                       rigidity_matrix, sample_generic, sample_normalized)
from .sparsity import PebbleGame, SparsityResult, Status, check_sparsity

__version__ = "0.1.0"
