"""Exact list-multicoloring solvers and extended-core reduction."""

from .errors import (BudgetExceededError, InputError, InvariantViolationError,
                     PreconditionError, ResidualInfeasibleError)
from .graph import (Graph, build_graph, cycle_graph, degree, girth,
                    induced_subgraph, is_triangle_free, path_graph, star_graph,
                    theta_graph)
from .listcolor import (ABParams, ChoiceAssignment, ColorList, Verdict,
                        WeightMap, canonical_list_families, choice_violations,
                        is_ab_choosable, is_ab_colorable, is_ab_free_choosable,
                        solve_list_weight, verify_choice)
from .paths import (Amplitude, PathInstance, amplitude, even_ceil,
                    handle_length_threshold, is_good_list, is_tail_reduced,
                    is_waterfall, path_instance, prefix_amplitudes_ok,
                    solve_narrow_ends, solve_path, solve_tail_reduced,
                    waterfall_feasible, waterfall_similar)
from .core import (HandleDescriptor, ReductionStep, ReductionTrace,
                   compute_core, find_removable, lift_choosability,
                   order_independence_probe, parity_handle_witness,
                   replay_trace)
from .lattice import (LatticeRegion, build_region, classify_node,
                      cutting_handle, cutting_node, generate_region,
                      lattice_neighbors, mirror_region, read_region_file,
                      region_coord_map, short_cutting_handle_ok,
                      write_region_file)

__version__ = "0.1.0"
