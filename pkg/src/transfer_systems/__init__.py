"""Transfer systems on finite subgroup lattices: closure, enumeration,
minimal bases, and rainbow combinatorics."""

from .basis import (ComplexityResult, GeneratingSet, all_minimal_bases, basis_size,
                    complexity, level_profile, minimal_basis, width)
from .closure import (ArrowTables, TransferSystem, closure, complete_system,
                      empty_system, is_closed, precompute_tables)
from .enumeration import (BudgetExceeded, EnumerationResult, count, distribution,
                          enumerate_systems)
from .interchange import InterchangeError, dump_lattice, load_lattice, load_lattice_file
from .lattice import (Arrow, GroupLattice, LatticeElement, LatticeError,
                      arrow_orbit, build_chain_product, build_subspace_lattice,
                      element_by_coords, meet, meet_irreducible_classes,
                      nontrivial_intervals)
from .rainbows import (Arc, Block, BruteForceMax, NormalizationResult, Rainbow,
                       RainbowError, RainbowOpError, ap3_count, apply_arc_op,
                       apply_block_op, brute_force_max_rainbow,
                       canonical_max_rainbows, complete_rainbow,
                       conjectured_cpnqm_complexity, cpnq_complexity,
                       cpnq_witness_rainbow, double_rainbow_augmented, dr_number,
                       elementary_abelian_lower, excluded_rainbow,
                       gaussian_binomial, is_composable, is_partial_rainbow,
                       left_block, normalize_to_composable, outer_block, rainbow,
                       rainbow_size, right_block, sr_number,
                       square_free_complexity_lower, trinomial)

__version__ = "0.1.0"
