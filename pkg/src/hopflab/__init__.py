"""hopflab: computations on diagonal Hopf manifolds.

Relation lattices and algebraic hulls of a diagonal deck generator, tensor
invariants, monomial tensor fields and their Lee-flow invariance, the shell
potential and its Vaisman form, and plurigenera / Kodaira dimension.
"""
__version__ = "0.1.0"

from .eigendata import (ContractionSpec, DiagonalElement, Eigenvalue, Polar, lee_generator,
                        load_spec, make_spec, real_part_operator, spec_from_json, spec_to_json)
from .exceptions import (DimensionMismatch, EnumerationCapExceeded, FactorizationError,
                         HopfLabError, MixedModes, ModulusNotGreaterThanOne, NonConvergence,
                         NotCertified, NotDescending, NotQuasiRegular, NumericMismatch,
                         ParseError, PrecisionExhausted, StepTooLarge, TheoremViolation,
                         ValidationError, ZeroPoint)
from .field_tensors import (MonomialTensorField, deck_weight, descends, lie_eigenvalue,
                            verify_lee_invariance)
from .kodaira import (detect_quasi_regular, kodaira_dimension, leaf_space_summary,
                      pluricanonical_dimension)
from .relation_lattice import (RelationLattice, exact_relation_lattice,
                               heuristic_relation_lattice, is_relation, relation_lattice)
from .shell_potential import (ShellPotential, potential, shell_time, time_to_shell,
                              vaisman_sample)
from .tensor_invariants import (TensorMonomialIndex, check_A1_fixes_invariants,
                                enumerate_invariants, invariant_counts, weight)
from .zariski_closure import TorusClosure, closure, contains, verify_real_part
from .estimators import ShellPotentialTransformer, TorusClosureEstimator

__all__ = [name for name in dir() if not name.startswith("_")]
