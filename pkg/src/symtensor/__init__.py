"""symtensor: invariant subspaces of constitutive tensor spaces.

Computes, for a tensor space defined by index symmetries and a closed
subgroup of SO(3) or O(2), the dimension of the invariant subspace via
the trace formula and the explicit symmetrized structure via group
averaging, rendered in slot (Voigt-style) matrix form with
independent-component labeling.
"""

from .core import (DEFAULT_TOL, FlatOperator, FlatTensor, SnappedValue,
                   TolerancePolicy, image_basis, kron_power, operator_trace,
                   rational_snap)
from .groups import (GroupElement, QuadratureRule, SymmetryGroup, closure_check,
                     haar_rule, integrate, make_continuous_group,
                     make_finite_group, resolve_group)
from .spaces import (SPACES, TensorSpace, membership_residual, space_dim,
                     sym_identity, symmetrize)
from .characters import (character_closed_form, character_direct, fix_dimension,
                         trace_power_reduce)
from .projector import (StructureEntry, StructureReport, averaged_projector,
                        extract_isotropic_moduli, isotropic_nine_matrix,
                        moduli_from_matrix, project, structure_report)
from .voigt import (anti, axl, extended_n_forward, induced_matrix,
                    mandel_forward, nine_slot_forward, voigt_forward,
                    voigt_inverse)

__version__ = "0.1.0"
