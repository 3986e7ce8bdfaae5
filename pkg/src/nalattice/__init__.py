"""Entropy map of lattices over non-archimedean fields and its tropical tail polynomial."""

from .cones import (WPoint, ci_statement, cone_C_membership, fan_P_membership, project_to_W,
                    s2_preimage, supermodular_membership)
from .entropy import (EntropyVector, ell_distance, entropy_subset_hnf, entropy_subset_minors,
                      entropy_total, entropy_vector)
from .field import INF, FieldDescriptor, FieldError, Puiseux
from .lattice import (DiagonalLattice, Lattice, diagonal_envelopes, diagonal_lattice,
                      dual_lattice, hermite_normal_form, intersect_lattices, lattice_equal,
                      lattice_membership, project_lattice, random_lattice, random_unimodular,
                      smith_decomposition, sum_lattices)
from .setfunc import SetFunctionVector
from .tropical import (TropicalPolynomial, phi_eval, phi_oracle_intersection, pmf_box,
                       tail_prob)

__version__ = "0.1.0"
