"""Exact computations for the hyperbolic moduli of real cubic surfaces.

The package covers five strands: exact arithmetic in the Eisenstein and
Z[sqrt3] rings, reflective chambers of the five signature-(4,1) forms,
Coxeter diagram analytics (Euler characteristics, volumes, presentations),
anti-involution classification with line counts over F_3, monodromy groups,
and the glued polyhedron with its nonarithmeticity certificate.
"""

from .coxeter import (Bond, CoxeterDiagram, FiniteType, Presentation,
                      angle_label, classify_walls, diagram_automorphisms,
                      euler_characteristic, finite_type, finite_volume_test,
                      pi1_presentation, volume_from_chi, weyl_order)
from .gluing import (Certificate, GluedPolyhedron, RealQuadMatrix, assemble_q,
                     build_chambers, nonarithmeticity_certificate,
                     presentation_pgamma_r, side_pairing_tau,
                     solve_side_pairing, verify_poincare)
from .involution import (AntiInvolution, InvolutionClass,
                         classify_anti_involution,
                         count_real_lines_tritangents,
                         discriminant_components, fixed_lattice_gram,
                         standard_anti_involution)
from .finitegrp import (GroupHandle, generate_group, identify_group,
                        monodromy_group)
from .lattice import (HermitianLattice, ZForm, in_three_dual, inner_product,
                      is_root, psi, reflect)
from .ring import (Eisenstein, F3, OMEGA, RootThree, SQRT3, THETA,
                   galois_conjugate, reduce_mod_theta, theta_divide)
from .vinberg import (VinbergState, chamber_isometry, next_batch, run,
                      seed_batch, standard_chamber)

__version__ = "0.1.0"
