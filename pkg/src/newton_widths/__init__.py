"""Newton-polyhedron invariants and approximation orders for polynomial symbols.

Given a multivariate polynomial with rational coefficients, this package
computes the exact convex geometry of its exponent set (hull, support
diagram, vertex set, faces, polar set), screens non-degeneracy and
compactness, solves the convex-dual linear programs behind the decay
exponent of the induced Kolmogorov widths, and validates the orders
empirically through lattice counting, growth fits, and Fourier-side
inequality suites.
"""

from .degeneracy import (DegeneracyConfig, DegeneracyReport, VanishingWitness,
                         degeneracy_report, even_vertex_check, face_vanishing_witness,
                         gamma_estimate)
from .errors import CapExceeded, HypothesisError, UnboundedRegion
from .fourier import (EquivalenceRecord, SeminormValue, TrigPoly, apply_symbol,
                      bernstein_check, equivalence_ratios, jackson_check, l2_norm,
                      random_trig, seminorm_w, truncate)
from .lattice import (CountSeries, EnumerationConfig, KEnumeration, ThresholdRecord,
                      card_k, count_omega, count_series, enumerate_k,
                      eps_dimension_bracket, threshold_t)
from .lp import (DualityReport, LinearProgram, LPSolution, OptimalFace, diagonal_reach,
                 duality_check, optimal_face, polar_program, polar_sum_max, solve_max,
                 solution_face_dimension)
from .newton import (CompactnessReport, Face, PointSet, Polyhedron, compactness_check,
                     convex_hull, faces, newton_diagram, point_in_hull, polar_hrep,
                     vertex_set)
from .symbol import (FacePolynomial, Monomial, ParseError, SymbolPolynomial, add,
                     evaluate, evaluate_float, exponent_set, parse_polynomial,
                     poly_from_json, poly_to_json, render, restrict_to_face,
                     tau_lower_bound)
from .widths import (AsymptoticOrder, ConsistencyReport, FitResult, WidthEstimate,
                     anisotropic_formula_check, consistency_check, fit_growth,
                     ratio_scan, theoretical_order, width_estimates)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
