"""Exact resolution of plane curve singularities and negativity invariants."""

from .field_arith import (QQ, BadPrimeError, ExtensionBoundExceeded, FieldError, gf, make_field,
                          parse_field)
from .invariants import (CheckResult, CurveReport, MultSeq, build_report, format_sequence,
                         genus_sum, h_constant, h_constant_actual, parse_sequence, sigma_k)
from .polynomial import MultiPoly, PolySyntaxError, format_poly, implicitize, parse_poly
from .resolution import (CrossPrimeDisagreement, NonReducedCurveError, ProjPoint, analyze_curve,
                         find_singular_points, resolve_point)
from .arrangements import (LineSet, arrangement_report, fermat_arrangement, finite_plane_lines)
from .cubic_group import INF, NodalCubic, verify_construction
from .sequences import (SearchConstraints, cremona_transform, enumerate_candidates,
                        homaloidal_reduce, known_lookup)

__version__ = "0.1.0"
