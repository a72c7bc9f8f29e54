"""Generalized cuspidal edges in Euclidean and Lorentz-Minkowski 3-space.

Construction from frame/profile data or closed-form components, curvature
and classification invariants at and near the singular set, asymptotic
verification, parallel fronts, plane cusps, and a gallery of worked
examples.  Hot kernels run under numba when available; set
CUSPEDGE_BACKEND=numpy to force the pure-numpy fallback.
"""
from .asympt import (Boundedness, DichotomyReport, OrderFourReport,
                     VerificationReport, check_prop_F, check_theorem_G_bounded,
                     discriminant_curve, fit_leading, richardson_limit,
                     verify_family)
from .classify import (Convexity, SingularPointReport, SingularType,
                       UmbilicKind, causal_type_at, convexity_of,
                       edge_invariants, order_at, sigma_c,
                       singular_point_report, singular_type, umbilic_scan)
from .cusp2d import (CuspClass, CuspStyle, PlaneCusp, build_cusp,
                     classify_cusp, cuspidal_curvature_limit)
from .edge import (ClosedFormSurface, Edge, EdgeError, EdgeFamily, EdgeSpec,
                   FundForms, JetSurface, LightlikePointError,
                   ReparametrizedSurface, build_edge, curvature_bundle,
                   delta_t_jet, fund_forms)
from .expr import S, T, const, cos, cosh, exp, sin, sinh, sqrt
from .frame import FrameData, FrameIVP, builtin_frame
from .fronts import (ParallelFront, lorentz_weingarten_residual,
                     parallel_singular_values, parallel_surface,
                     shape_operator, unit_normal_jets)
from .gallery import gallery_entry, list_gallery, make_example
from .jet import Jet2, MuSpec, lift
from .metric3 import (EUCLIDEAN, LORENTZIAN, CausalClass, Metric,
                      causal_class, cross, inner, metric_by_name, vec3)

__version__ = "0.1.0"
