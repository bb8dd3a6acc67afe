"""Proper biharmonic curves of SL(2, R) with the metrics g_tau, as curves in R^4_2."""

from .biharmonic import (
    BiharmonicData,
    Branch,
    Case,
    ab_constants,
    admissible_range,
    biharmonic_data,
    bitension_residual,
    classify,
    equal_case_cos2theta,
    is_admissible,
    system_residuals,
)
from .connection import (
    connection_table,
    covariant_derivative,
    curvature_component,
    curvature_tensor,
)
from .curves import Curve, ExpSumCurve, FunctionCurve, SampledCurve, curve_jet
from .errors import (
    AngleMismatch,
    BadConjugation,
    GeodesicPoint,
    GeometryError,
    InadmissibleAngle,
    InvalidTau,
    NotTangent,
    NotUnitSpeed,
    OffManifold,
    SignViolation,
    WrongCase,
)
from .families import (
    CurveSpec,
    FamilyCurve,
    gen_equal,
    gen_greater,
    gen_less,
    integrate,
    make_curve,
    ode_residual,
    relation_checks,
)
from .frenet import FrenetData, analytic_frenet, frenet_at, frenet_residuals
from .indefinite import Commutation, inner22, j1_commutation, o24_membership
from .model import (
    ModelParams,
    decompose,
    frame_E,
    frames_X,
    hopf_project,
    metric_g,
    on_manifold,
    recompose,
)
from .verify import VerificationReport, verify_curve, verify_samples

__version__ = "0.1.0"
