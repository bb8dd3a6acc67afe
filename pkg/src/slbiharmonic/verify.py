"""Residual suites over sampled curves, collected into a report."""

import json
from dataclasses import dataclass, field

import numpy as np

from .biharmonic import (
    Branch,
    ab_constants,
    classify,
    bitension_from_frame_jet,
    scalar_constants,
    system_residuals_from_frame_jets,
)
from .curves import SampledCurve, curve_jet
from .errors import GeodesicPoint, InadmissibleAngle
from .families import relation_values
from .connection import connection_table, gamma_apply
from .frenet import K1_MIN, frame_jet, frenet_from_frame_jet
from .indefinite import inner22
from .model import check_tau, gtau

#: Defaults for sampled (finite-difference) input.
FD_TOLERANCES = {
    "on_manifold": 1e-9,
    "unit_speed": 1e-6,
    "constant_angle": 1e-6,
    "geodesic_curvature": K1_MIN,
    "system_k1": 1e-5,
    "system_k2sq": 1e-5,
    "system_k2prime": 1e-5,
    "bitension": 1e-4,
    "relations": 1e-6,
    "ode": 1e-4,
}

#: Defaults for closed-form curves with exact derivatives.
ANALYTIC_TOLERANCES = {
    "on_manifold": 1e-9,
    "unit_speed": 1e-8,
    "constant_angle": 1e-8,
    "geodesic_curvature": K1_MIN,
    "system_k1": 1e-5,
    "system_k2sq": 1e-5,
    "system_k2prime": 1e-5,
    "bitension": 1e-6,
    "relations": 1e-8,
    "ode": 1e-9,
}


@dataclass
class CheckResult:
    max_residual: float
    tolerance: float
    passed: bool
    error: str = None

    def as_dict(self):
        d = {
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @property
    def overall(self):
        return all(c.passed for c in self.checks.values())

    def add(self, name, value, tol, error=None, lower_bound=False):
        value = None if value is None else float(value)
        if error is not None or value is None or not np.isfinite(value):
            ok = False
        elif lower_bound:
            ok = value >= tol
        else:
            ok = value <= tol
        self.checks[name] = CheckResult(value, float(tol), bool(ok), error)

    def as_dict(self):
        return {
            "overall": self.overall,
            "checks": {k: v.as_dict() for k, v in self.checks.items()},
            "metadata": self.metadata,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, allow_nan=False, default=_jsonable)


# finite-difference noise in b^2 - 4a stays well below this
FAMILY_TOL = 1e-6


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _infer_branch(cos2theta, b, tau):
    best, err = None, np.inf
    for br in Branch:
        try:
            _, bb = ab_constants(cos2theta, br, tau)
        except InadmissibleAngle:
            return None
        if abs(bb - b) < err:
            best, err = br, abs(bb - b)
    return best


def verify_jets(s, jets, tau, cos_theta=None, tolerances=None, points=None, metadata=None):
    """Run every residual suite on jets ``(n, 5, 4)`` at parameters ``s``.

    ``points`` (all samples, including those without a full stencil) feed
    the on-manifold check; by default the jet positions are used.  When
    ``cos_theta`` is None the Hopf angle is inferred as the mean of
    g(gamma', E1), and the constant-angle residual is its standard deviation.
    beta' = b is inferred from the E2/E3 components of the velocity, and a
    from (theta, b).
    """
    tau = check_tau(tau)
    tol = dict(FD_TOLERANCES)
    tol.update(tolerances or {})
    report = VerificationReport(metadata=dict(metadata or {}))
    s = np.asarray(s, dtype=float)
    jets = np.asarray(jets, dtype=float)
    pts = jets[:, 0, :] if points is None else np.asarray(points, dtype=float)

    report.add("on_manifold", np.max(np.abs(inner22(pts, pts) - 1.0)), tol["on_manifold"])

    tj = frame_jet(jets, tau)
    T, dT = tj[:, 0, :], tj[:, 1, :]
    speed = gtau(jets[:, 0, :], jets[:, 1, :], jets[:, 1, :], tau)
    report.add("unit_speed", np.max(np.abs(speed - 1.0)), tol["unit_speed"])

    T1 = T[:, 0]
    if cos_theta is None:
        cos_theta = float(np.mean(T1))
        report.add("constant_angle", np.std(T1), tol["constant_angle"])
    else:
        report.add("constant_angle", np.max(np.abs(T1 - cos_theta)), tol["constant_angle"])
    cos2theta = cos_theta**2

    # beta' from T = (cos, sin(th) sin(beta), sin(th) cos(beta))
    horiz = T[:, 1] ** 2 + T[:, 2] ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        bvals = (T[:, 2] * dT[:, 1] - T[:, 1] * dT[:, 2]) / horiz
    b = float(np.mean(bvals)) if np.all(np.isfinite(bvals)) else float("nan")
    c = abs(cos_theta)
    a = float(0.5 * (1.0 - tau**-2 - (1.0 + tau**-2) * (2.0 * cos2theta - 1.0)) - c * b / tau)

    geodesic = None
    try:
        k1 = frenet_from_frame_jet(tj, tau)[0].k1
        rk1, rk2sq, rk2p = system_residuals_from_frame_jets(s, tj, tau)
    except GeodesicPoint as exc:
        geodesic = f"GeodesicPoint: {exc}"
        k1 = np.linalg.norm(dT + gamma_apply(connection_table(tau), T, T), axis=-1)
        rk1 = rk2sq = rk2p = None
    report.add(
        "geodesic_curvature",
        np.min(k1),
        tol["geodesic_curvature"],
        error=geodesic,
        lower_bound=True,
    )
    for name, val in (
        ("system_k1", rk1),
        ("system_k2sq", rk2sq),
        ("system_k2prime", rk2p),
    ):
        report.add(name, val, tol[name], error=geodesic)

    report.add("bitension", np.max(bitension_from_frame_jet(tj, tau)), tol["bitension"])

    if np.isfinite(b):
        Bt, D, E, I = scalar_constants(cos2theta, a, b, tau)
        data = _RelationData(c, tau, Bt, D, E, I)
        rel = relation_values(jets, data)
        report.add("relations", max(float(np.max(np.abs(v))) for v in rel.values()), tol["relations"])
        ode = jets[:, 4, :] + (b * b - 2.0 * a) * jets[:, 2, :] + a * a * jets[:, 0, :]
        report.add("ode", np.max(np.linalg.norm(ode, axis=-1)), tol["ode"])
    else:
        report.add("relations", None, tol["relations"], error="beta' undefined")
        report.add("ode", None, tol["ode"], error="beta' undefined")

    branch = None
    if np.isfinite(b):
        branch = _infer_branch(cos2theta, b, tau)
    report.metadata.update(
        {
            "tau": tau,
            "cos2theta": cos2theta,
            "a": a if np.isfinite(a) else None,
            "b": b if np.isfinite(b) else None,
            "branch": branch.name.lower() if branch else None,
            "n_samples": int(len(pts)),
            "n_evaluated": int(len(s)),
            "s_range": [float(s[0]), float(s[-1])] if len(s) else None,
        }
    )
    if "family" not in report.metadata:
        fam = None
        if np.isfinite(b):
            fam = classify(a, b, FAMILY_TOL).value
        report.metadata["family"] = fam
    return report


@dataclass(frozen=True)
class _RelationData:
    cos_theta: float
    tau: float
    Btilde: float
    Dconst: float
    Erel: float
    Iconst: float


def verify_samples(s, points, tau, cos_theta=None, tolerances=None, metadata=None):
    """Finite-difference verification of a curve known only on a uniform grid."""
    sampled = SampledCurve(s, points)
    s_in, jets = sampled.jets(4)
    return verify_jets(
        s_in, jets, tau, cos_theta, tolerances, points=sampled.points, metadata=metadata
    )


def verify_curve(curve, s, tau, cos_theta=None, tolerances=None, metadata=None):
    """Verification with the curve's own derivatives (analytic tolerances)."""
    tol = dict(ANALYTIC_TOLERANCES)
    tol.update(tolerances or {})
    jets = curve_jet(curve, np.asarray(s, dtype=float), 4)
    return verify_jets(s, jets, tau, cos_theta, tol, metadata=metadata)
