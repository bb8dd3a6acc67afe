"""Biharmonicity criteria for helices of constant Hopf angle.

A proper biharmonic curve has constant angle theta with the Hopf field and
beta' = b constant, with

    b = -(2 + tau^2) cos(theta) / tau +/- sqrt((4 + 5 tau^2) cos^2(theta) - 4 (1 + tau^2))
    a = (1 - tau^-2 - (1 + tau^-2) cos(2 theta)) / 2 - b cos(theta) / tau

and the curve solves gamma'''' + (b^2 - 2a) gamma'' + a^2 gamma = 0 in R^4_2.
The sign of b^2 - 4a picks one of three closed-form families.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .curves import DEFAULT_STEP, curve_jet
from .errors import InadmissibleAngle
from .frenet import (
    _check_unit_speed,
    bitension_from_frame_jet,
    frame_jet,
    frenet_from_frame_jet,
)
from .model import check_tau

TOL_CASE = 1e-9


class Branch(enum.Enum):
    PLUS = 1
    MINUS = -1

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls[str(value).upper()]


class Case(enum.Enum):
    EQUAL = "equal"
    GREATER = "greater"
    LESS = "less"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


def admissible_range(tau):
    """Half-open interval [lo, 1) of admissible cos^2(theta)."""
    tau = check_tau(tau)
    return 4.0 * (1.0 + tau**2) / (4.0 + 5.0 * tau**2), 1.0


def is_admissible(cos2theta, tau):
    lo, hi = admissible_range(tau)
    return bool(lo <= cos2theta < hi)


def ab_constants(cos2theta, branch, tau):
    """The constants (a, b) for cos^2(theta) and the chosen sign branch.

    cos(theta) is taken positive.
    """
    tau = check_tau(tau)
    branch = Branch.parse(branch)
    if not is_admissible(cos2theta, tau):
        raise InadmissibleAngle(
            f"cos^2(theta) = {cos2theta!r} outside [{admissible_range(tau)[0]!r}, 1)"
        )
    # roundoff can push the radicand just below zero at the lower end
    radicand = max(0.0, (4.0 + 5.0 * tau**2) * cos2theta - 4.0 * (1.0 + tau**2))
    c = np.sqrt(cos2theta)
    b = -(2.0 + tau**2) * c / tau + branch.value * np.sqrt(radicand)
    cos_2theta = 2.0 * cos2theta - 1.0
    a = 0.5 * (1.0 - tau**-2 - (1.0 + tau**-2) * cos_2theta) - c * b / tau
    return float(a), float(b)


def classify(a, b, tol_case=TOL_CASE):
    """Sign of b^2 - 4a, with |b^2 - 4a| <= tol_case counted as equal."""
    disc = b * b - 4.0 * a
    if abs(disc) <= tol_case:
        return Case.EQUAL
    return Case.GREATER if disc > 0 else Case.LESS


def equal_case_cos2theta(tau):
    """cos^2(theta) = (2 + tau^2)^2 / (4 + 5 tau^2 + tau^4), where b^2 = 4a."""
    tau = check_tau(tau)
    return (2.0 + tau**2) ** 2 / (4.0 + 5.0 * tau**2 + tau**4)


@dataclass(frozen=True)
class BiharmonicData:
    """Angle, branch and the derived constants of one biharmonic helix."""

    tau: float
    cos2theta: float
    branch: Branch
    a: float
    b: float
    case: Case
    Btilde: float
    Dconst: float
    Erel: float
    Iconst: float

    @property
    def cos_theta(self):
        return float(np.sqrt(self.cos2theta))

    @property
    def theta(self):
        return float(np.arccos(self.cos_theta))

    @property
    def discriminant(self):
        return self.b**2 - 4.0 * self.a


def scalar_constants(cos2theta, a, b, tau):
    """(Btilde, D, E, I) for the inner-product identities along the curve.

    <g', g'> = Btilde, <g'', g''> = D, <g''', g'''> = E and
    <J1 g'', g'> = I.
    """
    tau = check_tau(tau)
    c = np.sqrt(cos2theta)
    Bt = (1.0 + tau**-2) * cos2theta - 1.0
    D = a * a + b * b * Bt + 2.0 * a * b * c / tau
    E = a * (a - 2.0 * b * b) * Bt + b * b * D - 2.0 * a * a * b * c / tau
    I = -a * c / tau - b * Bt
    return float(Bt), float(D), float(E), float(I)


def biharmonic_data(cos2theta, branch, tau, tol_case=TOL_CASE):
    tau = check_tau(tau)
    branch = Branch.parse(branch)
    a, b = ab_constants(cos2theta, branch, tau)
    Bt, D, E, I = scalar_constants(cos2theta, a, b, tau)
    return BiharmonicData(
        tau=tau,
        cos2theta=float(cos2theta),
        branch=branch,
        a=a,
        b=b,
        case=classify(a, b, tol_case),
        Btilde=Bt,
        Dconst=D,
        Erel=E,
        Iconst=I,
    )


def system_residuals_from_frame_jets(s_grid, tj, tau):
    """Residuals of the proper-biharmonic system from frame jets on a grid.

    Returns ``(rk1, rk2sq, rk2prime)``: the spread of k1, the defect in
    k1^2 + k2^2 = tau^2 - 4 (1 + tau^2) B1^2, and the defect in
    k2' = -4 (1 + tau^2) N1 B1.  k2' is exact for four-row frame jets and a
    second-order difference on the grid otherwise.
    """
    tau = check_tau(tau)
    fd, extras = frenet_from_frame_jet(tj, tau)
    k1, k2 = fd.k1, fd.k2
    N1, B1 = fd.N[..., 0], fd.B[..., 0]
    rk1 = float(np.max(k1) - np.min(k1))
    rk2sq = float(np.max(np.abs(k1**2 + k2**2 - tau**2 + 4.0 * (1.0 + tau**2) * B1**2)))
    if "k2_prime" in extras:
        dk2 = extras["k2_prime"]
    elif len(s_grid) >= 3:
        dk2 = np.gradient(k2, s_grid, edge_order=2)
    else:
        raise ValueError("k2' needs a four-row frame jet or at least three grid points")
    rk2p = float(np.max(np.abs(dk2 + 4.0 * (1.0 + tau**2) * N1 * B1)))
    return rk1, rk2sq, rk2p


def system_residuals(curve, s_grid, tau, h=DEFAULT_STEP, analytic=True):
    """See :func:`system_residuals_from_frame_jets`; raises ``GeodesicPoint`` for k1 ~ 0."""
    tau = check_tau(tau)
    s_grid = np.asarray(s_grid, dtype=float)
    tj = frame_jet(curve_jet(curve, s_grid, 4, h=h, analytic=analytic), tau)
    _check_unit_speed(tj)
    return system_residuals_from_frame_jets(s_grid, tj, tau)


def bitension_residual(curve, s, tau, h=DEFAULT_STEP, analytic=True):
    """g_tau-norm of the bitension field (nabla_T)^3 T - R(T, nabla_T T) T."""
    tau = check_tau(tau)
    tj = frame_jet(curve_jet(curve, s, 4, h=h, analytic=analytic), tau)
    _check_unit_speed(tj)
    return bitension_from_frame_jet(tj, tau)
