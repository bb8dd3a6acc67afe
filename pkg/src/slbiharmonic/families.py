"""Closed-form proper biharmonic curves of SL(2, R)_tau as curves in R^4_2.

Three families, split by the sign of b^2 - 4a:

* equal   -- gamma(s) = A (cos(w s) + g14 s sin(w s), -sin(w s) + g14 s cos(w s),
             -g14 s cos(w s), g14 s sin(w s)),  w = sqrt(a)
* greater -- gamma(s) = A (sqrt(C33) e^{i alpha2 s}, sqrt(-C11) e^{i alpha1 s})
             written in complex coordinates z = x1 + i x2, w = x3 + i x4
* less    -- trigonometric-hyperbolic products with frequency b/2 and rate mu

A is an indefinite orthogonal matrix commuting (equal, less) or
anticommuting (greater) with J1.
"""

from dataclasses import dataclass, field

import numpy as np

from .biharmonic import (
    TOL_CASE,
    BiharmonicData,
    Branch,
    Case,
    admissible_range,
    biharmonic_data,
    equal_case_cos2theta,
)
from .curves import ExpSumCurve, curve_jet
from .errors import (
    AngleMismatch,
    BadConjugation,
    InadmissibleAngle,
    OffManifold,
    SignViolation,
    WrongCase,
)
from .indefinite import (
    DEFAULT_TOL,
    Commutation,
    as_matrix4,
    inner22,
    j1_apply,
    j1_commutation,
    o24_membership,
)
from .model import MANIFOLD_TOL, check_tau, components

Family = Case

MU_MIN = 1e-7

#: Conjugation used when none is given.
DEFAULT_CONJUGATION = {
    Case.EQUAL: np.eye(4),
    Case.GREATER: np.diag([1.0, -1.0, 1.0, -1.0]),
    Case.LESS: np.eye(4),
}

REQUIRED_RELATION = {
    Case.EQUAL: Commutation.COMMUTES,
    Case.GREATER: Commutation.ANTICOMMUTES,
    Case.LESS: Commutation.COMMUTES,
}


def check_conjugation(A, family, tol=DEFAULT_TOL):
    family = Case.parse(family)
    A = as_matrix4(A)
    if not o24_membership(A, tol):
        raise BadConjugation("matrix is not in O_2(4)")
    need = REQUIRED_RELATION[family]
    got = j1_commutation(A, tol)
    if got is not need:
        verb = "commute" if need is Commutation.COMMUTES else "anticommute"
        raise BadConjugation(f"matrix must {verb} with J1 for the {family.value} family")
    return A


class FamilyCurve(ExpSumCurve):
    """A closed-form family member carrying its biharmonic constants."""

    def __init__(self, terms, A, data, family, constants):
        super().__init__(terms, A)
        self.data = data
        self.family = family
        self.constants = constants

    @property
    def tau(self):
        return self.data.tau

    @property
    def a(self):
        return self.data.a

    @property
    def b(self):
        return self.data.b

    @property
    def cos_theta(self):
        return self.data.cos_theta

    @property
    def theta(self):
        return self.data.theta


def gen_equal(tau, A=None):
    """The b^2 = 4a family; the angle is forced to cos^2(theta) = equal_case_cos2theta."""
    tau = check_tau(tau)
    A = check_conjugation(DEFAULT_CONJUGATION[Case.EQUAL] if A is None else A, Case.EQUAL)
    data = biharmonic_data(equal_case_cos2theta(tau), Branch.PLUS, tau, tol_case=TOL_CASE)
    w = np.sqrt(data.a)
    g14 = tau / np.sqrt(4.0 + 5.0 * tau**2 + tau**4)
    lam = 1j * w
    terms = [
        ([1.0, 1j, 0.0, 0.0], 0, lam),
        (g14 * np.array([-1j, 1.0, -1.0, -1j]), 1, lam),
    ]
    return FamilyCurve(terms, A, data, Case.EQUAL, {"g14": g14, "sqrt_a": w})


def greater_constants(data):
    """alpha1, alpha2, C11, C33 for a b^2 > 4a helix."""
    a, b, Bt = data.a, data.b, data.Btilde
    root = np.sqrt(b * b * (b * b - 4.0 * a))
    alpha1 = np.sqrt((b * b - 2.0 * a + root) / 2.0)
    alpha2 = np.sqrt((b * b - 2.0 * a - root) / 2.0)
    gap = alpha1**2 - alpha2**2
    C11 = (Bt - alpha2**2) / gap
    C33 = (alpha1**2 - Bt) / gap
    return float(alpha1), float(alpha2), float(C11), float(C33)


def gen_greater(tau, cos2theta, branch=Branch.PLUS, A=None):
    """The b^2 > 4a family, for either sign branch of b."""
    tau = check_tau(tau)
    A = check_conjugation(
        DEFAULT_CONJUGATION[Case.GREATER] if A is None else A, Case.GREATER
    )
    data = biharmonic_data(cos2theta, branch, tau)
    disc = data.discriminant
    if disc < TOL_CASE:
        raise WrongCase(
            f"b^2 - 4a = {disc:.3e} is not positive; "
            "use the equal family at the degenerate angle or the less family"
        )
    alpha1, alpha2, C11, C33 = greater_constants(data)
    if not (C11 < 0.0 < C33):
        raise SignViolation(f"need C11 < 0 < C33, got C11={C11!r}, C33={C33!r}")
    r3, r1 = np.sqrt(C33), np.sqrt(-C11)
    terms = [
        ([r3, -1j * r3, 0.0, 0.0], 0, 1j * alpha2),
        ([0.0, 0.0, r1, -1j * r1], 0, 1j * alpha1),
    ]
    consts = {"alpha1": alpha1, "alpha2": alpha2, "C11": C11, "C33": C33}
    return FamilyCurve(terms, A, data, Case.GREATER, consts)


def gen_less(tau, cos2theta, A=None):
    """The b^2 < 4a family (Plus branch of b)."""
    tau = check_tau(tau)
    A = check_conjugation(DEFAULT_CONJUGATION[Case.LESS] if A is None else A, Case.LESS)
    lo, _ = admissible_range(tau)
    if not (lo <= cos2theta < 1.0):
        raise InadmissibleAngle(f"cos^2(theta) = {cos2theta!r} outside [{lo!r}, 1)")
    data = biharmonic_data(cos2theta, Branch.PLUS, tau)
    if data.discriminant > -TOL_CASE:
        raise WrongCase(
            f"b^2 - 4a = {data.discriminant:.3e} is not negative; "
            "need cos^2(theta) strictly above the equal-case angle"
        )
    mu = np.sqrt(-data.discriminant) / 2.0
    if mu < MU_MIN:
        raise WrongCase("mu vanishes; use the equal family")
    w14 = (data.b * tau + 2.0 * data.cos_theta) / (2.0 * tau * mu)
    r = np.sqrt(1.0 + w14**2)
    lp = 0.5j * data.b + mu
    lm = 0.5j * data.b - mu
    # cos(bs/2) cosh(mu s) etc. split over exp((i b/2 +/- mu) s)
    terms = [
        (np.array([1.0 - 1j * w14, -1j - w14, r, -1j * r]) / 2.0, 0, lp),
        (np.array([1.0 + 1j * w14, -1j + w14, -r, 1j * r]) / 2.0, 0, lm),
    ]
    return FamilyCurve(terms, A, data, Case.LESS, {"mu": float(mu), "w14": float(w14)})


@dataclass
class CurveSpec:
    """Family identifier, parameters and conjugation of a generated curve."""

    family: Case
    tau: float
    cos2theta: float = None
    branch: Branch = Branch.PLUS
    A: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.family = Case.parse(self.family)
        self.branch = Branch.parse(self.branch)
        self.tau = check_tau(self.tau)
        if self.family is not Case.GREATER and self.branch is not Branch.PLUS:
            raise WrongCase(f"the {self.family.value} family has only the plus branch")
        if self.family is Case.EQUAL:
            self.cos2theta = equal_case_cos2theta(self.tau)
        elif self.cos2theta is None:
            raise ValueError(f"cos2theta is required for the {self.family.value} family")
        if self.A is None:
            self.A = DEFAULT_CONJUGATION[self.family].copy()
        self.A = check_conjugation(self.A, self.family)


def make_curve(spec):
    if spec.family is Case.EQUAL:
        return gen_equal(spec.tau, spec.A)
    if spec.family is Case.GREATER:
        return gen_greater(spec.tau, spec.cos2theta, spec.branch, spec.A)
    return gen_less(spec.tau, spec.cos2theta, spec.A)


def ode_residual(curve, s, a=None, b=None):
    """Euclidean norm of gamma'''' + (b^2 - 2a) gamma'' + a^2 gamma."""
    a = curve.a if a is None else a
    b = curve.b if b is None else b
    jet = curve_jet(curve, s, 4)
    res = jet[..., 4, :] + (b * b - 2.0 * a) * jet[..., 2, :] + a * a * jet[..., 0, :]
    return np.linalg.norm(res, axis=-1)


def first_order_rhs(x, beta, cos_theta, b, tau):
    """Right-hand side of gamma' = cos(theta) E1 + sin(theta) (sin(beta) E2 + cos(beta) E3).

    Returns ``(x', beta')`` with ``beta' = b``.
    """
    x = np.asarray(x, dtype=float)
    st = np.sqrt(max(0.0, 1.0 - cos_theta**2))
    u = cos_theta / tau
    c = st * np.cos(beta)
    s = st * np.sin(beta)
    x1, x2, x3, x4 = x
    dx = np.array(
        [
            u * x2 + c * x3 + s * x4,
            -u * x1 + s * x3 - c * x4,
            c * x1 + s * x2 + u * x4,
            s * x1 - c * x2 - u * x3,
        ]
    )
    return dx, b


@dataclass
class Trajectory:
    s: np.ndarray
    x: np.ndarray
    beta: np.ndarray

    @property
    def drift(self):
        """max |<x, x> - 1| along the trajectory."""
        return float(np.max(np.abs(inner22(self.x, self.x) - 1.0)))


def integrate(x0, beta0, cos_theta, b, tau, s_end, n_steps):
    """Fixed-step RK4 on the five-dimensional state (x, beta)."""
    tau = check_tau(tau)
    x0 = np.asarray(x0, dtype=float)
    if abs(inner22(x0, x0) - 1.0) > MANIFOLD_TOL:
        raise OffManifold("initial point is off the quadric")
    n_steps = int(n_steps)
    if n_steps < 0:
        raise ValueError("n_steps must be non-negative")
    s = np.linspace(0.0, s_end, n_steps + 1)
    xs = np.empty((n_steps + 1, 4))
    betas = np.empty(n_steps + 1)
    xs[0], betas[0] = x0, beta0
    if n_steps == 0:
        return Trajectory(s, xs, betas)
    h = s_end / n_steps

    def f(y):
        dx, db = first_order_rhs(y[:4], y[4], cos_theta, b, tau)
        return np.append(dx, db)

    y = np.append(x0, beta0)
    for i in range(n_steps):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        xs[i + 1], betas[i + 1] = y[:4], y[4]
    return Trajectory(s, xs, betas)


def beta0_from_tangent(p, v, cos_theta, tau, tol=1e-8):
    """Phase beta of a unit tangent with E1-component cos(theta)."""
    tau = check_tau(tau)
    c = components(np.asarray(p, dtype=float), np.asarray(v, dtype=float), tau)
    if abs(c[0] - cos_theta) > tol:
        raise AngleMismatch(f"g(v, E1) = {c[0]!r}, expected {cos_theta!r}")
    return float(np.arctan2(c[1], c[2]))


def integrate_family(curve, s_end, n_steps):
    """RK4 trajectory started from the closed form's initial data at s = 0."""
    jet = curve.jet(0.0, 1)
    beta0 = beta0_from_tangent(jet[0], jet[1], curve.cos_theta, curve.tau)
    return integrate(jet[0], beta0, curve.cos_theta, curve.b, curve.tau, s_end, n_steps)


RELATION_NAMES = (
    "<g,g>=1",
    "<g',g'>=Btilde",
    "<g,g'>=0",
    "<g',g''>=0",
    "<g'',g''>=D",
    "<g,g''>=-Btilde",
    "<g',g'''>=-D",
    "<g'',g'''>=0",
    "<g,g'''>=0",
    "<g''',g'''>=E",
    "<J1g,g'>=-cos/tau",
    "<J1g,g''>=0",
    "<J1g'',g'>=I",
    "<J1g',g'''>=0",
    "<J1g',g''>+<J1g,g'''>=0",
    "<J1g'',g'''>+<J1g',g''''>=0",
)


def relation_values(jet, data):
    """Signed deviations of the sixteen inner-product identities.

    ``jet`` holds gamma..gamma'''' on its second-to-last axis.
    """
    g = [jet[..., k, :] for k in range(5)]
    Jg = [j1_apply(x) for x in g[:4]]
    ip = inner22
    c, tau = data.cos_theta, data.tau
    Bt, D, E, I = data.Btilde, data.Dconst, data.Erel, data.Iconst
    vals = [
        ip(g[0], g[0]) - 1.0,
        ip(g[1], g[1]) - Bt,
        ip(g[0], g[1]),
        ip(g[1], g[2]),
        ip(g[2], g[2]) - D,
        ip(g[0], g[2]) + Bt,
        ip(g[1], g[3]) + D,
        ip(g[2], g[3]),
        ip(g[0], g[3]),
        ip(g[3], g[3]) - E,
        ip(Jg[0], g[1]) + c / tau,
        ip(Jg[0], g[2]),
        ip(Jg[2], g[1]) - I,
        ip(Jg[1], g[3]),
        ip(Jg[1], g[2]) + ip(Jg[0], g[3]),
        ip(Jg[2], g[3]) + ip(Jg[1], g[4]),
    ]
    return dict(zip(RELATION_NAMES, vals))


def relation_checks(curve, s, data=None):
    """Max absolute deviation of each identity over the parameters ``s``."""
    data = curve.data if data is None else data
    jet = curve_jet(curve, s, 4)
    return {k: float(np.max(np.abs(v))) for k, v in relation_values(jet, data).items()}
