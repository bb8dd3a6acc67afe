"""SL(2, R) as the unit quadric of R^4_2 with the metric family g_tau.

Points are arrays of shape ``(4,)``.  The frames X_i are linear vector
fields, ``X_i(p) = M_i p``, which lets the frame E_i and its derivatives
along a curve be written as matrix products.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidTau, NotTangent, OffManifold
from .indefinite import J1, as_vec4, inner22, j1_apply

MANIFOLD_TOL = 1e-9
TANGENT_TOL = 1e-8

#: X2(p) = M2 p, X3(p) = M3 p;  X1(p) = J1 p.
M2 = np.array(
    [
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ]
)
M3 = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True)
class ModelParams:
    tau: float

    def __post_init__(self):
        check_tau(self.tau)


def check_tau(tau):
    tau = getattr(tau, "tau", tau)
    if not (np.isfinite(tau) and tau > 0):
        raise InvalidTau(f"tau must be a positive finite number, got {tau!r}")
    return float(tau)


def frame_matrices(tau):
    """Matrices L_i with E_i(p) = L_i p."""
    tau = check_tau(tau)
    return np.stack([-J1 / tau, M2, M3])


def on_manifold(p, tol=MANIFOLD_TOL):
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = as_vec4(p)
    return bool(abs(inner22(p, p) - 1.0) <= tol)


def _require_on_manifold(p, tol=MANIFOLD_TOL):
    p = as_vec4(p)
    q = inner22(p, p)
    if abs(q - 1.0) > tol:
        raise OffManifold(f"<p, p> = {q!r}, expected 1")
    return p


def _require_tangent(p, V, tol=TANGENT_TOL):
    V = as_vec4(V)
    if abs(inner22(p, V)) > tol:
        raise NotTangent(f"<p, V> = {inner22(p, V)!r}")
    return V


def frames_X(p):
    """The vertical field X1 and horizontal fields X2, X3 at ``p``."""
    p = _require_on_manifold(p)
    return j1_apply(p), M2 @ p, M3 @ p


def frame_E(p, tau):
    """The g_tau-orthonormal frame E1 = -X1/tau, E2 = X2, E3 = X3."""
    tau = check_tau(tau)
    p = _require_on_manifold(p)
    return -j1_apply(p) / tau, M2 @ p, M3 @ p


def gtau(p, X, Y, tau):
    """g_tau without validation; broadcasts over leading axes."""
    x1 = j1_apply(p)
    return -inner22(X, Y) + (1.0 + tau**2) * inner22(X, x1) * inner22(Y, x1)


def metric_g(p, X, Y, tau):
    """g_tau(X, Y) = -<X, Y> + (1 + tau^2) <X, X1> <Y, X1> at ``p``."""
    tau = check_tau(tau)
    p = _require_on_manifold(p)
    X = _require_tangent(p, X)
    Y = _require_tangent(p, Y)
    return float(gtau(p, X, Y, tau))


def components(p, V, tau):
    """Unchecked frame components (g(V, E1), g(V, E2), g(V, E3)).

    Broadcasts over leading axes of ``p`` and ``V``.
    """
    p = np.asarray(p, dtype=float)
    V = np.asarray(V, dtype=float)
    x1 = j1_apply(p)
    e = np.stack([-x1 / tau, p @ M2.T, p @ M3.T], axis=-2)
    return gtau(p[..., None, :], V[..., None, :], e, tau)


def decompose(p, V, tau):
    """Components of a tangent vector V along E1, E2, E3."""
    tau = check_tau(tau)
    p = _require_on_manifold(p)
    V = _require_tangent(p, V)
    return components(p, V, tau)


def recompose(p, c, tau):
    """Ambient vector sum_i c_i E_i(p)."""
    L = frame_matrices(tau)
    return np.einsum("i,ijk,k->j", np.asarray(c, dtype=float), L, np.asarray(p, dtype=float))


def hopf_project(p, tau):
    """Hopf map to the hyperboloid x^2 + y^2 - z^2 = -1/tau in R^3_1.

    With z = x1 + i x2 and w = x3 + i x4 the image is
    (2 z conj(w), |z|^2 + |w|^2) / sqrt(tau).
    """
    tau = check_tau(tau)
    p = as_vec4(p)
    q = inner22(p, p)
    if np.any(np.abs(q - 1.0) > MANIFOLD_TOL):
        raise OffManifold("point(s) off the quadric")
    x1, x2, x3, x4 = (p[..., i] for i in range(4))
    re = 2.0 * (x1 * x3 + x2 * x4)
    im = 2.0 * (x2 * x3 - x1 * x4)
    height = x1**2 + x2**2 + x3**2 + x4**2
    return np.stack([re, im, height], axis=-1) / np.sqrt(tau)


def minkowski_norm3(y):
    y = np.asarray(y, dtype=float)
    return y[..., 0] ** 2 + y[..., 1] ** 2 - y[..., 2] ** 2


def random_points(rng, n):
    """Points on the quadric by rescaling raw Gaussian draws.

    Draws with r1^2 + r2^2 <= r3^2 + r4^2 are rejected and resampled.
    """
    out = []
    while len(out) < n:
        r = rng.normal(size=4)
        q = inner22(r, r)
        if q > 1e-3:
            out.append(r / np.sqrt(q))
    return np.array(out)


def random_tangent(rng, p, tau):
    """A random tangent vector at ``p`` as a combination of the E frame."""
    return recompose(p, rng.normal(size=3), tau)
