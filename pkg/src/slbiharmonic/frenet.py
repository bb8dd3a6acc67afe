"""Frenet apparatus of unit-speed curves in SL(2, R)_tau.

Everything is computed on frame components.  The central object is the
*frame jet* ``[T, T', T'', ...]`` of the velocity's components along
E1, E2, E3, obtained from the ambient jet by differentiating the identity
``gamma' = sum_i T_i L_i gamma`` (``E_i(p) = L_i p``).
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .connection import connection_table, curvature_apply, gamma_apply
from .curves import DEFAULT_STEP, curve_jet
from .errors import GeodesicPoint, NotUnitSpeed
from .model import check_tau, components, frame_matrices

K1_MIN = 1e-7
UNIT_SPEED_TOL = 1e-6


@dataclass
class FrenetData:
    """Frenet frame (frame components) and curvatures at one or more points."""

    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    k1: np.ndarray
    k2: np.ndarray


def frame_jet(jet, tau):
    """Frame components of gamma' and its derivatives.

    ``jet`` has shape ``(..., n + 1, 4)``; the result has shape ``(..., n, 3)``
    holding ``T, T', ..., T^(n-1)``.
    """
    tau = check_tau(tau)
    jet = np.asarray(jet, dtype=float)
    L = frame_matrices(tau)
    p = jet[..., 0, :]
    n = jet.shape[-2] - 1
    # LG[k][..., i, :] = L_i gamma^(k)
    LG = [np.einsum("ijk,...k->...ij", L, jet[..., k, :]) for k in range(n)]
    out = []
    for m in range(n):
        rhs = jet[..., m + 1, :].copy()
        for k in range(m):
            rhs -= comb(m, k) * np.einsum("...i,...ij->...j", out[k], LG[m - k])
        out.append(components(p, rhs, tau))
    return np.stack(out, axis=-2)


def _cross(a, b):
    return np.cross(a, b)


def _norm(v):
    return np.sqrt(np.sum(v * v, axis=-1))


def _covariant_chain(tj, gamma):
    """Covariant derivatives of T along the curve from ``[T, T', ...]``.

    Returns ``[W1, W1', W2]`` from three rows and additionally
    ``[W1'', W2', W3]`` from four, where ``Wk = (nabla_T)^k T``.
    """
    G = lambda X, Y: gamma_apply(gamma, X, Y)  # noqa: E731
    T, d1, d2 = tj[..., 0, :], tj[..., 1, :], tj[..., 2, :]
    W1 = d1 + G(T, T)
    dW1 = d2 + G(d1, T) + G(T, d1)
    W2 = dW1 + G(T, W1)
    out = [W1, dW1, W2]
    if tj.shape[-2] > 3:
        d3 = tj[..., 3, :]
        ddW1 = d3 + G(d2, T) + 2.0 * G(d1, d1) + G(T, d2)
        dW2 = ddW1 + G(d1, W1) + G(T, dW1)
        out += [ddW1, dW2, dW2 + G(T, W2)]
    return out


def frenet_from_frame_jet(tj, tau, k1_min=K1_MIN):
    """Frenet frame, k1, k2 and the residual pieces from a frame jet.

    Returns ``(FrenetData, extras)``.  ``extras`` carries the covariant
    derivatives of T, N, B for residual checks, ``k1_prime`` and, when the
    jet has a fourth row, ``k2_prime``.
    """
    gamma = connection_table(tau)
    T, dT = tj[..., 0, :], tj[..., 1, :]
    chain = _covariant_chain(tj, gamma)
    W, dW = chain[0], chain[1]
    k1 = _norm(W)
    if np.any(k1 < k1_min):
        raise GeodesicPoint(f"geodesic curvature {np.min(k1):.3e} below {k1_min:g}")
    N = W / k1[..., None]
    dk1 = np.sum(N * dW, axis=-1)
    dN = (dW - dk1[..., None] * N) / k1[..., None]
    B = _cross(T, N)
    dB = _cross(dT, N) + _cross(T, dN)
    nabla_N = dN + gamma_apply(gamma, T, N)
    nabla_B = dB + gamma_apply(gamma, T, B)
    k2 = np.sum(nabla_N * B, axis=-1)
    data = FrenetData(T=T, N=N, B=B, k1=k1, k2=k2)
    extras = {"nabla_T": W, "nabla_N": nabla_N, "nabla_B": nabla_B, "k1_prime": dk1}
    if len(chain) > 3:
        # k2 = W2 . (T x W1) / k1^2; the cross product is parallel
        extras["k2_prime"] = (
            np.sum(chain[5] * _cross(T, W), axis=-1) / k1**2 - 2.0 * k2 * dk1 / k1
        )
    return data, extras


def _check_unit_speed(tj, tol=UNIT_SPEED_TOL):
    speed = _norm(tj[..., 0, :])
    dev = np.max(np.abs(speed - 1.0))
    if dev > tol:
        raise NotUnitSpeed(f"|g(T, T) - 1| reaches {dev:.3e}")


def frenet_at(curve, s, tau, h=DEFAULT_STEP, analytic=True, k1_min=K1_MIN):
    """Frenet data of ``curve`` at ``s`` (scalar or array).

    Uses the curve's analytic derivatives where available and central
    differences with step ``h`` otherwise.
    """
    tau = check_tau(tau)
    tj = frame_jet(curve_jet(curve, s, 3, h=h, analytic=analytic), tau)
    _check_unit_speed(tj)
    return frenet_from_frame_jet(tj, tau, k1_min)[0]


def frenet_residuals(curve, s, tau, h=DEFAULT_STEP, analytic=True):
    """g_tau-norms of the three Frenet equation defects at ``s``."""
    tau = check_tau(tau)
    tj = frame_jet(curve_jet(curve, s, 3, h=h, analytic=analytic), tau)
    _check_unit_speed(tj)
    return frenet_residuals_from_frame_jet(tj, tau)


def frenet_residuals_from_frame_jet(tj, tau):
    fd, ex = frenet_from_frame_jet(tj, tau)
    k1 = fd.k1[..., None]
    k2 = fd.k2[..., None]
    r1 = _norm(ex["nabla_T"] - k1 * fd.N)
    r2 = _norm(ex["nabla_N"] + k1 * fd.T - k2 * fd.B)
    r3 = _norm(ex["nabla_B"] + k2 * fd.N)
    return r1, r2, r3


def analytic_frenet(theta, b, tau):
    """Closed-form (k1, k2, N1, B1) of a helix with Hopf angle theta and beta' = b.

    The sign ambiguity is fixed by k1 >= 0; B1 = -sin(theta) whenever
    b + 2 (1 + tau^2) cos(theta) / tau > 0, which holds for every admissible
    biharmonic helix.
    """
    tau = check_tau(tau)
    c, s = np.cos(theta), np.sin(theta)
    K = b + 2.0 * (1.0 + tau**2) * c / tau
    k1 = abs(s * K)
    k2 = tau - c * K
    sign = 1.0 if K >= 0 else -1.0
    return k1, k2, 0.0, -sign * s


def bitension_from_frame_jet(tj, tau):
    """g_tau-norm of (nabla_T)^3 T - R(T, nabla_T T) T from a four-row frame jet."""
    T = tj[..., 0, :]
    chain = _covariant_chain(tj, connection_table(tau))
    return _norm(chain[5] - curvature_apply(T, chain[0], T, tau))
