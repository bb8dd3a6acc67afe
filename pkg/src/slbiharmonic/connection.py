"""Levi-Civita connection of g_tau in the frame E1, E2, E3 and its curvature.

All covariant calculus is done on frame components.  Indices are 0-based in
code: ``gamma[i, j, k]`` is the E_{k+1} component of nabla_{E_{i+1}} E_{j+1}.
"""

import itertools

import numpy as np

from .model import check_tau


def connection_table(tau):
    """Structure-constant table of nabla^tau as a ``(3, 3, 3)`` array."""
    tau = check_tau(tau)
    c = (2.0 + tau**2) / tau
    gamma = np.zeros((3, 3, 3))
    gamma[0, 1, 2] = -c
    gamma[0, 2, 1] = c
    gamma[1, 0, 2] = -tau
    gamma[2, 0, 1] = tau
    gamma[2, 1, 0] = -tau
    gamma[1, 2, 0] = tau
    return gamma


def brackets(gamma):
    """Structure constants of the Lie bracket implied by torsion-freeness.

    ``out[i, j, k]`` is the E_k component of [E_i, E_j].
    """
    return gamma - gamma.transpose(1, 0, 2)


def gamma_apply(gamma, X, Y):
    """Frame components of the connection term sum_ij X_i Y_j nabla_{E_i} E_j."""
    return np.einsum("...i,...j,ijk->...k", X, Y, gamma)


def covariant_derivative(V, Vprime, T, tau):
    """Components of nabla_T V for a field V along a curve with velocity T.

    ``Vprime`` holds the s-derivatives of the components of V.
    """
    gamma = connection_table(tau)
    V, Vprime, T = (np.asarray(x, dtype=float) for x in (V, Vprime, T))
    return Vprime + gamma_apply(gamma, T, V)


def riemann_endomorphisms(tau):
    """Brute-force curvature operator from the table.

    Returns ``R[i, j, l, m]``: the E_m component of R(E_i, E_j) E_l, using
    R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.  The
    coefficients are constant in this frame, so nabla_X of a component is
    zero and only products of structure constants remain.
    """
    gamma = connection_table(tau)
    bra = brackets(gamma)
    R = np.zeros((3, 3, 3, 3))
    for i, j, l in itertools.product(range(3), repeat=3):
        # nabla_{E_j} E_l = sum_k gamma[j,l,k] E_k, then nabla_{E_i} E_k
        nyz = gamma[j, l]
        nxz = gamma[i, l]
        term = nyz @ gamma[i] - nxz @ gamma[j]
        term -= bra[i, j] @ gamma[:, l, :]
        R[i, j, l] = term
    return R


def curvature_tensor(tau):
    """All R_ijkl = g(R(E_i, E_j) E_l, E_k) as a ``(3, 3, 3, 3)`` array."""
    R = riemann_endomorphisms(tau)
    # frame is orthonormal, so g(., E_k) is the k-th component
    return R.transpose(0, 1, 3, 2)


def curvature_component(i, j, k, l, tau):
    """R_ijkl with 1-based indices in {1, 2, 3}."""
    for idx in (i, j, k, l):
        if idx not in (1, 2, 3):
            raise ValueError(f"index {idx!r} not in {{1, 2, 3}}")
    return float(curvature_tensor(tau)[i - 1, j - 1, k - 1, l - 1])


def curvature_closed_form(tau):
    """R_ijkl assembled from R_1212 = R_1313 = tau^2, R_2323 = -(4 + 3 tau^2)."""
    tau = check_tau(tau)
    out = np.zeros((3, 3, 3, 3))
    for (a, b), val in {
        (0, 1): tau**2,
        (0, 2): tau**2,
        (1, 2): -(4.0 + 3.0 * tau**2),
    }.items():
        out[a, b, a, b] = val
        out[b, a, b, a] = val
        out[a, b, b, a] = -val
        out[b, a, a, b] = -val
    return out


def curvature_apply(X, Y, Z, tau):
    """Frame components of R(X, Y) Z."""
    R = riemann_endomorphisms(tau)
    return np.einsum("...i,...j,...l,ijlm->...m", X, Y, Z, R)
