"""Linear algebra in R^4 with the signature (2, 2) inner product.

Vectors are plain ``numpy`` arrays of shape ``(4,)`` (or ``(..., 4)`` for
batches) and matrices are ``(4, 4)`` arrays stored row-major.
"""

import enum
import json

import numpy as np

DEFAULT_TOL = 1e-10

#: Gram matrix of the (2, 2) form, diag(1, 1, -1, -1).
EPSILON = np.diag([1.0, 1.0, -1.0, -1.0])

#: Complex structure diag(J, J) with J = [[0, -1], [1, 0]].
J1 = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
)


class Commutation(enum.Enum):
    COMMUTES = "commutes"
    ANTICOMMUTES = "anticommutes"
    NEITHER = "neither"


def as_vec4(v):
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != 4:
        raise ValueError(f"expected a 4-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite components")
    return v


def as_matrix4(A):
    A = np.asarray(A, dtype=float)
    if A.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def inner22(v, w):
    """<v, w> = v1 w1 + v2 w2 - v3 w3 - v4 w4, broadcasting over leading axes."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    return (
        v[..., 0] * w[..., 0]
        + v[..., 1] * w[..., 1]
        - v[..., 2] * w[..., 2]
        - v[..., 3] * w[..., 3]
    )


def j1_apply(v):
    """(x1, x2, x3, x4) -> (-x2, x1, -x4, x3)."""
    v = np.asarray(v, dtype=float)
    return np.stack([-v[..., 1], v[..., 0], -v[..., 3], v[..., 2]], axis=-1)


def o24_residual(A):
    """Max-entry deviation of A^T eps A from eps."""
    A = as_matrix4(A)
    return float(np.max(np.abs(A.T @ EPSILON @ A - EPSILON)))


def o24_membership(A, tol=DEFAULT_TOL):
    """True when A preserves the (2, 2) form to within ``tol`` (max-norm)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return o24_residual(A) <= tol


def j1_commutation(A, tol=DEFAULT_TOL):
    """Classify A by whether A J1 = J1 A or A J1 = -J1 A.

    A matrix for which both relations hold (numerically zero) is reported
    as ``NEITHER``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = as_matrix4(A)
    comm = np.max(np.abs(A @ J1 - J1 @ A)) <= tol
    anti = np.max(np.abs(A @ J1 + J1 @ A)) <= tol
    if comm and not anti:
        return Commutation.COMMUTES
    if anti and not comm:
        return Commutation.ANTICOMMUTES
    return Commutation.NEITHER


def load_matrix(path):
    """Read a 4x4 matrix stored as a JSON array of four rows."""
    with open(path) as fh:
        data = json.load(fh)
    return as_matrix4(data)


def dump_matrix(A):
    return json.dumps(as_matrix4(A).tolist())


def u12_element(phi=0.0, rapidity=0.0, psi=0.0, anticommuting=False):
    """An element of the isometry group built from a U(1,1) rotation/boost.

    With ``z = x1 + i x2`` and ``w = x3 + i x4`` the commuting part acts as
    ``(z, w) -> e^{i psi} (e^{i phi} (z cosh r + w sinh r),
    e^{-i phi} (z sinh r + w cosh r))``.  When ``anticommuting`` is set the
    result is composed with the conjugation diag(1, -1, 1, -1).
    """
    def cmul(theta):
        c, s = np.cos(theta), np.sin(theta)
        return np.array([[c, -s], [s, c]])

    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    boost = np.block([[ch * np.eye(2), sh * np.eye(2)], [sh * np.eye(2), ch * np.eye(2)]])
    phase = np.block(
        [[cmul(phi), np.zeros((2, 2))], [np.zeros((2, 2)), cmul(-phi)]]
    )
    overall = np.block(
        [[cmul(psi), np.zeros((2, 2))], [np.zeros((2, 2)), cmul(psi)]]
    )
    A = overall @ phase @ boost
    if anticommuting:
        A = A @ np.diag([1.0, -1.0, 1.0, -1.0])
    return A
