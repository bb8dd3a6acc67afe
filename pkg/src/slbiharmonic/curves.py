"""Curve representations with derivative jets.

A *jet* at parameter ``s`` is the array ``[gamma, gamma', ..., gamma^(n)]`` of
shape ``(n + 1, 4)``; for an array of parameters the shape is
``(len(s), n + 1, 4)``.  Curves declare how many derivatives they know
analytically (``analytic_order``); :func:`curve_jet` fills in the rest with
central differences of the highest analytic derivative.
"""

import functools
from fractions import Fraction
from math import comb, factorial

import numpy as np

DEFAULT_STEP = 1e-4


@functools.lru_cache(maxsize=None)
def _exact_weights(order, half_width):
    nodes = [Fraction(x) for x in range(-half_width, half_width + 1)]
    n = len(nodes)
    # augmented moment system sum_j w_j x_j^p = p! [p == order], solved exactly
    rows = [
        [x**p for x in nodes] + [Fraction(factorial(order) if p == order else 0)]
        for p in range(n)
    ]
    for i in range(n):
        piv = next(k for k in range(i, n) if rows[k][i] != 0)
        rows[i], rows[piv] = rows[piv], rows[i]
        for k in range(n):
            if k != i and rows[k][i] != 0:
                f = rows[k][i] / rows[i][i]
                rows[k] = [u - f * v for u, v in zip(rows[k], rows[i])]
    return tuple(float(rows[i][n] / rows[i][i]) for i in range(n))


def central_weights(order, half_width):
    """Central finite-difference weights on the nodes -m..m (m = half_width).

    The moment system is solved in rational arithmetic; a floating-point
    Vandermonde solve loses about 1e-12 in the weights at m = 6, which is
    amplified by h^-4 in fourth derivatives.
    """
    if order >= 2 * half_width + 1:
        raise ValueError("stencil too narrow for the requested derivative")
    return np.array(_exact_weights(order, half_width))


# five-point stencils for a fixed step
_FIVE_POINT = {k: central_weights(k, 2) for k in (1, 2, 3, 4)}


class Curve:
    """Base class: subclasses implement ``jet(s, order)`` up to ``analytic_order``."""

    analytic_order = 0

    def jet(self, s, order):
        raise NotImplementedError

    def __call__(self, s):
        return self.jet(s, 0)[..., 0, :]


class FunctionCurve(Curve):
    """Curve given by plain callables for position and, optionally, derivatives."""

    def __init__(self, position, derivatives=()):
        self._funcs = [position, *derivatives]
        self.analytic_order = len(self._funcs) - 1

    def jet(self, s, order):
        if order > self.analytic_order:
            raise ValueError("order exceeds the analytic derivatives supplied")
        s = np.asarray(s, dtype=float)
        cols = [np.asarray(f(s), dtype=float) for f in self._funcs[: order + 1]]
        return np.stack(cols, axis=-2)


class ExpSumCurve(Curve):
    """gamma(s) = A Re sum_k c_k s^{m_k} exp(lambda_k s).

    Every closed-form family reduces to this shape (trigonometric,
    hyperbolic and secular ``s * cos`` factors), so derivatives of any order
    are exact via the Leibniz rule.
    """

    analytic_order = 64

    def __init__(self, terms, A=None):
        self.terms = [
            (np.asarray(c, dtype=complex), int(m), complex(lam)) for c, m, lam in terms
        ]
        self.A = np.eye(4) if A is None else np.asarray(A, dtype=float)

    def jet(self, s, order):
        s = np.asarray(s, dtype=float)
        scalar = s.ndim == 0
        s = np.atleast_1d(s)
        out = np.zeros((len(s), order + 1, 4))
        for c, m, lam in self.terms:
            e = np.exp(lam * s)
            for n in range(order + 1):
                poly = np.zeros_like(s, dtype=complex)
                for j in range(min(n, m) + 1):
                    coef = comb(n, j) * factorial(m) // factorial(m - j)
                    poly = poly + coef * s ** (m - j) * lam ** (n - j)
                out[:, n, :] += np.real(np.outer(poly * e, c))
        out = out @ self.A.T
        return out[0] if scalar else out


def curve_jet(curve, s, order, h=DEFAULT_STEP, analytic=True):
    """Jet of ``curve`` at ``s`` up to ``order``.

    ``analytic`` is either a bool or the highest derivative order to take
    from the curve itself.  ``True`` uses every analytic derivative the curve
    has; ``False`` uses only the position and velocity.  Missing orders are
    five-point central differences, with step ``h``, of the highest
    derivative taken analytically.
    """
    s = np.asarray(s, dtype=float)
    if analytic is True:
        base = curve.analytic_order
    elif analytic is False:
        base = 1
    else:
        base = int(analytic)
    base = min(order, base, curve.analytic_order)
    jet = curve.jet(s, base)
    if base == order:
        return jet
    extra = order - base
    if extra > 4:
        raise ValueError("at most four orders can be filled by differences")
    offsets = np.arange(-2, 3) * h
    # shape (..., 5, 4): highest analytic derivative on the stencil nodes
    nodes = np.stack([curve.jet(s + o, base)[..., base, :] for o in offsets], axis=-2)
    filled = [jet]
    for k in range(1, extra + 1):
        w = _FIVE_POINT[k] / h**k
        filled.append(np.einsum("n,...nd->...d", w, nodes)[..., None, :])
    return np.concatenate(filled, axis=-2)


class SampledCurve:
    """A curve known only on a uniform grid (e.g. read from CSV).

    Derivatives come from wide central stencils on the grid itself.  The
    stencil nodes are ``stride`` samples apart, with the stride chosen so the
    node spacing is close to ``spacing``: fourth derivatives on a fine grid
    are otherwise dominated by roundoff.  Only points with a full stencil are
    returned.
    """

    def __init__(self, s, points, half_width=8, spacing=0.05, rtol=1e-6):
        self.s = np.asarray(s, dtype=float)
        self.points = np.asarray(points, dtype=float)
        if self.s.ndim != 1 or self.points.shape != (len(self.s), 4):
            raise ValueError("expected s of shape (n,) and points of shape (n, 4)")
        if len(self.s) < 2:
            raise ValueError("need at least two samples")
        steps = np.diff(self.s)
        self.step = float(np.mean(steps))
        if self.step <= 0 or np.max(np.abs(steps - self.step)) > rtol * self.step:
            raise ValueError("sample grid is not uniform and increasing")
        self.half_width = half_width
        self.stride = max(1, int(round(spacing / self.step)))
        if len(self.s) <= 2 * half_width * self.stride:
            raise ValueError("too few samples for the derivative stencil")

    def jets(self, order):
        """Interior parameters and jets of shape ``(n_interior, order + 1, 4)``."""
        m, r = self.half_width, self.stride
        span = m * r
        n = len(self.s)
        inner = n - 2 * span
        out = np.empty((inner, order + 1, 4))
        out[:, 0, :] = self.points[span : n - span]
        for k in range(1, order + 1):
            w = central_weights(k, m) / (self.step * r) ** k
            acc = np.zeros((inner, 4))
            for j, wj in enumerate(w):
                start = span + (j - m) * r
                acc += wj * self.points[start : start + inner]
            out[:, k, :] = acc
        return self.s[span : n - span], out
