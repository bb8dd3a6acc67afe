"""Test-only curve builders and independent closed-form oracles."""

import numpy as np

from slbiharmonic.curves import Curve
from slbiharmonic.families import integrate
from slbiharmonic.model import frame_matrices


class ConstantDirectionCurve(Curve):
    """gamma(s) = exp(s M) p with M = sum_i c_i L_i, so gamma' has frame components c.

    The L_i anticommute pairwise, hence M^2 = kappa I with
    kappa = -c1^2 / tau^2 + c2^2 + c3^2 and the exponential is elementary.
    """

    analytic_order = 64

    def __init__(self, c, p, tau):
        c = np.asarray(c, dtype=float)
        self.M = np.einsum("i,ijk->jk", c, frame_matrices(tau))
        self.kappa = -c[0] ** 2 / tau**2 + c[1] ** 2 + c[2] ** 2
        self.p = np.asarray(p, dtype=float)

    def _even_odd(self, s):
        k = self.kappa
        r = np.sqrt(abs(k))
        if abs(k) < 1e-14:
            return np.ones_like(s), s
        if k > 0:
            return np.cosh(r * s), np.sinh(r * s) / r
        return np.cos(r * s), np.sin(r * s) / r

    def jet(self, s, order):
        s = np.asarray(s, dtype=float)
        ev, od = self._even_odd(s)
        pos = ev[..., None] * self.p + od[..., None] * (self.M @ self.p)
        rows = [pos]
        for n in range(1, order + 1):
            rows.append(rows[-1] @ self.M.T)
        return np.stack(rows, axis=-2)


def constant_direction_curve(c, p, tau):
    return ConstantDirectionCurve(c, p, tau)


def fiber_curve(p, tau):
    """Integral curve of E1 through p, written out with trig functions."""
    p = np.asarray(p, dtype=float)
    jp = np.array([-p[1], p[0], -p[3], p[2]])

    def position(s):
        s = np.asarray(s, dtype=float)[..., None]
        return np.cos(s / tau) * p - np.sin(s / tau) * jp

    return position


def helix_samples(cos_theta, b, tau, s_end=6.0, step=1e-3, x0=(1.0, 0.0, 0.0, 0.0)):
    """Constant-angle helix with beta' = b, integrated by RK4 from s = 0."""
    n = int(round(s_end / step))
    traj = integrate(np.asarray(x0, dtype=float), 0.0, cos_theta, b, tau, s_end, n)
    return traj.s, traj.x


# explicit trigonometric forms of the three families, written independently of
# the exponential-sum representation used by the package


def equal_trig(s, sqrt_a, g14):
    w = sqrt_a
    c, sn = np.cos(w * s), np.sin(w * s)
    return np.array([c + g14 * s * sn, -sn + g14 * s * c, -g14 * s * c, g14 * s * sn])


def greater_trig(s, alpha1, alpha2, C11, C33):
    u, v = np.sqrt(C33), np.sqrt(-C11)
    return np.array(
        [
            u * np.cos(alpha2 * s),
            u * np.sin(alpha2 * s),
            v * np.cos(alpha1 * s),
            v * np.sin(alpha1 * s),
        ]
    )


def less_trig(s, b, mu, w14):
    c, sn = np.cos(b * s / 2), np.sin(b * s / 2)
    ch, sh = np.cosh(mu * s), np.sinh(mu * s)
    r = np.sqrt(1.0 + w14**2)
    return np.array([c * ch + w14 * sn * sh, sn * ch - w14 * c * sh, c * sh * r, sn * sh * r])
