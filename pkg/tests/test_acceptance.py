"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or ``python tests/test_acceptance.py``.
"""

import io
import itertools
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from grids import TAUS, family_grid  # noqa: E402
from helpers import constant_direction_curve, fiber_curve  # noqa: E402
from slbiharmonic import CurveSpec, make_curve  # noqa: E402
from slbiharmonic.biharmonic import (  # noqa: E402
    Branch,
    Case,
    ab_constants,
    admissible_range,
    bitension_residual,
    equal_case_cos2theta,
    system_residuals,
)
from slbiharmonic.cli import main as cli_main  # noqa: E402
from slbiharmonic.connection import curvature_closed_form, curvature_tensor  # noqa: E402
from slbiharmonic.curves import FunctionCurve, curve_jet  # noqa: E402
from slbiharmonic.errors import GeodesicPoint, WrongCase  # noqa: E402
from slbiharmonic.families import (  # noqa: E402
    gen_greater,
    greater_constants,
    integrate_family,
    ode_residual,
    relation_checks,
)
from slbiharmonic.frenet import analytic_frenet, frenet_at  # noqa: E402
from slbiharmonic.indefinite import inner22, j1_apply, u12_element  # noqa: E402
from slbiharmonic.model import frame_E, frames_X, gtau, random_points  # noqa: E402
from slbiharmonic.samples import sample_curve, write_csv  # noqa: E402

S = np.linspace(-5.0, 5.0, 2001)
FD_STEP = 1e-4
# finite-difference arm: derivatives above the second come from five-point
# differences of the analytic acceleration
FD_BASE_ORDER = 2

RESULTS = []


def record(number, title, passed, detail):
    line = f"[criterion {number:2d}] {'PASS' if passed else 'FAIL'}  {title}: {detail}"
    RESULTS.append(line)
    print(line)
    return passed


def all_curves(A_for=None):
    out = []
    for tau in TAUS:
        for fam, c2, br in family_grid(tau):
            A = None if A_for is None else A_for(fam)
            out.append(make_curve(CurveSpec(fam, tau, c2, br, A)))
    return out


def residuals(curve):
    """Every residual of criteria 4-6 for one curve, by name."""
    tau = curve.tau
    jet = curve_jet(curve, S, 4)
    p, v = jet[:, 0], jet[:, 1]
    E1 = -j1_apply(p) / tau
    r = {
        "on_manifold": np.abs(inner22(p, p) - 1).max(),
        "unit_speed": np.abs(gtau(p, v, v, tau) - 1).max(),
        "constant_angle": np.abs(gtau(p, v, E1, tau) - curve.cos_theta).max(),
        "ode": ode_residual(curve, S).max(),
        "bitension": bitension_residual(curve, S, tau).max(),
        "bitension_fd": bitension_residual(curve, S, tau, h=FD_STEP, analytic=FD_BASE_ORDER).max(),
    }
    r["system_k1"], r["system_k2sq"], r["system_k2prime"] = system_residuals(curve, S, tau)
    fd = frenet_at(curve, S, tau)
    k1, k2, _, _ = analytic_frenet(curve.theta, curve.b, tau)
    r["k1_spread"] = np.ptp(fd.k1)
    r["k2_spread"] = np.ptp(fd.k2)
    r["k1_closed_form"] = np.abs(fd.k1 - k1).max()
    r["k2_closed_form"] = np.abs(fd.k2 - k2).max()
    r["relations"] = max(relation_checks(curve, S).values())
    return {k: float(v) for k, v in r.items()}


_cache = {}


def default_residuals():
    if "default" not in _cache:
        curves = all_curves()
        _cache["default"] = (curves, [residuals(c) for c in curves])
    return _cache["default"]


def describe(curve):
    return f"tau={curve.tau:g} {curve.family.value} cos2={curve.data.cos2theta:.6f} {curve.data.branch.name.lower()}"


def worst(rows, curves, key):
    i = int(np.argmax([r[key] for r in rows]))
    return rows[i][key], describe(curves[i])


def criterion_1():
    err = max(np.abs(curvature_tensor(t) - curvature_closed_form(t)).max() for t in TAUS)
    n = len(list(itertools.product(range(3), repeat=4)))
    return record(1, "curvature oracle", err <= 1e-12, f"max |R_brute - R_closed| = {err:.2e} over {n} tuples x 3 tau (tol 1e-12)")


def criterion_2():
    rng = np.random.default_rng(2)
    pts = random_points(rng, 100)
    err_e = err_x = 0.0
    for tau in TAUS:
        for p in pts:
            E = np.array(frame_E(p, tau))
            G = gtau(p, E[:, None, :], E[None, :, :], tau)
            err_e = max(err_e, np.abs(G - np.eye(3)).max())
            X1 = frames_X(p)[0]
            err_x = max(err_x, abs(gtau(p, X1, X1, tau) - tau**2))
    ok = max(err_e, err_x) <= 1e-10
    return record(2, "frame/metric consistency", ok, f"|g(Ei,Ej)-d_ij| = {err_e:.2e}, |g(X1,X1)-tau^2| = {err_x:.2e} at 100 points x 3 tau (tol 1e-10)")


def criterion_3():
    disc = []
    for tau in TAUS:
        a, b = ab_constants(equal_case_cos2theta(tau), Branch.PLUS, tau)
        disc.append(abs(b * b - 4 * a))
    a1, b1 = ab_constants(equal_case_cos2theta(1.0), Branch.PLUS, 1.0)
    ok = max(disc) <= 1e-12 and abs(a1 - 1.6) <= 1e-12 and abs(b1 * b1 - 6.4) <= 1e-12
    return record(3, "equal-case degeneracy", ok, f"max |b^2-4a| = {max(disc):.2e}; tau=1: a = {a1:.15g}, b^2 = {b1 * b1:.15g} (tol 1e-12)")


C4_TOL = {
    "on_manifold": 1e-9,
    "unit_speed": 1e-8,
    "constant_angle": 1e-8,
    "ode": 1e-9,
    "system_k1": 1e-5,
    "system_k2sq": 1e-5,
    "system_k2prime": 1e-5,
    "bitension": 1e-6,
    "bitension_fd": 1e-4,
}


def criterion_4():
    curves, rows = default_residuals()
    parts, ok = [], True
    for key, tol in C4_TOL.items():
        val, where = worst(rows, curves, key)
        ok &= val <= tol
        parts.append(f"{key} {val:.1e}/{tol:.0e}")
    return record(4, "family validity", ok, f"{len(curves)} curves; " + ", ".join(parts))


def criterion_5():
    curves, rows = default_residuals()
    keys = ("k1_spread", "k2_spread", "k1_closed_form", "k2_closed_form")
    vals = {k: worst(rows, curves, k)[0] for k in keys}
    ok = max(vals.values()) <= 1e-6
    return record(5, "Frenet constancy", ok, ", ".join(f"{k} {v:.1e}" for k, v in vals.items()) + " (tol 1e-6)")


def criterion_6():
    curves, rows = default_residuals()
    val, where = worst(rows, curves, "relations")
    return record(6, "relation suite", val <= 1e-8, f"max deviation of 16 identities = {val:.2e} at {where} (tol 1e-8)")


def criterion_7():
    rng = np.random.default_rng(7)
    worst_sum, signs_ok, n = 0.0, True, 0
    while n < 50:
        tau = float(rng.uniform(0.3, 3.0))
        br = Branch.PLUS if n % 2 == 0 else Branch.MINUS
        lo, _ = admissible_range(tau)
        hi = equal_case_cos2theta(tau) if br is Branch.PLUS else 1.0
        c2 = lo + float(rng.uniform(0.0, 0.98)) * (hi - lo)
        try:
            _, _, C11, C33 = greater_constants(gen_greater(tau, c2, br).data)
        except WrongCase:
            continue
        signs_ok &= C11 < 0 < C33
        worst_sum = max(worst_sum, abs(C11 + C33 - 1))
        n += 1
    ok = signs_ok and worst_sum <= 1e-12
    return record(7, "greater-case constants", ok, f"50 triples, signs {'ok' if signs_ok else 'VIOLATED'}, max |C11+C33-1| = {worst_sum:.2e} (tol 1e-12)")


def criterion_8():
    curves, _ = default_residuals()
    s = np.linspace(0.0, 1.0, 1001)
    errs = [np.abs(integrate_family(c, 1.0, 1000).x - c(s)).max() for c in curves]
    i = int(np.argmax(errs))
    return record(8, "RK4 cross-validation", errs[i] <= 1e-6, f"max sup-norm gap = {errs[i]:.2e} at {describe(curves[i])}, step 1e-3 on [0,1] (tol 1e-6)")


def criterion_9():
    notes, ok = [], True
    # fiber geodesics
    p = random_points(np.random.default_rng(9), 1)[0]
    geo = True
    for tau in TAUS:
        try:
            frenet_at(FunctionCurve(fiber_curve(p, tau)), np.linspace(0, 1, 5), tau, h=1e-3)
            geo = False
        except GeodesicPoint:
            pass
    ok &= geo
    notes.append(f"fiber GeodesicPoint {'raised' if geo else 'MISSING'}")
    # cos^2 = 0.5 helix at tau = 1
    c = np.sqrt(0.5)
    helix = constant_direction_curve([c, 0.0, c], [1, 0, 0, 0], 1.0)
    bt = bitension_residual(helix, np.linspace(-5, 5, 101), 1.0).min()
    ok &= bt > 1e-2
    notes.append(f"cos2=0.5 helix min bitension {bt:.2e} (> 1e-2)")
    # perturbed CSV
    curve = make_curve(CurveSpec(Case.LESS, 1.0, 0.95))
    s, jet = sample_curve(curve, -5, 5, 2001)
    jet[1000, 0, 0] += 1e-3
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "perturbed.csv")
        with open(path, "w") as fh:
            write_csv(fh, s, jet)
        saved = sys.stdout
        sys.stdout = io.StringIO()
        try:
            code = cli_main(["verify", "--input", path, "--tau", "1"])
        finally:
            sys.stdout = saved
    ok &= code == 1
    notes.append(f"perturbed CSV exit code {code}")
    return record(9, "negative controls", ok, "; ".join(notes))


ALTERNATIVES = [(0.3, 0.2, -0.4), (1.1, 0.6, 0.5), (-2.0, 0.8, 2.2)]


def criterion_10():
    curves, base = default_residuals()
    analytic_gap, fd_gap, fd_ok = 0.0, 0.0, True
    where, over, total = "", 0, 0
    for par in ALTERNATIVES:
        alt_curves = all_curves(lambda fam: u12_element(*par, anticommuting=fam is Case.GREATER))
        for c, r0 in zip(alt_curves, base):
            r1 = residuals(c)
            for k in r0:
                gap = abs(r1[k] - r0[k])
                if k == "bitension_fd":
                    fd_gap = max(fd_gap, gap)
                    fd_ok &= r1[k] <= C4_TOL[k]
                else:
                    total += 1
                    over += gap > 1e-9
                    if gap > analytic_gap:
                        analytic_gap, where = gap, f"{k} at {describe(c)}, A={par}"
    ok = analytic_gap <= 1e-9 and fd_ok
    detail = (
        f"{len(ALTERNATIVES)} alternatives x {len(curves)} curves; max analytic residual change "
        f"{analytic_gap:.2e} ({where}) (tol 1e-9), {over}/{total} comparisons above tol; "
        f"finite-difference arm change {fd_gap:.1e}, "
        f"still within 1e-4: {fd_ok}"
    )
    return record(10, "conjugation invariance", ok, detail)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
