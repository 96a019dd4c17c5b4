"""Acceptance checks, one test per criterion.

Each test prints a single `CRITERION k: PASS/FAIL` line (with elapsed time
and detail) and then asserts it.  Tolerances and parameter sets are the
stated ones; nothing is loosened.  Criteria whose stated expectation the
computed transform genuinely does not meet are left to fail and the
failure detail says what was measured instead.
"""

import cmath
import math
import time

import numpy as np
import pytest

from mlfourier.bessel import (
    bessel_asymptotic,
    bessel_j_half_identity,
    build_expansion,
    jbar,
    remainder_decay_certificate,
)
from mlfourier.mittag_leffler import (
    MLParams,
    default_contour,
    hankel_reciprocal_gamma,
    ml_contour,
    ml_series,
)
from mlfourier.errors import DomainError
from mlfourier.special_core import (
    DEFAULT_QUADRATURE,
    complex_gamma,
    integrate_finite,
    reciprocal_gamma,
)
from mlfourier.radial_fourier import (
    TransformProblem,
    compute_M,
    cutoff_phi,
    ibp_identity_check,
    ml_transform,
    _tail_coefficient_pairs,
)
from mlfourier.asymptotics import (
    fit_exponent,
    lp_numerical_check,
    lp_region,
    verify_small_xi,
)

CERT_GRID = np.geomspace(12.0, 190.0, 12)


def report(k: int, ok: bool, t0: float, detail: str) -> str:
    line = (
        f"CRITERION {k}: {'PASS' if ok else 'FAIL'} "
        f"({time.monotonic() - t0:.1f}s) - {detail}"
    )
    print(line)
    return line


def test_criterion_1_series_vs_contour():
    t0 = time.monotonic()
    worst = 0.0
    for alpha in (0.4, 0.8, 1.2, 1.7):
        for beta in (0.5, 1.0, 2.0):
            p = MLParams(alpha, beta)
            for mag in (0.1, 1.0, 4.0):
                for phi in (0.75 * math.pi, math.pi):
                    z = mag * cmath.exp(1j * phi)
                    try:
                        c = default_contour(p, phi)
                    except DomainError:
                        # phase inside the ray opening: enclose the pole
                        # with a wider arc instead
                        c = default_contour(p, None, epsilon=2.0 * mag)
                    a = ml_series(p, z)
                    b = ml_contour(p, z, c)
                    worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    ok = worst < 1e-7 and time.monotonic() - t0 < 30.0
    line = report(1, ok, t0, f"max relative deviation {worst:.3e} (< 1e-7)")
    assert ok, line


def test_criterion_2_reciprocal_gamma_identity():
    t0 = time.monotonic()
    pairs = [(0.8, 1.0), (0.5, 1.2), (1.3, 2.0), (1.1, 1.0), (0.7, 0.7), (1.5, 0.5)]
    worst_rel = 0.0
    worst_abs = 0.0
    for alpha, beta in pairs:
        p = MLParams(alpha, beta)
        c = default_contour(p)
        got_b = hankel_reciprocal_gamma(p, c, shift=alpha)
        want_b = reciprocal_gamma(beta)
        worst_rel = max(worst_rel, abs(got_b - want_b) / abs(want_b))
        got_ba = hankel_reciprocal_gamma(p, c, shift=0.0)
        gap = beta - alpha
        if gap <= 0 and abs(gap - round(gap)) < 1e-12:
            # reciprocal gamma vanishes at nonpositive integers
            worst_abs = max(worst_abs, abs(got_ba))
        else:
            want_ba = reciprocal_gamma(gap)
            worst_rel = max(worst_rel, abs(got_ba - want_ba) / abs(want_ba))
    ok = worst_rel < 1e-8 and worst_abs < 1e-10 and time.monotonic() - t0 < 10.0
    line = report(
        2, ok, t0,
        f"worst relative {worst_rel:.3e} (< 1e-8), "
        f"worst pole-point magnitude {worst_abs:.3e} (< 1e-10)",
    )
    assert ok, line


def test_criterion_3_bessel_expansion_reductions():
    t0 = time.monotonic()
    # order-1 truncation against its closed form
    worst_closed = 0.0
    for lam in (1.0, 1.7, 2.5):
        exp = build_expansion(lam, 1)
        lam_star = math.pi * lam / 2 + math.pi / 4
        for r in (2.0, 5.0, 20.0, 60.0):
            got = bessel_asymptotic(exp, r)
            want = math.sqrt(2 / math.pi) * math.cos(r - lam_star) / math.sqrt(r)
            want -= (
                (lam * lam - 0.25)
                / math.sqrt(2 * math.pi)
                * math.sin(r - lam_star)
                * r ** -1.5
            )
            worst_closed = max(worst_closed, abs(got - want))
    # leading pair reduces to the half-order cosine identity; at order
    # -1/2 the generic coefficient formula is an indeterminate gamma
    # ratio, so the limit-valued pair from the tail machinery is used
    worst_half = 0.0
    pair = _tail_coefficient_pairs(1, 0)[0][0]
    for r in (0.5, 1.0, 2.0, 7.0, 31.0):
        got = (pair[0] * cmath.exp(1j * r) + pair[1] * cmath.exp(-1j * r)) / math.sqrt(r)
        worst_half = max(worst_half, abs(got - bessel_j_half_identity(r)))
    # remainder decay certificates
    slopes = {}
    cert_ok = True
    for lam, M in ((1.5, 1), (2.0, 1), (2.0, 2), (2.5, 3)):
        cert = remainder_decay_certificate(lam, M, CERT_GRID)
        slopes[(lam, M)] = cert.slope
        cert_ok = cert_ok and cert.slope <= -(M + 1.5) + 0.15
    ok = (
        worst_closed < 1e-12
        and worst_half < 1e-12
        and cert_ok
        and time.monotonic() - t0 < 20.0
    )
    line = report(
        3, ok, t0,
        f"closed-form gap {worst_closed:.2e}, half-order gap {worst_half:.2e} "
        f"(both < 1e-12), certificate slopes "
        + ", ".join(f"{k}: {v:.2f}" for k, v in slopes.items()),
    )
    assert ok, line


def test_criterion_4_compact_part_limit_constants():
    t0 = time.monotonic()
    cfg = DEFAULT_QUADRATURE
    sigma = 0.7
    legs = []
    for alpha, beta, phi, n in ((0.8, 1.0, math.pi, 1), (0.5, 1.2, math.pi, 2)):
        tp = TransformProblem(alpha, beta, phi, sigma, n)
        plateau = integrate_finite(
            lambda r: cutoff_phi(r) * jbar(n, r), 0.0, 2.0, cfg, points=[1.0]
        ).value / complex_gamma(beta)
        got_inf = compute_M(tp, 1e6, cfg)
        rel_inf = abs(got_inf - plateau) / abs(plateau)
        legs.append((f"n={n} large-xi", rel_inf, 1e-4))
        scaled_limit = -(
            cmath.exp(-1j * phi)
            / complex_gamma(beta - alpha)
            * integrate_finite(
                lambda r: cutoff_phi(r) * jbar(n, r) * r ** -sigma,
                0.0,
                2.0,
                cfg,
                points=[1.0],
            ).value
        )
        got_zero = compute_M(tp, 1e-3, cfg) / 1e-3 ** sigma
        rel_zero = abs(got_zero - scaled_limit) / abs(scaled_limit)
        legs.append((f"n={n} small-xi", rel_zero, 1e-3))
    ok = all(rel < tol for _, rel, tol in legs) and time.monotonic() - t0 < 120.0
    detail = ", ".join(f"{name} rel {rel:.3e} (tol {tol:g})" for name, rel, tol in legs)
    line = report(4, ok, t0, detail)
    assert ok, line


def test_criterion_5_derivative_transfer_identity():
    t0 = time.monotonic()
    tp = TransformProblem(0.8, 1.0, math.pi, 1.0, 1)
    worst = 0.0
    for ell, order in ((0, 1), (0, 2), (1, 1)):
        for xi in (0.5, 1.0, 2.0):
            worst = max(worst, ibp_identity_check(tp, xi, ell, order))
    ok = worst < 1e-5 and time.monotonic() - t0 < 120.0
    line = report(5, ok, t0, f"worst relative difference {worst:.3e} (< 1e-5)")
    assert ok, line


def test_criterion_6_small_xi_laws():
    t0 = time.monotonic()
    pairs = [(0.8, 1.0), (1.3, 2.0)]
    # power-law cases: fit in windows deep enough that the law has set in
    # for both parameter pairs, deeper for lower dimensions where the
    # profile scale makes that cheap
    power_grids = {
        (1, 0.7): np.geomspace(1e-8, 1e-5, 8),
        (2, 1.5): np.geomspace(1e-6, 1e-4, 8),
        (3, 2.2): np.geomspace(1e-4, 1e-2, 8),
    }
    checks = []
    for (n, sigma), grid in power_grids.items():
        slopes = []
        for alpha, beta in pairs:
            tp = TransformProblem(alpha, beta, math.pi, sigma, n)
            fit = fit_exponent([(x, ml_transform(tp, x)) for x in grid])
            slopes.append(fit.slope)
            checks.append(
                (f"(n={n},sigma={sigma}) a={alpha} slope {fit.slope:+.3f}",
                 abs(fit.slope - (sigma - n)) <= 0.05)
            )
        checks.append(
            (f"(n={n},sigma={sigma}) pair gap {abs(slopes[0]-slopes[1]):.4f}",
             abs(slopes[0] - slopes[1]) < 0.03)
        )
    for n in (1, 2):
        for alpha, beta in pairs:
            tp = TransformProblem(alpha, beta, math.pi, float(n), n)
            rep = verify_small_xi(tp)
            checks.append(
                (f"log n={n} a={alpha} law={rep.small_xi_law}",
                 rep.small_xi_law == "log" and rep.constants_matched)
            )
    const_slopes = []
    for alpha, beta in pairs:
        tp = TransformProblem(alpha, beta, math.pi, 2.0, 1)
        rep = verify_small_xi(tp)
        const_slopes.append(rep.small_slope_fit.slope)
        checks.append(
            (f"const a={alpha} slope {rep.small_slope_fit.slope:+.4f}",
             abs(rep.small_slope_fit.slope) <= 0.05)
        )
    checks.append(
        (f"const pair gap {abs(const_slopes[0]-const_slopes[1]):.4f}",
         abs(const_slopes[0] - const_slopes[1]) < 0.03)
    )
    ok = all(flag for _, flag in checks) and time.monotonic() - t0 < 600.0
    bad = [name for name, flag in checks if not flag]
    line = report(
        6, ok, t0,
        "all sub-checks hold" if ok else "failing: " + "; ".join(bad),
    )
    assert ok, line


def test_criterion_7_large_xi_law():
    t0 = time.monotonic()
    grid = np.geomspace(10.0, 1e4, 10)
    results = []
    for n, sigma in ((1, 0.7), (2, 1.5), (3, 2.2)):
        tp = TransformProblem(0.8, 1.0, math.pi, sigma, n)
        fit = fit_exponent([(x, ml_transform(tp, x)) for x in grid])
        results.append((n, sigma, fit.slope))
    ok = all(abs(s + n) <= 0.05 for n, _, s in results) and (
        time.monotonic() - t0 < 300.0
    )
    detail = ", ".join(
        f"(n={n},sigma={sg}) slope {s:+.4f} vs -{n} required" for n, sg, s in results
    )
    line = report(7, ok, t0, detail)
    assert ok, line


def test_criterion_8_integrability_regions():
    t0 = time.monotonic()
    expected = {
        (1, 0.7): (10 / 3, True, 10 / 3, True),
        (1, 0.6): (2.5, True, 2.5, True),
        (2, 1.5): (4.0, True, 4.0, True),
        (3, 2.0): (3.0, True, 3.0, True),
        (3, 2.2): (3.75, True, 3.75, True),
        (5, 4.5): (10.0, True, 10.0, True),
        (1, 1.0): (math.inf, True, math.inf, True),
        (2, 2.0): (math.inf, True, math.inf, True),
        (2, 5.0): (math.inf, False, math.inf, False),
        (4, 7.0): (math.inf, False, math.inf, False),
    }
    tables_ok = True
    for (n, sigma), (fu, fuo, hu, huo) in expected.items():
        full, hy = lp_region(TransformProblem(0.8, 1.0, math.pi, sigma, n))
        good = (
            full.p_lower == 1.0
            and full.lower_open
            and full.upper_open == fuo
            and (
                math.isinf(full.p_upper)
                if math.isinf(fu)
                else abs(full.p_upper - fu) < 1e-12
            )
            and hy is not None
            and hy.p_lower == 2.0
            and not hy.lower_open
            and hy.upper_open == huo
            and (
                math.isinf(hy.p_upper)
                if math.isinf(hu)
                else abs(hy.p_upper - hu) < 1e-12
            )
        )
        tables_ok = tables_ok and good
    tp = TransformProblem(0.8, 1.0, math.pi, 0.7, 1)
    verdicts = {p: lp_numerical_check(tp, p) for p in (1.5, 2.0, 4.0)}
    numeric_ok = (
        verdicts[1.5] == "finite"
        and verdicts[2.0] == "finite"
        and verdicts[4.0] == "divergent-at-0"
    )
    ok = tables_ok and numeric_ok and time.monotonic() - t0 < 300.0
    line = report(
        8, ok, t0,
        f"tables {'match' if tables_ok else 'WRONG'}; numerical p=1.5/2/4 -> "
        + "/".join(verdicts[p] for p in (1.5, 2.0, 4.0)),
    )
    assert ok, line


def test_criterion_9_gaussian_oracle():
    t0 = time.monotonic()
    tp = TransformProblem(1.0, 1.0, math.pi, 2.0, 1)
    worst = 0.0
    for xi in (0.3, 1.0):
        want = math.sqrt(math.pi) * math.exp(-math.pi ** 2 * xi ** 2)
        got = ml_transform(tp, xi)
        worst = max(worst, abs(got - want) / want)
    ok = worst < 1e-6 and time.monotonic() - t0 < 30.0
    line = report(9, ok, t0, f"worst relative deviation {worst:.3e} (< 1e-6)")
    assert ok, line
