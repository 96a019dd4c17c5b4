"""Mittag-Leffler function E_{alpha,beta} by Taylor series, by contour
integrals over a two-ray-plus-arc contour, and by a large-argument sector
expansion, together with the reciprocal-gamma contour identities and
sector growth/decay diagnostics.

Conventions.  The contour C(eps, omega) consists of the rays
arg z = +-omega, |z| >= eps and the arc |z| = eps, -omega <= arg z <= omega,
oriented positively (in along the lower ray, around the arc, out along the
upper ray).  Admissible openings satisfy pi*alpha/2 < omega < min(pi*alpha,
pi), which makes cos(omega/alpha) < 0 so the ray integrands decay
exponentially in the radial variable rho = |z|^(1/alpha).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import mpmath as mp

from .errors import AccuracyError, ConvergenceError, DomainError
from .special_core import (
    Complex,
    CompensatedSum,
    DEFAULT_QUADRATURE,
    IntegralResult,
    QuadratureConfig,
    _EPS,
    integrate_finite,
    integrate_semi_infinite,
    principal_pow,
    reciprocal_gamma,
)

# |z| below which the Taylor series is the evaluator of choice, and above
# which the truncated sector sum alone is accurate enough to skip contour
# quadrature.  Configuration, not contract: the overlap windows are tested.
SERIES_RADIUS = 5.0
SECTOR_SUM_RADIUS = 40.0


@dataclass(frozen=True)
class MLParams:
    """Order pair (alpha, beta) of E_{alpha,beta}."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 2.0):
            raise DomainError(f"0 < alpha < 2 required, got alpha = {self.alpha}")
        if not self.beta > 0.0:
            raise DomainError(f"beta > 0 required, got beta = {self.beta}")


@dataclass(frozen=True)
class ContourSpec:
    """Geometry of the integration contour: arc radius, ray opening, and the
    radial truncation point of the rays."""

    epsilon: float
    omega: float
    rho_max: float

    def __post_init__(self) -> None:
        if not self.epsilon > 0.0:
            raise DomainError(f"epsilon > 0 required, got {self.epsilon}")


def validate_contour(p: MLParams, c: ContourSpec) -> None:
    lo = math.pi * p.alpha / 2.0
    hi = min(math.pi * p.alpha, math.pi)
    if not (lo < c.omega < hi):
        raise DomainError(
            f"omega must satisfy {lo:.6f} < omega < {hi:.6f}, got {c.omega}"
        )
    # Ray truncation must put the exponential envelope below 1e-18.
    exponent = c.rho_max ** (1.0 / p.alpha) * math.cos(c.omega / p.alpha)
    if not math.exp(exponent) < 1e-18:
        raise DomainError(
            f"rho_max too small: ray envelope exp({exponent:.3f}) >= 1e-18"
        )


def default_contour(
    p: MLParams, phi: float | None = None, epsilon: float = 1.0
) -> ContourSpec:
    """Midpoint-of-admissible-interval contour.

    With a ray angle phi the opening is omega = (pi alpha/2 + min(|phi|,
    pi alpha))/2, maximizing the distance to both constraint boundaries;
    without one the full admissible interval (pi alpha/2, min(pi alpha, pi))
    is used.  rho_max comes from the 1e-18 envelope bound.
    """
    lo = math.pi * p.alpha / 2.0
    if phi is None:
        hi = min(math.pi * p.alpha, math.pi)
    else:
        hi = min(abs(phi), math.pi * p.alpha)
    if not hi > lo:
        raise DomainError(
            f"no admissible omega: need |phi| > pi*alpha/2 = {lo:.6f}, "
            f"got |phi| = {hi:.6f}"
        )
    omega = 0.5 * (lo + hi)
    rate = -math.cos(omega / p.alpha)
    rho_max = (42.0 / rate) ** p.alpha  # exp(-42) < 1e-18
    return ContourSpec(epsilon=epsilon, omega=omega, rho_max=rho_max)


@dataclass(frozen=True)
class RayArcDecomposition:
    """The three parameterized integrands whose sum is the contour integral.

    ray_plus / ray_minus take the radial variable rho = |z|^(1/alpha) on
    [epsilon^(1/alpha), infinity); arc takes the angle theta on
    [-omega, omega].  Each already includes the Jacobian of its
    parameterization, so integrating the three and summing gives the
    integral over the full contour.
    """

    ray_plus: Callable[[float], Complex]
    ray_minus: Callable[[float], Complex]
    arc: Callable[[float], Complex]
    rho_start: float
    omega: float
    decay_rate: float


def _decompose(
    p: MLParams,
    c: ContourSpec,
    factor: Callable[[Complex], Complex],
) -> RayArcDecomposition:
    """Ray/arc split of the integral of exp(z^(1/a)) z^((1-b)/a) factor(z) dz.

    On the rays z = rho^alpha e^{+-i omega}, dz = alpha rho^(alpha-1)
    e^{+-i omega} d rho; on the arc z = eps e^{i theta}, dz = i eps e^{i
    theta} d theta.  The lower ray is traversed inward, hence its sign.
    """
    a, b = p.alpha, p.beta
    eps, om = c.epsilon, c.omega
    rho0 = eps ** (1.0 / a)
    e_up = cmath.exp(1j * om / a)
    e_dn = cmath.exp(-1j * om / a)
    # alpha * e^{i omega (1 - beta + alpha)/alpha} rho^{alpha-beta} ... d rho
    pre_up = a * cmath.exp(1j * om * (1.0 - b + a) / a)
    pre_dn = a * cmath.exp(-1j * om * (1.0 - b + a) / a)
    z_up = cmath.exp(1j * om)
    z_dn = cmath.exp(-1j * om)
    eps_pow = eps ** ((1.0 - b) / a)

    def ray_plus(rho: float) -> Complex:
        z = (rho ** a) * z_up
        return pre_up * cmath.exp(rho * e_up) * rho ** (a - b) * factor(z)

    def ray_minus(rho: float) -> Complex:
        z = (rho ** a) * z_dn
        return -pre_dn * cmath.exp(rho * e_dn) * rho ** (a - b) * factor(z)

    def arc(theta: float) -> Complex:
        z = eps * cmath.exp(1j * theta)
        return (
            1j
            * eps
            * cmath.exp(rho0 * cmath.exp(1j * theta / a))
            * eps_pow
            * cmath.exp(1j * theta * (1.0 - b) / a)
            * cmath.exp(1j * theta)
            * factor(z)
        )

    return RayArcDecomposition(
        ray_plus=ray_plus,
        ray_minus=ray_minus,
        arc=arc,
        rho_start=rho0,
        omega=om,
        decay_rate=-math.cos(om / a),
    )


def _contour_integral(
    p: MLParams,
    c: ContourSpec,
    factor: Callable[[Complex], Complex],
    cfg: QuadratureConfig,
) -> IntegralResult:
    dec = _decompose(p, c, factor)
    # Conservative rate: the polynomial factor rho^(alpha-beta) and |factor|
    # erode the pure exponential envelope only logarithmically.
    rate = 0.9 * dec.decay_rate
    up = integrate_semi_infinite(dec.ray_plus, dec.rho_start, rate, cfg)
    dn = integrate_semi_infinite(dec.ray_minus, dec.rho_start, rate, cfg)
    arc = integrate_finite(dec.arc, -dec.omega, dec.omega, cfg)
    return IntegralResult(
        up.value + dn.value + arc.value, up.error + dn.error + arc.error
    )


def _series_mpmath(p: MLParams, z: Complex, tol: float, dps: int) -> Complex:
    # Self-verifying precision: after summing, the residual floor of the
    # working precision (10^(3-dps) * sum of |term|) must sit below the
    # requested tolerance of the result, else the run is repeated with more
    # digits.  The initial dps guess can be badly low when the double-pass
    # value it was derived from was itself cancellation noise.
    for _attempt in range(8):
        with mp.workdps(dps):
            zz = mp.mpc(z)
            # The gamma argument must be formed in working precision:
            # rounding alpha*k to a double costs O(1) absolute error at the
            # series peak.
            alpha = mp.mpf(p.alpha)
            beta = mp.mpf(p.beta)
            acc = mp.mpc(0)
            majorant = mp.mpf(0)
            power = mp.mpc(1)
            quiet = 0
            for k in range(0, 100000):
                term = power * mp.rgamma(alpha * k + beta)
                acc += term
                majorant += abs(term)
                power *= zz
                if abs(term) < tol * abs(acc):
                    quiet += 1
                    if quiet >= 3:
                        break
                else:
                    quiet = 0
            floor = mp.mpf(10) ** (3 - dps) * majorant
            if floor <= tol * abs(acc):
                return complex(acc)
            needed = int(mp.log10(majorant / abs(acc))) + 26
        dps = min(max(needed, 2 * dps), 1200)
    raise AccuracyError(
        "series cancellation exceeds the supported precision range"
    )


def ml_series(p: MLParams, z: Complex, tol: float = 1e-14) -> Complex:
    """Taylor series sum_{k>=0} z^k / Gamma(alpha k + beta).

    Truncates when the term magnitude stays below tol * |partial sum| for 3
    consecutive terms.  Accuracy domain |z| <= 10.  When cancellation in
    doubles would eat into the requested tolerance the sum is redone in
    higher precision.
    """
    z = complex(z)
    if abs(z) > 10.0:
        raise AccuracyError(
            f"ml_series accuracy domain is |z| <= 10, got |z| = {abs(z):.3f}"
        )
    if z == 0:
        return reciprocal_gamma(p.beta)
    # Log-form terms: exp(k log z - lgamma(alpha k + beta)) sidesteps the
    # double-range overflow of z**k that a running product hits near k=300.
    lnz = cmath.log(z)
    acc = CompensatedSum()
    majorant = 0.0
    quiet = 0
    for k in range(0, 4000):
        term = cmath.exp(k * lnz - math.lgamma(p.alpha * k + p.beta))
        acc.add(term)
        majorant += abs(term)
        s = acc.value
        if abs(term) < tol * max(abs(s), 1e-300):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    else:
        raise ConvergenceError("ml_series did not converge within 4000 terms")
    value = acc.value
    # Cancellation guard: rounding of the large intermediate terms caps the
    # achievable absolute accuracy at ~eps * majorant.
    if _EPS * majorant > 0.1 * tol * max(abs(value), 1e-300):
        ratio = majorant / max(abs(value), 1e-300)
        dps = min(max(18 + int(math.log10(max(ratio, 1.0))) + 8, 26), 400)
        return _series_mpmath(p, z, tol, dps)
    return value


def _series_unchecked(p: MLParams, z: Complex, max_terms: int = 20000) -> Complex:
    """Plain compensated series without the |z| gate; diagnostics only."""
    z = complex(z)
    if z == 0:
        return reciprocal_gamma(p.beta)
    lnz = cmath.log(z)
    acc = CompensatedSum()
    quiet = 0
    for k in range(max_terms):
        term = cmath.exp(k * lnz - math.lgamma(p.alpha * k + p.beta))
        acc.add(term)
        if abs(term) < 1e-17 * max(abs(acc.value), 1e-300):
            quiet += 1
            if quiet >= 3:
                return acc.value
        else:
            quiet = 0
    raise ConvergenceError("unchecked series did not converge")


def ml_contour(
    p: MLParams,
    z: Complex,
    c: ContourSpec,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> Complex:
    """E_{alpha,beta}(z) as (2 pi i alpha)^{-1} times the contour integral of
    exp(w^(1/alpha)) w^((1-beta)/alpha) / (w - z).

    Valid for |z| < epsilon or |arg z| > omega, where the pole w = z stays
    off the contour.
    """
    z = complex(z)
    validate_contour(p, c)
    if not (abs(z) < c.epsilon or abs(cmath.phase(z)) > c.omega):
        raise DomainError(
            f"contour representation requires |z| < {c.epsilon} or "
            f"|arg z| > {c.omega:.6f}; got z = {z}"
        )
    res = _contour_integral(p, c, lambda w: 1.0 / (w - z), cfg)
    return res.value / (2j * math.pi * p.alpha)


def ml_on_ray(
    p: MLParams,
    phi: float,
    r: float,
    c: ContourSpec | None = None,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    series_terms: int = 0,
) -> Complex:
    """E_{alpha,beta}(r e^{i phi}) for any r >= 0 through the explicit
    ray/arc split of the unit-arc contour with opening
    pi alpha/2 < omega < min(|phi|, pi alpha).

    series_terms = J >= 1 peels off the exact identity
        E(w) = -sum_{j=1}^{J} w^{-j}/Gamma(beta - alpha j)
               + w^{-J} (2 pi i alpha)^{-1} * integral of G(z) z^J/(z-w) dz,
    which removes the cancellation that otherwise grows with |w| (the moment
    integrals of G(z) z^{j-1} are reciprocal-gamma values).  J = 0 is the
    plain representation.  Large J inflates the ray integrand by rho^(alpha
    J) before the exponential takes over, so J is only worth its cost once
    |w|^J dominates that enlarged moment; keep J small when alpha is close
    to 2 and the ray decay is slow.
    """
    if r < 0.0:
        raise DomainError("r >= 0 required")
    if series_terms < 0:
        raise DomainError("series_terms >= 0 required")
    if abs(phi) <= math.pi * p.alpha / 2.0:
        raise DomainError(
            f"|phi| > pi*alpha/2 = {math.pi * p.alpha / 2.0:.6f} required, "
            f"got |phi| = {abs(phi):.6f}"
        )
    if c is None:
        c = default_contour(p, phi)
    validate_contour(p, c)
    if not abs(phi) > c.omega:
        raise DomainError(
            f"|phi| = {abs(phi):.6f} must exceed omega = {c.omega:.6f}"
        )
    a, b = p.alpha, p.beta
    om, eps = c.omega, c.epsilon
    J = series_terms
    w = r * cmath.exp(1j * phi)

    head = CompensatedSum()
    if J > 0:
        if r == 0.0:
            raise DomainError("series_terms > 0 requires r > 0")
        winv = 1.0 / w
        wpow = 1.0 + 0.0j
        for j in range(1, J + 1):
            wpow *= winv
            head.add(-wpow * reciprocal_gamma(b - a * j))

    rho0 = eps ** (1.0 / a)
    e_up = cmath.exp(1j * om / a)
    e_dn = cmath.exp(-1j * om / a)
    pre_up = a * cmath.exp(1j * om * ((1.0 - b) / a + J))
    pre_dn = a * cmath.exp(-1j * om * ((1.0 - b) / a + J))
    den_up = r * cmath.exp(1j * (phi - om))
    den_dn = r * cmath.exp(1j * (phi + om))
    eps_pow = eps ** ((1.0 - b) / a + J)

    def ray_plus(rho: float) -> Complex:
        return (
            pre_up
            * cmath.exp(rho * e_up)
            * rho ** (a - b + a * J)
            / (rho ** a - den_up)
        )

    def ray_minus(rho: float) -> Complex:
        return (
            -pre_dn
            * cmath.exp(rho * e_dn)
            * rho ** (a - b + a * J)
            / (rho ** a - den_dn)
        )

    def arc(theta: float) -> Complex:
        zc = eps * cmath.exp(1j * theta)
        return (
            1j
            * eps
            * cmath.exp(rho0 * cmath.exp(1j * theta / a))
            * eps_pow
            * cmath.exp(1j * theta * ((1.0 - b) / a + J))
            * cmath.exp(1j * theta)
            / (zc - w)
        )

    rate = 0.9 * (-math.cos(om / a))
    up = integrate_semi_infinite(ray_plus, rho0, rate, cfg)
    dn = integrate_semi_infinite(ray_minus, rho0, rate, cfg)
    ac = integrate_finite(arc, -om, om, cfg)
    contour = (up.value + dn.value + ac.value) / (2j * math.pi * a)
    if J > 0:
        contour *= w ** (-J)
    return head.value + contour


def ml_sector_asymptotic(p: MLParams, z: Complex, K: int) -> Complex:
    """Truncated large-argument expansion
    -sum_{k=1}^{K} z^{-k}/Gamma(beta - alpha k), valid in the decay sector
    |arg z| > pi*alpha/2 (accuracy domain |z| >= 20).

    Pole terms of Gamma(beta - alpha k) vanish through reciprocal_gamma.
    """
    if K < 0:
        raise DomainError("K >= 0 required")
    if K == 0:
        return 0.0 + 0.0j
    z = complex(z)
    if z == 0 or abs(cmath.phase(z)) <= math.pi * p.alpha / 2.0:
        raise DomainError(
            "sector expansion requires |arg z| > pi*alpha/2 "
            f"= {math.pi * p.alpha / 2.0:.6f}, got z = {z}"
        )
    acc = CompensatedSum()
    winv = 1.0 / z
    wpow = 1.0 + 0.0j
    for k in range(1, K + 1):
        wpow *= winv
        acc.add(-wpow * reciprocal_gamma(p.beta - p.alpha * k))
    return acc.value


def hankel_reciprocal_gamma(
    p: MLParams,
    c: ContourSpec,
    shift: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> Complex:
    """(2 pi i alpha)^{-1} times the contour integral of
    exp(z^(1/alpha)) z^((1-beta-shift)/alpha) dz.

    Substituting w = z^(1/alpha) reduces this to the classical reciprocal
    gamma contour integral: the value is 1/Gamma(beta + shift - alpha), so
    shift = alpha gives 1/Gamma(beta) and shift = 0 gives 1/Gamma(beta -
    alpha).
    """
    validate_contour(p, c)
    if not p.beta + shift > 0:
        raise DomainError("beta + shift must be positive")
    shifted = MLParams(p.alpha, p.beta + shift)
    res = _contour_integral(shifted, c, lambda w: 1.0 + 0.0j, cfg)
    return res.value / (2j * math.pi * p.alpha)


def _exponential_waves(p: MLParams, z: Complex) -> Complex:
    """Saddle contributions (1/alpha) z_m^((1-beta)/alpha) exp(z_m^(1/alpha))
    summed over the branches z_m = |z| e^{i(arg z + 2 pi m)} with
    |arg z + 2 pi m| <= pi*alpha.

    In the decay sector these are exponentially small but not negligible
    near the sector boundary or for alpha > 1 at moderate |z|; for alpha > 1
    the conjugate branch m = -sign(arg z) enters alongside m = 0.  A branch
    angle exactly on |angle| = pi*alpha takes weight 1/2, which is what
    makes alpha = 1 (where the two boundary branches coincide) come out
    right.
    """
    r = abs(z)
    phi = cmath.phase(z)
    r_root = r ** (1.0 / p.alpha)
    r_pow = r ** ((1.0 - p.beta) / p.alpha)
    total = 0.0 + 0.0j
    for m in (-1, 0, 1):
        ang = phi + 2.0 * math.pi * m
        gap = math.pi * p.alpha - abs(ang)
        if gap < -1e-9:
            continue
        weight = 0.5 if gap <= 1e-9 else 1.0
        root = r_root * cmath.exp(1j * ang / p.alpha)
        if root.real > 700.0:
            raise AccuracyError("exponential wave term overflows")
        total += (
            weight
            * r_pow
            * cmath.exp(1j * ang * (1.0 - p.beta) / p.alpha)
            * cmath.exp(root)
            / p.alpha
        )
    return total


def _sector_sum_adaptive(p: MLParams, z: Complex) -> tuple[Complex, float]:
    """Optimally truncated sector sum plus the exponentially small wave
    terms, with a first-omitted-term error estimate.

    Terms whose reciprocal gamma lands exactly on a pole zero are skipped:
    they carry no information about where the series stops being useful.
    """
    acc = CompensatedSum()
    winv = 1.0 / z
    wpow = 1.0 + 0.0j
    prev = math.inf
    omitted = math.inf
    majorant = 0.0
    for k in range(1, 60):
        wpow *= winv
        rg = reciprocal_gamma(p.beta - p.alpha * k)
        if rg == 0:
            continue
        mag_term = abs(wpow) * abs(rg)
        if mag_term > prev:
            omitted = mag_term
            break
        acc.add(-wpow * rg)
        majorant += mag_term
        prev = mag_term
        omitted = mag_term
        if mag_term < 1e-18 * max(abs(acc.value), 1e-300):
            break
    if majorant == 0.0 and math.isinf(omitted):
        # Every algebraic term sat on a gamma pole (alpha = 1 with integer
        # beta): the series is exactly zero and the waves are the value.
        omitted = 0.0
    wave = _exponential_waves(p, z)
    acc.add(wave)
    return acc.value, omitted + _EPS * (majorant + abs(wave))


def ml_eval(
    p: MLParams, z: Complex, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> Complex:
    """Dispatching evaluator.

    |z| <= 5: Taylor series.  Larger |z| requires the decay sector
    |arg z| > pi*alpha/2; there the ray/arc contour representation is used,
    switching to the truncated sector sum (with its exponentially small
    wave corrections) once its first-omitted-term estimate meets tolerance.
    Overlap windows between neighbouring methods agree to 1e-6 relative
    (tested).

    Accuracy caveat: the contour branch holds absolute error near 1e-12,
    so relative accuracy degrades for arguments where |E| itself sinks
    toward that floor (deep exponential decay at alpha near 1).
    """
    z = complex(z)
    absz = abs(z)
    if absz <= SERIES_RADIUS:
        return ml_series(p, z, tol=1e-14)
    phi = cmath.phase(z)
    if abs(phi) <= math.pi * p.alpha / 2.0:
        raise DomainError(
            f"|z| > {SERIES_RADIUS} inside the growth sector |arg z| <= "
            f"pi*alpha/2 = {math.pi * p.alpha / 2.0:.6f} is unsupported"
        )
    if absz >= SECTOR_SUM_RADIUS:
        value, err = _sector_sum_adaptive(p, z)
        if 30.0 * err <= max(1e-13, 1e-9 * abs(value)):
            return value
    return ml_on_ray(p, phi, absz, cfg=cfg)


def sector_decay_supremum(
    p: MLParams, phi: float, sigma: float, r_values
) -> list[float]:
    """Running maximum of r^sigma |E(e^{i phi} r^sigma)| over r_values.

    In the decay sector this sequence is bounded and stabilizes.
    """
    out: list[float] = []
    cur = 0.0
    for r in r_values:
        w = (r ** sigma) * cmath.exp(1j * phi)
        cur = max(cur, r ** sigma * abs(ml_eval(p, w)))
        out.append(cur)
    return out


def sector_growth_rate(p: MLParams, phi: float, r_values) -> float:
    """Mean of log|E(r e^{i phi})| / r^(1/alpha) over the given radii.

    Inside the growth sector |phi| < pi*alpha/2 this ratio approaches
    cos(phi/alpha).  Uses the ungated series, so keep the radii where
    exp(r^(1/alpha)) stays well inside double range.
    """
    vals = []
    for r in r_values:
        z = r * cmath.exp(1j * phi)
        e = _series_unchecked(p, z)
        vals.append(math.log(abs(e)) / r ** (1.0 / p.alpha))
    return sum(vals) / len(vals)
