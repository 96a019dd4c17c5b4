"""Radial Fourier transform of Mittag-Leffler profiles.

The n-dimensional transform of E_{alpha,beta}(e^{i phi} |x|^sigma) reduces to
a one-dimensional Bessel-weighted integral.  After rescaling r -> r/|xi| it
splits, through a smooth partition of unity phi_cut + psi_cut = 1, into a
compact part

    M(xi) = integral_0^inf phi_cut(r) E(e^{i phi} (r/|xi|)^sigma) jbar_n(r) dr

and an oscillatory tail N(xi) of the same shape with psi_cut.  The full
transform is (2 pi/|xi|^n) (M + N).  The tail is evaluated either by
substituting the large-argument Bessel expansion (each e^{+-2 pi i r}-phased
term summed over half-period chunks with iterated Aitken acceleration, plus
an absolutely convergent remainder integral), or by applying the same
chunk-and-accelerate treatment to the raw integrand.

The integration-by-parts machinery transfers derivatives from the e^{ir}
phase onto contour kernels Q_l.  Structurally Q_0(u) is the contour integral
of e^{z^(1/alpha)} z^((1-beta)/alpha)/(z - e^{i phi} u^sigma), and
Q_l(u) = u^l (d/du)^l Q_0(u), which expands into pole kernels of order j+1
with coefficients C~_{j,l}(sigma) generated symbolically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import AccuracyError, ConvergenceError, DomainError
from .special_core import (
    Complex,
    CompensatedSum,
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    accelerated_limit,
    gauss_legendre_rule,
    integrate_finite,
)
from .mittag_leffler import (
    ContourSpec,
    MLParams,
    _contour_integral,
    default_contour,
    ml_eval,
)
from .bessel import (
    _asymptotic_eval,
    _expansion_coeffs,
    bessel_j_series,
    jbar,
)


@dataclass(frozen=True)
class TransformProblem:
    """Parameters of the profile E_{alpha,beta}(e^{i phi} |x|^sigma) on R^n.

    The phase must lie in the algebraic-decay sector |phi| > pi alpha/2;
    tail asymptotics additionally need sigma > (n-1)/2, which is enforced by
    the tail operations rather than here.
    """

    alpha: float
    beta: float
    phi: float
    sigma: float
    n: int

    def __post_init__(self) -> None:
        MLParams(self.alpha, self.beta)  # validates alpha, beta
        if not (-math.pi < self.phi <= math.pi):
            raise DomainError(f"phi must lie in (-pi, pi], got {self.phi}")
        if not abs(self.phi) > math.pi * self.alpha / 2.0:
            raise DomainError(
                f"|phi| > pi*alpha/2 required for algebraic decay, got "
                f"|phi| = {abs(self.phi):.6f} <= {math.pi * self.alpha / 2:.6f}"
            )
        if not self.sigma > 0.0:
            raise DomainError(f"sigma > 0 required, got {self.sigma}")
        if self.n < 1 or self.n != int(self.n):
            raise DomainError(f"n must be a positive integer, got {self.n}")

    @property
    def ml(self) -> MLParams:
        return MLParams(self.alpha, self.beta)

    @property
    def tail_admissible(self) -> bool:
        return self.sigma > 0.5 * (self.n - 1)


@dataclass(frozen=True)
class TailStrategy:
    """How the oscillatory tail is evaluated.

    kind "BesselExpansionAccelerated" substitutes the order-M large-argument
    expansion; "DirectPeriodSum" chunk-accelerates the raw integrand.  M must
    exceed (n-1)/2 for the remainder term to be absolutely integrable.
    """

    kind: str
    M: int
    accel_order: int = 6

    def __post_init__(self) -> None:
        if self.kind not in ("BesselExpansionAccelerated", "DirectPeriodSum"):
            raise DomainError(f"unknown tail strategy kind {self.kind!r}")
        if self.M < 1:
            raise DomainError("expansion order M >= 1 required")
        if not 2 <= self.accel_order <= 12:
            raise DomainError(
                f"accel_order must be in [2, 12], got {self.accel_order}"
            )


def default_strategy(n: int) -> TailStrategy:
    """Smallest admissible expansion order for dimension n."""
    return TailStrategy(
        kind="BesselExpansionAccelerated", M=(n - 1) // 2 + 1, accel_order=6
    )


# ---------------------------------------------------------------------------
# Smooth cutoff pair
# ---------------------------------------------------------------------------


def _bump(t: float) -> float:
    return math.exp(-1.0 / t) if t > 0.0 else 0.0


def cutoff_phi(r: float) -> float:
    """Smooth transition equal to 1 on [-1, 1], supported in [-2, 2]."""
    t = abs(r)
    hi = _bump(2.0 - t)
    lo = _bump(t - 1.0)
    if hi == 0.0:
        return 0.0
    return hi / (hi + lo)


def cutoff_psi(r: float) -> float:
    """Complement 1 - cutoff_phi: vanishes on [-1, 1], equals 1 beyond 2."""
    return 1.0 - cutoff_phi(r)


_MAX_CUTOFF_DERIVATIVE = 6


@lru_cache(maxsize=1)
def _psi_derivative_lambdas() -> tuple:
    # Closed-form derivatives on the transition interval (1, 2), generated
    # once by symbolic differentiation.
    import sympy as sp

    r = sp.symbols("r", positive=True)
    hi = sp.exp(-1 / (2 - r))
    lo = sp.exp(-1 / (r - 1))
    psi = 1 - hi / (hi + lo)
    funcs = []
    expr = psi
    for _ in range(_MAX_CUTOFF_DERIVATIVE):
        expr = sp.diff(expr, r)
        funcs.append(sp.lambdify(r, expr, modules="math"))
    return tuple(funcs)


def cutoff_derivative(m: int, r: float) -> float:
    """m-th derivative of cutoff_psi for r >= 0; supported in [1, 2] for
    m >= 1.  Derivatives come from symbolic differentiation of the
    closed-form transition, not finite differences."""
    if m < 0 or m > _MAX_CUTOFF_DERIVATIVE:
        raise DomainError(
            f"derivative order must be in [0, {_MAX_CUTOFF_DERIVATIVE}]"
        )
    if m == 0:
        return cutoff_psi(r)
    # The transition has flat contact at both ends: all derivatives vanish
    # outside (1, 2), and the guard also avoids overflow in exp(-1/(r-1)).
    if r <= 1.0 + 1e-9 or r >= 2.0 - 1e-9:
        return 0.0
    return float(_psi_derivative_lambdas()[m - 1](r))


# ---------------------------------------------------------------------------
# Profile and chunked oscillatory summation
# ---------------------------------------------------------------------------


def _profile(tp: TransformProblem, xi_mag: float) -> Callable[[float], Complex]:
    phase = cmath.exp(1j * tp.phi)
    p = tp.ml
    sig = tp.sigma
    inv = 1.0 / xi_mag

    def g(r: float) -> Complex:
        return ml_eval(p, phase * (r * inv) ** sig)

    return g


def _require_xi(xi_mag: float) -> None:
    if not xi_mag > 0.0:
        raise DomainError(f"xi_mag > 0 required, got {xi_mag}")


def _require_tail_scope(tp: TransformProblem) -> None:
    if not tp.tail_admissible:
        raise DomainError(
            f"tail asymptotics require sigma > (n-1)/2 = "
            f"{0.5 * (tp.n - 1)}, got sigma = {tp.sigma}"
        )


def _accelerated_chunks(
    chunk_values: Callable[[int], Complex],
    accel_order: int,
    cfg: QuadratureConfig,
    max_chunks: int = 400,
) -> Complex:
    """Limit of the cumulative chunk sum by iterated Aitken acceleration."""

    def gen():
        for k in range(max_chunks):
            yield chunk_values(k)

    value, _err, _used = accelerated_limit(
        gen(),
        order=accel_order,
        abs_tol=cfg.abs_tol,
        rel_tol=cfg.rel_tol,
        max_terms=max_chunks,
    )
    return value


# ---------------------------------------------------------------------------
# Compact part
# ---------------------------------------------------------------------------


def compute_M(
    tp: TransformProblem,
    xi_mag: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> Complex:
    """Compact part: integral of phi_cut(r) E(e^{i phi}(r/|xi|)^sigma)
    jbar_n(r) over the support [0, 2]."""
    _require_xi(xi_mag)
    g = _profile(tp, xi_mag)
    n = tp.n

    def f(r: float) -> Complex:
        w = cutoff_phi(r)
        if w == 0.0:
            return 0.0 + 0.0j
        return w * g(r) * jbar(n, r)

    # At small |xi| the profile turns over on the scale r ~ |xi|: hand the
    # layer to the adaptive quadrature as explicit breakpoints.
    pts = {1.0}
    for factor in (1.0, 5.0 ** (1.0 / tp.sigma), 40.0 ** (1.0 / tp.sigma)):
        x = xi_mag * factor
        if 1e-14 < x < 1.0:
            pts.add(x)
    return integrate_finite(f, 0.0, 2.0, cfg, points=sorted(pts)).value


# ---------------------------------------------------------------------------
# Oscillatory tail
# ---------------------------------------------------------------------------

_CHUNK_ORDER = 16  # one half-oscillation per chunk: Gauss-Legendre 16 is ample


def _tail_coefficient_pairs(n: int, M: int) -> tuple[tuple, bool]:
    """Scaled expansion coefficients of jbar_n and whether a remainder
    integral is needed.

    jbar_n(r) = sum_l sum_pm c_l^pm (2 pi)^(-(l+1/2)) e^{+-2 pi i r}
    r^((n-1)/2 - l) + r^(n/2) L(2 pi r; M).  For n = 1 the kernel is exactly
    cos(2 pi r)/pi: a single l = 0 pair and no remainder.
    """
    if n == 1:
        c0 = 1.0 / math.sqrt(2.0 * math.pi) + 0.0j
        pairs = ((c0, c0),) + ((0.0 + 0.0j, 0.0 + 0.0j),) * M
        return pairs, False
    lam = complex(0.5 * n - 1.0)
    return _expansion_coeffs(lam, M), True


def _bessel_remainder(lam: float, x: float, coeffs: tuple) -> Complex:
    # L(x; M) = J_lambda(x) - order-M truncation; beyond the series domain
    # the order-6 expansion stands in for J (error ~2e-12 at the switch).
    if x <= 40.0:
        ref = bessel_j_series(lam, x)
    else:
        ref = _asymptotic_eval(_expansion_coeffs(complex(lam), 6), x)
    return ref - _asymptotic_eval(coeffs, x)


def _compute_N_expansion(
    tp: TransformProblem,
    xi_mag: float,
    strategy: TailStrategy,
    cfg: QuadratureConfig,
) -> Complex:
    n, M = tp.n, strategy.M
    g = _profile(tp, xi_mag)
    pairs, need_remainder = _tail_coefficient_pairs(n, M)
    two_pi = 2.0 * math.pi

    # Shared per-chunk node data: psi(r) g(r) evaluated once, reused by every
    # phased term and by the remainder integral.
    nodes, weights = gauss_legendre_rule(_CHUNK_ORDER)
    rows: list[tuple[np.ndarray, np.ndarray]] = []

    def chunk_data(k: int) -> tuple[np.ndarray, np.ndarray]:
        while len(rows) <= k:
            i = len(rows)
            a = 1.0 + 0.5 * i
            r = a + 0.25 * (nodes + 1.0)
            vals = np.array(
                [0.25 * w * cutoff_psi(ri) * g(ri) for w, ri in zip(weights, r)]
            )
            rows.append((r, vals))
        return rows[k]

    total = CompensatedSum()
    for ell in range(M + 1):
        cp, cm = pairs[ell]
        scale = two_pi ** (-(ell + 0.5))
        if cp == 0 and cm == 0:
            continue
        power = 0.5 * (n - 1) - ell
        for coeff, sign in ((cp, 1.0), (cm, -1.0)):

            def chunk(k: int, s=sign, pw=power) -> Complex:
                if k < 2:
                    # psi is non-analytic at the flat contacts r = 1, 2;
                    # fixed-order nodes lose ~1e-10 there, so refine
                    a = 1.0 + 0.5 * k
                    return integrate_finite(
                        lambda ri: cutoff_psi(ri)
                        * g(ri)
                        * cmath.exp(1j * s * two_pi * ri)
                        * ri ** pw,
                        a,
                        a + 0.5,
                        cfg,
                    ).value
                r, vals = chunk_data(k)
                phases = np.exp(1j * s * two_pi * r)
                return complex(np.sum(vals * phases * r ** pw))

            lim = _accelerated_chunks(chunk, strategy.accel_order, cfg)
            total.add(coeff * scale * lim)

    if need_remainder:
        lam = 0.5 * n - 1.0
        half = 0.5 * n

        def l_chunk(k: int) -> Complex:
            if k < 2:
                a = 1.0 + 0.5 * k
                return integrate_finite(
                    lambda ri: cutoff_psi(ri)
                    * g(ri)
                    * _bessel_remainder(lam, two_pi * ri, pairs)
                    * ri ** half,
                    a,
                    a + 0.5,
                    cfg,
                ).value
            r, vals = chunk_data(k)
            rem = np.array(
                [_bessel_remainder(lam, two_pi * ri, pairs) for ri in r]
            )
            return complex(np.sum(vals * rem * r ** half))

        total.add(_accelerated_chunks(l_chunk, strategy.accel_order, cfg))
    return total.value


def _compute_N_direct(
    tp: TransformProblem,
    xi_mag: float,
    strategy: TailStrategy,
    cfg: QuadratureConfig,
) -> Complex:
    n = tp.n
    g = _profile(tp, xi_mag)

    def chunk(k: int) -> Complex:
        a = 1.0 + 0.5 * k
        b = a + 0.5

        def f(r: float) -> Complex:
            w = cutoff_psi(r)
            if w == 0.0:
                return 0.0 + 0.0j
            return w * g(r) * jbar(n, r)

        return integrate_finite(f, a, b, cfg).value

    return _accelerated_chunks(chunk, strategy.accel_order, cfg)


def compute_N(
    tp: TransformProblem,
    xi_mag: float,
    strategy: TailStrategy | None = None,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> Complex:
    """Oscillatory tail: integral of psi_cut(r) E(e^{i phi}(r/|xi|)^sigma)
    jbar_n(r) over [1, infinity), chunked at half-periods of the kernel
    phase and accelerated."""
    _require_xi(xi_mag)
    _require_tail_scope(tp)
    if strategy is None:
        strategy = default_strategy(tp.n)
    if not strategy.M > 0.5 * (tp.n - 1):
        raise DomainError(
            f"expansion order M = {strategy.M} must exceed (n-1)/2 = "
            f"{0.5 * (tp.n - 1)}"
        )
    if strategy.kind == "DirectPeriodSum":
        return _compute_N_direct(tp, xi_mag, strategy, cfg)
    return _compute_N_expansion(tp, xi_mag, strategy, cfg)


def min_ibp_order(n: int) -> int:
    """Smallest integer N with N > (n-1)/2 + 1, the parts-integration depth
    that makes every tail integrand absolutely integrable in dimension n."""
    if not (isinstance(n, int) and n >= 1):
        raise DomainError(f"dimension must be a positive integer, got {n}")
    return (n + 1) // 2 + 1


def ml_transform(
    tp: TransformProblem,
    xi_mag: float,
    strategy: TailStrategy | None = None,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> Complex:
    """Full transform (2 pi/|xi|^n)(M + N)."""
    _require_xi(xi_mag)
    m_part = compute_M(tp, xi_mag, cfg)
    n_part = compute_N(tp, xi_mag, strategy, cfg)
    return 2.0 * math.pi / xi_mag ** tp.n * (m_part + n_part)


def transform_direct(
    tp: TransformProblem,
    xi_mag: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    accel_order: int = 6,
) -> Complex:
    """Single-pass evaluation of the unsplit integrand (no cutoff split):
    head on [0, 2.5] plus accelerated half-period chunks beyond."""
    _require_xi(xi_mag)
    g = _profile(tp, xi_mag)
    n = tp.n

    def f(r: float) -> Complex:
        return g(r) * jbar(n, r)

    head = integrate_finite(f, 0.0, 2.5, cfg, points=[1.0, 2.0]).value

    def chunk(k: int) -> Complex:
        return integrate_finite(f, 2.5 + 0.5 * k, 3.0 + 0.5 * k, cfg).value

    return head + _accelerated_chunks(chunk, accel_order, cfg)


# ---------------------------------------------------------------------------
# Reference transform of a generic radial profile
# ---------------------------------------------------------------------------


def fourier_radial_reference(
    f0: Callable[[float], Complex],
    n: int,
    xi_mag: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> Complex:
    """n-dimensional radial Fourier transform of the profile f0:

        (2 pi / |xi|^(n/2-1)) integral_0^inf f0(r) J_(n/2-1)(2 pi |xi| r)
        r^(n/2) dr

    evaluated as 2 pi |xi|^(1-n) times the accelerated half-period chunk sum
    of f0(r) jbar_n(|xi| r).  Intended for decaying, non-oscillatory
    profiles."""
    if n < 1:
        raise DomainError("n >= 1 required")
    _require_xi(xi_mag)
    half_period = 0.5 / xi_mag

    def chunk(k: int) -> Complex:
        a = k * half_period
        b = a + half_period

        def f(r: float) -> Complex:
            return f0(r) * jbar(n, xi_mag * r)

        return integrate_finite(f, a, b, cfg).value

    def gen():
        stale = 0
        for k in range(4000):
            v = chunk(k)
            yield v
            # Hard stop once the profile is long dead, so acceleration does
            # not chase rounding noise.
            if abs(v) < 1e-16:
                stale += 1
                if stale > 6:
                    return
            else:
                stale = 0

    value, _err, used = accelerated_limit(
        gen(),
        order=6,
        abs_tol=cfg.abs_tol,
        rel_tol=cfg.rel_tol,
        max_terms=4000,
    )
    return 2.0 * math.pi * xi_mag ** (1 - n) * value


# ---------------------------------------------------------------------------
# Contour kernels of the integration-by-parts identity
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _qtilde_constants(ell: int, sigma: float) -> tuple:
    """Coefficients C~_{j,ell}(sigma), j = 1..ell, of the expansion

        u^ell d^ell/du^ell (z - E u^sigma)^(-1)
            = sum_j C~_{j,ell} E^j u^(j sigma) (z - E u^sigma)^(-(j+1)).

    Generated by symbolic differentiation: the recurrence
    A_{j,l+1} = A_{j,l} (j S - l) + A_{j-1,l} j S over polynomials in S is
    exactly the term-by-term derivative of the ansatz above.
    """
    import sympy as sp

    S = sp.symbols("S")
    table: dict[int, sp.Expr] = {1: S}
    for level in range(1, ell):
        nxt: dict[int, sp.Expr] = {}
        for j in range(1, level + 2):
            expr = sp.Integer(0)
            if j in table:
                expr += table[j] * (j * S - level)
            if j - 1 in table:
                expr += table[j - 1] * j * S
            nxt[j] = sp.expand(expr)
        table = nxt
    return tuple(
        float(table[j].subs(S, sp.Float(sigma))) for j in range(1, ell + 1)
    )


def q_kernel(
    tp: TransformProblem,
    ell: int,
    r: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> Complex:
    """Contour kernel of the derivative-transfer identity.

    ell = 0: contour integral of e^{z^(1/alpha)} z^((1-beta)/alpha) /
    (z - e^{i phi} r^sigma); ell >= 1: the linear combination of pole kernels
    of orders j+1 equal to r^ell times the ell-th derivative of the ell = 0
    kernel in r."""
    if ell < 0:
        raise DomainError("ell >= 0 required")
    if r < 0.0:
        raise DomainError("r >= 0 required")
    p = tp.ml
    contour = default_contour(p, tp.phi)
    w = cmath.exp(1j * tp.phi) * r ** tp.sigma

    if ell == 0:
        return _contour_integral(p, contour, lambda z: 1.0 / (z - w), cfg).value
    if r == 0.0:
        return 0.0 + 0.0j
    consts = _qtilde_constants(ell, tp.sigma)
    phase = cmath.exp(1j * tp.phi)
    total = CompensatedSum()
    for j, c in enumerate(consts, start=1):
        if c == 0.0:
            continue
        integral = _contour_integral(
            p, contour, lambda z, m=j + 1: (z - w) ** -m, cfg
        ).value
        total.add(c * phase ** j * r ** (j * tp.sigma) * integral)
    return total.value


class _KernelInterpolant:
    """Chebyshev fit of a smooth kernel on a log axis, so the oscillatory
    quadratures do not re-run contour integrals at every node."""

    def __init__(
        self,
        func: Callable[[float], Complex],
        u_lo: float,
        u_hi: float,
        tol: float = 1e-9,
    ) -> None:
        if not 0.0 < u_lo < u_hi:
            raise DomainError("need 0 < u_lo < u_hi")
        self.t_lo = math.log(u_lo)
        self.t_hi = math.log(u_hi)
        degree = 32
        while True:
            k = np.arange(degree + 1)
            t = 0.5 * (self.t_lo + self.t_hi) + 0.5 * (
                self.t_hi - self.t_lo
            ) * np.cos(math.pi * k / degree)
            vals = np.array([func(math.exp(ti)) for ti in t])
            coeffs = np.polynomial.chebyshev.chebfit(
                (2.0 * t - (self.t_lo + self.t_hi)) / (self.t_hi - self.t_lo),
                vals,
                degree,
            )
            # Check halfway between fit nodes.
            mid = 0.5 * (t[:-1] + t[1:])
            probe = np.array([func(math.exp(ti)) for ti in mid[::4]])
            approx = self._eval_t(coeffs, mid[::4])
            scale = max(np.max(np.abs(vals)), 1e-300)
            if np.max(np.abs(probe - approx)) <= tol * scale:
                self.coeffs = coeffs
                return
            if degree >= 512:
                raise AccuracyError(
                    "kernel interpolation failed to reach tolerance"
                )
            degree *= 2

    def _eval_t(self, coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
        x = (2.0 * t - (self.t_lo + self.t_hi)) / (self.t_hi - self.t_lo)
        return np.polynomial.chebyshev.chebval(x, coeffs)

    def __call__(self, u: float) -> Complex:
        t = math.log(u)
        x = (2.0 * t - (self.t_lo + self.t_hi)) / (self.t_hi - self.t_lo)
        return complex(np.polynomial.chebyshev.chebval(x, self.coeffs))


_IBP_MAX_CHUNKS = 150


def _oscillatory_power_sum(
    kernel: Callable[[float], Complex],
    power: float,
    weight: Callable[[float], float],
    accel_order: int,
    cfg: QuadratureConfig,
) -> Complex:
    """Accelerated value of integral_1^inf e^{ir} r^power weight(r)
    kernel(r) dr, split at consecutive multiples of pi."""

    def f(r: float) -> Complex:
        w = weight(r)
        if w == 0.0:
            return 0.0 + 0.0j
        return cmath.exp(1j * r) * r ** power * w * kernel(r)

    boundaries = [1.0] + [math.pi * k for k in range(1, _IBP_MAX_CHUNKS + 2)]

    def chunk(k: int) -> Complex:
        return integrate_finite(f, boundaries[k], boundaries[k + 1], cfg).value

    return _accelerated_chunks(
        chunk, accel_order, cfg, max_chunks=_IBP_MAX_CHUNKS
    )


def _falling(x: float, m: int) -> float:
    out = 1.0
    for i in range(m):
        out *= x - i
    return out


def ibp_identity_check(
    tp: TransformProblem,
    xi_mag: float,
    ell: int,
    N: int,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Relative difference between the oscillatory integral

        integral_0^inf e^{ir} r^((n-1)/2 - ell) psi_cut(r) Q_0(r/|xi|) dr

    and its N-fold derivative-transferred form

        i^N sum_{l1+l2+l3=N} (N!/(l1! l2! l3!)) ((n-1)/2 - ell)_(l1, falling)
        integral e^{ir} r^((n-1)/2 - ell - N + l2) psi^(l2)(r)
        Q_(l3)(r/|xi|) dr.

    Both sides are quadratured independently; the contour kernels are
    interpolated once on a log axis before the oscillatory sweeps."""
    _require_xi(xi_mag)
    _require_tail_scope(tp)
    if N not in (1, 2, 3):
        raise DomainError("N must be 1, 2, or 3")
    if ell not in (0, 1):
        raise DomainError("ell must be 0 or 1")

    r_max = math.pi * (_IBP_MAX_CHUNKS + 2)
    u_lo = 0.5 / xi_mag
    u_hi = 1.05 * r_max / xi_mag
    tables = [
        _KernelInterpolant(
            lambda u, L=ell3: q_kernel(tp, L, u, cfg), u_lo, u_hi
        )
        for ell3 in range(N + 1)
    ]

    base_power = 0.5 * (tp.n - 1) - ell
    lhs = _oscillatory_power_sum(
        lambda r: tables[0](r / xi_mag), base_power, cutoff_psi, 6, cfg
    )

    rhs = CompensatedSum()
    for l1 in range(N + 1):
        for l2 in range(N + 1 - l1):
            l3 = N - l1 - l2
            c = (
                math.factorial(N)
                / (
                    math.factorial(l1)
                    * math.factorial(l2)
                    * math.factorial(l3)
                )
                * _falling(base_power, l1)
            )
            if c == 0.0:
                continue
            power = base_power - N + l2
            kern = lambda r, t=tables[l3]: t(r / xi_mag)
            if l2 == 0:
                val = _oscillatory_power_sum(kern, power, cutoff_psi, 6, cfg)
            else:
                # psi^(l2) is supported in [1, 2]: a single smooth panel.
                def f(r: float, m=l2, pw=power, kn=kern) -> Complex:
                    return (
                        cmath.exp(1j * r)
                        * r ** pw
                        * cutoff_derivative(m, r)
                        * kn(r)
                    )

                val = integrate_finite(f, 1.0, 2.0, cfg).value
            rhs.add(c * val)
    rhs_val = (1j) ** N * rhs.value
    return abs(lhs - rhs_val) / abs(lhs)
