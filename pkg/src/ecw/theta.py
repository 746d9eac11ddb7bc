"""Weierstrass-type theta functions via two independent routes.

The central object is the normalized sigma function

    sigma(tau, z) = (y^{1/2} - y^{-1/2}) / (2 pi i)
                    * prod_{n>0} (1 - q^n y)(1 - q^n y^{-1}) / (1 - q^n)^2
                  = z * exp( - sum_{k>=1} E_{2k}(tau) z^{2k} / (2k) )

with q = exp(2 pi i tau), y = exp(2 pi i z), y^{1/2} := exp(pi i z) always
computed from z directly, and E_{2k} the raw lattice-normalized Eisenstein
values 2 zeta(2k) e_{2k}(q).  The two expressions were matched numerically
coefficient-by-coefficient in log(sigma/z); the exponent runs over even
powers z^{2k} and the global 1/(2 pi i) prefactor on the product side is
what makes sigma'(tau, 0) = 1.  This normalization is frozen here and used
by every downstream module; upsilon = -y^{1/2} sigma inherits it, so
upsilon'(tau, 0) = -1.

Formal expansions use the scaled variable w = 2 pi i z: the returned
series carry exact rational q-coefficients s_m with the convention that
the coefficient of z^m in sigma is s_m * (2 pi i)^{m-1} (and s_m * (2 pi
i)^m for the Witten series, which is normalized to constant term 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .modular import eisenstein_qexp, raw_factor
from .qseries import PowerSeries, QExp, SeriesError, one_minus_q_product
from .sl2 import IDENTITY, SL2Z

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class TauPoint:
    """A point tau in the upper half-plane with its nome q = e^{2 pi i tau}."""

    tau: complex

    def __post_init__(self):
        if complex(self.tau).imag <= 0:
            raise ValueError("tau must have positive imaginary part")

    @property
    def q(self) -> complex:
        return cmath.exp(TWO_PI_I * complex(self.tau))


@dataclass
class ThetaValue:
    value: complex
    method: str
    truncation: dict = field(default_factory=dict)
    error_bound: float = 0.0


# ---------------------------------------------------------------------------
# numeric product route
# ---------------------------------------------------------------------------


def _product_tail_bound(q: complex, y: complex, n_terms: int) -> float:
    aq = abs(q)
    if aq >= 1:
        return float("inf")
    ay = abs(y)
    scale = ay + 1.0 / ay + 2.0
    return aq ** (n_terms + 1) * scale / (1.0 - aq)


def sigma_value(tau: TauPoint, z: complex, n_terms: int = 60) -> complex:
    """Numeric sigma via the product formula (normalized: sigma/z -> 1)."""
    q = tau.q
    y = cmath.exp(TWO_PI_I * z)
    half = cmath.exp(1j * math.pi * z)
    val = (half - 1.0 / half) / TWO_PI_I
    qn = 1.0 + 0j
    for n in range(1, n_terms + 1):
        qn *= q
        val *= (1 - qn * y) * (1 - qn / y) / (1 - qn) ** 2
    return val


def sigma_product(tau: TauPoint, z: complex, n_terms: int = 60) -> ThetaValue:
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    val = sigma_value(tau, z, n_terms)
    y = cmath.exp(TWO_PI_I * z)
    bound = abs(val) * _product_tail_bound(tau.q, y, n_terms)
    return ThetaValue(val, "product", {"product_terms": n_terms}, bound)


def upsilon_value(tau: TauPoint, z: complex, n_terms: int = 60) -> complex:
    """Numeric upsilon = -y^{1/2} sigma via its own product formula."""
    q = tau.q
    y = cmath.exp(TWO_PI_I * z)
    val = (1 - y) / TWO_PI_I
    qn = 1.0 + 0j
    for n in range(1, n_terms + 1):
        qn *= q
        val *= (1 - qn * y) * (1 - qn / y) / (1 - qn) ** 2
    return val


def upsilon(tau: TauPoint, z: complex, n_terms: int = 60) -> ThetaValue:
    """Product-form upsilon with the -y^{1/2} sigma cross-check recorded."""
    val = upsilon_value(tau, z, n_terms)
    other = -cmath.exp(1j * math.pi * z) * sigma_value(tau, z, n_terms)
    scale = max(abs(val), abs(other), 1e-300)
    resid = abs(val - other) / scale
    if resid > 1e-8:
        raise SeriesError(f"upsilon internal consistency failure: relative residual {resid:.3e}")
    y = cmath.exp(TWO_PI_I * z)
    bound = abs(val) * _product_tail_bound(tau.q, y, n_terms)
    tv = ThetaValue(val, "product", {"product_terms": n_terms}, bound)
    tv.truncation["consistency_residual"] = resid
    return tv


# ---------------------------------------------------------------------------
# numeric Eisenstein-exponential route
# ---------------------------------------------------------------------------


def sigma_eisenstein(tau: TauPoint, z: complex, z_order: int = 40, q_order: int = 60) -> ThetaValue:
    """sigma via z * exp(-sum E_{2k} z^{2k} / (2k)) with raw Eisenstein values."""
    if z_order < 2 or q_order < 1:
        raise ValueError("orders must be >= 2 (z) and >= 1 (q)")
    q = tau.q
    terms = []
    expo = 0j
    for k in range(1, z_order // 2 + 1):
        ek = eisenstein_qexp(2 * k, q_order).qexp.evaluate(q)
        raw = raw_factor(2 * k) * ek
        t = raw * z ** (2 * k) / (2 * k)
        terms.append(abs(t))
        expo -= t
    if len(terms) >= 4 and terms[-1] > terms[-2] > terms[-3]:
        raise SeriesError("sigma_eisenstein: z-series terms are not decaying; |z| too large for this z_order")
    val = z * cmath.exp(expo)
    tail = terms[-1] if terms else 0.0
    bound = abs(val) * (tail + abs(q) ** q_order)
    return ThetaValue(val, "eisenstein", {"z_order": z_order, "q_order": q_order}, bound)


# ---------------------------------------------------------------------------
# formal q-expansion route (scaled variable w = 2 pi i z)
# ---------------------------------------------------------------------------


def _qexp_const(c: Fraction, q_order: int) -> QExp:
    return QExp.constant(Fraction(c), q_order)


def sigma_qexp(z_order: int, q_order: int) -> PowerSeries:
    """Formal sigma as a series in z with exact QExp coefficients.

    Returns sum_m s_m(q) z^m (only odd m occur, s_1 = 1) under the scaled
    convention: the true coefficient of z^m is s_m(q) * (2 pi i)^{m-1}.
    Equivalently the returned series is (2 pi i) sigma as a function of
    w = 2 pi i z.
    """
    if z_order < 2 or q_order < 1:
        raise ValueError("orders must be >= 2 (z) and >= 1 (q)")
    zero = QExp.zeros(q_order)
    # 2 sinh(w/2) = sum_j w^{2j+1} / (4^j (2j+1)!)
    pref = [zero] * z_order
    j = 0
    while 2 * j + 1 < z_order:
        pref[2 * j + 1] = _qexp_const(Fraction(1, 4**j * math.factorial(2 * j + 1)), q_order)
        j += 1
    series = PowerSeries(pref, z_order, zero)
    for n in range(1, q_order):
        series = series * _one_minus_qn_exp(n, z_order, q_order, sign=+1)
        series = series * _one_minus_qn_exp(n, z_order, q_order, sign=-1)
    eta2_inv = one_minus_q_product(q_order, power=-2)
    return series.map_coefficients(lambda c: c * eta2_inv)


def _one_minus_qn_exp(n: int, z_order: int, q_order: int, sign: int) -> PowerSeries:
    """(1 - q^n e^{sign w}) as a w-series with QExp coefficients."""
    zero = QExp.zeros(q_order)
    coeffs = [zero] * z_order
    one = QExp.one(q_order)
    qn = QExp.monomial(n, q_order)
    coeffs[0] = one - qn
    fact = 1
    for m in range(1, z_order):
        fact *= m
        coeffs[m] = qn * Fraction(-(sign**m), fact)
    return PowerSeries(coeffs, z_order, zero)


def sigma_normalized_part(z_order: int, q_order: int) -> PowerSeries:
    """S(w) = sigma/z as a w-series: even powers only, constant term 1."""
    sig = sigma_qexp(z_order + 1, q_order)
    zero = QExp.zeros(q_order)
    return PowerSeries(sig.coeffs[1 : z_order + 1], z_order, zero)


def witten_series(z_order: int, q_order: int) -> PowerSeries:
    """Wit = z / sigma = 1 / S(w): constant term 1, even w-powers only.

    Scaled convention: the true coefficient of z^m is the returned
    coefficient times (2 pi i)^m.
    """
    return sigma_normalized_part(z_order, q_order).reciprocal()


def eval_scaled_series(series: PowerSeries, tau: TauPoint, z: complex, shift: int = 0) -> complex:
    """Evaluate a w-convention series numerically at (tau, z).

    ``shift`` is the power offset of the 2 pi i factors: coefficient m
    carries (2 pi i)^{m + shift}.  sigma_qexp uses shift = -1, the Witten
    series shift = 0.
    """
    q = tau.q
    total = 0j
    for m, c in enumerate(series.coeffs):
        if isinstance(c, QExp):
            cv = c.evaluate(q)
        else:
            cv = complex(float(c)) if isinstance(c, Fraction) else complex(c)
        if cv != 0:
            total += cv * TWO_PI_I ** (m + shift) * z**m
    return total


# ---------------------------------------------------------------------------
# transformation-law checkers
# ---------------------------------------------------------------------------


def check_quasiperiodicity(tau: TauPoint, z: complex, n_terms: int = 60) -> dict:
    """Residuals of sigma(z+1) = -sigma(z) and sigma(z+tau) = -q^{-1/2} y^{-1} sigma(z)."""
    s = sigma_value(tau, z, n_terms)
    s1 = sigma_value(tau, z + 1, n_terms)
    st = sigma_value(tau, z + complex(tau.tau), n_terms)
    factor = -cmath.exp(-1j * math.pi * complex(tau.tau)) * cmath.exp(-TWO_PI_I * z)
    return {
        "res_shift1": abs(s1 + s),
        "res_shift_tau": abs(st - factor * s),
    }


def check_modularity(tau: TauPoint, z: complex, gamma: SL2Z, n_terms: int = 60) -> float:
    """Residual of the weight -1, index 1/2 law under gamma in SL2(Z).

    sigma(gamma tau, z/(c tau + d)) = (c tau + d)^{-1}
        exp(pi i c z^2 / (c tau + d)) sigma(tau, z).
    """
    if gamma == IDENTITY:
        return 0.0
    t = complex(tau.tau)
    j = gamma.automorphy(t)
    lhs = sigma_value(TauPoint(gamma.act_tau(t)), z / j, n_terms)
    rhs = cmath.exp(1j * math.pi * gamma.c * z * z / j) * sigma_value(tau, z, n_terms) / j
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# germ extraction (restriction to the trivial bundle)
# ---------------------------------------------------------------------------


@dataclass
class Germ:
    coeffs: list
    aliasing_estimate: float
    radius_warning: bool


def germ_at_zero(f, tau: TauPoint, k_max: int, radius: float = 1.0, points: int | None = None) -> Germ:
    """Taylor coefficients c_0..c_{k_max} of z -> f(tau, z) at z = 0.

    Uses a discrete Cauchy integral on the circle |z| = radius/2 with
    M >= 4 k_max equispaced points.  The caller guarantees analyticity in
    the disc of the given radius; the aliasing error of c_k then scales
    like max|f| 2^{-M} / (radius/2)^k, which is reported.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    m_points = points if points is not None else max(4 * k_max, 8)
    if m_points < 4 * k_max:
        raise ValueError("need at least 4*k_max sample points")
    r = radius / 2.0
    samples = []
    for j in range(m_points):
        zj = r * cmath.exp(TWO_PI_I * j / m_points)
        samples.append(f(tau, zj))
    coeffs = []
    for k in range(k_max + 1):
        acc = 0j
        for j, fv in enumerate(samples):
            acc += fv * cmath.exp(-TWO_PI_I * j * k / m_points)
        coeffs.append(acc / (m_points * r**k))
    maxf = max(abs(v) for v in samples) if samples else 0.0
    alias = maxf * 2.0 ** (-m_points) / (1 - 2.0 ** (-m_points))
    estimate = alias / (r**k_max) if r > 0 else float("inf")
    # non-decaying scaled tail coefficients signal a too-optimistic radius
    scaled = [abs(c) * r**k for k, c in enumerate(coeffs)]
    warn = len(scaled) >= 4 and scaled[-1] > 10 * (1 + maxf) and scaled[-1] > scaled[-2] > scaled[-3]
    return Germ(coeffs, estimate, warn)
