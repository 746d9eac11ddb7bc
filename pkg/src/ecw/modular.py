"""Eisenstein series, the discriminant, and the graded ring of modular forms.

Conventions.  For even k >= 2 the lattice sum E_k(tau) = sum_{(m,n) != 0}
(m tau + n)^{-k} factors as E_k = 2 zeta(k) * e_k(q), where e_k is the
constant-term-1 q-expansion

    e_k = 1 - (2k / B_k) * sum_{n >= 1} sigma_{k-1}(n) q^n.

The normalized series e_k is what this module computes exactly; the scalar
2 zeta(k) is exposed separately (:func:`raw_factor`) so exact arithmetic
never touches pi.  For k = 2 the lattice sum is only conditionally
convergent and the q-expansion is the primary definition; the numeric
lattice sum (:func:`eisenstein_lattice_numeric`) is a verification oracle
for k >= 4 only.

Gradings follow the doubled/dualized convention: a weight-k form sits in
degree -2k, so |c4| = -8, |c6| = -12, |Delta| = -24, and the periodicity
element Delta^{-1} beta^{-12} has degree 24 (beta has degree -2 and the
q-expansion factor is degree 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qseries import QExp, SeriesError, one_minus_q_product


@dataclass(frozen=True)
class ModularForm:
    """A level-1 weakly holomorphic modular form with exact q-expansion."""

    weight: int
    qexp: QExp

    @property
    def degree(self) -> int:
        return -2 * self.weight

    def __mul__(self, other: "ModularForm") -> "ModularForm":
        return ModularForm(self.weight + other.weight, self.qexp * other.qexp)

    def __pow__(self, k: int) -> "ModularForm":
        return ModularForm(self.weight * k, self.qexp**k)

    def __sub__(self, other: "ModularForm") -> "ModularForm":
        if self.weight != other.weight:
            raise ValueError("cannot subtract modular forms of different weights")
        return ModularForm(self.weight, self.qexp - other.qexp)

    def inverse(self) -> "ModularForm":
        return ModularForm(-self.weight, self.qexp.reciprocal())


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2) by the standard recurrence."""
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(n):
        acc += Fraction(math.comb(n + 1, k)) * bernoulli(k)
    return -acc / (n + 1)


def zeta_even(k: int) -> float:
    """zeta(k) for even k >= 2, via zeta(k) = (-1)^{k/2+1} B_k (2 pi)^k / (2 k!)."""
    if k % 2 != 0 or k < 2:
        raise ValueError("zeta_even requires even k >= 2")
    half = k // 2
    val = Fraction((-1) ** (half + 1)) * bernoulli(k) / (2 * math.factorial(k))
    return float(val) * (2.0 * math.pi) ** k


def raw_factor(k: int) -> float:
    """2 zeta(k): the scalar converting e_k to the raw lattice normalization."""
    return 2.0 * zeta_even(k)


def divisor_sum(n: int, power: int) -> int:
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += d**power
    return total


def eisenstein_qexp(k: int, order: int) -> ModularForm:
    """Normalized Eisenstein series e_k (constant term 1), exact rationals.

    k must be even and >= 2; e_2 is the standard holomorphic degree-2 case
    (its raw lattice sum does not converge absolutely, so the q-expansion
    is the definition there).
    """
    if k % 2 != 0 or k < 2:
        raise ValueError("eisenstein series requires even weight k >= 2")
    if order < 1:
        raise ValueError("order must be >= 1")
    c = -Fraction(2 * k) / bernoulli(k)
    coeffs = [Fraction(0)] * order
    coeffs[0] = Fraction(1)
    for n in range(1, order):
        coeffs[n] = c * divisor_sum(n, k - 1)
    return ModularForm(k, QExp.from_integer_coeffs(coeffs))


def eisenstein_lattice_numeric(k: int, tau: complex, cutoff: int) -> tuple[complex, float]:
    """Truncated raw lattice sum over 0 < max(|m|,|n|) <= cutoff, plus error estimate.

    Absolutely convergent only for k >= 4; calling with k = 2 is an error
    (use the q-expansion route).  Returns (value, tail_estimate) where the
    tail estimate is the O(cutoff^{2-k}) bound 8 * cutoff^{2-k} / (k - 2).
    """
    if k % 2 != 0 or k < 4:
        raise ValueError("lattice sum supported for even k >= 4 only; use eisenstein_qexp for k = 2")
    if cutoff < 10:
        raise ValueError("cutoff must be >= 10")
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    total = 0j
    for m in range(-cutoff, cutoff + 1):
        for n in range(-cutoff, cutoff + 1):
            if m == 0 and n == 0:
                continue
            if max(abs(m), abs(n)) > cutoff:
                continue
            total += (m * tau + n) ** (-k)
    tail = 8.0 * cutoff ** (2 - k) / (k - 2)
    return total, tail


def delta_qexp(order: int) -> ModularForm:
    """Discriminant Delta = q prod_{n>=1} (1 - q^n)^24, exact to the given order."""
    if order < 2:
        raise ValueError("order must be >= 2 to see the leading q")
    prod = one_minus_q_product(order - 1, power=24)
    q = QExp.monomial(1, order)
    return ModularForm(12, q * prod)


def ring_generators(order: int) -> dict[str, ModularForm]:
    """The generators c4 = e4, c6 = e6 and Delta of the ring of modular forms."""
    if order < 2:
        raise ValueError("order must be >= 2")
    return {
        "c4": ModularForm(4, eisenstein_qexp(4, order).qexp),
        "c6": ModularForm(6, eisenstein_qexp(6, order).qexp),
        "delta": delta_qexp(order),
    }


def mf_relation_residual(order: int) -> QExp:
    """c4^3 - c6^2 - 1728 Delta as an exact q-expansion (identically zero)."""
    gens = ring_generators(order)
    return gens["c4"].qexp ** 3 - gens["c6"].qexp ** 2 - gens["delta"].qexp * 1728


def periodicity_degree(beta_power: int = -12) -> int:
    """Degree of Delta^{-1} beta^{beta_power}: the q-series factor is degree 0."""
    return -2 * beta_power


def eisenstein_numeric_from_qexp(k: int, tau: complex, order: int) -> complex:
    """Raw-normalization E_k(tau) evaluated through the exact q-expansion."""
    q = _q_from_tau(tau)
    e = eisenstein_qexp(k, order).qexp
    return raw_factor(k) * e.evaluate(q)


def _q_from_tau(tau: complex) -> complex:
    import cmath

    if tau.imag <= 0:
        raise SeriesError("tau must lie in the upper half-plane")
    return cmath.exp(2j * cmath.pi * tau)
