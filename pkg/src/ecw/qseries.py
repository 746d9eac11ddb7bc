"""Truncated formal series with explicit truncation-order bookkeeping.

Three containers:

* :class:`QExp` -- Laurent series in q^{1/D} over a pluggable coefficient
  ring (exact ``Fraction``, ``complex``, or :class:`~ecw.ypoly.YPoly`).
  Exponents live on the grid (1/D)*Z; coefficients are stored densely from
  ``min_exp`` up to (but excluding) ``order``; everything at or past
  ``order`` is unknown, never silently assumed zero.
* :class:`PowerSeries` -- univariate power series over the same rings.
* :class:`BiSeries` -- bivariate power series truncated by total degree.

The truncation order of every arithmetic result is the provably correct
one: sums truncate at min(o1, o2), products at min(o1+v2, o2+v1) where v
is the valuation lower bound carried by the operand.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence


class SeriesError(ValueError):
    """Raised for invalid series operations (bad leading term, etc.)."""


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction))


def _as_complex(c) -> complex:
    if isinstance(c, complex):
        return c
    if isinstance(c, Fraction):
        return complex(float(c))
    return complex(c)


# ---------------------------------------------------------------------------
# QExp
# ---------------------------------------------------------------------------


class QExp:
    """Truncated Laurent series sum_{e} c_e q^{e/D} with e in [min_exp, order).

    ``zero`` is the coefficient-ring zero used for padding; the ring one is
    derived as ``zero + 1``, which works for Fraction, complex and YPoly.
    """

    __slots__ = ("denom", "min_exp", "coeffs", "order", "zero")

    def __init__(self, denom: int, min_exp: int, coeffs: Sequence, order: int, zero=Fraction(0)):
        if denom < 1:
            raise SeriesError("denominator D must be a positive integer")
        if order - min_exp != len(coeffs):
            raise SeriesError("coeffs length must equal order - min_exp")
        self.denom = denom
        self.min_exp = min_exp
        self.coeffs = list(coeffs)
        self.order = order
        self.zero = zero

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, value, order: int, zero=Fraction(0)) -> "QExp":
        coeffs = [zero] * order
        if order > 0:
            coeffs[0] = value
        return cls(1, 0, coeffs, order, zero)

    @classmethod
    def one(cls, order: int, zero=Fraction(0)) -> "QExp":
        return cls.constant(zero + 1, order, zero)

    @classmethod
    def zeros(cls, order: int, zero=Fraction(0)) -> "QExp":
        return cls(1, 0, [zero] * order, order, zero)

    @classmethod
    def monomial(cls, exponent: Fraction | int, order: int, coeff=Fraction(1), zero=Fraction(0)) -> "QExp":
        """coeff * q^exponent, known up to q-exponent `order` (in plain units)."""
        exponent = Fraction(exponent)
        d = exponent.denominator
        e = exponent.numerator * 1
        o = int(order * d)
        if e >= o:
            raise SeriesError("monomial exponent at or beyond requested order")
        coeffs = [zero] * (o - e)
        coeffs[0] = coeff
        return cls(d, e, coeffs, o, zero)

    @classmethod
    def from_integer_coeffs(cls, coeffs: Sequence, zero=Fraction(0)) -> "QExp":
        """Series sum coeffs[n] q^n with D=1, min_exp=0."""
        return cls(1, 0, list(coeffs), len(coeffs), zero)

    # -- bookkeeping ------------------------------------------------------

    @property
    def one_elem(self):
        return self.zero + 1

    def exponents(self):
        return [Fraction(self.min_exp + i, self.denom) for i in range(len(self.coeffs))]

    def coeff(self, exponent) -> object:
        """Coefficient of q^exponent; raises if the exponent is unresolved."""
        e = Fraction(exponent) * self.denom
        if e.denominator != 1:
            return self.zero
        idx = int(e) - self.min_exp
        if int(e) >= self.order:
            raise SeriesError(f"coefficient at q^{exponent} is beyond truncation order")
        if idx < 0:
            return self.zero
        return self.coeffs[idx]

    def order_exponent(self) -> Fraction:
        return Fraction(self.order, self.denom)

    def rescale(self, new_denom: int) -> "QExp":
        """Represent the same series on the finer grid (1/new_denom)Z."""
        if new_denom == self.denom:
            return self
        if new_denom % self.denom != 0:
            raise SeriesError("can only rescale to a multiple of the current denominator")
        f = new_denom // self.denom
        coeffs = [self.zero] * (len(self.coeffs) * f)
        for i, c in enumerate(self.coeffs):
            coeffs[i * f] = c
        return QExp(new_denom, self.min_exp * f, coeffs, self.order * f, self.zero)

    def trimmed(self) -> "QExp":
        """Drop leading stored zeros (tightens min_exp; order unchanged)."""
        i = 0
        while i < len(self.coeffs) and not self._nonzero(self.coeffs[i]):
            i += 1
        return QExp(self.denom, self.min_exp + i, self.coeffs[i:], self.order, self.zero)

    @staticmethod
    def _nonzero(c) -> bool:
        try:
            return c != 0
        except TypeError:
            return bool(c)

    def normalize(self) -> "QExp":
        """Reduce the exponent denominator when all data sit on a coarser grid.

        The truncation order is floored to the coarser grid, which can only
        discard (never invent) known coefficients.
        """
        s = self.trimmed()
        g = math.gcd(s.denom, s.min_exp)
        for i, c in enumerate(s.coeffs):
            if self._nonzero(c):
                g = math.gcd(g, s.min_exp + i)
            if g == 1:
                return s
        if g <= 1:
            return s
        new_order = s.order // g
        coeffs = [s.coeffs[i * g - s.min_exp] for i in range(s.min_exp // g, new_order)]
        return QExp(s.denom // g, s.min_exp // g, coeffs, new_order, s.zero)

    def _aligned(self, other: "QExp"):
        d = self.denom * other.denom // math.gcd(self.denom, other.denom)
        return self.rescale(d), other.rescale(d)

    def _coerce(self, other):
        if isinstance(other, QExp):
            return other
        if isinstance(other, (int, Fraction, float, complex)) or type(other).__name__ == "YPoly":
            order = max(self.order, 1)
            return QExp(1, 0, [self.zero + other] + [self.zero] * (order - 1), order, self.zero)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        min_exp = min(a.min_exp, b.min_exp)
        order = min(a.order, b.order)
        coeffs = [a.zero] * (order - min_exp)
        for src in (a, b):
            for i, c in enumerate(src.coeffs):
                e = src.min_exp + i
                if e < order:
                    coeffs[e - min_exp] = coeffs[e - min_exp] + c
        return QExp(a.denom, min_exp, coeffs, order, a.zero)

    __radd__ = __add__

    def __neg__(self):
        return QExp(self.denom, self.min_exp, [-c for c in self.coeffs], self.order, self.zero)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QExp):
            coerced = self._coerce(other)
            if coerced is NotImplemented:
                return NotImplemented
            # scalar: cheap path, no order loss
            return QExp(self.denom, self.min_exp, [c * other for c in self.coeffs], self.order, self.zero)
        a, b = self._aligned(other)
        min_exp = a.min_exp + b.min_exp
        order = min(a.order + b.min_exp, b.order + a.min_exp)
        n = order - min_exp
        coeffs = [a.zero] * n
        bz = b.coeffs
        for i, ca in enumerate(a.coeffs):
            if not self._nonzero(ca):
                continue
            jmax = min(len(bz), n - i)
            for j in range(jmax):
                cb = bz[j]
                if self._nonzero(cb):
                    coeffs[i + j] = coeffs[i + j] + ca * cb
        return QExp(a.denom, min_exp, coeffs, order, a.zero)

    def __rmul__(self, other):
        return self.__mul__(other)

    def reciprocal(self) -> "QExp":
        s = self.trimmed()
        if not s.coeffs or not self._nonzero(s.coeffs[0]):
            raise SeriesError("division by series with zero leading coefficient")
        lead = s.coeffs[0]
        try:
            lead_inv = Fraction(1) / lead if _is_exact(lead) else (lead.inverse() if hasattr(lead, "inverse") else 1 / lead)
        except ZeroDivisionError as exc:
            raise SeriesError("division by series with zero leading coefficient") from exc
        n = len(s.coeffs)
        # g * s = 1 solved by forward substitution on the coefficient grid
        g = [s.zero] * n
        g[0] = s.zero + lead_inv
        for k in range(1, n):
            acc = s.zero
            for j in range(1, k + 1):
                if self._nonzero(s.coeffs[j]):
                    acc = acc + s.coeffs[j] * g[k - j]
            g[k] = -(acc * lead_inv)
        min_exp = -s.min_exp
        order = s.order - 2 * s.min_exp
        return QExp(s.denom, min_exp, g, order, s.zero)

    def __truediv__(self, other):
        if isinstance(other, QExp):
            return self * other.reciprocal()
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        return self * coerced.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        order = max(1, self.order)
        result = QExp(self.denom, 0, [self.one_elem] + [self.zero] * (order - 1), order, self.zero)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, QExp):
            return NotImplemented
        a = self.normalize()
        b = other.normalize()
        return (a.denom, a.min_exp, a.order) == (b.denom, b.min_exp, b.order) and a.coeffs == b.coeffs

    def agrees_with(self, other: "QExp") -> bool:
        """Coefficientwise equality on the common resolved exponent range."""
        a, b = self._aligned(other)
        lo = min(a.min_exp, b.min_exp)
        hi = min(a.order, b.order)
        for e in range(lo, hi):
            ca = a.coeffs[e - a.min_exp] if 0 <= e - a.min_exp < len(a.coeffs) else a.zero
            cb = b.coeffs[e - b.min_exp] if 0 <= e - b.min_exp < len(b.coeffs) else b.zero
            if ca != cb:
                return False
        return True

    def is_zero_series(self) -> bool:
        return not any(self._nonzero(c) for c in self.coeffs)

    # -- exp / log --------------------------------------------------------

    def exp(self) -> "QExp":
        """exp of a series with zero constant term (valuation >= 1 grid step)."""
        s = self.trimmed()
        if s.min_exp <= 0:
            if s.min_exp < 0 or (s.coeffs and self._nonzero(s.coeffs[0]) and s.min_exp == 0):
                raise SeriesError("exp requires a series with constant term 0")
        # work on [0, order): g' relation via Euler operator theta = q d/dq
        order = s.order
        f = [s.zero] * order
        for i, c in enumerate(s.coeffs):
            f[s.min_exp + i] = c
        g = [s.zero] * order
        g[0] = s.one_elem
        for e in range(1, order):
            acc = s.zero
            for j in range(1, e + 1):
                if self._nonzero(f[j]):
                    acc = acc + (f[j] * Fraction(j, e)) * g[e - j]
            g[e] = acc
        return QExp(s.denom, 0, g, order, s.zero)

    def log(self) -> "QExp":
        """log of a series with constant term 1."""
        s = self.trimmed()
        if s.min_exp != 0 or not s.coeffs or s.coeffs[0] != s.one_elem:
            raise SeriesError("log requires a series with constant term 1")
        order = s.order
        f = list(s.coeffs)
        h = [s.zero] * order
        # theta(h) = theta(f) / f;  solve for h grid-coefficient by grid-coefficient
        recip = s.reciprocal()
        r = [s.zero] * order
        for i, c in enumerate(recip.coeffs):
            e = recip.min_exp + i
            if 0 <= e < order:
                r[e] = c
        theta_f = [f[j] * Fraction(j) for j in range(order)]
        for e in range(1, order):
            acc = s.zero
            for j in range(1, e + 1):
                if self._nonzero(theta_f[j]):
                    acc = acc + theta_f[j] * r[e - j]
            h[e] = acc * Fraction(1, e)
        return QExp(s.denom, 0, h, order, s.zero)

    # -- numerics ----------------------------------------------------------

    def evaluate(self, q: complex) -> complex:
        """Numeric value at a given q (coefficients coerced to complex)."""
        total = 0j
        for i, c in enumerate(self.coeffs):
            if not self._nonzero(c):
                continue
            e = Fraction(self.min_exp + i, self.denom)
            total += _as_complex(c) * complex(q) ** complex(float(e))
        return total

    def map_coefficients(self, fn: Callable, zero=None) -> "QExp":
        return QExp(self.denom, self.min_exp, [fn(c) for c in self.coeffs], self.order, self.zero if zero is None else zero)

    def __repr__(self):
        shown = []
        for i, c in enumerate(self.coeffs):
            if self._nonzero(c):
                e = Fraction(self.min_exp + i, self.denom)
                shown.append(f"{c}*q^{e}")
            if len(shown) > 6:
                shown.append("...")
                break
        body = " + ".join(shown) if shown else "0"
        return f"QExp({body} + O(q^{self.order_exponent()}))"


def arith(a: QExp, b: QExp, op: str) -> QExp:
    """Dispatch basic QExp arithmetic by name: add | sub | mul | div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise SeriesError(f"unknown operation {op!r}")


def exp_log(f: "QExp | PowerSeries", which: str):
    """Dispatch exp/log for QExp or PowerSeries."""
    if which == "exp":
        return f.exp()
    if which == "log":
        return f.log()
    raise SeriesError(f"unknown operation {which!r}")


def one_minus_q_product(order: int, power: int = 1, zero=Fraction(0)) -> QExp:
    """prod_{n>=1} (1 - q^n)^power expanded to the given q-order (D = 1)."""
    result = QExp.one(order, zero)
    for n in range(1, order):
        factor = QExp.one(order, zero) - QExp.monomial(n, order, coeff=zero + 1, zero=zero)
        result = result * factor
    if power == 1:
        return result
    if power >= 0:
        return result**power
    return result.reciprocal() ** (-power)


# ---------------------------------------------------------------------------
# PowerSeries
# ---------------------------------------------------------------------------


class PowerSeries:
    """Truncated power series sum_{0<=m<order} c_m x^m over a coefficient ring."""

    __slots__ = ("coeffs", "order", "zero")

    def __init__(self, coeffs: Sequence, order: int | None = None, zero=Fraction(0)):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        if len(coeffs) < order:
            coeffs = coeffs + [zero] * (order - len(coeffs))
        self.coeffs = coeffs[:order]
        self.order = order
        self.zero = zero

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, order: int, zero=Fraction(0)) -> "PowerSeries":
        c = [zero] * order
        if order > 1:
            c[1] = zero + 1
        return cls(c, order, zero)

    @classmethod
    def constant(cls, value, order: int, zero=Fraction(0)) -> "PowerSeries":
        c = [zero] * order
        if order > 0:
            c[0] = value
        return cls(c, order, zero)

    @property
    def one_elem(self):
        return self.zero + 1

    @staticmethod
    def _nonzero(c) -> bool:
        if isinstance(c, QExp):
            return not c.is_zero_series()
        try:
            return c != 0
        except TypeError:
            return bool(c)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if self._nonzero(c):
                return i
        return self.order

    def __getitem__(self, m: int):
        if m >= self.order:
            raise SeriesError(f"coefficient x^{m} beyond truncation order {self.order}")
        return self.coeffs[m]

    def _coerce(self, other):
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(self.zero + other, self.order, self.zero)

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        return PowerSeries([self.coeffs[i] + other.coeffs[i] for i in range(order)], order, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order, self.zero)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coeffs], self.order, self.zero)
        v1, v2 = self.valuation(), other.valuation()
        order = min(self.order + v2, other.order + v1)
        n = min(order, self.order + other.order)
        coeffs = [self.zero] * n
        for i, ca in enumerate(self.coeffs):
            if not self._nonzero(ca):
                continue
            for j in range(min(len(other.coeffs), n - i)):
                cb = other.coeffs[j]
                if self._nonzero(cb):
                    coeffs[i + j] = coeffs[i + j] + ca * cb
        return PowerSeries(coeffs, n, self.zero)

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        if not self.coeffs or not self._nonzero(self.coeffs[0]):
            raise SeriesError("reciprocal requires invertible constant term")
        c0 = self.coeffs[0]
        if isinstance(c0, QExp):
            inv0 = c0.reciprocal()
        elif _is_exact(c0):
            inv0 = Fraction(1) / c0
        else:
            inv0 = 1 / c0
        g = [self.zero] * self.order
        g[0] = self.zero + inv0
        for k in range(1, self.order):
            acc = self.zero
            for j in range(1, k + 1):
                if self._nonzero(self.coeffs[j] if j < len(self.coeffs) else self.zero):
                    acc = acc + self.coeffs[j] * g[k - j]
            g[k] = -(acc * inv0)
        return PowerSeries(g, self.order, self.zero)

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        return PowerSeries([_div_scalar(c, other) for c in self.coeffs], self.order, self.zero)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = PowerSeries.constant(self.one_elem, self.order, self.zero)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n)) and self.order == other.order

    def agrees_with(self, other: "PowerSeries") -> bool:
        n = min(self.order, other.order)
        for i in range(n):
            a, b = self.coeffs[i], other.coeffs[i]
            if isinstance(a, QExp) and isinstance(b, QExp):
                if not a.agrees_with(b):
                    return False
            elif a != b:
                return False
        return True

    # -- calculus ---------------------------------------------------------

    def derivative(self) -> "PowerSeries":
        if self.order <= 1:
            return PowerSeries([], 0, self.zero)
        return PowerSeries([self.coeffs[m] * Fraction(m) for m in range(1, self.order)], self.order - 1, self.zero)

    def exp(self) -> "PowerSeries":
        if self.order > 0 and self._nonzero(self.coeffs[0]):
            raise SeriesError("exp requires a series with constant term 0")
        g = [self.zero] * self.order
        if self.order > 0:
            g[0] = self.one_elem
        for m in range(1, self.order):
            acc = self.zero
            for j in range(1, m + 1):
                cj = self.coeffs[j] if j < len(self.coeffs) else self.zero
                if self._nonzero(cj):
                    acc = acc + (cj * Fraction(j, m)) * g[m - j]
            g[m] = acc
        return PowerSeries(g, self.order, self.zero)

    def log(self) -> "PowerSeries":
        if self.order == 0:
            return self
        c0 = self.coeffs[0]
        ok = c0 == self.one_elem or (isinstance(c0, QExp) and c0.agrees_with(QExp.one(max(1, c0.order - c0.min_exp), c0.zero)) and c0.min_exp <= 0)
        if not ok:
            raise SeriesError("log requires a series with constant term 1")
        u = self - PowerSeries.constant(c0, self.order, self.zero)
        v = u.valuation()
        if v == 0:
            raise SeriesError("log requires a series with constant term 1")
        result = PowerSeries.constant(self.zero, self.order, self.zero)
        term = PowerSeries.constant(self.one_elem, self.order, self.zero)
        sign = 1
        for m in range(1, (self.order - 1) // v + 1):
            term = term * u
            result = result + term * Fraction(sign, m)
            sign = -sign
        return PowerSeries(result.coeffs, self.order, self.zero)

    # -- composition and reversion -----------------------------------------

    def compose(self, g: "PowerSeries") -> "PowerSeries":
        """Coefficients of self(g(x)); requires g(0) = 0."""
        if g.order > 0 and self._nonzero(g.coeffs[0]):
            raise SeriesError("compose requires inner series with zero constant term")
        order = min(self.order, g.order)
        result = PowerSeries.constant(self.zero, order, self.zero)
        power = PowerSeries.constant(self.one_elem, order, self.zero)
        gv = max(g.valuation(), 1)
        for k in range(min(self.order, (order - 1) // gv + 1)):
            ck = self.coeffs[k] if k < len(self.coeffs) else self.zero
            if self._nonzero(ck):
                result = result + power * ck
            if (k + 1) * gv < order:
                power = power * g
        return PowerSeries(result.coeffs, order, self.zero)

    def revert(self) -> "PowerSeries":
        """Compositional inverse: self(revert())(x) = x to truncation order."""
        if self.order < 2 or self._nonzero(self.coeffs[0]):
            raise SeriesError("reversion requires f(0) = 0")
        c1 = self.coeffs[1]
        if not self._nonzero(c1):
            raise SeriesError("reversion requires invertible linear coefficient")
        if isinstance(c1, QExp):
            c1_inv = c1.reciprocal()
        elif _is_exact(c1):
            c1_inv = Fraction(1) / c1
        else:
            c1_inv = 1 / c1
        n = self.order
        # build g coefficientwise: coefficient of x^m in f(g) must vanish for m>1
        g = [self.zero, self.zero + c1_inv]
        for m in range(2, n):
            partial = PowerSeries(g + [self.zero], m + 1, self.zero)
            comp = self.compose(partial)
            cm = comp.coeffs[m] if m < comp.order else self.zero
            g.append(-(cm * c1_inv))
        return PowerSeries(g, n, self.zero)

    def evaluate(self, x):
        total = None
        for c in reversed(self.coeffs):
            if total is None:
                total = _as_numeric(c)
            else:
                total = total * x + _as_numeric(c)
        return 0 if total is None else total

    def map_coefficients(self, fn: Callable, zero=None) -> "PowerSeries":
        return PowerSeries([fn(c) for c in self.coeffs], self.order, self.zero if zero is None else zero)

    def __repr__(self):
        shown = []
        for m, c in enumerate(self.coeffs):
            if self._nonzero(c):
                shown.append(f"({c})*x^{m}")
            if len(shown) > 5:
                shown.append("...")
                break
        return "PowerSeries(" + (" + ".join(shown) if shown else "0") + f" + O(x^{self.order}))"


def _div_scalar(c, s):
    if _is_exact(c) and _is_exact(s):
        return Fraction(c, 1) / s
    return c / s


def _as_numeric(c):
    if isinstance(c, Fraction):
        return float(c)
    return c


def compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    return f.compose(g)


def revert(f: PowerSeries) -> PowerSeries:
    return f.revert()


# ---------------------------------------------------------------------------
# BiSeries
# ---------------------------------------------------------------------------


class BiSeries:
    """Bivariate power series truncated at total degree < order.

    Stored as a triangular table ``table[i][j]`` (coefficient of x^i y^j,
    i + j < order).
    """

    __slots__ = ("table", "order", "zero")

    def __init__(self, table: Sequence[Sequence], order: int, zero=Fraction(0)):
        self.order = order
        self.zero = zero
        self.table = [[table[i][j] if i < len(table) and j < len(table[i]) else zero for j in range(order - i)] for i in range(order)]

    @classmethod
    def zeros(cls, order: int, zero=Fraction(0)) -> "BiSeries":
        return cls([], order, zero)

    def get(self, i: int, j: int):
        if i + j >= self.order:
            raise SeriesError("coefficient beyond truncation order")
        return self.table[i][j]

    def set_(self, i: int, j: int, value) -> None:
        self.table[i][j] = value

    def __add__(self, other: "BiSeries") -> "BiSeries":
        order = min(self.order, other.order)
        out = BiSeries.zeros(order, self.zero)
        for i in range(order):
            for j in range(order - i):
                out.table[i][j] = self.table[i][j] + other.table[i][j]
        return out

    def __neg__(self) -> "BiSeries":
        out = BiSeries.zeros(self.order, self.zero)
        for i in range(self.order):
            for j in range(self.order - i):
                out.table[i][j] = -self.table[i][j]
        return out

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        order = min(self.order, other.order)
        out = BiSeries.zeros(order, self.zero)
        nz = PowerSeries._nonzero
        for i1 in range(self.order):
            for j1 in range(self.order - i1):
                c1 = self.table[i1][j1]
                if not nz(c1):
                    continue
                for i2 in range(min(other.order, order - i1 - j1)):
                    for j2 in range(min(other.order - i2, order - i1 - j1 - i2)):
                        c2 = other.table[i2][j2]
                        if nz(c2):
                            out.table[i1 + i2][j1 + j2] = out.table[i1 + i2][j1 + j2] + c1 * c2
        return out

    def swap(self) -> "BiSeries":
        out = BiSeries.zeros(self.order, self.zero)
        for i in range(self.order):
            for j in range(self.order - i):
                out.table[i][j] = self.table[j][i]
        return out

    def evaluate(self, x, y):
        total = 0
        for i in range(self.order):
            for j in range(self.order - i):
                c = self.table[i][j]
                if PowerSeries._nonzero(c):
                    total = total + _as_numeric(c) * x**i * y**j
        return total

    def map_coefficients(self, fn: Callable, zero=None) -> "BiSeries":
        out = BiSeries.zeros(self.order, self.zero if zero is None else zero)
        for i in range(self.order):
            for j in range(self.order - i):
                out.table[i][j] = fn(self.table[i][j])
        return out
