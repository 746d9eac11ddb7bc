"""Laurent polynomials in formal half-integer powers of y_1, ..., y_n.

Exponents are stored doubled (as integers), so the monomial y_1^{3/2} has
stored exponent vector (3,).  Coefficients are exact rationals unless the
caller mixes in floats/complexes, in which case ordinary duck typing applies.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class YPoly:
    """Laurent polynomial in y_j^{1/2} variables.

    ``terms`` maps doubled-exponent tuples to nonzero coefficients; the zero
    polynomial has an empty term map.  Instances are immutable by convention.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for expv, c in terms.items():
                expv = tuple(int(e) for e in expv)
                if len(expv) != nvars:
                    raise ValueError("exponent vector length != nvars")
                if c != 0:
                    clean[expv] = clean.get(expv, Fraction(0)) + c
                    if clean[expv] == 0:
                        del clean[expv]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int = 1) -> "YPoly":
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int = 1) -> "YPoly":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, half_exponents: Iterable[int], coeff=Fraction(1)) -> "YPoly":
        """Monomial with exponent vector given in HALF units (doubled ints)."""
        return cls(nvars, {tuple(half_exponents): coeff})

    @classmethod
    def y_power(cls, half: int, nvars: int = 1, var: int = 0, coeff=Fraction(1)) -> "YPoly":
        """coeff * y_var^{half/2}."""
        ex = [0] * nvars
        ex[var] = half
        return cls(nvars, {tuple(ex): coeff})

    # -- ring operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, YPoly):
            if other.nvars != self.nvars:
                raise ValueError("nvars mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return YPoly(self.nvars, {(0,) * self.nvars: Fraction(other)})
        if isinstance(other, (float, complex)):
            return YPoly(self.nvars, {(0,) * self.nvars: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for expv, c in other.terms.items():
            s = terms.get(expv, 0) + c
            if s == 0:
                terms.pop(expv, None)
            else:
                terms[expv] = s
        return YPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return YPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return YPoly(self.nvars, terms)

    __rmul__ = __mul__

    def inverse(self) -> "YPoly":
        """Inverse of a unit (single-monomial) polynomial."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("YPoly is invertible only when it is a single monomial")
        ((expv, c),) = self.terms.items()
        return YPoly(self.nvars, {tuple(-e for e in expv): Fraction(1) / c if isinstance(c, (int, Fraction)) else 1.0 / c})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    # -- queries and substitutions ------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def eval_at_one(self):
        """Substitute y_j = 1 for every variable (sum of coefficients)."""
        return sum(self.terms.values(), Fraction(0))

    def substitute_exponential(self, order: int, var: int = 0):
        """Substitute y_var^{1/2} -> exp(w/2), returning w-series coefficients.

        Only valid for nvars == 1 style use (other variables must not occur).
        Returns a list [c_0, ..., c_{order-1}] where the polynomial maps to
        sum_m c_m w^m; each monomial y^{s/2} contributes (s/2)^m / m!.
        """
        coeffs = [Fraction(0)] * order
        for expv, c in self.terms.items():
            for j, e in enumerate(expv):
                if j != var and e != 0:
                    raise ValueError("substitute_exponential: extra variables present")
            s = Fraction(expv[var], 2)
            pw = Fraction(1)
            fact = 1
            for m in range(order):
                if m > 0:
                    pw *= s
                    fact *= m
                coeffs[m] += c * pw / fact
        return coeffs

    def flip(self, var: int = 0) -> "YPoly":
        """Substitute y_var -> y_var^{-1}."""
        terms = {}
        for expv, c in self.terms.items():
            e = list(expv)
            e[var] = -e[var]
            terms[tuple(e)] = c
        return YPoly(self.nvars, terms)

    def __repr__(self):
        if not self.terms:
            return "YPoly(0)"
        bits = []
        for expv, c in sorted(self.terms.items()):
            mono = "*".join(
                f"y{j + 1}^({e}/2)" for j, e in enumerate(expv) if e != 0
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "YPoly(" + " + ".join(bits) + ")"
