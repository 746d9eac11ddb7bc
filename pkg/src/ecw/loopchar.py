"""Loop-group vacuum characters and twisted elliptic Euler-class sections.

Formal characters are carried exactly in the (q, y) backend: the level-1
vacuum supercharacter of the rank-one spin loop group is

    chi_spin2(q, y) = (y^{1/2} - y^{-1/2}) prod_{n>0} (1 - q^n y)(1 - q^n y^{-1})

and the rank-one unitary variant is chi_lu1 = (1 - y) * (same product),
so chi_lu1 = -y^{1/2} chi_spin2 identically.  Dividing chi_spin2 by
prod (1 - q^n)^2 and substituting y = e^w recovers the formal sigma
expansion of :mod:`ecw.theta` (in the same scaled units w = 2 pi i z).

Numeric Euler sections are products of sigma (spin side) or upsilon
(unitary side) over the coordinates, wrapped with the beta^{-n} degree
bookkeeping.  Their lattice-shift transformation law is the level
structure: f(tau, z + m + n tau) = exp(-pi i (2 l(n,z) + l(n,n) tau))
f(tau, z) for cocharacter-lattice vectors m, n and Gram matrix l.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .qseries import PowerSeries, QExp, one_minus_q_product
from .theta import TWO_PI_I, TauPoint, sigma_value, upsilon_value
from .ypoly import YPoly

FAMILIES = ("U", "SU", "SpinEven")


@dataclass(frozen=True)
class GroupTag:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.n < 1:
            raise ValueError("rank parameter n must be >= 1")


@dataclass(frozen=True)
class Level:
    """Integer Gram matrix of the level form; validated against a group."""

    gram: tuple

    def __init__(self, gram: Sequence[Sequence[int]]):
        object.__setattr__(self, "gram", tuple(tuple(int(x) for x in row) for row in gram))
        n = len(self.gram)
        for row in self.gram:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        if not self._positive_definite():
            raise ValueError("Gram matrix must be positive definite")

    def _positive_definite(self) -> bool:
        n = len(self.gram)
        m = [[Fraction(self.gram[i][j]) for j in range(n)] for i in range(n)]
        for k in range(1, n + 1):
            det = _det([row[:k] for row in m[:k]])
            if det <= 0:
                return False
        return True

    @property
    def n(self) -> int:
        return len(self.gram)

    def pair(self, u: Sequence, v: Sequence):
        return sum(self.gram[i][j] * u[i] * v[j] for i in range(self.n) for j in range(self.n))

    @classmethod
    def identity(cls, n: int) -> "Level":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det(minor)
    return total


def cocharacter_basis(group: GroupTag) -> list[list[int]]:
    """Integer basis of the group's cocharacter lattice in the SO/U coordinates."""
    n = group.n
    if group.family == "U":
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if group.family == "SU":
        return [[1 if j == i else (-1 if j == i + 1 else 0) for j in range(n)] for i in range(n - 1)]
    # SpinEven: even-sum sublattice of Z^n
    if n == 1:
        return [[2]]
    basis = [[1 if j == i else (-1 if j == i + 1 else 0) for j in range(n)] for i in range(n - 1)]
    basis.append([0] * (n - 2) + [1, 1])
    return basis


def in_cocharacter_lattice(group: GroupTag, v: Sequence[int]) -> bool:
    if len(v) != group.n or any(int(x) != x for x in v):
        return False
    if group.family == "U":
        return True
    if group.family == "SU":
        return sum(v) == 0
    return sum(v) % 2 == 0


def validate_level(group: GroupTag, level: Level) -> None:
    """Check l(v, v) is even on the group's cocharacter lattice."""
    if level.n != group.n:
        raise ValueError("level rank does not match group rank")
    for v in cocharacter_basis(group):
        if level.pair(v, v) % 2 != 0:
            raise ValueError(f"level form is odd on cocharacter basis vector {v}")


@dataclass
class CharValue:
    value: complex
    group: GroupTag
    beta_power: int

    @property
    def degree(self) -> int:
        return -2 * self.beta_power


# ---------------------------------------------------------------------------
# formal characters
# ---------------------------------------------------------------------------


def _ychar_product(prefactor: YPoly, q_order: int) -> QExp:
    zero = YPoly.zero(1)
    one = YPoly.one(1)
    coeffs: list = [zero] * q_order
    coeffs[0] = prefactor
    series = QExp(1, 0, coeffs, q_order, zero)
    y = YPoly.y_power(2)
    yinv = YPoly.y_power(-2)
    for n in range(1, q_order):
        for mult in (y, yinv):
            factor_coeffs = [zero] * q_order
            factor_coeffs[0] = one
            factor_coeffs[n] = -mult
            series = series * QExp(1, 0, factor_coeffs, q_order, zero)
    return series


def char_spin2_qexp(q_order: int) -> QExp:
    """(y^{1/2} - y^{-1/2}) prod (1 - q^n y)(1 - q^n y^{-1}) to the given q-order."""
    if q_order < 1:
        raise ValueError("q_order must be >= 1")
    pref = YPoly.y_power(1) - YPoly.y_power(-1)
    return _ychar_product(pref, q_order)


def char_lu1_qexp(q_order: int) -> QExp:
    """(1 - y) prod (1 - q^n y)(1 - q^n y^{-1}) to the given q-order."""
    if q_order < 1:
        raise ValueError("q_order must be >= 1")
    pref = YPoly.one(1) - YPoly.y_power(2)
    return _ychar_product(pref, q_order)


def char_substitute_exponential(char: QExp, z_order: int) -> PowerSeries:
    """Substitute y^{1/2} = e^{w/2}, returning a w-series with QExp coefficients."""
    q_order = char.order
    rows = []
    for c in char.coeffs:
        rows.append(c.substitute_exponential(z_order))
    coeffs = []
    for m in range(z_order):
        col = [rows[i][m] for i in range(len(rows))]
        coeffs.append(QExp(char.denom, char.min_exp, col, char.order, Fraction(0)))
    return PowerSeries(coeffs, z_order, QExp.zeros(q_order))


def char_spin2_matches_sigma(q_order: int, z_order: int) -> bool:
    """chi_spin2 * prod(1-q^n)^{-2} equals the formal sigma expansion (w-units)."""
    from .theta import sigma_qexp

    char = char_spin2_qexp(q_order)
    w_series = char_substitute_exponential(char, z_order)
    eta2_inv = one_minus_q_product(q_order, power=-2)
    lhs = w_series.map_coefficients(lambda c: c * eta2_inv)
    rhs = sigma_qexp(z_order, q_order)
    return lhs.agrees_with(rhs)


# ---------------------------------------------------------------------------
# numeric Euler sections
# ---------------------------------------------------------------------------

SU_TRACE_TOL = 1e-12


def euler_section(group: GroupTag, tau: TauPoint, zs: Sequence[complex], n_terms: int = 60) -> CharValue:
    """The Euler-class section: product of sigma (spin) or upsilon (unitary)."""
    if len(zs) != group.n:
        raise ValueError("need exactly n coordinates")
    if group.family == "SU":
        tr = sum(zs)
        if abs(tr) > SU_TRACE_TOL:
            raise ValueError(f"SU section requires sum z_j = 0 (got {tr})")
    val = 1.0 + 0j
    for z in zs:
        if group.family == "SpinEven":
            val *= sigma_value(tau, z, n_terms)
        else:
            val *= upsilon_value(tau, z, n_terms)
    return CharValue(val, group, beta_power=-group.n)


def looijenga_shift_check(
    group: GroupTag,
    level: Level,
    tau: TauPoint,
    zs: Sequence[complex],
    mvec: Sequence[int],
    nvec: Sequence[int],
    n_terms: int = 60,
) -> float:
    """Residual of the level transformation law under z -> z + m + n tau."""
    validate_level(group, level)
    for label, vec in (("m", mvec), ("n", nvec)):
        if not in_cocharacter_lattice(group, vec):
            raise ValueError(f"{label}-vector {list(vec)} is not in the {group.family}({group.n}) cocharacter lattice")
    t = complex(tau.tau)
    shifted = [z + m + n * t for z, m, n in zip(zs, mvec, nvec)]
    f_shift = euler_section(group, tau, shifted, n_terms).value
    f0 = euler_section(group, tau, zs, n_terms).value
    lnz = level.pair(nvec, list(zs))
    lnn = level.pair(nvec, nvec)
    factor = cmath.exp(-1j * math.pi * (2 * lnz + lnn * t))
    return abs(f_shift - factor * f0)


# ---------------------------------------------------------------------------
# modular anomaly (elliptic Chern-Weil obstruction)
# ---------------------------------------------------------------------------


@dataclass
class AnomalyReport:
    """The quadratic form multiplying the degree-2 Eisenstein series.

    ``quadratic_form`` maps sorted symbol pairs to exact coefficients; the
    anomaly in the expansion of log prod Wit(z_j) is E_2/2 times this form
    in raw Eisenstein units (equivalently -e_2/24 times it in the scaled
    w-units of the formal backend).
    """

    quadratic_form: dict
    symbols: tuple
    e2_scalar_raw: Fraction
    e2_scalar_scaled: Fraction
    is_multiple_of_p1: bool
    p1_multiple: Fraction | None
    is_symmetric: bool
    c1sq_coeff: Fraction | None
    c2_coeff: Fraction | None

    @property
    def vanishes(self) -> bool:
        return not self.quadratic_form

    @property
    def vanishes_mod_p1(self) -> bool:
        return self.is_multiple_of_p1 or self.vanishes

    @property
    def vanishes_on_su_locus(self) -> bool:
        # on c_1 = c_2 = 0 a symmetric form a*c1^2 + b*c2 restricts to zero
        return self.vanishes or (self.is_symmetric and self.c2_coeff is not None)


def modular_anomaly(chern_roots: Sequence[dict], z_order: int = 2) -> AnomalyReport:
    """Extract the E_2 coefficient of log prod_j Wit(z_j) for formal roots.

    Each root is a linear form given as a mapping {symbol: coefficient}.
    The z^2 part of log Wit(z) is E_2 z^2 / 2, so the anomaly form is
    sum_j (root_j)^2 with scalar E_2/2.
    """
    if z_order < 2:
        raise ValueError("z_order must be >= 2 to see the anomaly")
    symbols = sorted({s for root in chern_roots for s in root})
    form: dict = {}
    for root in chern_roots:
        items = [(s, Fraction(c)) for s, c in root.items() if c]
        for i, (s1, c1) in enumerate(items):
            for s2, c2 in items:
                key = tuple(sorted((s1, s2)))
                form[key] = form.get(key, Fraction(0)) + c1 * c2
    form = {k: v for k, v in form.items() if v != 0}

    diag = [form.get((s, s), Fraction(0)) for s in symbols]
    off = {k: v for k, v in form.items() if k[0] != k[1]}
    multiple = None
    if symbols and not off and len(set(diag)) == 1:
        multiple = diag[0]
    is_sym = bool(symbols)
    if symbols:
        offvals = set(off.values())
        npairs = len(symbols) * (len(symbols) - 1) // 2
        if len(set(diag)) != 1:
            is_sym = False
        elif off and (len(offvals) != 1 or len(off) != npairs):
            is_sym = False
        elif not off and npairs > 0:
            offvals = {Fraction(0)}
        c1sq = None
        c2 = None
        if is_sym:
            a = diag[0]
            b = (next(iter(offvals)) if off else Fraction(0)) - 2 * a
            c1sq, c2 = a, b
    else:
        c1sq = c2 = None
    return AnomalyReport(
        quadratic_form=dict(sorted(form.items())),
        symbols=tuple(symbols),
        e2_scalar_raw=Fraction(1, 2),
        e2_scalar_scaled=Fraction(-1, 24),
        is_multiple_of_p1=multiple is not None,
        p1_multiple=multiple,
        is_symmetric=is_sym,
        c1sq_coeff=c1sq,
        c2_coeff=c2,
    )
