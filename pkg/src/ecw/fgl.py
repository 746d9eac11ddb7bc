"""Formal group laws from coordinates, axiom checkers, and the cubical structure.

A coordinate is a univariate series f with f(0) = 0 and invertible f'(0);
its group law is F(x, y) = f(f^{-1}(x) + f^{-1}(y)).  Because the inner
sum splits into univariate pieces, F is assembled from powers of g = f^{-1}
by F_{ab} = sum_{j,l} f_{j+l} binom(j+l, j) [g^j]_a [g^l]_b, which keeps
the whole pipeline exact over QExp coefficients for the sigma coordinate.

The cubical structure is evaluated through the normalized factors
g(w) = sigma(tau, w)/w (or upsilon(tau, w)/w), with g(0) equal to the
derivative at zero (1 for sigma, -1 for upsilon):

    s(x,y,z) = g(x+y) g(x+z) g(y+z) g(0) / ( g(x+y+z) g(x) g(y) g(z) ).

Written this way the rigid limit is 1, s(x, y, -x-y) = 1 exactly (g is
even), the cocycle identity cancels termwise, and the SL2(Z) factors of
the numerator and denominator match because (x+y)^2+(x+z)^2+(y+z)^2 =
(x+y+z)^2 + x^2 + y^2 + z^2.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .qseries import BiSeries, PowerSeries, QExp, SeriesError
from .sl2 import S as SL2_S
from .sl2 import T as SL2_T
from .theta import TWO_PI_I, TauPoint, sigma_qexp, sigma_value, upsilon_value

POLE_TOL = 1e-8


# ---------------------------------------------------------------------------
# formal group laws
# ---------------------------------------------------------------------------


@dataclass
class FGL:
    """A truncated bivariate formal group law with the unit axiom enforced."""

    F: BiSeries
    order: int

    def __post_init__(self):
        zero = self.F.zero
        for a in range(self.order):
            want_x = (zero + 1) if a == 1 else zero
            if not _coeff_zero(self.F.get(a, 0) - want_x) or not _coeff_zero(self.F.get(0, a) - want_x):
                raise SeriesError("unit axiom F(x,0) = x, F(0,y) = y fails at construction")


def _coeff_zero(c) -> bool:
    if isinstance(c, QExp):
        return c.is_zero_series()
    return c == 0


def _coeff_magnitude(c) -> float:
    if isinstance(c, QExp):
        return max((_coeff_magnitude(x) for x in c.coeffs), default=0.0)
    if isinstance(c, Fraction):
        return abs(float(c))
    return abs(c)


def _powers(f: PowerSeries, order: int) -> list[PowerSeries]:
    out = [PowerSeries.constant(f.one_elem, order, f.zero)]
    for _ in range(1, order):
        out.append(out[-1] * f)
    return out


def fgl_from_coordinate(f: PowerSeries, order: int) -> FGL:
    """Group law F(x,y) = f(f^{-1}(x) + f^{-1}(y)) to the given total order."""
    if f.order < order:
        raise SeriesError("coordinate series is too short for the requested order")
    f = PowerSeries(f.coeffs[:order], order, f.zero)
    g = f.revert()
    gp = _powers(g, order)
    zero = f.zero
    table = BiSeries.zeros(order, zero)
    nz = PowerSeries._nonzero
    for j in range(order):
        for l in range(order - j):
            k = j + l
            fk = f.coeffs[k] if k < len(f.coeffs) else zero
            if not nz(fk):
                continue
            c = fk * Fraction(math.comb(k, j))
            pj, pl = gp[j], gp[l]
            for a in range(j, order):
                ca = pj.coeffs[a]
                if not nz(ca):
                    continue
                for b in range(l, order - a):
                    cb = pl.coeffs[b]
                    if nz(cb):
                        table.table[a][b] = table.table[a][b] + (c * ca) * cb
    return FGL(table, order)


def additive_coordinate(order: int) -> PowerSeries:
    return PowerSeries.identity(order)


def multiplicative_coordinate(order: int) -> PowerSeries:
    """f = 1 - e^{-x}: the coordinate whose law is x + y - x y."""
    return PowerSeries(
        [Fraction(0)] + [Fraction((-1) ** (m + 1), math.factorial(m)) for m in range(1, order)],
        order,
    )


def sigma_coordinate(order: int, q_order: int) -> PowerSeries:
    """The formal sigma coordinate in scaled units (QExp coefficients)."""
    return sigma_qexp(order, q_order)


def upsilon_coordinate(order: int, q_order: int) -> PowerSeries:
    """-e^{w/2} sigma(w) in scaled units; linear coefficient -1."""
    sig = sigma_qexp(order, q_order)
    zero = QExp.zeros(q_order)
    half_exp = PowerSeries(
        [QExp.constant(Fraction(-1, 2**m * math.factorial(m)), q_order) for m in range(order)],
        order,
        zero,
    )
    return half_exp * sig


@dataclass
class FGLCheckReport:
    unit_res: float
    comm_res: float
    assoc_res: float
    exact: bool


def fgl_check(law: FGL) -> FGLCheckReport:
    """Coefficientwise residuals of the unit, commutativity and associativity axioms."""
    F = law.F
    order = law.order
    zero = F.zero
    unit = 0.0
    comm = 0.0
    exact = True
    for a in range(order):
        want = (zero + 1) if a == 1 else zero
        for c in (F.get(a, 0) - want, F.get(0, a) - want):
            if not _coeff_zero(c):
                exact = False
                unit = max(unit, _coeff_magnitude(c))
    for a in range(order):
        for b in range(order - a):
            d = F.get(a, b) - F.get(b, a)
            if not _coeff_zero(d):
                exact = False
                comm = max(comm, _coeff_magnitude(d))
    lhs = _tri_compose_left(F, order, zero)
    rhs = _tri_swap(lhs, order)  # F(x, F(y,z)) by the symmetry x<->z of tables
    assoc = 0.0
    for key, val in _tri_sub(lhs, rhs).items():
        if not _coeff_zero(val):
            exact = False
            assoc = max(assoc, _coeff_magnitude(val))
    return FGLCheckReport(unit, comm, assoc, exact)


# trivariate helpers: dict {(i,j,k): coeff}, total degree < order


def _tri_mul(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for (i1, j1, k1), c1 in a.items():
        if _coeff_zero(c1):
            continue
        for (i2, j2, k2), c2 in b.items():
            if i1 + i2 + j1 + j2 + k1 + k2 >= order or _coeff_zero(c2):
                continue
            key = (i1 + i2, j1 + j2, k1 + k2)
            cur = out.get(key)
            out[key] = c1 * c2 if cur is None else cur + c1 * c2
    return out


def _tri_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for key, val in b.items():
        out[key] = out.get(key, val - val) - val
    return out


def _tri_swap(t: dict, order: int) -> dict:
    return {(k, j, i): c for (i, j, k), c in t.items()}


def _tri_compose_left(F: BiSeries, order: int, zero) -> dict:
    """F(F(x,y), z) as a trivariate table."""
    nz = PowerSeries._nonzero
    base: dict = {}
    for i in range(order):
        for j in range(order - i):
            c = F.get(i, j)
            if nz(c):
                base[(i, j, 0)] = c
    powers = [{(0, 0, 0): zero + 1}]
    for _ in range(1, order):
        powers.append(_tri_mul(powers[-1], base, order))
    out: dict = {}
    for r in range(order):
        for s_ in range(order - r):
            c = F.get(r, s_)
            if not nz(c):
                continue
            for (i, j, k), pv in powers[r].items():
                if i + j + k + s_ >= order or _coeff_zero(pv):
                    continue
                key = (i, j, k + s_)
                add = pv * c
                cur = out.get(key)
                out[key] = add if cur is None else cur + add
    return out


def conjugate_fgl(law: FGL, g: PowerSeries) -> FGL:
    """The law g(F(g^{-1} x, g^{-1} y)) for a coordinate change g, g(0)=0, g'(0)=1."""
    order = law.order
    zero = law.F.zero
    ginv = PowerSeries(g.coeffs[:order], order, g.zero).revert()
    gp = _powers(ginv, order)
    nz = PowerSeries._nonzero
    inner = BiSeries.zeros(order, zero)
    for j in range(order):
        for l in range(order - j):
            c = law.F.get(j, l)
            if not nz(c):
                continue
            for a in range(j, order):
                ca = gp[j].coeffs[a]
                if not nz(ca):
                    continue
                for b in range(l, order - a):
                    cb = gp[l].coeffs[b]
                    if nz(cb):
                        inner.table[a][b] = inner.table[a][b] + (c * ca) * cb
    # outer g applied to the bivariate inner series
    powers = [None] * order
    acc = BiSeries.zeros(order, zero)
    acc.table[0][0] = zero + 1
    powers[0] = acc
    for r in range(1, order):
        powers[r] = powers[r - 1] * inner
    out = BiSeries.zeros(order, zero)
    for r in range(order):
        cr = g.coeffs[r] if r < len(g.coeffs) else zero
        if not nz(cr):
            continue
        pr = powers[r]
        for i in range(order):
            for j in range(order - i):
                c = pr.table[i][j]
                if nz(c):
                    out.table[i][j] = out.table[i][j] + c * cr
    return FGL(out, order)


def fgl_numeric_table(law: FGL, tau: TauPoint) -> BiSeries:
    """Coefficients of the law with QExp entries evaluated at the numeric nome."""
    q = tau.q

    def ev(c):
        if isinstance(c, QExp):
            return c.evaluate(q)
        return complex(float(c)) if isinstance(c, Fraction) else complex(c)

    return law.F.map_coefficients(ev, zero=0j)


def sigma_addition_residual(tau: TauPoint, z1: complex, z2: complex, order: int = 12, q_order: int = 8, n_terms: int = 60) -> float:
    """|F(sigma(z1), sigma(z2)) - sigma(z1 + z2)| for the sigma-coordinate law.

    The law is built formally in scaled units, so the numeric table is fed
    the scaled values 2 pi i sigma(z) and the output is rescaled back.
    """
    law = fgl_from_coordinate(sigma_coordinate(order, q_order), order)
    table = fgl_numeric_table(law, tau)
    xh = TWO_PI_I * sigma_value(tau, z1, n_terms)
    yh = TWO_PI_I * sigma_value(tau, z2, n_terms)
    val = table.evaluate(xh, yh) / TWO_PI_I
    return abs(val - sigma_value(tau, z1 + z2, n_terms))


# ---------------------------------------------------------------------------
# cubical structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CubicalSample:
    tau: TauPoint
    x: complex
    y: complex
    z: complex
    variant: str = "sigma"

    def __post_init__(self):
        if self.variant not in ("sigma", "upsilon"):
            raise ValueError("variant must be sigma or upsilon")


def lattice_distance(tau: TauPoint, w: complex) -> float:
    """Distance from w to the lattice Z + tau Z."""
    t = complex(tau.tau)
    best = float("inf")
    n0 = round(w.imag / t.imag)
    for n in (n0 - 1, n0, n0 + 1):
        rem = w - n * t
        m0 = round(rem.real)
        for m in (m0 - 1, m0, m0 + 1):
            best = min(best, abs(w - (m + n * t)))
    return best


def _norm_factor(tau: TauPoint, w: complex, variant: str, n_terms: int, label: str, tol: float = POLE_TOL):
    """g(w) = f(w)/w with g(0) = f'(0); errors near nonzero lattice points."""
    if w == 0:
        return 1.0 + 0j if variant == "sigma" else -1.0 + 0j
    if lattice_distance(tau, w) < tol:
        raise SeriesError(f"cubical factor {label} is within {tol} of a lattice point")
    f = sigma_value(tau, w, n_terms) if variant == "sigma" else upsilon_value(tau, w, n_terms)
    return f / w


def cubical_s(sample: CubicalSample, n_terms: int = 60) -> complex:
    """The cubical-structure value at (x, y, z)."""
    tau, x, y, z = sample.tau, sample.x, sample.y, sample.z
    v = sample.variant
    num = (
        _norm_factor(tau, x + y, v, n_terms, "x+y")
        * _norm_factor(tau, x + z, v, n_terms, "x+z")
        * _norm_factor(tau, y + z, v, n_terms, "y+z")
        * _norm_factor(tau, 0, v, n_terms, "0")
    )
    den = (
        _norm_factor(tau, x + y + z, v, n_terms, "x+y+z")
        * _norm_factor(tau, x, v, n_terms, "x")
        * _norm_factor(tau, y, v, n_terms, "y")
        * _norm_factor(tau, z, v, n_terms, "z")
    )
    return num / den


@dataclass
class CubicalReport:
    rigid: float
    symmetric: float
    cocycle: float
    sigma_upsilon: float
    string: float
    sl2: float
    samples: int
    rejected: int
    seed: int

    def max_residual(self) -> float:
        return max(self.rigid, self.symmetric, self.cocycle, self.sigma_upsilon, self.string, self.sl2)


def _draw(rng: random.Random) -> complex:
    return complex(rng.uniform(-0.35, 0.35), rng.uniform(-0.35, 0.35))


def _safe_args(tau: TauPoint, args: Sequence[complex], tol: float = 1e-4) -> bool:
    return all(a == 0 or lattice_distance(tau, a) > tol for a in args)


def cubical_verify(tau: TauPoint, samples: int, seed: int, variant: str = "sigma", n_terms: int = 60) -> CubicalReport:
    """Max residuals of the cubical identities over seeded random points."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    rejected = 0
    rigid = symmetric = cocycle = sigup = string = sl2max = 0.0

    eps = 1e-4
    rigid = abs(cubical_s(CubicalSample(tau, eps, eps, eps, variant), n_terms) - 1)

    done = 0
    while done < samples:
        x, y, z, w = (_draw(rng) for _ in range(4))
        need = [x, y, z, w, x + y, x + z, y + z, w + x, w + z, x + y + z, w + x + y, w + x + z, w + x + y + z]
        # the string-condition point uses (x, y, -x-y); its pairwise sums are -x, -y
        string_args = [-x - y, -x, -y]
        if not (_safe_args(tau, need) and _safe_args(tau, string_args)):
            rejected += 1
            continue
        done += 1

        s0 = cubical_s(CubicalSample(tau, x, y, z, variant), n_terms)
        for perm in ((x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)):
            sp = cubical_s(CubicalSample(tau, *perm, variant), n_terms)
            symmetric = max(symmetric, abs(sp - s0))

        lhs = cubical_s(CubicalSample(tau, w + x, y, z, variant), n_terms) * cubical_s(CubicalSample(tau, w, x, z, variant), n_terms)
        rhs = cubical_s(CubicalSample(tau, w, x + y, z, variant), n_terms) * cubical_s(CubicalSample(tau, x, y, z, variant), n_terms)
        cocycle = max(cocycle, abs(lhs - rhs))

        other = "upsilon" if variant == "sigma" else "sigma"
        s1 = cubical_s(CubicalSample(tau, x, y, z, other), n_terms)
        sigup = max(sigup, abs(s1 - s0))

        sstr = cubical_s(CubicalSample(tau, x, y, -x - y, variant), n_terms)
        string = max(string, abs(sstr - 1))

        t = complex(tau.tau)
        for gamma in (SL2_S, SL2_T):
            j = gamma.automorphy(t)
            tp = TauPoint(gamma.act_tau(t))
            sg = cubical_s(CubicalSample(tp, x / j, y / j, z / j, variant), n_terms)
            sl2max = max(sl2max, abs(sg - s0))

    return CubicalReport(rigid, symmetric, cocycle, sigup, string, sl2max, samples, rejected, seed)
