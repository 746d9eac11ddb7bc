"""Exact Cartan-model engine for torus-equivariant forms on R^{2n}.

The model class is finite sums of terms

    coeff * pi^p * beta^b * z^alpha * (coordinate monomial)
          * exp(-pi sum_j g_j r_j^2) * ext

where z_1..z_n are the Lie variables of the torus acting by rotating the
n coordinate planes, r_j^2 = x_j^2 + y_j^2, the rational g_j >= 0 give the
Gaussian decay plane by plane (a single uniform g is the scalar case), and
ext is an exterior monomial in dx_1, dy_1, ..., dx_n, dy_n stored in
ascending canonical order (signs absorbed into the coefficient).  Powers
of pi are tracked symbolically so differentials of Gaussians and Gaussian
moments stay exact.

The contraction is against the Lie-variable-weighted field
X(z) = sum_j z_j V_j with V_j = 2 (x_j d/dy_j - y_j d/dx_j); the constant
2 is the unique normalization making the Gaussian-pi Thom representative
e^{-pi r^2} (beta^{-1} z + pi dx dy) closed under Q = d - beta^{-1} iota.

Degrees follow the convention in which Lie polynomials sit in degree zero
and beta has degree -2, so a term has total degree |ext| - 2 beta_pow and
Q raises degree by exactly one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .qseries import PowerSeries, QExp, SeriesError
from .theta import TWO_PI_I, TauPoint, germ_at_zero, sigma_qexp, sigma_value, upsilon_value
from .fgl import lattice_distance

ROTATION_CONSTANT = 2  # V_j = 2 (x_j d/dy_j - y_j d/dx_j)


def _nz(c) -> bool:
    if isinstance(c, QExp):
        return not c.is_zero_series()
    try:
        return c != 0
    except TypeError:
        return bool(c)


def _magnitude(c) -> float:
    if isinstance(c, QExp):
        return max((_magnitude(x) for x in c.coeffs), default=0.0)
    if isinstance(c, Fraction):
        return abs(float(c))
    return abs(c)


# term key: (beta, pi, lie, coord, gauss, ext)
Key = tuple


class EqForm:
    """An equivariant differential form in the polynomial-Gaussian model class."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms: dict = {}
        if terms:
            for key, c in terms.items():
                if _nz(c):
                    self.terms[key] = self.terms[key] + c if key in self.terms else c
            self.terms = {k: v for k, v in self.terms.items() if _nz(v)}

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "EqForm":
        return cls(n, {})

    @classmethod
    def make(
        cls,
        n: int,
        coeff=Fraction(1),
        beta: int = 0,
        pi: int = 0,
        lie: Sequence[int] | None = None,
        coord: Sequence[int] | None = None,
        gauss=Fraction(0),
        ext: int = 0,
    ) -> "EqForm":
        lie = tuple(lie) if lie is not None else (0,) * n
        coord = tuple(coord) if coord is not None else (0,) * (2 * n)
        if len(lie) != n or len(coord) != 2 * n:
            raise ValueError("lie/coord exponent vectors have the wrong length")
        if ext < 0 or ext >= 1 << (2 * n):
            raise ValueError("exterior bitmask out of range")
        if isinstance(gauss, (int, Fraction)):
            g = (Fraction(gauss),) * n
        else:
            g = tuple(Fraction(x) for x in gauss)
        if len(g) != n or any(x < 0 for x in g):
            raise ValueError("Gaussian exponents must be one value >= 0 per plane")
        return cls(n, {(beta, pi, lie, coord, g, ext): coeff})

    @classmethod
    def one(cls, n: int) -> "EqForm":
        return cls.make(n)

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: "EqForm") -> "EqForm":
        if self.n != other.n:
            raise ValueError("plane count mismatch")
        terms = dict(self.terms)
        for key, c in other.terms.items():
            if key in terms:
                s = terms[key] + c
                if _nz(s):
                    terms[key] = s
                else:
                    del terms[key]
            else:
                terms[key] = c
        return EqForm(self.n, terms)

    def __neg__(self) -> "EqForm":
        return EqForm(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "EqForm") -> "EqForm":
        return self + (-other)

    def scale(self, factor) -> "EqForm":
        return EqForm(self.n, {k: c * factor for k, c in self.terms.items()})

    def beta_shift(self, power: int) -> "EqForm":
        return EqForm(self.n, {(b + power, p, l, m, g, e): c for (b, p, l, m, g, e), c in self.terms.items()})

    @staticmethod
    def _merge_ext(e1: int, e2: int) -> tuple[int, int] | None:
        """Wedge of two canonical exterior monomials: (sign, combined) or None."""
        if e1 & e2:
            return None
        sign = 1
        rest = e1
        e = e2
        while e:
            low = e & (-e)
            # generators of e1 strictly greater than this bit must be hopped over
            higher = rest >> (low.bit_length())
            if bin(higher).count("1") % 2:
                sign = -sign
            e ^= low
        return sign, e1 | e2

    def wedge(self, other: "EqForm") -> "EqForm":
        if self.n != other.n:
            raise ValueError("plane count mismatch")
        out: dict = {}
        for (b1, p1, l1, m1, g1, e1), c1 in self.terms.items():
            for (b2, p2, l2, m2, g2, e2), c2 in other.terms.items():
                merged = self._merge_ext(e1, e2)
                if merged is None:
                    continue
                sign, ext = merged
                key = (
                    b1 + b2,
                    p1 + p2,
                    tuple(a + b for a, b in zip(l1, l2)),
                    tuple(a + b for a, b in zip(m1, m2)),
                    tuple(a + b for a, b in zip(g1, g2)),
                    ext,
                )
                c = c1 * c2
                if sign < 0:
                    c = -c
                if key in out:
                    s = out[key] + c
                    if _nz(s):
                        out[key] = s
                    else:
                        del out[key]
                elif _nz(c):
                    out[key] = c
        return EqForm(self.n, out)

    __mul__ = wedge

    # -- operations: d, contraction, Lie derivative ------------------------

    @staticmethod
    def _ext_insert(ext: int, i: int) -> tuple[int, int] | None:
        if ext & (1 << i):
            return None
        below = ext & ((1 << i) - 1)
        sign = -1 if bin(below).count("1") % 2 else 1
        return sign, ext | (1 << i)

    def d(self) -> "EqForm":
        out = EqForm.zero(self.n)
        acc: dict = {}
        for (b, p, lie, coord, g, ext), c in self.terms.items():
            for i in range(2 * self.n):
                ins = self._ext_insert(ext, i)
                if ins is None:
                    continue
                sign, new_ext = ins
                # polynomial derivative
                if coord[i] > 0:
                    nc = list(coord)
                    nc[i] -= 1
                    val = c * Fraction(coord[i] * sign)
                    key = (b, p, lie, tuple(nc), g, new_ext)
                    acc[key] = acc.get(key, 0) + val
                # Gaussian derivative: -2 g_j pi u_i for the plane of u_i
                gj = g[i // 2]
                if gj != 0:
                    nc = list(coord)
                    nc[i] += 1
                    val = c * (Fraction(-2 * sign) * gj)
                    key = (b, p + 1, lie, tuple(nc), g, new_ext)
                    acc[key] = acc.get(key, 0) + val
        return EqForm(self.n, acc)

    @staticmethod
    def _ext_remove(ext: int, i: int) -> tuple[int, int]:
        below = ext & ((1 << i) - 1)
        sign = -1 if bin(below).count("1") % 2 else 1
        return sign, ext & ~(1 << i)

    def _contract_plane(self, j: int, weighted: bool) -> "EqForm":
        """Interior product with V_j (or z_j V_j when weighted)."""
        c_rot = ROTATION_CONSTANT
        acc: dict = {}
        for (b, p, lie, coord, g, ext), c in self.terms.items():
            for bit, factor_idx, sgn in ((2 * j, 2 * j + 1, -1), (2 * j + 1, 2 * j, 1)):
                if not ext & (1 << bit):
                    continue
                sign, new_ext = self._ext_remove(ext, bit)
                nc = list(coord)
                nc[factor_idx] += 1
                nl = list(lie)
                if weighted:
                    nl[j] += 1
                val = c * Fraction(sgn * sign * c_rot)
                key = (b, p, tuple(nl), tuple(nc), g, new_ext)
                acc[key] = acc.get(key, 0) + val
        return EqForm(self.n, acc)

    def contract(self) -> "EqForm":
        """Interior product with X(z) = sum_j z_j V_j."""
        out = EqForm.zero(self.n)
        for j in range(self.n):
            out = out + self._contract_plane(j, weighted=True)
        return out

    def lie_derivative(self, j: int) -> "EqForm":
        """L_{V_j} = d iota_{V_j} + iota_{V_j} d for the unweighted rotation field."""
        return self._contract_plane(j, weighted=False).d() + self.d()._contract_plane(j, weighted=False)

    def is_rotation_invariant(self) -> bool:
        return all(not self.lie_derivative(j).terms for j in range(self.n))

    def cartan_q(self) -> "EqForm":
        """Q = d - beta^{-1} iota_X; defined on rotation-invariant forms."""
        if not self.is_rotation_invariant():
            raise SeriesError("cartan_q requires a rotation-invariant form")
        return self.d() - self.contract().beta_shift(-1)

    # -- structure queries -------------------------------------------------

    @staticmethod
    def term_degree(key: Key) -> int:
        b, _p, _lie, _coord, _g, ext = key
        return bin(ext).count("1") - 2 * b

    def degrees(self) -> set[int]:
        return {self.term_degree(k) for k in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def max_magnitude(self) -> float:
        return max((_magnitude(c) for c in self.terms.values()), default=0.0)

    def permute_planes(self, perm: Sequence[int]) -> "EqForm":
        """Relabel plane j as perm[j] (a bijection of 0..n-1)."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of the planes")
        out: dict = {}
        for (b, p, lie, coord, g, ext), c in self.terms.items():
            nl = [0] * self.n
            nc = [0] * (2 * self.n)
            ng = [Fraction(0)] * self.n
            for j in range(self.n):
                nl[perm[j]] = lie[j]
                ng[perm[j]] = g[j]
                nc[2 * perm[j]] = coord[2 * j]
                nc[2 * perm[j] + 1] = coord[2 * j + 1]
            ne = 0
            moved = []
            for i in range(2 * self.n):
                if ext & (1 << i):
                    j, off = divmod(i, 2)
                    moved.append(2 * perm[j] + off)
            sign = _permutation_sign_of_list(moved)
            for i in moved:
                ne |= 1 << i
            cc = c if sign > 0 else -c
            key = (b, p, tuple(nl), tuple(nc), tuple(ng), ne)
            out[key] = out.get(key, 0) + cc
        return EqForm(self.n, out)

    def __eq__(self, other):
        return isinstance(other, EqForm) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "EqForm(0)"
        bits = []
        for (b, p, lie, coord, g, ext), c in sorted(self.terms.items(), key=lambda kv: (kv[0][5], kv[0][0], kv[0][2], kv[0][3])):
            parts = [f"{c}"]
            if p:
                parts.append(f"pi^{p}")
            if b:
                parts.append(f"b^{b}")
            for j, e in enumerate(lie):
                if e:
                    parts.append(f"z{j + 1}^{e}" if e != 1 else f"z{j + 1}")
            for i, e in enumerate(coord):
                if e:
                    name = f"{'xy'[i % 2]}{i // 2 + 1}"
                    parts.append(f"{name}^{e}" if e != 1 else name)
            for j, gj in enumerate(g):
                if gj:
                    parts.append(f"exp(-{gj}*pi*r{j + 1}^2)")
            for i in range(2 * len(lie)):
                if ext & (1 << i):
                    parts.append(f"d{'xy'[i % 2]}{i // 2 + 1}")
            bits.append("*".join(parts))
        return "EqForm(" + " + ".join(bits) + ")"


def _permutation_sign_of_list(values: list[int]) -> int:
    sign = 1
    v = list(values)
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if v[i] > v[j]:
                sign = -sign
    return sign


def wedge(a: EqForm, b: EqForm) -> EqForm:
    return a.wedge(b)


def d(a: EqForm) -> EqForm:
    return a.d()


def contract(a: EqForm) -> EqForm:
    return a.contract()


def cartan_q(a: EqForm) -> EqForm:
    return a.cartan_q()


# ---------------------------------------------------------------------------
# Thom representatives
# ---------------------------------------------------------------------------


def mq_plane_factor(n: int, j: int) -> EqForm:
    """e^{-pi r_j^2} (beta^{-1} z_j + pi dx_j dy_j): the plane-j Thom factor."""
    lie = [0] * n
    lie[j] = 1
    share = tuple(Fraction(1) if i == j else Fraction(0) for i in range(n))
    euler = EqForm.make(n, beta=-1, lie=lie, gauss=share)
    vol = EqForm.make(n, pi=1, gauss=share, ext=(1 << (2 * j)) | (1 << (2 * j + 1)))
    return euler + vol


def mq_thom_form(n: int) -> EqForm:
    """The closed Gaussian Thom representative on R^{2n}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    form = mq_plane_factor(n, 0)
    for j in range(1, n):
        form = form * mq_plane_factor(n, j)
    return form


@dataclass
class GermPoly:
    """Restriction to the origin: a Lie-variable polynomial with bookkeeping.

    ``terms`` maps (beta_pow, pi_pow, lie exponent tuple) to coefficients.
    """

    n: int
    terms: dict

    def coefficient(self, beta: int, lie: Sequence[int], pi: int = 0):
        return self.terms.get((beta, pi, tuple(lie)), 0)

    def single_plane_series(self, j: int = 0, beta: int | None = None, length: int | None = None) -> list:
        """Coefficients [c_0, c_1, ...] of z_j powers (other planes at power 0)."""
        degs = [lie[j] for (_b, _p, lie) in self.terms]
        top = (max(degs) + 1) if degs else 1
        if length is not None:
            top = max(top, length)
        out = [0] * top
        for (b, p, lie), c in self.terms.items():
            if beta is not None and b != beta:
                continue
            if any(e != 0 for k, e in enumerate(lie) if k != j):
                continue
            if p != 0:
                continue
            out[lie[j]] = out[lie[j]] + c
        return out

    def is_zero(self) -> bool:
        return not self.terms


def restrict_origin(a: EqForm) -> GermPoly:
    """Set coordinates to zero: drop positive exterior/coordinate degree, Gaussian -> 1."""
    out: dict = {}
    for (b, p, lie, coord, _g, ext), c in a.terms.items():
        if ext != 0 or any(coord):
            continue
        key = (b, p, lie)
        cur = out.get(key)
        s = c if cur is None else cur + c
        if _nz(s):
            out[key] = s
        else:
            out.pop(key, None)
    return GermPoly(a.n, out)


def fiber_integral(a: EqForm) -> GermPoly:
    """Integrate over R^{2n}; only full exterior degree contributes.

    Gaussian moments are exact: for each plane the base integral of
    e^{-g_j pi r_j^2} is 1/g_j, and each even coordinate power u^{2s}
    contributes (2s-1)!! / (2 g_j)^s pi^{-s}.  Odd powers integrate to
    zero.  The result is a Lie polynomial with beta and pi powers tracked.
    """
    full = (1 << (2 * a.n)) - 1
    out: dict = {}
    for (b, p, lie, coord, g, ext), c in a.terms.items():
        if ext != full:
            continue
        if any(e % 2 for e in coord):
            continue
        if any(gj == 0 for gj in g):
            raise SeriesError("fiber integral requires Gaussian decay in every plane")
        factor = Fraction(1, 1)
        pi_drop = 0
        for i, e in enumerate(coord):
            s = e // 2
            if s:
                gj = g[i // 2]
                factor *= Fraction(_double_factorial(2 * s - 1), 1) / (2 * gj) ** s
                pi_drop += s
        for gj in g:
            factor /= gj
        key = (b, p - pi_drop, lie)
        val = c * factor
        cur = out.get(key)
        s2 = val if cur is None else cur + val
        if _nz(s2):
            out[key] = s2
        else:
            out.pop(key, None)
    return GermPoly(a.n, out)


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


# ---------------------------------------------------------------------------
# elliptic Thom forms
# ---------------------------------------------------------------------------


def _lie_series_form(n: int, j: int, coeffs: Sequence, beta: int = 0) -> EqForm:
    """sum_m coeffs[m] z_j^m as an EqForm (pure Lie-variable series)."""
    terms = {}
    no_gauss = (Fraction(0),) * n
    for m, c in enumerate(coeffs):
        if _nz(c):
            lie = [0] * n
            lie[j] = m
            terms[(beta, 0, tuple(lie), (0,) * (2 * n), no_gauss, 0)] = c
    return EqForm(n, terms)


def _normalized_sigma_series(z_order: int, q_order: int) -> list:
    """S(w) = sigma/z in scaled units, as a list of QExp coefficients."""
    sig = sigma_qexp(z_order + 1, q_order)
    return sig.coeffs[1 : z_order + 1]


def _normalized_upsilon_series(z_order: int, q_order: int) -> list:
    """upsilon(z)/z in scaled units: -e^{w/2} S(w)."""
    import math as _math

    S = PowerSeries(_normalized_sigma_series(z_order, q_order), z_order, QExp.zeros(q_order))
    half = PowerSeries(
        [QExp.constant(Fraction(-1, 2**m * _math.factorial(m)), q_order) for m in range(z_order)],
        z_order,
        QExp.zeros(q_order),
    )
    return (half * S).coeffs


def elliptic_thom_form(
    family: str,
    n: int,
    k: int,
    h_logs: Sequence[tuple] = (),
    tau: TauPoint | None = None,
    z_order: int = 8,
    q_order: int = 8,
    n_terms: int = 60,
    shift_tol: float = 1e-8,
) -> EqForm:
    """The rank-n elliptic Thom representative at a commuting pair.

    Planes 1..k carry the Gaussian Thom factor times the invertible series
    f(tau, z_j)/z_j (f = sigma for the spin family, upsilon for the unitary
    family); planes k+1..n carry beta^{-1} f(tau, z_j + h1 - tau h2) for the
    logarithms (h1, h2) of the pair, expanded about z_j = 0.  Exact QExp
    coefficients are used whenever no shifted factor occurs (k = n); shifted
    factors are numeric Taylor germs, stored in the same scaled z-units as
    the formal series.
    """
    if family not in ("U", "SpinEven"):
        raise ValueError("family must be U or SpinEven")
    if not (0 <= k <= n):
        raise ValueError("need 0 <= k <= n")
    if len(h_logs) != n - k:
        raise ValueError("need one (h1, h2) log pair per shifted plane")
    if k < n and tau is None:
        raise ValueError("tau is required when shifted factors occur")

    if family == "SpinEven":
        series = _normalized_sigma_series(z_order, q_order)
        numeric_f = sigma_value
    else:
        series = _normalized_upsilon_series(z_order, q_order)
        numeric_f = upsilon_value

    form = EqForm.one(n)
    for j in range(k):
        factor = mq_plane_factor(n, j) * _lie_series_form(n, j, series)
        form = form * factor
    for idx, j in enumerate(range(k, n)):
        h1, h2 = h_logs[idx]
        t = complex(tau.tau)
        shift = complex(h1) - t * complex(h2)
        if lattice_distance(tau, shift) < shift_tol:
            raise SeriesError(f"shift for plane {j + 1} lies on the lattice (factor would vanish)")
        germ = germ_at_zero(lambda tp, w: numeric_f(tp, w + shift, n_terms), tau, z_order - 1, radius=min(1.0, lattice_distance(tau, shift)), points=max(4 * z_order, 16))
        scaled = [germ.coeffs[m] / TWO_PI_I**m for m in range(len(germ.coeffs))]
        form = form * _lie_series_form(n, j, scaled, beta=-1)
    return form




# ---------------------------------------------------------------------------
# the rotation-invariant S^2 model
# ---------------------------------------------------------------------------


@dataclass
class S2Form:
    """Invariant equivariant form on S^2 in (height, angular 1-form) coordinates.

    Components are polynomials in (z, h) with beta powers:
    ``f0 + f1 dh + f2 drot + f3 dh drot``, each a dict
    {(beta_pow, z_pow, h_pow): coeff}.  The Cartan differential acts by

        Q(f0, f1, f2, f3) = (-b z f2, d_h f0 + b z f3, 0, d_h f2),  b = beta^{-1}.
    """

    f0: dict
    f1: dict
    f2: dict
    f3: dict

    @staticmethod
    def _clean(d: dict) -> dict:
        return {k: v for k, v in d.items() if _nz(v)}

    def components(self):
        return (self._clean(self.f0), self._clean(self.f1), self._clean(self.f2), self._clean(self.f3))

    def cartan_q(self) -> "S2Form":
        f0, f1, f2, f3 = self.components()
        new0 = {}
        for (b, zp, hp), c in f2.items():
            new0[(b - 1, zp + 1, hp)] = new0.get((b - 1, zp + 1, hp), 0) - c
        new1 = {}
        for (b, zp, hp), c in f0.items():
            if hp > 0:
                key = (b, zp, hp - 1)
                new1[key] = new1.get(key, 0) + c * hp
        for (b, zp, hp), c in f3.items():
            key = (b - 1, zp + 1, hp)
            new1[key] = new1.get(key, 0) + c
        new3 = {}
        for (b, zp, hp), c in f2.items():
            if hp > 0:
                key = (b, zp, hp - 1)
                new3[key] = new3.get(key, 0) + c * hp
        return S2Form(self._clean(new0), self._clean(new1), {}, self._clean(new3))

    def is_closed(self) -> bool:
        q = self.cartan_q()
        return not any(q.components())

    def pole_restriction(self, sign: int) -> dict:
        """f0 at h = +-1 as a polynomial {(beta, z_pow): coeff}."""
        out: dict = {}
        for (b, zp, hp), c in self._clean(self.f0).items():
            key = (b, zp)
            out[key] = out.get(key, 0) + c * (sign**hp)
        return self._clean(out)


@dataclass
class S2Section:
    """Borel part on S^2 plus the germ data at the two poles."""

    borel_part: S2Form
    pole_values: tuple  # (north germ coeffs, south germ coeffs) in the Lie variable


@dataclass
class S2CheckReport:
    invariant: bool
    analytic: bool
    closed: bool


def s2_section_check(section: S2Section) -> S2CheckReport:
    """Check the three section conditions in the rotation-invariant model.

    Forms expressed in the (z, h, drot) model are rotation-invariant by
    construction; analyticity demands the pole restrictions of the Borel
    part be z-constant and match the supplied pole germs' constants; closed
    means Q vanishes identically.
    """
    form = section.borel_part
    invariant = True
    analytic = True
    for sign, germ in zip((1, -1), section.pole_values):
        restr = form.pole_restriction(sign)
        if any(zp > 0 and _nz(c) for (_b, zp), c in restr.items()):
            analytic = False
            continue
        const = sum((c for (_b, zp), c in restr.items() if zp == 0), Fraction(0))
        g0 = germ[0] if len(germ) else 0
        if _nz(const - g0):
            analytic = False
        if any(_nz(c) for c in germ[1:]):
            analytic = False
    closed = form.is_closed()
    return S2CheckReport(invariant, analytic, closed)


# ---------------------------------------------------------------------------
# seeded random invariant forms (for the verification suites)
# ---------------------------------------------------------------------------


def _invariant_blocks(n: int, j: int) -> list[EqForm]:
    """Rotation-invariant building blocks attached to plane j."""
    r2 = [0] * (2 * n)
    x2 = list(r2)
    x2[2 * j] = 2
    y2 = list(r2)
    y2[2 * j + 1] = 2
    rad = EqForm.make(n, coord=x2) + EqForm.make(n, coord=y2)
    vol = EqForm.make(n, ext=(1 << (2 * j)) | (1 << (2 * j + 1)))
    xdy = list(r2)
    xdy[2 * j] = 1
    ydx = list(r2)
    ydx[2 * j + 1] = 1
    angular = EqForm.make(n, coord=xdy, ext=1 << (2 * j + 1)) - EqForm.make(n, coord=ydx, ext=1 << (2 * j))
    radial = EqForm.make(n, coord=xdy, ext=1 << (2 * j)) + EqForm.make(n, coord=ydx, ext=1 << (2 * j + 1))
    lie = [0] * n
    lie[j] = 1
    zed = EqForm.make(n, lie=lie)
    return [rad, vol, angular, radial, zed]


def random_invariant_form(n: int, rng: random.Random, max_terms: int = 3) -> EqForm:
    """A random rotation-invariant form: Gaussian times products of blocks."""
    total = EqForm.zero(n)
    for _ in range(rng.randint(1, max_terms)):
        g = tuple(Fraction(rng.randint(0, 2)) for _ in range(n))
        coeff = Fraction(rng.randint(-4, 4))
        if coeff == 0:
            coeff = Fraction(1)
        beta = rng.randint(-1, 1)
        term = EqForm.make(n, coeff=coeff, beta=beta, gauss=g)
        for j in range(n):
            blocks = _invariant_blocks(n, j)
            for _k in range(rng.randint(0, 2)):
                term = term * rng.choice(blocks)
        total = total + term
    return total
