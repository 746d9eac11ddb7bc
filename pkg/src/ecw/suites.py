"""Named verification suites with deterministic, machine-readable reports.

Each suite is a list of named checks; a check yields either a residual
compared against a threshold or an exactness boolean.  Reports are stable:
checks are emitted sorted by name, randomness is seeded, and timing fields
are suppressed in deterministic mode.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import cartan, fgl, finite, loopchar, modular, theta
from .qseries import QExp
from .sl2 import S as SL2_S
from .sl2 import T as SL2_T
from .theta import TauPoint
from .thresholds import DEFAULTS, Thresholds

SUITE_NAMES = ("modular", "theta", "looijenga", "cubical", "thom", "fgl", "finite")


@dataclass
class CheckResult:
    name: str
    kind: str  # "residual" | "exact"
    value: float | bool
    threshold: float | None
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "kind": self.kind, "pass": self.passed}
        if self.kind == "residual":
            out["residual"] = self.value
            out["threshold"] = self.threshold
        else:
            out["exact"] = bool(self.value)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    params: dict
    checks: list
    wall_time_s: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, deterministic: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "params": dict(sorted(self.params.items())),
            "pass": self.passed,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
        }
        if not deterministic and self.wall_time_s is not None:
            out["wall_time_s"] = self.wall_time_s
        return out


def _residual(name: str, value: float, threshold: float, detail: str = "") -> CheckResult:
    return CheckResult(name, "residual", float(value), float(threshold), float(value) < float(threshold), detail)


def _exact(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, "exact", bool(ok), None, bool(ok), detail)


# ---------------------------------------------------------------------------
# individual suites
# ---------------------------------------------------------------------------


def suite_modular(seed: int, thresholds: Thresholds, order: int = 30) -> list:
    checks = []
    residual = modular.mf_relation_residual(order)
    checks.append(_exact("modular.c4^3-c6^2-1728delta", residual.is_zero_series(), f"q-order {order}"))

    gens = modular.ring_generators(order)
    delta = gens["delta"]
    unit = delta.qexp * delta.qexp.reciprocal()
    one = QExp.one(max(1, unit.order - unit.min_exp))
    checks.append(_exact("modular.delta-invertible", unit.agrees_with(one)))
    checks.append(
        _exact(
            "modular.grading",
            gens["c4"].degree == -8 and gens["c6"].degree == -12 and delta.degree == -24 and modular.periodicity_degree(-12) == 24,
        )
    )

    for k, tau, cutoff in ((4, 2j, 60), (4, 1j + 0.3, 60), (6, 1j, 40), (6, 2j, 40), (8, 1.5j, 30)):
        val, est = modular.eisenstein_lattice_numeric(k, tau, cutoff)
        ref = modular.eisenstein_numeric_from_qexp(k, tau, 40)
        diff = abs(val - ref)
        checks.append(
            _residual(
                f"modular.lattice-oracle-k{k}-tau{tau}",
                diff,
                est * thresholds.lattice_oracle_factor,
                f"cutoff {cutoff}, tail estimate {est:.2e}",
            )
        )
    return checks


def suite_theta(seed: int, thresholds: Thresholds) -> list:
    checks = []
    rng = random.Random(seed)

    # cross-method certification of the exponential-form convention
    worst = 0.0
    for im in (0.8, 1.1, 1.4, 1.7, 2.0):
        for j in range(5):
            tau = TauPoint(complex(-0.4 + 0.2 * j, im))
            z = complex(0.25 * math.cos(1.1 * j + im), 0.25 * math.sin(0.7 * j - im))
            a = theta.sigma_product(tau, z, 60).value
            b = theta.sigma_eisenstein(tau, z, 40, 60).value
            worst = max(worst, abs(a - b))
    checks.append(_residual("theta.sigma-cross-method", worst, thresholds.sigma_cross_method, "5x5 grid, n_terms=60, z_order=40"))

    # Eisenstein binding through log(sigma/z)
    q_order = 16
    logS = theta.sigma_normalized_part(8, q_order).log()
    bind_ok = True
    for k in (1, 2, 3):
        coeff = logS.coeffs[2 * k]
        scale = modular.bernoulli(2 * k) / Fraction(2 * k * math.factorial(2 * k))
        extracted = coeff.map_coefficients(lambda x: x / scale)
        if not extracted.agrees_with(modular.eisenstein_qexp(2 * k, q_order).qexp):
            bind_ok = False
    checks.append(_exact("theta.eisenstein-binding", bind_ok, "e2,e4,e6 from log(sigma/z), q-order 15"))

    # quasi-periodicity and modularity at seeded points
    qp_worst = 0.0
    mod_worst = 0.0
    for _ in range(20):
        tau = TauPoint(complex(rng.uniform(-0.4, 0.4), rng.uniform(0.9, 1.8)))
        z = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.3, 0.3))
        res = theta.check_quasiperiodicity(tau, z, 60)
        qp_worst = max(qp_worst, res["res_shift1"], res["res_shift_tau"])
        for gamma in (SL2_S, SL2_T):
            mod_worst = max(mod_worst, theta.check_modularity(tau, z, gamma, 60))
    checks.append(_residual("theta.quasiperiodicity", qp_worst, thresholds.quasiperiodicity, "20 seeded points"))
    checks.append(_residual("theta.modularity-S-T", mod_worst, thresholds.modularity, "20 seeded points"))

    # zero locus: only the lattice zero in the fundamental cell
    tau = TauPoint(1j)
    floor = float("inf")
    for a in range(40):
        for b in range(40):
            z = complex((a + 0.5) / 40 - 0.5, (b + 0.5) / 40 - 0.5)
            if abs(z) < 0.1 or fgl.lattice_distance(tau, z) < 0.1:
                continue
            floor = min(floor, abs(theta.sigma_value(tau, z, 60)))
    checks.append(
        _exact(
            "theta.zero-scan-floor",
            floor > thresholds.sigma_zero_floor,
            f"min |sigma| off the zero = {floor:.3e} > {thresholds.sigma_zero_floor:.0e}",
        )
    )

    # character identities
    q12 = 12
    spin2 = loopchar.char_spin2_qexp(q12)
    lu1 = loopchar.char_lu1_qexp(q12)
    from .ypoly import YPoly

    rel = lu1 - spin2 * (-YPoly.y_power(1))
    checks.append(_exact("theta.char-lu1-is-minus-sqrt-y-spin2", rel.is_zero_series(), "q-order 12"))
    checks.append(_exact("theta.char-spin2-binds-sigma", loopchar.char_spin2_matches_sigma(q12, 8), "q-order 12"))
    return checks


def suite_looijenga(seed: int, thresholds: Thresholds) -> list:
    checks = []
    rng = random.Random(seed)
    tau = TauPoint(1j)
    spin4 = loopchar.GroupTag("SpinEven", 2)
    su2 = loopchar.GroupTag("SU", 2)
    lvl = loopchar.Level.identity(2)

    worst_spin = 0.0
    worst_su = 0.0
    for _ in range(10):
        zs = [complex(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)) for _ in range(2)]
        # even-sum vectors for the spin lattice
        m = rng.choice([[0, 0], [1, 1], [1, -1], [2, 0]])
        n = rng.choice([[1, 1], [0, 2], [1, -1]])
        worst_spin = max(worst_spin, loopchar.looijenga_shift_check(spin4, lvl, tau, zs, m, n))
        z0 = complex(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2))
        zs_su = [z0, -z0]
        m_su = rng.choice([[0, 0], [1, -1], [2, -2]])
        n_su = rng.choice([[1, -1], [0, 0], [-1, 1]])
        worst_su = max(worst_su, loopchar.looijenga_shift_check(su2, lvl, tau, zs_su, m_su, n_su))
    checks.append(_residual("looijenga.spin4-identity-gram", worst_spin, thresholds.looijenga, "10 seeded samples"))
    checks.append(_residual("looijenga.su2-level1", worst_su, thresholds.looijenga, "10 seeded samples"))

    zero = loopchar.looijenga_shift_check(spin4, lvl, tau, [0.1, 0.2], [0, 0], [0, 0])
    checks.append(_exact("looijenga.zero-shift-exact", zero == 0.0))

    anomaly = loopchar.modular_anomaly([{"z1": 1}, {"z2": 1}])
    checks.append(_exact("looijenga.anomaly-is-p1-multiple", anomaly.is_multiple_of_p1 and anomaly.vanishes_mod_p1))
    return checks


def suite_cubical(seed: int, thresholds: Thresholds, samples: int = 100) -> list:
    checks = []
    for tau_c in (1j, 0.3 + 1.1j):
        rep = fgl.cubical_verify(TauPoint(tau_c), samples, seed)
        label = f"tau={tau_c}"
        checks.append(_residual(f"cubical.rigid[{label}]", rep.rigid, thresholds.cubical))
        checks.append(_residual(f"cubical.symmetric[{label}]", rep.symmetric, thresholds.cubical))
        checks.append(_residual(f"cubical.cocycle[{label}]", rep.cocycle, thresholds.cubical))
        checks.append(_residual(f"cubical.sigma-upsilon[{label}]", rep.sigma_upsilon, thresholds.cubical))
        checks.append(_residual(f"cubical.string[{label}]", rep.string, thresholds.cubical))
        checks.append(_residual(f"cubical.sl2-invariance[{label}]", rep.sl2, thresholds.cubical, f"rejected {rep.rejected}"))
    return checks


def suite_fgl(seed: int, thresholds: Thresholds) -> list:
    checks = []
    law_add = fgl.fgl_from_coordinate(fgl.additive_coordinate(12), 12)
    rep = fgl.fgl_check(law_add)
    checks.append(_exact("fgl.additive-x-plus-y", rep.exact and _is_additive(law_add)))

    law_mult = fgl.fgl_from_coordinate(fgl.multiplicative_coordinate(12), 12)
    rep_m = fgl.fgl_check(law_mult)
    checks.append(_exact("fgl.multiplicative-x+y-xy", rep_m.exact and _is_multiplicative(law_mult), "order 12"))

    law_sigma = fgl.fgl_from_coordinate(fgl.sigma_coordinate(10, 8), 10)
    rep_s = fgl.fgl_check(law_sigma)
    checks.append(_exact("fgl.sigma-axioms-exact", rep_s.exact, "unit/comm/assoc, order 10"))

    res = fgl.sigma_addition_residual(TauPoint(1j), 0.05, 0.07, order=12, q_order=8)
    checks.append(_residual("fgl.sigma-addition-oracle", res, thresholds.fgl_addition, "tau=i, z=(0.05, 0.07), order 12"))
    return checks


def _is_additive(law) -> bool:
    for i in range(law.order):
        for j in range(law.order - i):
            want = Fraction(1) if (i, j) in ((1, 0), (0, 1)) else Fraction(0)
            if law.F.get(i, j) != want:
                return False
    return True


def _is_multiplicative(law) -> bool:
    for i in range(law.order):
        for j in range(law.order - i):
            want = Fraction(-1) if (i, j) == (1, 1) else Fraction(1) if (i, j) in ((1, 0), (0, 1)) else Fraction(0)
            if law.F.get(i, j) != want:
                return False
    return True


def suite_thom(seed: int, thresholds: Thresholds) -> list:
    checks = []
    rng = random.Random(seed)
    ok_q2 = True
    for _ in range(50):
        n = rng.choice([1, 2])
        form = cartan.random_invariant_form(n, rng)
        if not form.cartan_q().cartan_q().is_zero():
            ok_q2 = False
            break
    checks.append(_exact("thom.Q-squared-zero", ok_q2, "50 seeded invariant forms, n <= 2"))

    ok_mq = True
    ok_res = True
    for n in (1, 2, 3):
        u = cartan.mq_thom_form(n)
        if not u.cartan_q().is_zero():
            ok_mq = False
        germ = cartan.restrict_origin(u)
        want = {(-n, 0, tuple([1] * n)): Fraction(1)}
        if germ.terms != want:
            ok_res = False
    checks.append(_exact("thom.mq-closed", ok_mq, "n = 1, 2, 3"))
    checks.append(_exact("thom.mq-restricts-to-euler", ok_res, "beta^-n z_1..z_n"))

    fi = cartan.fiber_integral(cartan.mq_thom_form(1))
    checks.append(_exact("thom.mq-fiber-integral-pi", fi.terms == {(0, 1, (0,)): Fraction(1)}, "top component integrates to pi exactly"))

    et = cartan.elliptic_thom_form("SpinEven", 1, 1, (), None, z_order=8, q_order=8)
    germ = cartan.restrict_origin(et)
    series = germ.single_plane_series(0, beta=-1)
    sig = theta.sigma_qexp(9, 8)
    ok_sigma = series[0] == 0 and all((series[m] - sig.coeffs[m]).is_zero_series() for m in range(1, 8))
    checks.append(_exact("thom.elliptic-restricts-to-sigma", ok_sigma, "k = n = 1, z-order 7"))
    checks.append(_exact("thom.elliptic-q-closed", et.cartan_q().is_zero()))

    perm_ok = True
    sym = cartan.elliptic_thom_form("SpinEven", 2, 2, (), None, z_order=4, q_order=4)
    if sym.permute_planes([1, 0]) != sym:
        perm_ok = False
    checks.append(_exact("thom.weyl-block-symmetry", perm_ok, "plane swap is the identity on the form"))
    return checks


def suite_finite(seed: int, thresholds: Thresholds, group_name: str = "", cocycle_spec: str = "") -> list:
    checks = []
    counts = {"z2": 4, "s3": 18, "q8": 40}
    ok_counts = True
    for name, want in counts.items():
        g = finite.builtin_group(name)
        if len(finite.commuting_pairs(g)) != want:
            ok_counts = False
    checks.append(_exact("finite.pair-counts", ok_counts, "z2: 4, s3: 18, q8: 40"))

    corpus = ["z2", "z3", "z4", "z5", "z6", "v4", "s3", "d4", "q8", "z12", "d6"]
    ok_left = all(finite.check_sl2_left_action(finite.builtin_group(n), seed=seed)[0] for n in corpus)
    checks.append(_exact("finite.sl2-left-action", ok_left, "corpus groups of order <= 12"))
    ok_comm = all(finite.check_conj_sl2_commute(finite.builtin_group(n))[0] for n in corpus)
    checks.append(_exact("finite.conj-sl2-commute", ok_comm))

    ok_cob = True
    for n in range(2, 7):
        for k in range(n):
            if not finite.coboundary_check(finite.zn_cocycle(n, k))[0]:
                ok_cob = False
    checks.append(_exact("finite.zn-cocycles-closed", ok_cob, "delta(zn(n,k)) = 1, n <= 6, all k"))

    ok_fq = True
    for n in range(2, 7):
        if not finite.fq_descent_check(finite.zn_cocycle(n, 1))[0]:
            ok_fq = False
    q8 = finite.builtin_group("q8")
    hom = [0, 0, 0, 0, 1, 1, 1, 1]
    pulled = finite.pullback_cocycle(finite.zn_cocycle(2, 1), hom, q8)
    if not finite.fq_descent_check(pulled)[0]:
        ok_fq = False
    checks.append(_exact("finite.fq-descent", ok_fq, "z/n (n <= 6) and q8 pullback"))

    if group_name:
        g = _load_group(group_name)
        if cocycle_spec:
            coc = _load_cocycle(cocycle_spec)
            ok, worst, _w = finite.fq_descent_check(coc)
            checks.append(_exact(f"finite.fq-descent[{group_name}]", ok, f"worst residual {worst:.2e}"))
        else:
            rep = finite.devoto_report(g)
            checks.append(_exact(f"finite.devoto[{group_name}]", rep.orbit_count >= 1, f"{rep.orbit_count} orbits"))
    return checks


def _load_group(spec: str) -> "finite.FiniteGroup":
    if spec.startswith("builtin:"):
        return finite.builtin_group(spec.split(":", 1)[1])
    return finite.FiniteGroup.from_file(spec)


def _load_cocycle(spec: str) -> "finite.Cocycle3":
    if spec.startswith("zn:"):
        n, k = spec.split(":", 1)[1].split(",")
        return finite.zn_cocycle(int(n), int(k))
    raise ValueError(f"unknown cocycle spec {spec!r} (expected zn:n,k)")


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

_SUITE_FUNCS = {
    "modular": lambda seed, th, params: suite_modular(seed, th, order=int(params.get("order", 30))),
    "theta": lambda seed, th, params: suite_theta(seed, th),
    "looijenga": lambda seed, th, params: suite_looijenga(seed, th),
    "cubical": lambda seed, th, params: suite_cubical(seed, th, samples=int(params.get("samples", 100))),
    "thom": lambda seed, th, params: suite_thom(seed, th),
    "fgl": lambda seed, th, params: suite_fgl(seed, th),
    "finite": lambda seed, th, params: suite_finite(seed, th, params.get("group", ""), params.get("cocycle", "")),
}


def run_suite(name: str, seed: int = 42, params: dict | None = None, thresholds: Thresholds = DEFAULTS) -> SuiteReport:
    """Run one named suite (or 'all') and return its report."""
    params = dict(params or {})
    if name != "all" and name not in _SUITE_FUNCS:
        raise KeyError(f"unknown suite {name!r}; choose from {('all',) + SUITE_NAMES}")
    names = list(SUITE_NAMES) if name == "all" else [name]
    t0 = time.perf_counter()
    workers = _worker_count()
    checks: list = []
    if workers > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [(n, pool.submit(_SUITE_FUNCS[n], seed, thresholds, params)) for n in names]
            for n, fut in futures:
                checks.extend(fut.result())
    else:
        for n in names:
            checks.extend(_SUITE_FUNCS[n](seed, thresholds, params))
    wall = time.perf_counter() - t0
    return SuiteReport(name, seed, params, checks, wall)


def _worker_count() -> int:
    raw = os.environ.get("ECW_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
