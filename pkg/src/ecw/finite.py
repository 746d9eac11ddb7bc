"""Finite-group moduli data: commuting pairs, orbits, cocycles, Devoto reports.

Groups are multiplication tables over element indices 0..order-1 with the
associativity, identity and inverse axioms verified at load.  All cocycle
values are exact unit complex numbers stored as rational turn fractions
(t meaning e^{2 pi i t}), so every check below is exact.

The degree-2 special linear group acts on commuting pairs through its
reduction mod N = exponent(G) by

    (h1, h2) |-> (h1^d h2^{-b}, h1^{-c} h2^a),   [[a, b], [c, d]],

the left-action form of precomposition on homomorphisms Z^2 -> G.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Sequence

from .sl2 import sl2_mod_mul, sl2_mod_n_elements


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, mul: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        self.mul = tuple(tuple(int(x) for x in row) for row in mul)
        self.order = len(self.mul)
        if any(len(row) != self.order for row in self.mul):
            raise GroupError("multiplication table must be square")
        if any(not (0 <= x < self.order) for row in self.mul for x in row):
            raise GroupError("table entries out of range")
        self.id = self._find_identity()
        self.inv = self._find_inverses()
        self._check_associativity()
        self.names = list(names) if names else [f"g{i}" for i in range(self.order)]
        if len(self.names) != self.order:
            raise GroupError("names length mismatch")

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.mul[e][x] == x and self.mul[x][e] == x for x in range(self.order)):
                return e
        raise GroupError("no identity element")

    def _find_inverses(self) -> tuple:
        inv = []
        for x in range(self.order):
            found = None
            for y in range(self.order):
                if self.mul[x][y] == self.id and self.mul[y][x] == self.id:
                    found = y
                    break
            if found is None:
                raise GroupError(f"element {x} has no inverse")
            inv.append(found)
        return tuple(inv)

    def _check_associativity(self) -> None:
        n = self.order
        for a in range(n):
            for b in range(n):
                ab = self.mul[a][b]
                for c in range(n):
                    if self.mul[ab][c] != self.mul[a][self.mul[b][c]]:
                        raise GroupError(f"associativity fails at ({a},{b},{c})")

    # -- basic operations --------------------------------------------------

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def conj(self, g: int, h: int) -> int:
        return self.mul[self.mul[g][h]][self.inv[g]]

    def power(self, h: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv[h], -k)
        out = self.id
        base = h
        while k:
            if k & 1:
                out = self.mul[out][base]
            base = self.mul[base][base]
            k >>= 1
        return out

    def element_order(self, h: int) -> int:
        k = 1
        x = h
        while x != self.id:
            x = self.mul[x][h]
            k += 1
        return k

    def exponent(self) -> int:
        ex = 1
        for h in range(self.order):
            o = self.element_order(h)
            ex = ex * o // gcd(ex, o)
        return ex

    def commute(self, a: int, b: int) -> bool:
        return self.mul[a][b] == self.mul[b][a]

    def to_json(self) -> dict:
        return {"order": self.order, "mul": [list(r) for r in self.mul], "names": self.names}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        if "mul" not in data:
            raise GroupError("group JSON needs a 'mul' table")
        g = cls(data["mul"], data.get("names"))
        if "order" in data and data["order"] != g.order:
            raise GroupError("declared order does not match table size")
        return g

    @classmethod
    def from_file(cls, path: str) -> "FiniteGroup":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


# -- built-in corpus ---------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], [str(i) for i in range(n)])


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    order = g.order * h.order

    def idx(a, b):
        return a * h.order + b

    mul = [[0] * order for _ in range(order)]
    names = [""] * order
    for a1 in range(g.order):
        for b1 in range(h.order):
            names[idx(a1, b1)] = f"({g.names[a1]},{h.names[b1]})"
            for a2 in range(g.order):
                for b2 in range(h.order):
                    mul[idx(a1, b1)][idx(a2, b2)] = idx(g.mul[a1][a2], h.mul[b1][b2])
    return FiniteGroup(mul, names)


def symmetric3() -> FiniteGroup:
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]

    def compose(p, q):  # (p*q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(3))

    mul = [[perms.index(compose(p, q)) for q in perms] for p in perms]
    return FiniteGroup(mul, ["e", "(123)", "(132)", "(23)", "(13)", "(12)"])


def dihedral(n: int) -> FiniteGroup:
    """D_n of order 2n: elements r^i and s r^i with s r s = r^{-1}."""
    order = 2 * n

    def idx(flip, rot):
        return flip * n + rot

    mul = [[0] * order for _ in range(order)]
    names = []
    for flip in (0, 1):
        for rot in range(n):
            names.append(("s" if flip else "") + (f"r{rot}" if rot else ("e" if not flip else "")))
    for f1 in (0, 1):
        for r1 in range(n):
            for f2 in (0, 1):
                for r2 in range(n):
                    # (s^f1 r^r1)(s^f2 r^r2) = s^{f1+f2} r^{(-1)^{f2} r1 + r2}
                    rot = ((r1 if f2 == 0 else -r1) + r2) % n
                    mul[idx(f1, r1)][idx(f2, r2)] = idx((f1 + f2) % 2, rot)
    return FiniteGroup(mul, names)


def quaternion8() -> FiniteGroup:
    # elements: 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}

    def quat_mul(x, y):
        table = {
            ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
            ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
            ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
        }
        s1, u1 = x
        s2, u2 = y
        s3, u3 = table[(u1, u2)]
        return (s1 * s2 * s3, u3)

    elems = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    mul = [[elems.index(quat_mul(x, y)) for y in elems] for x in elems]
    return FiniteGroup(mul, names)


def builtin_group(name: str) -> FiniteGroup:
    key = name.lower().strip()
    if key in ("v4", "z2xz2"):
        return direct_product(cyclic(2), cyclic(2))
    if key == "s3":
        return symmetric3()
    if key == "d4":
        return dihedral(4)
    if key == "d6":
        return dihedral(6)
    if key == "q8":
        return quaternion8()
    if key.startswith("z"):
        n = int(key[1:])
        if n < 1:
            raise GroupError("cyclic order must be >= 1")
        return cyclic(n)
    raise GroupError(f"unknown builtin group {name!r}")


BUILTIN_NAMES = ("z1", "z2", "z3", "z4", "z5", "z6", "z12", "v4", "s3", "d4", "d6", "q8")


# -- commuting pairs and orbits ----------------------------------------------


@dataclass(frozen=True, order=True)
class CommutingPair:
    h1: int
    h2: int


def commuting_pairs(group: FiniteGroup) -> list[CommutingPair]:
    """All ordered commuting pairs, lexicographically."""
    out = []
    for a in range(group.order):
        for b in range(group.order):
            if group.commute(a, b):
                out.append(CommutingPair(a, b))
    return out


def conj_pair(group: FiniteGroup, g: int, pair: CommutingPair) -> CommutingPair:
    return CommutingPair(group.conj(g, pair.h1), group.conj(g, pair.h2))


def sl2_pair(group: FiniteGroup, mat: tuple, pair: CommutingPair) -> CommutingPair:
    """Left action of mat = (a, b, c, d): (h1, h2) -> (h1^d h2^{-c}, h1^{-b} h2^a).

    This is precomposition of the homomorphism Z^2 -> G with the inverse
    matrix, which is what makes (m1 m2).h = m1.(m2.h) hold; the variant
    with b and c swapped is the corresponding right action and fails the
    left-action property test.
    """
    a, b, c, d = mat
    h1, h2 = pair.h1, pair.h2
    new1 = group.m(group.power(h1, d), group.power(h2, -c))
    new2 = group.m(group.power(h1, -b), group.power(h2, a))
    return CommutingPair(new1, new2)


@dataclass
class Orbit:
    representative: CommutingPair
    members: list[CommutingPair]
    stabilizer_order: int | None = None
    stabilizer_generators: list[tuple] | None = None

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class OrbitReport:
    action: str
    modulus: int
    orbits: list[Orbit]

    @property
    def count(self) -> int:
        return len(self.orbits)


def _closure(seeds: Iterable[CommutingPair], steps: list[Callable]) -> list[CommutingPair]:
    seen = set(seeds)
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for f in steps:
                q = f(p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def orbit_decomposition(group: FiniteGroup, pairs: Sequence[CommutingPair] | None = None, action: str = "both") -> OrbitReport:
    """Partition commuting pairs into orbits of the chosen action.

    ``action`` is one of conj | sl2 | both.  The degree-2 special linear
    action is computed through reduction mod N = exponent(group); orbit
    stabilizers (for sl2/both) are reported as subgroups of SL2(Z/N) by a
    small generating set.
    """
    if action not in ("conj", "sl2", "both"):
        raise GroupError("action must be conj, sl2 or both")
    if pairs is None:
        pairs = commuting_pairs(group)
    n_mod = group.exponent()
    steps: list[Callable] = []
    if action in ("conj", "both"):
        steps += [lambda p, g=g: conj_pair(group, g, p) for g in range(group.order)]
    if action in ("sl2", "both"):
        s_mat = (0, 1 % n_mod, (-1) % n_mod, 0)
        t_mat = (1 % n_mod, 1 % n_mod, 0, 1 % n_mod)
        steps += [lambda p: sl2_pair(group, s_mat, p), lambda p: sl2_pair(group, t_mat, p)]

    remaining = set(pairs)
    orbits = []
    sl2_elems = sl2_mod_n_elements(n_mod) if action in ("sl2", "both") else None
    for p in sorted(pairs):
        if p not in remaining:
            continue
        members = _closure([p], steps)
        members = [m for m in members if m in remaining]
        for m in members:
            remaining.discard(m)
        orbit = Orbit(p, members)
        if sl2_elems is not None:
            orbit.stabilizer_order, orbit.stabilizer_generators = _sl2_stabilizer(group, p, members if action == "both" else [p], n_mod, sl2_elems, action)
        orbits.append(orbit)
    return OrbitReport(action, n_mod, orbits)


def _sl2_stabilizer(group, rep, target_members, n_mod, sl2_elems, action):
    if action == "both":
        conj_orbit = set(_closure([rep], [lambda p, g=g: conj_pair(group, g, p) for g in range(group.order)]))
        keep = [m for m in sl2_elems if sl2_pair(group, m, rep) in conj_orbit]
    else:
        keep = [m for m in sl2_elems if sl2_pair(group, m, rep) == rep]
    gens: list[tuple] = []
    ident = (1 % n_mod, 0, 0, 1 % n_mod)
    generated = {ident}
    for m in keep:
        if m in generated:
            continue
        gens.append(m)
        frontier = [ident]
        new = {ident}
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = sl2_mod_mul(x, g, n_mod)
                    if y not in new:
                        new.add(y)
                        nxt.append(y)
            frontier = nxt
        generated = new
        if len(generated) == len(keep):
            break
    return len(keep), gens


# -- cocycles ----------------------------------------------------------------


@dataclass(frozen=True)
class Phase:
    """An exact unit complex number e^{2 pi i turns}."""

    turns: Fraction

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase((self.turns + other.turns) % 1)

    def inverse(self) -> "Phase":
        return Phase((-self.turns) % 1)

    def __truediv__(self, other: "Phase") -> "Phase":
        return self * other.inverse()

    @property
    def is_one(self) -> bool:
        return self.turns % 1 == 0

    def value(self) -> complex:
        import cmath

        return cmath.exp(2j * cmath.pi * float(self.turns))

    def distance_from_one(self) -> float:
        return abs(self.value() - 1.0)


PHASE_ONE = Phase(Fraction(0))


class Cocycle3:
    """A U(1)-valued 3-cochain on a finite group, with exact phase values."""

    def __init__(self, group: FiniteGroup, values: dict | Callable):
        self.group = group
        if callable(values):
            self.values = {}
            n = group.order
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        self.values[(a, b, c)] = values(a, b, c)
        else:
            self.values = dict(values)
        self._verified: bool | None = None

    def __call__(self, a: int, b: int, c: int) -> Phase:
        return self.values[(a, b, c)]

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "Cocycle3":
        return cls(group, lambda a, b, c: PHASE_ONE)


def coboundary_check(cocycle: Cocycle3, group: FiniteGroup | None = None):
    """Verify the 3-cocycle condition over all quadruples.

    Returns (ok, worst_residual, witness): the residual is the distance of
    (d l)(g1..g4) from 1, and witness names a violating quadruple if any.
    """
    g = group or cocycle.group
    n = g.order
    worst = 0.0
    witness = None
    ok = True
    for g1 in range(n):
        for g2 in range(n):
            g12 = g.m(g1, g2)
            for g3 in range(n):
                g23 = g.m(g2, g3)
                for g4 in range(n):
                    num = cocycle(g2, g3, g4) * cocycle(g1, g23, g4) * cocycle(g1, g2, g3)
                    den = cocycle(g12, g3, g4) * cocycle(g1, g2, g.m(g3, g4))
                    rat = num / den
                    if not rat.is_one:
                        ok = False
                        dist = rat.distance_from_one()
                        if dist > worst:
                            worst = dist
                            witness = (g1, g2, g3, g4)
    cocycle._verified = ok
    return ok, worst, witness


def zn_cocycle(n: int, k: int) -> Cocycle3:
    """The standard degree-3 class generator on Z/n: w(a,b,c) = e^{2 pi i k a ((b+c) div n) / n}."""
    if n < 2:
        raise GroupError("zn_cocycle needs n >= 2")
    g = cyclic(n)

    def val(a, b, c):
        return Phase(Fraction(k * a * ((b + c) // n), n) % 1)

    return Cocycle3(g, val)


def pullback_cocycle(cocycle: Cocycle3, hom: Sequence[int], group: FiniteGroup) -> Cocycle3:
    """Pull a cocycle back along a homomorphism given as an index map."""
    target = cocycle.group
    for a in range(group.order):
        for b in range(group.order):
            if hom[group.m(a, b)] != target.m(hom[a], hom[b]):
                raise GroupError("index map is not a homomorphism")
    return Cocycle3(group, lambda a, b, c: cocycle(hom[a], hom[b], hom[c]))


def fq_cocycle(cocycle: Cocycle3, pair: CommutingPair, g: int, group: FiniteGroup | None = None) -> Phase:
    """The six-factor line-bundle cocycle at a commuting pair and group element."""
    grp = group or cocycle.group
    if cocycle._verified is None:
        coboundary_check(cocycle, grp)
    if cocycle._verified is False:
        raise GroupError("fq_cocycle requires a valid 3-cocycle")
    h1, h2 = pair.h1, pair.h2
    if not grp.commute(h1, h2):
        raise GroupError("pair does not commute")
    gh1 = grp.conj(g, h1)
    gh2 = grp.conj(g, h2)
    num = cocycle(g, h1, h2) * cocycle(gh2, g, h1) * cocycle(gh1, gh2, g)
    den = cocycle(g, h2, h1) * cocycle(gh1, g, h2) * cocycle(gh2, gh1, g)
    return num / den


def fq_descent_check(cocycle: Cocycle3, group: FiniteGroup | None = None):
    """Exhaustive groupoid 1-cocycle condition: c(h; g2 g1) = c(g1 h g1^{-1}; g2) c(h; g1).

    Returns (ok, worst_residual, witness).
    """
    grp = group or cocycle.group
    pairs = commuting_pairs(grp)
    worst = 0.0
    witness = None
    ok = True
    for pair in pairs:
        for g1 in range(grp.order):
            moved = conj_pair(grp, g1, pair)
            c1 = fq_cocycle(cocycle, pair, g1, grp)
            for g2 in range(grp.order):
                lhs = fq_cocycle(cocycle, pair, grp.m(g2, g1), grp)
                rhs = fq_cocycle(cocycle, moved, g2, grp) * c1
                rat = lhs / rhs
                if not rat.is_one:
                    ok = False
                    dist = rat.distance_from_one()
                    if dist > worst:
                        worst = dist
                        witness = (pair, g1, g2)
    return ok, worst, witness


# -- action coherence checks ---------------------------------------------------


def check_sl2_left_action(group: FiniteGroup, extra_random: int = 20, seed: int = 0):
    """(m1 m2) . h = m1 . (m2 . h) on generators and seeded random SL2(Z/N) pairs."""
    import random as _random

    n_mod = group.exponent()
    s_mat = (0, 1 % n_mod, (-1) % n_mod, 0)
    t_mat = (1 % n_mod, 1 % n_mod, 0, 1 % n_mod)
    pairs = commuting_pairs(group)
    elems = sl2_mod_n_elements(n_mod)
    rng = _random.Random(seed)
    cases = [(s_mat, s_mat), (s_mat, t_mat), (t_mat, s_mat), (t_mat, t_mat)]
    cases += [(rng.choice(elems), rng.choice(elems)) for _ in range(extra_random)]
    for m1, m2 in cases:
        prod = sl2_mod_mul(m1, m2, n_mod)
        for p in pairs:
            if sl2_pair(group, prod, p) != sl2_pair(group, m1, sl2_pair(group, m2, p)):
                return False, (m1, m2, p)
    return True, None


def check_conj_sl2_commute(group: FiniteGroup):
    """Conjugation commutes with the SL2 action on commuting pairs (exhaustive on S, T)."""
    n_mod = group.exponent()
    s_mat = (0, 1 % n_mod, (-1) % n_mod, 0)
    t_mat = (1 % n_mod, 1 % n_mod, 0, 1 % n_mod)
    pairs = commuting_pairs(group)
    for mat in (s_mat, t_mat):
        for g in range(group.order):
            for p in pairs:
                a = conj_pair(group, g, sl2_pair(group, mat, p))
                b = sl2_pair(group, mat, conj_pair(group, g, p))
                if a != b:
                    return False, (mat, g, p)
    return True, None


# -- Devoto-style report -------------------------------------------------------


@dataclass
class DevotoReport:
    group_order: int
    exponent: int
    pair_count: int
    orbits: list[Orbit]

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)


def devoto_report(group: FiniteGroup) -> DevotoReport:
    """Orbit/stabilizer indexing of the point-level classes for a finite group.

    For the one-point space these are the combined conjugation + SL2 orbits
    of commuting pairs, each with its SL2(Z/N) stabilizer generators; the
    stabilizer records the weight condition its classes must satisfy.
    """
    pairs = commuting_pairs(group)
    rep = orbit_decomposition(group, pairs, action="both")
    return DevotoReport(group.order, rep.modulus, len(pairs), rep.orbits)
