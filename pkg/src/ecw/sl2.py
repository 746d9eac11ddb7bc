"""Integer SL2 matrices and their reductions mod N."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SL2Z:
    """A matrix [[a, b], [c, d]] with integer entries and ad - bc = 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("SL2Z requires determinant 1")

    def __mul__(self, other: "SL2Z") -> "SL2Z":
        return SL2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def act_tau(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def automorphy(self, tau: complex) -> complex:
        return self.c * tau + self.d

    def mod(self, n: int) -> tuple[int, int, int, int]:
        return (self.a % n, self.b % n, self.c % n, self.d % n)


S = SL2Z(0, 1, -1, 0)
T = SL2Z(1, 1, 0, 1)
IDENTITY = SL2Z(1, 0, 0, 1)


def sl2_mod_n_elements(n: int) -> list[tuple[int, int, int, int]]:
    """All elements of SL2(Z/n), as reduced (a, b, c, d) tuples."""
    if n == 1:
        return [(0, 0, 0, 0)]
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                # solve a d - b c = 1 (mod n) for d when possible
                for d in range(n):
                    if (a * d - b * c) % n == 1:
                        out.append((a, b, c, d))
    return out


def sl2_mod_mul(x: tuple, y: tuple, n: int) -> tuple:
    if n == 1:
        return (0, 0, 0, 0)
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)
