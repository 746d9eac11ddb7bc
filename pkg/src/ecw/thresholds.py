"""Central threshold configuration for every residual-style check.

Checkers in the library return residuals; pass/fail decisions happen only
here (or in tests), so a suite can be tightened or relaxed from the CLI
without touching any check implementation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace


@dataclass(frozen=True)
class Thresholds:
    """Documented defaults for the verification suites."""

    # |sigma_product - sigma_eisenstein| on the tau/z grid
    sigma_cross_method: float = 1e-9
    # quasi-periodicity residuals for z -> z+1, z -> z+tau
    quasiperiodicity: float = 1e-9
    # weight -1, index 1/2 law under S and T
    modularity: float = 1e-9
    # relative disagreement between the two upsilon formulas
    upsilon_consistency: float = 1e-8
    # lattice-shift transformation law of Euler sections
    looijenga: float = 1e-8
    # all cubical-structure identities
    cubical: float = 1e-7
    # numeric addition oracle for the sigma-coordinate group law
    fgl_addition: float = 1e-6
    # proximity to a lattice point below which theta factors are rejected
    lattice_proximity: float = 1e-8
    # lower bound for |sigma| away from its zero in the fundamental cell
    sigma_zero_floor: float = 1e-2
    # lattice-sum oracle must agree within its own reported tail estimate
    # scaled by this safety factor
    lattice_oracle_factor: float = 1.0

    def with_overrides(self, overrides: dict[str, float] | None) -> "Thresholds":
        if not overrides:
            return self
        names = {f.name for f in fields(self)}
        bad = set(overrides) - names
        if bad:
            raise KeyError(f"unknown threshold name(s): {sorted(bad)}")
        return replace(self, **{k: float(v) for k, v in overrides.items()})

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULTS = Thresholds()
