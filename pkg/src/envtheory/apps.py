"""Closed-form envelope results for three benchmark systems.

Each formula here is the analytic solution of the same stationarity system
the generic solver integrates numerically, specialized to a shape where the
algebra closes.  Tests verify that the generic route reproduces them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CollapseRegime, PerturbationSizeWarning
from .qnum import QValue


@dataclass(frozen=True)
class BaryonParams:
    """Ultrarelativistic particles, linear confinement, Coulomb-like pair attraction.

    One-body potential a1 * x, pairwise potential a2 * x - b / x.
    """

    n: int
    d: int
    a1: float = 0.0
    a2: float = 0.0
    b: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need at least two particles, got n={self.n}")
        if self.d < 2:
            raise ValueError(f"need at least two dimensions, got d={self.d}")
        if self.a1 < 0.0 or self.a2 < 0.0:
            raise ValueError("confinement strengths a1, a2 must be non-negative")
        if self.a1 + self.a2 <= 0.0:
            raise ValueError("at least one confinement strength must be positive")
        if self.b < 0.0:
            raise ValueError(f"pair attraction b must be non-negative, got {self.b}")


def baryon_bounds(params: BaryonParams) -> tuple[float, float]:
    """Ground-state upper and lower envelope bounds (E_upper, E_lower).

    With C = N(N-1)/2 pairs,

        E_upper^2 = 4 C (a1 + a2 sqrt(C)) (D - b sqrt(C))
        E_lower^2 = 2 C (a1 + a2 N) (D - 1 - b (N - 1))

    Both require the attraction to stay under the collapse threshold:
    D - b sqrt(C) > 0 and D - 1 - b (N - 1) > 0.
    """
    n, d = params.n, params.d
    c = n * (n - 1) / 2.0
    root_c = math.sqrt(c)
    upper_margin = d - params.b * root_c
    lower_margin = (d - 1.0) - params.b * (n - 1.0)
    if upper_margin <= 0.0 or lower_margin <= 0.0:
        raise CollapseRegime(
            f"pair attraction b={params.b} exceeds the collapse threshold for "
            f"n={n}, d={d} (margins {upper_margin:.3g}, {lower_margin:.3g})"
        )
    e_upper = math.sqrt(4.0 * c * (params.a1 + params.a2 * root_c) * upper_margin)
    e_lower = math.sqrt(2.0 * c * (params.a1 + params.a2 * n) * lower_margin)
    return e_upper, e_lower


@dataclass(frozen=True)
class BosonStarParams:
    """Semirelativistic bosons with pairwise Coulomb-like gravitational attraction."""

    n: int
    mass: float
    alpha: float  # pair attraction strength G * m**2

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need at least two particles, got n={self.n}")
        if self.mass <= 0.0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if self.alpha <= 0.0:
            raise ValueError(f"attraction strength must be positive, got {self.alpha}")


def boson_star_mass(params: BosonStarParams, q: QValue | float) -> float:
    """Total-energy upper bound M = N m sqrt(1 - N (N-1)^3 alpha^2 / (8 Q^2)).

    Past the square root's zero the stationary point disappears: that is the
    collapse threshold of the self-gravitating system.
    """
    n, m, alpha = params.n, params.mass, params.alpha
    qv = float(q)
    if qv <= 0.0:
        raise ValueError(f"quantum number must be positive, got {qv}")
    arg = 1.0 - n * (n - 1.0) ** 3 * alpha * alpha / (8.0 * qv * qv)
    if arg < 0.0:
        raise CollapseRegime(
            f"alpha={alpha} exceeds the collapse threshold at n={n}, Q={qv}"
        )
    return n * m * math.sqrt(arg)


def boson_star_limit(d: int) -> float:
    """Large-N cap on M * G * m for the bosonic ground state: D / sqrt(2)."""
    if d < 2:
        raise ValueError(f"need at least two dimensions, got d={d}")
    return d / math.sqrt(2.0)


def boson_star_max_mass(
    d: int, mass: float, alpha: float, n_max: int = 10**5
) -> tuple[int, float]:
    """Maximum of the ground-state mass bound over the particle number.

    For the bosonic ground state Q = (N-1) D / 2, so the bound reduces to
    N m sqrt(1 - N (N-1) alpha^2 / (2 D^2)); the integer argmax and maximum
    are returned.  Ranges up to a few million are scanned outright; larger
    ones get a golden-section pass on the continuous relaxation first.
    """
    if d < 2:
        raise ValueError(f"need at least two dimensions, got d={d}")
    if mass <= 0.0 or alpha <= 0.0:
        raise ValueError("mass and alpha must be positive")
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    coeff = alpha * alpha / (2.0 * d * d)

    def bound(n_arr):
        arg = 1.0 - n_arr * (n_arr - 1.0) * coeff
        return n_arr * mass * np.sqrt(np.clip(arg, 0.0, None))

    if n_max <= 2_000_000:
        ns = np.arange(2, n_max + 1, dtype=float)
        masses = bound(ns)
        idx = int(np.argmax(masses))
        return int(ns[idx]), float(masses[idx])

    lo, hi = 2.0, float(n_max)
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    for _ in range(200):
        a = hi - phi * (hi - lo)
        b = lo + phi * (hi - lo)
        if bound(np.asarray(a)) < bound(np.asarray(b)):
            lo = a
        else:
            hi = b
    center = int(round((lo + hi) / 2.0))
    ns = np.arange(max(2, center - 5), min(n_max, center + 5) + 1, dtype=float)
    masses = bound(ns)
    idx = int(np.argmax(masses))
    return int(ns[idx]), float(masses[idx])


def minimal_length_energy(
    n: int, d: int, mass: float, spring: float, deformation: float, q: QValue | float
) -> float:
    """Harmonic system with a small quartic kinetic deformation, at first order.

    The unperturbed pairwise oscillator gives sqrt(2 N spring / mass) * Q and
    the p**4 deformation adds exactly 2 * spring * deformation * Q**2 at
    first order.  The result is exact again when the deformation vanishes.
    """
    if n < 2:
        raise ValueError(f"need at least two particles, got n={n}")
    if d < 2:
        raise ValueError(f"need at least two dimensions, got d={d}")
    if mass <= 0.0:
        raise ValueError(f"mass must be positive, got {mass}")
    if spring <= 0.0:
        raise ValueError(f"spring constant must be positive, got {spring}")
    if deformation < 0.0:
        raise ValueError(f"deformation must be non-negative, got {deformation}")
    qv = float(q)
    if qv <= 0.0:
        raise ValueError(f"quantum number must be positive, got {qv}")
    base = math.sqrt(2.0 * n * spring / mass) * qv
    correction = 2.0 * spring * deformation * qv * qv
    if correction > 0.1 * base:
        warnings.warn(
            f"quartic correction {correction:.6g} exceeds 10% of the harmonic level "
            f"{base:.6g}; first order is indicative only",
            PerturbationSizeWarning,
            stacklevel=2,
        )
    return base + correction
