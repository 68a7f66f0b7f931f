"""Declarative Hamiltonian building blocks.

Kinetic and potential terms are small immutable records that know how to
evaluate themselves, their first derivative, and the curvature of their
composition chart ``b`` — the function with ``T(x) = b(x**2)`` and
``W(x) = b(x**2)`` (many-body rule) or ``W(x) = b(sgn(lam) * x**lam)``
(two-body auxiliary rule).  The sign of ``b''`` decides whether an envelope
energy is an upper or a lower bound, so the curvature query uses analytic
forms where the family permits and a Richardson-refined central difference
otherwise.

All evaluation methods accept floats or numpy arrays of strictly positive
arguments and are pure functions of the law's parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping

import numpy as np

from .errors import (
    EmptyState,
    EvaluationDomainError,
    NonPositiveArgument,
    NotShortRange,
)

_FD_REL_STEP = 1e-4  # relative step for curvature finite differences
_DERIV_REL_STEP = 6.0e-6  # ~cbrt(eps), central first differences for custom laws


class EvalMode(Enum):
    VALUE = "value"
    FIRST_DERIVATIVE = "first-derivative"


class Convexity(Enum):
    CONCAVE = "concave"
    CONVEX = "convex"
    LINEAR = "linear"
    MIXED = "mixed"


class BoundKind(Enum):
    UPPER = "UpperBound"
    LOWER = "LowerBound"
    EXACT = "Exact"
    UNKNOWN = "Unknown"


class Statistics(Enum):
    BOSON = "boson"
    FERMION = "fermion"
    UNSPECIFIED = "unspecified"


class KineticFamily(Enum):
    NONRELATIVISTIC = "nonrelativistic"
    SEMIRELATIVISTIC = "semirelativistic"
    ULTRARELATIVISTIC = "ultrarelativistic"
    MINIMAL_LENGTH_QUARTIC = "minimal-length"
    EXPONENTIAL_QUADRATIC = "exponential-quadratic"
    CUSTOM = "custom"


class PotentialFamily(Enum):
    POWER_LAW = "powerlaw"
    COULOMB = "coulomb"
    SQUARE_ROOT = "squareroot"
    LOGARITHMIC = "logarithmic"
    YUKAWA = "yukawa"
    EXPONENTIAL = "exponential"
    GAUSSIAN = "gaussian"
    CUSTOM = "custom"


@dataclass(frozen=True)
class CustomProfile:
    """User-supplied radial (or momentum) profile.

    ``value`` must accept positive floats and numpy arrays.  When
    ``derivative`` is omitted it is replaced by a central finite difference
    of ``value``.
    """

    value: Callable[..., object]
    derivative: Callable[..., object] | None = None


def _require_positive(x, what: str = "argument") -> None:
    arr = np.asarray(x, dtype=float)
    if arr.size == 0 or not np.all(arr > 0.0):
        raise NonPositiveArgument(f"{what} must be strictly positive, got {x!r}")


def _central_difference(f: Callable, x):
    h = _DERIV_REL_STEP * np.asarray(x, dtype=float)
    return (f(x + h) - f(x - h)) / (2.0 * h)


def _richardson_second(b: Callable, s):
    """Second derivative of ``b`` at ``s`` by Richardson-refined differences."""
    h = _FD_REL_STEP * np.asarray(s, dtype=float)

    def d2(step):
        return (b(s + step) - 2.0 * b(s) + b(s - step)) / (step * step)

    return (4.0 * d2(0.5 * h) - d2(h)) / 3.0


def _chart_exponent(aux_exponent: float | None) -> float:
    """Substitution exponent of the composition chart (2 for the x->x**2 rule)."""
    if aux_exponent is None:
        return 2.0
    lam = float(aux_exponent)
    if lam == 0.0 or lam <= -2.0:
        raise EvaluationDomainError(
            f"chart substitution needs a nonzero exponent > -2, got {lam}"
        )
    return lam


@dataclass(frozen=True)
class KineticLaw:
    """Single-particle kinetic energy T(p)."""

    family: KineticFamily
    mass: float = 0.0
    deformation: float = 0.0  # quartic coefficient of the minimal-length family
    stiffness: float = 0.0  # exponent rate of the exponential-quadratic family
    profile: CustomProfile | None = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def nonrelativistic(cls, mass: float) -> "KineticLaw":
        if mass <= 0.0:
            raise ValueError(f"nonrelativistic kinetic law needs mass > 0, got {mass}")
        return cls(KineticFamily.NONRELATIVISTIC, mass=float(mass))

    @classmethod
    def semirelativistic(cls, mass: float) -> "KineticLaw":
        if mass < 0.0:
            raise ValueError(f"semirelativistic kinetic law needs mass >= 0, got {mass}")
        return cls(KineticFamily.SEMIRELATIVISTIC, mass=float(mass))

    @classmethod
    def ultrarelativistic(cls) -> "KineticLaw":
        return cls(KineticFamily.ULTRARELATIVISTIC)

    @classmethod
    def minimal_length_quartic(cls, mass: float, deformation: float) -> "KineticLaw":
        if mass <= 0.0:
            raise ValueError(f"minimal-length kinetic law needs mass > 0, got {mass}")
        if deformation < 0.0:
            raise ValueError(
                f"minimal-length kinetic law needs deformation >= 0, got {deformation}"
            )
        return cls(
            KineticFamily.MINIMAL_LENGTH_QUARTIC,
            mass=float(mass),
            deformation=float(deformation),
        )

    @classmethod
    def exponential_quadratic(cls, stiffness: float) -> "KineticLaw":
        if stiffness <= 0.0:
            raise ValueError(
                f"exponential-quadratic kinetic law needs stiffness > 0, got {stiffness}"
            )
        return cls(KineticFamily.EXPONENTIAL_QUADRATIC, stiffness=float(stiffness))

    @classmethod
    def custom(cls, profile: CustomProfile) -> "KineticLaw":
        return cls(KineticFamily.CUSTOM, profile=profile)

    # -- evaluation ----------------------------------------------------------

    def value(self, p):
        f = self.family
        if f is KineticFamily.NONRELATIVISTIC:
            return p * p / (2.0 * self.mass)
        if f is KineticFamily.SEMIRELATIVISTIC:
            return np.sqrt(p * p + self.mass * self.mass)
        if f is KineticFamily.ULTRARELATIVISTIC:
            return p + 0.0
        if f is KineticFamily.MINIMAL_LENGTH_QUARTIC:
            p2 = p * p
            return p2 / (2.0 * self.mass) + self.deformation * p2 * p2 / self.mass
        if f is KineticFamily.EXPONENTIAL_QUADRATIC:
            return np.exp(self.stiffness * p * p)
        return self._custom_value(p)

    def derivative(self, p):
        f = self.family
        if f is KineticFamily.NONRELATIVISTIC:
            return p / self.mass
        if f is KineticFamily.SEMIRELATIVISTIC:
            return p / np.sqrt(p * p + self.mass * self.mass)
        if f is KineticFamily.ULTRARELATIVISTIC:
            return np.ones_like(np.asarray(p, dtype=float)) if np.ndim(p) else 1.0
        if f is KineticFamily.MINIMAL_LENGTH_QUARTIC:
            return p / self.mass + 4.0 * self.deformation * p * p * p / self.mass
        if f is KineticFamily.EXPONENTIAL_QUADRATIC:
            return 2.0 * self.stiffness * p * np.exp(self.stiffness * p * p)
        if self.profile is not None and self.profile.derivative is not None:
            return self._wrap(self.profile.derivative, p)
        return _central_difference(self.value, p)

    def _custom_value(self, p):
        if self.profile is None:
            raise EvaluationDomainError("custom kinetic law carries no profile")
        return self._wrap(self.profile.value, p)

    @staticmethod
    def _wrap(fn: Callable, x):
        try:
            return fn(x)
        except (ArithmeticError, ValueError) as exc:
            raise EvaluationDomainError(f"custom kinetic profile failed at {x!r}") from exc

    # -- composition chart ---------------------------------------------------

    def chart_value(self, s, aux_exponent: float | None = None):
        lam = _chart_exponent(aux_exponent)
        if lam != 2.0:
            raise EvaluationDomainError("kinetic charts use the x**2 substitution only")
        return self.value(np.sqrt(s))

    def chart_second_derivative(self, s, aux_exponent: float | None = None):
        lam = _chart_exponent(aux_exponent)
        if lam != 2.0:
            raise EvaluationDomainError("kinetic charts use the x**2 substitution only")
        f = self.family
        if f is KineticFamily.NONRELATIVISTIC:
            return 0.0 * s
        if f is KineticFamily.MINIMAL_LENGTH_QUARTIC:
            return 2.0 * self.deformation / self.mass + 0.0 * s
        if f is KineticFamily.EXPONENTIAL_QUADRATIC:
            k = self.stiffness
            return k * k * np.exp(k * s)
        return _richardson_second(lambda u: self.value(np.sqrt(u)), s)

    def convexity_tag(self) -> Convexity | None:
        """Global sign of the chart curvature where it is provable a priori."""
        f = self.family
        if f is KineticFamily.NONRELATIVISTIC:
            return Convexity.LINEAR
        if f is KineticFamily.SEMIRELATIVISTIC or f is KineticFamily.ULTRARELATIVISTIC:
            return Convexity.CONCAVE
        if f is KineticFamily.MINIMAL_LENGTH_QUARTIC:
            return Convexity.CONVEX if self.deformation > 0.0 else Convexity.LINEAR
        if f is KineticFamily.EXPONENTIAL_QUADRATIC:
            return Convexity.CONVEX
        return None


@dataclass(frozen=True)
class PotentialLaw:
    """Radial interaction profile W(x), one- or two-body."""

    family: PotentialFamily
    amplitude: float = 0.0  # power-law prefactor
    exponent: float = 0.0  # power-law exponent
    strength: float = 0.0  # Coulomb attraction strength
    offset: float = 0.0  # square-root well regulator
    scale: float = 1.0  # square-root / logarithmic prefactor
    coupling: float = 0.0  # short-range well depth
    screening: float = 1.0  # short-range length scale
    profile: CustomProfile | None = None
    short_range: bool = False

    # -- constructors -------------------------------------------------------

    @classmethod
    def power_law(cls, amplitude: float, exponent: float) -> "PotentialLaw":
        if amplitude == 0.0:
            raise ValueError("power-law potential needs a nonzero amplitude")
        if exponent <= -2.0:
            raise ValueError(f"power-law potential needs exponent > -2, got {exponent}")
        return cls(
            PotentialFamily.POWER_LAW,
            amplitude=float(amplitude),
            exponent=float(exponent),
        )

    @classmethod
    def coulomb(cls, strength: float) -> "PotentialLaw":
        if strength <= 0.0:
            raise ValueError(f"coulomb potential needs strength > 0, got {strength}")
        return cls(PotentialFamily.COULOMB, strength=float(strength))

    @classmethod
    def square_root(cls, offset: float = 0.0, scale: float = 1.0) -> "PotentialLaw":
        if offset < 0.0:
            raise ValueError(f"square-root potential needs offset >= 0, got {offset}")
        if scale == 0.0:
            raise ValueError("square-root potential needs a nonzero scale")
        return cls(PotentialFamily.SQUARE_ROOT, offset=float(offset), scale=float(scale))

    @classmethod
    def logarithmic(cls, scale: float = 1.0) -> "PotentialLaw":
        if scale == 0.0:
            raise ValueError("logarithmic potential needs a nonzero scale")
        return cls(PotentialFamily.LOGARITHMIC, scale=float(scale))

    @classmethod
    def yukawa(cls, coupling: float, screening: float = 1.0) -> "PotentialLaw":
        return cls._short_range(PotentialFamily.YUKAWA, coupling, screening)

    @classmethod
    def exponential(cls, coupling: float, screening: float = 1.0) -> "PotentialLaw":
        return cls._short_range(PotentialFamily.EXPONENTIAL, coupling, screening)

    @classmethod
    def gaussian(cls, coupling: float, screening: float = 1.0) -> "PotentialLaw":
        return cls._short_range(PotentialFamily.GAUSSIAN, coupling, screening)

    @classmethod
    def _short_range(cls, family, coupling, screening) -> "PotentialLaw":
        if coupling <= 0.0:
            raise ValueError(f"{family.value} potential needs coupling > 0, got {coupling}")
        if screening <= 0.0:
            raise ValueError(f"{family.value} potential needs screening > 0, got {screening}")
        return cls(
            family,
            coupling=float(coupling),
            screening=float(screening),
            short_range=True,
        )

    @classmethod
    def custom(cls, profile: CustomProfile, short_range: bool = False) -> "PotentialLaw":
        return cls(PotentialFamily.CUSTOM, profile=profile, short_range=short_range)

    # -- evaluation ----------------------------------------------------------

    def value(self, x):
        _require_positive(x, "separation")
        f = self.family
        if f is PotentialFamily.POWER_LAW:
            return self.amplitude * np.power(x, self.exponent)
        if f is PotentialFamily.COULOMB:
            return -self.strength / x
        if f is PotentialFamily.SQUARE_ROOT:
            return self.scale * np.sqrt(x * x + self.offset)
        if f is PotentialFamily.LOGARITHMIC:
            return self.scale * np.log(x)
        if f is PotentialFamily.YUKAWA:
            return -self.coupling * np.exp(-x / self.screening) / x
        if f is PotentialFamily.EXPONENTIAL:
            return -self.coupling * np.exp(-x / self.screening)
        if f is PotentialFamily.GAUSSIAN:
            u = x / self.screening
            return -self.coupling * np.exp(-u * u)
        return self._custom_value(x)

    def derivative(self, x):
        _require_positive(x, "separation")
        f = self.family
        if f is PotentialFamily.POWER_LAW:
            return self.amplitude * self.exponent * np.power(x, self.exponent - 1.0)
        if f is PotentialFamily.COULOMB:
            return self.strength / (x * x)
        if f is PotentialFamily.SQUARE_ROOT:
            return self.scale * x / np.sqrt(x * x + self.offset)
        if f is PotentialFamily.LOGARITHMIC:
            return self.scale / x
        if f is PotentialFamily.YUKAWA:
            r = self.screening
            return self.coupling * np.exp(-x / r) * (1.0 / (x * x) + 1.0 / (r * x))
        if f is PotentialFamily.EXPONENTIAL:
            return (self.coupling / self.screening) * np.exp(-x / self.screening)
        if f is PotentialFamily.GAUSSIAN:
            r2 = self.screening * self.screening
            u = x / self.screening
            return 2.0 * self.coupling * x / r2 * np.exp(-u * u)
        if self.profile is not None and self.profile.derivative is not None:
            return self._wrap(self.profile.derivative, x)
        return _central_difference(self.value, x)

    def _custom_value(self, x):
        if self.profile is None:
            raise EvaluationDomainError("custom potential law carries no profile")
        return self._wrap(self.profile.value, x)

    @staticmethod
    def _wrap(fn: Callable, x):
        try:
            return fn(x)
        except (ArithmeticError, ValueError) as exc:
            raise EvaluationDomainError(f"custom potential profile failed at {x!r}") from exc

    # -- short-range well profile -------------------------------------------

    def well_profile(self, x):
        """Dimensionless positive well shape w with W(x) = -kappa * w(x)."""
        if not self.short_range:
            raise NotShortRange(f"{self.family.value} potential is not short range")
        kappa = self.coupling if self.family is not PotentialFamily.CUSTOM else 1.0
        return -self.value(x) / kappa

    def well_profile_derivative(self, x):
        if not self.short_range:
            raise NotShortRange(f"{self.family.value} potential is not short range")
        kappa = self.coupling if self.family is not PotentialFamily.CUSTOM else 1.0
        return -self.derivative(x) / kappa

    # -- composition chart ---------------------------------------------------

    def chart_value(self, s, aux_exponent: float | None = None):
        lam = _chart_exponent(aux_exponent)
        return self.value(np.power(s, 1.0 / lam))

    def chart_second_derivative(self, s, aux_exponent: float | None = None):
        lam = _chart_exponent(aux_exponent)
        f = self.family
        if f is PotentialFamily.POWER_LAW or f is PotentialFamily.COULOMB:
            if f is PotentialFamily.COULOMB:
                amp, q = -self.strength, -1.0
            else:
                amp, q = self.amplitude, self.exponent
            kappa = q / lam
            return amp * kappa * (kappa - 1.0) * np.power(s, kappa - 2.0)
        return _richardson_second(lambda u: self.value(np.power(u, 1.0 / lam)), s)

    def convexity_tag(self, aux_exponent: float | None = None) -> Convexity | None:
        """Global sign of the chart curvature where it is provable a priori."""
        lam = _chart_exponent(aux_exponent)
        f = self.family
        if f is PotentialFamily.POWER_LAW or f is PotentialFamily.COULOMB:
            if f is PotentialFamily.COULOMB:
                amp, q = -self.strength, -1.0
            else:
                amp, q = self.amplitude, self.exponent
            sign = amp * (q / lam) * (q / lam - 1.0)
            if sign == 0.0:
                return Convexity.LINEAR
            return Convexity.CONVEX if sign > 0.0 else Convexity.CONCAVE
        if lam != 2.0:
            return None
        # Curvature signs below hold for every s > 0 under the x**2 chart.
        if f is PotentialFamily.SQUARE_ROOT:
            return Convexity.CONCAVE if self.scale > 0.0 else Convexity.CONVEX
        if f is PotentialFamily.LOGARITHMIC:
            return Convexity.CONCAVE if self.scale > 0.0 else Convexity.CONVEX
        if f in (
            PotentialFamily.YUKAWA,
            PotentialFamily.EXPONENTIAL,
            PotentialFamily.GAUSSIAN,
        ):
            return Convexity.CONCAVE
        return None


def eval_term(law: KineticLaw | PotentialLaw, x, mode: EvalMode = EvalMode.VALUE):
    """Evaluate a law (or its first derivative) at strictly positive x."""
    _require_positive(x)
    if mode is EvalMode.VALUE:
        return law.value(x)
    if mode is EvalMode.FIRST_DERIVATIVE:
        return law.derivative(x)
    raise ValueError(f"unknown evaluation mode {mode!r}")


def b_second_derivative(
    law: KineticLaw | PotentialLaw, s, aux_exponent: float | None = None
):
    """Curvature of the composition chart at s > 0.

    With ``aux_exponent=None`` the chart is the x**2 substitution (used by the
    many-body bound rule for kinetic and potential terms alike).  A float
    exponent selects the two-body auxiliary substitution, which only applies
    to potentials; ``s`` is then the magnitude of the substituted variable.
    """
    _require_positive(s, "chart argument")
    if isinstance(law, KineticLaw) and aux_exponent is not None:
        raise EvaluationDomainError("kinetic charts use the x**2 substitution only")
    return law.chart_second_derivative(s, aux_exponent)


@dataclass(frozen=True)
class SystemSpec:
    """N identical particles in D dimensions with optional one- and two-body terms."""

    n: int
    d: int
    kinetic: KineticLaw
    onebody: PotentialLaw | None = None
    twobody: PotentialLaw | None = None
    statistics: Statistics = Statistics.UNSPECIFIED
    degeneracy: int = 1

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need at least two particles, got n={self.n}")
        if self.d < 2:
            raise ValueError(f"need at least two dimensions, got d={self.d}")
        if self.onebody is None and self.twobody is None:
            raise ValueError("at least one of onebody/twobody must be present")
        if self.degeneracy < 1:
            raise ValueError(f"degeneracy must be >= 1, got {self.degeneracy}")

    @property
    def pair_count(self) -> int:
        return self.n * (self.n - 1) // 2


@dataclass(frozen=True)
class StateSpec:
    """Internal excitation quanta: one (n_i, l_i) pair per relative coordinate."""

    quanta: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.quanta) == 0:
            raise EmptyState("a state needs at least one (n, l) pair")
        for pair in self.quanta:
            n_i, l_i = pair
            if n_i < 0 or l_i < 0:
                raise ValueError(f"quanta must be non-negative integers, got {pair}")

    @classmethod
    def ground(cls, n_particles: int) -> "StateSpec":
        if n_particles < 2:
            raise ValueError("a ground state needs at least two particles")
        return cls(((0, 0),) * (n_particles - 1))

    @property
    def n_particles(self) -> int:
        return len(self.quanta) + 1


@dataclass(frozen=True)
class ConvexityVerdict:
    """Bound classification with the per-term chart curvatures that imply it."""

    classification: BoundKind
    terms: Mapping[str, Convexity] = field(default_factory=dict)

    @classmethod
    def from_terms(cls, terms: Mapping[str, Convexity]) -> "ConvexityVerdict":
        kinds = [c for c in terms.values() if c is not Convexity.LINEAR]
        if not kinds:
            verdict = BoundKind.EXACT
        elif all(c is Convexity.CONCAVE for c in kinds):
            verdict = BoundKind.UPPER
        elif all(c is Convexity.CONVEX for c in kinds):
            verdict = BoundKind.LOWER
        else:
            verdict = BoundKind.UNKNOWN
        return cls(verdict, dict(terms))


@dataclass(frozen=True)
class StationaryRoot:
    """One solution of the stationarity condition with its diagnostics."""

    r0: float
    p0: float
    energy: float
    residual: float


@dataclass(frozen=True)
class EnvelopeSolution:
    """Envelope approximation at a stationary point of the auxiliary system."""

    energy: float
    r0: float
    p0: float
    q: float
    bound: ConvexityVerdict
    roots: tuple[StationaryRoot, ...] = ()

    @property
    def n_roots(self) -> int:
        return len(self.roots)
