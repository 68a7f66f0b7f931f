"""Bound classification, first-order corrections, and critical couplings.

The envelope level inherits a one-sided relation to the true level from the
curvature of the composition charts: when every term's chart is concave the
level is an upper bound, when every chart is convex it is a lower bound, and
an all-linear system is reproduced exactly.  Linear charts never constrain
the direction; mixed curvatures leave the direction unknown.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.optimize import brentq

from .errors import NoCriticalPoint, NotShortRange, PerturbationSizeWarning
from .model import (
    BoundKind,
    Convexity,
    ConvexityVerdict,
    EnvelopeSolution,
    EvalMode,
    KineticLaw,
    PotentialLaw,
    SystemSpec,
    eval_term,
)
from .qnum import QValue

_SAMPLES = 33
_SIGN_REL_TOL = 1e-5
_EPS = float(np.finfo(float).eps)


def _check_interval(domain: tuple[float, float]) -> tuple[float, float]:
    lo, hi = float(domain[0]), float(domain[1])
    if not (0.0 < lo < hi):
        raise ValueError(f"domain must satisfy 0 < lo < hi, got ({lo}, {hi})")
    return lo, hi


def term_convexity(
    law: KineticLaw | PotentialLaw,
    domain: tuple[float, float],
    aux_exponent: float | None = None,
    samples: int = _SAMPLES,
) -> Convexity:
    """Curvature classification of one term's chart over a radial interval.

    Families with a provable global curvature sign are tagged analytically;
    anything else gets its chart curvature sampled on a log-spaced image of
    ``domain`` under the substitution, with a relative sign tolerance so that
    numerically flat terms count as linear.
    """
    tag = law.convexity_tag() if isinstance(law, KineticLaw) else law.convexity_tag(aux_exponent)
    if tag is not None:
        return tag
    lo, hi = _check_interval(domain)
    xs = np.logspace(np.log10(lo), np.log10(hi), samples)
    lam = 2.0 if aux_exponent is None else float(aux_exponent)
    ss = np.power(xs, lam)  # image of the radial interval under the substitution
    with np.errstate(all="ignore"):
        curv = np.asarray(law.chart_second_derivative(ss, aux_exponent), dtype=float)
    keep = np.isfinite(curv)
    curv, ss = curv[keep], ss[keep]
    if curv.size == 0:
        return Convexity.MIXED
    with np.errstate(all="ignore"):
        vals = np.asarray(law.chart_value(ss, aux_exponent), dtype=float)
    # Compare each curvature sample against the chart's local magnitude
    # |b(s)| / s**2: finite-difference roundoff sits orders of magnitude
    # below that scale, while genuine curvature is of the same order, so
    # a numerically flat chart still reads as linear.
    local = np.abs(vals) / (ss * ss)
    local[~np.isfinite(local)] = 0.0
    cutoff = _SIGN_REL_TOL * np.maximum(local, float(np.max(np.abs(curv))) * _EPS)
    has_pos = bool(np.any(curv > cutoff))
    has_neg = bool(np.any(curv < -cutoff))
    if has_pos and has_neg:
        return Convexity.MIXED
    if has_pos:
        return Convexity.CONVEX
    if has_neg:
        return Convexity.CONCAVE
    return Convexity.LINEAR


def classify_bound(
    spec: SystemSpec,
    domain: tuple[float, float],
    momentum_domain: tuple[float, float] | None = None,
) -> ConvexityVerdict:
    """Many-body bound direction from per-term chart curvatures.

    ``domain`` is the radial sampling interval; the kinetic chart is sampled
    over ``momentum_domain`` (defaults to the same numbers).
    """
    terms: dict[str, Convexity] = {}
    terms["kinetic"] = term_convexity(spec.kinetic, momentum_domain or domain)
    if spec.onebody is not None:
        terms["onebody"] = term_convexity(spec.onebody, domain)
    if spec.twobody is not None:
        terms["twobody"] = term_convexity(spec.twobody, domain)
    return ConvexityVerdict.from_terms(terms)


def classify_two_body(
    kinetic: KineticLaw,
    potential: PotentialLaw,
    aux_exponent: float,
    domain: tuple[float, float],
    momentum_domain: tuple[float, float] | None = None,
) -> ConvexityVerdict:
    """Two-body bound direction; the potential chart uses the auxiliary substitution."""
    terms = {
        "kinetic": term_convexity(kinetic, momentum_domain or domain),
        "potential": term_convexity(potential, domain, aux_exponent=aux_exponent),
    }
    return ConvexityVerdict.from_terms(terms)


# ---------------------------------------------------------------------------
# First-order perturbations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PerturbationSpec:
    """Small additive deformations: coefficient/shape pairs per term."""

    kinetic: tuple[float, KineticLaw | PotentialLaw] | None = None
    onebody: tuple[float, PotentialLaw] | None = None
    twobody: tuple[float, PotentialLaw] | None = None

    def __post_init__(self) -> None:
        if self.kinetic is None and self.onebody is None and self.twobody is None:
            raise ValueError("a perturbation needs at least one coefficient/shape pair")


def perturbed_energy(
    base: EnvelopeSolution, spec: SystemSpec, pert: PerturbationSpec
) -> float:
    """First-order corrected level: shapes evaluated at the unperturbed scales.

    The correction is N tau t(p0) + N eta u(r0/N) + C_N eps v(r0/sqrt(C_N)).
    A warning is emitted when its size exceeds a tenth of |E|, where first
    order stops being trustworthy.
    """
    n = spec.n
    c = float(spec.pair_count)
    correction = 0.0
    if pert.kinetic is not None:
        tau, shape = pert.kinetic
        correction += n * tau * float(eval_term(shape, base.p0, EvalMode.VALUE))
    if pert.onebody is not None:
        eta, shape = pert.onebody
        correction += n * eta * float(eval_term(shape, base.r0 / n, EvalMode.VALUE))
    if pert.twobody is not None:
        eps, shape = pert.twobody
        correction += c * eps * float(eval_term(shape, base.r0 / np.sqrt(c), EvalMode.VALUE))
    if abs(correction) > 0.1 * abs(base.energy):
        warnings.warn(
            f"first-order correction {correction:.6g} exceeds 10% of the level "
            f"{base.energy:.6g}; the result is indicative only",
            PerturbationSizeWarning,
            stacklevel=2,
        )
    return base.energy + correction


# ---------------------------------------------------------------------------
# Critical couplings of short-range wells
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalCoupling:
    """Coupling at which the first level crosses zero, with its stationary scale."""

    mode: Literal["onebody", "twobody"]
    y0: float
    value: float
    bound: BoundKind


def critical_coupling(
    mode: Literal["onebody", "twobody"],
    shape: PotentialLaw,
    n: int,
    q: QValue | float,
    mass: float,
) -> CriticalCoupling:
    """Minimal well depth binding N nonrelativistic particles.

    Writing the well as W(x) = -kappa w(x) with w positive and vanishing at
    infinity, the envelope level reaches zero exactly when the profile scale
    y0 solves 2 w(y) + y w'(y) = 0; y0 depends on the shape only.  The
    threshold depth is then

        twobody:  g_c = (2 / (N (N-1)^2)) (Q^2 / m) / (y0^2 w(y0)),
        onebody:  k_c = (1 / (2 N^2))     (Q^2 / m) / (y0^2 w(y0)).

    The flag carried by the result states on which side of the true critical
    coupling this estimate falls, inherited from the bound direction of the
    envelope level itself.
    """
    if mode not in ("onebody", "twobody"):
        raise ValueError(f"mode must be 'onebody' or 'twobody', got {mode!r}")
    if not shape.short_range:
        raise NotShortRange(f"{shape.family.value} potential is not short range")
    if n < 2:
        raise ValueError(f"need at least two particles, got n={n}")
    if mass <= 0.0:
        raise ValueError(f"mass must be positive, got {mass}")
    qv = float(q)
    if qv <= 0.0:
        raise ValueError(f"quantum number must be positive, got {qv}")

    y0 = _profile_stationary_scale(shape)
    w0 = float(shape.well_profile(y0))
    if mode == "twobody":
        value = (2.0 / (n * (n - 1.0) ** 2)) * (qv * qv / mass) / (y0 * y0 * w0)
    else:
        value = (1.0 / (2.0 * n * n)) * (qv * qv / mass) / (y0 * y0 * w0)

    # The envelope level for a nonrelativistic particle in this well carries
    # the well's own chart curvature (the kinetic chart is linear).
    tag = term_convexity(shape, (y0 / 10.0, 10.0 * y0))
    verdict = ConvexityVerdict.from_terms({"kinetic": Convexity.LINEAR, "well": tag})
    return CriticalCoupling(mode=mode, y0=y0, value=value, bound=verdict.classification)


def _profile_stationary_scale(shape: PotentialLaw) -> float:
    """Root of 2 w(y) + y w'(y) = 0, located on a log grid around the screening length."""

    def residual(y):
        return 2.0 * shape.well_profile(y) + y * shape.well_profile_derivative(y)

    center = shape.screening if shape.screening > 0.0 else 1.0
    grid = center * np.logspace(-8.0, 8.0, 1025)
    with np.errstate(all="ignore"):
        values = np.asarray(residual(grid), dtype=float)
    prev_x = prev_v = None
    for x, v in zip(grid, values):
        if not np.isfinite(v):
            prev_x = prev_v = None
            continue
        if v == 0.0:
            return float(x)
        if prev_v is not None and (v < 0.0) != (prev_v < 0.0):
            return float(
                brentq(lambda t: float(residual(t)), prev_x, x, xtol=1e-300, rtol=4.0 * _EPS)
            )
        prev_x, prev_v = x, v
    raise NoCriticalPoint(
        "the well profile admits no stationary scale: 2 w(y) + y w'(y) never crosses zero"
    )
