"""Global oscillator quantum numbers.

The auxiliary many-body oscillator organizes its spectrum through a single
number ``Q = sum_i (2 n_i + l_i) + (N - 1) D / 2`` built from the N-1
internal excitation pairs.  This module provides that count, the bosonic
ground-state value, the large-N asymptotic for spin-degenerate fermions, and
the two-body towers that make the envelope exact for specific auxiliary
power-law exponents.

The linear auxiliary tower needs zeros of the Airy function Ai.  Those are
not tabulated here: Ai is summed from its Maclaurin series in high-precision
arithmetic and the zeros are found by bisection, once, then cached.  The
series is the textbook pair of entire solutions of y'' = x y,

    f(x) = 1 + x^3/6 + x^6/180 + ...      (a_{k+3} = a_k / ((k+3)(k+2)))
    g(x) = x + x^4/12 + x^7/504 + ...

with Ai = f / (3^(2/3) Gamma(2/3)) - g / (3^(1/3) Gamma(1/3)).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum

import mpmath as mp

from .errors import UnsupportedAuxiliary
from .model import StateSpec

_AIRY_DPS = 40  # working precision (decimal digits) for series and bisection
_AIRY_CACHE_MIN = 10  # zeros computed on first use
_airy_lock = threading.Lock()
_airy_zeros: list[float] = []


class QProvenance(Enum):
    OSCILLATOR_TOWER = "oscillator-tower"
    BOSON_GROUND_STATE = "boson-ground-state"
    FERMION_ASYMPTOTIC = "fermion-asymptotic"
    COULOMB_EXACT = "coulomb-exact"
    HARMONIC_EXACT = "harmonic-exact"
    AIRY_LINEAR = "airy-linear"
    USER_DEFINED = "user-defined"


@dataclass(frozen=True)
class QValue:
    """A positive global quantum number plus how it was obtained."""

    value: float
    provenance: QProvenance = QProvenance.USER_DEFINED

    def __post_init__(self) -> None:
        if not self.value > 0.0:
            raise ValueError(f"quantum number must be positive, got {self.value}")

    def __float__(self) -> float:
        return float(self.value)


def q_from_quanta(state: StateSpec, d: int) -> QValue:
    """Q for an explicit excitation listing in d spatial dimensions."""
    if d < 2:
        raise ValueError(f"need at least two dimensions, got d={d}")
    total = sum(2 * n_i + l_i for n_i, l_i in state.quanta)
    value = total + len(state.quanta) * d / 2.0
    return QValue(value, QProvenance.OSCILLATOR_TOWER)


def q_boson_ground(n: int, d: int) -> QValue:
    """Ground-state Q for n identical bosons: all internal quanta at zero."""
    if n < 2:
        raise ValueError(f"need at least two particles, got n={n}")
    if d < 2:
        raise ValueError(f"need at least two dimensions, got d={d}")
    return QValue((n - 1) * d / 2.0, QProvenance.BOSON_GROUND_STATE)


def q_fermion_asymptotic(n: int, d: int, degeneracy: int = 1) -> QValue:
    """Large-n ground-state Q for identical fermions with internal degeneracy.

    Filling the lowest oscillator shells under the Pauli principle gives
    Q ~ (d/(d+1)) (d! n^(d+1) / degeneracy)^(1/d) once n is large; this is
    the leading term only and is not a shell-exact count at small n.
    """
    if n < 2:
        raise ValueError(f"need at least two particles, got n={n}")
    if d < 2:
        raise ValueError(f"need at least two dimensions, got d={d}")
    if degeneracy < 1:
        raise ValueError(f"degeneracy must be >= 1, got {degeneracy}")
    value = d / (d + 1.0) * (math.factorial(d) * float(n) ** (d + 1) / degeneracy) ** (1.0 / d)
    return QValue(value, QProvenance.FERMION_ASYMPTOTIC)


def q_two_body_auxiliary(aux_exponent: float, n: int, l: int, d: int) -> QValue:
    """Exact two-body tower for the auxiliary exponents that admit one.

    Exponent -1 (Coulomb-like auxiliary) gives n + l + (d-1)/2; exponent 2
    (oscillator auxiliary) gives 2n + l + d/2; exponent 1 (linear auxiliary,
    d = 3, l = 0 only) maps the k-th Airy zero alpha_n onto
    Q = 2 (-alpha_n / 3)^(3/2).
    """
    if n < 0 or l < 0:
        raise ValueError(f"quantum numbers must be non-negative, got n={n}, l={l}")
    if d < 2:
        raise ValueError(f"need at least two dimensions, got d={d}")
    lam = float(aux_exponent)
    if lam == -1.0:
        return QValue(n + l + (d - 1) / 2.0, QProvenance.COULOMB_EXACT)
    if lam == 2.0:
        return QValue(2 * n + l + d / 2.0, QProvenance.HARMONIC_EXACT)
    if lam == 1.0:
        if d != 3 or l != 0:
            raise UnsupportedAuxiliary(
                "the linear auxiliary tower is exact only for d=3, l=0"
            )
        alpha = airy_zero(n)
        return QValue(2.0 * (-alpha / 3.0) ** 1.5, QProvenance.AIRY_LINEAR)
    raise UnsupportedAuxiliary(
        f"no closed-form tower for auxiliary exponent {aux_exponent}"
    )


# ---------------------------------------------------------------------------
# Airy machinery
# ---------------------------------------------------------------------------


def airy_ai(x: float) -> float:
    """Ai(x) summed from the Maclaurin series in high-precision arithmetic.

    The two entire series f and g converge everywhere; the cancellation that
    ruins double precision for x < -8 is absorbed by working at extended
    precision and rounding only the final sum.
    """
    with mp.workdps(_AIRY_DPS):
        return float(_airy_ai_mp(mp.mpf(x)))


def _airy_ai_mp(x: "mp.mpf") -> "mp.mpf":
    c1 = mp.mpf(3) ** mp.mpf("-2/3") / mp.gamma(mp.mpf(2) / 3)
    c2 = mp.mpf(3) ** mp.mpf("-1/3") / mp.gamma(mp.mpf(1) / 3)
    x3 = x * x * x
    term_f = mp.mpf(1)
    term_g = x
    total = c1 * term_f - c2 * term_g
    eps = mp.mpf(10) ** (-(mp.mp.dps + 5))
    for k in range(1, 500):
        base = 3 * k
        term_f *= x3 / ((base - 1) * base)
        term_g *= x3 / (base * (base + 1))
        delta = c1 * term_f - c2 * term_g
        total += delta
        if abs(term_f) < eps and abs(term_g) < eps and abs(x3) < base * base:
            break
    return total


def airy_zero(index: int) -> float:
    """The index-th negative zero of Ai (0-based), by bracketed bisection."""
    if index < 0:
        raise ValueError(f"zero index must be >= 0, got {index}")
    with _airy_lock:
        want = max(index + 1, _AIRY_CACHE_MIN)
        if len(_airy_zeros) < want:
            _extend_airy_cache(want)
        return _airy_zeros[index]


def _extend_airy_cache(count: int) -> None:
    with mp.workdps(_AIRY_DPS):
        # Resume slightly past the last cached zero so the sign there is definite.
        x = mp.mpf(_airy_zeros[-1]) - mp.mpf("1e-10") if _airy_zeros else mp.mpf(-1)
        step = mp.mpf("0.05")
        f_right = _airy_ai_mp(x)
        while len(_airy_zeros) < count:
            left = x - step
            f_left = _airy_ai_mp(left)
            if f_left == 0:
                _airy_zeros.append(float(left))
                x, f_right = left - step / 7, _airy_ai_mp(left - step / 7)
                continue
            if (f_left < 0) != (f_right < 0):
                _airy_zeros.append(float(_bisect_airy(left, x, f_left)))
            x, f_right = left, f_left


def _bisect_airy(lo: "mp.mpf", hi: "mp.mpf", f_lo: "mp.mpf") -> "mp.mpf":
    tol = mp.mpf(10) ** (-(mp.mp.dps - 5))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        f_mid = _airy_ai_mp(mid)
        if f_mid == 0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return (lo + hi) / 2
