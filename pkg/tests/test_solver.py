import math
import random

import pytest

from envtheory import (
    BoundKind,
    KineticLaw,
    PotentialLaw,
    QValue,
    SolverConfig,
    SystemSpec,
    auxiliary_energy,
    nbody_energy,
    q_boson_ground,
    q_two_body_auxiliary,
    solve_nbody,
    solve_two_body,
    stationary_residual,
    two_body_energy,
)
from envtheory.errors import (
    InvalidAuxiliaryExponent,
    NoStationaryPoint,
)


def harmonic_spec(n, d, m, k):
    return SystemSpec(
        n=n,
        d=d,
        kinetic=KineticLaw.nonrelativistic(m),
        twobody=PotentialLaw.power_law(k, 2.0),
    )


# --- auxiliary power-law levels ---------------------------------------------


def test_auxiliary_energy_harmonic():
    # lam = 2 is the oscillator: E = sqrt(2 rho / mu) Q
    for q in (1.5, 3.0, 7.25):
        assert auxiliary_energy(1.0, 0.5, 2.0, q) == pytest.approx(q, rel=1e-14)
        assert auxiliary_energy(2.0, 4.0, 2.0, q) == pytest.approx(
            2.0 * q, rel=1e-14
        )


def test_auxiliary_energy_coulomb():
    # lam = -1: E = -mu rho^2 / (2 Q^2)
    assert auxiliary_energy(1.0, 1.0, -1.0, 1.0) == pytest.approx(-0.5)
    assert auxiliary_energy(0.5, 2.0, -1.0, 2.0) == pytest.approx(-0.25)


def test_auxiliary_energy_linear_frozen():
    q = float(q_two_body_auxiliary(1.0, 0, 0, 3))
    assert auxiliary_energy(2.0, 3.0, 1.0, q) == pytest.approx(
        3.0637874373492417, rel=1e-12
    )


def test_auxiliary_energy_linear_equals_airy_form():
    # for mu=1, rho=1 the lam=1 level with the linear tower reproduces the
    # exact linear-potential ground state (1/2)^{1/3} |alpha_0|
    q = float(q_two_body_auxiliary(1.0, 0, 0, 3))
    want = 0.5 ** (1.0 / 3.0) * 2.338107410459767
    assert auxiliary_energy(1.0, 1.0, 1.0, q) == pytest.approx(want, rel=1e-12)


def test_auxiliary_energy_rejects_bad_exponent():
    for lam in (0.0, -2.0, -3.0):
        with pytest.raises(InvalidAuxiliaryExponent):
            auxiliary_energy(1.0, 1.0, lam, 1.0)


# --- N-body solves ----------------------------------------------------------


def test_harmonic_three_body_closed_form():
    # three particles, pairwise k r^2: every mode has omega = sqrt(2 N k / m)
    sol = solve_nbody(harmonic_spec(3, 3, 1.0, 1.0), q_boson_ground(3, 3))
    assert sol.energy == pytest.approx(3.0 * math.sqrt(6.0), rel=1e-12)
    assert sol.bound.classification is BoundKind.EXACT
    assert sol.n_roots == 1


def test_harmonic_half_strength_value():
    # pairwise amplitude 0.5 at N=3, D=3 lands on 3 sqrt(3)
    sol = solve_nbody(harmonic_spec(3, 3, 1.0, 0.5), q_boson_ground(3, 3))
    assert sol.energy == pytest.approx(5.196152422706632, rel=1e-12)


def test_harmonic_random_sweep_matches_closed_form():
    rng = random.Random(314159)
    for _ in range(40):
        n = rng.randint(2, 7)
        d = rng.randint(2, 6)
        m = rng.uniform(0.3, 4.0)
        k = rng.uniform(0.3, 4.0)
        q = q_boson_ground(n, d)
        sol = solve_nbody(harmonic_spec(n, d, m, k), q)
        want = math.sqrt(2.0 * n * k / m) * float(q)
        assert sol.energy == pytest.approx(want, rel=1e-10)
        # scales p0 r0 = Q
        assert sol.p0 * sol.r0 == pytest.approx(float(q), rel=1e-12)


def test_onebody_harmonic_closed_form():
    # one-body nu |r_i - R|^2 only: omega = sqrt(2 nu / m)
    spec = SystemSpec(
        n=4,
        d=3,
        kinetic=KineticLaw.nonrelativistic(1.0),
        onebody=PotentialLaw.power_law(0.7, 2.0),
    )
    sol = solve_nbody(spec, q_boson_ground(4, 3))
    want = math.sqrt(2.0 * 0.7) * float(q_boson_ground(4, 3))
    assert sol.energy == pytest.approx(want, rel=1e-11)
    assert sol.bound.classification is BoundKind.EXACT


def test_mixed_one_and_two_body_harmonic():
    # nu + N rho sets the frequency when both quadratic terms are present
    n, nu, rho, m = 3, 0.4, 0.9, 1.2
    spec = SystemSpec(
        n=n,
        d=3,
        kinetic=KineticLaw.nonrelativistic(m),
        onebody=PotentialLaw.power_law(nu, 2.0),
        twobody=PotentialLaw.power_law(rho, 2.0),
    )
    q = q_boson_ground(n, 3)
    sol = solve_nbody(spec, q)
    want = math.sqrt(2.0 * (nu + n * rho) / m) * float(q)
    assert sol.energy == pytest.approx(want, rel=1e-11)


def test_two_body_coulomb_framings_agree():
    # N-body at N=2 with particle mass m is the relative problem at mu = m/2
    nb = solve_nbody(
        SystemSpec(
            n=2,
            d=3,
            kinetic=KineticLaw.nonrelativistic(1.0),
            twobody=PotentialLaw.coulomb(1.0),
        ),
        QValue(1.5),
    )
    tb = solve_two_body(
        KineticLaw.nonrelativistic(0.5), PotentialLaw.coulomb(1.0), None, QValue(1.5)
    )
    assert nb.energy == pytest.approx(tb.energy, rel=1e-12)
    assert nb.energy == pytest.approx(-1.0 / 9.0, rel=1e-12)


def test_two_body_coulomb_exact_with_inverse_tower():
    sol = solve_two_body(
        KineticLaw.nonrelativistic(1.0),
        PotentialLaw.coulomb(1.0),
        -1.0,
        q_two_body_auxiliary(-1.0, 0, 0, 3),
    )
    assert sol.energy == pytest.approx(-0.5, rel=1e-12)
    assert sol.bound.classification is BoundKind.EXACT


def test_two_body_linear_exact_with_linear_tower():
    sol = solve_two_body(
        KineticLaw.nonrelativistic(1.0),
        PotentialLaw.power_law(1.0, 1.0),
        1.0,
        q_two_body_auxiliary(1.0, 0, 0, 3),
    )
    want = 0.5 ** (1.0 / 3.0) * 2.338107410459767
    assert sol.energy == pytest.approx(want, rel=1e-11)
    assert sol.bound.classification is BoundKind.EXACT


def test_fourier_swap_invariance():
    # exchanging the kinetic and potential shapes leaves the level alone and
    # swaps the mean radius and momentum
    q = QValue(2.5)
    a = solve_two_body(
        KineticLaw.nonrelativistic(0.5),  # p^2
        PotentialLaw.power_law(1.0, 1.0),  # + r
        2.0,
        q,
    )
    swapped = solve_two_body(
        KineticLaw.ultrarelativistic(),  # p
        PotentialLaw.power_law(1.0, 2.0),  # + r^2
        2.0,
        q,
    )
    assert a.energy == pytest.approx(swapped.energy, rel=1e-11)
    assert a.r0 == pytest.approx(swapped.p0, rel=1e-9)
    assert a.p0 == pytest.approx(swapped.r0, rel=1e-9)


def test_semirelativistic_upper_bound_value():
    # frozen: N=3 gravitating semirelativistic bosons, alpha = 0.1
    spec = SystemSpec(
        n=3,
        d=3,
        kinetic=KineticLaw.semirelativistic(1.0),
        twobody=PotentialLaw.coulomb(0.1),
    )
    sol = solve_nbody(spec, q_boson_ground(3, 3))
    assert sol.energy == pytest.approx(2.9949958263743874, rel=1e-10)
    assert sol.bound.classification is BoundKind.UPPER


def test_ultrarelativistic_coulomb_collapses():
    # N p0 and the Coulomb pull scale identically with r0: no stationary
    # point once the attraction dominates
    spec = SystemSpec(
        n=3,
        d=3,
        kinetic=KineticLaw.ultrarelativistic(),
        twobody=PotentialLaw.coulomb(10.0),
    )
    with pytest.raises(NoStationaryPoint) as err:
        solve_nbody(spec, q_boson_ground(3, 3))
    assert "collapse" in str(err.value)


def test_subcritical_well_is_unbound():
    # a shallow Yukawa cannot hold the level below zero; kinetic pressure wins
    spec = SystemSpec(
        n=2,
        d=3,
        kinetic=KineticLaw.nonrelativistic(1.0),
        twobody=PotentialLaw.yukawa(0.5, 1.0),
    )
    with pytest.raises(NoStationaryPoint) as err:
        solve_nbody(spec, QValue(1.5))
    assert "kinetic" in str(err.value)


def test_overcritical_yukawa_two_roots():
    spec = SystemSpec(
        n=2,
        d=3,
        kinetic=KineticLaw.nonrelativistic(1.0),
        twobody=PotentialLaw.yukawa(8.0, 1.0),
    )
    sol = solve_nbody(spec, QValue(1.5))
    assert sol.n_roots == 2
    # the reported level is the lowest one
    assert sol.energy == pytest.approx(min(r.energy for r in sol.roots), rel=0)
    assert sol.energy < 0.0
    # both roots satisfy the stationarity condition
    for root in sol.roots:
        assert abs(float(stationary_residual(spec, 1.5, root.r0))) < 1e-8


def test_logarithmic_mass_independence_of_splittings():
    # level differences of -(1/2m) Lap + c ln(r) do not depend on m; the
    # envelope inherits that through Q -> Q' at fixed tower spacing
    c = 1.0
    for m in (0.5, 1.0, 2.0):
        sols = [
            solve_two_body(
                KineticLaw.nonrelativistic(m),
                PotentialLaw.logarithmic(c),
                2.0,
                q_two_body_auxiliary(2.0, n, 0, 3),
            )
            for n in (0, 1)
        ]
        gap = sols[1].energy - sols[0].energy
        # envelope gap for ln r: c ln(Q1/Q0), independent of mass
        want = c * math.log(3.5 / 1.5)
        assert gap == pytest.approx(want, rel=1e-10)


def test_residual_and_energy_are_consistent():
    spec = harmonic_spec(4, 3, 1.0, 1.0)
    q = float(q_boson_ground(4, 3))
    sol = solve_nbody(spec, q)
    # the residual vanishes at r0 and the energy function is stationary there
    assert abs(float(stationary_residual(spec, q, sol.r0))) < 1e-9
    h = 1e-6 * sol.r0
    e = lambda r: float(nbody_energy(spec, r, q / r))
    slope = (e(sol.r0 + h) - e(sol.r0 - h)) / (2.0 * h)
    assert abs(slope) < 1e-6
    assert e(sol.r0) == pytest.approx(sol.energy, rel=1e-14)


def test_two_body_energy_shape():
    kin = KineticLaw.nonrelativistic(1.0)
    pot = PotentialLaw.power_law(1.0, 2.0)
    assert two_body_energy(kin, pot, 2.0, 3.0) == pytest.approx(
        9.0 / 2.0 + 4.0, rel=1e-15
    )


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(tolerance=0.0)
    with pytest.raises(ValueError):
        SolverConfig(tolerance=1e-3)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=3)
    with pytest.raises(ValueError):
        SolverConfig(bracket_expansion=1.0)
    with pytest.raises(ValueError):
        SolverConfig(points_per_decade=4)


def test_tight_tolerance_is_honored():
    spec = harmonic_spec(3, 3, 1.0, 1.0)
    sol = solve_nbody(spec, q_boson_ground(3, 3), SolverConfig(tolerance=1e-12))
    want_r0 = (3.0 * 9.0 / 2.0) ** 0.25
    assert sol.r0 == pytest.approx(want_r0, rel=1e-12)
