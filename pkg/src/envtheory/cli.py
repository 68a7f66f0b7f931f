"""Batch front end: sectioned key=value configs in, deterministic CSV out.

Exit codes: 0 success, 1 usage or configuration problem, 2 no stationary
point (collapse or unbound), 3 oracle not converged.  Floats are printed
with 17 significant digits so every row re-parses to the exact value.
"""

from __future__ import annotations

import argparse
import copy
import sys
from dataclasses import dataclass

from . import analysis, apps, oracle, solver
from .errors import (
    CollapseRegime,
    ConfigError,
    ConstraintViolation,
    EnvelopeError,
    MissingSection,
    NoStationaryPoint,
    NotConverged,
    TypeMismatch,
    UnknownKey,
)
from .model import (
    KineticFamily,
    KineticLaw,
    PotentialFamily,
    PotentialLaw,
    StateSpec,
    Statistics,
    SystemSpec,
)
from .qnum import (
    QProvenance,
    QValue,
    q_boson_ground,
    q_fermion_asymptotic,
    q_from_quanta,
)

_SECTION_NAMES = (
    "system",
    "kinetic",
    "onebody",
    "twobody",
    "state",
    "solver",
    "perturbation",
)

_KINETIC_KEYS = {
    "nonrelativistic": {"mass"},
    "semirelativistic": {"mass"},
    "ultrarelativistic": set(),
    "minimal-length": {"mass", "deformation"},
    "exponential-quadratic": {"stiffness"},
}

_POTENTIAL_KEYS = {
    "powerlaw": {"amplitude", "exponent"},
    "coulomb": {"strength"},
    "squareroot": {"offset", "scale"},
    "logarithmic": {"scale"},
    "yukawa": {"coupling", "screening"},
    "exponential": {"coupling", "screening"},
    "gaussian": {"coupling", "screening"},
}

Sections = dict[str, dict[str, tuple[int, str]]]


def _fmt(x) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------


def parse_sections(text: str) -> Sections:
    """Split config text into sections of key = value pairs with line numbers."""
    sections: Sections = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise TypeMismatch(f"line {lineno}: malformed section header {raw.strip()!r}")
            name = line[1:-1].strip().lower()
            if name not in _SECTION_NAMES:
                raise MissingSection(f"line {lineno}: unknown section [{name}]")
            if name in sections:
                raise MissingSection(f"line {lineno}: duplicate section [{name}]")
            sections[name] = {}
            current = name
            continue
        if current is None:
            raise MissingSection(f"line {lineno}: key outside any section: {raw.strip()!r}")
        if "=" not in line:
            raise TypeMismatch(f"line {lineno}: expected key = value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if not key:
            raise TypeMismatch(f"line {lineno}: empty key")
        if key in sections[current]:
            raise UnknownKey(f"line {lineno}: duplicate key '{key}' in [{current}]")
        sections[current][key] = (lineno, value)
    return sections


def _reject_unknown(name: str, data: dict, allowed: set[str]) -> None:
    for key, (lineno, _) in data.items():
        if key not in allowed:
            raise UnknownKey(f"line {lineno}: unknown key '{key}' in [{name}]")


def _get_float(name: str, data: dict, key: str, default: float | None = None) -> float | None:
    if key not in data:
        return default
    lineno, text = data[key]
    try:
        return float(text)
    except ValueError:
        raise TypeMismatch(
            f"line {lineno}: [{name}] {key}: expected a number, got {text!r}"
        ) from None


def _get_int(name: str, data: dict, key: str, default: int | None = None) -> int | None:
    if key not in data:
        return default
    lineno, text = data[key]
    try:
        return int(text)
    except ValueError:
        raise TypeMismatch(
            f"line {lineno}: [{name}] {key}: expected an integer, got {text!r}"
        ) from None


def _get_choice(name: str, data: dict, key: str, choices, default: str | None = None) -> str | None:
    if key not in data:
        return default
    lineno, text = data[key]
    value = text.lower()
    if value not in choices:
        raise ConstraintViolation(
            f"line {lineno}: [{name}] {key} must be one of {sorted(choices)}, got {text!r}"
        )
    return value


def _require(name: str, data: dict, key: str):
    if key not in data:
        raise ConstraintViolation(f"[{name}] requires key '{key}'")


def _line_of(name: str, data: dict, key: str) -> int:
    return data[key][0] if key in data else 0


def _build_kinetic(data: dict) -> KineticLaw:
    _require("kinetic", data, "family")
    family = _get_choice("kinetic", data, "family", set(_KINETIC_KEYS))
    _reject_unknown("kinetic", data, _KINETIC_KEYS[family] | {"family"})
    try:
        if family == "nonrelativistic":
            _require("kinetic", data, "mass")
            return KineticLaw.nonrelativistic(_get_float("kinetic", data, "mass"))
        if family == "semirelativistic":
            _require("kinetic", data, "mass")
            return KineticLaw.semirelativistic(_get_float("kinetic", data, "mass"))
        if family == "ultrarelativistic":
            return KineticLaw.ultrarelativistic()
        if family == "minimal-length":
            _require("kinetic", data, "mass")
            _require("kinetic", data, "deformation")
            return KineticLaw.minimal_length_quartic(
                _get_float("kinetic", data, "mass"),
                _get_float("kinetic", data, "deformation"),
            )
        _require("kinetic", data, "stiffness")
        return KineticLaw.exponential_quadratic(_get_float("kinetic", data, "stiffness"))
    except ValueError as exc:
        raise ConstraintViolation(
            f"line {_line_of('kinetic', data, 'family')}: [kinetic] {exc}"
        ) from None


def _build_potential(name: str, data: dict) -> PotentialLaw:
    _require(name, data, "family")
    family = _get_choice(name, data, "family", set(_POTENTIAL_KEYS))
    _reject_unknown(name, data, _POTENTIAL_KEYS[family] | {"family"})
    try:
        if family == "powerlaw":
            _require(name, data, "amplitude")
            _require(name, data, "exponent")
            return PotentialLaw.power_law(
                _get_float(name, data, "amplitude"), _get_float(name, data, "exponent")
            )
        if family == "coulomb":
            _require(name, data, "strength")
            return PotentialLaw.coulomb(_get_float(name, data, "strength"))
        if family == "squareroot":
            return PotentialLaw.square_root(
                _get_float(name, data, "offset", 0.0), _get_float(name, data, "scale", 1.0)
            )
        if family == "logarithmic":
            return PotentialLaw.logarithmic(_get_float(name, data, "scale", 1.0))
        builder = {
            "yukawa": PotentialLaw.yukawa,
            "exponential": PotentialLaw.exponential,
            "gaussian": PotentialLaw.gaussian,
        }[family]
        _require(name, data, "coupling")
        return builder(
            _get_float(name, data, "coupling"), _get_float(name, data, "screening", 1.0)
        )
    except ValueError as exc:
        raise ConstraintViolation(
            f"line {_line_of(name, data, 'family')}: [{name}] {exc}"
        ) from None


def _parse_quanta(lineno: int, text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for chunk in text.split():
        parts = chunk.split(",")
        if len(parts) != 2:
            raise TypeMismatch(
                f"line {lineno}: [state] quanta entries must be 'n,l' pairs, got {chunk!r}"
            )
        try:
            n_i, l_i = int(parts[0]), int(parts[1])
        except ValueError:
            raise TypeMismatch(
                f"line {lineno}: [state] quanta entries must be integers, got {chunk!r}"
            ) from None
        if n_i < 0 or l_i < 0:
            raise ConstraintViolation(
                f"line {lineno}: [state] quanta must be non-negative, got {chunk!r}"
            )
        pairs.append((n_i, l_i))
    if not pairs:
        raise ConstraintViolation(f"line {lineno}: [state] quanta must list at least one pair")
    return tuple(pairs)


@dataclass
class RunConfig:
    """Everything a command needs, parsed and validated once."""

    sections: Sections
    n: int
    d: int
    statistics: Statistics
    degeneracy: int
    kinetic: KineticLaw | None
    onebody: PotentialLaw | None
    twobody: PotentialLaw | None
    state_kind: str  # 'boson-gs' | 'fermion-asymptotic' | 'quanta' | 'q'
    state_quanta: tuple[tuple[int, int], ...] | None
    state_q: float | None
    solver: solver.SolverConfig
    perturbation: analysis.PerturbationSpec | None

    def system(self) -> SystemSpec:
        if self.kinetic is None:
            raise MissingSection("a [kinetic] section is required for this command")
        if self.onebody is None and self.twobody is None:
            raise MissingSection("an [onebody] or [twobody] section is required")
        return SystemSpec(
            n=self.n,
            d=self.d,
            kinetic=self.kinetic,
            onebody=self.onebody,
            twobody=self.twobody,
            statistics=self.statistics,
            degeneracy=self.degeneracy,
        )

    def resolve_q(self) -> QValue:
        if self.state_kind == "boson-gs":
            return q_boson_ground(self.n, self.d)
        if self.state_kind == "fermion-asymptotic":
            return q_fermion_asymptotic(self.n, self.d, self.degeneracy)
        if self.state_kind == "quanta":
            if len(self.state_quanta) != self.n - 1:
                raise ConstraintViolation(
                    f"[state] quanta lists {len(self.state_quanta)} pairs but "
                    f"n={self.n} needs {self.n - 1}"
                )
            return q_from_quanta(StateSpec(self.state_quanta), self.d)
        return QValue(self.state_q, QProvenance.USER_DEFINED)

    def state_l(self) -> int:
        if self.state_kind == "quanta":
            return self.state_quanta[0][1]
        return 0


def config_from_sections(sections: Sections) -> RunConfig:
    for name in sections:
        if name not in _SECTION_NAMES:
            raise MissingSection(f"unknown section [{name}]")
    if "system" not in sections:
        raise MissingSection("a [system] section is required")

    system = sections["system"]
    _reject_unknown("system", system, {"n", "d", "statistics", "degeneracy"})
    _require("system", system, "n")
    _require("system", system, "d")
    n = _get_int("system", system, "n")
    d = _get_int("system", system, "d")
    if n < 2:
        raise ConstraintViolation(
            f"line {_line_of('system', system, 'n')}: [system] n must be >= 2, got {n}"
        )
    if d < 2:
        raise ConstraintViolation(
            f"line {_line_of('system', system, 'd')}: [system] d must be >= 2, got {d}"
        )
    statistics = Statistics(
        _get_choice(
            "system", system, "statistics", {s.value for s in Statistics}, "unspecified"
        )
    )
    degeneracy = _get_int("system", system, "degeneracy", 1)
    if degeneracy < 1:
        raise ConstraintViolation(
            f"line {_line_of('system', system, 'degeneracy')}: [system] degeneracy "
            f"must be >= 1, got {degeneracy}"
        )

    kinetic = _build_kinetic(sections["kinetic"]) if "kinetic" in sections else None
    onebody = _build_potential("onebody", sections["onebody"]) if "onebody" in sections else None
    twobody = _build_potential("twobody", sections["twobody"]) if "twobody" in sections else None

    state_kind, quanta, state_q = "boson-gs", None, None
    if "state" in sections:
        data = sections["state"]
        _reject_unknown("state", data, {"tower", "quanta", "q"})
        present = [k for k in ("tower", "quanta", "q") if k in data]
        if len(present) != 1:
            raise ConstraintViolation(
                "[state] needs exactly one of 'tower', 'quanta', or 'q', "
                f"got {present or 'none'}"
            )
        if present[0] == "tower":
            state_kind = _get_choice(
                "state", data, "tower", {"boson-gs", "fermion-asymptotic"}
            )
        elif present[0] == "quanta":
            state_kind = "quanta"
            quanta = _parse_quanta(*data["quanta"])
        else:
            state_kind = "q"
            state_q = _get_float("state", data, "q")
            if state_q <= 0.0:
                raise ConstraintViolation(
                    f"line {_line_of('state', data, 'q')}: [state] q must be positive, "
                    f"got {state_q}"
                )

    solver_cfg = solver.SolverConfig()
    if "solver" in sections:
        data = sections["solver"]
        _reject_unknown(
            "solver",
            data,
            {"tolerance", "max_iterations", "bracket_expansion", "points_per_decade", "decades"},
        )
        try:
            solver_cfg = solver.SolverConfig(
                tolerance=_get_float("solver", data, "tolerance", 1e-12),
                max_iterations=_get_int("solver", data, "max_iterations", 200),
                bracket_expansion=_get_float("solver", data, "bracket_expansion", 2.0),
                points_per_decade=_get_int("solver", data, "points_per_decade", 64),
                decades=_get_float("solver", data, "decades", 8.0),
            )
        except ValueError as exc:
            raise ConstraintViolation(f"[solver] {exc}") from None

    perturbation = None
    if "perturbation" in sections:
        data = sections["perturbation"]
        _reject_unknown(
            "perturbation",
            data,
            {"tau", "tau_exponent", "eta", "eta_exponent", "epsilon", "epsilon_exponent"},
        )
        pairs: dict[str, tuple[float, PotentialLaw]] = {}
        for coeff_key, exp_key, slot in (
            ("tau", "tau_exponent", "kinetic"),
            ("eta", "eta_exponent", "onebody"),
            ("epsilon", "epsilon_exponent", "twobody"),
        ):
            coeff = _get_float("perturbation", data, coeff_key)
            if coeff is None:
                if exp_key in data:
                    raise ConstraintViolation(
                        f"line {_line_of('perturbation', data, exp_key)}: [perturbation] "
                        f"{exp_key} needs {coeff_key}"
                    )
                continue
            _require("perturbation", data, exp_key)
            exponent = _get_float("perturbation", data, exp_key)
            try:
                shape = PotentialLaw.power_law(1.0, exponent)
            except ValueError as exc:
                raise ConstraintViolation(
                    f"line {_line_of('perturbation', data, exp_key)}: [perturbation] {exc}"
                ) from None
            pairs[slot] = (coeff, shape)
        if not pairs:
            raise ConstraintViolation("[perturbation] needs at least one coefficient")
        perturbation = analysis.PerturbationSpec(
            kinetic=pairs.get("kinetic"),
            onebody=pairs.get("onebody"),
            twobody=pairs.get("twobody"),
        )

    return RunConfig(
        sections=sections,
        n=n,
        d=d,
        statistics=statistics,
        degeneracy=degeneracy,
        kinetic=kinetic,
        onebody=onebody,
        twobody=twobody,
        state_kind=state_kind,
        state_quanta=quanta,
        state_q=state_q,
        solver=solver_cfg,
        perturbation=perturbation,
    )


def parse_config(text: str) -> RunConfig:
    """Parse and validate a config; diagnostics name the offending line and key."""
    return config_from_sections(parse_sections(text))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _solve_row(cfg: RunConfig) -> list[str]:
    system = cfg.system()
    q = cfg.resolve_q()
    sol = solver.solve_nbody(system, q, cfg.solver)
    return [
        str(cfg.n),
        str(cfg.d),
        _fmt(q.value),
        _fmt(sol.energy),
        _fmt(sol.r0),
        _fmt(sol.p0),
        sol.bound.classification.value,
        str(sol.n_roots),
    ]


def _cmd_solve(cfg: RunConfig, args) -> tuple[list[str], list[list[str]]]:
    header = ["N", "D", "Q", "E", "r0", "p0", "bound", "n_roots"]
    return header, [_solve_row(cfg)]


def _cmd_bounds(cfg: RunConfig, args) -> tuple[list[str], list[list[str]]]:
    system = cfg.system()
    q = cfg.resolve_q()
    sol = solver.solve_nbody(system, q, cfg.solver)
    terms = sol.bound.terms
    row = [
        str(cfg.n),
        str(cfg.d),
        sol.bound.classification.value,
        terms.get("kinetic").value if "kinetic" in terms else "-",
        terms.get("onebody").value if "onebody" in terms else "-",
        terms.get("twobody").value if "twobody" in terms else "-",
    ]
    return ["N", "D", "bound", "kinetic", "onebody", "twobody"], [row]


def _cmd_critical(cfg: RunConfig, args) -> tuple[list[str], list[list[str]]]:
    if cfg.kinetic is None:
        raise MissingSection("a [kinetic] section is required for 'critical'")
    if cfg.kinetic.family is not KineticFamily.NONRELATIVISTIC:
        raise ConstraintViolation(
            "critical couplings are defined for nonrelativistic kinematics only"
        )
    shape = cfg.onebody if args.mode == "onebody" else cfg.twobody
    if shape is None:
        raise MissingSection(f"an [{args.mode}] section is required for --mode {args.mode}")
    q = cfg.resolve_q()
    result = analysis.critical_coupling(args.mode, shape, cfg.n, q, cfg.kinetic.mass)
    row = [
        args.mode,
        str(cfg.n),
        str(cfg.d),
        _fmt(q.value),
        _fmt(cfg.kinetic.mass),
        _fmt(result.y0),
        _fmt(result.value),
        result.bound.value,
    ]
    return ["mode", "N", "D", "Q", "m", "y0", "critical_value", "bound"], [row]


def _cmd_perturb(cfg: RunConfig, args) -> tuple[list[str], list[list[str]]]:
    if cfg.perturbation is None:
        raise MissingSection("a [perturbation] section is required for 'perturb'")
    system = cfg.system()
    q = cfg.resolve_q()
    sol = solver.solve_nbody(system, q, cfg.solver)
    corrected = analysis.perturbed_energy(sol, system, cfg.perturbation)
    row = [str(cfg.n), str(cfg.d), _fmt(q.value), _fmt(sol.energy), _fmt(corrected)]
    return ["N", "D", "Q", "E", "E_perturbed"], [row]


def _cmd_baryon(cfg: RunConfig, args) -> tuple[list[str], list[list[str]]]:
    params = apps.BaryonParams(n=cfg.n, d=cfg.d, a1=args.a1, a2=args.a2, b=args.b)
    e_upper, e_lower = apps.baryon_bounds(params)
    row = [
        str(cfg.n),
        str(cfg.d),
        _fmt(args.a1),
        _fmt(args.a2),
        _fmt(args.b),
        _fmt(e_upper),
        _fmt(e_lower),
    ]
    return ["N", "D", "a1", "a2", "b", "E_upper", "E_lower"], [row]


def _cmd_bosonstar(cfg: RunConfig, args) -> tuple[list[str], list[list[str]]]:
    if cfg.kinetic is None or cfg.kinetic.family is not KineticFamily.SEMIRELATIVISTIC:
        raise ConstraintViolation(
            "'bosonstar' needs [kinetic] family = semirelativistic"
        )
    if cfg.twobody is None or cfg.twobody.family is not PotentialFamily.COULOMB:
        raise ConstraintViolation("'bosonstar' needs [twobody] family = coulomb")
    q = cfg.resolve_q()
    params = apps.BosonStarParams(n=cfg.n, mass=cfg.kinetic.mass, alpha=cfg.twobody.strength)
    mass_bound = apps.boson_star_mass(params, q)
    row = [
        str(cfg.n),
        str(cfg.d),
        _fmt(cfg.kinetic.mass),
        _fmt(cfg.twobody.strength),
        _fmt(q.value),
        _fmt(mass_bound),
    ]
    return ["N", "D", "m", "alpha", "Q", "M_upper"], [row]


def _cmd_minlength(cfg: RunConfig, args) -> tuple[list[str], list[list[str]]]:
    if cfg.kinetic is None or cfg.kinetic.family is not KineticFamily.MINIMAL_LENGTH_QUARTIC:
        raise ConstraintViolation("'minlength' needs [kinetic] family = minimal-length")
    if (
        cfg.twobody is None
        or cfg.twobody.family is not PotentialFamily.POWER_LAW
        or cfg.twobody.exponent != 2.0
        or cfg.twobody.amplitude <= 0.0
    ):
        raise ConstraintViolation(
            "'minlength' needs [twobody] family = powerlaw with exponent 2 and "
            "positive amplitude"
        )
    q = cfg.resolve_q()
    energy = apps.minimal_length_energy(
        cfg.n, cfg.d, cfg.kinetic.mass, cfg.twobody.amplitude, cfg.kinetic.deformation, q
    )
    row = [
        str(cfg.n),
        str(cfg.d),
        _fmt(cfg.kinetic.mass),
        _fmt(cfg.twobody.amplitude),
        _fmt(cfg.kinetic.deformation),
        _fmt(q.value),
        _fmt(energy),
    ]
    return ["N", "D", "m", "spring", "deformation", "Q", "E"], [row]


def _sweep_values(args) -> list[float]:
    param = args.param.lower()
    if args.stop < args.start:
        raise ConstraintViolation("--to must not be smaller than --from")
    if param in ("n", "d"):
        start, stop = int(args.start), int(args.stop)
        if start != args.start or stop != args.stop:
            raise ConstraintViolation(f"--param {param} needs integer bounds")
        if args.steps is not None:
            raise ConstraintViolation(f"--param {param} steps in increments of 1; omit --steps")
        return [float(v) for v in range(start, stop + 1)]
    if args.steps is None:
        raise ConstraintViolation("--steps is required for law-parameter sweeps")
    if args.steps < 2:
        raise ConstraintViolation(f"--steps must be >= 2, got {args.steps}")
    width = (args.stop - args.start) / (args.steps - 1)
    return [args.start + i * width for i in range(args.steps)]


def _cmd_sweep(cfg: RunConfig, args) -> tuple[list[str], list[list[str]]]:
    param = args.param.lower()
    if param not in ("n", "d"):
        if "." not in param:
            raise ConstraintViolation(
                f"--param must be 'n', 'd', or 'section.key', got {args.param!r}"
            )
        section, _, key = param.partition(".")
        if section not in ("kinetic", "onebody", "twobody"):
            raise ConstraintViolation(
                f"sweepable sections are kinetic/onebody/twobody, got {section!r}"
            )
        if section not in cfg.sections:
            raise MissingSection(f"a [{section}] section is required to sweep {param}")
    header = ["param", "value", "N", "D", "Q", "E", "r0", "p0", "bound", "n_roots"]
    rows = []
    for value in _sweep_values(args):
        sections = copy.deepcopy(cfg.sections)
        if param in ("n", "d"):
            sections["system"][param] = (0, str(int(value)))
        else:
            section, _, key = param.partition(".")
            sections[section][key] = (0, repr(float(value)))
        point = config_from_sections(sections)
        rows.append([param, _fmt(value)] + _solve_row(point))
    return header, rows


def _cmd_oracle(cfg: RunConfig, args) -> tuple[list[str], list[list[str]]]:
    if cfg.kinetic is None or cfg.kinetic.family is not KineticFamily.NONRELATIVISTIC:
        raise ConstraintViolation("'oracle' needs [kinetic] family = nonrelativistic")
    if cfg.n != 2 or cfg.twobody is None:
        raise ConstraintViolation(
            "'oracle' solves the two-body relative problem: n = 2 with a [twobody] section"
        )
    if args.levels < 1:
        raise ConstraintViolation(f"--levels must be >= 1, got {args.levels}")
    system = cfg.system()
    q = cfg.resolve_q()
    sol = solver.solve_nbody(system, q, cfg.solver)
    r_max = args.rmax if args.rmax is not None else 25.0 * sol.r0
    problem = oracle.RadialProblem(
        mu=cfg.kinetic.mass / 2.0,
        potential=cfg.twobody,
        d=cfg.d,
        l=cfg.state_l(),
        r_max=r_max,
        points=args.points,
    )
    levels = oracle.radial_eigenvalues(problem, args.levels)
    rows = [[str(i), _fmt(e)] for i, e in enumerate(levels)]
    return ["level", "E"], rows


_COMMANDS = {
    "solve": _cmd_solve,
    "bounds": _cmd_bounds,
    "critical": _cmd_critical,
    "perturb": _cmd_perturb,
    "baryon": _cmd_baryon,
    "bosonstar": _cmd_bosonstar,
    "minlength": _cmd_minlength,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="envtheory", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to a sectioned key=value config")
        p.add_argument("--out", help="CSV output path (default: stdout)")

    common(sub.add_parser("solve", help="envelope level of the configured system"))
    common(sub.add_parser("bounds", help="bound classification of the configured system"))

    p = sub.add_parser("critical", help="critical coupling of a short-range well")
    common(p)
    p.add_argument("--mode", required=True, choices=("onebody", "twobody"))

    common(sub.add_parser("perturb", help="first-order corrected level"))

    p = sub.add_parser("baryon", help="light-baryon style closed-form bounds")
    common(p)
    p.add_argument("--a1", type=float, default=0.0, help="one-body linear confinement")
    p.add_argument("--a2", type=float, default=0.0, help="pairwise linear confinement")
    p.add_argument("--b", type=float, default=0.0, help="pairwise Coulomb-like attraction")

    common(sub.add_parser("bosonstar", help="self-gravitating boson mass bound"))
    common(sub.add_parser("minlength", help="harmonic system with quartic kinetic deformation"))

    p = sub.add_parser("sweep", help="solve across a parameter range")
    common(p)
    p.add_argument("--param", required=True, help="'n', 'd', or section.key")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("oracle", help="brute-force radial levels of the two-body problem")
    common(p)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--rmax", type=float, default=None)
    p.add_argument("--points", type=int, default=4000)

    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    """Parse arguments, execute one command, write CSV; returns the exit code."""
    out_stream = stdout if stdout is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        cfg = parse_config(text)
        header, rows = _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (NoStationaryPoint, CollapseRegime) as exc:
        print(f"no stationary point: {exc}", file=sys.stderr)
        return 2
    except NotConverged as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return 3
    except EnvelopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    payload = "\n".join([",".join(header)] + [",".join(row) for row in rows]) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    else:
        out_stream.write(payload)
    return 0


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
