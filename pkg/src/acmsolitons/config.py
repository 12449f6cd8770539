"""Run configuration: INI-style definition files and built-in fixtures.

A definition file has sections

    [manifold]    name, coordinates, constraints, metric entries g_<i>_<j>
    [structure]   phi_<i>_<j> entries, xi components, optional eta components
    [scalars]     named scalar fields
    [vectors]     named vector fields (components may use the symbol ``a``)
    [candidates]  name = kind, potential, lambda
    [run]         seed, points, a grid, sampling box, suites, tolerances

Values are expressions over the declared coordinates; ``#`` starts a
comment.  Omitted metric or phi entries are zero, eta defaults to the
metric dual of xi, and candidate potentials are written ``reeb``,
``grad <scalar>`` or ``vector <vector>``.  Candidate lambda expressions and
vector components may reference the reserved symbol ``a``, the deformation
parameter of the frame they are evaluated in (1 in the undeformed frame).
"""

from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, field

from .expr import ParseError, parse_expr
from .geometry import AcmStructure, ChartManifold, ScalarField, VectorField
from .solitons import SolitonCandidate
from .tensor import StructureError

__all__ = [
    "ALL_SUITES",
    "ConfigError",
    "VerificationConfig",
    "load_config",
    "load_config_text",
    "builtin_config",
    "builtin_names",
]

ALL_SUITES = (
    "acm-axioms",
    "kenmotsu",
    "section2-identities",
    "prop22-norms",
    "remark23",
    "riemann-solitons",
    "ricci-solitons",
    "inequalities",
)

DEFAULT_A_GRID = (0.5, 1.0, 2.0, 3.7)

# names with fixed meaning inside expressions
_RESERVED = ("a", "pi", "e")
_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")


class ConfigError(StructureError):
    """A definition file failed to parse or validate."""


@dataclass
class VerificationConfig:
    name: str
    manifold: ChartManifold
    structure: AcmStructure | None
    scalars: dict
    vectors: dict
    candidates: list
    seed: int = 42
    points: int = 64
    a_grid: tuple = DEFAULT_A_GRID
    box: dict = field(default_factory=dict)
    suites: tuple = ALL_SUITES
    tol_overrides: dict = field(default_factory=dict)
    scalar_name: str | None = None

    @property
    def scalar(self) -> ScalarField | None:
        if self.scalar_name is None:
            return None
        return self.scalars[self.scalar_name]


def load_config(path) -> VerificationConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    return load_config_text(text, source=str(path))


def _split_top(text: str) -> list:
    """Split on commas at parenthesis depth zero."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    parts.append("".join(current).strip())
    return parts


def _parse(text: str, coords, source: str, where: str):
    try:
        return parse_expr(text, coords=coords)
    except ParseError as err:
        raise ConfigError(f"{source}: {where}: {err}") from err


def _check_name(name: str, source: str, what: str) -> None:
    if not _NAME_RE.match(name):
        raise ConfigError(
            f"{source}: {what} {name!r} must be a plain identifier "
            f"(letters and digits, no underscore)"
        )
    if name in _RESERVED:
        raise ConfigError(
            f"{source}: {what} {name!r} is reserved ({', '.join(_RESERVED)})"
        )


def _positive_a(value: float, source: str):
    if not math.isfinite(value) or value <= 0.0:
        raise ConfigError(
            f"{source}: deformation parameter must be positive, got {value:g}"
        )


def load_config_text(text: str, source: str = "<config>") -> VerificationConfig:
    parser = configparser.ConfigParser(
        comment_prefixes=("#",),
        inline_comment_prefixes=("#",),
        interpolation=None,
        delimiters=("=",),
    )
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as err:
        raise ConfigError(f"config parse error: {err}") from err

    if not parser.has_section("manifold"):
        raise ConfigError(f"{source}: missing [manifold] section")
    man_sec = dict(parser.items("manifold"))
    name = man_sec.pop("name", source)
    coords_text = man_sec.pop("coordinates", None)
    if coords_text is None:
        raise ConfigError(f"{source}: [manifold] needs a 'coordinates' entry")
    coords = tuple(c.strip() for c in coords_text.split(","))
    if len(set(coords)) != len(coords):
        raise ConfigError(f"{source}: duplicate coordinate names")
    for c in coords:
        _check_name(c, source, "coordinate")
    dim = len(coords)

    constraints = []
    constraints_text = man_sec.pop("constraints", "")
    for part in constraints_text.split(";"):
        part = part.strip()
        if part:
            constraints.append(_parse(part, coords, source, "constraint"))

    metric = [[None] * dim for _ in range(dim)]
    for key, value in man_sec.items():
        parts = key.split("_")
        if len(parts) != 3 or parts[0] != "g":
            raise ConfigError(
                f"{source}: unknown [manifold] entry {key!r} "
                f"(expected g_<coord>_<coord>)"
            )
        if parts[1] not in coords or parts[2] not in coords:
            raise ConfigError(
                f"{source}: metric entry {key!r} names an unknown coordinate"
            )
        i = coords.index(parts[1])
        j = coords.index(parts[2])
        entry = _parse(value, coords, source, f"metric entry {key}")
        metric[i][j] = entry
        metric[j][i] = entry
    zero = _parse("0", coords, source, "metric zero")
    for i in range(dim):
        for j in range(dim):
            if metric[i][j] is None:
                metric[i][j] = zero

    try:
        manifold = ChartManifold(coords, metric, tuple(constraints), name=name)
    except StructureError as err:
        raise ConfigError(f"{source}: {err}") from err

    structure = None
    if parser.has_section("structure"):
        sec = dict(parser.items("structure"))
        xi_text = sec.pop("xi", None)
        if xi_text is None:
            raise ConfigError(f"{source}: [structure] needs an 'xi' entry")
        xi_parts = _split_top(xi_text)
        if len(xi_parts) != dim:
            raise ConfigError(
                f"{source}: xi needs {dim} components, got {len(xi_parts)}"
            )
        xi = tuple(
            _parse(t, coords, source, f"xi component {k}")
            for k, t in enumerate(xi_parts)
        )
        eta = None
        eta_text = sec.pop("eta", None)
        if eta_text is not None:
            eta_parts = _split_top(eta_text)
            if len(eta_parts) != dim:
                raise ConfigError(
                    f"{source}: eta needs {dim} components, got {len(eta_parts)}"
                )
            eta = tuple(
                _parse(t, coords, source, f"eta component {k}")
                for k, t in enumerate(eta_parts)
            )
        phi = [[zero] * dim for _ in range(dim)]
        for key, value in sec.items():
            parts = key.split("_")
            if len(parts) != 3 or parts[0] != "phi":
                raise ConfigError(
                    f"{source}: unknown [structure] entry {key!r} "
                    f"(expected phi_<coord>_<coord>, xi or eta)"
                )
            if parts[1] not in coords or parts[2] not in coords:
                raise ConfigError(
                    f"{source}: phi entry {key!r} names an unknown coordinate"
                )
            i = coords.index(parts[1])
            j = coords.index(parts[2])
            phi[i][j] = _parse(value, coords, source, f"phi entry {key}")
        try:
            structure = AcmStructure(manifold, phi, xi, eta=eta)
        except StructureError as err:
            raise ConfigError(f"{source}: {err}") from err

    scalars = {}
    if parser.has_section("scalars"):
        for key, value in parser.items("scalars"):
            _check_name(key, source, "scalar name")
            if key in coords:
                raise ConfigError(
                    f"{source}: scalar {key!r} collides with a coordinate"
                )
            scalars[key] = ScalarField(_parse(value, coords, source, f"scalar {key}"))

    vectors = {}
    if parser.has_section("vectors"):
        for key, value in parser.items("vectors"):
            _check_name(key, source, "vector name")
            if key in coords or key in scalars:
                raise ConfigError(
                    f"{source}: vector {key!r} collides with another name"
                )
            comps = _split_top(value)
            if len(comps) != dim:
                raise ConfigError(
                    f"{source}: vector {key!r} needs {dim} components, "
                    f"got {len(comps)}"
                )
            vectors[key] = VectorField(
                tuple(
                    _parse(t, coords + ("a",), source, f"vector {key} component {k}")
                    for k, t in enumerate(comps)
                )
            )

    candidates = []
    if parser.has_section("candidates"):
        if structure is None:
            raise ConfigError(
                f"{source}: [candidates] needs a [structure] section"
            )
        if dim < 3:
            raise ConfigError(
                f"{source}: soliton candidates need dimension >= 3"
            )
        for key, value in parser.items("candidates"):
            _check_name(key.replace("-", ""), source, "candidate name")
            parts = _split_top(value)
            if len(parts) != 3:
                raise ConfigError(
                    f"{source}: candidate {key!r} must be "
                    f"'kind, potential, lambda-expression'"
                )
            kind = parts[0].strip()
            pot = parts[1].split()
            lam = _parse(parts[2], coords + ("a",), source, f"candidate {key} lambda")
            try:
                if pot == ["reeb"]:
                    cand = SolitonCandidate(key, kind, "reeb", lam)
                elif len(pot) == 2 and pot[0] == "grad":
                    sf = scalars.get(pot[1])
                    if sf is None:
                        raise ConfigError(
                            f"{source}: candidate {key!r} references unknown "
                            f"scalar {pot[1]!r}"
                        )
                    cand = SolitonCandidate(key, kind, "gradient", lam, scalar=sf)
                elif len(pot) == 2 and pot[0] == "vector":
                    vf = vectors.get(pot[1])
                    if vf is None:
                        raise ConfigError(
                            f"{source}: candidate {key!r} references unknown "
                            f"vector {pot[1]!r}"
                        )
                    cand = SolitonCandidate(
                        key, kind, "vector", lam, components=vf.components
                    )
                else:
                    raise ConfigError(
                        f"{source}: candidate {key!r} potential must be 'reeb', "
                        f"'grad <scalar>' or 'vector <vector>'"
                    )
            except ConfigError:
                raise
            except StructureError as err:
                raise ConfigError(f"{source}: candidate {key!r}: {err}") from err
            candidates.append(cand)

    run = dict(parser.items("run")) if parser.has_section("run") else {}

    def _int(key, default):
        raw = run.pop(key, None)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError as err:
            raise ConfigError(f"{source}: [run] {key} must be an integer") from err

    seed = _int("seed", 42)
    points = _int("points", 64)
    if points <= 0:
        raise ConfigError(f"{source}: [run] points must be positive")

    a_text = run.pop("a", None)
    if a_text is None:
        a_grid = DEFAULT_A_GRID
    else:
        try:
            a_grid = tuple(float(t) for t in a_text.split(","))
        except ValueError as err:
            raise ConfigError(f"{source}: [run] a must be a list of numbers") from err
    for value in a_grid:
        _positive_a(value, source)

    suites_text = run.pop("suites", None)
    if suites_text is None:
        suites = ALL_SUITES
    else:
        suites = tuple(t.strip() for t in suites_text.split(",") if t.strip())
        for s in suites:
            if s not in ALL_SUITES:
                raise ConfigError(
                    f"{source}: unknown suite {s!r}; valid suites: "
                    f"{', '.join(ALL_SUITES)}"
                )

    scalar_name = run.pop("scalar", None)
    if scalar_name is None and "f" in scalars:
        scalar_name = "f"
    if scalar_name is not None and scalar_name not in scalars:
        raise ConfigError(
            f"{source}: [run] scalar references unknown scalar {scalar_name!r}"
        )

    box = {}
    for c in coords:
        raw = run.pop(f"box_{c}", None)
        if raw is None:
            box[c] = (-1.0, 1.0)
            continue
        try:
            lo, hi = (float(t) for t in raw.split(","))
        except ValueError as err:
            raise ConfigError(
                f"{source}: [run] box_{c} must be 'low, high'"
            ) from err
        if not lo < hi:
            raise ConfigError(f"{source}: [run] box_{c} must have low < high")
        box[c] = (lo, hi)

    tol_overrides = {}
    for key in list(run):
        if key.startswith("tol_"):
            sname = key[4:]
            if sname not in ALL_SUITES:
                raise ConfigError(
                    f"{source}: tolerance override for unknown suite {sname!r}"
                )
            try:
                tol_overrides[sname] = float(run.pop(key))
            except ValueError as err:
                raise ConfigError(
                    f"{source}: [run] {key} must be a number"
                ) from err
    if run:
        raise ConfigError(
            f"{source}: unknown [run] entries: {', '.join(sorted(run))}"
        )

    return VerificationConfig(
        name=name,
        manifold=manifold,
        structure=structure,
        scalars=scalars,
        vectors=vectors,
        candidates=candidates,
        seed=seed,
        points=points,
        a_grid=a_grid,
        box=box,
        suites=suites,
        tol_overrides=tol_overrides,
        scalar_name=scalar_name,
    )


# ---------------------------------------------------------------------------
# Built-in fixtures

_KENMOTSU3 = """
# warped product of a line with a flat plane, restricted to z > 1
[manifold]
name = kenmotsu3
coordinates = x, y, z
constraints = z - 1
g_x_x = exp(2*z)
g_y_y = exp(2*z)
g_z_z = 1

[structure]
phi_y_x = 1
phi_x_y = -1
xi = 0, 0, 1

[scalars]
f = exp(z)

[vectors]
V = 0, 0, exp(z)/a^2
W = 1, 0, 0

[candidates]
riemann-grad = riemann, grad f, (2*exp(z) - 1)/a^2
riemann-vector = riemann, vector V, (2*exp(z) - 1)/a^2
ricci-grad = ricci, grad f, (exp(z) - 2)/a^2
ricci-vector = ricci, vector V, (exp(z) - 2)/a^2

[run]
seed = 42
points = 64
a = 0.5, 1, 2, 3.7
box_x = -1, 1
box_y = -1, 1
box_z = 1.05, 2.2
scalar = f
"""

_KENMOTSU3_WIDE = """
# same structure on the widened domain z > 0; the ricci candidate's lambda
# changes sign at z = ln 2, so classifications mix here
[manifold]
name = kenmotsu3-wide
coordinates = x, y, z
constraints = z
g_x_x = exp(2*z)
g_y_y = exp(2*z)
g_z_z = 1

[structure]
phi_y_x = 1
phi_x_y = -1
xi = 0, 0, 1

[scalars]
f = exp(z)

[vectors]
V = 0, 0, exp(z)/a^2
W = 1, 0, 0

[candidates]
riemann-grad = riemann, grad f, (2*exp(z) - 1)/a^2
ricci-grad = ricci, grad f, (exp(z) - 2)/a^2

[run]
seed = 42
points = 64
a = 0.5, 1, 2, 3.7
box_x = -1, 1
box_y = -1, 1
box_z = 0.1, 1.5
scalar = f
"""

_EUCLIDEAN3 = """
# flat space with the same (phi, xi, eta): almost contact metric but not
# Kenmotsu, so the deformation suites refuse their closed forms here
[manifold]
name = euclidean3
coordinates = x, y, z
g_x_x = 1
g_y_y = 1
g_z_z = 1

[structure]
phi_y_x = 1
phi_x_y = -1
xi = 0, 0, 1

[scalars]
f = x

[run]
seed = 42
points = 64
box_x = -1, 1
box_y = -1, 1
box_z = -1, 1
scalar = f
"""

_SPHERE2 = """
# round sphere chart; no almost contact structure in even dimension
[manifold]
name = sphere2
coordinates = theta, phi
constraints = sin(theta)
g_theta_theta = 1
g_phi_phi = sin(theta)^2

[scalars]
f = cos(theta)

[run]
seed = 42
points = 64
box_theta = 0.3, 2.8
box_phi = -3, 3
scalar = f
"""

_BUILTINS = {
    "kenmotsu3": _KENMOTSU3,
    "kenmotsu3-wide": _KENMOTSU3_WIDE,
    "euclidean3": _EUCLIDEAN3,
    "sphere2": _SPHERE2,
}


def builtin_names() -> tuple:
    return tuple(sorted(_BUILTINS))


def builtin_config(name: str) -> VerificationConfig:
    text = _BUILTINS.get(name)
    if text is None:
        raise ConfigError(
            f"unknown built-in fixture {name!r}; available: "
            f"{', '.join(builtin_names())}"
        )
    return load_config_text(text, source=f"builtin:{name}")
