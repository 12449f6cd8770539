"""Almost soliton equations and their structure-level consequences.

Two equation kinds are checked for a metric g, a potential field V and a
soliton function lambda:

    riemann:  (1/2)(L_V g) (*) g + R = lambda G,  G = (1/2) g (*) g,
              written here as the residual  2 R + (L_V g) (*) g
              - lambda (g (*) g)  with (*) the Kulkarni-Nomizu product;
    ricci:    (1/2) L_V g + Ric - lambda g.

Tracing the riemann equation once gives

    (1/2) L_V g + Ric/(2n-1) - ((2n lambda - div V)/(2n-1)) g = 0,

and tracing again

    scal = 2n[(2n+1) lambda - 2 div V];

the ricci trace is scal = (2n+1) lambda - div V.  Residuals are reported as
max-abs over components, so the traced residuals are controlled by the full
ones through the inverse-metric entries.

For a deformed Kenmotsu frame the lambda of each scenario is pinned:

    riemann, Reeb:       lambda = (a-1)/a^2
    riemann, solenoidal: lambda = ((2n-1)/2n) xi(eta(V)) - 1/a^2
    riemann, gradient:   lambda = Lap(f)/(2na) - ((a-1)/a^2) eta(grad f)
                                  + ((2n-a)/(2na^2)) Hess(f)(xi,xi) - 1/a^2
    ricci,   Reeb:       lambda = -2n/a^2
    ricci,   solenoidal: lambda = xi(eta(V)) - 2n/a^2
    ricci,   gradient:   lambda = Hess(f)(xi,xi)/a^2 - 2n/a^2

and the Reeb scenario forces the base curvature completely; those implied
tensors, the compatibility of the base Reeb pair (which solves the base
equation only at lambda = 0 resp. lambda = -2n), and a battery of norm
inequalities for the gradient scenario are implemented below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .deformation import DeformedStructure, deformation_curvature_term
from .expr import Expr, evaluate
from .geometry import (
    AcmStructure,
    ScalarField,
    VectorField,
    covariant_derivative,
    curvature_bundle,
    divergence,
    grad,
    gradient_lie_derivative,
    hessian,
    laplacian,
    lie_derivative_metric,
)
from .tensor import StructureError, TensorValue, hs_inner, kulkarni_nomizu

__all__ = [
    "STEADY_BAND",
    "SolitonCandidate",
    "BaseFrame",
    "DeformedFrame",
    "classify",
    "soliton_residuals",
    "riemann_residual_full",
    "riemann_residual_traced",
    "ricci_residual_full",
    "ricci_residual_scalar",
    "xi_of_eta_potential",
    "theorem_lambda",
    "implied_curvature",
    "reeb_soliton_general",
    "solenoidal_implied",
    "orthogonal_gradient_values",
    "xi_compatibility",
    "inequality_battery",
]

STEADY_BAND = 1e-10


def classify(lam_value: float) -> str:
    """shrinking / steady / expanding by the sign of lambda."""
    if abs(lam_value) <= STEADY_BAND:
        return "steady"
    return "shrinking" if lam_value > 0.0 else "expanding"


@dataclass(frozen=True)
class SolitonCandidate:
    """A proposed soliton datum (potential, lambda) for one equation kind.

    The potential is an explicit vector field, the gradient of a scalar, or
    the Reeb field of whatever frame the candidate is evaluated in.
    Component and lambda expressions may reference the reserved symbol
    ``a``, which evaluates to the frame's deformation parameter (1 in an
    undeformed frame); that way a single candidate describes the whole
    deformation family.
    """

    name: str
    kind: str
    potential: str
    lam: Expr
    components: tuple = None
    scalar: ScalarField = None

    def __post_init__(self):
        if self.kind not in ("riemann", "ricci"):
            raise StructureError(f"unknown soliton kind {self.kind!r}")
        if self.potential not in ("vector", "gradient", "reeb"):
            raise StructureError(f"unknown potential kind {self.potential!r}")
        if self.potential == "vector" and not self.components:
            raise StructureError(
                f"candidate {self.name!r} needs vector components"
            )
        if self.potential == "gradient" and self.scalar is None:
            raise StructureError(
                f"candidate {self.name!r} needs a scalar potential"
            )


# ---------------------------------------------------------------------------
# Frames

class BaseFrame:
    """Quantities of an undeformed structure (parameter symbol a -> 1)."""

    kind = "base"

    def __init__(self, structure: AcmStructure):
        self.structure = structure
        self.manifold = structure.manifold
        self.a = 1.0
        self._fields = {}

    @property
    def n(self) -> int:
        return self.structure.n

    def point_of(self, point) -> dict:
        ext = dict(point)
        ext.setdefault("a", self.a)
        return ext

    def metric(self, point):
        return self.manifold.metric_at_cached(point)

    def curvature(self, point):
        bundle = curvature_bundle(self.manifold, point)
        return bundle["R04"], bundle["Ric"].data, bundle["scal"]

    def _field(self, candidate) -> VectorField:
        found = self._fields.get(candidate.name)
        if found is None:
            found = VectorField(candidate.components)
            self._fields[candidate.name] = found
        return found

    def lie_metric(self, candidate, point) -> np.ndarray:
        pe = self.point_of(point)
        if candidate.potential == "gradient":
            return gradient_lie_derivative(
                self.manifold, candidate.scalar, pe
            ).data
        if candidate.potential == "reeb":
            return lie_derivative_metric(
                self.manifold, self.structure.xi_field(), pe
            ).data
        return lie_derivative_metric(self.manifold, self._field(candidate), pe).data

    def div_potential(self, candidate, point) -> float:
        pe = self.point_of(point)
        if candidate.potential == "gradient":
            return laplacian(self.manifold, candidate.scalar, pe)
        if candidate.potential == "reeb":
            return divergence(self.manifold, self.structure.xi_field(), pe)
        return divergence(self.manifold, self._field(candidate), pe)

    def lam_value(self, candidate, point) -> float:
        return evaluate(candidate.lam, self.point_of(point))


class DeformedFrame:
    """Quantities of a deformed structure.

    Curvature, gradient potentials and the Reeb potential come from the
    closed forms when ``use_closed`` (the default); direct evaluation on the
    deformed chart is kept for cross-checks.  Explicit vector potentials are
    always differentiated directly.
    """

    kind = "deformed"

    def __init__(self, deformed: DeformedStructure, use_closed: bool = True):
        self.deformed = deformed
        self.structure = deformed.structure
        self.manifold = deformed.manifold
        self.a = deformed.a
        self.use_closed = use_closed
        self._fields = {}

    @property
    def n(self) -> int:
        return self.deformed.n

    def point_of(self, point) -> dict:
        ext = dict(point)
        ext.setdefault("a", self.a)
        return ext

    def metric(self, point):
        return self.manifold.metric_at_cached(point)

    def curvature(self, point):
        if self.use_closed:
            closed = self.deformed.curvature_closed(point)
            return closed["R04"], closed["Ric"].data, closed["scal"]
        bundle = curvature_bundle(self.manifold, point)
        return bundle["R04"], bundle["Ric"].data, bundle["scal"]

    def _field(self, candidate) -> VectorField:
        found = self._fields.get(candidate.name)
        if found is None:
            found = VectorField(candidate.components)
            self._fields[candidate.name] = found
        return found

    def lie_metric(self, candidate, point) -> np.ndarray:
        pe = self.point_of(point)
        if candidate.potential == "gradient":
            if self.use_closed:
                return 2.0 * self.deformed.hessian_closed(candidate.scalar, pe).data
            return gradient_lie_derivative(
                self.manifold, candidate.scalar, pe
            ).data
        if candidate.potential == "reeb":
            if self.use_closed:
                return self.deformed.lie_reeb_closed(pe).data
            return lie_derivative_metric(
                self.manifold, self.structure.xi_field(), pe
            ).data
        return lie_derivative_metric(
            self.manifold, self._field(candidate), pe
        ).data

    def div_potential(self, candidate, point) -> float:
        pe = self.point_of(point)
        if candidate.potential == "gradient":
            if self.use_closed:
                return self.deformed.laplacian_closed(candidate.scalar, pe)
            return laplacian(self.manifold, candidate.scalar, pe)
        if candidate.potential == "reeb":
            if self.use_closed:
                return self.deformed.div_reeb_closed()
            return divergence(self.manifold, self.structure.xi_field(), pe)
        return divergence(self.manifold, self._field(candidate), pe)

    def lam_value(self, candidate, point) -> float:
        return evaluate(candidate.lam, self.point_of(point))


# ---------------------------------------------------------------------------
# Equation residuals (max-abs over components)

def riemann_residual_full(frame, candidate, point) -> float:
    m = frame.metric(point)
    r04, _, _ = frame.curvature(point)
    lam = frame.lam_value(candidate, point)
    g_t = TensorValue(0, 2, m.g, symmetric=True)
    lie_t = TensorValue(0, 2, frame.lie_metric(candidate, point), symmetric=True)
    res = (
        2.0 * r04
        + kulkarni_nomizu(lie_t, g_t).data
        - lam * kulkarni_nomizu(g_t, g_t).data
    )
    return float(np.max(np.abs(res)))


def riemann_residual_traced(frame, candidate, point) -> tuple:
    """Once- and twice-traced residuals (max-abs, abs)."""
    n = frame.n
    if 2 * n - 1 <= 0:
        raise StructureError("traced soliton equations need dimension >= 3")
    m = frame.metric(point)
    _, ric, scal = frame.curvature(point)
    lie = frame.lie_metric(candidate, point)
    div_v = frame.div_potential(candidate, point)
    lam = frame.lam_value(candidate, point)
    eq4 = (
        0.5 * lie
        + ric / (2 * n - 1)
        - ((2 * n * lam - div_v) / (2 * n - 1)) * m.g
    )
    eq9 = scal - 2 * n * ((2 * n + 1) * lam - 2.0 * div_v)
    return float(np.max(np.abs(eq4))), abs(float(eq9))


def ricci_residual_full(frame, candidate, point) -> float:
    m = frame.metric(point)
    _, ric, _ = frame.curvature(point)
    lie = frame.lie_metric(candidate, point)
    lam = frame.lam_value(candidate, point)
    res = 0.5 * lie + ric - lam * m.g
    return float(np.max(np.abs(res)))


def ricci_residual_scalar(frame, candidate, point) -> float:
    _, _, scal = frame.curvature(point)
    div_v = frame.div_potential(candidate, point)
    lam = frame.lam_value(candidate, point)
    n = frame.n
    return abs(float(scal - ((2 * n + 1) * lam - div_v)))


def soliton_residuals(frame, candidate, point) -> dict:
    """All residual levels for one candidate at one point."""
    lam = frame.lam_value(candidate, point)
    out = {"lambda": lam, "classification": classify(lam)}
    if candidate.kind == "riemann":
        out["full"] = riemann_residual_full(frame, candidate, point)
        eq4, eq9 = riemann_residual_traced(frame, candidate, point)
        out["traced"] = eq4
        out["scalar"] = eq9
    else:
        out["full"] = ricci_residual_full(frame, candidate, point)
        out["scalar"] = ricci_residual_scalar(frame, candidate, point)
    return out


# ---------------------------------------------------------------------------
# Scenario lambdas

def xi_of_eta_potential(structure: AcmStructure, field: VectorField, point) -> float:
    """xi(eta(V)) as an exact symbolic directional derivative."""
    return structure.xi_directional(structure.eta_of_field(field)).value(point)


def theorem_lambda(kind: str, scenario: str, structure: AcmStructure, point,
                   a: float, *, vector: VectorField = None,
                   scalar: ScalarField = None) -> float:
    """The lambda pinned by (kind, scenario) over a Kenmotsu base.

    All inputs are base-frame quantities; ``a`` is the deformation
    parameter of the frame the soliton lives in.
    """
    n = structure.n
    a2 = a * a
    if scenario == "reeb":
        if kind == "riemann":
            return (a - 1.0) / a2
        return -2.0 * n / a2
    if scenario == "solenoidal":
        sigma = xi_of_eta_potential(structure, vector, point)
        if kind == "riemann":
            return (2 * n - 1.0) / (2 * n) * sigma - 1.0 / a2
        return sigma - 2.0 * n / a2
    if scenario == "gradient":
        man = structure.manifold
        hess_xx = _hess_reeb_reeb(structure, scalar, point)
        if kind == "riemann":
            lap = laplacian(man, scalar, point)
            eta_grad = float(
                structure.eta_values(point) @ grad(man, scalar, point)
            )
            return (
                lap / (2 * n * a)
                - (a - 1.0) / a2 * eta_grad
                + (2 * n - a) / (2 * n * a2) * hess_xx
                - 1.0 / a2
            )
        return hess_xx / a2 - 2.0 * n / a2
    raise StructureError(f"unknown scenario {scenario!r}")


def _hess_reeb_reeb(structure, scalar, point) -> float:
    xi = structure.xi_values(point)
    hess = hessian(structure.manifold, scalar, point).data
    return float(xi @ hess @ xi)


# ---------------------------------------------------------------------------
# Curvature implied by the Reeb scenario

def implied_curvature(kind: str, structure: AcmStructure, point, a: float) -> dict:
    """Base curvature forced by a deformed-Reeb soliton.

    Returns the implied Ricci tensor and scalar curvature, the stated value
    of |Ric|^2 alongside the one recomputed from the implied tensor, and for
    the riemann kind the full implied (0,4) curvature.
    """
    m = structure.manifold.metric_at_cached(point)
    g = m.g
    eta = structure.eta_values(point)
    n = structure.n
    ee = np.outer(eta, eta)
    out = {}
    if kind == "riemann":
        ric = -(4 * n - 1.0) * g + (2 * n - 1.0) * ee
        out["scal"] = -8.0 * n * n
        out["ric_norm_stated"] = float(2 * n * (16 * n * n - 6 * n + 1))
        out["lambda_bar"] = (a - 1.0) / (a * a)
        out["r04"] = (
            -2.0
            * (np.einsum("ad,bc->abcd", g, g) - np.einsum("ac,bd->abcd", g, g))
            + np.einsum("ad,b,c->abcd", g, eta, eta)
            - np.einsum("ac,b,d->abcd", g, eta, eta)
            + np.einsum("bc,a,d->abcd", g, eta, eta)
            - np.einsum("bd,a,c->abcd", g, eta, eta)
        )
    elif kind == "ricci":
        ric = -(2 * n + 1.0) * g + ee
        out["scal"] = -4.0 * n * (n + 1)
        out["ric_norm_stated"] = float(2 * n * (4 * n * n + 6 * n + 3))
        out["lambda_bar"] = -2.0 * n / (a * a)
    else:
        raise StructureError(f"unknown soliton kind {kind!r}")
    ric_t = TensorValue(0, 2, ric, symmetric=True)
    out["ric"] = ric_t
    out["ric_trace"] = float(np.einsum("ij,ij->", m.inv, ric))
    out["ric_norm_computed"] = hs_inner(ric_t, ric_t, m)
    return out


def reeb_soliton_general(kind: str, structure: AcmStructure, point, a: float,
                         lambda_bar: float) -> dict:
    """Implied Ricci and scal for a general Reeb-scenario lambda.

    Substituting the pinned lambda reduces these to the fixed tensors of
    ``implied_curvature``.
    """
    m = structure.manifold.metric_at_cached(point)
    g = m.g
    eta = structure.eta_values(point)
    n = structure.n
    ee = np.outer(eta, eta)
    if kind == "riemann":
        cg = 2 * n * a * lambda_bar - (4 * n - 1.0) - 2 * n * (a - 1.0) / a
        ce = (
            2 * n * a * (a - 1.0) * lambda_bar
            + (4 * n - 1.0 - 2 * n * a)
            + 2 * n * (a - 1.0) / a
        )
        scal = (
            2 * n * (2 * n + 1) * a * lambda_bar
            - 8.0 * n * n
            - 2 * n * (2 * n + 1) * (a - 1.0) / a
        )
    else:
        cg = a * lambda_bar - 1.0 - 2 * n * (a - 1.0) / a
        ce = a * (a - 1.0) * lambda_bar + 1.0 + 2 * n * (a - 1.0) / a
        scal = (
            (2 * n + 1) * a * lambda_bar
            - 2.0 * n
            - 2 * n * (2 * n + 1) * (a - 1.0) / a
        )
    return {
        "ric": TensorValue(0, 2, cg * g + ce * ee, symmetric=True),
        "scal": float(scal),
    }


def solenoidal_implied(kind: str, structure: AcmStructure, vector: VectorField,
                       point, a: float) -> dict:
    """Ricci tensor and scal forced by a solenoidal-potential soliton.

    The tensor is evaluated with the actual covariant derivative of V; its
    metric trace must reproduce the scal value whenever div V = 0 and
    eta(nabla_xi V) = xi(eta(V)), which holds over a Kenmotsu base.
    """
    man = structure.manifold
    m = man.metric_at_cached(point)
    g = m.g
    eta = structure.eta_values(point)
    n = structure.n
    nv = covariant_derivative(man, vector, point)
    v = vector.values(man.coords, point)
    sigma = xi_of_eta_potential(structure, vector, point)
    nv_flat = np.einsum("ik,kj->ij", nv, g)
    sym_nv = nv_flat + nv_flat.T
    w = np.einsum("ik,k->i", nv, eta) + g @ v
    eta_v = float(eta @ v)
    ee = np.outer(eta, eta)
    brace = np.outer(eta, w) + np.outer(w, eta) - 2.0 * eta_v * ee
    c = float(2 * n - 1) if kind == "riemann" else 1.0
    ric = (
        (c * a * sigma - 2.0 * n) * g
        + c * a * (a - 1.0) * sigma * ee
        - 0.5 * c * a * sym_nv
        - 0.5 * c * a * (a - 1.0) * brace
    )
    scal = (2 * n + 1.0) * (c * a * sigma - 2.0 * n)
    ric_t = TensorValue(0, 2, 0.5 * (ric + ric.T), symmetric=True)
    trace = float(np.einsum("ij,ij->", m.inv, ric_t.data))
    return {
        "sigma": sigma,
        "ric": ric_t,
        "scal": float(scal),
        "trace_residual": abs(trace - scal),
        "div_v": divergence(man, vector, point),
        "lambda_bar": theorem_lambda(
            kind, "solenoidal", structure, point, a, vector=vector
        ),
    }


def orthogonal_gradient_values(kind: str, structure: AcmStructure,
                               scalar: ScalarField, point, a: float) -> dict:
    """lambda and scal when the gradient potential is g_bar-orthogonal to
    the Reeb field, which amounts to xi(f) = 0."""
    man = structure.manifold
    n = structure.n
    lap = laplacian(man, scalar, point)
    xi = structure.xi_values(point)
    xif = float(xi @ scalar.gradient_covector(man.coords, point))
    if kind == "riemann":
        lam = lap / (2 * n * a) - 1.0 / (a * a)
        scal = -(2 * n - 1.0) * lap - 2 * n * (2 * n + 1.0)
    else:
        lam = -2.0 * n / (a * a)
        scal = -lap - 2 * n * (2 * n + 1.0)
    return {
        "lambda_bar": float(lam),
        "scal": float(scal),
        "xi_f": xif,
        "applicable": abs(xif) <= 1e-9,
    }


# ---------------------------------------------------------------------------
# Reeb compatibility across the deformation

def xi_compatibility(kind: str, structure: AcmStructure, point,
                     a: float = 2.0, perturbation: float = 0.5) -> dict:
    """Premise and conclusion of the Reeb-compatibility statement.

    Premise: with the curvature implied by the deformed-Reeb soliton, that
    soliton equation holds exactly at the pinned lambda.  Conclusion: the
    base Reeb pair solves the base equation only at lambda = 0 (riemann)
    resp. lambda = -2n (ricci); any other lambda leaves a residual of order
    |lambda - lambda_star| times the reported scale.
    """
    m = structure.manifold.metric_at_cached(point)
    g = m.g
    eta = structure.eta_values(point)
    n = structure.n
    ee = np.outer(eta, eta)
    implied = implied_curvature(kind, structure, point, a)
    lie = 2.0 * (g - ee)  # L_xi g over a Kenmotsu base
    gbar = a * g + a * (a - 1.0) * ee
    g_t = TensorValue(0, 2, g, symmetric=True)
    lie_t = TensorValue(0, 2, lie, symmetric=True)
    gbar_t = TensorValue(0, 2, gbar, symmetric=True)
    if kind == "riemann":
        r04 = implied["r04"]
        kn_gg = kulkarni_nomizu(g_t, g_t).data
        kn_lg = kulkarni_nomizu(lie_t, g_t).data

        def residual(lam):
            return float(np.max(np.abs(2.0 * r04 + kn_lg - lam * kn_gg)))

        lam_star = 0.0
        r04_bar = a * r04 + (a - 1.0) * deformation_curvature_term(g, eta)
        premise = float(
            np.max(
                np.abs(
                    2.0 * r04_bar
                    + kulkarni_nomizu(lie_t, gbar_t).data
                    - implied["lambda_bar"] * kulkarni_nomizu(gbar_t, gbar_t).data
                )
            )
        )
        scale = float(np.max(np.abs(kn_gg)))
    else:
        ric = implied["ric"].data

        def residual(lam):
            return float(np.max(np.abs(0.5 * lie + ric - lam * g)))

        lam_star = -2.0 * n
        ric_bar = ric + (2.0 * n * (a - 1.0) / a) * (g - ee)
        premise = float(
            np.max(np.abs(0.5 * lie + ric_bar - implied["lambda_bar"] * gbar))
        )
        scale = float(np.max(np.abs(g)))
    return {
        "lambda_star": lam_star,
        "premise_residual": premise,
        "residual_at_star": residual(lam_star),
        "residual_perturbed": residual(lam_star + perturbation),
        "perturbation": perturbation,
        "scale": scale,
    }


# ---------------------------------------------------------------------------
# Norm inequalities for the gradient scenario

def inequality_battery(ds: DeformedStructure, f: ScalarField, kind: str,
                       point, *, gate_tol: float = 1e-9) -> list:
    """Norm identities and bounds for a deformed gradient soliton.

    Each entry carries lhs, rhs and margin = lhs - rhs; ``equality`` marks
    reconstruction identities (margin must vanish), the rest are one-sided
    bounds.  Entries whose hypothesis (orthogonality to the Reeb field,
    harmonicity, solenoidality) fails at the point are flagged not
    applicable and carry no claim there.  All of it presumes the gradient
    soliton equation holds with the pinned lambda.
    """
    ds.require_kenmotsu(point)
    a = ds.a
    n = ds.n
    man = ds.base.manifold
    bundle = curvature_bundle(man, point)
    m = bundle["metric"]
    scal_g = bundle["scal"]
    hess_t = hessian(man, f, point)
    hess_sq = hs_inner(hess_t, hess_t, m)
    ric_sq = hs_inner(bundle["Ric"], bundle["Ric"], m)
    lap_g = laplacian(man, f, point)
    xif, xixif = ds.xi_derivatives(f, point)
    closed = ds.curvature_closed(point)
    mbar = ds.manifold.metric_at_cached(point)
    ric_bar_sq = hs_inner(closed["Ric"], closed["Ric"], mbar)
    hess_bar = ds.hessian_closed(f, point)
    hess_bar_sq = hs_inner(hess_bar, hess_bar, mbar)
    lap_bar = ds.laplacian_closed(f, point)
    lam_bar = theorem_lambda(kind, "gradient", ds.base, point, a, scalar=f)
    q = (a - 1.0) / a
    a2 = a * a
    items = []

    def put(name, lhs, rhs, *, equality=False, applicable=True):
        items.append(
            {
                "check": name,
                "lhs": float(lhs),
                "rhs": float(rhs),
                "margin": float(lhs - rhs),
                "equality": equality,
                "applicable": bool(applicable),
            }
        )

    orthogonal = abs(xif) <= gate_tol
    harmonic = abs(lap_g) <= gate_tol
    solenoidal_bar = abs(lap_bar) <= gate_tol
    if kind == "riemann":
        c = float((2 * n - 1) ** 2)
        put(
            "reconstruction",
            hess_bar_sq,
            (
                ric_bar_sq
                - 4 * n * n * (2 * n + 1) * lam_bar ** 2
                + 16 * n * n * lap_bar * lam_bar
                - (6 * n - 1) * lap_bar ** 2
            )
            / c,
            equality=True,
        )
        put(
            "deformed-bound",
            ric_bar_sq,
            c * (hess_bar_sq - lap_bar ** 2 / (2 * n + 1)),
        )
        put(
            "deformed-bound-solenoidal",
            ric_bar_sq,
            c * hess_bar_sq,
            applicable=solenoidal_bar,
        )
        put(
            "base-bound",
            ric_sq,
            c * hess_sq
            - 4 * n * q * scal_g
            - 4 * n * n * (2 * n + 1) * q * q
            - c / (2 * n + 1) * lap_g ** 2
            - 2 * c / (2 * n + 1) * q * (xif - xixif) * lap_g
            + 2 * n * c / (2 * n + 1) * q * q * xif ** 2
            - 2 * c * (n + n * a + a) * (a - 1.0) / ((2 * n + 1) * a2) * xixif ** 2
            + 2 * c * (2 * n + a) * (a - 1.0) / ((2 * n + 1) * a2) * xif * xixif,
        )
        put(
            "base-bound-orthogonal",
            ric_sq,
            c * hess_sq
            - c / (2 * n + 1) * lap_g ** 2
            + 4 * n * (2 * n - 1) * q * lap_g
            + 4 * n * n * (2 * n + 1) * (a2 - 1.0) / a2,
            applicable=orthogonal,
        )
        put(
            "base-bound-orthogonal-harmonic",
            ric_sq,
            c * hess_sq + 4 * n * n * (2 * n + 1) * (a2 - 1.0) / a2,
            applicable=orthogonal and harmonic,
        )
        put(
            "base-bound-solenoidal",
            ric_sq,
            c * hess_sq + (a2 - 1.0) / a2 * (4 * n * n - c * xixif ** 2),
            applicable=solenoidal_bar,
        )
    else:
        put(
            "reconstruction",
            hess_bar_sq,
            ric_bar_sq - (2 * n + 1) * lam_bar ** 2 + 2.0 * lap_bar * lam_bar,
            equality=True,
        )
        put(
            "deformed-bound",
            ric_bar_sq,
            hess_bar_sq - lap_bar ** 2 / (2 * n + 1),
        )
        put(
            "deformed-bound-solenoidal",
            ric_bar_sq,
            hess_bar_sq,
            applicable=solenoidal_bar,
        )
        put(
            "base-bound",
            ric_sq,
            hess_sq
            - 4 * n * q * scal_g
            - 4 * n * n * (2 * n + 1) * q * q
            - lap_g ** 2 / (2 * n + 1)
            - 2.0 / (2 * n + 1) * q * (xif - xixif) * lap_g
            + 2 * (2 * n + a) * (a - 1.0) / ((2 * n + 1) * a2) * xif * xixif
            + 2 * n / (2 * n + 1) * q * q * xif ** 2
            - 2 * (n + n * a + a) * (a - 1.0) / ((2 * n + 1) * a2) * xixif ** 2,
        )
        put(
            "base-bound-orthogonal",
            ric_sq,
            hess_sq
            - lap_g ** 2 / (2 * n + 1)
            + 4 * n * q * lap_g
            + 4 * n * n * (2 * n + 1) * (a2 - 1.0) / a2,
            applicable=orthogonal,
        )
        put(
            "base-bound-orthogonal-harmonic",
            ric_sq,
            hess_sq + 4 * n * n * (2 * n + 1) * (a2 - 1.0) / a2,
            applicable=orthogonal and harmonic,
        )
        put(
            "base-bound-solenoidal",
            ric_sq,
            hess_sq + (a2 - 1.0) / a2 * (4 * n * n - xixif ** 2),
            applicable=solenoidal_bar,
        )
    return items
