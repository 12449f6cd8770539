"""Deformed metrics: closed forms against direct chart computation."""

import numpy as np
import pytest

from acmsolitons.deformation import (
    NotKenmotsuError,
    admissible_interval,
    deform,
    deformation_curvature_term,
    harmonic_transfer,
    prop_inner_battery,
    ricci_norm_bound,
)
from acmsolitons.expr import parse_expr
from acmsolitons.geometry import (
    ScalarField,
    christoffel,
    covariant_derivative,
    curvature_bundle,
    divergence,
    grad,
    hessian,
    laplacian,
    lie_derivative_metric,
    nabla_phi_tensor,
)
from acmsolitons.tensor import StructureError, TensorValue, kulkarni_nomizu

A_GRID = (0.5, 1.0, 2.0, 3.7)


def _rel(x, y):
    scale = max(1.0, float(np.max(np.abs(x))), float(np.max(np.abs(y))))
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) / scale


class TestConstruction:
    def test_rejects_nonpositive_a(self, kenmotsu3_structure):
        for bad in (0.0, -1.0, float("nan")):
            with pytest.raises(StructureError, match="must be positive"):
                deform(kenmotsu3_structure, bad)

    def test_metric_values(self, kenmotsu3):
        ds = deform(kenmotsu3.structure, 2.0)
        p = ds.manifold.point(x=0.0, y=0.0, z=1.0)
        e2 = np.exp(2.0)
        got = ds.manifold.metric_values(p)
        assert np.allclose(got, np.diag([2 * e2, 2 * e2, 4.0]), atol=1e-12)

    def test_reeb_normalization(self, kenmotsu3, kenmotsu3_points):
        for a in (0.5, 3.7):
            ds = deform(kenmotsu3.structure, a)
            p = kenmotsu3_points[0]
            gbar = ds.manifold.metric_values(p)
            xi = kenmotsu3.structure.xi_values(p)
            xibar = ds.structure.xi_values(p)
            assert float(xi @ gbar @ xi) == pytest.approx(a * a, rel=1e-12)
            assert float(xibar @ gbar @ xibar) == pytest.approx(1.0, rel=1e-12)

    def test_deformed_structure_is_acm(self, kenmotsu3, kenmotsu3_points):
        for a in A_GRID:
            ds = deform(kenmotsu3.structure, a)
            for p in kenmotsu3_points[:4]:
                assert ds.structure.acm_residual(p) <= 1e-12

    def test_identity_at_a_equal_one_is_bitexact(self, kenmotsu3, kenmotsu3_points):
        ds = deform(kenmotsu3.structure, 1.0)
        man = kenmotsu3.manifold
        for p in kenmotsu3_points[:4]:
            g0 = man.metric_values(p)
            g1 = ds.manifold.metric_values(p)
            assert np.array_equal(g0, g1)

    def test_composition(self, kenmotsu3, kenmotsu3_points):
        # two deformations compose into one with the product parameter
        s = kenmotsu3.structure
        a, b = 2.0, 3.7
        inner = deform(s, a)
        composed = deform(inner.structure, b)
        direct = deform(s, a * b)
        p = kenmotsu3_points[0]
        assert np.allclose(
            composed.manifold.metric_values(p),
            direct.manifold.metric_values(p),
            rtol=1e-12, atol=1e-12,
        )
        assert np.allclose(
            composed.structure.xi_values(p), direct.structure.xi_values(p),
            rtol=1e-12,
        )
        assert np.allclose(
            composed.structure.eta_values(p), direct.structure.eta_values(p),
            rtol=1e-12,
        )

    def test_composed_closed_forms_refuse(self, kenmotsu3, kenmotsu3_points):
        # the once-deformed structure is no longer Kenmotsu, so the second
        # deformation must refuse its closed forms rather than be wrong
        inner = deform(kenmotsu3.structure, 2.0)
        outer = deform(inner.structure, 2.0)
        with pytest.raises(NotKenmotsuError):
            outer.christoffel_closed(kenmotsu3_points[0])


class TestClosedForms:
    @pytest.mark.parametrize("a", A_GRID)
    def test_inverse_metric(self, kenmotsu3, kenmotsu3_points, a):
        ds = deform(kenmotsu3.structure, a)
        for p in kenmotsu3_points[:6]:
            direct = np.linalg.inv(ds.manifold.metric_values(p))
            assert _rel(ds.inverse_metric_closed(p), direct) <= 1e-10

    @pytest.mark.parametrize("a", A_GRID)
    def test_christoffel(self, kenmotsu3, kenmotsu3_points, a):
        ds = deform(kenmotsu3.structure, a)
        tol = 1e-12 if a == 1.0 else 1e-8
        for p in kenmotsu3_points[:6]:
            assert _rel(
                ds.christoffel_closed(p), christoffel(ds.manifold, p)
            ) <= tol

    @pytest.mark.parametrize("a", A_GRID)
    def test_curvature(self, kenmotsu3, kenmotsu3_points, a):
        ds = deform(kenmotsu3.structure, a)
        tol = 1e-12 if a == 1.0 else 1e-8
        for p in kenmotsu3_points[:4]:
            closed = ds.curvature_closed(p)
            direct = curvature_bundle(ds.manifold, p)
            assert _rel(closed["R13"], direct["R13"]) <= tol
            assert _rel(closed["R04"], direct["R04"]) <= tol
            assert _rel(closed["Ric"].data, direct["Ric"].data) <= tol
            assert _rel(closed["scal"], direct["scal"]) <= tol

    @pytest.mark.parametrize("a", A_GRID)
    def test_operators(self, kenmotsu3, kenmotsu3_points, a):
        ds = deform(kenmotsu3.structure, a)
        f = kenmotsu3.scalars["f"]
        tol = 1e-12 if a == 1.0 else 1e-8
        xi_field = ds.structure.xi_field()
        for p in kenmotsu3_points[:4]:
            assert _rel(
                ds.hessian_closed(f, p).data, hessian(ds.manifold, f, p).data
            ) <= tol
            assert _rel(
                ds.gradient_closed(f, p), grad(ds.manifold, f, p)
            ) <= tol
            assert _rel(
                ds.laplacian_closed(f, p), laplacian(ds.manifold, f, p)
            ) <= tol
            assert _rel(
                ds.nabla_phi_closed(p), nabla_phi_tensor(ds.structure, p)
            ) <= tol
            assert _rel(
                ds.nabla_reeb_closed(p),
                covariant_derivative(ds.manifold, xi_field, p),
            ) <= tol
            assert _rel(
                ds.lie_reeb_closed(p).data,
                lie_derivative_metric(ds.manifold, xi_field, p).data,
            ) <= tol
            assert _rel(
                ds.div_reeb_closed(), divergence(ds.manifold, xi_field, p)
            ) <= tol

    def test_frozen_values_at_a2(self, kenmotsu3, kenmotsu3_points):
        # n = 1, a = 2 reference values
        ds = deform(kenmotsu3.structure, 2.0)
        f = kenmotsu3.scalars["f"]
        p = kenmotsu3_points[0]
        ez = np.exp(p["z"])
        battery = {e["pair"]: e for e in prop_inner_battery(ds, f, p)}
        assert battery["g-g"]["direct"] == pytest.approx(9.0 / 16.0, rel=1e-12)
        assert battery["ric-ric"]["direct"] == pytest.approx(2.25, rel=1e-12)
        assert ds.curvature_closed(p)["scal"] == pytest.approx(-1.5, rel=1e-12)
        assert ds.laplacian_closed(f, p) == pytest.approx(0.75 * ez, rel=1e-12)
        assert ds.div_reeb_closed() == pytest.approx(1.0)

    def test_gradient_potential_scaling(self, kenmotsu3, kenmotsu3_points):
        # grad_bar of the warp potential is the base potential over a^2
        f = kenmotsu3.scalars["f"]
        p = kenmotsu3_points[0]
        ez = np.exp(p["z"])
        for a in (0.5, 2.0, 3.7):
            ds = deform(kenmotsu3.structure, a)
            got = ds.gradient_closed(f, p)
            assert np.allclose(got, [0.0, 0.0, ez / (a * a)], atol=1e-12)


class TestCurvatureTerm:
    def test_equals_kulkarni_nomizu_combination(self, rng):
        # T = (1/2) A (*) A - A (*) (eta x eta) for any symmetric A
        for d in (3, 5):
            A = rng.normal(size=(d, d))
            A = 0.5 * (A + A.T)
            eta = rng.normal(size=d)
            t_a = TensorValue(0, 2, A, symmetric=True)
            t_e = TensorValue(0, 2, np.outer(eta, eta), symmetric=True)
            want = 0.5 * kulkarni_nomizu(t_a, t_a).data - kulkarni_nomizu(
                t_a, t_e
            ).data
            got = deformation_curvature_term(A, eta)
            assert np.allclose(got, want, atol=1e-12)


class TestInnerBattery:
    @pytest.mark.parametrize("a", A_GRID)
    def test_three_way_agreement(self, kenmotsu3, kenmotsu3_points, a):
        ds = deform(kenmotsu3.structure, a)
        f = kenmotsu3.scalars["f"]
        tol = 1e-12 if a == 1.0 else 1e-8
        for p in kenmotsu3_points[:6]:
            for entry in prop_inner_battery(ds, f, p):
                assert _rel(entry["direct"], entry["transfer"]) <= tol, entry["pair"]
                assert _rel(entry["direct"], entry["closed"]) <= tol, entry["pair"]


class TestHarmonicTransfer:
    def test_planar_harmonic_stays_harmonic(self, kenmotsu3, kenmotsu3_points):
        coords = kenmotsu3.manifold.coords
        f = ScalarField(parse_expr("x", coords=coords))
        res = harmonic_transfer(kenmotsu3.structure, f, kenmotsu3_points[:16])
        assert res["applicable"]
        assert res["deformed_harmonic"]
        assert res["condition_holds"]

    def test_harmonic_that_does_not_transfer(self, kenmotsu3, kenmotsu3_points):
        # harmonic, but Hess(xi,xi) + 2n eta(grad f) = -2 exp(-4z) != 0
        coords = kenmotsu3.manifold.coords
        f = ScalarField(
            parse_expr("x^2 * exp(-2*z) - exp(-4*z)/4", coords=coords)
        )
        res = harmonic_transfer(kenmotsu3.structure, f, kenmotsu3_points[:16])
        assert res["applicable"]
        assert not res["deformed_harmonic"]
        assert not res["condition_holds"]
        assert res["deformed_harmonic"] == res["condition_holds"]

    def test_nonharmonic_not_applicable(self, kenmotsu3, kenmotsu3_points):
        res = harmonic_transfer(
            kenmotsu3.structure, kenmotsu3.scalars["f"], kenmotsu3_points[:8]
        )
        assert not res["applicable"]


class TestRicciNormBound:
    def test_holds_on_fixture(self, kenmotsu3, kenmotsu3_points):
        for a in A_GRID:
            for p in kenmotsu3_points[:6]:
                res = ricci_norm_bound(kenmotsu3.structure, p, a)
                assert res["satisfied"]
                assert res["ric_norm_sq"] == pytest.approx(12.0, rel=1e-10)

    def test_admissible_interval_arithmetic(self):
        lo, hi = admissible_interval(2.0, 1)
        assert lo == 0.0
        assert hi == pytest.approx(2.0)
        lo, hi = admissible_interval(12.0, 1)
        assert lo == 0.0
        assert hi == np.inf


class TestRefusal:
    def test_euclidean_base_refused(self, euclidean3):
        ds = deform(euclidean3.structure, 2.0)
        p = euclidean3.manifold.point(x=0.1, y=0.2, z=0.3)
        with pytest.raises(NotKenmotsuError, match="Kenmotsu"):
            ds.require_kenmotsu(p)
        with pytest.raises(NotKenmotsuError):
            ds.curvature_closed(p)
        with pytest.raises(NotKenmotsuError):
            prop_inner_battery(ds, euclidean3.scalars["f"], p)
