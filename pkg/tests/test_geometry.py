"""Chart geometry: Christoffel symbols, curvature, operators, structures.

Derived quantities are checked against finite differences of the metric,
so the symbolic pipeline and the numeric assembly validate each other.
"""

import numpy as np
import pytest

from acmsolitons.geometry import (
    AcmStructure,
    ChartManifold,
    ScalarField,
    VectorField,
    christoffel,
    covariant_derivative,
    curvature_bundle,
    divergence,
    grad,
    gradient_lie_derivative,
    hessian,
    kenmotsu_residual,
    laplacian,
    lie_derivative_metric,
    nabla_phi_tensor,
    riemann,
    ricci,
    sample_points,
    scalar_curv,
)
from acmsolitons.expr import parse_expr
from acmsolitons.tensor import StructureError

H = 1e-4


def _shift(point, coord, h):
    out = dict(point)
    out[coord] += h
    return out


def _christoffel_fd(manifold, point):
    """Gamma from central differences of the metric itself."""
    d = manifold.dim
    g = manifold.metric_values(point)
    inv = np.linalg.inv(g)
    dg = np.empty((d, d, d))
    for k, c in enumerate(manifold.coords):
        gp = manifold.metric_values(_shift(point, c, H))
        gm = manifold.metric_values(_shift(point, c, -H))
        dg[k] = (gp - gm) / (2.0 * H)
    combo = dg + np.transpose(dg, (1, 0, 2)) - np.transpose(dg, (1, 2, 0))
    return 0.5 * np.einsum("lk,ijk->lij", inv, combo)


def _riemann_fd(manifold, point):
    """R13 from central differences of exact Christoffel symbols."""
    d = manifold.dim
    gamma = christoffel(manifold, point)
    dgamma = np.empty((d, d, d, d))
    for i, c in enumerate(manifold.coords):
        gp = christoffel(manifold, _shift(point, c, H))
        gm = christoffel(manifold, _shift(point, c, -H))
        dgamma[i] = (gp - gm) / (2.0 * H)
    # R^l_abc = d_a Gamma^l_bc - d_b Gamma^l_ac + Gamma Gamma terms
    return (
        np.transpose(dgamma, (1, 0, 2, 3))
        - np.transpose(dgamma, (1, 2, 0, 3))
        + np.einsum("lam,mbc->labc", gamma, gamma)
        - np.einsum("lbm,mac->labc", gamma, gamma)
    )


def _rel(x, y):
    scale = max(1.0, float(np.max(np.abs(x))), float(np.max(np.abs(y))))
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) / scale


class TestChristoffel:
    def test_kenmotsu3_frozen_values(self, kenmotsu3):
        man = kenmotsu3.manifold
        p = man.point(x=0.2, y=-0.7, z=1.5)
        gamma = christoffel(man, p)
        e2z = np.exp(2 * 1.5)
        expected = np.zeros((3, 3, 3))
        expected[0, 0, 2] = expected[0, 2, 0] = 1.0
        expected[1, 1, 2] = expected[1, 2, 1] = 1.0
        expected[2, 0, 0] = -e2z
        expected[2, 1, 1] = -e2z
        assert np.allclose(gamma, expected, atol=1e-12)

    def test_polar_frozen_values(self, polar2):
        p = polar2.point(r=1.7, t=0.4)
        gamma = christoffel(polar2, p)
        expected = np.zeros((2, 2, 2))
        expected[0, 1, 1] = -1.7
        expected[1, 0, 1] = expected[1, 1, 0] = 1.0 / 1.7
        assert np.allclose(gamma, expected, atol=1e-12)

    @pytest.mark.parametrize("which", ["kenmotsu3", "sphere2", "polar2"])
    def test_against_metric_fd(self, which, kenmotsu3, sphere2, polar2, rng):
        man = {
            "kenmotsu3": kenmotsu3.manifold,
            "sphere2": sphere2.manifold,
            "polar2": polar2,
        }[which]
        box = {
            "kenmotsu3": kenmotsu3.box,
            "sphere2": sphere2.box,
            "polar2": {"r": (0.5, 2.0), "t": (-3.0, 3.0)},
        }[which]
        for p in sample_points(man, box, 12, 7):
            assert _rel(christoffel(man, p), _christoffel_fd(man, p)) <= 1e-5


class TestCurvature:
    @pytest.mark.parametrize("which", ["kenmotsu3", "sphere2", "polar2"])
    def test_riemann_against_fd(self, which, kenmotsu3, sphere2, polar2):
        man = {
            "kenmotsu3": kenmotsu3.manifold,
            "sphere2": sphere2.manifold,
            "polar2": polar2,
        }[which]
        box = {
            "kenmotsu3": kenmotsu3.box,
            "sphere2": sphere2.box,
            "polar2": {"r": (0.5, 2.0), "t": (-3.0, 3.0)},
        }[which]
        for p in sample_points(man, box, 8, 11):
            r13, _ = riemann(man, p)
            assert _rel(r13, _riemann_fd(man, p)) <= 1e-5

    def test_sphere_scal_and_ricci(self, sphere2):
        man = sphere2.manifold
        for p in sample_points(man, sphere2.box, 10, 3):
            assert scalar_curv(man, p) == pytest.approx(2.0, abs=1e-9)
            g = man.metric_values(p)
            assert np.allclose(ricci(man, p).data, g, atol=1e-9)

    def test_polar_is_flat(self, polar2):
        p = polar2.point(r=1.3, t=-0.6)
        r13, r04 = riemann(polar2, p)
        assert np.max(np.abs(r13)) <= 1e-11
        assert np.max(np.abs(r04)) <= 1e-11

    def test_kenmotsu3_einstein(self, kenmotsu3, kenmotsu3_points):
        man = kenmotsu3.manifold
        for p in kenmotsu3_points[:10]:
            g = man.metric_values(p)
            assert np.allclose(ricci(man, p).data, -2.0 * g, atol=1e-10)
            assert scalar_curv(man, p) == pytest.approx(-6.0, abs=1e-10)

    def test_curvature_reeb_convention(self, kenmotsu3, kenmotsu3_points):
        # R(X,Y)xi = eta(X)Y - eta(Y)X fixes the index order of R13
        s = kenmotsu3.structure
        man = kenmotsu3.manifold
        p = kenmotsu3_points[0]
        bundle = curvature_bundle(man, p)
        xi = s.xi_values(p)
        eta = s.eta_values(p)
        got = np.einsum("labc,c->lab", bundle["R13"], xi)
        eye = np.eye(3)
        want = np.einsum("a,lb->lab", eta, eye) - np.einsum("b,la->lab", eta, eye)
        assert np.allclose(got, want, atol=1e-10)
        assert float(xi @ bundle["Ric"].data @ xi) == pytest.approx(-2.0, abs=1e-10)


class TestOperators:
    def test_hessian_of_warp_function(self, kenmotsu3, kenmotsu3_points):
        man = kenmotsu3.manifold
        f = kenmotsu3.scalars["f"]
        for p in kenmotsu3_points[:10]:
            g = man.metric_values(p)
            ez = np.exp(p["z"])
            assert np.allclose(hessian(man, f, p).data, ez * g, atol=1e-9)
            assert laplacian(man, f, p) == pytest.approx(3.0 * ez, rel=1e-12)

    def test_gradient_is_reeb_multiple(self, kenmotsu3, kenmotsu3_points):
        man = kenmotsu3.manifold
        s = kenmotsu3.structure
        f = kenmotsu3.scalars["f"]
        p = kenmotsu3_points[0]
        ez = np.exp(p["z"])
        assert np.allclose(grad(man, f, p), ez * s.xi_values(p), atol=1e-12)

    def test_gradient_lie_is_twice_hessian(self, kenmotsu3, kenmotsu3_points):
        man = kenmotsu3.manifold
        f = kenmotsu3.scalars["f"]
        for p in kenmotsu3_points[:6]:
            lie = gradient_lie_derivative(man, f, p).data
            assert np.allclose(lie, 2.0 * hessian(man, f, p).data, atol=1e-9)

    def test_divergence_of_reeb(self, kenmotsu3, kenmotsu3_points):
        man = kenmotsu3.manifold
        s = kenmotsu3.structure
        for p in kenmotsu3_points[:6]:
            assert divergence(man, s.xi_field(), p) == pytest.approx(2.0, abs=1e-12)

    def test_lie_reeb_metric(self, kenmotsu3, kenmotsu3_points):
        man = kenmotsu3.manifold
        s = kenmotsu3.structure
        p = kenmotsu3_points[0]
        lie = lie_derivative_metric(man, s.xi_field(), p).data
        g = man.metric_values(p)
        eta = s.eta_values(p)
        assert np.allclose(lie, 2.0 * (g - np.outer(eta, eta)), atol=1e-12)

    def test_killing_field(self, kenmotsu3, kenmotsu3_points):
        # d_x preserves g = diag(exp(2z), exp(2z), 1)
        man = kenmotsu3.manifold
        w = VectorField(tuple(
            parse_expr(t, coords=man.coords) for t in ("1", "0", "0")
        ))
        p = kenmotsu3_points[0]
        assert np.max(np.abs(lie_derivative_metric(man, w, p).data)) <= 1e-12

    def test_covariant_derivative_of_reeb(self, kenmotsu3, kenmotsu3_points):
        man = kenmotsu3.manifold
        s = kenmotsu3.structure
        p = kenmotsu3_points[0]
        nabla_xi = covariant_derivative(man, s.xi_field(), p)
        eta = s.eta_values(p)
        xi = s.xi_values(p)
        assert np.allclose(nabla_xi, np.eye(3) - np.outer(eta, xi), atol=1e-12)


class TestStructures:
    def test_acm_axioms_hold(self, kenmotsu3, kenmotsu3_points):
        s = kenmotsu3.structure
        for p in kenmotsu3_points[:10]:
            res = s.validate(p)
            assert max(res.values()) <= 1e-12

    def test_kenmotsu_residual_zero(self, kenmotsu3, kenmotsu3_points):
        s = kenmotsu3.structure
        for p in kenmotsu3_points[:10]:
            assert kenmotsu_residual(s, p) <= 1e-12

    def test_euclidean_is_acm_but_not_kenmotsu(self, euclidean3):
        s = euclidean3.structure
        p = euclidean3.manifold.point(x=0.1, y=0.2, z=0.3)
        assert s.acm_residual(p) <= 1e-12
        assert kenmotsu_residual(s, p) >= 0.1

    def test_nabla_phi_kenmotsu_form(self, kenmotsu3, kenmotsu3_points):
        s = kenmotsu3.structure
        man = kenmotsu3.manifold
        p = kenmotsu3_points[0]
        got = nabla_phi_tensor(s, p)
        g = man.metric_values(p)
        phi = s.phi_values(p)
        xi = s.xi_values(p)
        eta = s.eta_values(p)
        want = (
            np.einsum("ij,k->ikj", phi.T @ g, xi)
            - np.einsum("j,ki->ikj", eta, phi)
        )
        assert np.allclose(got, want, atol=1e-12)

    def test_even_dimension_rejected(self, polar2):
        zero = parse_expr("0", coords=polar2.coords)
        one = parse_expr("1", coords=polar2.coords)
        with pytest.raises(StructureError):
            AcmStructure(polar2, [[zero, zero], [zero, zero]], (zero, one))


class TestSampling:
    def test_deterministic(self, kenmotsu3):
        man = kenmotsu3.manifold
        a = sample_points(man, kenmotsu3.box, 16, 42)
        b = sample_points(man, kenmotsu3.box, 16, 42)
        assert a == b
        c = sample_points(man, kenmotsu3.box, 16, 43)
        assert a != c

    def test_respects_box_and_constraints(self, kenmotsu3):
        man = kenmotsu3.manifold
        for p in sample_points(man, kenmotsu3.box, 32, 1):
            assert 1.05 <= p["z"] <= 2.2
            assert -1.0 <= p["x"] <= 1.0
            assert man.contains(p)

    def test_empty_intersection_raises(self, kenmotsu3):
        man = kenmotsu3.manifold
        box = dict(kenmotsu3.box)
        box["z"] = (0.0, 0.5)  # all below the z > 1 constraint
        with pytest.raises(StructureError):
            sample_points(man, box, 4, 42)

    def test_degenerate_metric_rejected(self, sphere2):
        man = sphere2.manifold
        with pytest.raises(StructureError):
            man.metric_at_cached(man.point(theta=0.0, phi=0.0))
