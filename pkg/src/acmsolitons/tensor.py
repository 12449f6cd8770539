"""Pointwise dense tensors and metric data at a chart point.

Conventions used across the package:

* a (p, q) tensor is stored as a dense ndarray whose first p axes are the
  contravariant (upper) indices and whose last q axes are the covariant
  (lower) ones;
* the curvature (0, 4) index order is R(X, Y, Z, W) = g(R(X, Y)Z, W) with
  slots stored in that order;
* the Hilbert-Schmidt pairing of two (0, 2) tensors is
  g^{ik} g^{jl} T1_{ij} T2_{kl}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .expr import evaluate

__all__ = [
    "TensorValue", "MetricAtPoint", "StructureError",
    "metric_at", "kulkarni_nomizu", "hs_inner", "contract", "tensor_product",
]

_SYMMETRY_TOL = 1e-12
_INVERSE_TOL = 1e-10


class StructureError(Exception):
    """A structural invariant failed (degenerate metric, bad valence, ...)."""


@dataclass(frozen=True, eq=False)
class TensorValue:
    """Components of a (p, q) tensor at a single point."""

    p: int
    q: int
    data: np.ndarray
    symmetric: bool = field(default=False)

    def __post_init__(self):
        array = np.asarray(self.data, dtype=float)
        object.__setattr__(self, "data", array)
        if array.ndim != self.p + self.q:
            raise StructureError(
                f"valence ({self.p},{self.q}) needs {self.p + self.q} axes, "
                f"got {array.ndim}"
            )
        if array.ndim > 0:
            dims = set(array.shape)
            if len(dims) != 1:
                raise StructureError(f"ragged tensor shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise StructureError("non-finite tensor component")
        if self.symmetric:
            if (self.p, self.q) != (0, 2):
                raise StructureError("symmetry flag is for (0,2) tensors")
            scale = float(np.max(np.abs(array))) if array.size else 0.0
            if float(np.max(np.abs(array - array.T))) > _SYMMETRY_TOL * max(scale, 1.0):
                raise StructureError("tensor declared symmetric is not")

    @property
    def dim(self) -> int:
        return self.data.shape[0] if self.data.ndim else 0

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data)))


@dataclass(frozen=True, eq=False)
class MetricAtPoint:
    """Metric components and their coordinate derivatives at one point.

    Attributes
    ----------
    g : (d, d) metric components
    inv : (d, d) inverse metric, computed by LU factorization
    det : determinant of g
    dg : (d, d, d) first partials, dg[k, i, j] = d_k g_ij
    d2g : (d, d, d, d) second partials, d2g[l, k, i, j] = d_l d_k g_ij,
          symmetrized over (l, k)
    """

    point: dict
    g: np.ndarray
    inv: np.ndarray
    det: float
    dg: np.ndarray
    d2g: np.ndarray

    @property
    def dim(self) -> int:
        return self.g.shape[0]


def metric_at(manifold, point) -> MetricAtPoint:
    """Evaluate a manifold's metric and its partials at ``point``.

    Positive definiteness is enforced by attempting a Cholesky
    factorization; failure raises StructureError naming the point.
    """
    g = manifold.metric_values(point)
    dim = g.shape[0]
    scale = max(float(np.max(np.abs(g))), 1.0)
    if float(np.max(np.abs(g - g.T))) > _SYMMETRY_TOL * scale:
        raise StructureError(f"metric not symmetric at {point}")
    try:
        np.linalg.cholesky(g)
    except np.linalg.LinAlgError:
        raise StructureError(f"metric not positive definite at {point}") from None
    inv = np.linalg.inv(g)
    residual = float(np.max(np.abs(g @ inv - np.eye(dim))))
    if residual > _INVERSE_TOL:
        raise StructureError(f"metric too ill-conditioned at {point}")
    det = float(np.linalg.det(g))
    dg = manifold.metric_partials(point)
    d2g = manifold.metric_second_partials(point)
    return MetricAtPoint(point=dict(point), g=g, inv=inv, det=det, dg=dg, d2g=d2g)


def kulkarni_nomizu(t1: TensorValue, t2: TensorValue) -> TensorValue:
    """Kulkarni-Nomizu product of two symmetric (0, 2) tensors.

    (T1 o T2)(X,Y,Z,W) = T1(X,W)T2(Y,Z) + T1(Y,Z)T2(X,W)
                         - T1(X,Z)T2(Y,W) - T1(Y,W)T2(X,Z)
    """
    for t in (t1, t2):
        if (t.p, t.q) != (0, 2):
            raise StructureError("Kulkarni-Nomizu product needs (0,2) tensors")
    a, b = t1.data, t2.data
    out = (
        np.einsum("ad,bc->abcd", a, b)
        + np.einsum("bc,ad->abcd", a, b)
        - np.einsum("ac,bd->abcd", a, b)
        - np.einsum("bd,ac->abcd", a, b)
    )
    return TensorValue(0, 4, out)


def hs_inner(t1: TensorValue, t2: TensorValue, m: MetricAtPoint) -> float:
    """Hilbert-Schmidt pairing of two (0, 2) tensors under the metric ``m``."""
    for t in (t1, t2):
        if (t.p, t.q) != (0, 2):
            raise StructureError("Hilbert-Schmidt pairing needs (0,2) tensors")
    return float(np.einsum("ik,jl,ij,kl->", m.inv, m.inv, t1.data, t2.data))


def contract(t: TensorValue, upper: int, lower: int) -> TensorValue:
    """Contract the ``upper``-th contravariant axis with the ``lower``-th
    covariant axis."""
    if not (0 <= upper < t.p and 0 <= lower < t.q):
        raise StructureError(
            f"no ({upper},{lower}) contraction on a ({t.p},{t.q}) tensor"
        )
    data = np.trace(t.data, axis1=upper, axis2=t.p + lower)
    return TensorValue(t.p - 1, t.q - 1, data)


def tensor_product(t1: TensorValue, t2: TensorValue) -> TensorValue:
    """Outer product, regrouping axes so upper indices come first."""
    data = np.tensordot(t1.data, t2.data, axes=0)
    # axes currently: up1, low1, up2, low2; move up2 ahead of low1
    order = (
        list(range(t1.p))
        + [t1.p + t1.q + k for k in range(t2.p)]
        + list(range(t1.p, t1.p + t1.q))
        + [t1.p + t1.q + t2.p + k for k in range(t2.q)]
    )
    return TensorValue(t1.p + t2.p, t1.q + t2.q, np.transpose(data, order))


def evaluate_matrix(exprs, point) -> np.ndarray:
    """Evaluate a nested tuple/list of expressions into an ndarray."""
    if isinstance(exprs, (tuple, list)):
        return np.array([evaluate_matrix(entry, point) for entry in exprs])
    return evaluate(exprs, point)
