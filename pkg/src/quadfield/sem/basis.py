"""Hierarchical orthonormal modal basis on the reference triangle.

The reference triangle has vertices (-1,-1), (1,-1), (-1,1). Modes are
products of Legendre and Jacobi polynomials in collapsed (Duffy)
coordinates, normalized to an identity mass matrix. Modes are ordered by
total degree, so the leading (P'+1)(P'+2)/2 coefficients of an order-P
expansion are exactly the order-P' subexpansion.

Quadrature tensorizes a Gauss-Legendre rule in the first collapsed
direction with a Gauss-Jacobi (1,0) rule in the second, which absorbs the
Duffy Jacobian; n points per direction integrate degree 2n-1 exactly.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import eval_jacobi, roots_jacobi, roots_legendre

REF_VERTS = np.array([[-1.0, -1.0], [1.0, -1.0], [-1.0, 1.0]])


def n_modes(order):
    return (order + 1) * (order + 2) // 2


def mode_indices(order):
    """(p, q) pairs ordered by total degree, then by p."""
    out = []
    for d in range(order + 1):
        for p in range(d + 1):
            out.append((p, d - p))
    return out


def collapse(xi):
    """Map reference-triangle coords to the collapsed square [-1,1]^2.

    At the collapsed vertex (xi2 = 1) the first coordinate is set to -1;
    basis values and the rearranged gradients are exact there regardless.
    """
    xi = np.asarray(xi, dtype=float)
    denom = 1.0 - xi[..., 1]
    regular = np.abs(denom) > 1e-14
    safe = np.where(regular, denom, 1.0)
    a = np.where(regular, 2.0 * (1.0 + xi[..., 0]) / safe - 1.0, -1.0)
    return a, xi[..., 1]


def expand(a, b):
    """Inverse of collapse."""
    xi1 = 0.5 * (1.0 + a) * (1.0 - b) - 1.0
    return np.stack([xi1, b], axis=-1)


def _jacobi_deriv(n, alpha, beta, x):
    if n == 0:
        return np.zeros_like(x)
    return 0.5 * (n + alpha + beta + 1) * eval_jacobi(
        n - 1, alpha + 1, beta + 1, x)


class TriangleBasis:
    """Orthonormal modal basis of total order P on the reference triangle."""

    def __init__(self, order):
        if order < 1:
            raise ValueError("basis order must be >= 1")
        self.order = int(order)
        self.modes = mode_indices(self.order)
        self.n_modes = len(self.modes)

    def eval(self, xi):
        """Mode values at reference points xi, shape (..., n_modes)."""
        xi = np.asarray(xi, dtype=float)
        a, b = collapse(xi)
        g = 0.5 * (1.0 - b)
        out = np.empty(a.shape + (self.n_modes,))
        for n, (p, q) in enumerate(self.modes):
            c = np.sqrt((2 * p + 1) * (p + q + 1) / 2.0)
            out[..., n] = (c * eval_jacobi(p, 0.0, 0.0, a) * g**p
                           * eval_jacobi(q, 2 * p + 1, 0.0, b))
        return out

    def grad(self, xi):
        """Mode gradients in reference coords, shape (..., n_modes, 2).

        The collapsed-coordinate chain rule is rearranged so the factor
        singular at the top vertex cancels analytically; evaluation is
        finite everywhere on the closed triangle.
        """
        xi = np.asarray(xi, dtype=float)
        a, b = collapse(xi)
        g = 0.5 * (1.0 - b)
        out = np.empty(a.shape + (self.n_modes, 2))
        for n, (p, q) in enumerate(self.modes):
            c = np.sqrt((2 * p + 1) * (p + q + 1) / 2.0)
            Pa = eval_jacobi(p, 0.0, 0.0, a)
            dPa = _jacobi_deriv(p, 0.0, 0.0, a)
            Qb = eval_jacobi(q, 2 * p + 1, 0.0, b)
            dQb = _jacobi_deriv(q, 2 * p + 1, 0.0, b)
            gp1 = g**(p - 1) if p >= 1 else np.zeros_like(g)
            d_xi1 = dPa * gp1 * Qb
            d_xi2 = (dPa * 0.5 * (1.0 + a) * gp1 * Qb
                     + Pa * (g**p * dQb - (0.5 * p) * gp1 * Qb))
            out[..., n, 0] = c * d_xi1
            out[..., n, 1] = c * d_xi2
        return out


@lru_cache(maxsize=64)
def _basis_cached(order):
    return TriangleBasis(order)


def triangle_basis(order):
    return _basis_cached(order)


@lru_cache(maxsize=64)
def tri_quadrature(n):
    """Tensor quadrature with n^2 points on the reference triangle.

    Returns (points (n*n, 2), weights (n*n,)); exact for polynomials of
    total degree 2n-1.
    """
    xa, wa = roots_legendre(n)
    xb, wb = roots_jacobi(n, 1.0, 0.0)
    A, B = np.meshgrid(xa, xb, indexing="ij")
    W = np.outer(wa, 0.5 * wb)
    pts = expand(A.ravel(), B.ravel())
    return pts, W.ravel()


@lru_cache(maxsize=64)
def gauss_legendre(n):
    x, w = roots_legendre(n)
    return x, w


@lru_cache(maxsize=64)
def gauss_lobatto(n):
    """n Gauss-Lobatto-Legendre points and weights on [-1, 1]."""
    if n < 2:
        raise ValueError("need at least 2 Lobatto points")
    if n == 2:
        return np.array([-1.0, 1.0]), np.array([1.0, 1.0])
    # interior nodes are roots of P'_{n-1}, i.e. Jacobi(1,1) of degree n-2
    xi, _ = roots_jacobi(n - 2, 1.0, 1.0)
    x = np.concatenate([[-1.0], xi, [1.0]])
    # weights 2 / (n (n-1) P_{n-1}(x)^2)
    Pm = eval_jacobi(n - 1, 0.0, 0.0, x)
    w = 2.0 / (n * (n - 1) * Pm**2)
    return x, w


def lagrange_matrix(nodes, x):
    """Values of the Lagrange basis on `nodes` at points `x`,
    shape (len(x), len(nodes)); barycentric form."""
    nodes = np.asarray(nodes, dtype=float)
    x = np.asarray(x, dtype=float)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    wbar = 1.0 / np.prod(diff, axis=1)
    d = x[:, None] - nodes[None, :]
    exact = np.isclose(d, 0.0, atol=1e-14)
    d_safe = np.where(exact, 1.0, d)
    terms = wbar[None, :] / d_safe
    denom = np.sum(terms, axis=1)
    L = terms / denom[:, None]
    hit = exact.any(axis=1)
    L[hit] = exact[hit].astype(float)
    return L


def lagrange_deriv_matrix(nodes):
    """Differentiation matrix D with (Df)_i = f'(node_i) for nodal values."""
    nodes = np.asarray(nodes, dtype=float)
    n = len(nodes)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    wbar = 1.0 / np.prod(diff, axis=1)
    D = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                D[i, j] = (wbar[j] / wbar[i]) / (nodes[i] - nodes[j])
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -np.sum(D, axis=1))
    return D
