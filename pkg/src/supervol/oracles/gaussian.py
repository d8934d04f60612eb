"""Brute-force Gaussian integrals over R^{p|q}.

The quadratic function is Q(x) = sum_{a,b} x^a x^b Q_ba for an even,
supersymmetric supermatrix Q whose entries may depend on extra "parameter"
generators.  The odd integration variables are appended after those.
"""
from __future__ import annotations

import math
import random
from typing import Sequence

import numpy as np

from .. import grassmann as gr
from ..grassmann import GrassmannElement
from ..superlinalg import SuperMatrix, berezinian, is_supersymmetric
from ..volumes import SuperDimension, gaussian_factor
from .quadrature import gauss_hermite, tensor_grid


class GaussianError(ValueError):
    pass


def _embed(a: GrassmannElement, N: int) -> GrassmannElement:
    return a.embed(N)


def nilpotent_part(Q: SuperMatrix, xs: Sequence, N: int) -> GrassmannElement:
    """Q(x) minus its body x^T A0 x, on N = Q.n + q generators."""
    p, q, P = Q.p, Q.q, Q.n
    X = [GrassmannElement.scalar(N, x) for x in xs] + [GrassmannElement.generator(N, P + a) for a in range(q)]
    acc = GrassmannElement.zero(N)
    for a in range(p + q):
        for b in range(p + q):
            Qba = _embed(Q[b, a], N)
            if a < p and b < p:
                Qba = Qba.soul
            if Qba.is_zero:
                continue
            acc = acc + X[a] * X[b] * Qba
    return acc


def gaussian_super_integral(Q: SuperMatrix, nodes: int = 12) -> GrassmannElement:
    """int exp(-Q(x)) Dx over R^{p|q}, as an element of the parameter algebra.

    The even variables are whitened with the Cholesky factor of body(A00),
    after which the integrand is exp(-|y|^2) times a polynomial in y, so a
    Gauss-Hermite rule with enough nodes is exact.
    """
    if not is_supersymmetric(Q):
        raise GaussianError("Q must be supersymmetric")
    p, q, P = Q.p, Q.q, Q.n
    if q % 2:
        raise GaussianError("the odd dimension must be even")
    N = P + q
    A0 = np.real_if_close(Q.body()[:p, :p]).astype(float) if p else np.zeros((0, 0))
    try:
        L = np.linalg.cholesky(A0) if p else np.zeros((0, 0))
    except np.linalg.LinAlgError as exc:
        raise GaussianError("body of the even-even block must be positive definite") from exc
    # x = L^-T y
    Linv_T = np.linalg.inv(L).T if p else np.zeros((0, 0))
    coords, weights = tensor_grid([gauss_hermite(nodes)] * p)
    ys = np.stack(coords) if p else np.zeros((0, 1))
    xs = list(Linv_T @ ys) if p else []
    integrand = gr.exp(-nilpotent_part(Q, xs, N))
    odd = gr.berezin_integrate(integrand, range(P, N))
    terms = {}
    for mask, c in odd.terms.items():
        vals = np.broadcast_to(np.asarray(c, dtype=complex), weights.shape) * weights
        terms[mask] = complex(math.fsum(vals.real), math.fsum(vals.imag))
    det_L = float(np.prod(np.diag(L))) if p else 1.0
    return GrassmannElement(P, terms) * (1.0 / det_L)


def gaussian_closed_form(Q: SuperMatrix) -> GrassmannElement:
    """g_{p|q} / sqrt(Ber Q)."""
    g = gaussian_factor(SuperDimension(Q.p, Q.q))
    return gr.power(berezinian(Q), -0.5) * g


def standard_form(p: int, pairs: int, n: int = 0) -> SuperMatrix:
    """Q with Q(x) = sum x^2 + 2 sum xi eta."""
    size = p + 2 * pairs
    rows = [[0.0] * size for _ in range(size)]
    for i in range(p):
        rows[i][i] = 1.0
    for k in range(pairs):
        i = p + 2 * k
        rows[i][i + 1] = -1.0
        rows[i + 1][i] = 1.0
    return SuperMatrix(rows, p, 2 * pairs, n)


def random_admissible(rng: random.Random, p: int, pairs: int, n_params: int = 2, soul_scale: float = 0.5) -> SuperMatrix:
    """Random supersymmetric Q whose Gaussian integral is positive.

    A00 = M M^T + I plus even souls; A11 = S^T J S + antisymmetric even souls
    with det body(S) > 0; A01 = A10^T with odd entries.
    """
    q = 2 * pairs
    P = n_params
    size = p + q

    def even_soul():
        e = GrassmannElement.zero(P)
        for i in range(P):
            for j in range(i + 1, P):
                e = e + GrassmannElement.monomial(P, [i, j], rng.uniform(-soul_scale, soul_scale))
        return e

    def odd_el():
        e = GrassmannElement.zero(P)
        for i in range(P):
            e = e + GrassmannElement.generator(P, i, rng.uniform(-soul_scale, soul_scale))
        return e

    M = np.array([[rng.uniform(-1, 1) for _ in range(p)] for _ in range(p)]) if p else np.zeros((0, 0))
    A0 = M @ M.T + np.eye(p)
    while True:
        S = np.array([[rng.uniform(-1, 1) for _ in range(q)] for _ in range(q)]) + 1.5 * np.eye(q)
        if q == 0 or np.linalg.det(S) > 0.1:
            break
    J = np.zeros((q, q))
    for k in range(pairs):
        J[2 * k, 2 * k + 1] = -1.0
        J[2 * k + 1, 2 * k] = 1.0
    D0 = S.T @ J @ S
    rows = [[GrassmannElement.zero(P) for _ in range(size)] for _ in range(size)]
    for i in range(p):
        for j in range(i, p):
            v = GrassmannElement.scalar(P, float(A0[i, j])) + even_soul()
            rows[i][j] = v
            rows[j][i] = v
    for a in range(q):
        for b in range(a + 1, q):
            v = GrassmannElement.scalar(P, float(D0[a, b])) + even_soul()
            rows[p + a][p + b] = v
            rows[p + b][p + a] = -v
    for i in range(p):
        for a in range(q):
            v = odd_el()
            rows[i][p + a] = v
            rows[p + a][i] = v
    return SuperMatrix(rows, p, q, P)


__all__ = [
    "GaussianError",
    "gaussian_super_integral",
    "gaussian_closed_form",
    "standard_form",
    "random_admissible",
    "nilpotent_part",
]
