"""Charts on embedded supermanifolds and the induced (pullback) metric.

A chart has real even coordinates x^1..x^p and odd coordinates which are the
first q generators of the Grassmann algebra.  Its embedding returns the
ambient coordinates X^A as Grassmann elements.  Derivatives along even
coordinates are taken exactly by nilpotent augmentation: two extra
generators e, e' are appended and x^a is replaced by x^a + e e'; the
coefficient of e e' is the first derivative.  Odd derivatives are left
derivatives.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .. import grassmann as gr
from ..grassmann import GrassmannElement
from ..superlinalg import SuperMatrix

Embedding = Callable[[Sequence[GrassmannElement], int], list[GrassmannElement]]


class ChartError(ValueError):
    pass


def odd_pair_metric() -> np.ndarray:
    """Ambient metric block of an odd pair (xi, eta) contributing 2 xi eta to (x, x)."""
    return np.array([[0.0, -1.0], [1.0, 0.0]])


def standard_ambient(n_even: int, n_pairs: int) -> tuple[tuple[int, ...], np.ndarray]:
    """Parities and metric of R^{n_even|2 n_pairs} with (x,x) = sum x^2 + 2 sum xi eta."""
    size = n_even + 2 * n_pairs
    G = np.zeros((size, size))
    G[:n_even, :n_even] = np.eye(n_even)
    for k in range(n_pairs):
        i = n_even + 2 * k
        G[i : i + 2, i : i + 2] = odd_pair_metric()
    return (0,) * n_even + (1,) * (2 * n_pairs), G


@dataclass(frozen=True)
class SuperChart:
    """A local parametrization of a supermanifold inside a flat superspace."""

    even_coords: tuple[str, ...]
    domains: tuple[tuple[float, float], ...]
    n_odd: int
    ambient_parities: tuple[int, ...]
    ambient_metric: np.ndarray
    embedding: Embedding
    constraint: Callable[[Sequence[GrassmannElement]], GrassmannElement] | None = None

    def __post_init__(self):
        if len(self.domains) != len(self.even_coords):
            raise ChartError("one domain per even coordinate is required")
        k = len(self.ambient_parities)
        if self.ambient_metric.shape != (k, k):
            raise ChartError(f"ambient metric must be {k}x{k}")

    @property
    def p(self) -> int:
        return len(self.even_coords)

    def evaluate(self, point: Sequence) -> list[GrassmannElement]:
        """Ambient coordinates at ``point`` (odd coordinates stay symbolic)."""
        xs = [GrassmannElement.scalar(self.n_odd, x) for x in point]
        return self.embedding(xs, self.n_odd)

    def constraint_residual(self, point: Sequence) -> float:
        if self.constraint is None:
            return 0.0
        return self.constraint(self.evaluate(point)).max_abs()


def _strip_aux(a: GrassmannElement, q: int) -> GrassmannElement:
    """Coefficient of e e' (generators q, q+1) as an element on q generators."""
    both = (1 << q) | (1 << (q + 1))
    out = {}
    for m, c in a.terms.items():
        if m & both == both:
            out[m ^ both] = c
    return GrassmannElement(q, out)


def chart_jacobian(chart: SuperChart, point: Sequence) -> list[list[GrassmannElement]]:
    """J[a][A] = d X^A / d x^a, even coordinates first, then odd."""
    q = chart.n_odd
    if len(point) != chart.p:
        raise ChartError(f"expected {chart.p} even coordinates, got {len(point)}")
    N = q + 2
    eps = GrassmannElement.monomial(N, [q, q + 1])
    rows = []
    for a in range(chart.p):
        xs = [GrassmannElement.scalar(N, x) for x in point]
        xs[a] = xs[a] + eps
        X = chart.embedding(xs, N)
        rows.append([_strip_aux(XA, q) for XA in X])
    X0 = chart.evaluate(point)
    for alpha in range(q):
        rows.append([gr.odd_derivative(XA, alpha, "left") for XA in X0])
    return rows


def pullback_metric(chart: SuperChart, point: Sequence) -> SuperMatrix:
    """Induced metric g_ab = sum J_a^A J_b^B G_AB (-1)^((|b|+|B|)|A|).

    This is the coefficient matrix of ds^2 = dx^a dx^b g_ba after
    substituting dX^A = dx^a J_a^A into the ambient dX^A dX^B G_BA.
    """
    J = chart_jacobian(chart, point)
    q = chart.n_odd
    par = [0] * chart.p + [1] * q
    Apar = chart.ambient_parities
    G = chart.ambient_metric
    nz = [(A, B, G[A, B]) for A in range(len(Apar)) for B in range(len(Apar)) if G[A, B] != 0]
    size = chart.p + q
    g = [[None] * size for _ in range(size)]
    for a in range(size):
        for b in range(size):
            acc = GrassmannElement.zero(q)
            for A, B, GAB in nz:
                if J[a][A].is_zero or J[b][B].is_zero:
                    continue
                term = J[a][A] * J[b][B]
                if ((par[b] + Apar[B]) * Apar[A]) & 1:
                    GAB = -GAB
                acc = acc + term * float(GAB)
            g[a][b] = acc
    return SuperMatrix(g, chart.p, q, q, check_parity=False)


# -- concrete charts ------------------------------------------------------------


def _odd_square(N: int, pairs: int) -> GrassmannElement:
    """2 sum_i xi_i eta_i with (xi_i, eta_i) = generators (2i, 2i+1)."""
    s = GrassmannElement.zero(N)
    for i in range(pairs):
        s = s + GrassmannElement.monomial(N, [2 * i, 2 * i + 1], 2)
    return s


def hyperspherical(angles: Sequence[GrassmannElement]) -> list[GrassmannElement]:
    """Unit vector in R^{k+1} from k hyperspherical angles."""
    k = len(angles)
    out = []
    prod = None
    for i, phi in enumerate(angles):
        c = gr.cos(phi)
        out.append(c if prod is None else prod * c)
        s = gr.sin(phi)
        prod = s if prod is None else prod * s
    out.append(prod)
    if k == 0:
        raise ChartError("hyperspherical needs at least one angle")
    return out


def sphere_chart(n: int, m: int, R: float, sign: int = 1) -> SuperChart:
    """Angular chart on S^{n|2m} of radius R inside R^{n+1|2m}.

    X = sqrt(R^2 - 2 sum xi eta) * omega(angles) and the odd ambient
    coordinates are the chart's odd coordinates.  For n = 0 the sphere's body
    is two points; ``sign`` picks one of them.
    """
    parities, G = standard_ambient(n + 1, m)
    R2 = float(R) ** 2

    def embed(xs, N):
        rho = gr.sqrt(R2 - _odd_square(N, m))
        if n == 0:
            even = [rho * sign]
        else:
            even = [rho * w for w in hyperspherical(xs)]
        odd = [GrassmannElement.generator(N, i) for i in range(2 * m)]
        return even + odd

    def constraint(X):
        N = X[0].n
        acc = _odd_square(N, m) - R2
        for x in X[: n + 1]:
            acc = acc + x * x
        return acc

    names = tuple(f"phi{i + 1}" for i in range(n))
    domains = tuple((0.0, math.pi) for _ in range(n - 1)) + (((0.0, 2 * math.pi),) if n else ())
    return SuperChart(names, domains, 2 * m, parities, G, embed, constraint)


def hopf_chart(n: int, m: int, R: float) -> SuperChart:
    """Chart (alpha, Re w, Im w | theta, theta-bar) on S^{2n+1|2m} of radius R.

    z^0 = R e^{i alpha} N^{-1/2}, z^a = R e^{i alpha} N^{-1/2} w^a,
    zeta^mu = R e^{i alpha} N^{-1/2} theta^mu with N = 1 + |w|^2 + i theta.theta-bar.
    Ambient real coordinates are (Re z, Im z) and (xi, eta) with
    zeta = xi + i eta.  theta^mu and its conjugate are generators (2mu, 2mu+1).
    """
    parities, G = standard_ambient(2 * (n + 1), m)
    Rf = float(R)

    def embed(xs, N):
        alpha, rest = xs[0], xs[1:]
        ws = [(rest[2 * a], rest[2 * a + 1]) for a in range(n)]
        Nel = GrassmannElement.scalar(N, 1.0)
        for x, y in ws:
            Nel = Nel + x * x + y * y
        for mu in range(m):
            Nel = Nel + GrassmannElement.monomial(N, [2 * mu, 2 * mu + 1], 1j)
        amp = gr.power(Nel, -0.5) * Rf
        c, s = gr.cos(alpha), gr.sin(alpha)
        even = [amp * c, amp * s]
        for x, y in ws:
            even += [amp * (c * x - s * y), amp * (s * x + c * y)]
        e_plus, e_minus = gr.cis(alpha), gr.cis(-alpha)
        odd = []
        for mu in range(m):
            th = GrassmannElement.generator(N, 2 * mu)
            thb = GrassmannElement.generator(N, 2 * mu + 1)
            zeta = amp * e_plus * th
            zetab = amp * e_minus * thb
            odd += [(zeta + zetab) * 0.5, (zeta - zetab) * (-0.5j)]
        return even + odd

    names = ("alpha",) + tuple(f"{p}{a + 1}" for a in range(n) for p in ("x", "y"))
    domains = ((0.0, 2 * math.pi),) + ((-math.inf, math.inf),) * (2 * n)
    return SuperChart(names, domains, 2 * m, parities, G, embed)


__all__ = [
    "ChartError",
    "SuperChart",
    "odd_pair_metric",
    "standard_ambient",
    "chart_jacobian",
    "pullback_metric",
    "hyperspherical",
    "sphere_chart",
    "hopf_chart",
]
