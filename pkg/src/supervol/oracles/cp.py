"""Volume of CP^{n|m}_R by integrating the Fubini-Study volume element.

In the affine chart (w^1..w^n | theta^1..theta^m) the volume element is
R^(2(n-m)) (i/2)^(n-m) [dw, dw-bar | dtheta, dtheta-bar] / N^(n-m+1) with
N = 1 + |w|^2 + i theta.theta-bar.  The odd variables are Berezin-integrated
exactly; [dw, dw-bar] = (-2i) dx dy turns the rest into an ordinary integral
over C^n, which only depends on |w|^2.
"""
from __future__ import annotations

import math

import numpy as np

from .. import grassmann as gr
from ..grassmann import GrassmannElement
from ..volumes import ParameterError
from .quadrature import QuadratureSpec, integrate_box

MAX_N = 2
MAX_M = 2


def _odd_density(n: int, m: int, rho2) -> complex | np.ndarray:
    """Berezin integral over D(theta1, theta1-bar, ...) of N^-(n-m+1)."""
    N = 2 * m
    Nel = GrassmannElement.scalar(N, 1.0 + rho2)
    for mu in range(m):
        Nel = Nel + GrassmannElement.monomial(N, [2 * mu, 2 * mu + 1], 1j)
    dens = gr.power(Nel, -(n - m + 1))
    return gr.berezin_integrate(dens, range(N)).body


def cp_prefactor(n: int, m: int, R: float) -> complex:
    """R^(2(n-m)) (i/2)^(n-m) (-2i)^n."""
    return float(R) ** (2 * (n - m)) * (0.5j) ** (n - m) * (-2j) ** n


def _compactify(t):
    """rho = t / (1 - t) and d rho / dt."""
    one_minus = 1.0 - t
    return t / one_minus, 1.0 / one_minus**2


def cp_volume_chart(n: int, m: int, R: float = 1.0, quad: QuadratureSpec | None = None) -> tuple[complex, int]:
    """Volume of CP^{n|m}_R from one affine chart (the rest has measure zero).

    ``quad.radial`` reduces the integral over C^n to one radial integral
    using the classical vol(S^{2n-1}); otherwise each complex coordinate gets
    its own (radius, angle) pair.  Returns (value, nodes per axis).
    """
    if not (0 <= n <= MAX_N and 0 <= m <= MAX_M):
        raise ParameterError(f"oracle supports 0 <= n <= {MAX_N}, 0 <= m <= {MAX_M}; got n={n}, m={m}")
    if not R > 0:
        raise ParameterError(f"radius must be positive, got {R}")
    quad = quad or QuadratureSpec(nodes_per_axis=48)
    pref = cp_prefactor(n, m, R)
    if n == 0:
        return pref * complex(_odd_density(0, m, 0.0)), 0

    if quad.radial:
        # classical vol(S^{2n-1}) = 2 pi^n / (n-1)!
        shell = 2.0 * math.pi**n / math.factorial(n - 1)

        def radial(coords):
            rho, jac = _compactify(coords[0])
            return shell * rho ** (2 * n - 1) * jac * _odd_density(n, m, rho * rho)

        value, nodes = integrate_box(radial, [(0.0, 1.0)], quad)
        return pref * value, nodes

    def polar(coords):
        rho2 = 0.0
        weight = 1.0
        for a in range(n):
            rho, jac = _compactify(coords[2 * a])
            rho2 = rho2 + rho * rho
            weight = weight * rho * jac
        # the angles enter only through the measure
        return weight * _odd_density(n, m, rho2)

    bounds = [(0.0, 1.0), (0.0, 2 * math.pi)] * n
    value, nodes = integrate_box(polar, bounds, quad)
    return pref * value, nodes


__all__ = ["cp_prefactor", "cp_volume_chart"]
