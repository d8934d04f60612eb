"""Two independent oracles for the volume of S^{n|2m}_R."""
from __future__ import annotations

import math
from fractions import Fraction

from ..grassmann import GrassmannElement, berezin_integrate, taylor_lift
from ..superlinalg import sqrt_berezinian_volume_density
from ..volumes import ParameterError
from .charts import pullback_metric, sphere_chart
from .quadrature import QuadratureSpec, integrate_box

MAX_DELTA_N = 8
MAX_CHART_N = 3
MAX_M = 2


def _check(n: int, m: int, R: float, max_n: int):
    if not (0 <= n <= max_n and 0 <= m <= MAX_M):
        raise ParameterError(f"oracle supports 0 <= n <= {max_n}, 0 <= m <= {MAX_M}; got n={n}, m={m}")
    if not R > 0:
        raise ParameterError(f"radius must be positive, got {R}")


def _falling(x: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out *= x - i
    return out


def delta_moments(n: int, m: int, R: float) -> list[float]:
    """I_j = int_0^inf r^n delta^(j)(r^2 - R^2) dr for j = 0..m.

    With u = r^2 this is (1/2)(-1)^j d^j/du^j u^((n-1)/2) at u = R^2.
    """
    half = Fraction(n - 1, 2)
    out = []
    for j in range(m + 1):
        c = _falling(half, j) * (-1) ** j / 2
        out.append(float(c) * float(R) ** (n - 1 - 2 * j))
    return out


def sphere_volume_delta(n: int, m: int, R: float = 1.0) -> float:
    """2R * int delta((x,x) + 2 xi.eta - R^2) over R^{n+1|2m}.

    The delta function is expanded in the nilpotent s = 2 xi.eta, the even
    integral is reduced radially and done in closed form, and the odd
    variables are Berezin-integrated.  The classical vol(S^n) factor comes
    from the standard library Gamma.
    """
    _check(n, m, R, MAX_DELTA_N)
    N = 2 * m
    s = GrassmannElement.zero(N)
    for i in range(m):
        s = s + GrassmannElement.monomial(N, [2 * i, 2 * i + 1], 2)
    # delta(r^2 - R^2 + s) = sum_j delta^(j)(r^2 - R^2) s^j / j!
    lifted = taylor_lift(delta_moments(n, m, R), s)
    odd = berezin_integrate(lifted, range(N)).body
    unit_sphere = 2.0 * math.pi ** ((n + 1) / 2) / math.gamma((n + 1) / 2)
    return 2.0 * R * unit_sphere * complex(odd).real


def sphere_volume_chart(n: int, m: int, R: float = 1.0, quad: QuadratureSpec | None = None) -> tuple[float, int]:
    """Volume of S^{n|2m}_R from the induced metric in angular charts.

    Returns (value, nodes per axis used).
    """
    _check(n, m, R, MAX_CHART_N)
    quad = quad or QuadratureSpec(nodes_per_axis=16)
    odd = range(2 * m)
    if n == 0:
        total = 0.0
        for sign in (1, -1):
            g = pullback_metric(sphere_chart(0, m, R, sign), [])
            total += complex(berezin_integrate(sqrt_berezinian_volume_density(g), odd).body).real
        return total, 0
    chart = sphere_chart(n, m, R)

    def density(coords):
        g = pullback_metric(chart, coords)
        return berezin_integrate(sqrt_berezinian_volume_density(g), odd).body

    value, nodes = integrate_box(density, chart.domains, quad)
    return value.real, nodes


__all__ = ["delta_moments", "sphere_volume_delta", "sphere_volume_chart"]
