"""Haar density of U(1|1) from the right-invariant Maurer-Cartan form.

The parametrization is

    g(alpha, beta | theta) = [[E (1 + (i/2) theta theta-bar),  theta],
                              [i theta-bar F,  E^-1 (1 - (i/2) theta theta-bar) F]]

with E = e^{i alpha}, F = e^{i beta}.  Each (d_mu g) g^-1 is expanded in the
basis e1 = diag(i, 0), e2 = diag(0, i), eps1 = [[0, 1], [i, 0]],
eps2 = [[0, i], [1, 0]]; the Berezinian of the resulting 2|2 coefficient
matrix is the density in [d alpha, d beta | d theta, d theta-bar].

In exact mode the sample points are angles with rational cosine and sine,
so every coefficient is a Gaussian rational and all identities are exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy.polys.domains import QQ_I

from .. import grassmann as gr
from ..grassmann import GrassmannElement, to_complex
from ..superlinalg import SuperMatrix, berezinian, inverse, mat_mul

THETA, THETA_BAR = 0, 1

# unit complex numbers (cos + i sin) with rational parts
EXACT_PHASES = (
    (1, 0),
    (0, 1),
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(5, 13), Fraction(-12, 13)),
    (Fraction(-8, 17), Fraction(15, 17)),
)


class U11Error(RuntimeError):
    pass


class _Field:
    """Constants of the coefficient field."""

    def __init__(self, exact: bool):
        self.exact = exact
        if exact:
            self.one, self.i, self.half = QQ_I(1), QQ_I(0, 1), QQ_I(1) / QQ_I(2)
        else:
            self.one, self.i, self.half = 1.0 + 0j, 1j, 0.5

    def phase(self, value):
        if self.exact:
            c, s = value
            c, s = Fraction(c), Fraction(s)
            return QQ_I(c.numerator, 0) / QQ_I(c.denominator) + QQ_I(0, s.numerator) / QQ_I(s.denominator)
        return complex(math.cos(value), math.sin(value))


def _group_element(k: _Field, E: GrassmannElement, F: GrassmannElement, n: int) -> list[list[GrassmannElement]]:
    th = GrassmannElement.generator(n, THETA, k.one)
    thb = GrassmannElement.generator(n, THETA_BAR, k.one)
    tt = th * thb * (k.i * k.half)
    one = GrassmannElement.scalar(n, k.one)
    Einv = gr.inverse(E)
    return [[E * (one + tt), th], [thb * F * k.i, Einv * (one - tt) * F]]


def _phase_element(k: _Field, E0, n: int, augment: bool) -> GrassmannElement:
    """E0, or E0 (1 + i e e') when differentiating along the angle."""
    out = GrassmannElement.scalar(n, E0)
    if augment:
        out = out + GrassmannElement.monomial(n, [n - 2, n - 1], E0 * k.i)
    return out


def _strip(a: GrassmannElement, q: int) -> GrassmannElement:
    both = (1 << q) | (1 << (q + 1))
    return GrassmannElement(q, {m ^ both: c for m, c in a.terms.items() if m & both == both})


def maurer_cartan(k: _Field, E0, F0) -> tuple[list, SuperMatrix]:
    """(d_mu g) g^-1 for mu in (alpha, beta, theta, theta-bar), and g."""
    q, N = 2, 4
    derivs = []
    for which in ("alpha", "beta"):
        E = _phase_element(k, E0, N, which == "alpha")
        F = _phase_element(k, F0, N, which == "beta")
        gN = _group_element(k, E, F, N)
        derivs.append([[_strip(x, q) for x in row] for row in gN])
    g_rows = _group_element(k, GrassmannElement.scalar(q, E0), GrassmannElement.scalar(q, F0), q)
    for gen in (THETA, THETA_BAR):
        derivs.append([[gr.odd_derivative(x, gen, "left") for x in row] for row in g_rows])
    g = SuperMatrix(g_rows, 1, 1, q)
    ginv = inverse(g)
    forms = [mat_mul(d, [[ginv[i, j] for j in range(2)] for i in range(2)], q) for d in derivs]
    return forms, g


def expand_in_basis(k: _Field, M) -> tuple[list[GrassmannElement], float]:
    """Coefficients (c1, c2, c3, c4) of M in (e1, e2, eps1, eps2) and the
    recomposition residual."""
    i = k.i
    c1 = M[0][0] * (-i)
    c2 = M[1][1] * (-i)
    c3 = (M[0][1] - M[1][0] * i) * k.half
    c4 = (M[1][0] - M[0][1] * i) * k.half
    rec = [[c1 * i, c3 + c4 * i], [c3 * i + c4, c2 * i]]
    residual = max((rec[a][b] - M[a][b]).max_abs() for a in range(2) for b in range(2))
    return [c1, c2, c3, c4], residual


@dataclass
class U11Result:
    density: GrassmannElement
    total_volume: float
    samples: list = field(default_factory=list)
    max_residual: float = 0.0
    identity_ok: bool = True
    constant: bool = True

    @property
    def density_value(self) -> complex:
        return to_complex(self.density.body)


def u11_maurer_cartan(exact: bool = True, samples=None) -> U11Result:
    """Haar density of U(1|1) and its total volume.

    The density is the Berezinian of the Maurer-Cartan coefficient matrix at
    each sample (alpha, beta).  The total volume is the integral over
    [0, 2 pi]^2 of the Berezin integral over (theta, theta-bar); since the
    density is constant the latter is its top coefficient.
    """
    k = _Field(exact)
    if samples is None:
        samples = [(a, b) for a in EXACT_PHASES for b in EXACT_PHASES[::2]] if exact else [
            (0.3, 1.1), (2.0, -0.7), (4.5, 3.3), (0.0, 0.0)
        ]
    densities = []
    residual = 0.0
    identity_ok = True
    for a, b in samples:
        E0, F0 = k.phase(a), k.phase(b)
        forms, g = maurer_cartan(k, E0, F0)
        identity = g @ inverse(g)
        unit = SuperMatrix.identity(1, 1, 2)
        tol = 0.0 if exact else 1e-12
        identity_ok &= all((identity[i, j] - unit[i, j]).max_abs() <= tol for i in range(2) for j in range(2))
        rows = []
        for M in forms:
            coeffs, res = expand_in_basis(k, M)
            residual = max(residual, res)
            rows.append(coeffs)
        coef = SuperMatrix(rows, 2, 2, 2)
        densities.append(berezinian(coef))
    if residual > 1e-10:
        raise U11Error(f"basis expansion residual {residual:.3g} exceeds 1e-10")
    first = densities[0]
    constant = all((d - first).max_abs() <= (0 if exact else 1e-12) for d in densities)
    top = to_complex(gr.berezin_integrate(first, [THETA, THETA_BAR]).body)
    total = (2 * math.pi) ** 2 * top
    return U11Result(first, total.real if total.imag == 0 else total, densities, residual, identity_ok, constant)


__all__ = ["U11Error", "U11Result", "u11_maurer_cartan", "maurer_cartan", "expand_in_basis", "EXACT_PHASES"]
