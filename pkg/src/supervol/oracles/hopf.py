"""Checks of the Hopf fibration S^{2n+1|2m} -> CP^{n|m}.

Two levels: the closed forms (vol S^{2n+1|2m} = vol CP^{n|m} * 2 pi R and
the identity of normalized volumes at complex z), and the volume elements
themselves, compared pointwise on the Hopf chart.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .. import grassmann as gr
from ..grassmann import GrassmannElement
from ..superlinalg import berezinian
from ..volumes import cp_volume, hopf_identity_residual, sphere_volume
from .charts import hopf_chart, pullback_metric


@dataclass
class HopfReport:
    n: int
    m: int
    R: float
    sphere: complex
    fibred: complex
    both_exact_zero: bool
    closed_form_residual: float
    max_identity_residual: float
    worst_z: complex | None = None
    passed: bool = False
    samples: int = 0


def hopf_factorization_check(
    n: int, m: int, R: float = 1.0, samples: int = 100, tol: float = 1e-12, z_radius: float = 5.0, seed: int = 0
) -> HopfReport:
    """vol(S^{2n+1|2m}_R) = vol(CP^{n|m}_R) * 2 pi R, plus the normalized
    identity V(S; R, 2z+1) = V(CP; R, z) V(S; R, 1) at random complex z
    with |z| <= z_radius."""
    s = sphere_volume(2 * n + 1, m, R)
    c = cp_volume(n, m, R)
    fibred = c.value * 2 * math.pi * R
    both_zero = s.is_exact_zero and c.is_exact_zero
    if s.is_exact_zero or c.is_exact_zero:
        res = 0.0 if both_zero else math.inf
    else:
        res = abs(s.value - fibred) / abs(s.value)
    rng = random.Random(seed)
    worst, worst_z = 0.0, None
    for _ in range(samples):
        z = cmath.rect(z_radius * math.sqrt(rng.random()), rng.uniform(0, 2 * math.pi))
        r = hopf_identity_residual(z, R)
        if r > worst or worst_z is None:
            worst, worst_z = r, z
    passed = res <= tol and worst <= tol
    return HopfReport(n, m, R, s.value, fibred, both_zero, res, worst, worst_z, passed, samples)


def _fubini_study_n(n: int, m: int, point) -> GrassmannElement:
    N = 2 * m
    Nel = GrassmannElement.scalar(N, 1.0 + sum(x * x for x in point[1:]))
    for mu in range(m):
        Nel = Nel + GrassmannElement.monomial(N, [2 * mu, 2 * mu + 1], 1j)
    return Nel


def expected_sphere_density(n: int, m: int, R: float, point) -> GrassmannElement:
    """R * (CP density) in [d alpha, dx, dy | d theta, d theta-bar]:
    R^(2n+1-2m) (-2i)^m / N^(n-m+1)."""
    return gr.power(_fubini_study_n(n, m, point), -(n - m + 1)) * (float(R) ** (2 * n + 1 - 2 * m) * (-2j) ** m)


@dataclass
class CavalieriReport:
    n: int
    m: int
    R: float
    max_rel_residual: float
    points: list = field(default_factory=list)


def cavalieri_check(n: int, m: int, R: float = 1.0, points: int = 8, seed: int = 0) -> CavalieriReport:
    """Compare Ber of the induced metric on the Hopf chart of S^{2n+1|2m}_R
    with the square of R times the CP^{n|m} volume element, pointwise.

    Squares are compared so that the result does not depend on a choice of
    square-root branch for the complex odd coordinates.
    """
    chart = hopf_chart(n, m, R)
    rng = np.random.default_rng(seed)
    worst = 0.0
    used = []
    for _ in range(points):
        pt = [float(rng.uniform(0, 2 * math.pi))] + [float(v) for v in rng.normal(0, 1.0, 2 * n)]
        ber = berezinian(pullback_metric(chart, pt))
        expect = expected_sphere_density(n, m, R, pt)
        expect = expect * expect
        worst = max(worst, (ber - expect).max_abs() / expect.max_abs())
        used.append(pt)
    return CavalieriReport(n, m, R, worst, used)


__all__ = [
    "HopfReport",
    "CavalieriReport",
    "hopf_factorization_check",
    "cavalieri_check",
    "expected_sphere_density",
]
