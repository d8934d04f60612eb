"""Tensor-product quadrature over boxes, with batched integrands.

Integrands receive a tuple of coordinate arrays (one per axis, all of the
same 1-D shape) and return an array of values at those points.  Nodes are
evaluated in chunks, optionally on a thread pool, and summed with
compensated summation.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

SCHEMES = ("gauss_legendre", "gauss_hermite", "adaptive")
DEFAULT_CHUNK = 1 << 14
MAX_ADAPTIVE_NODES = 512


class QuadratureError(RuntimeError):
    """Raised when an adaptive rule fails to reach its tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """How to integrate over the even variables.

    ``radial`` asks oracles that support it to reduce a rotation-invariant
    integrand to a single radial integral.
    """

    scheme: str = "gauss_legendre"
    nodes_per_axis: int = 32
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    radial: bool = True
    domain: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.nodes_per_axis < 2:
            raise ValueError(f"nodes_per_axis must be >= 2, got {self.nodes_per_axis}")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")

    def with_nodes(self, k: int) -> "QuadratureSpec":
        return replace(self, nodes_per_axis=k)


def max_threads() -> int:
    """Thread cap from SUPERVOL_THREADS (default 1)."""
    raw = os.environ.get("SUPERVOL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def gauss_legendre(a: float, b: float, k: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(k)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def gauss_hermite(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for the weight exp(-x^2) on the real line."""
    return np.polynomial.hermite.hermgauss(k)


def tensor_grid(rules: Sequence[tuple[np.ndarray, np.ndarray]]) -> tuple[list[np.ndarray], np.ndarray]:
    """Flattened tensor product of 1-D rules: (per-axis coordinates, weights)."""
    if not rules:
        return [], np.ones(1)
    mesh = np.meshgrid(*[r[0] for r in rules], indexing="ij")
    wmesh = np.meshgrid(*[r[1] for r in rules], indexing="ij")
    weights = np.prod(np.stack([w.ravel() for w in wmesh]), axis=0)
    return [m.ravel() for m in mesh], weights


def sum_rule(
    f: Callable[[tuple[np.ndarray, ...]], np.ndarray],
    coords: Sequence[np.ndarray],
    weights: np.ndarray,
    chunk: int = DEFAULT_CHUNK,
    threads: int | None = None,
) -> complex:
    """Sum of weights * f(coords), evaluated in chunks."""
    total = len(weights)
    if not coords:
        return complex(np.asarray(f(()), dtype=complex).reshape(-1)[0]) * float(weights[0])
    starts = list(range(0, total, chunk))

    def run(s):
        sl = slice(s, s + chunk)
        vals = np.broadcast_to(np.asarray(f(tuple(c[sl] for c in coords))), weights[sl].shape)
        return vals * weights[sl]

    threads = max_threads() if threads is None else threads
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(run, starts))
    else:
        parts = [run(s) for s in starts]
    allv = np.concatenate([np.asarray(p, dtype=complex) for p in parts])
    return complex(math.fsum(allv.real), math.fsum(allv.imag))


def integrate_box(
    f: Callable[[tuple[np.ndarray, ...]], np.ndarray],
    bounds: Sequence[tuple[float, float]],
    quad: QuadratureSpec,
) -> tuple[complex, int]:
    """Integrate f over a box; returns (value, nodes_per_axis actually used)."""
    if quad.scheme == "gauss_hermite":
        raise ValueError("gauss_hermite integrates over R^d; use integrate_hermite")
    if quad.scheme == "gauss_legendre":
        coords, weights = tensor_grid([gauss_legendre(a, b, quad.nodes_per_axis) for a, b in bounds])
        return sum_rule(f, coords, weights), quad.nodes_per_axis
    k = quad.nodes_per_axis
    prev = None
    while k <= MAX_ADAPTIVE_NODES:
        coords, weights = tensor_grid([gauss_legendre(a, b, k) for a, b in bounds])
        val = sum_rule(f, coords, weights)
        if prev is not None and abs(val - prev) <= max(quad.abs_tol, quad.rel_tol * abs(val)):
            return val, k
        prev = val
        k *= 2
        if not bounds:
            return val, k
    raise QuadratureError(f"adaptive rule did not converge with {MAX_ADAPTIVE_NODES} nodes per axis")


def integrate_hermite(
    f: Callable[[tuple[np.ndarray, ...]], np.ndarray],
    dim: int,
    nodes: int,
) -> complex:
    """Integrate exp(-|y|^2) f(y) over R^dim with a tensor Gauss-Hermite rule."""
    coords, weights = tensor_grid([gauss_hermite(nodes)] * dim)
    return sum_rule(f, coords, weights)


__all__ = [
    "SCHEMES",
    "QuadratureError",
    "QuadratureSpec",
    "max_threads",
    "gauss_legendre",
    "gauss_hermite",
    "tensor_grid",
    "sum_rule",
    "integrate_box",
    "integrate_hermite",
]
