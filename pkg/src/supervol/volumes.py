"""Closed-form volumes of supermanifolds.

Every volume factors as ``gaussian_factor(dim) * normalized`` where the
normalized part depends only on the index-type variables z (and w) and on
the radius R.  Zeros coming from poles of Gamma or zeros of Barnes G are
tracked exactly through :class:`~supervol.special.AnalyticValue`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from numbers import Integral, Real

from .special import AnalyticValue, barnes_g, gamma, reciprocal_gamma

FAMILIES = ("sphere", "cp", "stiefel", "grassmannian", "unitary_group")
NORMALIZED_FAMILIES = ("sphere", "cp", "stiefel", "grassmannian")

_TWO_SQRT_PI = 2.0 * math.sqrt(math.pi)


class ParameterError(ValueError):
    """Invalid manifold parameters; the message names the violated bound."""


@dataclass(frozen=True, order=True)
class SuperDimension:
    """An element n|m of Z[Pi]/(Pi^2 - 1), written n + m*Pi.

    Products use Pi^2 = 1, so odd times odd contributes to the even part.
    """

    even: int
    odd: int = 0

    def __post_init__(self):
        for name in ("even", "odd"):
            v = getattr(self, name)
            if not isinstance(v, Integral) or isinstance(v, bool):
                raise TypeError(f"{name} must be an integer, got {v!r}")
            if v < 0:
                raise ValueError(f"{name} must be >= 0, got {v}")

    def _coerce(self, other):
        if isinstance(other, SuperDimension):
            return other
        if isinstance(other, Integral) and not isinstance(other, bool):
            return SuperDimension(int(other), 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SuperDimension(self.even + o.even, self.odd + o.odd)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SuperDimension(self.even - o.even, self.odd - o.odd)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SuperDimension(self.even * o.even + self.odd * o.odd, self.even * o.odd + self.odd * o.even)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SuperDimension(1, 0)
        for _ in range(k):
            out = out * self
        return out

    @property
    def index(self) -> int:
        """Image under the ring map n|m -> n - m."""
        return self.even - self.odd

    def parity_reversed(self) -> "SuperDimension":
        return SuperDimension(self.odd, self.even)

    def __str__(self):
        return f"{self.even}|{self.odd}"


def gaussian_factor(dim: SuperDimension) -> float:
    """g_{n|m} = (sqrt pi)^n (sqrt 2)^m."""
    return math.sqrt(math.pi) ** dim.even * math.sqrt(2.0) ** dim.odd


def _check_int(name: str, v) -> int:
    if isinstance(v, bool) or not isinstance(v, Integral):
        raise ParameterError(f"{name} must be an integer, got {v!r}")
    if v < 0:
        raise ParameterError(f"{name} must be >= 0, got {v}")
    return int(v)


def _check_radius(R) -> float:
    if isinstance(R, bool) or not isinstance(R, Real):
        raise ParameterError(f"radius must be a positive real, got {R!r}")
    R = float(R)
    if not math.isfinite(R) or R <= 0:
        raise ParameterError(f"radius must be a positive finite real, got {R}")
    return R


@dataclass(frozen=True)
class ManifoldSpec:
    """Which supermanifold, with its parameters and radius.

    ``sphere``: S^{n|2m};  ``cp``: CP^{n|m};  ``stiefel``: V_{r|s}(C^{n|m});
    ``grassmannian``: G_{r|s}(C^{n|m});  ``unitary_group``: U(n|m).
    """

    family: str
    n: int
    m: int = 0
    r: int = 0
    s: int = 0
    R: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"family must be one of {', '.join(FAMILIES)}; got {self.family!r}")
        for name in ("n", "m", "r", "s"):
            object.__setattr__(self, name, _check_int(name, getattr(self, name)))
        object.__setattr__(self, "R", _check_radius(self.R))
        if self.family in ("stiefel", "grassmannian"):
            if self.r > self.n:
                raise ParameterError(f"need r <= n, got r={self.r} > n={self.n}")
            if self.s > self.m:
                raise ParameterError(f"need s <= m, got s={self.s} > m={self.m}")
        elif self.r or self.s:
            raise ParameterError(f"family {self.family} takes no r/s parameters")

    def with_radius(self, R: float) -> "ManifoldSpec":
        return ManifoldSpec(self.family, self.n, self.m, self.r, self.s, R)


def dimension_of(spec: ManifoldSpec) -> SuperDimension:
    """Real superdimension of the manifold, via ring arithmetic."""
    n, m, r, s = spec.n, spec.m, spec.r, spec.s
    if spec.family == "sphere":
        return SuperDimension(n, 2 * m)
    if spec.family == "cp":
        return SuperDimension(2 * n, 2 * m)
    N = SuperDimension(n, m)
    if spec.family == "unitary_group":
        return N**2
    K = SuperDimension(r, s)
    if spec.family == "stiefel":
        return K * (2 * N - K)
    return 2 * K * (N - K)


def index_of(spec: ManifoldSpec) -> int:
    return dimension_of(spec).index


@dataclass(frozen=True)
class VolumeValue:
    """A closed-form volume together with its provenance."""

    spec: ManifoldSpec
    normalized: AnalyticValue
    dimension: SuperDimension
    gaussian_factor: float
    conjectural: bool = False
    value: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.normalized.value * self.gaussian_factor))

    @property
    def is_exact_zero(self) -> bool:
        return self.normalized.is_exact_zero

    @property
    def index(self) -> int:
        return self.dimension.index

    def to_json(self) -> dict:
        sp = self.spec
        return {
            "family": sp.family,
            "n": sp.n,
            "m": sp.m,
            "r": sp.r,
            "s": sp.s,
            "R": sp.R,
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "exact_zero": self.is_exact_zero,
            "index": self.index,
            "gaussian_factor": self.gaussian_factor,
            "conjectural": self.conjectural,
        }


# normalized (index-level) functions


def _rpow(R: float, z: complex) -> complex:
    """R**z on the principal branch, R > 0."""
    if isinstance(z, Integral):
        return float(R) ** int(z)
    z = complex(z)
    if z.imag == 0 and z.real == int(z.real):
        return float(R) ** int(z.real)
    return cmath.exp(z * math.log(R))


def _is_integer(z: complex) -> bool:
    z = complex(z)
    return z.imag == 0 and z.real == math.floor(z.real)


def normalized_sphere(z, R: float = 1.0) -> AnalyticValue:
    """R^z * 2 sqrt(pi) / Gamma((z + 1)/2)."""
    return reciprocal_gamma((complex(z) + 1) / 2) * (_rpow(R, z) * _TWO_SQRT_PI)


def normalized_cp(z, R: float = 1.0) -> AnalyticValue:
    """R^(2z) / Gamma(z + 1)."""
    return reciprocal_gamma(complex(z) + 1) * _rpow(R, 2 * complex(z))


def _barnes_ratio(z: complex, w: complex) -> AnalyticValue:
    """G(z - w + 1) / G(z + 1), continued through integer w by Gamma products."""
    if _is_integer(w):
        k = int(complex(w).real)
        out = AnalyticValue(1.0)
        if k >= 0:
            # prod_{j<k} 1 / Gamma(z - j)
            for j in range(k):
                out = out * reciprocal_gamma(z - j)
            return out
        # prod_{j=1}^{-k} Gamma(z + j)
        for j in range(1, -k + 1):
            out = out * gamma(z + j, on_pole="inf")
        return out
    den = barnes_g(z + 1)
    if den.is_exact_zero:
        return AnalyticValue(complex(math.inf, 0))
    return barnes_g(z - w + 1) / den


def normalized_stiefel(z, w, R: float = 1.0) -> AnalyticValue:
    """R^(w(2z - w)) (2 sqrt pi)^w G(z - w + 1) / G(z + 1)."""
    z, w = complex(z), complex(w)
    scale = _rpow(R, w * (2 * z - w)) * (_TWO_SQRT_PI**w if not _is_integer(w) else _TWO_SQRT_PI ** int(w.real))
    return _barnes_ratio(z, w) * scale


def normalized_grassmannian(z, w, R: float = 1.0) -> AnalyticValue:
    """R^(2w(z - w)) G(w + 1) G(z - w + 1) / G(z + 1).

    For integer w this is entire in z (G(w + 1) vanishes identically when
    w <= -1); for non-integer w it has poles where G(z + 1) vanishes.
    """
    z, w = complex(z), complex(w)
    scale = _rpow(R, 2 * w * (z - w))
    if _is_integer(w):
        return barnes_g(w + 1) * _barnes_ratio(z, w) * scale
    den = barnes_g(z + 1)
    if den.is_exact_zero:
        return AnalyticValue(complex(math.inf, 0))
    return (barnes_g(w + 1) * barnes_g(z - w + 1) / den) * scale


def normalized_volume(family: str, z, w=None, R: float = 1.0) -> complex:
    """The normalized volume function of a family, at complex arguments."""
    return normalized_value(family, z, w, R).value


def normalized_value(family: str, z, w=None, R: float = 1.0) -> AnalyticValue:
    R = _check_radius(R)
    if family == "sphere":
        return normalized_sphere(z, R)
    if family == "cp":
        return normalized_cp(z, R)
    if family not in ("stiefel", "grassmannian"):
        raise ParameterError(f"normalized family must be one of {', '.join(NORMALIZED_FAMILIES)}; got {family!r}")
    if w is None:
        raise ParameterError(f"family {family} needs w")
    if family == "stiefel":
        return normalized_stiefel(z, w, R)
    return normalized_grassmannian(z, w, R)


# closed forms


def _make(spec: ManifoldSpec, normalized: AnalyticValue, conjectural: bool = False) -> VolumeValue:
    dim = dimension_of(spec)
    return VolumeValue(spec, normalized, dim, gaussian_factor(dim), conjectural)


def sphere_volume(n: int, m: int, R: float = 1.0) -> VolumeValue:
    """Volume of S^{n|2m} of radius R: 2 R^(n-2m) pi^((n+1)/2) 2^m / Gamma((n+1)/2 - m)."""
    spec = ManifoldSpec("sphere", n, m, R=R)
    return _make(spec, normalized_sphere(spec.n - 2 * spec.m, spec.R))


def cp_volume(n: int, m: int, R: float = 1.0) -> VolumeValue:
    """Volume of CP^{n|m} of radius R: R^(2(n-m)) pi^n 2^m / Gamma(n - m + 1)."""
    spec = ManifoldSpec("cp", n, m, R=R)
    return _make(spec, normalized_cp(spec.n - spec.m, spec.R))


def _stiefel_s0(n: int, m: int, r: int, R: float) -> AnalyticValue:
    z = n - m
    out = AnalyticValue(_TWO_SQRT_PI**r * _rpow(R, r * (2 * z - r)))
    for j in range(r):
        out = out * reciprocal_gamma(z - j)
    return out


def stiefel_volume(n: int, m: int, r: int, s: int, R: float = 1.0) -> VolumeValue:
    """Volume of the Stiefel supermanifold V_{r|s}(C^{n|m}).

    Zero unless r = 0 or s = 0.  For s = 0 it is
    g_D R^(ind) (2 sqrt pi)^r G(n-m-r+1)/G(n-m+1); for r = 0 parity
    reversion maps it to V_{s|0}(C^{m|n}).
    """
    spec = ManifoldSpec("stiefel", n, m, r, s, R)
    if spec.r > 0 and spec.s > 0:
        return _make(spec, AnalyticValue.exact_zero())
    if spec.s == 0:
        return _make(spec, _stiefel_s0(spec.n, spec.m, spec.r, spec.R))
    return _make(spec, _stiefel_s0(spec.m, spec.n, spec.s, spec.R))


def stiefel_volume_product(n: int, m: int, r: int, R: float = 1.0) -> VolumeValue:
    """V_{r|0}(C^{n|m}) as the product of odd-sphere volumes S^{2(n-j)+1|2m}, j = 1..r."""
    spec = ManifoldSpec("stiefel", n, m, r, 0, R)
    out = AnalyticValue(1.0)
    g = 1.0
    for j in range(1, spec.r + 1):
        v = sphere_volume(2 * (spec.n - j) + 1, spec.m, spec.R)
        out = out * v.normalized
        g *= v.gaussian_factor
    dim = dimension_of(spec)
    # the sphere Gaussian factors multiply to g_D; keep the product's own rounding
    return VolumeValue(spec, out, dim, g)


def unitary_volume(n: int, m: int, R: float = 1.0) -> VolumeValue:
    """Volume of U(n|m) = V_{n|m}(C^{n|m}); zero whenever n, m > 0."""
    spec = ManifoldSpec("unitary_group", n, m, R=R)
    st = stiefel_volume(spec.n, spec.m, spec.n, spec.m, spec.R)
    return _make(spec, st.normalized)


def grassmannian_volume(n: int, m: int, r: int, s: int, R: float = 1.0) -> VolumeValue:
    """Expected volume of G_{r|s}(C^{n|m}); flagged conjectural.

    g_D R^(2w(z-w)) G(w+1) G(z-w+1) / G(z+1) with z = n - m, w = r - s.
    When z <= -1 the formula is read on the parity-reversed side
    G_{s|r}(C^{m|n}), i.e. at (-z, -w).
    """
    spec = ManifoldSpec("grassmannian", n, m, r, s, R)
    z, w = spec.n - spec.m, spec.r - spec.s
    if z < 0:
        z, w = -z, -w
    return _make(spec, normalized_grassmannian(z, w, spec.R), conjectural=True)


def volume(spec: ManifoldSpec) -> VolumeValue:
    """Dispatch on ``spec.family``."""
    f = spec.family
    if f == "sphere":
        return sphere_volume(spec.n, spec.m, spec.R)
    if f == "cp":
        return cp_volume(spec.n, spec.m, spec.R)
    if f == "stiefel":
        return stiefel_volume(spec.n, spec.m, spec.r, spec.s, spec.R)
    if f == "grassmannian":
        return grassmannian_volume(spec.n, spec.m, spec.r, spec.s, spec.R)
    return unitary_volume(spec.n, spec.m, spec.R)


def hopf_identity_residual(z, R: float = 1.0) -> float:
    """Relative residual of V(S; R, 2z+1) = V(CP; R, z) V(S; R, 1)."""
    lhs = normalized_sphere(2 * complex(z) + 1, R)
    rhs = normalized_cp(z, R) * normalized_sphere(1, R)
    if lhs.is_exact_zero or rhs.is_exact_zero:
        return 0.0 if lhs.is_exact_zero == rhs.is_exact_zero else math.inf
    return abs(lhs.value - rhs.value) / max(abs(lhs.value), abs(rhs.value))


__all__ = [
    "FAMILIES",
    "NORMALIZED_FAMILIES",
    "ParameterError",
    "SuperDimension",
    "ManifoldSpec",
    "VolumeValue",
    "gaussian_factor",
    "dimension_of",
    "index_of",
    "normalized_volume",
    "normalized_value",
    "normalized_sphere",
    "normalized_cp",
    "normalized_stiefel",
    "normalized_grassmannian",
    "sphere_volume",
    "cp_volume",
    "stiefel_volume",
    "stiefel_volume_product",
    "unitary_volume",
    "grassmannian_volume",
    "volume",
    "hopf_identity_residual",
]
