"""Complex Gamma, reciprocal Gamma, log-Gamma and Barnes G.

Zeros that come from poles of Gamma (or zeros of Barnes G) are reported as
*exact* zeros, never inferred from floating-point smallness.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)

# zeta'(-1) = 1/12 - log(Glaisher's constant)
_ZETA_PRIME_M1 = -0.16542114370045092921
# B_4, B_6, ..., B_26
_BERNOULLI_EVEN = (
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
    Fraction(8553103, 6),
)
_BARNES_ASYMPTOTIC_MIN_RE = 20.0


class PoleError(ValueError):
    """Raised when Gamma or log-Gamma is evaluated at a pole."""


@dataclass(frozen=True)
class AnalyticValue:
    """A complex value that may be an exact zero of known order."""

    value: complex
    is_exact_zero: bool = False
    zero_order: int = 0

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if self.is_exact_zero:
            if self.value != 0:
                raise ValueError("an exact zero must have value 0")
            if self.zero_order < 1:
                object.__setattr__(self, "zero_order", 1)
        elif self.zero_order:
            raise ValueError("zero_order is only meaningful for exact zeros")

    @classmethod
    def exact_zero(cls, order: int = 1) -> "AnalyticValue":
        return cls(0j, True, order)

    def __mul__(self, other):
        if isinstance(other, AnalyticValue):
            order = self.zero_order + other.zero_order
            if order:
                return AnalyticValue.exact_zero(order)
            return AnalyticValue(self.value * other.value)
        if isinstance(other, Number):
            if self.is_exact_zero:
                return self
            return AnalyticValue(self.value * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, AnalyticValue):
            if other.is_exact_zero:
                raise ZeroDivisionError("division by an exact zero")
            if self.is_exact_zero:
                return self
            return AnalyticValue(self.value / other.value)
        if isinstance(other, Number):
            return self * (1 / other)
        return NotImplemented

    def __complex__(self):
        return self.value

    def __abs__(self):
        return abs(self.value)


def _as_complex(z) -> complex:
    return complex(z)


def nonpositive_integer(z) -> int | None:
    """Return ``int(z)`` if z is exactly a non-positive integer, else None."""
    z = _as_complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        return int(z.real)
    return None


def positive_integer(z) -> int | None:
    z = _as_complex(z)
    if z.imag == 0 and z.real >= 1 and z.real == math.floor(z.real):
        return int(z.real)
    return None


def _sinpi_real(x: float) -> float:
    r = x - 2.0 * round(x / 2.0)  # r in [-1, 1], exact
    if r == 0 or abs(r) == 1:
        return 0.0 * (1 if r >= 0 else -1)
    if r == 0.5:
        return 1.0
    if r == -0.5:
        return -1.0
    return math.sin(math.pi * r)


def _cospi_real(x: float) -> float:
    r = abs(x - 2.0 * round(x / 2.0))
    if r == 0.5:
        return 0.0
    if r == 0:
        return 1.0
    if r == 1:
        return -1.0
    return math.cos(math.pi * r)


def sinpi(z) -> complex:
    """sin(pi z) with exact argument reduction."""
    z = _as_complex(z)
    y = math.pi * z.imag
    return complex(_sinpi_real(z.real) * math.cosh(y), _cospi_real(z.real) * math.sinh(y))


def _lanczos_log_gamma(z: complex) -> complex:
    # valid for Re z >= 0.5
    z = z - 1
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z)."""
    z = _as_complex(z)
    if nonpositive_integer(z) is not None:
        raise PoleError(f"log_gamma has a pole at {z.real:g}")
    if z.real >= 0.5:
        return _lanczos_log_gamma(z)
    # the principal branch satisfies log_gamma(z+1) = log_gamma(z) + log(z)
    k = math.ceil(0.5 - z.real)
    shift = sum(cmath.log(z + j) for j in range(k))
    return _lanczos_log_gamma(z + k) - shift


def gamma(z, on_pole: str = "raise") -> AnalyticValue:
    """Gamma(z).  At poles either raise :class:`PoleError` or return infinity."""
    z = _as_complex(z)
    if nonpositive_integer(z) is not None:
        if on_pole == "inf":
            return AnalyticValue(complex(math.inf, 0))
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    k = positive_integer(z)
    if k is not None and k <= 171:
        return AnalyticValue(float(math.factorial(k - 1)))
    if z.real >= 0.5:
        return AnalyticValue(cmath.exp(_lanczos_log_gamma(z)))
    # reflection
    return AnalyticValue(math.pi / (sinpi(z) * cmath.exp(_lanczos_log_gamma(1 - z))))


def reciprocal_gamma(z) -> AnalyticValue:
    """1/Gamma(z), an entire function with exact zeros at 0, -1, -2, ..."""
    z = _as_complex(z)
    if nonpositive_integer(z) is not None:
        return AnalyticValue.exact_zero(1)
    k = positive_integer(z)
    if k is not None and k <= 171:
        return AnalyticValue(1.0 / math.factorial(k - 1))
    if z.real >= 0.5:
        return AnalyticValue(cmath.exp(-_lanczos_log_gamma(z)))
    return AnalyticValue(sinpi(z) * cmath.exp(_lanczos_log_gamma(1 - z)) / math.pi)


def _log_barnes_g_asymptotic(z: complex) -> complex:
    """log G(z + 1) for large |z|, |arg z| < pi."""
    logz = cmath.log(z)
    z2 = z * z
    out = 0.5 * z2 * logz - 0.75 * z2 + z * _HALF_LOG_2PI - logz / 12.0 + _ZETA_PRIME_M1
    zpow = z2
    for k, b in enumerate(_BERNOULLI_EVEN, start=1):
        out += float(b) / (4 * k * (k + 1) * zpow)
        zpow *= z2
    return out


def log_barnes_g(z) -> complex:
    """A logarithm of G(z) (branch not normalised); z not a non-positive integer."""
    z = _as_complex(z)
    if nonpositive_integer(z) is not None:
        raise PoleError(f"G has a zero at {z.real:g}; its logarithm is undefined")
    k = max(0, math.ceil(_BARNES_ASYMPTOTIC_MIN_RE - z.real))
    # G(z) = G(z + k) / prod_{j<k} Gamma(z + j)
    shifted = _log_barnes_g_asymptotic(z + k - 1)
    return shifted - sum(log_gamma(z + j) for j in range(k))


def barnes_g(z) -> AnalyticValue:
    """Barnes G-function: G(1) = 1, G(z + 1) = G(z) Gamma(z).

    G has zeros at z = -k (k = 0, 1, 2, ...) of order k + 1.
    """
    z = _as_complex(z)
    k = nonpositive_integer(z)
    if k is not None:
        return AnalyticValue.exact_zero(1 - k)
    k = positive_integer(z)
    if k is not None and k <= 60:
        value = 1
        for j in range(1, k - 1):
            value *= math.factorial(j)
        return AnalyticValue(float(value))
    return AnalyticValue(cmath.exp(log_barnes_g(z)))


def double_factorial(n: int) -> int:
    """n!! for integers n >= -1."""
    if n < -1 or int(n) != n:
        raise ValueError(f"double factorial needs an integer n >= -1, got {n}")
    return math.prod(range(int(n), 0, -2))
