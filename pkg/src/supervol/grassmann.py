"""Finite Grassmann algebras over the complex numbers.

An element of the algebra on ``N`` odd generators is stored as a sparse map
from generator subsets to coefficients.  A subset is encoded as a bitmask
(bit ``i`` set means generator ``i`` is present) and always denotes the
monomial with its generators in ascending order.

Coefficients are duck-typed.  Python numbers, :class:`fractions.Fraction`,
sympy Gaussian rationals and numpy arrays all work; the latter give a
"batched" element whose coefficients are evaluated at many quadrature nodes
at once.  Exact coefficient types make every operation below exact.
"""
from __future__ import annotations

import enum
import math
import numbers
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

MAX_GENERATORS = 16

# Complex conjugation is an antilinear *homomorphism*: (ab)* = a* b*.
# With this rule i*theta*conj(theta) and 2*xi*eta are real.
CONJUGATION_REVERSES_PRODUCTS = False


class GrassmannError(ValueError):
    pass


class NonInvertibleError(GrassmannError):
    pass


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    INHOMOGENEOUS = "inhomogeneous"

    def __add__(self, other: "Parity") -> "Parity":
        if Parity.INHOMOGENEOUS in (self, other):
            return Parity.INHOMOGENEOUS
        return Parity.EVEN if self is other else Parity.ODD

    @property
    def bit(self) -> int:
        if self is Parity.INHOMOGENEOUS:
            raise GrassmannError("inhomogeneous element has no parity bit")
        return 0 if self is Parity.EVEN else 1


def is_zero(c) -> bool:
    if isinstance(c, np.ndarray):
        return not c.any()
    return not c


def to_complex(c) -> complex:
    try:
        return complex(c)
    except TypeError:
        # sympy Gaussian rationals
        return complex(float(c.x), float(c.y))


def _conj_coeff(c):
    if isinstance(c, np.ndarray):
        return np.conj(c)
    conj = getattr(c, "conjugate", None)
    if conj is not None:
        return conj()
    # sympy Gaussian rationals expose the parts as .x, .y
    return type(c)(c.x, -c.y)


@lru_cache(maxsize=1 << 16)
def merge_sign(ma: int, mb: int) -> int:
    """Sign of reordering theta_A theta_B into ascending order (A, B disjoint)."""
    swaps = 0
    b = mb
    while b:
        low = b & -b
        j = low.bit_length() - 1
        swaps += (ma >> (j + 1)).bit_count()
        b ^= low
    return -1 if swaps & 1 else 1


def _permutation_sign(seq: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions & 1 else 1


def _mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class GrassmannElement:
    """Immutable element of the Grassmann algebra on ``n`` generators."""

    __slots__ = ("_n", "_terms")
    # let ndarray * element dispatch to __rmul__ instead of broadcasting
    __array_ufunc__ = None

    def __init__(self, n: int, terms: Mapping[int, object] | None = None):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise GrassmannError(f"number of generators must be a non-negative integer, got {n!r}")
        if n > MAX_GENERATORS:
            raise GrassmannError(f"at most {MAX_GENERATORS} generators are supported, got {n}")
        clean = {}
        for mask, c in (terms or {}).items():
            mask = int(mask)
            if mask < 0 or mask >> n:
                raise GrassmannError(f"mask {mask:#b} uses generators outside [0, {n})")
            if not is_zero(c):
                clean[mask] = c
        self._n = int(n)
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "GrassmannElement":
        obj = object.__new__(cls)
        obj._n = n
        obj._terms = {k: v for k, v in terms.items() if not is_zero(v)}
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def scalar(cls, n: int, value) -> "GrassmannElement":
        return cls(n, {0: value})

    @classmethod
    def zero(cls, n: int) -> "GrassmannElement":
        return cls(n)

    @classmethod
    def generator(cls, n: int, i: int, coefficient=1) -> "GrassmannElement":
        if not 0 <= i < n:
            raise GrassmannError(f"generator index {i} outside [0, {n})")
        return cls(n, {1 << i: coefficient})

    @classmethod
    def monomial(cls, n: int, indices: Sequence[int], coefficient=1) -> "GrassmannElement":
        """``coefficient * theta_{i1} theta_{i2} ...`` in the order given."""
        if len(set(indices)) != len(indices):
            return cls(n)
        for i in indices:
            if not 0 <= i < n:
                raise GrassmannError(f"generator index {i} outside [0, {n})")
        sign = _permutation_sign(list(indices))
        return cls(n, {_mask_of(indices): coefficient if sign > 0 else -coefficient})

    # -- accessors ----------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    num_generators = n

    @property
    def terms(self) -> Mapping[int, object]:
        return MappingProxyType(self._terms)

    def coefficient(self, mask: int):
        return self._terms.get(mask, 0)

    @property
    def body(self):
        return self._terms.get(0, 0)

    @property
    def soul(self) -> "GrassmannElement":
        return GrassmannElement._raw(self._n, {m: c for m, c in self._terms.items() if m})

    @property
    def parity(self) -> Parity:
        odd = even = False
        for m in self._terms:
            if m.bit_count() & 1:
                odd = True
            else:
                even = True
        if odd and even:
            return Parity.INHOMOGENEOUS
        return Parity.ODD if odd else Parity.EVEN

    @property
    def is_even(self) -> bool:
        return self.parity is Parity.EVEN

    @property
    def is_odd(self) -> bool:
        # zero counts as both even and odd
        return not self._terms or self.parity is Parity.ODD

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def grade(self, k: int) -> "GrassmannElement":
        return GrassmannElement._raw(self._n, {m: c for m, c in self._terms.items() if m.bit_count() == k})

    def embed(self, n: int) -> "GrassmannElement":
        """The same element viewed in an algebra with ``n >= self.n`` generators."""
        if n < self._n:
            raise GrassmannError("cannot embed into a smaller algebra")
        return GrassmannElement._raw(n, dict(self._terms))

    def map_coefficients(self, f: Callable) -> "GrassmannElement":
        return GrassmannElement._raw(self._n, {m: f(c) for m, c in self._terms.items()})

    def max_abs(self) -> float:
        """Largest coefficient modulus (over all batch entries)."""
        best = 0.0
        for c in self._terms.values():
            v = float(np.max(np.abs(c))) if isinstance(c, np.ndarray) else abs(to_complex(c))
            best = max(best, v)
        return best

    def allclose(self, other, rtol: float = 1e-12, atol: float = 1e-12) -> bool:
        other = self._coerce(other)
        diff = (self - other).max_abs()
        scale = max(self.max_abs(), other.max_abs())
        return diff <= atol + rtol * scale

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            if other._n != self._n:
                raise GrassmannError(f"mismatched generator counts {self._n} and {other._n}")
            return other
        return GrassmannElement._raw(self._n, {0: other})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return GrassmannElement._raw(self._n, out)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement._raw(self._n, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            return product(self, other)
        return GrassmannElement._raw(self._n, {m: c * other for m, c in self._terms.items()})

    def __rmul__(self, other):
        if isinstance(other, GrassmannElement):
            return product(other, self)
        return GrassmannElement._raw(self._n, {m: other * c for m, c in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, GrassmannElement):
            return product(self, inverse(other))
        return GrassmannElement._raw(self._n, {m: c / other for m, c in self._terms.items()})

    def __rtruediv__(self, other):
        return self._coerce(other) * inverse(self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise GrassmannError("only non-negative integer powers are defined")
        result = GrassmannElement.scalar(self._n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, GrassmannElement):
            if other._n != self._n or set(other._terms) != set(self._terms):
                return False
            for m, c in self._terms.items():
                d = other._terms[m]
                if isinstance(c, np.ndarray) or isinstance(d, np.ndarray):
                    if not np.array_equal(np.broadcast_to(c, np.shape(d)) if np.ndim(c) == 0 else c, d):
                        return False
                elif c != d:
                    return False
            return True
        if isinstance(other, numbers.Number):
            return self == self._coerce(other)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return f"GrassmannElement(n={self._n}, 0)"
        parts = []
        for m in sorted(self._terms, key=lambda k: (k.bit_count(), k)):
            name = "".join(f"θ{i}" for i in _bits(m)) or "1"
            parts.append(f"({self._terms[m]!r}){name}" if m else f"({self._terms[m]!r})")
        return f"GrassmannElement(n={self._n}, " + " + ".join(parts) + ")"


def product(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Supercommutative product; generators anticommute."""
    if a.n != b.n:
        raise GrassmannError(f"mismatched generator counts {a.n} and {b.n}")
    out: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            if ma & mb:
                continue
            v = ca * cb
            if merge_sign(ma, mb) < 0:
                v = -v
            m = ma | mb
            out[m] = out[m] + v if m in out else v
    return GrassmannElement._raw(a.n, out)


def body_soul(a: GrassmannElement):
    return a.body, a.soul


def taylor_lift(f_derivatives: Sequence, a: GrassmannElement) -> GrassmannElement:
    """Evaluate a smooth function on an even element.

    ``f_derivatives[j]`` is the j-th derivative of the function at ``body(a)``.
    The Taylor series in the soul terminates, so the result is exact provided
    enough derivatives are supplied.
    """
    if not a.is_even:
        raise GrassmannError("taylor_lift needs an even element")
    if len(f_derivatives) == 0:
        raise GrassmannError("empty derivative list")
    soul = a.soul
    result = GrassmannElement.scalar(a.n, f_derivatives[0])
    power = GrassmannElement.scalar(a.n, 1)
    j = 0
    while True:
        j += 1
        power = power * soul
        if power.is_zero:
            return result
        if j >= len(f_derivatives):
            raise GrassmannError(
                f"derivative list of length {len(f_derivatives)} is too short: soul^{j} is nonzero"
            )
        result = result + power * (f_derivatives[j] / math.factorial(j))


def nilpotency_bound(a: GrassmannElement) -> int:
    """An upper bound k with soul(a)^(k+1) = 0."""
    if a.is_even:
        return a.n // 2
    return a.n


def _check_index(a: GrassmannElement, i: int):
    if not 0 <= i < a.n:
        raise GrassmannError(f"generator index {i} outside [0, {a.n})")


def odd_derivative(a: GrassmannElement, generator: int, side: str = "left") -> GrassmannElement:
    _check_index(a, generator)
    if side not in ("left", "right"):
        raise GrassmannError(f"side must be 'left' or 'right', got {side!r}")
    bit = 1 << generator
    out = {}
    for m, c in a._terms.items():
        if not m & bit:
            continue
        if side == "left":
            passes = (m & (bit - 1)).bit_count()
        else:
            passes = (m >> (generator + 1)).bit_count()
        out[m ^ bit] = -c if passes & 1 else c
    return GrassmannElement._raw(a.n, out)


def berezin_integrate(a: GrassmannElement, generators: Sequence[int]) -> GrassmannElement:
    """Berezin integral over the listed generators.

    Normalised by ``∫ D(θ1, ..., θk) θk ... θ1 = 1``, i.e. the integral is the
    composition of left derivatives ``∂_{θ1} ... ∂_{θk}``.
    """
    generators = list(generators)
    if len(set(generators)) != len(generators):
        raise GrassmannError("repeated generator in Berezin integral")
    for g in reversed(generators):
        a = odd_derivative(a, g, "left")
    return a


def inverse(a: GrassmannElement) -> GrassmannElement:
    """Inverse of any element with invertible body: b^-1 sum_k (-s/b)^k."""
    b = a.body
    if isinstance(b, np.ndarray):
        if not np.all(b != 0):
            raise NonInvertibleError("non-invertible: body vanishes at some batch entries")
    elif is_zero(b):
        raise NonInvertibleError("non-invertible: zero body")
    inv_b = Fraction(1, int(b)) if isinstance(b, (int, np.integer)) else 1 / b
    step = a.soul * (-inv_b)
    result = GrassmannElement.scalar(a.n, 1)
    power = result
    while True:
        power = power * step
        if power.is_zero:
            break
        result = result + power
    return result * inv_b


def even_inverse(a: GrassmannElement) -> GrassmannElement:
    if not a.is_even:
        raise GrassmannError("even_inverse needs an even element")
    return inverse(a)


def conjugate(a: GrassmannElement, pairing: Sequence[int]) -> GrassmannElement:
    """Complex conjugation swapping each generator with its declared partner.

    ``pairing[i]`` is the partner of generator ``i``; a generator paired with
    itself is real.  Coefficients are conjugated and products are *not*
    reversed (see ``CONJUGATION_REVERSES_PRODUCTS``).
    """
    if len(pairing) != a.n:
        raise GrassmannError(f"pairing must list a partner for each of the {a.n} generators")
    for i, p in enumerate(pairing):
        if not 0 <= p < a.n or pairing[p] != i:
            raise GrassmannError(f"generator {i} is unpaired (pairing is not an involution)")
    out = {}
    for m, c in a._terms.items():
        images = [pairing[i] for i in _bits(m)]
        if CONJUGATION_REVERSES_PRODUCTS:
            images.reverse()
        sign = _permutation_sign(images)
        cc = _conj_coeff(c)
        out[_mask_of(images)] = cc if sign > 0 else -cc
    return GrassmannElement._raw(a.n, out)


# -- elementary functions lifted to even elements ----------------------------


def _derivs(a: GrassmannElement, gen: Callable[[object, int], list]):
    return taylor_lift(gen(a.body, nilpotency_bound(a)), a)


def exp(a: GrassmannElement) -> GrassmannElement:
    def gen(x0, k):
        return [np.exp(x0)] * (k + 1)

    return _derivs(a, gen)


def power(a: GrassmannElement, p: float) -> GrassmannElement:
    """``a**p`` for real or complex ``p`` (principal branch for the body)."""

    def gen(x0, k):
        out = []
        coeff = 1.0
        for j in range(k + 1):
            out.append(coeff * x0 ** (p - j))
            coeff *= p - j
        return out

    return _derivs(a, gen)


def sqrt(a: GrassmannElement) -> GrassmannElement:
    return power(a, 0.5)


def sin(a: GrassmannElement) -> GrassmannElement:
    def gen(x0, k):
        s, c = np.sin(x0), np.cos(x0)
        cycle = [s, c, -s, -c]
        return [cycle[j % 4] for j in range(k + 1)]

    return _derivs(a, gen)


def cos(a: GrassmannElement) -> GrassmannElement:
    def gen(x0, k):
        s, c = np.sin(x0), np.cos(x0)
        cycle = [c, -s, -c, s]
        return [cycle[j % 4] for j in range(k + 1)]

    return _derivs(a, gen)


def cis(a: GrassmannElement) -> GrassmannElement:
    """``exp(i a)``."""

    def gen(x0, k):
        e = np.exp(1j * x0)
        return [e * (1j) ** j for j in range(k + 1)]

    return _derivs(a, gen)


# -- serialization -----------------------------------------------------------


def to_json(a: GrassmannElement) -> dict:
    terms = []
    for m in sorted(a._terms):
        c = a._terms[m]
        if isinstance(c, np.ndarray):
            raise GrassmannError("batched elements cannot be serialized")
        z = to_complex(c)
        terms.append({"mask": m, "re": z.real, "im": z.imag})
    return {"N": a.n, "terms": terms}


def from_json(data: Mapping) -> GrassmannElement:
    terms = {}
    for t in data["terms"]:
        z = complex(t["re"], t["im"])
        terms[int(t["mask"])] = z
    return GrassmannElement(int(data["N"]), terms)
