import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from supervol.grassmann import GrassmannElement
from supervol.superlinalg import SuperMatrix


def random_element(rng: random.Random, n: int, parity: str | None = None, exact: bool = True, body=True):
    """Random element with small integer (or float) coefficients.

    parity: None (mixed), "even" or "odd".
    """
    masks = [
        m for m in range(1 << n)
        if parity is None or (m.bit_count() % 2 == (0 if parity == "even" else 1))
    ]
    if not body:
        masks = [m for m in masks if m]
    if not masks:
        return GrassmannElement.zero(n)
    terms = {}
    for m in rng.sample(masks, k=rng.randint(1, len(masks))):
        terms[m] = rng.randint(-3, 3) if exact else rng.uniform(-1, 1)
    return GrassmannElement(n, terms)


def random_even_supermatrix(rng: random.Random, p: int, q: int, n: int) -> SuperMatrix:
    """Random even supermatrix with integer coefficients and invertible body."""
    while True:
        rows = []
        for i in range(p + q):
            row = []
            for j in range(p + q):
                parity = "even" if (i < p) == (j < p) else "odd"
                e = random_element(rng, n, parity)
                if parity == "even":
                    e = e + (rng.randint(-2, 2) + (4 if i == j else 0))
                row.append(e)
            rows.append(row)
        M = SuperMatrix(rows, p, q, n)
        body = M.body()
        import numpy as np

        if abs(np.linalg.det(body[:p, :p])) > 0.5 and abs(np.linalg.det(body[p:, p:])) > 0.5:
            return M


@st.composite
def elements(draw, n=None, parity=None):
    n = draw(st.integers(0, 5)) if n is None else n
    masks = [
        m for m in range(1 << n)
        if parity is None or (m.bit_count() % 2 == (0 if parity == "even" else 1))
    ]
    if not masks:
        return GrassmannElement.zero(n)
    chosen = draw(st.lists(st.sampled_from(masks), unique=True, max_size=len(masks)))
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=len(chosen), max_size=len(chosen)))
    return GrassmannElement(n, dict(zip(chosen, coeffs)))


@pytest.fixture
def rng():
    return random.Random(20261016)


def frac(x):
    return Fraction(x)
