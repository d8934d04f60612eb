import itertools
import math
import random

import jsonschema
import numpy as np
import pytest

from supervol.grassmann import GrassmannElement, to_complex
from supervol.oracles.charts import pullback_metric, sphere_chart, hopf_chart
from supervol.oracles.cp import cp_volume_chart
from supervol.oracles.gaussian import (
    GaussianError,
    gaussian_closed_form,
    gaussian_super_integral,
    random_admissible,
    standard_form,
)
from supervol.oracles.hopf import cavalieri_check, hopf_factorization_check
from supervol.oracles.quadrature import (
    QuadratureError,
    QuadratureSpec,
    gauss_legendre,
    integrate_box,
    integrate_hermite,
    sum_rule,
    tensor_grid,
)
from supervol.oracles.report import REPORT_SCHEMA, compare
from supervol.oracles.sphere import sphere_volume_chart, sphere_volume_delta
from supervol.oracles.u11 import u11_maurer_cartan
from supervol.superlinalg import SuperMatrix, is_supersymmetric
from supervol.volumes import ParameterError, cp_volume, sphere_volume


def _close(oracle, closed, rel=1e-6, abs_=1e-8):
    return abs(oracle - closed) <= max(abs_, rel * abs(closed))


class TestSphere:
    @pytest.mark.parametrize("n,m", list(itertools.product(range(4), range(3))))
    def test_both_oracles(self, n, m):
        for R in (0.7, 1.0):
            closed = sphere_volume(n, m, R)
            d = sphere_volume_delta(n, m, R)
            c, _ = sphere_volume_chart(n, m, R)
            assert _close(d, closed.value)
            assert _close(c, closed.value)
            if closed.is_exact_zero:
                assert abs(d) <= 1e-8 and abs(c) <= 1e-8

    def test_delta_beyond_chart_range(self):
        for n, m in itertools.product(range(4, 9), range(3)):
            assert _close(sphere_volume_delta(n, m, 1.3), sphere_volume(n, m, 1.3).value, rel=1e-12)

    def test_ranges(self):
        with pytest.raises(ParameterError):
            sphere_volume_chart(4, 0)
        with pytest.raises(ParameterError):
            sphere_volume_delta(2, 3)

    def test_chart_lies_on_sphere_and_metric_is_supersymmetric(self):
        rng = random.Random(1)
        for n, m in [(1, 1), (2, 1), (3, 2)]:
            chart = sphere_chart(n, m, 1.5)
            for _ in range(3):
                pt = [rng.uniform(0.1, 3.0) for _ in range(n)]
                assert chart.constraint_residual(pt) < 1e-12
                assert is_supersymmetric(pullback_metric(chart, pt), atol=1e-12)


class TestCP:
    @pytest.mark.parametrize("n,m", list(itertools.product(range(3), range(3))))
    @pytest.mark.parametrize("R", [0.5, 1.0, 2.0])
    def test_chart_oracle(self, n, m, R):
        closed = cp_volume(n, m, R)
        v, nodes = cp_volume_chart(n, m, R)
        assert _close(v, closed.value, rel=1e-10, abs_=1e-10)

    def test_polar_mode_agrees(self):
        v, _ = cp_volume_chart(1, 1, 1.0, QuadratureSpec(nodes_per_axis=48, radial=False))
        assert _close(v, 2 * math.pi, rel=1e-6)

    @pytest.mark.parametrize("radial", [True, False])
    def test_convergence_is_monotone(self, radial):
        closed = cp_volume(2, 1).value
        errs = []
        for k in (4, 8, 16, 32):
            v, _ = cp_volume_chart(2, 1, 1.0, QuadratureSpec(nodes_per_axis=k, radial=radial))
            errs.append(abs(v - closed))
        floor = 1e-13 * abs(closed)
        for a, b in zip(errs, errs[1:]):
            assert b < a or b <= floor

    def test_sphere_convergence_is_monotone(self):
        closed = sphere_volume(3, 1).value
        errs = [abs(sphere_volume_chart(3, 1, 1.0, QuadratureSpec(nodes_per_axis=k))[0] - closed) for k in (2, 4, 8, 16)]
        assert all(b < a or b < 1e-12 for a, b in zip(errs, errs[1:]))


class TestGaussian:
    def test_random_admissible_matches_closed_form(self):
        rng = random.Random(42)
        worst = 0.0
        for _ in range(200):
            p, pairs = rng.randint(0, 3), rng.randint(0, 2)
            if p + pairs == 0:
                p = 1
            Q = random_admissible(rng, p, pairs)
            a, b = gaussian_super_integral(Q), gaussian_closed_form(Q)
            worst = max(worst, (a - b).max_abs() / b.max_abs())
        assert worst <= 1e-8

    def test_standard_forms(self):
        assert _close(to_complex(gaussian_super_integral(standard_form(2, 1)).body), 2 * math.pi, rel=1e-14)
        assert _close(to_complex(gaussian_super_integral(standard_form(1, 0)).body), math.sqrt(math.pi), rel=1e-14)
        assert _close(to_complex(gaussian_super_integral(standard_form(0, 2)).body), 4.0, rel=1e-14)

    def test_rejects_bad_forms(self):
        with pytest.raises(GaussianError):
            gaussian_super_integral(SuperMatrix([[1.0, 0, 0], [0, 0, 1.0], [0, 1.0, 0]], 1, 2))
        with pytest.raises(GaussianError):
            gaussian_super_integral(SuperMatrix([[-1.0]], 1, 0))


class TestU11:
    def test_exact(self):
        res = u11_maurer_cartan(exact=True)
        assert res.identity_ok and res.constant
        assert res.density_value == -2j
        assert abs(res.density_value) == 2
        assert res.density.soul.is_zero
        assert res.total_volume == 0
        assert len(res.samples) == 15

    def test_float_mode(self):
        res = u11_maurer_cartan(exact=False)
        assert abs(res.density_value + 2j) < 1e-12
        assert abs(res.total_volume) < 1e-12


class TestHopf:
    @pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (1, 1), (2, 1), (0, 1), (2, 2)])
    @pytest.mark.parametrize("R", [0.5, 1.0, 2.0])
    def test_factorization(self, n, m, R):
        rep = hopf_factorization_check(n, m, R, samples=20)
        assert rep.passed

    @pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (1, 1), (2, 1)])
    def test_cavalieri(self, n, m):
        rep = cavalieri_check(n, m, 1.3, points=5)
        assert rep.max_rel_residual <= 1e-10

    def test_hopf_chart_on_sphere(self):
        chart = hopf_chart(1, 1, 2.0)
        assert chart.constraint_residual([0.4, 0.3, -1.2]) < 1e-12


class TestQuadrature:
    def test_legendre_exact_on_polynomials(self):
        x, w = gauss_legendre(-1.0, 2.0, 5)
        assert math.isclose(float(np.sum(w * x**9)), (2**10 - 1) / 10, rel_tol=1e-13)

    def test_hermite(self):
        v = integrate_hermite(lambda c: c[0] ** 2 + c[1] ** 2, 2, 6)
        assert abs(v - math.pi) < 1e-13

    def test_adaptive(self):
        v, k = integrate_box(lambda c: np.exp(c[0] * c[1]), [(0, 1), (0, 1)], QuadratureSpec(scheme="adaptive", nodes_per_axis=4))
        assert abs(v - 1.3179021514544038) < 1e-12
        assert k >= 8

    def test_adaptive_failure_is_reported(self):
        with pytest.raises(QuadratureError):
            integrate_box(lambda c: np.abs(c[0] - 0.3) ** -0.9, [(0, 1)], QuadratureSpec(scheme="adaptive", rel_tol=1e-14, abs_tol=1e-14))

    def test_threads_do_not_change_the_result(self, monkeypatch):
        coords, weights = tensor_grid([gauss_legendre(0, 1, 200)] * 2)
        f = lambda c: np.sin(c[0]) * np.cos(c[1])
        one = sum_rule(f, coords, weights, chunk=1000, threads=1)
        many = sum_rule(f, coords, weights, chunk=1000, threads=4)
        assert abs(one - many) < 1e-15
        monkeypatch.setenv("SUPERVOL_THREADS", "3")
        assert abs(sum_rule(f, coords, weights, chunk=1000) - one) < 1e-15

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(scheme="simpson")
        with pytest.raises(ValueError):
            QuadratureSpec(nodes_per_axis=1)


def test_report_schema():
    rep = compare("cp 1 1", 2 * math.pi, lambda: cp_volume_chart(1, 1))
    jsonschema.validate(rep.to_json(), REPORT_SCHEMA)
    assert rep.passed
    bad = compare("off", 1.0, lambda: (1.1, 0))
    assert not bad.passed and bad.to_json()["pass"] is False
