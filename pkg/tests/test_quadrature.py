import math

import numpy as np
import pytest

from qmod import CavityParams, FreeSpaceParams, big_gamma_closed, choose_truncation, gamma_t
from qmod.quadrature import (
    QuadratureError,
    QuadratureSpec,
    bessel_integral_oracle,
    brute_sum_gamma,
    integrate,
)


def test_constant():
    val, err = integrate(lambda x: 2.5, 0.0, 7.0)
    assert val == pytest.approx(17.5, abs=1e-12)
    assert err <= 1e-12


def test_cos_full_period():
    val, _ = integrate(math.cos, 0.0, 2 * math.pi)
    assert abs(val) <= 1e-12


def test_vectorized_matches_scalar():
    f = lambda x: np.exp(-x) * np.sin(3 * x)
    a = integrate(f, 0, 5, vectorized=True)[0]
    b = integrate(lambda x: math.exp(-x) * math.sin(3 * x), 0, 5)[0]
    assert a == b
    exact = (3 - math.exp(-5) * (3 * math.cos(15) + math.sin(15))) / 10
    assert a == pytest.approx(exact, abs=1e-12)


def test_error_estimate_bound():
    spec = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-8)
    val, err = integrate(lambda x: 1 / (1 + x * x), 0, 10, spec)
    assert err <= max(spec.abs_tol, spec.rel_tol * abs(val))
    assert val == pytest.approx(math.atan(10), abs=1e-10)


def test_non_convergence_reported():
    with pytest.raises(QuadratureError):
        integrate(lambda x: math.sin(1 / x) if x else 0.0, 0, 1,
                  QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15, max_depth=6))


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(max_depth=61)
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0)


def test_empty_interval_and_order():
    assert integrate(math.exp, 1.0, 1.0) == (0.0, 0.0)
    with pytest.raises(ValueError):
        integrate(math.exp, 2.0, 1.0)


def test_bessel_oracle_trivial():
    assert bessel_integral_oracle(0, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert abs(bessel_integral_oracle(5, 0.0)) <= 1e-15


def test_gamma_integral_matches_closed_form(fig2):
    p = CavityParams(**{**fig2.__dict__, "chi": 50.0})
    trunc = choose_truncation(p, 1e-8, 40.0)
    val, _ = integrate(lambda t: gamma_t(p, trunc, t), 0, 30, vectorized=True)
    assert abs(val - big_gamma_closed(p, trunc, 30.0)) <= 1e-8 * abs(val)


def test_brute_cavity_trivial():
    p = CavityParams(g=0.4, kappa=1.3, delta_c=0.2, omega=0.3, chi=0.0)
    gbar0 = p.gamma0 * p.kappa**2 / (p.kappa**2 + p.delta_c**2)
    assert brute_sum_gamma(p, 2.0, 5) == pytest.approx(gbar0, abs=1e-15)


def test_brute_bounds():
    with pytest.raises(ValueError):
        brute_sum_gamma(CavityParams(chi=1.0), 0.0, 65)
    with pytest.raises(ValueError):
        brute_sum_gamma(FreeSpaceParams(n0=9), 0.0)
    with pytest.raises(ValueError):
        brute_sum_gamma(CavityParams(chi=1.0), 0.0)


def test_oracle_does_not_import_fast_paths():
    import qmod.quadrature as q
    src = open(q.__file__).read()
    assert "from .cavity" not in src and "from .freespace" not in src


def test_deterministic():
    p = CavityParams(chi=7.3, phi=0.4)
    assert brute_sum_gamma(p, 3.3, 20) == brute_sum_gamma(p, 3.3, 20)
