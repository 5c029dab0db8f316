import math

import numpy as np
import pytest
from scipy.special import kv, zeta

from casimir_torus import oracle
from casimir_torus.errors import (
    DomainError,
    MissingTemperatureError,
    UnsupportedDimensionError,
)
from casimir_torus.pressure import (
    CavityConfig,
    Field,
    dirichlet_pressure,
    mixed_pressure,
    mixed_pressure_massless,
    normalized_vacuum_pressure,
    thermal_pressure,
    thermal_pressure_massless,
    total_pressure,
    vacuum_pressure,
    vacuum_pressure_massless,
)
from casimir_torus.series import SeriesControl

PI = math.pi
TIGHT = SeriesControl(abs_tol=1e-17, rel_tol=1e-15)
# light masses converge slowly in the double Bessel sum
LOOSE = SeriesControl(abs_tol=1e-7, rel_tol=1e-6)


def literal_vacuum_d4(m, L, terms=4000):
    n = np.arange(1, terms + 1, dtype=float)
    s = 3 * np.sum(kv(2, m * n * L) / n**2) + m * L * np.sum(kv(1, m * n * L) / n)
    return -(m**2) / (2 * PI**2 * L**2) * s


def test_config_validation():
    for bad in [dict(dimension=1), dict(dimension=2.5), dict(mass=-1), dict(length=0), dict(beta=0.0), dict(mass=math.inf)]:
        kwargs = dict(dimension=4, mass=0.0, length=1.0, beta=None) | bad
        with pytest.raises(DomainError):
            CavityConfig(**kwargs)


def test_missing_temperature():
    cfg = CavityConfig(4, 1.0, 1.0)
    with pytest.raises(MissingTemperatureError):
        thermal_pressure(cfg)
    with pytest.raises(MissingTemperatureError):
        thermal_pressure_massless(cfg)
    with pytest.raises(MissingTemperatureError):
        mixed_pressure(cfg)


def test_massive_path_rejects_zero_mass():
    with pytest.raises(DomainError):
        vacuum_pressure(CavityConfig(4, 0.0, 1.0))


# ---------------------------------------------------------------- vacuum


def test_vacuum_massless_d4():
    assert vacuum_pressure_massless(CavityConfig(4, 0, 1.0)) == pytest.approx(-(PI**2) / 30, rel=1e-14)
    assert vacuum_pressure_massless(CavityConfig(4, 0, 2.0)) == pytest.approx(-(PI**2) / 480, rel=1e-14)


def test_vacuum_massless_d3():
    # -2 Gamma(3/2) zeta(3) / pi^(3/2) = -zeta(3)/pi
    value = vacuum_pressure_massless(CavityConfig(3, 0, 1.0))
    assert value == pytest.approx(-zeta(3) / PI, rel=1e-14)
    assert value == pytest.approx(-0.382626596, rel=1e-8)
    assert vacuum_pressure(CavityConfig(3, 1e-8, 1.0)) == pytest.approx(value, rel=1e-7)


def test_vacuum_small_mass_d4():
    assert vacuum_pressure(CavityConfig(4, 1e-6, 1.0)) == pytest.approx(-(PI**2) / 30, rel=1e-5)


def test_vacuum_against_oracle(reference):
    ref = reference["vacuum_d4_m1_L1"]
    assert vacuum_pressure(CavityConfig(4, 1.0, 1.0), TIGHT) == pytest.approx(ref["value"], rel=1e-12)


@pytest.mark.parametrize("m", [0.1, 1, 5])
@pytest.mark.parametrize("L", [0.5, 1, 2])
def test_vacuum_d4_specialization(m, L):
    assert vacuum_pressure(CavityConfig(4, m, L), TIGHT) == pytest.approx(literal_vacuum_d4(m, L), rel=1e-12)


def test_vacuum_exponential_suppression():
    # at mL = 20 only the n = 1 term survives; n = 2 is down by another e^-20
    cfg = CavityConfig(4, 20.0, 1.0)
    first = -(20.0**2) / (2 * PI**2) * (3 * kv(2, 20.0) + 20.0 * kv(1, 20.0))
    assert vacuum_pressure(cfg) == pytest.approx(first, rel=1e-8)
    assert abs(vacuum_pressure(cfg)) < 1e-6 * abs(vacuum_pressure_massless(cfg))


def test_two_dimensions_light_mass_exhausts_budget():
    # at D = 2 the light-mass vacuum series decays only like n^-2
    from casimir_torus.errors import BudgetError

    with pytest.raises(BudgetError):
        vacuum_pressure(CavityConfig(2, 1e-6, 1.0))
    assert vacuum_pressure(CavityConfig(2, 2.0, 1.0)) < 0


@pytest.mark.parametrize("D", [3, 5, 6])
def test_general_dimension_small_mass(D):
    cfg = CavityConfig(D, 1e-6, 1.3, 0.9)
    massless = CavityConfig(D, 0.0, 1.3, 0.9)
    assert vacuum_pressure(cfg) == pytest.approx(vacuum_pressure_massless(massless), rel=1e-5)
    assert thermal_pressure(cfg) == pytest.approx(thermal_pressure_massless(massless), rel=1e-5)


# ---------------------------------------------------------------- thermal


def test_thermal_massless():
    assert thermal_pressure_massless(CavityConfig(4, 0, 1.0, 1.0)) == pytest.approx(PI**2 / 90, rel=1e-14)
    assert thermal_pressure_massless(CavityConfig(4, 0, 1.0, 2.0)) == pytest.approx(PI**2 / 1440, rel=1e-14)


def test_thermal_massless_d5():
    value = thermal_pressure_massless(CavityConfig(5, 0, 1.0, 1.0))
    assert value == pytest.approx(math.gamma(2.5) * zeta(5) / PI**2.5, rel=1e-14)
    assert value == pytest.approx(0.07879706, rel=1e-7)
    assert thermal_pressure(CavityConfig(5, 1e-8, 1.0, 1.0)) == pytest.approx(value, rel=1e-7)


def test_thermal_small_mass():
    assert thermal_pressure(CavityConfig(4, 1e-6, 1.0, 1.0)) == pytest.approx(PI**2 / 90, rel=1e-5)


def test_thermal_against_oracle(reference):
    ref = reference["thermal_d4_m1_beta1"]
    assert thermal_pressure(CavityConfig(4, 1.0, 1.0, 1.0), TIGHT) == pytest.approx(ref["value"], rel=1e-12)


def test_thermal_zero_temperature():
    assert abs(thermal_pressure(CavityConfig(4, 1.0, 1.0, 50.0))) < 1e-18


@pytest.mark.parametrize("x", [0.3, 1.0, 2.5, 7.0])
def test_thermal_vacuum_duality(x):
    thermal = thermal_pressure_massless(CavityConfig(4, 0, 1.0, x))
    vacuum = vacuum_pressure_massless(CavityConfig(4, 0, x))
    assert thermal == pytest.approx(-vacuum / 3, rel=1e-14)


# ---------------------------------------------------------------- mixed


def test_mixed_against_oracle(reference):
    ref = reference["mixed_d4_m1_L1_beta1"]
    assert mixed_pressure(CavityConfig(4, 1.0, 1.0, 1.0), TIGHT) == pytest.approx(ref["value"], rel=1e-12)


@pytest.mark.parametrize("L,beta", [(1.0, 2.0), (2.0, 1.0), (0.7, 1.3)])
def test_mixed_against_bruteforce(L, beta):
    ref = oracle.mixed_d4_bruteforce(1.5, L, beta, n_max=120)
    assert mixed_pressure(CavityConfig(4, 1.5, L, beta), TIGHT) == pytest.approx(ref.value, rel=1e-11)


def test_mixed_small_mass():
    massless = mixed_pressure_massless(CavityConfig(4, 0, 1.0, 1.0))
    assert mixed_pressure(CavityConfig(4, 1e-6, 1.0, 1.0), LOOSE) == pytest.approx(massless, rel=1e-5)


def test_mixed_zero_temperature():
    assert abs(mixed_pressure(CavityConfig(4, 1.0, 1.0, 40.0))) < 1e-15


def test_mixed_massless_against_oracle(reference):
    ref = reference["mixed_massless_L1_beta1"]
    value = mixed_pressure_massless(CavityConfig(4, 0, 1.0, 1.0))
    assert value == pytest.approx(ref["value"], rel=1e-10)
    # Catalan closed form pi^2/45 - G/3
    assert value == pytest.approx(PI**2 / 45 - oracle.CATALAN / 3, rel=1e-12)


def test_mixed_massless_zero_temperature():
    cfg = CavityConfig(4, 0, 1.0, 1e3)
    assert abs(mixed_pressure_massless(cfg)) < 1e-5 * abs(vacuum_pressure_massless(cfg))


def test_mixed_massless_dimension():
    with pytest.raises(UnsupportedDimensionError):
        mixed_pressure_massless(CavityConfig(3, 0, 1.0, 1.0))


@pytest.mark.parametrize("L,beta", [(1.0, 1.0), (1.0, 2.0), (3.0, 1.0), (0.4, 1.1)])
def test_mixed_massless_swap(L, beta):
    # relabelling n1 <-> n2 turns 3x^2 - y^2 into 3y^2 - x^2, so the pair sums to 2 sum 1/(x^2+y^2)^2
    from casimir_torus.asymptotics import f_function

    a = mixed_pressure_massless(CavityConfig(4, 0, L, beta))
    b = mixed_pressure_massless(CavityConfig(4, 0, beta, L))
    assert a + b == pytest.approx(2 * f_function(L / beta) / L**4, rel=1e-10)


# ---------------------------------------------------------------- totals


def test_total_is_sum_of_components():
    for cfg in [CavityConfig(4, 0, 1.0, 1.0), CavityConfig(4, 1.0, 1.0, 2.0), CavityConfig(3, 0.5, 1.0, 1.0)]:
        rep = total_pressure(cfg)
        largest = max(abs(rep.vacuum), abs(rep.thermal), abs(rep.mixed))
        assert abs(rep.total - (rep.vacuum + rep.thermal + rep.mixed)) <= 1e-14 * largest


def test_total_decomposition_bitwise():
    cfg = CavityConfig(4, 0.8, 1.2, 0.9)
    rep = total_pressure(cfg)
    assert rep.vacuum == vacuum_pressure(cfg)
    assert rep.thermal == thermal_pressure(cfg)
    assert rep.mixed == mixed_pressure(cfg)


def test_total_zero_temperature():
    rep = total_pressure(CavityConfig(4, 0, 1.0))
    assert rep.thermal == 0 and rep.mixed == 0
    assert rep.total == rep.vacuum
    assert rep.convergence["thermal"].method == "absent"


def test_total_low_temperature_example():
    rep = total_pressure(CavityConfig(4, 0, 1.0, 10.0))
    expected = -(PI**2) / 30 + 4 * PI / 10 * math.exp(-20 * PI)
    assert rep.total == pytest.approx(expected, rel=1e-13)


def test_total_high_temperature_example():
    rep = total_pressure(CavityConfig(4, 0, 10.0, 1.0))
    assert rep.total == pytest.approx(PI**2 / 90 - zeta(3) / (PI * 1e3), abs=1e-12)


def test_total_bulk_limit():
    rep = total_pressure(CavityConfig(4, 0, 1e3, 1.0))
    assert rep.total == pytest.approx(PI**2 / 90, rel=1e-6)


def test_convergence_metadata():
    rep = total_pressure(CavityConfig(4, 1.0, 1.0, 1.0))
    for name in ("vacuum", "thermal", "mixed"):
        res = rep.convergence[name]
        assert res.terms_used >= 3 and res.tail_bound >= 0


# ---------------------------------------------------------------- Dirichlet


def test_dirichlet_scalar_and_em():
    cfg = CavityConfig(4, 0.0, 1.0)
    assert dirichlet_pressure(1.0, cfg).total == pytest.approx(-(PI**2) / 480, rel=1e-12)
    assert dirichlet_pressure(1.0, cfg, Field.ELECTROMAGNETIC).total == pytest.approx(-(PI**2) / 240, rel=1e-12)
    assert dirichlet_pressure(1.0, cfg, "electromagnetic").total == pytest.approx(-(PI**2) / 240, rel=1e-12)


def test_dirichlet_half_separation():
    cfg = CavityConfig(4, 0.0, 7.0)
    assert dirichlet_pressure(0.5, cfg).total == vacuum_pressure_massless(CavityConfig(4, 0.0, 1.0))


def test_dirichlet_validation():
    with pytest.raises(DomainError):
        dirichlet_pressure(0.0, CavityConfig(4, 0.0, 1.0))
    with pytest.raises(ValueError):
        dirichlet_pressure(1.0, CavityConfig(4, 0.0, 1.0), "photon")


# ---------------------------------------------------------------- normalized


def test_normalized_curve():
    grid = [0.01, 0.5, 1, 2, 4, 8]
    ratios = [normalized_vacuum_pressure(CavityConfig(4, ml, 1.0)) for ml in grid]
    assert all(r > 0 for r in ratios)
    assert all(r <= 1 + 1e-9 for r in ratios)
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_normalized_against_oracle(reference):
    ref = reference["figure1_ratio_mL1"]["value"]
    assert normalized_vacuum_pressure(CavityConfig(4, 1.0, 1.0), TIGHT) == pytest.approx(ref, rel=1e-12)


def test_normalized_limits():
    assert 1 - 1e-3 <= normalized_vacuum_pressure(CavityConfig(4, 1e-4, 1.0)) <= 1
    assert normalized_vacuum_pressure(CavityConfig(4, 10.0, 1.0)) < 0.01
    assert normalized_vacuum_pressure(CavityConfig(4, 0.0, 1.0)) == 1.0
