import numpy as np
import pytest

from szegokit import CircleMeasure, GridFunction, preset_density

N1 = 1024

GM_COS = (2.0 + np.sqrt(3.0)) / 2.0  # exp of the mean of log(2 + cos 2 pi t)


def density_poly(n=N1, coeffs=(1.0, -0.5)) -> GridFunction:
    return preset_density("poly_mod2", (n,), {"coeffs": list(coeffs)})


def density_cos(n=N1, a=2.0, b=1.0) -> GridFunction:
    return preset_density("cos_offset", (n,), {"a": a, "b": b})


def density_const(n=N1, c=1.0) -> GridFunction:
    return preset_density("const", (n,), {"c": c})


def smooth_measures(n=N1):
    """The strictly positive smooth presets used across the suite."""
    return {
        "const": CircleMeasure.from_density(density_const(n)),
        "poly_mod2": CircleMeasure.from_density(density_poly(n)),
        "cos_offset": CircleMeasure.from_density(density_cos(n)),
    }


@pytest.fixture
def mu_lebesgue():
    return CircleMeasure.lebesgue((N1,))


@pytest.fixture
def mu_poly():
    return CircleMeasure.from_density(density_poly())


@pytest.fixture
def mu_cos():
    return CircleMeasure.from_density(density_cos())
