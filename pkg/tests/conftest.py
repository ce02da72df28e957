import numpy as np
import pytest

from fracnls import (
    Field,
    Potential,
    make_grid,
    make_problem,
    power_nonlinearity,
)

# well potential used throughout: even, nondecreasing in |t|, strictly
# below its limit 2 everywhere
WELL_EXPR = "2.0 - 1.0/(1.0 + t**2)"


def random_field(grid, rng, band_fraction=0.25):
    """Band-limited real field with O(1) amplitude; smooth enough that
    spectral quantities sit far above roundoff."""
    spec = np.zeros(grid.N, dtype=complex)
    kmax = max(2, int(band_fraction * grid.N / 2))
    ks = np.arange(1, kmax)
    amp = rng.standard_normal(ks.shape) / (1.0 + ks)
    phase = rng.uniform(0.0, 2.0 * np.pi, ks.shape)
    spec[ks] = amp * np.exp(1j * phase)
    spec[-ks] = np.conj(spec[ks])
    spec[0] = rng.standard_normal() * 0.1
    vals = np.real(np.fft.ifft(spec)) * grid.N / np.sqrt(grid.N)
    return Field(grid, vals)


def positive_field(grid, rng, band_fraction=0.25):
    u = random_field(grid, rng, band_fraction)
    if not np.any(u.values > 0.0):
        u = Field(grid, -u.values)
    return u


@pytest.fixture(scope="session")
def grid512():
    return make_grid(20.0, 512)


@pytest.fixture(scope="session")
def grid_canonical():
    return make_grid(20.0, 1024)


@pytest.fixture(scope="session")
def cubic():
    return power_nonlinearity(3.0)


@pytest.fixture(scope="session")
def flat_potential():
    return Potential.constant(1.0)


@pytest.fixture(scope="session")
def well_potential():
    return Potential.from_expr(WELL_EXPR, V0=1.0, V_inf=2.0,
                               radial_increasing=True, below_Vinf=True)


@pytest.fixture(scope="session")
def prob512(grid512, cubic, flat_potential):
    return make_problem(grid512, 0.75, cubic, flat_potential)


@pytest.fixture(scope="session")
def prob_canonical(grid_canonical, cubic, flat_potential):
    return make_problem(grid_canonical, 0.75, cubic, flat_potential)


@pytest.fixture(scope="session")
def prob_well(grid512, cubic, well_potential):
    return make_problem(grid512, 0.75, cubic, well_potential)
