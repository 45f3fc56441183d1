import numpy as np
import pytest

from clsim import build_model, default_channels


def vee_model(w21, w32, r=5.0, p=1.0, gamma_nr=3.0, gamma=(1.0, 1.0, 1.0)):
    """Standard four-level configuration with frame centered on level 2."""
    rates = (r, r, r) if np.isscalar(r) else tuple(r)
    return build_model(
        n_excited=3,
        omega=(-w21, 0.0, w32),
        gamma_rad=tuple(gamma),
        excitation=rates,
        p_interf=p,
        gamma_nr=gamma_nr,
        nr_channels=default_channels(3),
    )


def two_level_model(gamma=1.0, r=0.0, omega10=0.0):
    return build_model(
        n_excited=1,
        omega=(omega10,),
        gamma_rad=(gamma,),
        excitation=(r,),
        p_interf=0.0,
        gamma_nr=0.0,
    )


@pytest.fixture
def near_degenerate():
    """Closely spaced excited levels, maximal interference."""
    return vee_model(0.05, 0.05, p=1.0)


@pytest.fixture
def split_lower():
    """One far-detuned excited level, the upper two nearly degenerate."""
    return vee_model(50.0, 0.05, p=1.0)
