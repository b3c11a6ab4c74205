import numpy as np
import pytest

import qunit_bell.noise as noise
from qunit_bell.functional import max_entangled_state, quantum_value
from qunit_bell.linalg import projector, validate_density_matrix
from qunit_bell.noise import (
    KIND_CLOSEST_SEPARABLE,
    KIND_UNCOLORED,
    NoiseFamily,
    mixed_state,
    threshold_closed_form,
    threshold_numeric,
)

KINDS = (KIND_UNCOLORED, KIND_CLOSEST_SEPARABLE)


def test_family_validation():
    NoiseFamily(KIND_UNCOLORED, 3, 0.5)
    with pytest.raises(ValueError, match="unknown noise kind"):
        NoiseFamily("pink", 3, 0.5)
    with pytest.raises(ValueError, match="at least 2"):
        NoiseFamily(KIND_UNCOLORED, 1, 0.5)
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        NoiseFamily(KIND_UNCOLORED, 3, 1.5)


def test_lambda_one_recovers_pure_state():
    pure = projector(max_entangled_state(3))
    for kind in KINDS:
        assert np.abs(mixed_state(NoiseFamily(kind, 3, 1.0)) - pure).max() < 1e-12


def test_lambda_zero_uncolored():
    rho = mixed_state(NoiseFamily(KIND_UNCOLORED, 3, 0.0))
    assert np.abs(rho - np.eye(9) / 9).max() < 1e-12
    assert abs(quantum_value(rho, 3) - 2 * (2 - 3)) < 1e-10


def test_lambda_zero_separable_n3():
    rho = mixed_state(NoiseFamily(KIND_CLOSEST_SEPARABLE, 3, 0.0))
    want = np.zeros((9, 9))
    want[[0, 4, 8], [0, 4, 8]] = 1 / 3
    assert np.abs(rho - want).max() < 1e-12
    assert abs(quantum_value(rho, 3) - (np.sqrt(3) - 1)) < 1e-10


def test_mixed_states_are_valid_densities():
    for N in (2, 3):
        for kind in KINDS:
            for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
                validate_density_matrix(mixed_state(NoiseFamily(kind, N, lam)))


def test_closed_forms():
    assert abs(threshold_closed_form(KIND_UNCOLORED, 3) - 2 / (1 + np.sqrt(3))) < 1e-12
    assert (
        abs(threshold_closed_form(KIND_CLOSEST_SEPARABLE, 3) - (3 - np.sqrt(3)) / (1 + np.sqrt(3)))
        < 1e-12
    )
    assert abs(threshold_closed_form(KIND_UNCOLORED, 2) - 1 / np.sqrt(2)) < 1e-12
    with pytest.raises(ValueError, match="unknown noise kind"):
        threshold_closed_form("pink", 3)


def test_closed_form_frozen_values_n3():
    assert abs(threshold_closed_form(KIND_UNCOLORED, 3) - 0.7320508075688772) < 1e-12
    assert abs(threshold_closed_form(KIND_CLOSEST_SEPARABLE, 3) - 0.46410161513775466) < 1e-12


@pytest.mark.parametrize("N", (2, 3, 5))
@pytest.mark.parametrize("kind", KINDS)
def test_numeric_matches_closed_form(N, kind):
    assert abs(threshold_numeric(kind, N) - threshold_closed_form(kind, N)) < 1e-9


def test_value_is_affine_in_lambda():
    for kind in KINDS:
        base = quantum_value(mixed_state(NoiseFamily(kind, 3, 0.0)), 3)
        top = 2 * np.sqrt(3)
        for lam in np.linspace(0.0, 1.0, 10):
            got = quantum_value(mixed_state(NoiseFamily(kind, 3, float(lam))), 3)
            assert abs(got - (lam * top + (1 - lam) * base)) < 1e-10


def test_threshold_ordering():
    # separable noise is the milder one: its threshold sits strictly lower
    for N in range(3, 11):
        assert threshold_closed_form(KIND_CLOSEST_SEPARABLE, N) < threshold_closed_form(
            KIND_UNCOLORED, N
        )
    # N=2 checked numerically rather than assumed: ordering holds there too
    sep2 = threshold_numeric(KIND_CLOSEST_SEPARABLE, 2)
    mix2 = threshold_numeric(KIND_UNCOLORED, 2)
    assert sep2 < mix2
    assert abs(sep2 - (2 - np.sqrt(2)) / np.sqrt(2)) < 1e-9
    assert abs(mix2 - 1 / np.sqrt(2)) < 1e-9


def test_bisection_reports_missing_sign_change(monkeypatch):
    monkeypatch.setattr(noise, "quantum_value", lambda rho, N: 0.0)
    with pytest.raises(ValueError, match="no sign change"):
        threshold_numeric(KIND_UNCOLORED, 3)
