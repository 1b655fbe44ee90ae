import math

import pytest
from hypothesis import given, strategies as st

from isacplan import quantities as q


def test_db_identity_and_decade():
    assert q.db_from_linear(1.0) == 0.0
    assert q.db_from_linear(100.0) == pytest.approx(20.0)


def test_db_of_two():
    # closed form 10*log10(2)
    assert q.db_from_linear(2.0) == pytest.approx(3.0103, abs=1e-4)


def test_db_rejects_non_positive():
    with pytest.raises(ValueError):
        q.db_from_linear(0.0)
    with pytest.raises(ValueError):
        q.db_from_linear(-3.0)


def test_dbm_to_watts_definitions():
    assert q.dbm_to_watts(30.0) == pytest.approx(1.0)
    assert q.dbm_to_watts(0.0) == pytest.approx(1e-3)


def test_dbm_to_watts_curve_power():
    assert q.dbm_to_watts(14.0) == pytest.approx(25.1e-3, rel=5e-3)


def test_dbm_rejects_non_finite():
    with pytest.raises(ValueError):
        q.dbm_to_watts(math.inf)


def test_wavelength_values():
    assert q.wavelength_m(140e9) == pytest.approx(2.1414e-3, rel=1e-4)
    assert q.wavelength_m(q.SPEED_OF_LIGHT_M_S) == 1.0
    assert q.wavelength_m(3e9) == pytest.approx(9.993e-2, rel=1e-3)


def test_watts_round_trip():
    assert q.watts_to_dbm(q.dbm_to_watts(-17.3)) == pytest.approx(-17.3, abs=1e-12)


@given(st.floats(min_value=1e-12, max_value=1e12, allow_nan=False))
def test_db_round_trip_identity(ratio):
    back = q.linear_from_db(q.db_from_linear(ratio))
    assert back == pytest.approx(ratio, rel=1e-12)


@given(
    st.floats(min_value=1e-6, max_value=1e6),
    st.floats(min_value=1e-6, max_value=1e6),
    st.floats(min_value=1e-6, max_value=1e6),
)
def test_db_addition_is_linear_multiplication(a, b, c):
    db_sum = q.db_from_linear(a) + q.db_from_linear(b) + q.db_from_linear(c)
    assert q.linear_from_db(db_sum) == pytest.approx(a * b * c, rel=1e-9)
