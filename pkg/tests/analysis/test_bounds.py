import math

import pytest
from pydantic import ValidationError

from vlsfbec import constants as const
from vlsfbec.analysis import (
    adjusted_strlfc,
    backoff_bounds,
    bounds_row,
    converse,
    corollary2_margin,
    devassy_achievability,
    early_termination_adjust,
    heidarzadeh_reference,
    rate_from_blocklength,
    strlfc_achievability,
)
from vlsfbec.analysis.bounds import devassy_sum
from vlsfbec.exceptions import BoundError

P_GRID = [round(0.05 * i, 2) for i in range(20)]


class TestDevassy:
    def test_single_bit(self):
        assert devassy_achievability(1, 0.25).value == pytest.approx(1 / 0.75)

    def test_three_bits(self):
        assert devassy_achievability(3, 0.5).value == pytest.approx(7.833333333333333)

    def test_sum_below_erdos_borwein(self):
        sums = [devassy_sum(k) for k in range(1, 41)]
        assert all(0.0 <= s < const.ERDOS_BORWEIN for s in sums)
        assert sums == sorted(sums)
        assert devassy_sum(200) <= const.ERDOS_BORWEIN + 1e-12

    def test_sum_converges(self):
        assert devassy_sum(64) == pytest.approx(const.ERDOS_BORWEIN, abs=1e-6)

    @pytest.mark.parametrize("k", [2, 10, 64])
    def test_noiseless_above_k(self, k):
        excess = devassy_achievability(k, 0.0).value - k
        assert 0.0 < excess < 1.60669516


class TestConverse:
    @pytest.mark.parametrize("k", [1, 2, 7, 32, 64])
    @pytest.mark.parametrize("p", [0.0, 0.3, 0.9])
    def test_power_of_two_is_capacity(self, k, p):
        assert converse(2**k, p).value * (1 - p) == pytest.approx(k, abs=1e-12)

    def test_six_messages(self):
        assert converse(6, 0.5).value == pytest.approx(16 / 3)

    def test_one_bit_noiseless(self):
        assert converse(2, 0.0).value == 1.0

    def test_invalid(self):
        with pytest.raises(BoundError):
            converse(1, 0.5)
        with pytest.raises(BoundError):
            converse(4, 1.0)


class TestStrlfc:
    @pytest.mark.parametrize("p", [0.0, 0.2, 0.6])
    def test_single_bit(self, p):
        assert strlfc_achievability(1, p).value == pytest.approx(1 / (1 - p))

    @pytest.mark.parametrize("k", range(2, 65))
    def test_noiseless_is_k(self, k):
        assert strlfc_achievability(k, 0.0).value == k

    def test_below_devassy(self):
        for k in range(1, 65):
            for p in P_GRID:
                assert strlfc_achievability(k, p).value <= devassy_achievability(k, p).value + 1e-9

    def test_converse_is_not_beaten(self):
        for k in range(1, 30):
            for p in P_GRID:
                assert converse(2**k, p).rate >= strlfc_achievability(k, p).rate - 1e-12

    def test_rate(self):
        result = strlfc_achievability(4, 0.25)
        assert result.rate == pytest.approx(4 / result.value)

    def test_result_is_frozen(self):
        result = strlfc_achievability(2, 0.1)
        with pytest.raises(ValidationError):
            result.value = 1.0


class TestCorollary2:
    def test_nonnegative(self):
        for k in range(1, 65):
            for p in P_GRID + [1.0]:
                assert corollary2_margin(k, p) >= -1e-12

    @pytest.mark.parametrize("k", [1, 5, 40])
    def test_equality_at_dead_channel(self, k):
        assert abs(corollary2_margin(k, 1.0)) <= 1e-12

    @pytest.mark.parametrize("p", [0.0, 0.4, 0.95])
    def test_equality_at_one_bit(self, p):
        assert abs(corollary2_margin(1, p)) <= 1e-12

    def test_strict_in_between(self):
        assert corollary2_margin(3, 0.5) > 0

    def test_invalid(self):
        with pytest.raises(BoundError):
            corollary2_margin(3, 1.1)


class TestBackoff:
    def test_devassy_at_three_bits(self):
        assert round(backoff_bounds(3, 0.3).devassy, 3) == 0.234

    def test_devassy_maximum_at_three_bits(self):
        values = [backoff_bounds(k, 0.1).devassy for k in range(1, 201)]
        assert max(range(len(values)), key=values.__getitem__) == 2

    def test_devassy_independent_of_p(self):
        assert backoff_bounds(3, 0.01).devassy == pytest.approx(backoff_bounds(3, 0.99).devassy)

    def test_strlfc_increasing_in_p(self):
        values = [backoff_bounds(3, p).strlfc for p in [0.01 * i for i in range(1, 100)]]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_strlfc_limits(self):
        assert backoff_bounds(3, 0.01).strlfc < 0.01
        assert backoff_bounds(3, 0.0).strlfc == pytest.approx(0.0, abs=1e-15)
        near_dead = backoff_bounds(3, 1 - 1e-9)
        assert near_dead.strlfc == pytest.approx(near_dead.devassy, abs=1e-6)


class TestEarlyTermination:
    def test_scaling(self):
        assert early_termination_adjust(10.0, 0.1) == pytest.approx(9.0)
        assert early_termination_adjust(10.0, 0.0) == 10.0

    def test_invalid(self):
        with pytest.raises(BoundError):
            early_termination_adjust(10.0, 1.0)

    def test_adjusted(self):
        base = strlfc_achievability(5, 0.5).value
        assert adjusted_strlfc(5, 0.5, 1e-3).value == pytest.approx(base * 0.999)


def test_heidarzadeh_reference():
    result = heidarzadeh_reference(4, 0.5)
    assert result.value == pytest.approx((4 + const.ERDOS_BORWEIN) / 0.5)
    assert result.value >= devassy_achievability(4, 0.5).value


def test_rate_from_blocklength():
    assert rate_from_blocklength(3, 6) == 0.5
    with pytest.raises(BoundError):
        rate_from_blocklength(3, 0)


def test_bounds_row():
    row = bounds_row(3, 0.5)
    assert list(row) == [
        "k",
        "p",
        "devassy_l",
        "strlfc_l",
        "converse_l",
        "rate_devassy",
        "rate_strlfc",
        "rate_converse",
        "cor2_margin",
        "heidarzadeh_l",
    ]
    assert row["devassy_l"] == pytest.approx(7.833333333333333)
    assert row["heidarzadeh_l"] == heidarzadeh_reference(3, 0.5).value
    assert row["rate_converse"] == pytest.approx(0.5)
    assert row["cor2_margin"] >= 0
    assert math.isclose(row["cor2_margin"], 0.5 * (row["devassy_l"] - row["strlfc_l"]))
