import logging
from itertools import product

import pytest

from cartesianforests.forests import build_forest_online
from cartesianforests.matching import exact_match
from cartesianforests.representations import Representation, WindowState, parent_distance, skipped_number
from cartesianforests.signatures import (
    RollingSignature,
    filtered_match,
    rolling_signature_match,
    signature,
    signature_int,
    tau_filter,
)
from cartesianforests.utils import ParameterError


def test_signature_example(example_pattern):
    sig = signature(example_pattern)
    assert sig.bitstring() == "001110010100"
    assert sig.bit_length == 12
    assert sig.hex() == "3940"
    assert str(sig) == "12:3940"


def test_signature_int_keeps_a_leading_one(example_pattern):
    assert signature_int(example_pattern) == int("1001110010100", 2)
    assert signature_int(()) == 1


def test_signature_of_empty_sequence():
    sig = signature(())
    assert sig.bit_length == 0
    assert sig.bits == b""
    assert sig.bitstring() == ""


def test_signature_partition_matches_forests():
    by_signature = {}
    longest = 0
    for x in product(range(1, 6), repeat=5):
        sig = signature(x)
        key = build_forest_online(x).key
        assert by_signature.setdefault(sig, key) == key
        assert sig.bit_length <= 3 * len(x)
        longest = max(longest, sig.bit_length)
    assert len(by_signature) == 197
    # Every entry after the first costs at most three bits.
    assert longest == 3 * 5 - 2


@pytest.mark.slow
def test_full_characterization_sweep():
    classes = {}
    for x in product(range(1, 8), repeat=7):
        key = build_forest_online(x).key
        entry = (parent_distance(x), skipped_number(x), signature(x))
        assert classes.setdefault(key, entry) == entry
        assert entry[2].bit_length <= 21
    assert len(classes) == 4279
    assert len({entry[0] for entry in classes.values()}) == 4279
    assert len({entry[1] for entry in classes.values()}) == 4279
    assert len({entry[2] for entry in classes.values()}) == 4279


def test_longest_signature_on_decreasing_sequence():
    assert signature((5, 4, 3, 2, 1)).bit_length == 13
    assert signature((1, 1, 1, 1, 1)).bit_length == 13
    assert signature((1, 2, 3, 4, 5)).bit_length == 5


def test_tau_filter(example_pattern):
    sn = skipped_number(example_pattern)
    assert tau_filter(sn, 4).bitstring() == "1010"
    assert tau_filter(sn, 8).bitstring() == "00001010"
    assert tau_filter(sn, 1).word == 0


@pytest.mark.parametrize("tau", [0, 129, -1])
def test_tau_out_of_range(tau):
    with pytest.raises(ParameterError):
        tau_filter((0, 1), tau)
    with pytest.raises(ParameterError):
        filtered_match((1, 2), (1, 2, 3), tau)


@pytest.mark.parametrize("kind", list(Representation))
@pytest.mark.parametrize("tau", [1, 4, 64, 128])
def test_filtered_example(example_pattern, example_text, kind, tau):
    assert filtered_match(example_pattern, example_text, tau, kind).positions == (1, 5)


def test_filtered_matches_exact_on_binary_alphabet(random_instances):
    filtered_checks = exact_checks = 0
    filtered_work = exact_work = 0
    for p, t in random_instances(300, min_m=3, max_m=10, max_n=80, seed=3, k=2):
        assert set(p) | set(t) <= {1, 2}
        exact = exact_match(p, t, Representation.SN)
        filtered = filtered_match(p, t, 64)
        assert filtered.positions == exact.positions, (p, t)
        assert filtered.counters.windows_full_checked <= exact.counters.windows_full_checked
        filtered_checks += filtered.counters.windows_full_checked
        exact_checks += exact.counters.windows_full_checked
        filtered_work += filtered.counters.comparisons
        exact_work += exact.counters.comparisons
    assert filtered_checks < exact_checks
    assert filtered_work < exact_work


@pytest.mark.parametrize("tau", [2, 3, 7])
def test_narrow_filters_stay_sound(random_instances, tau):
    for p, t in random_instances(100, max_m=12, max_n=60, seed=31):
        for kind in Representation:
            assert filtered_match(p, t, tau, kind).positions == exact_match(p, t, kind).positions, (p, t)


def test_rolling_signature_matches_exact(random_instances):
    for p, t in random_instances(150, max_m=8, max_n=60, seed=41):
        assert rolling_signature_match(p, t).positions == exact_match(p, t).positions, (p, t)


def test_rolling_signature_follows_the_window(random_instances):
    for p, t in random_instances(60, max_m=12, max_n=50, seed=43):
        rolling = RollingSignature(WindowState(t, len(p)))
        while True:
            assert rolling.word == signature_int(rolling.state.window), (t, rolling.state.position)
            if not rolling.state.can_slide():
                break
            rolling.slide()


def test_rolling_signature_needs_skipped_number_window():
    with pytest.raises(ParameterError):
        RollingSignature(WindowState((1, 2, 3), 2, Representation.PD))


def test_rolling_signature_falls_back_for_long_patterns(caplog):
    p = tuple(range(30))
    t = tuple(range(40))
    with caplog.at_level(logging.WARNING, logger="cartesianforests.signatures"):
        result = rolling_signature_match(p, t)
    assert result.positions == tuple(range(1, 12))
    assert "too long" in caplog.text
