from itertools import product

import pytest

from cartesianforests.forests import build_forest_online
from cartesianforests.randgen import GenSpec, uniform_sequence
from cartesianforests.representations import (
    Representation,
    WindowState,
    WorkCounters,
    compare_representations,
    linear_representation,
    parent_distance,
    parent_distance_rtl,
    referent_table,
    skipped_number,
    window_init,
    window_slide,
)
from cartesianforests.utils import WindowError


def test_parent_distance_example(example_pattern):
    assert parent_distance(example_pattern) == (0, 1, 0, 1, -2, 1)


def test_referent_table_example(example_pattern):
    assert referent_table(example_pattern) == (3, 3, 5, 5, -1, -1)


def test_skipped_number_example(example_pattern):
    assert skipped_number(example_pattern) == (0, 0, 2, 0, -2, 0)


def test_skipped_number_decreasing():
    assert skipped_number((3, 2, 1)) == (0, 1, 1)


def test_constant_sequence():
    assert parent_distance((4, 4, 4, 4)) == (0, -1, -1, -1)
    assert skipped_number((4, 4, 4, 4)) == (0, -1, -1, -1)
    assert referent_table((4, 4, 4, 4)) == (2, 3, 4, -1)


def test_parent_distance_rtl(example_pattern):
    assert parent_distance_rtl(example_pattern) == (2, 1, -2, 1, 0, 0)


def test_empty_sequence():
    assert parent_distance(()) == ()
    assert skipped_number(()) == ()
    assert referent_table(()) == ()


@pytest.mark.parametrize("kind", list(Representation))
def test_representations_characterize_forests(kind):
    # Over every sequence of length 5 on {1..5}, equal representations means equal forests.
    by_repr = {}
    by_forest = {}
    for x in product(range(1, 6), repeat=5):
        r = linear_representation(x, kind)
        key = build_forest_online(x).key
        assert by_repr.setdefault(r, key) == key
        assert by_forest.setdefault(key, r) == r
    assert len(by_repr) == 197


def test_window_slide_example():
    t = (5, 7, 3, 6, 3, 7)
    sn = window_init(t, 3, Representation.SN)
    assert sn.representation == (0, 0, 2)
    window_slide(sn)
    assert tuple(sn.window) == (7, 3, 6)
    assert sn.representation == (0, 1, 0)

    pd = window_init(t, 3, Representation.PD)
    assert pd.representation == (0, 1, 0)
    window_slide(pd)
    assert pd.representation == (0, 0, 1)


@pytest.mark.parametrize("kind", list(Representation))
def test_window_matches_fresh_computation(kind):
    for seed in range(30):
        t = uniform_sequence(GenSpec(40, (2, 3, 5)[seed % 3], seed))
        for m in range(1, 8):
            state = WindowState(t, m, kind)
            while True:
                assert state.representation == linear_representation(state.window, kind), (t, m, state.position)
                if not state.can_slide():
                    break
                state.slide()
                assert state.changed[-1] == m - 1


def test_window_on_ties():
    state = WindowState((1, 1, 1, 1, 1), 3)
    seen = [state.representation]
    while state.can_slide():
        seen.append(state.slide().representation)
    assert seen == [(0, -1, -1)] * 3


def test_window_sign_flips_when_equal_predecessor_leaves():
    state = WindowState((1, 1, 2), 2)
    assert state.representation == (0, -1)
    state.slide()
    assert state.representation == (0, 0)
    state = WindowState((2, 1, 1, 3), 3)
    assert state.representation == (0, 1, -1)
    state.slide()
    assert state.representation == (0, -1, 0)


def test_window_position_is_one_based():
    state = WindowState((1, 2, 3, 4), 2)
    assert state.position == 1
    state.slide()
    assert state.position == 2


def test_window_errors():
    with pytest.raises(WindowError):
        WindowState((1, 2), 3)
    with pytest.raises(WindowError):
        WindowState((1, 2), 0)
    state = WindowState((1, 2), 2)
    assert not state.can_slide()
    with pytest.raises(WindowError):
        state.slide()


def test_window_changed_entries():
    state = WindowState((5, 7, 3, 6), 3, Representation.SN)
    state.slide()
    # The 3 that had skipped both 5 and 7 loses one, then the new 6 arrives.
    assert state.changed == (1, 2)


def test_compare_representations_counts_entries():
    counters = WorkCounters()
    assert compare_representations((0, 1, 2), (0, 1, 2), counters)
    assert counters.entry_comparisons == 3
    assert not compare_representations((0, 1, 2), (0, 2, 2), counters)
    assert counters.entry_comparisons == 5
    assert not compare_representations((0,), (0, 1), counters)
    assert counters.entry_comparisons == 5


def test_work_counters_total():
    counters = WorkCounters(element_comparisons=3, index_checks=2, entry_comparisons=5, filter_comparisons=7)
    assert counters.comparisons == 14
    other = WorkCounters(element_comparisons=1, windows_examined=4)
    counters.add(other)
    assert counters.element_comparisons == 4
    assert counters.windows_examined == 4


def test_index_checks_cost_more_for_parent_distance():
    t = uniform_sequence(GenSpec(200, 3, 11))
    sn = WindowState(t, 10, Representation.SN)
    pd = WindowState(t, 10, Representation.PD)
    while sn.can_slide():
        sn.slide()
        pd.slide()
    assert sn.counters.element_comparisons == pd.counters.element_comparisons
    assert pd.counters.index_checks >= sn.counters.index_checks


def test_stack_work_is_not_charged_to_matching():
    t = uniform_sequence(GenSpec(120, 4, 5))
    state = WindowState(t, 8, Representation.SN)
    while state.can_slide():
        state.slide()
    counters = state.counters
    assert counters.element_comparisons > 0
    assert counters.comparisons == counters.index_checks + counters.entry_comparisons + counters.filter_comparisons
    assert counters.index_checks == len(t) - 8
