import math

import pytest
from mpmath import mp

from cartesianforests.combinatorics import (
    SchroderTree,
    asymptotic_estimate,
    cf_to_parens,
    cf_to_schroder,
    closed_form_count,
    count_forests,
    display_parens,
    enumerate_forests,
    forest_series,
    forest_words,
    growth_ratio,
    iter_forests,
    normalize_parens,
    parens_to_cf,
    parse_schroder,
    schroder_to_cf,
    schroder_to_text,
    sibling_series,
    validate_schroder,
)
from cartesianforests.forests import CartesianForest, build_forest_online, validate_forest
from cartesianforests.utils import BudgetError, InvalidForestError

KNOWN_COUNTS = [1, 1, 3, 11, 45, 197, 903, 4279, 20793, 103049, 518859]

SMALL_DISPLAY_WORDS = {
    1: {".."},
    2: {"...", ".(..)", "(..)."},
    3: {
        "....",
        "..(..)",
        ".(..).",
        ".(...)",
        ".(.(..))",
        ".((..).)",
        "(..)..",
        "(..)(..)",
        "(...).",
        "(.(..)).",
        "((..).).",
    },
}


@pytest.mark.parametrize("n, expected", list(enumerate(KNOWN_COUNTS)))
def test_count_forests(n, expected):
    assert count_forests(n).value == expected
    assert closed_form_count(n) == expected


def test_closed_formula_agrees_with_series():
    series = forest_series(200)
    assert series[: len(KNOWN_COUNTS)] == KNOWN_COUNTS
    for n in range(201):
        assert closed_form_count(n) == series[n]


def test_sibling_series():
    assert sibling_series(3) == [1, 1, 2, 6]


@pytest.mark.parametrize("n", range(8))
def test_enumeration_size(n):
    forests = enumerate_forests(n)
    assert len(forests) == KNOWN_COUNTS[n]
    assert len({F.key for F in forests}) == len(forests)
    assert all(validate_forest(F) and len(F) == n for F in forests)


@pytest.mark.slow
@pytest.mark.parametrize("n", [8, 9])
def test_enumeration_size_large(n):
    assert len(enumerate_forests(n)) == KNOWN_COUNTS[n]


@pytest.mark.slow
def test_streamed_enumeration_size():
    assert sum(1 for _ in iter_forests(10)) == KNOWN_COUNTS[10]


def test_enumeration_budget():
    with pytest.raises(BudgetError):
        enumerate_forests(13)
    with pytest.raises(BudgetError):
        forest_words(-1)
    with pytest.raises(BudgetError):
        iter_forests(13)
    with pytest.raises(BudgetError):
        enumerate_forests(10)


def test_words_are_streamed():
    words = forest_words(12)
    assert iter(words) is words
    first = next(words)
    assert first.count(".") == 13
    assert parens_to_cf(first) == next(iter_forests(12))


@pytest.mark.parametrize("n", [0, 4, 7])
def test_streamed_forests_match_the_list(n):
    assert list(iter_forests(n)) == enumerate_forests(n)
    assert sum(1 for _ in forest_words(n)) == KNOWN_COUNTS[n]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_small_parentheses_words(n):
    words = [display_parens(w) for w in forest_words(n)]
    assert len(words) == len(SMALL_DISPLAY_WORDS[n])
    assert set(words) == SMALL_DISPLAY_WORDS[n]


@pytest.mark.parametrize("n", range(7))
def test_bijections_round_trip(n):
    for F in enumerate_forests(n):
        T = cf_to_schroder(F)
        assert validate_schroder(T)
        assert T.leaf_count() == n + 1
        assert schroder_to_cf(T) == F
        assert parse_schroder(schroder_to_text(T)) == T

        word = cf_to_parens(F)
        assert word.count(".") == n + 1
        assert parens_to_cf(word) == F
        assert parens_to_cf(cf_to_parens(F, display=True)) == F
        assert normalize_parens(display_parens(word)) == word


@pytest.mark.slow
def test_bijections_round_trip_n8():
    for F in enumerate_forests(8):
        assert schroder_to_cf(cf_to_schroder(F)) == F
        assert parens_to_cf(cf_to_parens(F)) == F


def test_schroder_text():
    assert schroder_to_text(cf_to_schroder(CartesianForest.empty())) == "*"
    assert schroder_to_text(cf_to_schroder(build_forest_online((2, 1)))) == "[[**]*]"
    assert schroder_to_text(cf_to_schroder(build_forest_online((1, 2)))) == "[*[**]]"
    assert schroder_to_text(cf_to_schroder(build_forest_online((1, 1)))) == "[***]"


def test_parens_of_sequences():
    assert cf_to_parens(build_forest_online(())) == "."
    assert cf_to_parens(build_forest_online((1,))) == "(..)"
    assert cf_to_parens(build_forest_online((1,)), display=True) == ".."
    assert cf_to_parens(build_forest_online((2, 1)), display=True) == "(..)."


@pytest.mark.parametrize("word", ["(.)", "((..)", "(..))", "", "(.x.)", "()"])
def test_bad_parentheses_words(word):
    with pytest.raises(InvalidForestError):
        parens_to_cf(word)


@pytest.mark.parametrize("text", ["**", "[*]", "[**", "[*x]", ""])
def test_bad_schroder_text(text):
    with pytest.raises(InvalidForestError):
        parse_schroder(text)


def test_invalid_schroder_tree():
    unary = SchroderTree(((1,), ()))
    assert not validate_schroder(unary)
    with pytest.raises(InvalidForestError):
        schroder_to_cf(unary)


def test_invalid_forest_is_rejected_by_bijections():
    invalid = CartesianForest.from_nested([([], []), ([([], [])], [])])
    with pytest.raises(InvalidForestError):
        cf_to_schroder(invalid)
    with pytest.raises(InvalidForestError):
        cf_to_parens(invalid)


def test_growth_ratio():
    ratio = growth_ratio(200)
    target = 3 + 2 * math.sqrt(2)
    assert abs(float(ratio) - target) / target < 0.01


def test_asymptotic_estimate():
    f = forest_series(200)
    estimate = asymptotic_estimate(200)
    assert abs(estimate / mp.mpf(f[200]) - 1) < 0.01
    assert abs(asymptotic_estimate(10) / KNOWN_COUNTS[10] - 1) < 0.05
