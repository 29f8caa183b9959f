import pytest

from cartesianforests.utils import (
    INT64_MAX,
    INT64_MIN,
    BudgetError,
    CartesianForestError,
    InvalidForestError,
    InvalidSequenceError,
    WindowError,
    format_sequence,
    load_settings,
    parse_int64,
    parse_sequence_line,
)

SETTINGS_VARIABLES = ["CFM_TAU", "CFM_TRIALS", "CFM_SEED", "CFM_LOG_LEVEL", "CFM_WORKERS", "CFM_RUN_SLOW"]


@pytest.mark.parametrize(
    "token, expected",
    [("0", 0), ("-7", -7), ("+12", 12), ("9223372036854775807", INT64_MAX), ("-9223372036854775808", INT64_MIN)],
)
def test_parse_int64(token, expected):
    assert parse_int64(token) == expected


@pytest.mark.parametrize("token", ["x", "1.5", "", "-", "1e3", "9223372036854775808", "-9223372036854775809", "٣"])
def test_parse_int64_rejects(token):
    with pytest.raises(InvalidSequenceError):
        parse_int64(token, 4)


def test_error_carries_line_number():
    with pytest.raises(InvalidSequenceError) as info:
        parse_sequence_line("1 2 three", 7)
    assert info.value.line == 7
    assert str(info.value).startswith("line 7:")


def test_parse_and_format_sequence():
    assert parse_sequence_line("  2 3\t1  ") == (2, 3, 1)
    assert parse_sequence_line("") == ()
    assert format_sequence((2, -3, 1)) == "2 -3 1"
    assert format_sequence(()) == ""


def test_errors_are_value_errors():
    for error in (InvalidForestError, InvalidSequenceError, WindowError, BudgetError):
        assert issubclass(error, CartesianForestError)
        assert issubclass(error, ValueError)


def test_default_settings(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for name in SETTINGS_VARIABLES:
        monkeypatch.delenv(name, raising=False)
    settings = load_settings()
    assert settings.tau == 64
    assert settings.trials == 1000
    assert settings.seed == 0
    assert settings.log_level == "WARNING"
    assert settings.workers == 1
    assert not settings.run_slow


def test_settings_from_environment(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("CFM_TAU", "32")
    monkeypatch.setenv("CFM_TRIALS", "50")
    monkeypatch.setenv("CFM_LOG_LEVEL", "debug")
    monkeypatch.setenv("CFM_RUN_SLOW", "1")
    settings = load_settings()
    assert settings.tau == 32
    assert settings.trials == 50
    assert settings.log_level == "DEBUG"
    assert settings.run_slow


def test_bad_setting(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("CFM_WORKERS", "many")
    with pytest.raises(CartesianForestError):
        load_settings()
