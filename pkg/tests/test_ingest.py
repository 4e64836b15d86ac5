"""Tick parsing, serialization round-trip, and session windowing."""

import io
from datetime import date, datetime, time
from fractions import Fraction

import pytest

from mpslab import (GridError, SessionWindow, Tick, parse_ticks,
                    serialize_ticks, sessionize, trade_ticks)
from mpslab.ingest import (ParseError, contract_for, load_contract_config,
                           session_window_of)


def test_parse_globex_line(es):
    ticks = parse_ticks(["2017/04/10 11:18:21 2342 1"], es)
    assert len(ticks) == 1
    t = ticks[0]
    assert t.timestamp == datetime(2017, 4, 10, 11, 18, 21)
    assert t.price == 2342
    assert t.size == 1
    assert not t.indicative


def test_parse_dash_dates_and_condition(es):
    ticks = parse_ticks(["2017-04-09 17:02:54\t2350.75\t3\tE"], es)
    assert ticks[0].condition == "E"
    assert ticks[0].price == Fraction("2350.75")


def test_indicative_ticks_flagged_and_filtered(es):
    ticks = parse_ticks(["2017/04/10 09:00:00 2350.00 0",
                         "2017/04/10 09:00:01 2350.25 2"], es)
    assert ticks[0].indicative
    assert [t.size for t in trade_ticks(ticks)] == [2]


def test_off_grid_price_names_delta(es):
    with pytest.raises(GridError) as err:
        parse_ticks(["2017/04/10 09:00:00 2342.10 1"], es)
    assert "0.25" in str(err.value) or "1/4" in str(err.value)
    assert "line 1" in str(err.value)


def test_malformed_line_number(es):
    good = "2017/04/10 09:00:00 2342 1"
    with pytest.raises(ParseError) as err:
        parse_ticks([good, "2017/04/10 09:00:01 oops"], es)
    assert "line 2" in str(err.value)


def test_blank_and_comment_lines_skipped(es):
    ticks = parse_ticks(["", "# header", "2017/04/10 09:00:00 2342 1"], es)
    assert len(ticks) == 1


def test_round_trip(es):
    lines = ["2017/04/10 11:18:21 2342 1", "2017/04/10 11:18:22 2342.25 3 E"]
    ticks = parse_ticks(lines, es)
    out = serialize_ticks(ticks)
    again = parse_ticks(io.StringIO(out), es)
    assert again == ticks
    assert serialize_ticks(again) == out


def test_sessionize_overnight_window(es):
    window = session_window_of(es)
    assert window.overnight
    ticks = parse_ticks([
        "2017/04/09 17:02:54 2350.75 1",   # next day's session
        "2017/04/10 11:00:00 2351.00 1",
        "2017/04/10 15:15:00 2351.25 1",   # boundary, included
        "2017/04/10 15:15:01 2351.50 1",   # past close, dropped
        "2017/04/10 15:45:00 2352.00 1",   # maintenance range, dropped
        "2017/04/10 17:30:00 2352.25 1",   # 04-11 session
    ], es)
    result = sessionize(ticks, window)
    assert result.dropped == 2
    assert [s.day for s in result.sessions] == [date(2017, 4, 10), date(2017, 4, 11)]
    assert len(result.sessions[0].ticks) == 3
    assert result.sessions[0].ticks[0].timestamp.hour == 17


def test_sessionize_totality(es):
    window = session_window_of(es)
    ticks = parse_ticks([
        "2017/04/09 16:00:00 2350.00 1",
        "2017/04/09 18:00:00 2350.25 1",
        "2017/04/10 09:00:00 2350.50 1",
    ], es)
    result = sessionize(ticks, window)
    assert sum(len(s.ticks) for s in result.sessions) + result.dropped == len(ticks)


def test_sessionize_stable_for_equal_timestamps(es):
    window = session_window_of(es)
    a = Tick(datetime(2017, 4, 10, 9, 0, 0), "2350.00", 1, "first")
    b = Tick(datetime(2017, 4, 10, 9, 0, 0), "2350.25", 2, "second")
    result = sessionize([a, b], window)
    assert result.sessions[0].ticks == (a, b)


def test_daytime_window():
    window = SessionWindow(time(9, 0), time(16, 0))
    assert not window.overnight
    tick = Tick(datetime(2017, 4, 10, 10, 0, 0), "100", 1)
    out = Tick(datetime(2017, 4, 10, 8, 0, 0), "100", 1)
    result = sessionize([tick, out], window)
    assert result.dropped == 1
    assert result.sessions[0].day == date(2017, 4, 10)


def test_window_validation():
    with pytest.raises(ValueError):
        SessionWindow(time(9, 0), time(9, 0))


def test_presets():
    es = contract_for("ES")
    assert es.k == 50 and es.delta == Fraction(1, 4)
    corn = contract_for("corn")
    assert corn.k == 50
    with pytest.raises(ValueError):
        contract_for("XX")


def test_config_file(tmp_path):
    path = tmp_path / "contracts.ini"
    path.write_text(
        "[NQ]\nk = 20\ndelta = 0.25\nsession_open = 17:00\nsession_close = 15:15\n")
    specs = load_contract_config(str(path))
    assert specs["NQ"].k == 20
    assert specs["NQ"].session_open == time(17, 0)
    assert contract_for("NQ", str(path)).k == 20
