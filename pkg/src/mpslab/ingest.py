"""Time & Sales parsing, validation, and session windowing.

Input is delimited text, one tick per line: date, time, price, size, and an
optional condition symbol.  Prices are validated against the contract grid;
size 0 marks indicative prices, which stay in the parse result but carry
the ``indicative`` flag and are dropped from analysis input by default.
Timestamps are naive exchange-local clock times throughout.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from datetime import date, datetime, time, timedelta
from typing import Iterable, Optional, Sequence, TextIO, Union

from .model import ContractSpec, GridError, Tick
from .numeric import as_fraction, fmt_number


@dataclass(frozen=True)
class SessionWindow:
    """Daily trading window; open may sit on the previous calendar day."""

    open: time
    close: time
    timezone: str = "exchange-local"

    def __post_init__(self):
        if self.open == self.close:
            raise ValueError("session open and close must differ")

    @property
    def overnight(self) -> bool:
        return self.open > self.close


PRESETS = {
    # E-mini S&P 500: $50 per point, 0.25 minimum fluctuation,
    # 17:00 previous day - 15:15 close.
    "ES": ContractSpec("ES", 50, "0.25", time(17, 0), time(15, 15)),
    # Corn: 5000 bushels, $50 per full cent, 1/4 cent fluctuation.
    "ZC": ContractSpec("ZC", 50, "0.25", time(19, 0), time(13, 20)),
}
PRESETS["CORN"] = PRESETS["ZC"]


def load_contract_config(path: str) -> dict[str, ContractSpec]:
    """Contract specs from an INI file, one [SYMBOL] section each.

    Keys: k, delta, session_open, session_close (HH:MM or HH:MM:SS).
    """
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_file(fh)
    specs = {}
    for symbol in parser.sections():
        section = parser[symbol]
        specs[symbol] = ContractSpec(
            symbol=symbol,
            k=as_fraction(section["k"]),
            delta=as_fraction(section["delta"]),
            session_open=_parse_time(section["session_open"]) if "session_open" in section else None,
            session_close=_parse_time(section["session_close"]) if "session_close" in section else None,
        )
    return specs


def contract_for(name: str, config_path: Optional[str] = None) -> ContractSpec:
    """Resolve a preset name or a symbol defined in a config file."""
    if config_path:
        specs = load_contract_config(config_path)
        if name in specs:
            return specs[name]
    if name.upper() in PRESETS:
        return PRESETS[name.upper()]
    raise ValueError(f"unknown contract {name!r}; presets: {sorted(set(PRESETS))}")


def session_window_of(spec: ContractSpec) -> SessionWindow:
    if spec.session_open is None or spec.session_close is None:
        raise ValueError(f"contract {spec.symbol} has no session window")
    return SessionWindow(spec.session_open, spec.session_close)


def _parse_time(text: str) -> time:
    parts = [int(p) for p in text.strip().split(":")]
    while len(parts) < 3:
        parts.append(0)
    return time(*parts)


_DATE_SEPARATORS = ("/", "-")


def _parse_timestamp(date_text: str, time_text: str, line_no: int) -> datetime:
    for sep in _DATE_SEPARATORS:
        if sep in date_text:
            try:
                y, m, d = (int(p) for p in date_text.split(sep))
                hh, mm, ss = (int(p) for p in time_text.split(":"))
                return datetime(y, m, d, hh, mm, ss)
            except ValueError:
                break
    raise ParseError(f"line {line_no}: bad timestamp {date_text!r} {time_text!r}")


class ParseError(ValueError):
    """Malformed tick line; the message carries the line number."""


@dataclass(frozen=True)
class TickFormat:
    """Column layout of a tick file: date time price size [condition]."""

    delimiter: Optional[str] = None     # None: any whitespace

    def split(self, line: str) -> list[str]:
        return line.split(self.delimiter) if self.delimiter else line.split()


DEFAULT_FORMAT = TickFormat()


def parse_ticks(source: Union[TextIO, Iterable[str]], spec: ContractSpec,
                fmt: TickFormat = DEFAULT_FORMAT) -> list[Tick]:
    """Parse a tick stream in file order, validating prices on the grid."""
    ticks = []
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = fmt.split(line)
        if len(fields) not in (4, 5):
            raise ParseError(f"line {line_no}: expected 4 or 5 fields, got {len(fields)}")
        ts = _parse_timestamp(fields[0], fields[1], line_no)
        try:
            price = as_fraction(fields[2])
            size = int(fields[3])
        except (ValueError, TypeError) as exc:
            raise ParseError(f"line {line_no}: {exc}") from exc
        try:
            spec.to_deltas(price)
        except GridError as exc:
            raise GridError(f"line {line_no}: {exc}") from exc
        condition = fields[4] if len(fields) == 5 else None
        try:
            ticks.append(Tick(ts, price, size, condition))
        except ValueError as exc:
            raise ParseError(f"line {line_no}: {exc}") from exc
    return ticks


def trade_ticks(ticks: Sequence[Tick]) -> list[Tick]:
    """Drop indicative (size 0) ticks."""
    return [t for t in ticks if not t.indicative]


def serialize_ticks(ticks: Sequence[Tick]) -> str:
    """Canonical TSV tick format (date, time, price, size[, condition])."""
    lines = []
    for t in ticks:
        fields = [t.timestamp.strftime("%Y/%m/%d"), t.timestamp.strftime("%H:%M:%S"),
                  fmt_number(t.price), str(t.size)]
        if t.condition is not None:
            fields.append(t.condition)
        lines.append("\t".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class Session:
    """Ticks of one trading session, labeled by the closing calendar day."""

    day: date
    ticks: tuple[Tick, ...]


@dataclass(frozen=True)
class SessionizeResult:
    sessions: tuple[Session, ...]
    dropped: int


def _session_day(ts: datetime, window: SessionWindow) -> Optional[date]:
    tod = ts.time()
    if window.overnight:
        if tod >= window.open:
            return (ts + timedelta(days=1)).date()
        if tod <= window.close:
            return ts.date()
        return None
    if window.open <= tod <= window.close:
        return ts.date()
    return None


def sessionize(ticks: Sequence[Tick], window: SessionWindow) -> SessionizeResult:
    """Partition ticks into [open, close] sessions, dropping the rest.

    Ticks are stably sorted by timestamp first, which preserves arrival
    order for equal times.
    """
    ordered = sorted(ticks, key=lambda t: t.timestamp)
    buckets: dict[date, list[Tick]] = {}
    dropped = 0
    for tick in ordered:
        day = _session_day(tick.timestamp, window)
        if day is None:
            dropped += 1
            continue
        buckets.setdefault(day, []).append(tick)
    sessions = tuple(Session(day, tuple(buckets[day])) for day in sorted(buckets))
    return SessionizeResult(sessions, dropped)
