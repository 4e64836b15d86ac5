"""Optimal trading elements: extraction, statistics, and the pattern test.

Running the maximum-profit strategy with an artificial filtering cost FC
turns a tick session into a chain of alternating optimal trades.  A new
trade is born when the price has retraced floor(2 FC / (delta k)) + 1 deltas
from the trailing extreme; the birth closes the previous trade at that
extreme.  Each closed trade is priced with the actual cost C < FC, which
pins its profit to the lattice PL_min + k*delta*i.  The trailing-extreme
scan below is equivalent to the trade boundaries of the dynamic program for
W = 1 and constant cost (that equivalence is a test, not an assumption).
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from datetime import datetime
from fractions import Fraction
from typing import Optional, Sequence

from .model import ContractSpec, Tick
from .numeric import Rational, as_fraction


class OteType(enum.Enum):
    BOTE = "BOTE"     # buying element: starts at a local minimum
    SOTE = "SOTE"     # selling element: starts at a local maximum


class Scenario(enum.Enum):
    PROFIT_GREW = "ProfitGrew"
    REPLACED = "Replaced"
    SESSION_ENDED = "SessionEnded"


def birth_threshold(filtering_cost: Rational, spec: ContractSpec) -> int:
    """Deltas the price must retrace to prove a new trade: floor(2FC/(dk))+1."""
    fc = as_fraction(filtering_cost)
    if fc < 0:
        raise ValueError("filtering cost must be non-negative")
    return math.floor(2 * fc / spec.delta_dollars) + 1


def permitted_profit_grid(filtering_cost: Rational, cost: Rational,
                          spec: ContractSpec, i_max: int) -> tuple[Fraction, ...]:
    """The lattice of closed-trade profits PL_min + k*delta*i, i = 0..i_max."""
    fc = as_fraction(filtering_cost)
    c = as_fraction(cost)
    if c >= fc:
        raise ValueError("actual cost must be below the filtering cost")
    kd = spec.delta_dollars
    pl_min = kd * birth_threshold(fc, spec) - 2 * c
    return tuple(pl_min + kd * i for i in range(i_max + 1))


def on_permitted_grid(pl_value: Rational, filtering_cost: Rational, cost: Rational,
                      spec: ContractSpec) -> bool:
    """True iff the profit sits exactly on the permitted lattice."""
    kd = spec.delta_dollars
    pl_min = kd * birth_threshold(filtering_cost, spec) - 2 * as_fraction(cost)
    steps = (as_fraction(pl_value) - pl_min) / kd
    return steps.denominator == 1 and steps >= 0


@dataclass(frozen=True)
class AttachedSamples:
    """Distribution samples attached to one trade's tick span."""

    a_increments: tuple[float, ...]       # waiting times between ticks, seconds
    b_increments: tuple[Fraction, ...]    # price increments between ticks
    prices: tuple[Fraction, ...]
    volumes: tuple[int, ...]


@dataclass(frozen=True)
class OteRecord:
    """One optimal trade and its attached properties.

    End-side fields are None on a live (born but unfinished) snapshot; every
    record the extractor emits has them set.
    """

    ote_type: OteType
    t_start: datetime
    p_start: Fraction
    t_birth: datetime
    p_birth: Fraction
    t_end: Optional[datetime]
    p_end: Optional[Fraction]
    pl: Optional[Fraction]
    duration: Optional[float]             # seconds, start to end
    tick_count: int
    volume_total: int
    samples: AttachedSamples
    filtering_cost: Fraction
    scenario: Optional[Scenario]
    closed: bool                          # ended by replacement, not session end


class OteExtractor:
    """Streaming trade extraction; push ticks, collect finished records.

    Batch extraction is a thin wrapper over this, so streaming and batch
    modes produce identical records by construction.
    """

    def __init__(self, filtering_cost: Rational, cost: Rational,
                 spec: ContractSpec, include_indicative: bool = False):
        self.fc = as_fraction(filtering_cost)
        self.cost = as_fraction(cost)
        if self.cost >= self.fc:
            raise ValueError("actual cost C must be below the filtering cost FC")
        self.spec = spec
        self.include_indicative = include_indicative
        self.threshold = birth_threshold(self.fc, spec)
        self._ticks: list[Tick] = []
        self._deltas: list[int] = []
        self._records: list[OteRecord] = []
        # before the first birth: earliest minimum and maximum ticks so far
        self._min_i: Optional[int] = None
        self._max_i: Optional[int] = None
        # current born trade: +1 BOTE / -1 SOTE, start, birth, and the
        # first occurrence of the trailing profit-side extreme
        self._dir = 0
        self._start_i = self._birth_i = self._ext_i = 0

    @property
    def records(self) -> list[OteRecord]:
        """Records finished so far (closed by replacement)."""
        return list(self._records)

    def push(self, tick: Tick) -> list[OteRecord]:
        """Consume one tick; return any record it closes."""
        if tick.indicative and not self.include_indicative:
            return []
        if self._ticks and tick.timestamp < self._ticks[-1].timestamp:
            raise ValueError("ticks must be time-ordered")
        i = len(self._ticks)
        self._ticks.append(tick)
        self._deltas.append(self.spec.to_deltas(tick.price))
        if self._dir == 0:
            self._scan_unborn(i)
            return []
        return self._scan_born(i)

    def finish(self) -> list[OteRecord]:
        """Finalize the session-terminated trade, if one was born."""
        if self._dir == 0:
            return []
        record = self._build_record(replaced=False)
        self._records.append(record)
        self._dir = 0
        return [record]

    def current(self) -> Optional[OteRecord]:
        """Snapshot of the live trade: born, not ended, end fields None."""
        if self._dir == 0:
            return None
        s, b = self._start_i, self._birth_i
        ticks = self._ticks[s:]
        prices = tuple(t.price for t in ticks)
        samples = AttachedSamples(
            a_increments=tuple((ticks[j + 1].timestamp - ticks[j].timestamp).total_seconds()
                               for j in range(len(ticks) - 1)),
            b_increments=tuple(prices[j + 1] - prices[j] for j in range(len(prices) - 1)),
            prices=prices,
            volumes=tuple(t.size for t in ticks),
        )
        return OteRecord(
            ote_type=OteType.BOTE if self._dir > 0 else OteType.SOTE,
            t_start=self._ticks[s].timestamp, p_start=self._ticks[s].price,
            t_birth=self._ticks[b].timestamp, p_birth=self._ticks[b].price,
            t_end=None, p_end=None, pl=None, duration=None,
            tick_count=len(ticks), volume_total=sum(t.size for t in ticks),
            samples=samples, filtering_cost=self.fc, scenario=None, closed=False,
        )

    def _scan_unborn(self, i: int) -> None:
        n = self._deltas[i]
        if self._min_i is None:
            self._min_i = self._max_i = i
            return
        if n < self._deltas[self._min_i]:
            self._min_i = i
        if n > self._deltas[self._max_i]:
            self._max_i = i
        if n - self._deltas[self._min_i] >= self.threshold:
            self._begin(+1, self._min_i, i)
        elif self._deltas[self._max_i] - n >= self.threshold:
            self._begin(-1, self._max_i, i)

    def _scan_born(self, i: int) -> list[OteRecord]:
        n = self._deltas[i]
        ext = self._deltas[self._ext_i]
        if (n - ext) * self._dir > 0:
            self._ext_i = i
            return []
        if (ext - n) * self._dir >= self.threshold:
            record = self._build_record(replaced=True)
            self._records.append(record)
            self._begin(-self._dir, self._ext_i, i)
            return [record]
        return []

    def _begin(self, direction: int, start_i: int, birth_i: int) -> None:
        self._dir = direction
        self._start_i = start_i
        self._birth_i = birth_i
        self._ext_i = birth_i

    def _build_record(self, replaced: bool) -> OteRecord:
        s, b, e = self._start_i, self._birth_i, self._ext_i
        ticks = self._ticks[s:e + 1]
        prices = tuple(t.price for t in ticks)
        samples = AttachedSamples(
            a_increments=tuple((ticks[j + 1].timestamp - ticks[j].timestamp).total_seconds()
                               for j in range(len(ticks) - 1)),
            b_increments=tuple(prices[j + 1] - prices[j] for j in range(len(prices) - 1)),
            prices=prices,
            volumes=tuple(t.size for t in ticks),
        )
        move = abs(self._deltas[e] - self._deltas[s])
        pl = self.spec.delta_dollars * move - 2 * self.cost
        grew = (self._deltas[e] - self._deltas[b]) * self._dir > 0
        if grew:
            scenario = Scenario.PROFIT_GREW
        else:
            scenario = Scenario.REPLACED if replaced else Scenario.SESSION_ENDED
        return OteRecord(
            ote_type=OteType.BOTE if self._dir > 0 else OteType.SOTE,
            t_start=self._ticks[s].timestamp,
            p_start=self._ticks[s].price,
            t_birth=self._ticks[b].timestamp,
            p_birth=self._ticks[b].price,
            t_end=self._ticks[e].timestamp,
            p_end=self._ticks[e].price,
            pl=pl,
            duration=(self._ticks[e].timestamp - self._ticks[s].timestamp).total_seconds(),
            tick_count=e - s + 1,
            volume_total=sum(t.size for t in ticks),
            samples=samples,
            filtering_cost=self.fc,
            scenario=scenario,
            closed=replaced,
        )


def extract_otes(ticks: Sequence[Tick], filtering_cost: Rational, cost: Rational,
                 spec: ContractSpec, include_indicative: bool = False) -> list[OteRecord]:
    """All optimal trades of one time-ordered tick session."""
    extractor = OteExtractor(filtering_cost, cost, spec, include_indicative)
    for tick in ticks:
        extractor.push(tick)
    extractor.finish()
    return extractor.records


def classify_scenario(current: OteRecord, subsequent: Sequence[Tick],
                      spec: ContractSpec) -> Scenario:
    """First thing that happens to a born trade: growth, replacement, or end.

    Growth means a tick at least one delta beyond the trade's profit-side
    extreme; replacement means the opposite-type birth arrives first.
    """
    threshold = birth_threshold(current.filtering_cost, spec)
    direction = 1 if current.ote_type is OteType.BOTE else -1
    ext = spec.to_deltas(current.p_end if current.p_end is not None else current.p_birth)
    for tick in subsequent:
        n = spec.to_deltas(tick.price)
        if (n - ext) * direction > 0:
            return Scenario.PROFIT_GREW
        if (ext - n) * direction >= threshold:
            return Scenario.REPLACED
    return Scenario.SESSION_ENDED


@dataclass(frozen=True)
class OteStats:
    """Sample statistics block for one trade metric."""

    count: int
    mean: Fraction
    minimum: Fraction
    min_count: int
    maximum: Fraction
    max_count: int
    variance: Fraction
    std_dev: float
    skewness: Optional[float]
    excess_kurtosis: Optional[float]
    histogram: tuple[tuple[float, float, int], ...]
    ecdf: tuple[tuple[Fraction, Fraction], ...]
    epmf: tuple[tuple[Fraction, int], ...]


def _bin_count(n: int, bins: Optional[int]) -> int:
    if bins is not None:
        if bins < 1:
            raise ValueError("bin count must be >= 1")
        return bins
    return 7 if n <= 10 else math.ceil(math.log2(n)) + 1


def sample_stats(values: Sequence[Rational], bins: Optional[int] = None) -> OteStats:
    """Exact sample moments with bias-corrected skewness and excess kurtosis.

    Variance uses the n-1 divisor; skewness is the adjusted Fisher-Pearson
    estimate sqrt(n(n-1))/(n-2) * m3/m2^(3/2) (n >= 3) and excess kurtosis
    the matching bias-corrected estimate (n >= 4; None below).
    """
    n = len(values)
    if n < 2:
        raise ValueError("need at least 2 samples")
    xs = sorted(as_fraction(v) for v in values)
    mean = sum(xs) / n
    m2 = sum((x - mean) ** 2 for x in xs) / n
    m3 = sum((x - mean) ** 3 for x in xs) / n
    m4 = sum((x - mean) ** 4 for x in xs) / n
    variance = n * m2 / (n - 1)
    std_dev = math.sqrt(variance)
    skewness = None
    if n >= 3 and m2 > 0:
        g1 = float(m3) / float(m2) ** 1.5
        skewness = g1 * math.sqrt(n * (n - 1)) / (n - 2)
    excess_kurtosis = None
    if n >= 4 and m2 > 0:
        g2 = float(m4) / float(m2) ** 2 - 3
        excess_kurtosis = ((n + 1) * g2 + 6) * (n - 1) / ((n - 2) * (n - 3))

    counter = Counter(xs)
    lo, hi = xs[0], xs[-1]
    k = _bin_count(n, bins)
    histogram = []
    if hi == lo:
        histogram.append((float(lo), float(hi), n))
    else:
        width = (hi - lo) / k
        edges = [lo + width * j for j in range(k + 1)]
        for j in range(k):
            left, right = edges[j], edges[j + 1]
            if j == 0:
                count = sum(1 for x in xs if left <= x <= right)
            else:
                count = sum(1 for x in xs if left < x <= right)
            histogram.append((float(left), float(right), count))

    ecdf = []
    cum = 0
    for value in sorted(counter):
        cum += counter[value]
        ecdf.append((value, Fraction(cum, n)))
    epmf = tuple((value, counter[value]) for value in sorted(counter))

    return OteStats(
        count=n, mean=mean,
        minimum=lo, min_count=counter[lo],
        maximum=hi, max_count=counter[hi],
        variance=variance, std_dev=std_dev,
        skewness=skewness, excess_kurtosis=excess_kurtosis,
        histogram=tuple(histogram), ecdf=tuple(ecdf), epmf=epmf,
    )


_METRICS = {
    "profit": lambda r: r.pl,
    "duration": lambda r: r.duration,
    "ticks": lambda r: r.tick_count,
    "volume": lambda r: r.volume_total,
}


def ote_stats(records: Sequence, metric: str = "profit",
              include_open: bool = False, bins: Optional[int] = None) -> OteStats:
    """Statistics of one metric over trade records (or raw sample values).

    Session-terminated records are excluded unless ``include_open`` is set.
    """
    if records and isinstance(records[0], OteRecord):
        if metric not in _METRICS:
            raise ValueError(f"unknown metric {metric!r}; one of {sorted(_METRICS)}")
        pick = _METRICS[metric]
        values = [v for r in records if r.closed or include_open
                  if (v := pick(r)) is not None]
    else:
        values = list(records)
    return sample_stats(values, bins)


@dataclass(frozen=True)
class Tolerances:
    """Slack for the pattern comparisons, in delta units.

    Equality holds within eq_deltas; "less than" requires the right side to
    exceed the left by more than lt_deltas deltas.
    """

    eq_deltas: int = 0
    lt_deltas: int = 0


class HeadShouldersMonitor:
    """Head-and-shoulders test over a six-trade chain (B1,S2,B3,S4,B5,S6).

    The five fixed comparisons are evaluated once at construction; per-tick
    monitoring only compares the arriving price with B5's birth price.
    """

    def __init__(self, chain: Sequence[OteRecord], tolerances: Tolerances,
                 spec: ContractSpec):
        if len(chain) < 6:
            raise ValueError("need a chain of at least six trades")
        window = list(chain[-6:])
        expected = [OteType.BOTE, OteType.SOTE] * 3
        if [r.ote_type for r in window] != expected:
            raise ValueError("chain must alternate BOTE/SOTE starting with a BOTE")
        b1, _, b3, _, b5, _ = window
        delta = spec.delta
        tol = tolerances
        eq = lambda x, y: abs(x - y) <= tol.eq_deltas * delta
        lt = lambda x, y: x < y - tol.lt_deltas * delta
        self.fixed_ok = (
            lt(b1.p_start, b3.p_start)
            and eq(b3.p_start, b5.p_start)
            and lt(b1.p_end, b3.p_end)
            and lt(b5.p_end, b3.p_end)
        )
        self._eq = eq
        self.monitored_price = b5.p_birth

    def check(self, price: Rational) -> bool:
        return self.fixed_ok and self._eq(as_fraction(price), self.monitored_price)


def head_and_shoulders(chain: Sequence[OteRecord], current_price: Rational,
                       tolerances: Tolerances, spec: ContractSpec) -> bool:
    """One-shot evaluation of the pattern predicate at the current price."""
    return HeadShouldersMonitor(chain, tolerances, spec).check(current_price)
