"""Core domain types: ticks, contracts, strategies, positions, costs.

A strategy is the chain of integer actions U_1..U_n (buys positive, sells
negative, zeros do nothing); the running position W_i = W_0 + sum(U_1..U_i)
determines it and vice versa, so the two representations are carried by a
pair of small frozen dataclasses plus the conversion functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, time
from fractions import Fraction
from itertools import accumulate
from typing import Optional, Sequence

from .numeric import Rational, as_fraction, as_fractions


class GridError(ValueError):
    """A price is not an integer multiple of the contract's delta."""


@dataclass(frozen=True)
class ContractSpec:
    """Contract economics: dollars per full point and the price grid."""

    symbol: str
    k: Fraction                      # dollars per full price point
    delta: Fraction                  # minimum price fluctuation, points
    session_open: Optional[time] = None
    session_close: Optional[time] = None

    def __post_init__(self):
        object.__setattr__(self, "k", as_fraction(self.k))
        object.__setattr__(self, "delta", as_fraction(self.delta))
        if self.k <= 0:
            raise ValueError("k must be positive")
        if self.delta <= 0:
            raise ValueError("delta must be positive")

    @property
    def delta_dollars(self) -> Fraction:
        """Dollar value of one delta (k * delta)."""
        return self.k * self.delta

    def to_deltas(self, price: Rational) -> int:
        """Price -> integer delta count N, failing off-grid."""
        p = as_fraction(price)
        n = p / self.delta
        if n.denominator != 1:
            raise GridError(
                f"price {p} is not a multiple of delta={self.delta} ({self.symbol})"
            )
        return n.numerator

    def on_grid(self, price: Rational) -> bool:
        try:
            self.to_deltas(price)
        except GridError:
            return False
        return True


@dataclass(frozen=True)
class Tick:
    """One Time & Sales record. size == 0 marks an indicative price."""

    timestamp: datetime
    price: Fraction
    size: int
    condition: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "price", as_fraction(self.price))
        if self.price <= 0:
            raise ValueError("tick price must be positive")
        if self.size < 0:
            raise ValueError("tick size must be non-negative")

    @property
    def indicative(self) -> bool:
        return self.size == 0


@dataclass(frozen=True)
class Strategy:
    """Chain of integer actions; the trading strategy itself."""

    actions: tuple[int, ...]

    def __post_init__(self):
        acts = tuple(int(a) for a in self.actions)
        if len(acts) < 1:
            raise ValueError("a strategy needs at least one action")
        object.__setattr__(self, "actions", acts)

    def __len__(self) -> int:
        return len(self.actions)

    def __neg__(self) -> "Strategy":
        return Strategy(tuple(-a for a in self.actions))

    @property
    def net_action(self) -> int:
        return sum(self.actions)

    @property
    def traded_contracts(self) -> int:
        """Total transacted volume sum(|U_i|)."""
        return sum(abs(a) for a in self.actions)

    def is_do_nothing(self) -> bool:
        return all(a == 0 for a in self.actions)


@dataclass(frozen=True)
class PositionSeries:
    """Chain of positions W_1..W_n reached after each tick's action."""

    positions: tuple[int, ...]
    w0: int = 0

    def __post_init__(self):
        pos = tuple(int(w) for w in self.positions)
        if len(pos) < 1:
            raise ValueError("a position series needs at least one entry")
        object.__setattr__(self, "positions", pos)

    def __len__(self) -> int:
        return len(self.positions)

    def __neg__(self) -> "PositionSeries":
        return PositionSeries(tuple(-w for w in self.positions), -self.w0)


def positions_to_strategy(p: PositionSeries) -> Strategy:
    """Adjacent differences U_i = W_i - W_{i-1}."""
    prev = p.w0
    actions = []
    for w in p.positions:
        actions.append(w - prev)
        prev = w
    return Strategy(tuple(actions))


def strategy_to_positions(s: Strategy, w0: int = 0) -> PositionSeries:
    """Partial sums W_i = w0 + sum(U_1..U_i)."""
    return PositionSeries(tuple(accumulate(s.actions, initial=w0))[1:], w0)


def validate_membership(s: Strategy, limit: int) -> bool:
    """True iff every prefix position stays in [-limit, limit] and W_n = 0."""
    if limit < 1:
        raise ValueError("position limit must be >= 1")
    w = 0
    for a in s.actions:
        w += a
        if abs(w) > limit:
            return False
    return w == 0


@dataclass(frozen=True)
class CostModel:
    """Per-contract transaction costs C_1..C_n, non-negative dollars."""

    per_contract: tuple[Fraction, ...]

    def __post_init__(self):
        cs = as_fractions(self.per_contract)
        if any(c < 0 for c in cs):
            raise ValueError("transaction costs must be non-negative")
        object.__setattr__(self, "per_contract", cs)

    def __len__(self) -> int:
        return len(self.per_contract)

    @classmethod
    def constant(cls, c: Rational, n: int) -> "CostModel":
        """Futures case: one constant cost broadcast to length n."""
        return cls((as_fraction(c),) * n)

    @classmethod
    def of(cls, costs: Sequence[Rational]) -> "CostModel":
        return cls(as_fractions(costs))

    @classmethod
    def equity(cls, fraction: Rational, prices: Sequence[Rational],
               spec: ContractSpec) -> "CostModel":
        """Equity case: C_i = f * k * P_i, cost as a fixed fraction of price."""
        f = as_fraction(fraction)
        if f < 0:
            raise ValueError("cost fraction must be non-negative")
        return cls(tuple(f * spec.k * as_fraction(p) for p in prices))

    @property
    def is_constant(self) -> bool:
        return len(set(self.per_contract)) == 1
