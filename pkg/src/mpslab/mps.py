"""Maximum-profit strategy without reinvestment (MPS0).

Dynamic program over position states -W..W: best P&L of any prefix ending
at tick i with position w, paying the per-contract cost on every contract
moved, with the strategy forced flat at the last tick.  O(n (2W+1)^2) time,
exact integer arithmetic after scaling all dollar amounts to a common
denominator.  Ties are broken toward fewer traded contracts, then earlier
transactions, which makes the result deterministic and lines the trade
boundaries up with first occurrences of price extremes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import ContractSpec, Strategy, strategy_to_positions
from .numeric import Rational, as_fraction, as_fractions, money_scale, scaled_ints


@dataclass(frozen=True)
class MpsTrade:
    """One optimal trade: entry tick, exit tick, +1 long or -1 short."""

    start: int
    end: int
    direction: int


@dataclass(frozen=True)
class MpsResult:
    strategy: Strategy
    pl: Fraction
    trades: tuple[MpsTrade, ...]


def trades_of(strategy: Strategy) -> tuple[MpsTrade, ...]:
    """Trades as maximal constant-sign position runs of a strategy."""
    positions = strategy_to_positions(strategy).positions
    trades = []
    start = None
    sign = 0
    for i, w in enumerate(positions):
        s = (w > 0) - (w < 0)
        if s != sign:
            if sign != 0:
                trades.append(MpsTrade(start, i, sign))
            start = i if s != 0 else None
            sign = s
    if sign != 0:
        # flat at the end is guaranteed for universe members
        trades.append(MpsTrade(start, len(positions) - 1, sign))
    return tuple(trades)


def mps0(prices: Sequence[Rational], cost_per_transaction: Rational, limit: int,
         spec: ContractSpec) -> MpsResult:
    """The strategy with maximum P&L under the position limit.

    Returns exactly the maximum of the P&L formula over the universe
    (verified against the brute-force sweep); the do-nothing strategy keeps
    the result at or above zero.
    """
    n = len(prices)
    if n == 0:
        raise ValueError("need at least one price")
    if limit < 1:
        raise ValueError("position limit must be >= 1")
    ps = as_fractions(prices)
    deltas = [spec.to_deltas(x) for x in ps]
    c = as_fraction(cost_per_transaction)
    if c < 0:
        raise ValueError("cost must be non-negative")
    kd = spec.delta_dollars
    scale = money_scale([kd, c])
    kd_i, c_i = scaled_ints([kd, c], scale)

    width = 2 * limit + 1
    neg_inf = None
    # state value: (scaled pl, -traded contracts, -sum of i*|U_i|)
    values = [neg_inf] * width
    values[limit] = (0, 0, 0)
    parents: list[list[int]] = []
    for i in range(n):
        price_i = kd_i * deltas[i]
        nxt = [neg_inf] * width
        par = [0] * width
        last = i == n - 1
        for w_new in ((limit,) if last else range(width)):
            best = None
            best_from = 0
            for w_old in range(width):
                v = values[w_old]
                if v is None:
                    continue
                move = w_new - w_old
                moved = abs(move)
                cand = (v[0] - price_i * move - c_i * moved,
                        v[1] - moved,
                        v[2] - i * moved)
                if best is None or cand > best:
                    best = cand
                    best_from = w_old
            nxt[w_new] = best
            par[w_new] = best_from
        values = nxt
        parents.append(par)

    final = values[limit]
    actions = []
    w = limit
    for i in range(n - 1, -1, -1):
        prev = parents[i][w]
        actions.append(w - prev)
        w = prev
    actions.reverse()
    strategy = Strategy(tuple(actions))
    return MpsResult(strategy, Fraction(final[0], scale), trades_of(strategy))
