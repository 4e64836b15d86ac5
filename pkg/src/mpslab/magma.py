"""The capped position algebra and the strategy composition it induces.

Coordinate addition that clamps into [-W, W] makes the set of position
series a commutative, non-associative magma with identity (the do-nothing
position) and unique inverses.  Subtraction is only partial: a - b exists
iff |a - b| <= W.  Solving a + x = c can have zero, one, or |a|+1 solutions;
the minimum-absolute-value one is the canonical result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import PositionSeries, Strategy, validate_membership


@dataclass(frozen=True)
class CappedInt:
    """An integer confined to [-limit, limit]."""

    value: int
    limit: int

    def __post_init__(self):
        if self.limit < 1:
            raise ValueError("limit must be >= 1")
        if abs(self.value) > self.limit:
            raise ValueError(f"|{self.value}| exceeds limit {self.limit}")

    def __neg__(self) -> "CappedInt":
        return CappedInt(-self.value, self.limit)


def clamp(x: int, limit: int) -> int:
    return max(-limit, min(limit, x))


def _same_limit(a: CappedInt, b: CappedInt) -> int:
    if a.limit != b.limit:
        raise ValueError(f"limit mismatch: {a.limit} vs {b.limit}")
    return a.limit


def oplus(a: CappedInt, b: CappedInt) -> CappedInt:
    """Clamped addition; commutative, identity 0, inverse -a."""
    w = _same_limit(a, b)
    return CappedInt(clamp(a.value + b.value, w), w)


def ominus(a: CappedInt, b: CappedInt) -> Optional[CappedInt]:
    """Partial subtraction: a - b when it stays inside the limit, else None.

    Where a (+) x = a has several solutions the returned difference is the
    one with minimum absolute value, which keeps it unique.
    """
    w = _same_limit(a, b)
    diff = a.value - b.value
    if abs(diff) > w:
        return None
    return CappedInt(diff, w)


def solution_set(b: CappedInt, c: CappedInt) -> tuple[CappedInt, ...]:
    """All x solving b (+) x = c.

    Empty iff |c - b| > W; the single c - b when |c| < W; an interval of
    |b| + 1 values when c sits on the boundary |c| = W.
    """
    w = _same_limit(b, c)
    if abs(c.value - b.value) > w:
        return ()
    if abs(c.value) < w:
        return (CappedInt(c.value - b.value, w),)
    if c.value == w:
        lo, hi = w - b.value, w
    else:
        lo, hi = -w, -w - b.value
    return tuple(CappedInt(x, w) for x in range(lo, hi + 1))


@dataclass(frozen=True)
class CayleyStats:
    pairs: int
    clamped: int
    ordinary: int
    undefined_sub: int


def cayley_stats(limit: int) -> CayleyStats:
    """Closed-form table census: W(W+1) clamps, 3W^2+3W+1 ordinary sums."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    w = limit
    return CayleyStats(
        pairs=(2 * w + 1) ** 2,
        clamped=w * (w + 1),
        ordinary=3 * w * w + 3 * w + 1,
        undefined_sub=w * (w + 1),
    )


def cayley_table(limit: int, op: str = "plus") -> list[list[Optional[int]]]:
    """The full table, rows indexed by the left operand -W..W."""
    if op not in ("plus", "minus"):
        raise ValueError("op must be 'plus' or 'minus'")
    w = limit
    values = range(-w, w + 1)
    table = []
    for a in values:
        row = []
        for b in values:
            if op == "plus":
                row.append(oplus(CappedInt(a, w), CappedInt(b, w)).value)
            else:
                res = ominus(CappedInt(a, w), CappedInt(b, w))
                row.append(None if res is None else res.value)
        table.append(row)
    return table


def _check_member(series: PositionSeries, limit: int, name: str) -> None:
    if series.w0 != 0 or series.positions[-1] != 0 or any(
            abs(w) > limit for w in series.positions):
        raise ValueError(f"{name} is not a member of the W={limit} position universe")


def positions_oplus(a: PositionSeries, b: PositionSeries, limit: int) -> PositionSeries:
    """Coordinate-wise clamped addition of two position series."""
    if len(a) != len(b):
        raise ValueError("position series must have equal length")
    _check_member(a, limit, "left operand")
    _check_member(b, limit, "right operand")
    return PositionSeries(tuple(clamp(x + y, limit)
                                for x, y in zip(a.positions, b.positions)))


def strategies_compose(a: Strategy, b: Strategy, limit: int) -> Strategy:
    """Composition of strategies induced by the position addition.

    Coordinate i of the result is
    ([W_{i-1,a} + U_{i,a}] (+) [W_{i-1,b} + U_{i,b}]) - (W_{i-1,a} (+) W_{i-1,b}),
    which is exactly the positions-route sum converted back to actions.
    """
    if len(a) != len(b):
        raise ValueError("strategies must have equal length")
    if not validate_membership(a, limit) or not validate_membership(b, limit):
        raise ValueError(f"both strategies must be members for W={limit}")
    wa = wb = 0
    actions = []
    for ua, ub in zip(a.actions, b.actions):
        before = clamp(wa + wb, limit)
        wa += ua
        wb += ub
        after = clamp(wa + wb, limit)
        actions.append(after - before)
    return Strategy(tuple(actions))
