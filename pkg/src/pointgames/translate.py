"""Strategy translators between games with different per-inning budgets.

A Two strategy for one budget plays inside another game by scheduling:
its inning i is hosted at the least unused outer inning whose budget
covers its own, and every other outer inning gets the empty pick.  A One
strategy translates the other way round: the outer picks are embedded
into a padded inner history, with empty picks at the unused positions.

Feasibility is decided from declared bound metadata, never estimated:
the hosting side's budget must reach the hosted side's values
infinitely often.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from pointgames.bounds import BoundSpec
from pointgames.engine import Inning, OneStrategy, TwoStrategy


class TranslationError(ValueError):
    pass


def _check_kinds(from_bound: BoundSpec, to_bound: BoundSpec) -> None:
    for b in (from_bound, to_bound):
        if b.kind == "fin":
            raise TranslationError("the unrestricted-finite game has no translator")


def two_schedule(from_bound: BoundSpec, to_bound: BoundSpec, count: int) -> List[int]:
    """First `count` outer innings hosting the inner Two strategy:
    n_i = least index past n_{i-1} with to_bound(n_i) >= from_bound(i)."""
    _check_kinds(from_bound, to_bound)
    if not to_bound.attains_at_least(from_bound.limsup()):
        raise TranslationError(
            f"target bound {to_bound.describe()} cannot host {from_bound.describe()}"
        )
    out: List[int] = []
    n = -1
    for i in range(count):
        need = from_bound.value(i)
        n += 1
        while to_bound.value(n) < need:
            n += 1
        out.append(n)
    return out


def one_schedule(from_bound: BoundSpec, to_bound: BoundSpec, count: int) -> List[int]:
    """Padded positions m_i of the outer picks inside the inner history:
    m_i = least index past m_{i-1} with from_bound(m_i) >= to_bound(i)."""
    _check_kinds(from_bound, to_bound)
    if not from_bound.attains_at_least(to_bound.limsup()):
        raise TranslationError(
            f"inner bound {from_bound.describe()} cannot absorb picks of {to_bound.describe()}"
        )
    out: List[int] = []
    m = -1
    for i in range(count):
        need = to_bound.value(i)
        m += 1
        while from_bound.value(m) < need:
            m += 1
        out.append(m)
    return out


class TranslatedTwo(TwoStrategy):
    """Host an inner Two strategy inside a game with another bound."""

    name = "translated-two"

    def __init__(self, inner: TwoStrategy, from_bound: BoundSpec, to_bound: BoundSpec):
        super().__init__()
        two_schedule(from_bound, to_bound, 1)  # feasibility check up front
        self.inner = inner
        self.from_bound = from_bound
        self.to_bound = to_bound
        self._schedule: List[int] = []
        self._inner_history: List[Inning] = []
        self.consultations = 0

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        if bound != self.to_bound:
            raise TranslationError("translated strategy started under a different bound")
        self._schedule = two_schedule(self.from_bound, self.to_bound, horizon)
        self._inner_history = []
        self.consultations = 0
        self.inner.start(space, self.from_bound, horizon)

    def choose(self, n: int, move, history: Sequence[Inning]) -> frozenset:
        i = len(self._inner_history)
        if i < len(self._schedule) and self._schedule[i] == n:
            picks = frozenset(self.inner.choose(i, move, self._inner_history))
            self.consultations += 1
            self._inner_history.append(Inning(i, move, picks, self.inner.pop_annotations()))
            self.annotate(inner_inning=i)
            return picks
        return frozenset()

    def inner_transcript(self) -> List[Inning]:
        return list(self._inner_history)


class TranslatedOne(OneStrategy):
    """Run an inner One strategy against a padded history: the outer picks
    sit at the scheduled inner positions, empty picks everywhere else."""

    name = "translated-one"

    def __init__(self, inner: OneStrategy, from_bound: BoundSpec, to_bound: BoundSpec):
        super().__init__()
        one_schedule(from_bound, to_bound, 1)
        self.inner = inner
        self.from_bound = from_bound
        self.to_bound = to_bound
        self._schedule: List[int] = []
        self._inner_history: List[Inning] = []
        self._pending: Optional[object] = None  # inner move awaiting Two's reply

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        if bound != self.to_bound:
            raise TranslationError("translated strategy started under a different bound")
        self._schedule = one_schedule(self.from_bound, self.to_bound, horizon)
        self._inner_history = []
        self._pending = None
        self.inner.start(space, self.from_bound, horizon)

    def _advance_inner(self, upto: int, outer_history: Sequence[Inning]) -> None:
        placed = {m: j for j, m in enumerate(self._schedule[: len(outer_history)])}
        while len(self._inner_history) < upto:
            m = len(self._inner_history)
            if self._pending is not None:
                move = self._pending
                self._pending = None
            else:
                move = self.inner.choose(m, self._inner_history)
                self.inner.pop_annotations()
            reply = frozenset()
            if m in placed:
                reply = outer_history[placed[m]].two_move
            self._inner_history.append(Inning(m, move, reply, {}))

    def choose(self, n: int, history: Sequence[Inning]):
        target = self._schedule[n] if n < len(self._schedule) else len(self._inner_history)
        self._advance_inner(target, history)
        move = self.inner.choose(target, self._inner_history)
        self.inner.pop_annotations()
        self._pending = move
        self.annotate(inner_inning=target, padded_len=len(self._inner_history))
        return move

    def inner_transcript(self) -> List[Inning]:
        return list(self._inner_history)
