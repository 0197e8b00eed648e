"""The fan space: ground set omega x omega, points (column, row).

A set clusters at p exactly when its column intersections are unbounded,
so within the atom language (whole columns, column tails, the full fan)
the test is simply whether an atom survives: finite exclusions cannot
bound an infinite column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from pointgames.bounds import BoundSpec
from pointgames.coding import pair, unpair
from pointgames.descriptors import ClusterDescriptor, DescriptorError, Space
from pointgames.engine import Inning, StrategyInapplicable, TwoStrategy

FanPoint = Tuple[int, int]


@dataclass(frozen=True)
class Column:
    n: int


@dataclass(frozen=True)
class ColumnTail:
    n: int
    start: int


@dataclass(frozen=True)
class FullFan:
    pass


class FanSpace(Space):
    name = "fan"
    params: dict = {}

    def point_code(self, p) -> int:
        return pair(p[0], p[1])

    def point_to_json(self, p):
        return [p[0], p[1]]

    def point_from_json(self, obj):
        return (int(obj[0]), int(obj[1]))

    def validate_point(self, p):
        if (
            not isinstance(p, tuple)
            or len(p) != 2
            or not all(isinstance(x, int) and x >= 0 for x in p)
        ):
            raise DescriptorError(f"fan point must be a pair of naturals, got {p!r}")

    def validate_atom(self, atom):
        if isinstance(atom, (Column, FullFan)):
            return
        if isinstance(atom, ColumnTail):
            if atom.start < 0:
                raise DescriptorError("column tail start must be >= 0")
            return
        raise DescriptorError(f"unknown fan atom {atom!r}")

    def atom_to_json(self, atom):
        if isinstance(atom, Column):
            return {"kind": "column", "n": atom.n}
        if isinstance(atom, ColumnTail):
            return {"kind": "tail", "n": atom.n, "from": atom.start}
        return {"kind": "full"}

    def atom_from_json(self, obj):
        kind = obj.get("kind")
        if kind == "column":
            return Column(int(obj["n"]))
        if kind == "tail":
            return ColumnTail(int(obj["n"]), int(obj["from"]))
        if kind == "full":
            return FullFan()
        raise DescriptorError(f"unknown fan atom json {obj!r}")

    def atom_iter(self, atom) -> Iterator[FanPoint]:
        if isinstance(atom, Column):
            return ((atom.n, m) for m in itertools.count())
        if isinstance(atom, ColumnTail):
            return ((atom.n, m) for m in itertools.count(atom.start))
        return (unpair(c) for c in itertools.count())

    def atom_contains(self, atom, p) -> bool:
        if isinstance(atom, Column):
            return p[0] == atom.n
        if isinstance(atom, ColumnTail):
            return p[0] == atom.n and p[1] >= atom.start
        return True

    def atom_is_infinite(self, atom) -> bool:
        return True

    def clusters(self, d: ClusterDescriptor) -> bool:
        return len(d.atoms) > 0

    def full_ground(self) -> ClusterDescriptor:
        return self.descriptor([FullFan()])

    def column(self, n: int) -> ClusterDescriptor:
        return self.descriptor([Column(n)])


def _column_points(move: ClusterDescriptor, col: int, count: int) -> list:
    """First `count` points of the described set inside one column."""
    out = []
    covered = any(
        isinstance(a, FullFan)
        or (isinstance(a, Column) and a.n == col)
        for a in move.atoms
    )
    tail_starts = [a.start for a in move.atoms if isinstance(a, ColumnTail) and a.n == col]
    start = 0 if covered else (min(tail_starts) if tail_starts else None)
    extras = sorted(p[1] for p in move.extra if p[0] == col)
    if start is None:
        rows = extras
    else:
        rows_iter = (m for m in itertools.count(start))
        rows = []
        seen = set()
        for m in rows_iter:
            if len(rows) >= count + len(move.excluded):
                break
            rows.append(m)
            seen.add(m)
        rows.extend(e for e in extras if e < start and e not in seen)
        rows.sort()
    for m in rows:
        p = (col, m)
        if p in move.excluded and p not in move.extra:
            continue
        out.append(p)
        if len(out) == count:
            break
    return out


def _column_count_at_least(move: ClusterDescriptor, col: int, need: int) -> bool:
    return len(_column_points(move, col, need)) >= need


class ColumnMarkovTwo(TwoStrategy):
    """Two's Markov strategy for the growing-budget game: at inning j,
    take the budget's worth of points from the least column still rich
    enough.  Depends only on the inning index and One's current move."""

    name = "markov"

    def __init__(self, bound: BoundSpec = None):
        super().__init__()
        self.bound = bound

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        if self.bound is None:
            self.bound = bound

    def choose(self, n: int, move: ClusterDescriptor, history: Sequence[Inning]) -> frozenset:
        if move.space != "fan":
            raise StrategyInapplicable("move is not a fan descriptor")
        need = self.bound.value(n)
        if need is None:
            need = n + 1  # unrestricted game: still make unbounded progress
        cols = set()
        full = False
        for a in move.atoms:
            if isinstance(a, (Column, ColumnTail)):
                cols.add(a.n)
            else:
                full = True
        cols.update(p[0] for p in move.extra)
        if full:
            top = max(cols, default=0) + 1
            cols.update(range(top + 1))
        for col in sorted(cols):
            pts = _column_points(move, col, need)
            if len(pts) >= need:
                return frozenset(pts[:need])
        raise StrategyInapplicable(
            f"no column of One's set holds {need} points at inning {n}"
        )


def check_markov_progress(space: FanSpace, transcript, bound: BoundSpec) -> bool:
    """Move j sits in one column with exactly budget(j) points, and the
    running best column count dominates the budgets seen so far."""
    col_points: dict = {}
    high = 0
    for inning in transcript.innings:
        need = bound.value(inning.index)
        picks = inning.two_move
        cols = {p[0] for p in picks}
        if len(cols) != 1 or len(picks) != need:
            return False
        col = next(iter(cols))
        col_points.setdefault(col, set()).update(picks)
        high = max(high, need)
        if max(len(s) for s in col_points.values()) < high:
            return False
    return True
