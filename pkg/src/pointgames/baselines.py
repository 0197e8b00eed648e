"""Seeded baseline strategies for duels and fuzzing.

These live with the CLI layer, not the core: they are adversaries and
fillers, not the strategies under study.  Every baseline is seeded and
deterministic given its seed, and plays record the seed in their meta.
"""

from __future__ import annotations

import random
from typing import Sequence

from pointgames.coding import min_rank_superset, pair, subset_rank
from pointgames.descriptors import ClusterDescriptor, Space, enumerate_points
from pointgames.engine import Inning, OneStrategy, StrategyInapplicable, TwoStrategy
from pointgames.spaces.fan import Column, ColumnTail, FullFan
from pointgames.spaces.partition import point_block


class LeastTwo(TwoStrategy):
    """Picks the single least point of One's set (the canonical filler)."""

    name = "least"

    def choose(self, n: int, move, history):
        pts = enumerate_points(self.space, move, 1)
        if not pts:
            raise StrategyInapplicable("One's set is empty")
        return frozenset(pts[:1])

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space


class RandomTwo(TwoStrategy):
    """Picks a random legal batch from a window of One's set."""

    name = "random"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space
        self.bound = bound
        self.rng = random.Random(("two", self.seed))

    def choose(self, n: int, move, history):
        budget = self.bound.value(n)
        want = budget if budget is not None else self.rng.randint(1, 3)
        want = min(want, 6)
        window = enumerate_points(self.space, move, max(8, 2 * want))
        if not window:
            raise StrategyInapplicable("One's set is empty")
        lo = 1 if (self.bound.kind == "constant" and self.bound.k == 1) else 0
        size = self.rng.randint(min(lo, len(window)), min(want, len(window)))
        if lo and size == 0:
            size = 1
        return frozenset(self.rng.sample(window, size))


class GreedyTwo(TwoStrategy):
    """Always takes a full budget of least points."""

    name = "greedy"

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space
        self.bound = bound

    def choose(self, n: int, move, history):
        budget = self.bound.value(n)
        want = budget if budget is not None else n + 1
        pts = enumerate_points(self.space, move, want)
        if not pts:
            raise StrategyInapplicable("One's set is empty")
        return frozenset(pts)


def _recent_picks(history: Sequence[Inning], limit: int = 50):
    out = []
    for inning in history[-limit:]:
        out.extend(sorted(inning.two_move, key=repr))
    return out


class RandomTreeOne(OneStrategy):
    """Random children-of-node moves; nodes extend earlier picks half the
    time, applying pressure on the witness set."""

    name = "adversarial"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space
        self.rng = random.Random(("tree-one", self.seed))

    def choose(self, n: int, history):
        picked = _recent_picks(history)
        r = self.rng.random()
        if picked and r < 0.55:
            base = self.rng.choice(picked)
            node = base if r < 0.35 else base + (self.rng.randrange(3),)
        else:
            node = tuple(self.rng.randrange(3) for _ in range(self.rng.randrange(3)))
        excluded = frozenset(
            node + (j,) for j in self.rng.sample(range(6), self.rng.randrange(3))
        )
        return self.space.children(node, excluded=excluded)


class RandomFanOne(OneStrategy):
    """Random column, tail, or full-fan moves with small exclusions."""

    name = "adversarial"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space
        self.rng = random.Random(("fan-one", self.seed))

    def choose(self, n: int, history):
        r = self.rng.random()
        if r < 0.3:
            atoms = [FullFan()]
        elif r < 0.7:
            atoms = [Column(self.rng.randrange(8))]
        else:
            atoms = [ColumnTail(self.rng.randrange(8), self.rng.randrange(12))]
        if self.rng.random() < 0.5:
            atoms.append(Column(self.rng.randrange(8)))
        excluded = frozenset(
            (self.rng.randrange(8), self.rng.randrange(10))
            for _ in range(self.rng.randrange(4))
        )
        return ClusterDescriptor("fan", tuple(atoms), excluded, frozenset())


class RandomPartitionOne(OneStrategy):
    """Mixes full-ground moves, blocks of previously picked points, and
    their continuation nodes: the replay fuzzer of the spread suite."""

    name = "replay-fuzzer"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space
        self.rng = random.Random(("partition-one", self.seed))

    def choose(self, n: int, history):
        picked = _recent_picks(history)
        r = self.rng.random()
        if r < 0.3 or not picked:
            return self.space.full_ground()
        if r < 0.8:
            q = self.rng.choice(picked)
            s, _ = point_block(q)
            if self.rng.random() < 0.5:
                s = s + (self.rng.randrange(4),)
        else:
            s = tuple(self.rng.randrange(3) for _ in range(self.rng.randrange(3)))
        excluded = ()
        if self.rng.random() < 0.4:
            excluded = self.rng.sample(range(60), self.rng.randrange(4))
        return self.space.block(s, excluded=excluded)


class AdversarialPartitionOne(OneStrategy):
    """Targets the spread set: offers blocks inside the joinable region of
    previously picked points, forcing the replacement branch."""

    name = "adversarial"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space
        self.rng = random.Random(("partition-adv", self.seed))

    def choose(self, n: int, history):
        picked = _recent_picks(history)
        if not picked or self.rng.random() < 0.2:
            return self.space.full_ground()
        q = self.rng.choice(picked)
        s, pos = point_block(q)
        r = self.rng.random()
        if r < 0.5:
            # continuation of the picked point's own k-set: deep in its trap
            idx = subset_rank(min_rank_superset([pos], self.space.k))
            node = s + (idx,)
        elif r < 0.8:
            node = s
        else:
            node = s + (self.rng.randrange(3),)
        return self.space.block(node)


class BlockFlooderOne(OneStrategy):
    """Replays the block of Two's least previous pick, inning after inning."""

    name = "block-flooder"

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space

    def choose(self, n: int, history):
        picked = [q for inning in history for q in inning.two_move]
        if not picked:
            return self.space.full_ground()
        s, _ = point_block(min(picked))
        return self.space.block(s)


class RandomScheepersOne(OneStrategy):
    """Random block moves with small exclusions."""

    name = "adversarial"

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space
        self.rng = random.Random(("scheepers-one", self.seed))

    def choose(self, n: int, history):
        i = self.rng.randrange(10)
        excluded = ()
        if self.rng.random() < 0.4:
            excluded = [pair(i, m) for m in self.rng.sample(range(8), self.rng.randrange(3))]
        return self.space.block(i, excluded=excluded)


def one_baseline(space: Space, name: str, seed: int = 0) -> OneStrategy:
    kind = space.name
    if name == "adversarial":
        if kind == "tree":
            return RandomTreeOne(seed)
        if kind == "fan":
            return RandomFanOne(seed)
        if kind == "partition":
            return AdversarialPartitionOne(seed)
        if kind == "scheepers":
            return RandomScheepersOne(seed)
    if name == "replay-fuzzer" and kind == "partition":
        return RandomPartitionOne(seed)
    if name == "block-flooder" and kind == "partition":
        return BlockFlooderOne()
    if name == "random":
        return one_baseline(space, "adversarial", seed)
    raise KeyError(f"no One baseline {name!r} for space {kind!r}")


def two_baseline(space: Space, name: str, seed: int = 0) -> TwoStrategy:
    if name == "least":
        return LeastTwo()
    if name == "random":
        return RandomTwo(seed)
    if name == "greedy":
        return GreedyTwo()
    raise KeyError(f"no Two baseline {name!r}")
