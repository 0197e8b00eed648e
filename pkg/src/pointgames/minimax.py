"""Exhaustive solver for finite, depth-bounded surrogate games.

One move per inning from a fixed pool, Two replies with a budget-bounded
subset, and Two wins when the accumulated picks meet every target set.
"Meets every target" is this artifact's finite stand-in for clustering;
winners here are evidence about the truncated game only, never theorems
about the infinite ones.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from pointgames.coding import pair, seq_to_code, subset_unrank
from pointgames.spaces.partition import PartitionConfig, block_element, kset_points

DEFAULT_NODE_CAP = 10_000_000
NODE_CAP_ENV = "TGAME_NODE_CAP"


class CapacityError(RuntimeError):
    pass


class StrategyShapeError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGameSpec:
    ground: Tuple[int, ...]
    pool: Tuple[FrozenSet[int], ...]
    targets: Tuple[FrozenSet[int], ...]
    depth: int
    budget: Tuple[int, ...]

    def __post_init__(self):
        if not self.pool or any(not mv for mv in self.pool):
            raise ValueError("move pool must be nonempty sets")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if len(self.budget) != self.depth or any(b < 0 for b in self.budget):
            raise ValueError("budget must list one value >= 0 per inning")
        gs = set(self.ground)
        if any(not mv <= gs for mv in self.pool) or any(not t <= gs for t in self.targets):
            raise ValueError("pool and targets must live inside the ground set")

    def two_wins(self, picks: FrozenSet[int]) -> bool:
        return all(picks & t for t in self.targets)

    def to_json(self) -> dict:
        return {
            "ground": sorted(self.ground),
            "pool": [sorted(mv) for mv in self.pool],
            "targets": [sorted(t) for t in self.targets],
            "depth": self.depth,
            "budget": list(self.budget),
        }

    @staticmethod
    def from_json(obj: dict) -> "FiniteGameSpec":
        return FiniteGameSpec(
            tuple(sorted(int(x) for x in obj["ground"])),
            tuple(frozenset(int(x) for x in mv) for mv in obj["pool"]),
            tuple(frozenset(int(x) for x in t) for t in obj["targets"]),
            int(obj["depth"]),
            tuple(int(b) for b in obj["budget"]),
        )


def node_cap(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(NODE_CAP_ENV)
    return int(env) if env else DEFAULT_NODE_CAP


@dataclass
class Solution:
    winner: str  # "one" | "two"
    strategy: dict
    nodes: int


def _reply_options(move: FrozenSet[int], budget: int, maximal_only: bool) -> List[FrozenSet[int]]:
    pts = sorted(move)
    size = min(budget, len(pts))
    if maximal_only:
        # picks only help Two, so only maximal replies matter for the value
        return [frozenset(c) for c in itertools.combinations(pts, size)]
    out = []
    for r in range(size + 1):
        out.extend(frozenset(c) for c in itertools.combinations(pts, r))
    return out


def solve(spec: FiniteGameSpec, cap: Optional[int] = None) -> Solution:
    """Exact alternating minimax with a transposition table keyed by
    (inning, picks-so-far); returns the winner and its full strategy."""
    limit = node_cap(cap)
    counter = {"nodes": 0}
    memo: Dict[Tuple[int, FrozenSet[int]], bool] = {}

    def two_can_win(n: int, picks: FrozenSet[int]) -> bool:
        if spec.two_wins(picks):
            return True
        if n == spec.depth:
            return False
        key = (n, picks)
        hit = memo.get(key)
        if hit is not None:
            return hit
        counter["nodes"] += 1
        if counter["nodes"] > limit:
            raise CapacityError(f"search exceeded the node cap {limit}")
        # One picks the move minimizing Two's prospects
        result = True
        for move in spec.pool:
            if not any(
                two_can_win(n + 1, picks | reply)
                for reply in _reply_options(move, spec.budget[n], True)
            ):
                result = False
                break
        memo[key] = result
        return result

    winner = "two" if two_can_win(0, frozenset()) else "one"

    def build_two(n: int, picks: FrozenSet[int]) -> Optional[dict]:
        if spec.two_wins(picks) or n == spec.depth:
            return None
        moves = {}
        for mi, move in enumerate(spec.pool):
            reply = next(
                r
                for r in _reply_options(move, spec.budget[n], True)
                if two_can_win(n + 1, picks | r)
            )
            moves[str(mi)] = {
                "pick": sorted(reply),
                "next": build_two(n + 1, picks | reply),
            }
        return {"side": "two", "moves": moves}

    def build_one(n: int, picks: FrozenSet[int]) -> Optional[dict]:
        if n == spec.depth:
            return None
        mi = next(
            i
            for i, move in enumerate(spec.pool)
            if not any(
                two_can_win(n + 1, picks | r)
                for r in _reply_options(move, spec.budget[n], True)
            )
        )
        move = spec.pool[mi]
        replies = {}
        for r in _reply_options(move, spec.budget[n], False):
            child_picks = picks | r
            if spec.two_wins(child_picks):
                # cannot happen for a correct One winner at this state
                raise StrategyShapeError("inconsistent solver state")
            replies[_reply_key(r)] = build_one(n + 1, child_picks)
        return {"side": "one", "move": mi, "replies": replies}

    strategy = build_two(0, frozenset()) if winner == "two" else build_one(0, frozenset())
    return Solution(winner, strategy or {}, counter["nodes"])


def _reply_key(reply: FrozenSet[int]) -> str:
    return ",".join(str(x) for x in sorted(reply))


def verify(spec: FiniteGameSpec, strategy: dict, side: str) -> bool:
    """Independent re-check: play the strategy tree against every opponent
    behavior (all pool moves; all replies up to the budget, the empty one
    included) and confirm it wins every completion."""

    def walk_two(node: Optional[dict], n: int, picks: FrozenSet[int]) -> bool:
        if spec.two_wins(picks):
            return True
        if n == spec.depth:
            return False
        if not isinstance(node, dict) or node.get("side") != "two":
            raise StrategyShapeError(f"missing Two node at inning {n}")
        for mi, move in enumerate(spec.pool):
            entry = node["moves"].get(str(mi))
            if entry is None:
                raise StrategyShapeError(f"no reply for move {mi} at inning {n}")
            reply = frozenset(entry["pick"])
            if not reply <= move or len(reply) > spec.budget[n]:
                raise StrategyShapeError(f"illegal scripted reply at inning {n}")
            if not walk_two(entry["next"], n + 1, picks | reply):
                return False
        return True

    def walk_one(node: Optional[dict], n: int, picks: FrozenSet[int]) -> bool:
        if n == spec.depth:
            return not spec.two_wins(picks)
        if not isinstance(node, dict) or node.get("side") != "one":
            raise StrategyShapeError(f"missing One node at inning {n}")
        mi = node["move"]
        if not isinstance(mi, int) or not 0 <= mi < len(spec.pool):
            raise StrategyShapeError(f"bad move index at inning {n}")
        move = spec.pool[mi]
        for reply in _reply_options(move, spec.budget[n], False):
            child_picks = picks | reply
            if spec.two_wins(child_picks):
                return False
            child = node["replies"].get(_reply_key(reply))
            if child is None and n + 1 < spec.depth:
                raise StrategyShapeError(f"no continuation for reply {sorted(reply)}")
            if not walk_one(child, n + 1, child_picks):
                return False
        return True

    if side == "two":
        return walk_two(strategy, 0, frozenset())
    if side == "one":
        return walk_one(strategy, 0, frozenset())
    raise ValueError(f"side must be 'one' or 'two', got {side!r}")


def greedy_strategy(spec: FiniteGameSpec, side: str) -> dict:
    """A deliberately naive full strategy tree (always the first pool move;
    always the least points), for exercising verify on losing sides."""

    def one_node(n: int, picks: FrozenSet[int]) -> Optional[dict]:
        if n == spec.depth:
            return None
        move = spec.pool[0]
        replies = {
            _reply_key(r): one_node(n + 1, picks | r)
            for r in _reply_options(move, spec.budget[n], False)
        }
        return {"side": "one", "move": 0, "replies": replies}

    def two_node(n: int, picks: FrozenSet[int]) -> Optional[dict]:
        if n == spec.depth:
            return None
        moves = {}
        for mi, move in enumerate(spec.pool):
            reply = frozenset(sorted(move)[: spec.budget[n]])
            moves[str(mi)] = {"pick": sorted(reply), "next": two_node(n + 1, picks | reply)}
        return {"side": "two", "moves": moves}

    return (one_node if side == "one" else two_node)(0, frozenset()) or {}


# ---------------------------------------------------------------------------
# truncated partition-space surrogates


def truncate_partition_space(
    cfg: PartitionConfig,
    block_depth: int = 2,
    width: Optional[int] = None,
    depth: int = 3,
    bound: int = 1,
    branch_union_size: int = 2,
    cap: Optional[int] = None,
) -> FiniteGameSpec:
    """Finite surrogate of the partition space: the first `width` points of
    every block whose address uses values below `width` and length below
    `block_depth`; moves are the truncated blocks.

    Neighbourhoods of p exclude finite unions of fat branches, so the
    targets are the complements of unions of up to `branch_union_size`
    truncated fat-branch covers; meeting every target means not being
    trapped in any such union.  Single-cover targets are too weak to show
    the budget sensitivity at this depth: any bound+1 distinct picks per
    cover size escape them regardless of the budget.
    """
    width = width if width is not None else cfg.k + 2
    from math import comb

    n_indices = comb(width, cfg.k)
    nodes: List[Tuple[int, ...]] = [()]
    frontier: List[Tuple[int, ...]] = [()]
    for _ in range(block_depth - 1):
        frontier = [s + (v,) for s in frontier for v in range(width)]
        nodes.extend(frontier)
    if len(nodes) * width > 4096:
        raise CapacityError("truncation parameters blow up the ground set")
    blocks = {s: frozenset(block_element(s, m) for m in range(width)) for s in nodes}
    ground = tuple(sorted(set().union(*blocks.values())))
    pool = tuple(blocks[s] for s in nodes)
    node_set = set(nodes)
    covers = set()
    for g in itertools.product(range(n_indices), repeat=block_depth):
        cover: set = set()
        for j in range(block_depth):
            s = tuple(g[:j])
            if s not in node_set:
                break
            cover.update(kset_points(cfg.k, s, g[j]))
        covers.add(frozenset(cover) & set(ground))
    unions = set()
    cover_list = sorted(covers, key=sorted)
    for r in range(1, branch_union_size + 1):
        for combo in itertools.combinations(cover_list, r):
            unions.add(frozenset().union(*combo))
    targets = tuple(sorted((frozenset(set(ground) - u) for u in unions), key=sorted))
    if len(targets) * len(ground) > 100_000:
        raise CapacityError("truncation parameters produce too many targets")
    return FiniteGameSpec(ground, pool, targets, depth, (bound,) * depth)
