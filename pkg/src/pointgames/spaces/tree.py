"""The sequence-tree space: ground set = all finite sequences over omega.

Points are tuples of naturals.  The only atom kind is the full set of
children of a node; a descriptor clusters at p exactly when it still has
an atom, because the children of one node form an infinite antichain and
a finite antichain plus finitely many points never clusters.  Infinite
branches are not representable points here, by design.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from pointgames.coding import seq_to_code
from pointgames.descriptors import (
    ClusterDescriptor,
    DescriptorError,
    Space,
    enumerate_points,
    iter_points,
)
from pointgames.engine import Inning, OneStrategy, StrategyInapplicable, TwoStrategy

TreePoint = Tuple[int, ...]


@dataclass(frozen=True)
class ChildrenOf:
    node: TreePoint

    def __post_init__(self):
        object.__setattr__(self, "node", tuple(self.node))


def extends(u: TreePoint, v: TreePoint) -> bool:
    """u end-extends v (v is an initial segment of u, possibly equal)."""
    return len(u) >= len(v) and u[: len(v)] == v


def comparable(u: TreePoint, v: TreePoint) -> bool:
    return extends(u, v) or extends(v, u)


def incomparable(u: TreePoint, v: TreePoint) -> bool:
    return not comparable(u, v)


class TreeSpace(Space):
    name = "tree"
    params: dict = {}

    def point_code(self, p) -> int:
        return seq_to_code(p)

    def point_to_json(self, p):
        return list(p)

    def point_from_json(self, obj):
        return tuple(int(x) for x in obj)

    def validate_point(self, p):
        if not isinstance(p, tuple) or not all(isinstance(x, int) and x >= 0 for x in p):
            raise DescriptorError(f"tree point must be a tuple of naturals, got {p!r}")

    def validate_atom(self, atom):
        if not isinstance(atom, ChildrenOf):
            raise DescriptorError(f"unknown tree atom {atom!r}")
        self.validate_point(atom.node)

    def atom_to_json(self, atom):
        return {"kind": "children", "node": list(atom.node)}

    def atom_from_json(self, obj):
        if obj.get("kind") != "children":
            raise DescriptorError(f"unknown tree atom json {obj!r}")
        return ChildrenOf(tuple(int(x) for x in obj["node"]))

    def atom_iter(self, atom) -> Iterator[TreePoint]:
        # code(node + (k,)) = pair(code(node), k) + 1 is increasing in k,
        # so child order k = 0, 1, 2, ... is ascending code order.
        return (atom.node + (k,) for k in itertools.count())

    def atom_contains(self, atom, p) -> bool:
        return len(p) == len(atom.node) + 1 and p[:-1] == atom.node

    def atom_is_infinite(self, atom) -> bool:
        return True

    def clusters(self, d: ClusterDescriptor) -> bool:
        # Any surviving children-atom is an infinite antichain; finite
        # exclusions cannot exhaust it.  Finite-only descriptors never
        # cluster (T_1, p not isolated).
        return len(d.atoms) > 0

    def children(self, node: Iterable[int], excluded=(), extra=()) -> ClusterDescriptor:
        return self.descriptor([ChildrenOf(tuple(node))], excluded, extra)


# ---------------------------------------------------------------------------
# strategies

_SPACE = TreeSpace()


class BranchOne(OneStrategy):
    """One's one-point-game strategy: always offer the children of Two's
    last pick, starting from the root.  Every reply extends the previous
    one, so Two's picks stay on a single branch."""

    name = "branch"

    def __init__(self):
        super().__init__()
        self._last_move = None

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self._last_move = None

    def choose(self, n: int, history: Sequence[Inning]) -> ClusterDescriptor:
        space = _SPACE
        if n == 0 or not history:
            move = space.children(())
        else:
            picks = history[-1].two_move
            if picks:
                node = min(picks, key=space.point_code)
                move = space.children(node)
            else:
                move = self._last_move  # empty pick in the lax game: repeat
        self._last_move = move
        return move


class PairTwo(TwoStrategy):
    """Two's two-point-game strategy: keep a witness set of pairwise
    incomparable previously picked points, one more each inning.

    If One's set has a point incomparable with the whole witness set,
    pick the least such point (plus the least other point as filler).
    Otherwise find a witness element with two incomparable extensions in
    One's set, pick those, and swap them in for it."""

    name = "pair"

    def __init__(self):
        super().__init__()
        self.witness: List[TreePoint] = []

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.witness = []

    def choose(self, n: int, move: ClusterDescriptor, history: Sequence[Inning]) -> frozenset:
        space = _SPACE
        if not isinstance(move, ClusterDescriptor) or move.space != space.name:
            raise StrategyInapplicable("move is not a tree descriptor")
        if not self.witness:
            a, b = self._first_incomparable_pair(space, move)
            picks = frozenset({a, b})
            self.witness = sorted(picks, key=space.point_code)
        else:
            fresh = self._least_fresh(space, move)
            if fresh is not None:
                other = next((q for q in iter_points(space, move) if q != fresh), fresh)
                picks = frozenset({fresh, other})
                self.witness = sorted(self.witness + [fresh], key=space.point_code)
            else:
                w, a1, a2 = self._split_witness(space, move)
                picks = frozenset({a1, a2})
                rest = [x for x in self.witness if x != w]
                self.witness = sorted(rest + [a1, a2], key=space.point_code)
        self.annotate(witness=tuple(self.witness))
        return frozenset(picks)

    def _first_incomparable_pair(self, space, move):
        # Any chain in the described set holds at most one child per atom
        # plus the extras, so a window one larger must contain an
        # incomparable pair; take the least such pair in merged order.
        window = len(move.atoms) + len(move.extra) + len(move.excluded) + 2
        pts = enumerate_points(space, move, window)
        for a, b in itertools.combinations(pts, 2):
            if incomparable(a, b):
                return a, b
        raise StrategyInapplicable("no incomparable pair found in One's set")

    def _fresh_children(self, move, atom) -> Iterator[TreePoint]:
        """Children of the atom incomparable with the whole witness set."""
        t = atom.node
        if any(extends(t, w) for w in self.witness):
            return iter(())
        bad = {w[len(t)] for w in self.witness if extends(w, t) and len(w) > len(t)}

        def gen():
            for j in itertools.count():
                if j in bad:
                    continue
                c = t + (j,)
                if c in move.excluded:
                    continue
                yield c

        return gen()

    def _least_fresh(self, space, move) -> Optional[TreePoint]:
        candidates = []
        for atom in move.atoms:
            c = next(self._fresh_children(move, atom), None)
            if c is not None:
                candidates.append(c)
        for e in move.extra:
            if all(incomparable(e, w) for w in self.witness):
                candidates.append(e)
        if not candidates:
            return None
        return min(candidates, key=space.point_code)

    def _split_witness(self, space, move):
        # No fresh point means every atom's node extends some witness
        # element, whose children then give the incomparable pair.
        for w in sorted(self.witness, key=space.point_code):
            for atom in sorted(move.atoms, key=lambda a: seq_to_code(a.node)):
                if extends(atom.node, w):
                    kids = [
                        atom.node + (j,)
                        for j in range(2 + len(move.excluded))
                        if atom.node + (j,) not in move.excluded
                    ]
                    if len(kids) >= 2:
                        return w, kids[0], kids[1]
            above = sorted(
                (e for e in move.extra if extends(e, w) and e != w),
                key=space.point_code,
            )
            for a1, a2 in itertools.combinations(above, 2):
                if incomparable(a1, a2):
                    return w, a1, a2
        raise StrategyInapplicable("cannot split any witness element inside One's set")


def check_branch_confinement(space: TreeSpace, transcript) -> bool:
    """All of Two's picks across the play are linearly ordered by extension."""
    picks = [p for inning in transcript.innings for p in inning.two_move]
    return all(comparable(u, v) for u, v in itertools.combinations(picks, 2))


def check_pair_witness(space: TreeSpace, transcript) -> bool:
    """Witness after inning n: size >= n+1, pairwise incomparable, all picked."""
    seen = set()
    for inning in transcript.innings:
        seen |= set(inning.two_move)
        w = inning.annotations.get("witness")
        if w is None:
            return False
        w = [tuple(x) for x in w]
        if len(w) < inning.index + 1:
            return False
        if any(comparable(u, v) for u, v in itertools.combinations(w, 2)):
            return False
        if not set(w) <= seen:
            return False
    return True


# ---------------------------------------------------------------------------
# finite-scale antichain extraction


@dataclass
class AntichainResult:
    antichain: Tuple[TreePoint, ...]
    ok: bool
    obstruction: str = ""


def _chain_components(points: Sequence[TreePoint]) -> List[List[TreePoint]]:
    """Split a set whose comparability graph is a union of chains."""
    remaining = sorted(points, key=seq_to_code)
    comps: List[List[TreePoint]] = []
    for p in remaining:
        for comp in comps:
            if any(comparable(p, q) for q in comp):
                comp.append(p)
                break
        else:
            comps.append([p])
    return comps


def extract_antichain(points: Iterable[TreePoint], target: int) -> AntichainResult:
    """Try to pull a `target`-sized antichain out of a finite point set.

    Route one: drop the points with two incomparable extensions in the
    set (the splitting points), then take the top of each maximal chain
    of what is left.  Route two: walk the longest chain of splitting
    points, repeatedly stepping off it with a diverging extension.
    Failure is a value, not an error: not every set has an antichain of
    the requested size along these routes.
    """
    pts = sorted(set(tuple(p) for p in points), key=seq_to_code)
    if not pts:
        return AntichainResult((), False, "empty input")
    splitting = [
        s
        for s in pts
        if any(
            extends(u, s) and extends(v, s) and incomparable(u, v)
            for u, v in itertools.combinations(pts, 2)
        )
    ]
    split_set = set(splitting)

    candidates: List[Tuple[TreePoint, ...]] = []

    rest = [p for p in pts if p not in split_set]
    if rest:
        reps = tuple(max(comp, key=len) for comp in _chain_components(rest))
        candidates.append(reps)

    if splitting:
        chain = _longest_chain(splitting)
        top = chain[-1]
        picked: List[TreePoint] = []
        floor = 0
        for s in chain:
            if len(s) < floor:
                continue
            t = next(
                (
                    t
                    for t in pts
                    if extends(t, s) and t != s and incomparable(t, top)
                ),
                None,
            )
            if t is None:
                continue
            picked.append(t)
            floor = len(t)
        if picked:
            candidates.append(tuple(picked))

    best = max(candidates, key=len, default=())
    if len(best) >= target:
        chosen = tuple(sorted(best, key=seq_to_code)[:target])
        return AntichainResult(chosen, True)
    return AntichainResult(
        tuple(sorted(best, key=seq_to_code)),
        False,
        f"routes found at most {len(best)} pairwise incomparable points, need {target}",
    )


def _longest_chain(points: Sequence[TreePoint]) -> List[TreePoint]:
    pts = sorted(points, key=lambda s: (len(s), seq_to_code(s)))
    best: dict = {}
    for i, p in enumerate(pts):
        chains = [best[j] + [p] for j, q in enumerate(pts[:i]) if extends(p, q)]
        best[i] = max(chains, key=len, default=[p])
    return max(best.values(), key=len, default=[])
