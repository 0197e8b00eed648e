"""Almost-disjoint family construction from a Two strategy.

Walk the binary tree in length-then-value order.  Each node is offered
the complement of everything handed out so far, and the strategy's reply
(to the chain history leading to that node) becomes the node's set.
Along any infinite branch the replies union to a set the strategy
guarantees clusters; two branches share exactly the replies below their
split, which is what makes the family almost disjoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Tuple

from pointgames.bounds import BoundSpec
from pointgames.descriptors import Space, contains, remove_finite
from pointgames.engine import Inning, TwoStrategy


def binary_nodes(depth: int) -> List[str]:
    """'' , '0', '1', '00', ... : every node of length <= depth, ordered by
    length then binary value, so prefixes always come first."""
    out = [""]
    for length in range(1, depth + 1):
        for bits in itertools.product("01", repeat=length):
            out.append("".join(bits))
    return out


@dataclass
class ADFamily:
    depth: int
    entries: Dict[str, FrozenSet] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def branch_union(self, leaf: str) -> FrozenSet:
        out = set()
        for j in range(len(leaf) + 1):
            out |= self.entries[leaf[:j]]
        return frozenset(out)

    def shared_prefix_union(self, g: str, h: str) -> FrozenSet:
        k0 = next((k for k in range(min(len(g), len(h))) if g[k] != h[k]), None)
        if k0 is None:
            k0 = min(len(g), len(h))
        out = set()
        for j in range(k0 + 1):
            out |= self.entries[g[:j]]
        return frozenset(out)


def build_ad_family(
    space: Space,
    two: TwoStrategy,
    depth: int,
    bound: BoundSpec = None,
) -> ADFamily:
    """Reply sets for every binary node of length <= depth.

    The strategy must be deterministic: each node replays the chain
    history from the recorded offers before answering the node's own
    offer.  An empty reply on a clustering offer is recorded as-is with
    a warning; the construction continues.
    """
    bound = bound or BoundSpec.fin()
    fam = ADFamily(depth)
    offers: Dict[str, object] = {}
    used: set = set()
    full = space.full_ground()
    for node in binary_nodes(depth):
        offer = remove_finite(space, full, used)
        offers[node] = offer
        two.start(space, bound, depth + 1)
        history: List[Inning] = []
        for j in range(len(node)):
            prefix = node[:j]
            replay = frozenset(two.choose(j, offers[prefix], history))
            two.pop_annotations()
            if replay != fam.entries[prefix]:
                raise RuntimeError(
                    f"strategy is not deterministic: node {prefix!r} replayed differently"
                )
            history.append(Inning(j, offers[prefix], replay, {}))
        reply = frozenset(two.choose(len(node), offer, history))
        two.pop_annotations()
        bad = [p for p in reply if not contains(space, offer, p)]
        if bad:
            raise RuntimeError(f"strategy reply at node {node!r} left the offered set")
        if not reply:
            fam.warnings.append(f"degenerate reply: empty set at node {node!r}")
        fam.entries[node] = reply
        used |= set(reply)
    return fam


def prefix_law_violations(fam: ADFamily, length: int) -> List[Tuple[str, str]]:
    """Pairs of distinct length-`length` nodes whose branch unions do not
    intersect in exactly the shared-prefix replies."""
    leaves = [n for n in fam.entries if len(n) == length]
    bad = []
    for g, h in itertools.combinations(sorted(leaves), 2):
        actual = fam.branch_union(g) & fam.branch_union(h)
        if actual != fam.shared_prefix_union(g, h):
            bad.append((g, h))
    return bad
