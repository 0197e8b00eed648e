"""Scheepers's block space: omega split into blocks Y_i = {pair(i, m)}.

One's strategy here is built from a function F mapping each finite
sequence of nonempty finite sets (in pairwise distinct blocks) to a
fresh block index.  F is defined by induction along a fixed injective
enumeration of all such sequences: the output is the least block index
not yet used and not touched by the input.  That gives the two
properties everything else leans on: the output block is disjoint from
the input sets, and distinct inputs get distinct outputs.

Sequence codes explode for long plays, so the induction is evaluated
literally only below a scan cap; beyond it, outputs are assigned in
query order, which preserves both properties for every sequence that
actually occurs.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from pointgames.coding import code_to_seq, pair, seq_to_code, unpair
from pointgames.descriptors import ClusterDescriptor, DescriptorError, Space
from pointgames.engine import Inning, OneStrategy, StrategyInapplicable

SeqOfSets = Tuple[Tuple[int, ...], ...]  # each entry sorted, one block per entry


@dataclass(frozen=True)
class Block:
    i: int


class ScheepersSpace(Space):
    name = "scheepers"
    params: dict = {}

    def point_code(self, p) -> int:
        return p

    def point_to_json(self, p):
        return p

    def point_from_json(self, obj):
        return int(obj)

    def validate_point(self, p):
        if not isinstance(p, int) or p < 0:
            raise DescriptorError(f"point must be a natural, got {p!r}")

    def validate_atom(self, atom):
        if not isinstance(atom, Block) or atom.i < 0:
            raise DescriptorError(f"unknown atom {atom!r}")

    def atom_to_json(self, atom):
        return {"kind": "block", "i": atom.i}

    def atom_from_json(self, obj):
        if obj.get("kind") != "block":
            raise DescriptorError(f"unknown atom json {obj!r}")
        return Block(int(obj["i"]))

    def atom_iter(self, atom) -> Iterator[int]:
        return (pair(atom.i, m) for m in itertools.count())

    def atom_contains(self, atom, p) -> bool:
        return unpair(p)[0] == atom.i

    def atom_is_infinite(self, atom) -> bool:
        return True

    def clusters(self, d: ClusterDescriptor) -> bool:
        # Basic neighbourhoods of p drop only finitely many points from
        # each block, so any surviving block atom clusters.
        return len(d.atoms) > 0

    def block(self, i: int, excluded=()) -> ClusterDescriptor:
        return self.descriptor([Block(i)], excluded=excluded)


def block_of(p: int) -> int:
    return unpair(p)[0]


# ---------------------------------------------------------------------------
# canonical sequence coding


class FPlayError(ValueError):
    pass


def canon_seq(entries: Sequence[Sequence[int]]) -> SeqOfSets:
    """Canonical form of a sequence of finite point sets, validated:
    nonempty entries, each within one block, blocks pairwise distinct."""
    out: List[Tuple[int, ...]] = []
    blocks: List[int] = []
    for entry in entries:
        pts = tuple(sorted(set(int(x) for x in entry)))
        if not pts:
            raise FPlayError("entries must be nonempty")
        bs = {block_of(q) for q in pts}
        if len(bs) != 1:
            raise FPlayError(f"entry {pts} spans blocks {sorted(bs)}")
        b = bs.pop()
        if b in blocks:
            raise FPlayError(f"block {b} repeated")
        blocks.append(b)
        out.append(pts)
    return tuple(out)


def entry_code(pts: Sequence[int]) -> int:
    b = block_of(pts[0])
    mask = 0
    for q in pts:
        mask |= 1 << unpair(q)[1]
    return pair(b, mask - 1)


def seq_code(t: SeqOfSets) -> int:
    """Injective code: entries -> pair(block, rows-bitmask - 1), then the
    shared finite-sequence code."""
    return seq_to_code([entry_code(pts) for pts in t])


def seq_code_capped(t: SeqOfSets, cap: int) -> Optional[int]:
    """seq_code with early exit: None once the running code passes `cap`.

    Codes grow doubly exponentially in the sequence length, so long plays
    must never compute the full code.
    """
    c = 0
    for pts in t:
        c = pair(c, entry_code(pts)) + 1
        if c > cap:
            return None
    return c


def seq_decode(code: int) -> Optional[SeqOfSets]:
    """Decode a raw code; None when the result repeats a block (or is empty)."""
    entry_codes = code_to_seq(code)
    if not entry_codes:
        return None
    out: List[Tuple[int, ...]] = []
    seen = set()
    for e in entry_codes:
        b, x = unpair(e)
        if b in seen:
            return None
        seen.add(b)
        mask = x + 1
        pts = []
        m = 0
        while mask:
            if mask & 1:
                pts.append(pair(b, m))
            mask >>= 1
            m += 1
        out.append(tuple(pts))
    return tuple(out)


class SeqEnumerator:
    """Valid sequences in ascending code order, with a cached scan."""

    def __init__(self):
        self._codes: List[int] = []
        self._seqs: List[SeqOfSets] = []
        self._next = 0

    def _extend_to_index(self, n: int) -> None:
        while len(self._seqs) <= n:
            self._scan_one()

    def _scan_one(self) -> None:
        c = self._next
        while True:
            t = seq_decode(c)
            if t is not None:
                self._codes.append(c)
                self._seqs.append(t)
                self._next = c + 1
                return
            c += 1

    def at(self, n: int) -> SeqOfSets:
        if n < 0:
            raise ValueError("index must be >= 0")
        self._extend_to_index(n)
        return self._seqs[n]

    def valid_upto_code(self, code: int) -> List[SeqOfSets]:
        """All valid sequences with code < `code`, ascending."""
        while self._next < code:
            self._scan_one()
        pos = bisect.bisect_left(self._codes, code)
        return self._seqs[:pos]

    RANK_CAP = 10_000_000

    def index_of(self, t: SeqOfSets) -> int:
        c = seq_code_capped(t, self.RANK_CAP)
        if c is None:
            raise FPlayError(f"sequence code exceeds the rank cap {self.RANK_CAP}")
        self.valid_upto_code(c + 1)
        pos = bisect.bisect_left(self._codes, c)
        if pos < len(self._codes) and self._codes[pos] == c:
            return pos
        raise FPlayError(f"sequence {t} is not enumerable (code {c})")


_shared_enum = SeqEnumerator()


def seq_enum(n: int) -> SeqOfSets:
    """The n-th well-formed sequence in ascending code order."""
    return _shared_enum.at(n)


def enum_index(t) -> int:
    """Inverse of seq_enum on canonical sequences."""
    return _shared_enum.index_of(canon_seq(t))


# ---------------------------------------------------------------------------
# the strategy function F


class StrategyFn:
    """F(t) = least block index outside t's blocks and all earlier outputs.

    "Earlier" means enumeration order while codes stay below `scan_cap`;
    past the cap (long plays: codes grow beyond astronomical) outputs are
    assigned in query order.  Freshness and injectivity hold throughout.
    """

    def __init__(self, scan_cap: int = 100_000):
        self.scan_cap = scan_cap
        self.memo: Dict[SeqOfSets, int] = {}
        self.used: set = set()
        self._free_floor = 0  # every index below is in `used`
        self.enum = SeqEnumerator()

    def _assign(self, t: SeqOfSets) -> int:
        touched = {block_of(pts[0]) for pts in t}
        i = self._free_floor
        while i in self.used or i in touched:
            i += 1
        self.memo[t] = i
        self.used.add(i)
        while self._free_floor in self.used:
            self._free_floor += 1
        return i

    def value(self, entries) -> int:
        t = canon_seq(entries)
        got = self.memo.get(t)
        if got is not None:
            return got
        c = seq_code_capped(t, self.scan_cap)
        if c is not None:
            for t2 in self.enum.valid_upto_code(c):
                if t2 not in self.memo:
                    self._assign(t2)
        if t not in self.memo:
            self._assign(t)
        return self.memo[t]


def strategy_f(fn: StrategyFn, entries) -> int:
    """Block index F assigns to the given sequence of picks."""
    return fn.value(entries)


# ---------------------------------------------------------------------------
# One's strategy for the unrestricted-finite game


OPENING_BLOCK = 0  # least index; F has no input before Two's first pick


class FreshBlockOne(OneStrategy):
    """One's strategy: open with block Y_0, then after each inning offer
    the block F assigns to the sequence of Two's nonempty picks so far.
    Empty picks are skipped when forming F's input."""

    name = "fresh-block"

    def __init__(self, fn: Optional[StrategyFn] = None):
        super().__init__()
        self.fn = fn or StrategyFn()
        self.space: Optional[ScheepersSpace] = None

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space

    def choose(self, n: int, history: Sequence[Inning]) -> ClusterDescriptor:
        picks = [sorted(inn.two_move) for inn in history if inn.two_move]
        if not picks:
            b = OPENING_BLOCK
        else:
            try:
                b = self.fn.value(picks)
            except FPlayError as exc:
                raise StrategyInapplicable(str(exc)) from exc
        blocks = [OPENING_BLOCK]
        for j in range(1, len(picks) + 1):
            blocks.append(self.fn.value(picks[:j]))
        self.annotate(fplay={"blocks": blocks, "picks": [list(p) for p in picks]})
        return self.space.block(b)


# ---------------------------------------------------------------------------
# plays and the intersection law


@dataclass(frozen=True)
class FPlay:
    """A finite play in which One used F: blocks[j+1] = F(picks[:j+1])."""

    blocks: Tuple[int, ...]
    picks: Tuple[Tuple[int, ...], ...]

    def union(self) -> FrozenSet[int]:
        return frozenset(q for pts in self.picks for q in pts)

    def to_json(self) -> dict:
        return {"blocks": list(self.blocks), "picks": [list(p) for p in self.picks]}

    @staticmethod
    def from_json(obj: dict) -> "FPlay":
        return FPlay(
            tuple(int(b) for b in obj["blocks"]),
            tuple(tuple(sorted(int(q) for q in p)) for p in obj["picks"]),
        )


def validate_fplay(fn: StrategyFn, p: FPlay) -> None:
    if len(p.blocks) != len(p.picks) + 1 and len(p.blocks) != len(p.picks):
        raise FPlayError("blocks must cover each pick (plus optionally the next offer)")
    if not p.blocks or p.blocks[0] != OPENING_BLOCK:
        raise FPlayError(f"an F-play opens with block {OPENING_BLOCK}")
    for j, pts in enumerate(p.picks):
        if not pts:
            raise FPlayError("picks in an F-play are nonempty")
        if any(block_of(q) != p.blocks[j] for q in pts):
            raise FPlayError(f"pick {j} strays outside block {p.blocks[j]}")
        if j + 1 < len(p.blocks):
            expect = fn.value(p.picks[: j + 1])
            if p.blocks[j + 1] != expect:
                raise FPlayError(f"block {j + 1} is {p.blocks[j + 1]}, F gives {expect}")


@dataclass
class IntersectionReport:
    points: FrozenSet[int]
    prefix_points: FrozenSet[int]
    fork_overlap: FrozenSet[int]

    @property
    def matches_prefix_formula(self) -> bool:
        """The common-prefix identity as usually stated; exact whenever the
        first differing picks are disjoint."""
        return self.points == self.prefix_points

    @property
    def matches(self) -> bool:
        """The identity the freshness/injectivity argument actually gives:
        prefix picks plus the overlap of the first differing picks."""
        return self.points == self.prefix_points | self.fork_overlap


def play_intersection(fn: StrategyFn, p1: FPlay, p2: FPlay) -> IntersectionReport:
    """Brute-force union intersection versus the common-prefix formula.

    Past the first disagreement the two plays' picks are pairwise
    disjoint (fresh blocks, injective F), so the intersection is the
    common prefix plus whatever the two forking picks share inside their
    common block."""
    validate_fplay(fn, p1)
    validate_fplay(fn, p2)
    actual = p1.union() & p2.union()
    limit = min(len(p1.picks), len(p2.picks))
    k0 = limit
    for j in range(limit):
        if frozenset(p1.picks[j]) != frozenset(p2.picks[j]):
            k0 = j
            break
    prefix = frozenset(q for pts in p1.picks[:k0] for q in pts)
    overlap = frozenset()
    if k0 < len(p1.picks) and k0 < len(p2.picks):
        overlap = frozenset(p1.picks[k0]) & frozenset(p2.picks[k0])
    return IntersectionReport(actual, prefix, overlap)
