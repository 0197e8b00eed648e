"""The k-set partition space: omega split into blocks indexed by finite
sequences, with a fixed enumeration of the k-element subsets of each block.

Block s holds the points pair(code(s), m) for m in omega.  A fat branch
follows an infinite index sequence g, collecting the g(j)-th k-subset of
the block at each initial segment g|j.  Neighbourhoods of p exclude
finitely many fat branches, so a set clusters exactly when it cannot be
trapped inside finitely many of them; within the atom language this
holds iff a cofinite-in-block or full-ground or z-cover atom survives.

The z-cover atom names the set of points joinable to a fixed finite set
by a single fat branch.  It keeps the z-restriction operation exact: its
membership test is the coverage decision procedure itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from pointgames.coding import (
    code_to_seq,
    min_rank_superset,
    pair,
    seq_to_code,
    subset_rank,
    subset_unrank,
    unpair,
)
from pointgames.descriptors import (
    ClusterDescriptor,
    DescriptorError,
    Space,
    contains,
    enumerate_points,
    iter_points,
    remove_finite,
)
from pointgames.engine import Inning, OneStrategy, StrategyInapplicable, TwoStrategy

Addr = Tuple[int, ...]


@dataclass(frozen=True)
class PartitionConfig:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


@lru_cache(maxsize=1 << 18)
def point_block(q: int) -> Tuple[Addr, int]:
    """Block address and within-block position of a ground point."""
    c, m = unpair(q)
    return code_to_seq(c), m


def block_element(s: Addr, pos: int) -> int:
    return pair(seq_to_code(s), pos)


@lru_cache(maxsize=1 << 17)
def kset_points(k: int, s: Addr, i: int) -> Tuple[int, ...]:
    """The i-th k-subset of block s under the combinadic enumeration."""
    return tuple(block_element(s, p) for p in subset_unrank(i, k))


def kset_rank(k: int, s: Addr, points: Sequence[int]) -> int:
    positions = []
    for q in points:
        addr, pos = point_block(q)
        if addr != s:
            raise ValueError(f"point {q} not in block {s}")
        positions.append(pos)
    if len(set(positions)) != k:
        raise ValueError("need exactly k distinct block points")
    return subset_rank(positions)


def _is_prefix(a: Addr, b: Addr) -> bool:
    return len(a) <= len(b) and b[: len(a)] == a


# ---------------------------------------------------------------------------
# atoms


@dataclass(frozen=True)
class FullGround:
    pass


@dataclass(frozen=True)
class BlockCofinite:
    s: Addr

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))


@dataclass(frozen=True)
class KSetAtom:
    s: Addr
    i: int

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))


@dataclass(frozen=True)
class ZCover:
    """All points joinable to `anchor` by one fat branch."""

    anchor: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "anchor", tuple(sorted(set(self.anchor))))


class PartitionSpace(Space):
    name = "partition"

    def __init__(self, k: int):
        self.cfg = PartitionConfig(k)
        self.params = {"k": k}

    @property
    def k(self) -> int:
        return self.cfg.k

    def point_code(self, p) -> int:
        return p

    def point_to_json(self, p):
        return p

    def point_from_json(self, obj):
        return int(obj)

    def validate_point(self, p):
        if not isinstance(p, int) or p < 0:
            raise DescriptorError(f"partition point must be a natural, got {p!r}")

    def validate_atom(self, atom):
        if isinstance(atom, (FullGround, BlockCofinite)):
            return
        if isinstance(atom, KSetAtom):
            if atom.i < 0:
                raise DescriptorError("k-set index must be >= 0")
            return
        if isinstance(atom, ZCover):
            if not atom.anchor:
                raise DescriptorError("z-cover anchor must be nonempty")
            if covered_by_single_fat_branch(self.cfg, atom.anchor) is None:
                raise DescriptorError("z-cover anchor must itself be coverable")
            return
        raise DescriptorError(f"unknown partition atom {atom!r}")

    def atom_to_json(self, atom):
        if isinstance(atom, FullGround):
            return {"kind": "full"}
        if isinstance(atom, BlockCofinite):
            return {"kind": "block", "s": list(atom.s)}
        if isinstance(atom, KSetAtom):
            return {"kind": "kset", "s": list(atom.s), "i": atom.i}
        return {"kind": "zcover", "anchor": list(atom.anchor)}

    def atom_from_json(self, obj):
        kind = obj.get("kind")
        if kind == "full":
            return FullGround()
        if kind == "block":
            return BlockCofinite(tuple(int(x) for x in obj["s"]))
        if kind == "kset":
            return KSetAtom(tuple(int(x) for x in obj["s"]), int(obj["i"]))
        if kind == "zcover":
            return ZCover(tuple(int(x) for x in obj["anchor"]))
        raise DescriptorError(f"unknown partition atom json {obj!r}")

    def atom_iter(self, atom) -> Iterator[int]:
        if isinstance(atom, FullGround):
            return iter(itertools.count())
        if isinstance(atom, BlockCofinite):
            code = seq_to_code(atom.s)
            return (pair(code, m) for m in itertools.count())
        if isinstance(atom, KSetAtom):
            return iter(kset_points(self.k, atom.s, atom.i))
        anchor = atom.anchor

        def scan():
            for q in itertools.count():
                if covered_by_single_fat_branch(self.cfg, anchor + (q,)) is not None:
                    yield q

        return scan()

    def atom_contains(self, atom, p) -> bool:
        if isinstance(atom, FullGround):
            return True
        if isinstance(atom, BlockCofinite):
            return point_block(p)[0] == atom.s
        if isinstance(atom, KSetAtom):
            return p in kset_points(self.k, atom.s, atom.i)
        return covered_by_single_fat_branch(self.cfg, atom.anchor + (p,)) is not None

    def atom_is_infinite(self, atom) -> bool:
        return not isinstance(atom, KSetAtom)

    def clusters(self, d: ClusterDescriptor) -> bool:
        # Finitely many fat branches meet a block in at most k points each,
        # so a cofinite-in-block set always clusters; a z-cover set keeps a
        # whole block past its anchor's deepest witness node.  K-set atoms
        # and extras are finite and never suffice.
        return any(not isinstance(a, KSetAtom) for a in d.atoms)

    def full_ground(self) -> ClusterDescriptor:
        return self.descriptor([FullGround()])

    def block(self, s: Sequence[int], excluded=()) -> ClusterDescriptor:
        return self.descriptor([BlockCofinite(tuple(s))], excluded=excluded)


# ---------------------------------------------------------------------------
# fat-branch coverage


@dataclass(frozen=True)
class FatBranchPrefix:
    k: int
    g: Tuple[int, ...]

    def covered(self) -> FrozenSet[int]:
        out = set()
        for j, idx in enumerate(self.g):
            out.update(kset_points(self.k, tuple(self.g[:j]), idx))
        return frozenset(out)


def _group_by_block(points: Sequence[int]) -> Dict[Addr, List[int]]:
    groups: Dict[Addr, List[int]] = {}
    for q in points:
        addr, pos = point_block(q)
        groups.setdefault(addr, []).append(pos)
    return groups


def covered_by_single_fat_branch(
    cfg: PartitionConfig, points: Sequence[int]
) -> Optional[FatBranchPrefix]:
    """Witness prefix of a fat branch covering `points`, or None.

    The block addresses must form a chain; below the deepest address the
    branch index is forced by the deeper addresses' values, and at the
    deepest address any k-set containing the group works (the least one
    is chosen).
    """
    pts = sorted(set(points))
    if not pts:
        raise ValueError("coverage query needs a nonempty point set")
    groups = _group_by_block(pts)
    addrs = sorted(groups, key=len)
    u = addrs[-1]
    for t in addrs:
        if not _is_prefix(t, u):
            return None
    for t in addrs[:-1]:
        forced = u[len(t)]
        if not set(groups[t]) <= set(subset_unrank(forced, cfg.k)):
            return None
    top = groups[u]
    if len(top) > cfg.k:
        return None
    top_index = subset_rank(min_rank_superset(top, cfg.k))
    return FatBranchPrefix(cfg.k, tuple(u) + (top_index,))


class SampleTooSmall(Exception):
    """The sampled pool held no uncoverable subset; enlarge and retry."""


def default_pool_width(cfg: PartitionConfig) -> int:
    return 3 * (cfg.k + 1) ** 2


def find_uncoverable_subset(cfg: PartitionConfig, pool: Sequence[int]) -> FrozenSet[int]:
    """Lexicographically least (k+1)-subset of the pool that no single fat
    branch covers."""
    pts = sorted(set(pool))
    for combo in itertools.combinations(pts, cfg.k + 1):
        if covered_by_single_fat_branch(cfg, combo) is None:
            return frozenset(combo)
    raise SampleTooSmall(f"no uncoverable {cfg.k + 1}-subset among {len(pts)} sampled points")


def down_set(cfg: PartitionConfig, points: Sequence[int]) -> FrozenSet[int]:
    """Union of the forced k-sets along each point's block address."""
    out = set()
    for q in points:
        addr, _pos = point_block(q)
        for j in range(len(addr)):
            out.update(kset_points(cfg.k, addr[:j], addr[j]))
    return frozenset(out)


# ---------------------------------------------------------------------------
# blockwise classification of Z-sets


@lru_cache(maxsize=1 << 18)
def _z_class_cached(k: int, anchor: Tuple[int, ...], s: Addr):
    cfg = PartitionConfig(k)
    groups = _group_by_block(anchor)
    addrs = sorted(groups, key=len)
    u = addrs[-1]
    for t in addrs:
        if not _is_prefix(t, u):
            return ("empty",)
    for t in addrs[:-1]:
        forced = u[len(t)]
        if not set(groups[t]) <= set(subset_unrank(forced, k)):
            return ("empty",)
    top = groups[u]
    if len(top) > k:
        return ("empty",)

    if not (_is_prefix(s, u) or _is_prefix(u, s)):
        return ("empty",)
    if _is_prefix(s, u) and s != u:
        # below the deepest anchor block the index is forced
        return ("kset", frozenset(kset_points(k, s, u[len(s)])))
    if s == u:
        if len(top) < k:
            return ("full",)
        return ("kset", frozenset(kset_points(k, s, subset_rank(tuple(top)))))
    # s strictly extends u: the branch index at u is s's own value there
    idx = s[len(u)]
    if set(top) <= set(subset_unrank(idx, k)):
        return ("full",)
    return ("empty",)


def z_block_class(cfg: PartitionConfig, anchor: Sequence[int], s: Addr):
    """Z_anchor within block s: ("empty",) | ("kset", points) | ("full",).

    Z_anchor is the set of points i such that one fat branch covers
    {i} union anchor.  Within any single block that trace is empty, one
    k-set, or the whole block.
    """
    return _z_class_cached(cfg.k, tuple(sorted(set(anchor))), tuple(s))


def z_member(cfg: PartitionConfig, anchor: Sequence[int], q: int) -> bool:
    cls = z_block_class(cfg, anchor, point_block(q)[0])
    if cls[0] == "full":
        return True
    if cls[0] == "kset":
        return q in cls[1]
    return False


def z_restrict(
    space: PartitionSpace, d: ClusterDescriptor, anchor: Sequence[int]
) -> ClusterDescriptor:
    """Descriptor for described(d) intersected with Z_anchor, exactly.

    Concrete atoms restrict blockwise (drop, shrink to a finite trace, or
    survive whole); a full-ground atom turns into the z-cover atom, whose
    membership test is the coverage procedure itself.  Z-cover atoms in
    the input are not supported.
    """
    cfg = space.cfg
    anchor = tuple(sorted(set(anchor)))
    if not anchor:
        raise DescriptorError("z-restriction needs a nonempty anchor")
    if covered_by_single_fat_branch(cfg, anchor) is None:
        return space.descriptor()
    atoms_out: List = []
    extra_out = set()
    for atom in d.atoms:
        if isinstance(atom, ZCover):
            raise DescriptorError("z-restriction of a z-cover atom is not supported")
        if isinstance(atom, FullGround):
            atoms_out.append(ZCover(anchor))
        elif isinstance(atom, BlockCofinite):
            cls = z_block_class(cfg, anchor, atom.s)
            if cls[0] == "full":
                atoms_out.append(atom)
            elif cls[0] == "kset":
                extra_out.update(q for q in cls[1] if q not in d.excluded)
        else:  # KSetAtom
            pts = [q for q in kset_points(cfg.k, atom.s, atom.i) if q not in d.excluded]
            extra_out.update(q for q in pts if z_member(cfg, anchor, q))
    for q in d.extra:
        if z_member(cfg, anchor, q):
            extra_out.add(q)
    excl = frozenset(q for q in d.excluded if q not in extra_out)
    return ClusterDescriptor(d.space, tuple(atoms_out), excl, frozenset(extra_out))


# ---------------------------------------------------------------------------
# Two's strategy for the (k+1)-point game


class SpreadTwo(TwoStrategy):
    """Two's strategy under bound k+1: maintain a picked set E that grows
    by at least one point per inning while no fat branch holds more than
    k of its points.

    Each inning either adds a fresh point no fat branch can join to any
    current E-point, or, when One's set is trapped inside the joinable
    region, swaps d old points for an uncoverable (k+1)-batch found
    inside the exactly-computed trap.
    """

    name = "eub"

    SCAN_CAP = 4096

    def __init__(self):
        super().__init__()
        self.space: Optional[PartitionSpace] = None
        self.E: set = set()

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space
        self.E = set()

    # -- helpers -----------------------------------------------------

    def _supported(self, move: ClusterDescriptor) -> None:
        if move.space != "partition":
            raise StrategyInapplicable("move is not a partition descriptor")
        if any(isinstance(a, ZCover) for a in move.atoms):
            raise StrategyInapplicable("z-cover atoms are outside this strategy's language")

    def _uncoverable_from(self, move: ClusterDescriptor) -> FrozenSet[int]:
        cfg = self.space.cfg
        width = default_pool_width(cfg)
        for _ in range(16):
            pool = enumerate_points(self.space, move, width)
            try:
                return find_uncoverable_subset(cfg, pool)
            except SampleTooSmall:
                if len(pool) < width:
                    raise StrategyInapplicable(
                        "One's set is finite and coverable; no uncoverable batch exists"
                    )
                width *= 2
        raise StrategyInapplicable("no uncoverable batch found within the sample cap")

    def _is_joinable(self, q: int) -> bool:
        cfg = self.space.cfg
        return any(z_member(cfg, (e,), q) for e in self.E)

    def _block_captured(self, s: Addr) -> bool:
        cfg = self.space.cfg
        return any(z_block_class(cfg, (e,), s)[0] == "full" for e in self.E)

    def _fresh_possible(self, move: ClusterDescriptor) -> bool:
        for atom in move.atoms:
            if isinstance(atom, FullGround):
                return True
            if isinstance(atom, BlockCofinite) and not self._block_captured(atom.s):
                return True
        return False

    def _least_fresh(self, move: ClusterDescriptor) -> int:
        for q in itertools.islice(iter_points(self.space, move), self.SCAN_CAP):
            if not self._is_joinable(q):
                return q
        return self._fresh_from_witness_atom(move)

    def _fresh_from_witness_atom(self, move: ClusterDescriptor) -> int:
        cfg = self.space.cfg
        for atom in sorted(
            (a for a in move.atoms if isinstance(a, BlockCofinite)),
            key=lambda a: seq_to_code(a.s),
        ):
            if self._block_captured(atom.s):
                continue
            for m in itertools.count():
                q = block_element(atom.s, m)
                if q not in move.excluded and not self._is_joinable(q):
                    return q
        # full-ground atom: walk top-level blocks for an uncaptured one
        if any(isinstance(a, FullGround) for a in move.atoms):
            for j in itertools.count():
                s = (j,)
                if self._block_captured(s):
                    continue
                for m in itertools.count():
                    q = block_element(s, m)
                    if q not in move.excluded and not self._is_joinable(q):
                        return q
        raise StrategyInapplicable("no fresh point found although one was promised")

    def _path_pool(self, s: Addr) -> Tuple[List[int], List[int]]:
        """E-points usable in a join-anchor at block s: those sitting in
        the forced k-sets strictly below s, and those inside s itself."""
        cfg = self.space.cfg
        on_path: List[int] = []
        for j in range(len(s)):
            forced = set(kset_points(cfg.k, s[:j], s[j]))
            on_path.extend(sorted(forced & self.E))
        own = sorted(e for e in self.E if point_block(e)[0] == s)
        return sorted(on_path), own

    def _capture_cap(self, s: Addr) -> int:
        path, own = self._path_pool(s)
        return len(path) + min(self.space.cfg.k - 1, len(own))

    def _least_anchor(self, s: Addr, d: int) -> Optional[Tuple[int, ...]]:
        """Lexicographically least d-subset D of E with Z_D covering all of
        block s: D lives on s's forced path with at most k-1 points in s."""
        k = self.space.cfg.k
        path, own = self._path_pool(s)
        if d > len(path) + min(k - 1, len(own)):
            return None
        merged = sorted(set(path) | set(own))
        chosen: List[int] = []
        own_used = 0
        path_set = set(path)
        for q in merged:
            if len(chosen) == d:
                break
            is_own = q not in path_set
            if is_own and own_used >= k - 1:
                continue
            # feasibility: can we still finish after taking q?
            rest_path = sum(1 for r in path if r > q)
            rest_own = sum(1 for r in own if r > q and r not in path_set)
            take_own = own_used + (1 if is_own else 0)
            capacity = rest_path + min(k - 1 - take_own, rest_own)
            if len(chosen) + 1 + capacity < d:
                continue
            chosen.append(q)
            if is_own:
                own_used += 1
        if len(chosen) == d:
            return tuple(chosen)
        return None

    def _replacement(self, move: ClusterDescriptor, cleaned: ClusterDescriptor):
        cfg = self.space.cfg
        k = cfg.k
        blocks = [a.s for a in cleaned.atoms if isinstance(a, BlockCofinite)]
        for d in range(k, 0, -1):
            best: Optional[Tuple[int, ...]] = None
            best_blocks: List[Addr] = []
            for s in blocks:
                if d < k and self._capture_cap(s) > d:
                    continue  # a larger joinable family still traps this block
                anchor = self._least_anchor(s, d)
                if anchor is None:
                    continue
                if best is None or anchor < best:
                    best = anchor
                    best_blocks = [s]
                elif anchor == best:
                    best_blocks.append(s)
            if best is not None:
                return d, best, best_blocks
        raise StrategyInapplicable("no replacement anchor exists; One's move is outside the analysed language")

    def _build_trap(
        self, cleaned: ClusterDescriptor, d: int, anchor: Tuple[int, ...]
    ) -> ClusterDescriptor:
        """Exact descriptor for (cleaned minus all Z_C with |C|>d) inter Z_anchor."""
        cfg = self.space.cfg
        k = cfg.k
        subtract = [
            tuple(C)
            for j in range(d + 1, k + 1)
            for C in itertools.combinations(sorted(self.E), j)
        ]
        atoms_out: List = []
        extra_out: set = set()
        extra_excl: set = set(cleaned.excluded)

        def point_survives(q: int) -> bool:
            if not z_member(cfg, anchor, q):
                return False
            return all(not z_member(cfg, C, q) for C in subtract)

        for atom in cleaned.atoms:
            if isinstance(atom, BlockCofinite):
                cls = z_block_class(cfg, anchor, atom.s)
                if cls[0] == "empty":
                    continue
                killed = False
                trace_excl: set = set()
                for C in subtract:
                    sub = z_block_class(cfg, C, atom.s)
                    if sub[0] == "full":
                        killed = True
                        break
                    if sub[0] == "kset":
                        trace_excl.update(sub[1])
                if killed:
                    continue
                if cls[0] == "full":
                    atoms_out.append(atom)
                    extra_excl.update(trace_excl)
                else:  # kset trace under the anchor
                    extra_out.update(
                        q for q in cls[1]
                        if q not in cleaned.excluded and q not in trace_excl
                    )
            elif isinstance(atom, KSetAtom):
                for q in kset_points(k, atom.s, atom.i):
                    if q not in cleaned.excluded and point_survives(q):
                        extra_out.add(q)
        for q in cleaned.extra:
            if point_survives(q):
                extra_out.add(q)
        excl = frozenset(q for q in extra_excl if q not in extra_out)
        return ClusterDescriptor("partition", tuple(atoms_out), excl, frozenset(extra_out))

    # -- the strategy ---------------------------------------------------

    def choose(self, n: int, move: ClusterDescriptor, history: Sequence[Inning]) -> frozenset:
        self._supported(move)
        cfg = self.space.cfg
        if not self.E:
            batch = self._uncoverable_from(move)
            self.E = set(batch)
            self.annotate(E=tuple(sorted(self.E)), case="initial")
            return batch
        cleaned = remove_finite(self.space, move, down_set(cfg, sorted(self.E)))
        if self._fresh_possible(cleaned):
            q = self._least_fresh(cleaned)
            self.E.add(q)
            self.annotate(E=tuple(sorted(self.E)), case="fresh")
            return frozenset({q})
        d, anchor, _blocks = self._replacement(move, cleaned)
        trap = self._build_trap(cleaned, d, anchor)
        batch = self._uncoverable_from(trap)
        before = len(self.E)
        self.E = (self.E - set(anchor)) | set(batch)
        if len(self.E) < before + 1:
            raise StrategyInapplicable("spread set failed to grow; internal invariant broken")
        self.annotate(E=tuple(sorted(self.E)), case="replace", swapped=anchor)
        return batch


# ---------------------------------------------------------------------------
# One's strategy for the k-point game


class FatBranchOne(OneStrategy):
    """One's strategy under bound k: walk a single fat branch, each inning
    offering the block at the current node; whatever Two picks there is
    completed to a k-set whose index names the next node."""

    name = "fatbranch"

    def __init__(self):
        super().__init__()
        self.node: Addr = ()
        self.prefix: List[int] = []
        self.space: Optional[PartitionSpace] = None

    def start(self, space, bound, horizon):
        super().start(space, bound, horizon)
        self.space = space
        self.node = ()
        self.prefix = []

    def choose(self, n: int, history: Sequence[Inning]) -> ClusterDescriptor:
        cfg = self.space.cfg
        if history:
            picks = history[-1].two_move
            positions = sorted(
                point_block(q)[1] for q in picks if point_block(q)[0] == self.node
            )[: cfg.k]
            idx = subset_rank(min_rank_superset(positions, cfg.k))
            self.prefix.append(idx)
            self.node = self.node + (idx,)
        self.annotate(branch=tuple(self.prefix))
        return self.space.block(self.node)


# ---------------------------------------------------------------------------
# invariant checkers


def spread_invariant_violations(cfg: PartitionConfig, transcript) -> List[str]:
    """Check, inning by inning, that the annotated spread set E grows as
    required and that no fat branch can hold more than k of its points."""
    problems: List[str] = []
    picked: set = set()
    for inning in transcript.innings:
        n = inning.index
        picked |= set(inning.two_move)
        ann = inning.annotations.get("E")
        if ann is None:
            problems.append(f"inning {n}: no spread annotation")
            continue
        E = set(int(x) for x in ann)
        if len(E) < n + cfg.k + 1:
            problems.append(f"inning {n}: |E|={len(E)} < {n + cfg.k + 1}")
        if not E <= picked:
            problems.append(f"inning {n}: E contains unpicked points")
        bad = max_branch_load(cfg, E)
        if bad > cfg.k:
            problems.append(f"inning {n}: a fat branch holds {bad} > k points of E")
    return problems


def max_branch_load(cfg: PartitionConfig, E: set) -> int:
    """Largest |E inter branch| over all fat branches, computed over the
    finitely many branch shapes through the touched blocks."""
    groups = _group_by_block(sorted(E))
    best = 0
    for u in groups:
        score = min(len(groups[u]), cfg.k)
        for t in groups:
            if t != u and _is_prefix(t, u):
                forced = set(subset_unrank(u[len(t)], cfg.k))
                score += len(set(groups[t]) & forced)
        best = max(best, score)
    return best


def max_branch_load_bruteforce(cfg: PartitionConfig, E: set) -> int:
    """Independent cross-check of max_branch_load: enumerate explicit
    branch prefixes whose indices grab E-points."""
    groups = _group_by_block(sorted(E))
    best = 0
    for u, own in groups.items():
        candidate_indices = set()
        for size in range(1, min(cfg.k, len(own)) + 1):
            for sub in itertools.combinations(sorted(own), size):
                candidate_indices.add(subset_rank(min_rank_superset(sub, cfg.k)))
        candidate_indices.add(0)
        for idx in candidate_indices:
            prefix = FatBranchPrefix(cfg.k, tuple(u) + (idx,))
            best = max(best, len(prefix.covered() & E))
    return best


def fatbranch_confinement_ok(cfg: PartitionConfig, transcript) -> bool:
    """Replay One's deterministic branch extension and confirm every pick
    lands inside the k-set placed for it."""
    node: Addr = ()
    for inning in transcript.innings:
        move = inning.one_move
        if not (
            len(move.atoms) == 1
            and isinstance(move.atoms[0], BlockCofinite)
            and move.atoms[0].s == node
        ):
            return False
        positions = []
        for q in inning.two_move:
            addr, pos = point_block(q)
            if addr != node:
                return False
            positions.append(pos)
        comp = min_rank_superset(sorted(positions)[: cfg.k], cfg.k)
        if not set(positions) <= set(comp):
            return False
        node = node + (subset_rank(comp),)
    return True
