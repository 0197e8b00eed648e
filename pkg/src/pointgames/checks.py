"""Invariant suites at their documented sizes.

Each suite returns a list of results; the CLI prints one line per result
and the acceptance tests assert them.  All randomness is seeded, so a
rerun reproduces every verdict bit for bit.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from pointgames import baselines
from pointgames.adfamily import build_ad_family, prefix_law_violations
from pointgames.bounds import BoundSpec
from pointgames.coding import pair
from pointgames.engine import (
    Inning,
    run_play,
    transcript_from_json,
    transcript_to_json,
    dumps_canonical,
)
from pointgames.minimax import (
    FiniteGameSpec,
    greedy_strategy,
    solve,
    truncate_partition_space,
    verify,
)
from pointgames.spaces import get_space
from pointgames.spaces.fan import ColumnMarkovTwo, check_markov_progress
from pointgames.spaces.partition import (
    FatBranchOne,
    PartitionConfig,
    SpreadTwo,
    fatbranch_confinement_ok,
    max_branch_load,
    spread_invariant_violations,
)
from pointgames.spaces.scheepers import (
    FPlay,
    FreshBlockOne,
    OPENING_BLOCK,
    StrategyFn,
    block_of,
    play_intersection,
    seq_enum,
)
from pointgames.spaces.tree import (
    BranchOne,
    PairTwo,
    check_branch_confinement,
    check_pair_witness,
)
from pointgames.translate import TranslatedOne, TranslatedTwo, one_schedule, two_schedule

# documented suite sizes
SPREAD_INNINGS = 100
SPREAD_FUZZ_SEEDS = 20
ONE_SUITE_INNINGS = 200
ONE_SUITE_SEEDS = 20
TREE_BRANCH_INNINGS = 200
TREE_PAIR_INNINGS = 100
TREE_SEEDS = 20
FAN_INNINGS = 100
FAN_SEEDS = 20
F_EXHAUSTIVE = 500
INTERSECTION_PAIRS = 50
INTERSECTION_LENGTH = 6
TRANSLATOR_PLAYS = 1000
AD_DEPTH = 8


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "pass" if self.ok else "FAIL"
        extra = f"  [{self.detail}]" if self.detail and not self.ok else ""
        return f"{verdict}  {self.suite}:{self.name}  ({self.seconds:.1f}s){extra}"


def _timed(suite: str, name: str, fn: Callable[[], Optional[str]]) -> CheckResult:
    start = time.time()
    try:
        problem = fn()
    except Exception as exc:  # the suite must report, not crash
        problem = f"{type(exc).__name__}: {exc}"
    return CheckResult(suite, name, problem is None, problem or "", time.time() - start)


# ---------------------------------------------------------------------------
# partition suite: spread invariant and branch confinement


def _spread_adversaries(space, seeds: int):
    yield "adversarial", baselines.one_baseline(space, "adversarial", 0)
    yield "block-flooder", baselines.one_baseline(space, "block-flooder")
    for seed in range(seeds):
        yield f"replay-fuzzer[{seed}]", baselines.one_baseline(space, "replay-fuzzer", seed)


def check_partition(innings: int = SPREAD_INNINGS, seeds: int = SPREAD_FUZZ_SEEDS,
                    one_innings: int = ONE_SUITE_INNINGS) -> List[CheckResult]:
    out: List[CheckResult] = []
    for k in (1, 2):
        space = get_space("partition", k=k)

        def spread_all(k=k, space=space) -> Optional[str]:
            for label, one in _spread_adversaries(space, seeds):
                t = run_play(space, BoundSpec.constant(k + 1), one, SpreadTwo(), innings,
                             meta={"adversary": label})
                if not t.ok:
                    return f"{label}: {t.error}"
                problems = spread_invariant_violations(space.cfg, t)
                if problems:
                    return f"{label}: {problems[0]}"
            return None

        out.append(_timed("partition", f"spread-invariant-k{k}", spread_all))
    for k in (1, 2, 3):
        space = get_space("partition", k=k)

        def confinement(k=k, space=space) -> Optional[str]:
            for seed in range(ONE_SUITE_SEEDS):
                two = baselines.two_baseline(space, "random", seed)
                t = run_play(space, BoundSpec.constant(k), FatBranchOne(), two, one_innings,
                             meta={"seed": seed})
                if not t.ok:
                    return f"seed {seed}: {t.error}"
                if not fatbranch_confinement_ok(space.cfg, t):
                    return f"seed {seed}: picks escaped the branch"
            return None

        out.append(_timed("partition", f"branch-confinement-k{k}", confinement))
    return out


# ---------------------------------------------------------------------------
# tree suite


def check_tree(branch_innings: int = TREE_BRANCH_INNINGS,
               pair_innings: int = TREE_PAIR_INNINGS) -> List[CheckResult]:
    space = get_space("tree")
    out: List[CheckResult] = []

    def branch() -> Optional[str]:
        for seed in range(TREE_SEEDS):
            two = baselines.two_baseline(space, "random", seed)
            t = run_play(space, BoundSpec.constant(1), BranchOne(), two, branch_innings,
                         exact_one=True, meta={"seed": seed})
            if not t.ok:
                return f"seed {seed}: {t.error}"
            if not check_branch_confinement(space, t):
                return f"seed {seed}: picks left the branch"
        return None

    def pair() -> Optional[str]:
        for seed in range(TREE_SEEDS):
            one = baselines.one_baseline(space, "adversarial", seed)
            t = run_play(space, BoundSpec.constant(2), one, PairTwo(), pair_innings,
                         meta={"seed": seed})
            if not t.ok:
                return f"seed {seed}: {t.error}"
            if not check_pair_witness(space, t):
                return f"seed {seed}: witness invariant failed"
        return None

    out.append(_timed("tree", "branch-confinement", branch))
    out.append(_timed("tree", "pair-witness", pair))
    return out


# ---------------------------------------------------------------------------
# fan suite


def check_fan(innings: int = FAN_INNINGS) -> List[CheckResult]:
    space = get_space("fan")
    bound = BoundSpec.tabulated("n_plus_1")

    def markov() -> Optional[str]:
        for seed in range(FAN_SEEDS):
            one = baselines.one_baseline(space, "adversarial", seed)
            t = run_play(space, bound, one, ColumnMarkovTwo(bound), innings,
                         meta={"seed": seed})
            if not t.ok:
                return f"seed {seed}: {t.error}"
            if not check_markov_progress(space, t, bound):
                return f"seed {seed}: progress invariant failed"
        return None

    return [_timed("fan", "markov-progress", markov)]


# ---------------------------------------------------------------------------
# scheepers suite


def _random_fplay(fn: StrategyFn, rng: random.Random, length: int,
                  fork_from: Optional[FPlay] = None, fork_at: int = -1) -> FPlay:
    picks: List[tuple] = []
    blocks = [OPENING_BLOCK]
    for j in range(length):
        if fork_from is not None and j < fork_at:
            pick = fork_from.picks[j]
        elif fork_from is not None and j == fork_at:
            b = blocks[-1]
            avoid = set(fork_from.picks[j]) if j < len(fork_from.picks) else set()
            pool = [pair(b, m) for m in range(12) if pair(b, m) not in avoid]
            pick = tuple(sorted(rng.sample(pool, rng.randint(1, 3))))
        else:
            b = blocks[-1]
            pick = tuple(sorted({pair(b, rng.randrange(8)) for _ in range(rng.randint(1, 3))}))
        picks.append(tuple(pick))
        blocks.append(fn.value(picks))
    return FPlay(tuple(blocks), tuple(picks))


def check_scheepers(exhaustive: int = F_EXHAUSTIVE,
                    pairs: int = INTERSECTION_PAIRS) -> List[CheckResult]:
    out: List[CheckResult] = []

    def properties() -> Optional[str]:
        fn = StrategyFn()
        seen = {}
        for n in range(exhaustive):
            t = seq_enum(n)
            i = fn.value(t)
            touched = {block_of(p[0]) for p in t}
            if i in touched:
                return f"index {n}: output block {i} touches the input"
            if i in seen:
                return f"indices {seen[i]} and {n} share output {i}"
            seen[i] = n
        return None

    def intersections() -> Optional[str]:
        fn = StrategyFn()
        rng = random.Random("intersections")
        for trial in range(pairs):
            p1 = _random_fplay(fn, rng, INTERSECTION_LENGTH)
            p2 = _random_fplay(fn, rng, INTERSECTION_LENGTH,
                               fork_from=p1, fork_at=rng.randrange(INTERSECTION_LENGTH))
            rep = play_intersection(fn, p1, p2)
            if not rep.matches_prefix_formula:
                return f"pair {trial}: got {sorted(rep.points)}, formula {sorted(rep.prefix_points)}"
            if not rep.matches:
                return f"pair {trial}: overlap-aware law failed"
        return None

    out.append(_timed("scheepers", "assignment-properties", properties))
    out.append(_timed("scheepers", "intersection-law", intersections))
    return out


# ---------------------------------------------------------------------------
# translator suite


def _replay_two_correspondence(space, inner_factory, from_bound, to_bound,
                               horizon: int, seed: int) -> Optional[str]:
    one = baselines.one_baseline(space, "adversarial", seed)
    wrapped = TranslatedTwo(inner_factory(seed), from_bound, to_bound)
    t = run_play(space, to_bound, one, wrapped, horizon, meta={"seed": seed})
    if not t.ok:
        return f"seed {seed}: {t.error}"
    schedule = two_schedule(from_bound, to_bound, horizon)
    inner_record = wrapped.inner_transcript()
    if wrapped.consultations != len(inner_record):
        return f"seed {seed}: consultation count mismatch"
    for inning in t.innings:
        i = inning.annotations.get("inner_inning")
        if inning.two_move and i is None:
            return f"seed {seed}: nonempty pick outside the schedule at {inning.index}"
        if i is not None and schedule[i] != inning.index:
            return f"seed {seed}: inning {inning.index} hosted inner {i}, schedule says {schedule[i]}"
    replay = inner_factory(seed)
    replay.start(space, from_bound, horizon)
    hist: List[Inning] = []
    for rec in inner_record:
        move = replay.choose(rec.index, rec.one_move, hist)
        replay.pop_annotations()
        if frozenset(move) != rec.two_move:
            return f"seed {seed}: compressed replay diverged at inner inning {rec.index}"
        hist.append(rec)
    return None


def _replay_one_correspondence(space, inner_factory, from_bound, to_bound,
                               horizon: int, seed: int) -> Optional[str]:
    wrapped = TranslatedOne(inner_factory(seed), from_bound, to_bound)
    two = baselines.two_baseline(space, "random", seed)
    t = run_play(space, to_bound, wrapped, two, horizon, meta={"seed": seed})
    if not t.ok:
        return f"seed {seed}: {t.error}"
    schedule = one_schedule(from_bound, to_bound, horizon)
    inner_record = wrapped.inner_transcript()
    # the padded history places outer pick j at inner inning schedule[j]
    placed = {m: j for j, m in enumerate(schedule[: len(t.innings)])}
    for rec in inner_record:
        want = t.innings[placed[rec.index]].two_move if rec.index in placed else frozenset()
        if rec.two_move != want:
            return f"seed {seed}: padding mismatch at inner inning {rec.index}"
    outer_union = set().union(*(set(i.two_move) for i in t.innings)) if t.innings else set()
    inner_union = set().union(*(set(i.two_move) for i in inner_record)) if inner_record else set()
    if outer_union != inner_union:
        return f"seed {seed}: outer picks and padded picks differ as unions"
    replay = inner_factory(seed)
    replay.start(space, from_bound, horizon)
    hist: List[Inning] = []
    for rec in inner_record:
        move = replay.choose(rec.index, hist)
        replay.pop_annotations()
        if move != rec.one_move:
            return f"seed {seed}: padded replay diverged at inner inning {rec.index}"
        hist.append(rec)
    return None


def check_translators(total_plays: int = TRANSLATOR_PLAYS) -> List[CheckResult]:
    fan = get_space("fan")
    const2 = BoundSpec.constant(2)
    alt = BoundSpec.tabulated("alt12")
    np1 = BoundSpec.tabulated("n_plus_1")
    pow2 = BoundSpec.tabulated("pow2")
    per = max(1, total_plays // 4)
    out: List[CheckResult] = []

    def two_const_to_alt() -> Optional[str]:
        for seed in range(per):
            err = _replay_two_correspondence(
                fan, lambda s: baselines.RandomTwo(s), const2, alt, 12, seed)
            if err:
                return err
        return None

    def two_alt_to_const() -> Optional[str]:
        for seed in range(per):
            err = _replay_two_correspondence(
                fan, lambda s: baselines.RandomTwo(s), alt, const2, 12, seed)
            if err:
                return err
        return None

    def two_unbounded() -> Optional[str]:
        for seed in range(per):
            err = _replay_two_correspondence(
                fan, lambda s: baselines.RandomTwo(s), np1, pow2, 10, seed)
            if err:
                return err
        return None

    def one_unbounded() -> Optional[str]:
        for seed in range(per):
            err = _replay_one_correspondence(
                fan, lambda s: baselines.RandomFanOne(s), np1, pow2, 8, seed)
            if err:
                return err
        return None

    out.append(_timed("translators", "two:const2->alt12", two_const_to_alt))
    out.append(_timed("translators", "two:alt12->const2", two_alt_to_const))
    out.append(_timed("translators", "two:n+1->2^n", two_unbounded))
    out.append(_timed("translators", "one:n+1 hosting 2^n", one_unbounded))
    return out


# ---------------------------------------------------------------------------
# almost-disjoint family suite


def check_adfamily(depth: int = AD_DEPTH) -> List[CheckResult]:
    def law() -> Optional[str]:
        space = get_space("fan")
        fam = build_ad_family(space, ColumnMarkovTwo(BoundSpec.tabulated("n_plus_1")), depth)
        if fam.warnings:
            return fam.warnings[0]
        bad = prefix_law_violations(fam, depth)
        if bad:
            return f"{len(bad)} leaf pairs break the prefix law, first {bad[0]}"
        return None

    return [_timed("adfamily", f"prefix-law-depth{depth}", law)]


# ---------------------------------------------------------------------------
# minimax suite


def hand_specs() -> List[FiniteGameSpec]:
    base = dict(
        ground=(0, 1, 2, 3),
        pool=(frozenset({0, 1}), frozenset({2, 3}), frozenset({0, 3})),
        targets=(frozenset({0, 2}), frozenset({1, 3})),
    )
    return [
        FiniteGameSpec(depth=2, budget=(1, 1), **base),
        FiniteGameSpec(depth=1, budget=(1,), **base),
        FiniteGameSpec(depth=1, budget=(2,), **base),
    ]


def check_minimax() -> List[CheckResult]:
    out: List[CheckResult] = []

    def examples() -> Optional[str]:
        want = ["two", "one", "two"]
        for spec, expected in zip(hand_specs(), want):
            sol = solve(spec)
            if sol.winner != expected:
                return f"budget {spec.budget}: got {sol.winner}, want {expected}"
            if not verify(spec, sol.strategy, sol.winner):
                return f"budget {spec.budget}: winner strategy failed verify"
            loser = "one" if sol.winner == "two" else "two"
            if verify(spec, greedy_strategy(spec, loser), loser):
                return f"budget {spec.budget}: losing side passed verify"
        return None

    def truncation_flip() -> Optional[str]:
        cfg = PartitionConfig(1)
        s1 = truncate_partition_space(cfg, bound=1, depth=3)
        s2 = truncate_partition_space(cfg, bound=2, depth=3)
        sol1, sol2 = solve(s1), solve(s2)
        if (sol1.winner, sol2.winner) != ("one", "two"):
            return f"flip failed: budget1 {sol1.winner}, budget2 {sol2.winner}"
        if not verify(s1, sol1.strategy, "one") or not verify(s2, sol2.strategy, "two"):
            return "optimal strategies failed full-exhaustion verify"
        return None

    out.append(_timed("minimax", "hand-specs", examples))
    out.append(_timed("minimax", "partition-truncation-flip", truncation_flip))
    return out


# ---------------------------------------------------------------------------
# infrastructure: serialization round-trips and determinism


def check_infrastructure() -> List[CheckResult]:
    def round_trip() -> Optional[str]:
        cases = [
            ("tree", {}, BoundSpec.constant(2),
             lambda sp: (baselines.one_baseline(sp, "adversarial", 3), PairTwo())),
            ("fan", {}, BoundSpec.tabulated("n_plus_1"),
             lambda sp: (baselines.one_baseline(sp, "adversarial", 3),
                         ColumnMarkovTwo(BoundSpec.tabulated("n_plus_1")))),
            ("partition", {"k": 2}, BoundSpec.constant(3),
             lambda sp: (baselines.one_baseline(sp, "replay-fuzzer", 3), SpreadTwo())),
            ("scheepers", {}, BoundSpec.fin(),
             lambda sp: (FreshBlockOne(), baselines.two_baseline(sp, "random", 3))),
        ]
        for name, params, bound, mk in cases:
            space = get_space(name, **params)
            one, two = mk(space)
            t = run_play(space, bound, one, two, 12, meta={"seed": 3})
            if not t.ok:
                return f"{name}: {t.error}"
            blob = dumps_canonical(transcript_to_json(space, t))
            back = transcript_from_json(space, __import__("json").loads(blob))
            blob2 = dumps_canonical(transcript_to_json(space, back))
            if blob != blob2:
                return f"{name}: transcript round-trip not bit-identical"
        return None

    def determinism() -> Optional[str]:
        space = get_space("partition", k=1)

        def play_blob():
            one = baselines.one_baseline(space, "replay-fuzzer", 7)
            t = run_play(space, BoundSpec.constant(2), one, SpreadTwo(), 30)
            return dumps_canonical(transcript_to_json(space, t))

        if play_blob() != play_blob():
            return "same seed produced different transcripts"
        return None

    return [
        _timed("infrastructure", "transcript-round-trip", round_trip),
        _timed("infrastructure", "seeded-determinism", determinism),
    ]


SUITES: Dict[str, Callable[[], List[CheckResult]]] = {
    "partition": check_partition,
    "tree": check_tree,
    "fan": check_fan,
    "scheepers": check_scheepers,
    "translators": check_translators,
    "adfamily": check_adfamily,
    "minimax": check_minimax,
}


def run_suite(name: str) -> List[CheckResult]:
    if name == "all":
        out: List[CheckResult] = []
        for key in SUITES:
            out.extend(SUITES[key]())
        out.extend(check_infrastructure())
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; have {sorted(SUITES)} and 'all'")
    return SUITES[name]()
