"""The game engine: alternating finite-horizon plays with legality checks.

One play of the game with bound b runs for `horizon` innings.  In inning
n, One offers a descriptor that must cluster at p, then Two picks a
subset of the described set with at most b(n) points.  Nothing is ever
scored as won: the transcript records every move plus whatever
diagnostics the strategies emit, and checkers judge invariants later.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

from pointgames.bounds import BoundSpec
from pointgames.descriptors import (
    ClusterDescriptor,
    DescriptorError,
    Space,
    clusters_at_p,
    contains,
    descriptor_from_json,
    descriptor_to_json,
)


class StrategyInapplicable(Exception):
    """A strategy met a move outside the language it supports."""


class OneStrategy:
    """One's side: history -> clustering descriptor."""

    name = "one"

    def __init__(self):
        self._ann = {}

    def start(self, space: Space, bound: BoundSpec, horizon: int) -> None:
        """Reset per-play state; called once before inning 0."""
        self._ann = {}

    def choose(self, n: int, history: Sequence["Inning"]) -> ClusterDescriptor:
        raise NotImplementedError

    def annotate(self, **kv) -> None:
        self._ann.update(kv)

    def pop_annotations(self) -> dict:
        ann, self._ann = self._ann, {}
        return ann


class TwoStrategy:
    """Two's side: (inning, One's move, history) -> finite point set."""

    name = "two"

    def __init__(self):
        self._ann = {}

    def start(self, space: Space, bound: BoundSpec, horizon: int) -> None:
        self._ann = {}

    def choose(self, n: int, move: ClusterDescriptor, history: Sequence["Inning"]) -> frozenset:
        raise NotImplementedError

    def annotate(self, **kv) -> None:
        self._ann.update(kv)

    def pop_annotations(self) -> dict:
        ann, self._ann = self._ann, {}
        return ann


@dataclass
class Inning:
    index: int
    one_move: ClusterDescriptor
    two_move: frozenset
    annotations: dict = field(default_factory=dict)


@dataclass
class PlayTranscript:
    space_name: str
    space_params: dict
    bound: BoundSpec
    horizon: int
    exact_one: bool
    innings: List[Inning] = field(default_factory=list)
    error: Optional[dict] = None
    diagnostics: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.error is None

    def picks(self) -> list:
        """All of Two's picks across innings, in inning order."""
        out = []
        for inning in self.innings:
            out.extend(sorted(inning.two_move, key=repr))
        return out


def run_play(
    space: Space,
    bound: BoundSpec,
    one: OneStrategy,
    two: TwoStrategy,
    horizon: int,
    exact_one: bool = False,
    meta: Optional[dict] = None,
) -> PlayTranscript:
    """Alternate One then Two for `horizon` innings, validating each move.

    Illegal moves abort the play and are recorded on the transcript
    rather than raised.  `exact_one` is the strict reading of the
    one-point game: with a constant bound of 1 it rejects empty picks.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    t = PlayTranscript(
        space_name=space.name,
        space_params=dict(space.params),
        bound=bound,
        horizon=horizon,
        exact_one=exact_one,
        meta=dict(meta or {}),
    )
    one.start(space, bound, horizon)
    two.start(space, bound, horizon)
    for n in range(horizon):
        try:
            move = one.choose(n, t.innings)
            space.validate(move)
            if not clusters_at_p(space, move):
                t.error = {"side": "one", "inning": n, "reason": "illegal-one-move: descriptor does not cluster at p"}
                break
        except (DescriptorError, StrategyInapplicable) as exc:
            t.error = {"side": "one", "inning": n, "reason": f"illegal-one-move: {exc}"}
            break
        ann = one.pop_annotations()
        try:
            picks = frozenset(two.choose(n, move, t.innings))
        except StrategyInapplicable as exc:
            t.error = {"side": "two", "inning": n, "reason": f"strategy-inapplicable: {exc}"}
            break
        budget = bound.value(n)
        if budget is not None and len(picks) > budget:
            t.error = {"side": "two", "inning": n, "reason": f"illegal-two-move: {len(picks)} picks over budget {budget}"}
            break
        if exact_one and bound.kind == "constant" and bound.k == 1 and len(picks) != 1:
            t.error = {"side": "two", "inning": n, "reason": "illegal-two-move: strict one-point game requires exactly one pick"}
            break
        outside = [p for p in picks if not contains(space, move, p)]
        if outside:
            t.error = {"side": "two", "inning": n, "reason": "illegal-two-move: pick outside One's set"}
            break
        two_ann = two.pop_annotations()
        ann.update(two_ann)
        t.innings.append(Inning(n, move, picks, ann))
    t.diagnostics["legality"] = "pass" if t.ok else "fail"
    return t


# ---------------------------------------------------------------------------
# transcript serialization


def _json_ready(space: Space, value):
    if isinstance(value, ClusterDescriptor):
        return {"descriptor": descriptor_to_json(space, value)}
    if isinstance(value, (frozenset, set)):
        return sorted((_json_ready(space, v) for v in value), key=json.dumps)
    if isinstance(value, (tuple, list)):
        return [_json_ready(space, v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_ready(space, v) for k, v in value.items()}
    return value


def transcript_to_json(space: Space, t: PlayTranscript) -> dict:
    return {
        "space": {"name": t.space_name, "params": t.space_params},
        "bound": t.bound.to_json(),
        "horizon": t.horizon,
        "exact_one": t.exact_one,
        "innings": [
            {
                "n": inning.index,
                "one": descriptor_to_json(space, inning.one_move),
                "two": [space.point_to_json(p) for p in sorted(inning.two_move, key=space.point_code)],
                "annotations": _json_ready(space, inning.annotations),
            }
            for inning in t.innings
        ],
        "error": t.error,
        "diagnostics": t.diagnostics,
        "meta": _json_ready(space, t.meta),
    }


def transcript_from_json(space: Space, obj: dict) -> PlayTranscript:
    t = PlayTranscript(
        space_name=obj["space"]["name"],
        space_params=dict(obj["space"]["params"]),
        bound=BoundSpec.from_json(obj["bound"]),
        horizon=obj["horizon"],
        exact_one=obj["exact_one"],
        error=obj.get("error"),
        diagnostics=dict(obj.get("diagnostics", {})),
        meta=dict(obj.get("meta", {})),
    )
    for rec in obj["innings"]:
        t.innings.append(
            Inning(
                rec["n"],
                descriptor_from_json(space, rec["one"]),
                frozenset(space.point_from_json(p) for p in rec["two"]),
                dict(rec.get("annotations", {})),
            )
        )
    return t


def dumps_canonical(obj: dict) -> str:
    """Canonical JSON text; equal transcripts serialize identically."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
