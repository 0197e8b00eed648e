"""Per-inning selection budgets: constant k, tabulated f(n), or unrestricted.

Tabulated bounds come from a fixed template library.  Each template
declares whether it is unbounded and, if bounded, its limit superior;
nothing is estimated empirically.  Bounded templates in the library
never exceed their declared limsup and attain it infinitely often.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class _Template:
    name: str
    func: Callable[[int], int]
    limsup: Optional[int]  # None means unbounded

    @property
    def unbounded(self) -> bool:
        return self.limsup is None


TEMPLATES = {
    t.name: t
    for t in [
        _Template("n_plus_1", lambda n: n + 1, None),
        _Template("pow2", lambda n: 2 ** n, None),
        _Template("half_plus_1", lambda n: n // 2 + 1, None),
        _Template("alt12", lambda n: 1 + (n % 2), 2),
        _Template("alt123", lambda n: 1 + (n % 3), 3),
    ]
}


@dataclass(frozen=True)
class BoundSpec:
    kind: str  # "constant" | "tabulated" | "fin"
    k: int = 0
    template: str = ""

    @staticmethod
    def constant(k: int) -> "BoundSpec":
        if k < 1:
            raise BoundError("constant bound must be >= 1")
        return BoundSpec("constant", k=k)

    @staticmethod
    def tabulated(name: str) -> "BoundSpec":
        if name not in TEMPLATES:
            raise BoundError(f"unknown bound template {name!r}; have {sorted(TEMPLATES)}")
        return BoundSpec("tabulated", template=name)

    @staticmethod
    def fin() -> "BoundSpec":
        return BoundSpec("fin")

    def value(self, n: int) -> Optional[int]:
        """Budget at inning n; None means any finite size is allowed."""
        if self.kind == "constant":
            return self.k
        if self.kind == "tabulated":
            return TEMPLATES[self.template].func(n)
        return None

    def limsup(self):
        """Declared limit superior; math.inf for unbounded kinds."""
        if self.kind == "constant":
            return self.k
        if self.kind == "tabulated":
            t = TEMPLATES[self.template]
            return math.inf if t.unbounded else t.limsup
        return math.inf

    def attains_at_least(self, v) -> bool:
        """True iff the budget is >= v at infinitely many innings (by metadata)."""
        if self.kind == "fin":
            return True
        return self.limsup() >= v

    def describe(self) -> str:
        if self.kind == "constant":
            return f"k={self.k}"
        if self.kind == "tabulated":
            return f"f={self.template}"
        return "fin"

    def to_json(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant", "k": self.k}
        if self.kind == "tabulated":
            return {"kind": "tabulated", "name": self.template}
        return {"kind": "fin"}

    @staticmethod
    def from_json(obj: dict) -> "BoundSpec":
        kind = obj.get("kind")
        if kind == "constant":
            return BoundSpec.constant(obj["k"])
        if kind == "tabulated":
            return BoundSpec.tabulated(obj["name"])
        if kind == "fin":
            return BoundSpec.fin()
        raise BoundError(f"bad bound json {obj!r}")


def parse_bound(text: str) -> BoundSpec:
    """CLI bound selector: "1" | "k:K" | "f:NAME" | "fin"."""
    if text == "fin":
        return BoundSpec.fin()
    if text.startswith("k:"):
        return BoundSpec.constant(int(text[2:]))
    if text.startswith("f:"):
        return BoundSpec.tabulated(text[2:])
    try:
        return BoundSpec.constant(int(text))
    except ValueError:
        raise BoundError(f"cannot parse bound selector {text!r}") from None
