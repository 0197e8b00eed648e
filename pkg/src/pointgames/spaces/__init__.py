"""Concrete spaces and their strategies."""

from __future__ import annotations

from pointgames.descriptors import Space


def get_space(name: str, **params) -> Space:
    from pointgames.spaces.tree import TreeSpace
    from pointgames.spaces.fan import FanSpace
    from pointgames.spaces.partition import PartitionSpace
    from pointgames.spaces.scheepers import ScheepersSpace

    if name == "tree":
        return TreeSpace()
    if name == "fan":
        return FanSpace()
    if name == "partition":
        return PartitionSpace(int(params.get("k", 1)))
    if name == "scheepers":
        return ScheepersSpace()
    raise ValueError(f"unknown space {name!r}")


def parse_space(selector: str) -> Space:
    """CLI selector: tree | fan | partition:k=K | scheepers."""
    if ":" not in selector:
        return get_space(selector)
    name, _, rest = selector.partition(":")
    params = {}
    for part in rest.split(","):
        if part:
            key, _, val = part.partition("=")
            params[key] = val
    return get_space(name, **params)
