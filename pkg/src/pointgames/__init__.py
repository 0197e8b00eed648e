"""Finite-horizon point-picking selection games on countable spaces.

The package simulates inning games in which player One offers a set
clustering at the single non-isolated point and player Two picks a
bounded finite batch of points.  Everything is finite-horizon: plays are
checked against per-inning invariants, never scored as won or lost.
"""

from pointgames.descriptors import ClusterDescriptor, DescriptorError
from pointgames.bounds import BoundSpec
from pointgames.engine import PlayTranscript, run_play

__all__ = [
    "ClusterDescriptor",
    "DescriptorError",
    "BoundSpec",
    "PlayTranscript",
    "run_play",
]
