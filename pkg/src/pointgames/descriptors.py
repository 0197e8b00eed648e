"""Space abstraction and the finitely-represented subset descriptors.

A descriptor names a (possibly infinite) subset of a space's ground set:
a finite list of space-specific atoms, minus a finite excluded set, plus
a finite extra set.  Each space decides which descriptors cluster at the
distinguished non-isolated point, and enumerates described sets in
ascending point-code order.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional, Sequence


class DescriptorError(ValueError):
    """Raised for descriptors that are malformed in the target space."""


@dataclass(frozen=True)
class ClusterDescriptor:
    """Atoms-union, minus `excluded`, plus `extra`; immutable and hashable."""

    space: str
    atoms: tuple = ()
    excluded: frozenset = frozenset()
    extra: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        object.__setattr__(self, "extra", frozenset(self.extra))
        if self.excluded & self.extra:
            raise DescriptorError("excluded and extra sets must be disjoint")

    def is_finite_only(self) -> bool:
        return not self.atoms


class Space:
    """Countable ground set, all points isolated except the absent point p.

    Concrete spaces supply the atom vocabulary and the clustering rule;
    everything else (enumeration, membership, finite edits) is generic.
    """

    name: str = "space"
    params: dict = {}

    # -- points ------------------------------------------------------
    def point_code(self, p) -> int:
        raise NotImplementedError

    def point_to_json(self, p):
        raise NotImplementedError

    def point_from_json(self, obj):
        raise NotImplementedError

    # -- atoms -------------------------------------------------------
    def atom_to_json(self, atom) -> dict:
        raise NotImplementedError

    def atom_from_json(self, obj: dict):
        raise NotImplementedError

    def atom_iter(self, atom) -> Iterator:
        """Yield the atom's points in ascending point-code order."""
        raise NotImplementedError

    def atom_contains(self, atom, p) -> bool:
        raise NotImplementedError

    def atom_is_infinite(self, atom) -> bool:
        raise NotImplementedError

    # -- descriptors --------------------------------------------------
    def clusters(self, d: ClusterDescriptor) -> bool:
        raise NotImplementedError

    def full_ground(self) -> ClusterDescriptor:
        raise DescriptorError(f"space {self.name} has no full-ground descriptor")

    def descriptor(self, atoms=(), excluded=(), extra=()) -> ClusterDescriptor:
        d = ClusterDescriptor(self.name, tuple(atoms), frozenset(excluded), frozenset(extra))
        self.validate(d)
        return d

    def validate(self, d: ClusterDescriptor) -> None:
        if not isinstance(d, ClusterDescriptor):
            raise DescriptorError(f"not a descriptor: {d!r}")
        if d.space != self.name:
            raise DescriptorError(f"descriptor tagged {d.space!r} rejected by space {self.name!r}")
        for atom in d.atoms:
            self.validate_atom(atom)
        for p in itertools.chain(d.excluded, d.extra):
            self.validate_point(p)

    def validate_atom(self, atom) -> None:
        raise NotImplementedError

    def validate_point(self, p) -> None:
        try:
            self.point_code(p)
        except Exception as exc:
            raise DescriptorError(f"bad point {p!r} for space {self.name}") from exc


def clusters_at_p(space: Space, d: ClusterDescriptor) -> bool:
    """True iff the described set has p in its closure (per the space's rule)."""
    space.validate(d)
    return space.clusters(d)


def iter_points(space: Space, d: ClusterDescriptor) -> Iterator:
    """All described points, ascending by point code, without repetition."""
    streams = [space.atom_iter(a) for a in d.atoms]
    if d.extra:
        streams.append(iter(sorted(d.extra, key=space.point_code)))
    merged = heapq.merge(*streams, key=space.point_code)
    last_code = None
    for p in merged:
        if p in d.excluded:
            continue
        c = space.point_code(p)
        if c == last_code:
            continue
        last_code = c
        yield p


def enumerate_points(space: Space, d: ClusterDescriptor, count: int) -> list:
    """First `count` described points; fewer if the set is smaller."""
    if count < 0:
        raise ValueError("count must be >= 0")
    return list(itertools.islice(iter_points(space, d), count))


def contains(space: Space, d: ClusterDescriptor, p) -> bool:
    if p in d.extra:
        return True
    if p in d.excluded:
        return False
    return any(space.atom_contains(a, p) for a in d.atoms)


def remove_finite(space: Space, d: ClusterDescriptor, pts) -> ClusterDescriptor:
    """Descriptor for described(d) minus the finite set `pts`.

    Removing a finite set never destroys clustering: every atom is either
    finite or stays infinite after finitely many exclusions.
    """
    pts = frozenset(pts)
    extra = d.extra - pts
    hit = frozenset(p for p in pts if any(space.atom_contains(a, p) for a in d.atoms))
    return ClusterDescriptor(d.space, d.atoms, d.excluded | hit, extra)


def union(space: Space, d1: ClusterDescriptor, d2: ClusterDescriptor) -> ClusterDescriptor:
    """Descriptor for described(d1) | described(d2)."""
    space.validate(d1)
    space.validate(d2)
    atoms = d1.atoms + tuple(a for a in d2.atoms if a not in d1.atoms)
    candidates = d1.excluded | d2.excluded
    keep_excluded = frozenset(
        p for p in candidates
        if not (contains(space, d1, p) or contains(space, d2, p))
    )
    extra = (d1.extra | d2.extra) - keep_excluded
    return ClusterDescriptor(d1.space, atoms, keep_excluded, extra)


def descriptor_to_json(space: Space, d: ClusterDescriptor) -> dict:
    return {
        "space": d.space,
        "atoms": [space.atom_to_json(a) for a in d.atoms],
        "excluded": [space.point_to_json(p) for p in sorted(d.excluded, key=space.point_code)],
        "extra": [space.point_to_json(p) for p in sorted(d.extra, key=space.point_code)],
    }


def descriptor_from_json(space: Space, obj: dict) -> ClusterDescriptor:
    if obj.get("space") != space.name:
        raise DescriptorError(f"descriptor tagged {obj.get('space')!r} rejected by {space.name!r}")
    d = ClusterDescriptor(
        space.name,
        tuple(space.atom_from_json(a) for a in obj.get("atoms", [])),
        frozenset(space.point_from_json(p) for p in obj.get("excluded", [])),
        frozenset(space.point_from_json(p) for p in obj.get("extra", [])),
    )
    space.validate(d)
    return d
