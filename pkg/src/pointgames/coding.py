"""Integer codings shared by every space.

All ground points reduce to natural-number codes through one pairing
function and one finite-sequence code, so enumeration order is the same
everywhere and transcripts are reproducible bit for bit.
"""

from __future__ import annotations

from math import comb, isqrt
from typing import Iterable, Sequence, Tuple


def pair(a: int, b: int) -> int:
    """Cantor pairing (a+b)(a+b+1)/2 + b, a bijection omega^2 -> omega."""
    return (a + b) * (a + b + 1) // 2 + b


def unpair(c: int) -> Tuple[int, int]:
    w = (isqrt(8 * c + 1) - 1) // 2
    b = c - w * (w + 1) // 2
    return (w - b, b)


def seq_to_code(seq: Sequence[int]) -> int:
    """code(()) = 0, code(s + (k,)) = pair(code(s), k) + 1; bijective."""
    c = 0
    for k in seq:
        c = pair(c, k) + 1
    return c


def code_to_seq(code: int) -> Tuple[int, ...]:
    out = []
    while code:
        code, k = unpair(code - 1)
        out.append(k)
    out.reverse()
    return tuple(out)


def subset_rank(positions: Iterable[int]) -> int:
    """Combinadic rank of a finite position set; bijects [omega]^k <-> omega."""
    return sum(comb(p, i + 1) for i, p in enumerate(sorted(positions)))


def subset_unrank(rank: int, k: int) -> Tuple[int, ...]:
    out = []
    r = rank
    for i in range(k, 0, -1):
        p = i - 1
        while comb(p + 1, i) <= r:
            p += 1
        out.append(p)
        r -= comb(p, i)
    return tuple(sorted(out))


def min_rank_superset(positions: Iterable[int], k: int) -> Tuple[int, ...]:
    """Least-rank k-position set containing `positions` (fill with least unused)."""
    have = sorted(set(positions))
    if len(have) > k:
        raise ValueError("more than k positions given")
    used = set(have)
    fill = 0
    while len(have) < k:
        while fill in used:
            fill += 1
        used.add(fill)
        have.append(fill)
    return tuple(sorted(have))
