"""Bitmask encoding of subsets of the ground set {1..m}.

Every set-indexed object in this package (rank tables, mutual information
functions, F2 vectors) shares one convention: a subset S of {1..m} is the
integer whose bit (i-1) is set exactly when element i is in S.  Element 1 is
the least significant bit, and it is rendered leftmost in bitstrings.
"""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_GROUND = 16


def full_mask(m: int) -> int:
    """Bitmask of the full ground set {1..m}."""
    return (1 << m) - 1


def complement(mask: int, m: int) -> int:
    return ((1 << m) - 1) ^ mask


def iter_subsets(m: int) -> range:
    """All subsets of {1..m} in increasing bitmask order."""
    return range(1 << m)


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, from ``mask`` itself down to 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def elements(mask: int) -> tuple[int, ...]:
    """1-based elements of a subset, ascending."""
    return tuple(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def from_elements(elems: Iterable[int]) -> int:
    mask = 0
    for e in elems:
        mask |= 1 << (e - 1)
    return mask


def render(mask: int, m: int) -> str:
    """Fixed-width bitstring with element 1 leftmost; the m=0 subset is '∅'."""
    if m == 0:
        return "∅"
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(m))


def parse(bits: str) -> tuple[int, int]:
    """Inverse of :func:`render`; returns ``(mask, m)``."""
    if bits == "∅":
        return 0, 0
    mask = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid bit {ch!r} in subset string {bits!r}")
    return mask, len(bits)
