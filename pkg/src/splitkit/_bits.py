"""Bitmask helpers. Subsets of {0..n-1} are ints internally."""

from itertools import combinations


def to_mask(points):
    m = 0
    for p in points:
        m |= 1 << p
    return m


def from_mask(mask):
    return frozenset(iter_bits(mask))


def iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return mask.bit_count()


def lex_key(points):
    """Sort key putting subsets in lexicographic order of their sorted tuples."""
    return tuple(sorted(points))


def mask_combinations(mask, k):
    """All k-subsets of ``mask`` as masks, in lexicographic order."""
    bits = [1 << p for p in iter_bits(mask)]
    for combo in combinations(bits, k):
        yield sum(combo)


def all_masks_lex(points):
    """Every subset of ``points`` as a mask, in lexicographic order."""
    points = sorted(points)

    def walk(start, acc):
        yield acc
        for j in range(start, len(points)):
            yield from walk(j + 1, acc | (1 << points[j]))

    yield from walk(0, 0)
