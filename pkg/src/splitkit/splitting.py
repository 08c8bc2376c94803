"""Block decompositions, disjoint refinements and elimination procedures.

A mu-decomposition orders a family's indices into blocks so that every
member of block i meets the union of the earlier blocks in fewer than mu
points. ``disjoint_refinement`` follows the recursion on such blocks:
solve each block directly, strip the earlier blocks' universe from each
chosen set, then concatenate the block enumerations in order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ._bits import from_mask, iter_bits, popcount, to_mask
from .core import (
    DEFAULT_BUDGET,
    STRICT_BELOW,
    EDCertificate,
    _stats,
    check_essentially_disjoint,
    splits,
)
from .errors import BadParameters, Infeasible, NotSplitting

CHAIN = "chain"
MERGE = "merge"


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple
    mu: int

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))

    def order(self):
        return tuple(i for b in self.blocks for i in b)


def decomposition_problems(fam, dec):
    out = []
    seen = sorted(dec.order())
    if seen != list(range(len(fam))):
        out.append("blocks do not partition the index set")
    earlier = 0
    for bi, block in enumerate(dec.blocks):
        if not block:
            out.append(f"block {bi} is empty")
        for i in block:
            hit = popcount(fam.masks[i] & earlier)
            if hit >= dec.mu:
                out.append(f"set {i} in block {bi} meets earlier blocks in {hit} >= {dec.mu} points")
        for i in block:
            earlier |= fam.masks[i]
    return out


def build_decomposition(fam, mu, max_block=None, budget=DEFAULT_BUDGET, stats=None):
    """Find a mu-decomposition with blocks of at most ``max_block`` sets.

    Placing sets only enlarges the union that later sets are measured
    against, so a set that is over the bound once stays over it: a partial
    placement is only kept while every unplaced set is still admissible.
    Blocks are tried largest first, then in lexicographic order of their
    indices, with memoised backtracking. Returns None when no decomposition
    exists (a proven verdict); raises SearchBudgetExceeded otherwise.
    """
    if mu < 1:
        raise BadParameters("mu must be at least 1")
    m = len(fam)
    if max_block is None:
        max_block = max(m, 1)
    if max_block < 1:
        raise BadParameters("max_block must be at least 1")
    stats = _stats(stats, budget)
    masks = fam.masks
    dead = set()

    def viable(placed, union):
        return all(
            popcount(masks[j] & union) < mu for j in range(m) if not placed >> j & 1
        )

    def walk(placed, union):
        stats.tick("decomposition search")
        if placed == (1 << m) - 1:
            return []
        if placed in dead:
            return None
        rest = [j for j in range(m) if not placed >> j & 1]
        for size in range(min(max_block, len(rest)), 0, -1):
            for block in combinations(rest, size):
                grown = union
                bits = placed
                for j in block:
                    grown |= masks[j]
                    bits |= 1 << j
                if not viable(bits, grown):
                    continue
                tail = walk(bits, grown)
                if tail is not None:
                    return [block] + tail
                stats.backtracks += 1
        dead.add(placed)
        return None

    if m == 0:
        return Decomposition((), mu)
    blocks = walk(0, 0)
    return None if blocks is None else Decomposition(tuple(blocks), mu)


# -- base case: pairwise disjoint subsets with prescribed sizes ---------------


def _feasible(avail, needs):
    """Can set j receive needs[j] distinct points of avail[j], no point shared?

    Bipartite matching with each set copied needs[j] times (Kuhn's algorithm).
    """
    total = sum(needs)
    if total == 0:
        return True
    union = 0
    for a, k in zip(avail, needs):
        if k:
            union |= a
    if popcount(union) < total:
        return False
    owner = {}
    slots = [j for j, k in enumerate(needs) for _ in range(k)]

    def augment(j, seen):
        for p in iter_bits(avail[j]):
            if p in seen:
                continue
            seen.add(p)
            if p not in owner or augment(owner[p], seen):
                owner[p] = j
                return True
        return False

    for j in slots:
        if not augment(j, set()):
            return False
    return True


def disjoint_system(masks, demands, stats):
    """Lexicographically least pairwise disjoint d_j inside masks[j], |d_j| = demands[j].

    Sets are filled in index order, each point by point, keeping a point
    only if the rest can still be completed. Returns a list of masks or None.
    """
    m = len(masks)
    if any(d > popcount(a) for a, d in zip(masks, demands)):
        return None
    used = 0
    chosen = [0] * m

    def rest_ok(j, partial):
        taken = used | partial
        avail = [a & ~taken for a in masks]
        needs = [0] * m
        needs[j] = demands[j] - popcount(partial)
        for i in range(j + 1, m):
            needs[i] = demands[i]
        return _feasible(avail, needs)

    if m and not rest_ok(0, 0):
        return None
    for j in range(m):
        partial = 0
        for _ in range(demands[j]):
            for p in iter_bits(masks[j] & ~(used | partial)):
                if partial and p < partial.bit_length() - 1:
                    continue
                stats.tick("disjoint-system search")
                if rest_ok(j, partial | (1 << p)):
                    partial |= 1 << p
                    break
                stats.backtracks += 1
            else:  # pragma: no cover - feasibility was established before
                raise AssertionError("lost feasibility while extending")
        chosen[j] = partial
        used |= partial
    return chosen


# -- refinements ----------------------------------------------------------------


@dataclass(frozen=True)
class Refinement:
    """An enumeration of the family with disjoint d_alpha inside each member.

    ``d`` and ``back_hits`` are indexed by family index; ``order`` is the
    enumeration. back_hits[i] counts members earlier in ``order`` that
    meet d[i].
    """

    order: tuple
    d: tuple
    target_size: int
    back_hits: tuple
    decomposition: Decomposition | None = None

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "d", tuple(frozenset(x) for x in self.d))
        object.__setattr__(self, "back_hits", tuple(self.back_hits))

    @property
    def max_back_hits(self):
        return max(self.back_hits, default=0)


def compute_back_hits(fam, order, d):
    hits = [0] * len(fam)
    for pos, i in enumerate(order):
        di = frozenset(d[i])
        hits[i] = sum(1 for j in order[:pos] if fam.sets[j] & di)
    return tuple(hits)


def make_refinement(fam, order, d, target_size=None):
    """Wrap a hand-made (order, d) pair, computing the back-hit counts."""
    d = tuple(frozenset(x) for x in d)
    if target_size is None:
        target_size = min((len(x) for x in d), default=0)
    return Refinement(tuple(order), d, target_size, compute_back_hits(fam, order, d))


def refinement_problems(fam, r):
    """Recheck a refinement from scratch; an empty list means valid."""
    out = []
    m = len(fam)
    if sorted(r.order) != list(range(m)):
        return ["order is not a permutation of the family indices"]
    if len(r.d) != m or len(r.back_hits) != m:
        return ["d / back_hits do not have one entry per member"]
    for i in range(m):
        if len(r.d[i]) != r.target_size:
            out.append(f"|d_{i}| = {len(r.d[i])} != {r.target_size}")
        if not r.d[i] <= fam.sets[i]:
            out.append(f"d_{i} is not inside A_{i}")
    for i, j in combinations(range(m), 2):
        if r.d[i] & r.d[j]:
            out.append(f"d_{i} and d_{j} intersect")
    # back hits recounted without compute_back_hits
    pos = {i: p for p, i in enumerate(r.order)}
    for i in range(m):
        count = len([j for j in range(m) if pos[j] < pos[i] and fam.sets[j] & r.d[i]])
        if count != r.back_hits[i]:
            out.append(f"back_hits[{i}] = {r.back_hits[i]}, recount gives {count}")
    return out


def disjoint_refinement(fam, t, mu=1, max_block=None, budget=DEFAULT_BUDGET, stats=None):
    """Enumeration plus pairwise disjoint t-subsets d_alpha of each member.

    Each block is solved directly with d'_alpha of size t + |A_alpha & W|,
    W the union of earlier blocks; removing W then leaves at least t points,
    and the t smallest are kept. The enumeration lists blocks in order and
    indices within a block increasingly.

    Raises Infeasible with ``stage='decomposition'`` when no mu-decomposition
    with the given ``max_block`` exists and ``stage='base'`` when some block
    has no disjoint system; ``detail`` then holds that block's sets and
    demands.
    """
    m = len(fam)
    if t < 1 or mu < 1:
        raise BadParameters("t and mu must be at least 1")
    if m and t + mu - 1 > min(fam.sizes()):
        raise BadParameters(
            f"t + mu - 1 = {t + mu - 1} exceeds the smallest member size {min(fam.sizes())}"
        )
    stats = _stats(stats, budget)
    dec = build_decomposition(fam, mu, max_block, budget, stats)
    if dec is None:
        raise Infeasible(
            f"no {mu}-decomposition with blocks of at most {max_block} sets",
            stage="decomposition",
        )
    masks = fam.masks
    d = [0] * m
    earlier = 0
    for bi, block in enumerate(dec.blocks):
        block_masks = [masks[i] for i in block]
        demands = [t + popcount(a & earlier) for a in block_masks]
        got = disjoint_system(block_masks, demands, stats)
        if got is None:
            raise Infeasible(
                f"block {bi} has no disjoint system of the required sizes",
                stage="base",
                detail={
                    "block": bi,
                    "indices": list(block),
                    "sets": [sorted(from_mask(a)) for a in block_masks],
                    "demands": demands,
                },
            )
        for i, dprime in zip(block, got):
            stripped = sorted(iter_bits(dprime & ~earlier))
            d[i] = to_mask(stripped[:t])
        for a in block_masks:
            earlier |= a
    order = dec.order()
    d_sets = tuple(from_mask(x) for x in d)
    return Refinement(order, d_sets, t, compute_back_hits(fam, order, d_sets), dec)


# -- elimination procedures --------------------------------------------------


def chain_removals(fam, order=None):
    """B(A) = A & (union of the members before it in ``order``)."""
    if order is None:
        order = range(len(fam))
    removals = [frozenset()] * len(fam)
    seen = 0
    for i in order:
        removals[i] = from_mask(fam.masks[i] & seen)
        seen |= fam.masks[i]
    return removals


def ed_from_refinement(fam, mode=CHAIN, order=None, mu=1, max_block=None, block_bound=None,
                       budget=DEFAULT_BUDGET, stats=None):
    """Essential-disjointness certificate built by one of two eliminations.

    chain: remove from each member its intersection with all earlier ones.
    merge: take a mu-decomposition, an e.d. certificate for each block
    (removals below ``block_bound``, plain if None), and add to each removal
    the member's intersection with the earlier blocks' universe.

    Raises Infeasible when a remainder would be empty or a block has no
    certificate.
    """
    if mode == CHAIN:
        removals = chain_removals(fam, order)
    elif mode == MERGE:
        stats = _stats(stats, budget)
        dec = build_decomposition(fam, mu, max_block, budget, stats)
        if dec is None:
            raise Infeasible("no decomposition for the merge procedure", stage="decomposition")
        removals = [frozenset()] * len(fam)
        earlier = 0
        for bi, block in enumerate(dec.blocks):
            cert = check_essentially_disjoint(
                fam.subfamily(block), STRICT_BELOW, block_bound, budget, stats
            )
            if cert is None:
                raise Infeasible(f"block {bi} is not essentially disjoint", stage="block",
                                 detail={"block": bi, "indices": list(block)})
            for i, b in zip(block, cert.removals):
                removals[i] = b | from_mask(fam.masks[i] & earlier)
            for i in block:
                earlier |= fam.masks[i]
    else:
        raise BadParameters(f"unknown elimination mode {mode!r}")
    for i, (a, b) in enumerate(zip(fam.sets, removals)):
        if a <= b:
            raise Infeasible(f"remainder of set {i} is empty", stage=mode, detail={"index": i})
    return EDCertificate(tuple(removals), STRICT_BELOW, None)


def refinement_to_property_b(r, fam):
    """B = {min d_alpha}; verified to meet every member and contain none."""
    b = frozenset(min(x) for x in r.d if x)
    if not splits(fam, b):
        raise NotSplitting(f"B = {sorted(b)} does not split the family")
    return b


__all__ = [
    "CHAIN",
    "MERGE",
    "Decomposition",
    "Refinement",
    "build_decomposition",
    "chain_removals",
    "compute_back_hits",
    "decomposition_problems",
    "disjoint_refinement",
    "disjoint_system",
    "ed_from_refinement",
    "make_refinement",
    "refinement_problems",
    "refinement_to_property_b",
]
