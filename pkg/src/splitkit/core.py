"""Set families over a finite universe and their structural predicates.

Sets are stored as frozensets for the public surface and as int bitmasks
for the searches. Duplicate members are allowed; a subfamily is always a
set of *indices*, so two copies of the same set are two members.

Every search returns the lexicographically least witness, where subsets
are compared as sorted tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from ._bits import from_mask, iter_bits, popcount, to_mask
from .errors import BadParameters, SearchBudgetExceeded, UniverseTooLarge

DEFAULT_BUDGET = 10_000_000
PROPERTY_B_LIMIT = 30

STRICT_BELOW = "strict-below"
EXACT = "exact"


@dataclass
class SearchStats:
    """Node/backtrack counters with an optional node budget."""

    nodes: int = 0
    backtracks: int = 0
    budget: int | None = None

    def tick(self, what="search"):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget, self, what)

    def as_dict(self):
        return {"nodes": self.nodes, "backtracks": self.backtracks}


def _stats(stats, budget):
    if stats is None:
        stats = SearchStats()
    stats.budget = budget
    return stats


@dataclass(frozen=True)
class SetFamily:
    universe_size: int
    sets: tuple = ()

    def __post_init__(self):
        if self.universe_size < 0:
            raise BadParameters("universe_size must be nonnegative")
        sets = tuple(frozenset(s) for s in self.sets)
        for i, s in enumerate(sets):
            for v in s:
                if not isinstance(v, int) or v < 0 or v >= self.universe_size:
                    raise BadParameters(
                        f"set {i} has element {v!r} outside 0..{self.universe_size - 1}"
                    )
        object.__setattr__(self, "sets", sets)

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    @cached_property
    def masks(self):
        return tuple(to_mask(s) for s in self.sets)

    @cached_property
    def universe_mask(self):
        m = 0
        for x in self.masks:
            m |= x
        return m

    def universe(self):
        """V(F): the union of all members."""
        return from_mask(self.universe_mask)

    def subfamily(self, indices):
        return SetFamily(self.universe_size, [self.sets[i] for i in indices])

    def sizes(self):
        return [len(s) for s in self.sets]

    def is_uniform(self, rho=None):
        sizes = set(self.sizes())
        if rho is None:
            return len(sizes) <= 1
        return sizes <= {rho}

    def as_lists(self):
        return [sorted(s) for s in self.sets]


@dataclass(frozen=True)
class Condition:
    """C(theta, nu): every theta members intersect in fewer than nu points."""

    theta: int
    nu: int

    def __post_init__(self):
        if self.theta < 2:
            raise BadParameters("theta must be at least 2")
        if self.nu < 1:
            raise BadParameters("nu must be positive")


@dataclass(frozen=True)
class EDCertificate:
    """Removals B(A) making the family pairwise disjoint.

    ``bound`` of None means the plain reading |B(A)| < |A| for each member.
    """

    removals: tuple
    bound_kind: str = STRICT_BELOW
    bound: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "removals", tuple(frozenset(b) for b in self.removals))

    def remainders(self, fam):
        return [a - b for a, b in zip(fam.sets, self.removals)]

    def max_removal(self):
        return max((len(b) for b in self.removals), default=0)

    def problems(self, fam):
        """Independent recheck; returns a list of human-readable violations."""
        out = []
        if len(self.removals) != len(fam):
            return [f"{len(self.removals)} removals for {len(fam)} sets"]
        for i, (a, b) in enumerate(zip(fam.sets, self.removals)):
            if not b <= a:
                out.append(f"B({i}) is not a subset of A_{i}")
            if len(b) >= len(a):
                out.append(f"B({i}) is not a proper subset of A_{i}")
            if self.bound is not None:
                if self.bound_kind == EXACT and len(b) != self.bound:
                    out.append(f"|B({i})| = {len(b)} != {self.bound}")
                if self.bound_kind == STRICT_BELOW and len(b) >= self.bound:
                    out.append(f"|B({i})| = {len(b)} >= {self.bound}")
        rem = self.remainders(fam)
        for i, j in combinations(range(len(rem)), 2):
            if rem[i] & rem[j]:
                out.append(f"remainders {i} and {j} share {sorted(rem[i] & rem[j])}")
        return out


# -- plain predicates -------------------------------------------------------


def is_almost_disjoint(fam):
    for i, j in combinations(range(len(fam)), 2):
        a, b = fam.masks[i], fam.masks[j]
        if popcount(a & b) >= min(popcount(a), popcount(b)):
            return False
    return True


def is_nu_disjoint(fam, nu):
    return all(
        popcount(fam.masks[i] & fam.masks[j]) < nu
        for i, j in combinations(range(len(fam)), 2)
    )


def is_pairwise_disjoint(fam):
    return is_nu_disjoint(fam, 1)


def condition_violation(fam, cond):
    """First (lex) index tuple of size theta whose intersection has >= nu points."""
    masks = fam.masks
    m = len(masks)
    full = (1 << fam.universe_size) - 1

    def walk(start, chosen, inter):
        # an intersection already below nu only shrinks further
        if popcount(inter) < cond.nu:
            return None
        if len(chosen) == cond.theta:
            return tuple(chosen)
        for i in range(start, m - (cond.theta - len(chosen)) + 1):
            chosen.append(i)
            hit = walk(i + 1, chosen, inter & masks[i])
            chosen.pop()
            if hit:
                return hit
        return None

    if m < cond.theta:
        return None
    return walk(0, [], full)


def check_condition(fam, cond):
    return condition_violation(fam, cond) is None


# -- property B ---------------------------------------------------------------


def check_property_b(fam, limit=PROPERTY_B_LIMIT, budget=DEFAULT_BUDGET, stats=None):
    """Least B with B meeting every member and containing none, or None."""
    stats = _stats(stats, budget)
    verts = sorted(fam.universe())
    if len(verts) > limit:
        raise UniverseTooLarge(len(verts), limit, "V(F)")
    masks = list(dict.fromkeys(fam.masks))
    if not masks:
        return frozenset()
    if 0 in masks:
        return None
    # highest vertex of each member: once the walk passes it the member can no longer be hit
    top = [m.bit_length() - 1 for m in masks]

    def walk(start, b):
        stats.tick("property-b search")
        if any(m & ~b == 0 for m in masks):
            return None
        nxt = verts[start] if start < len(verts) else fam.universe_size
        for m, t in zip(masks, top):
            if not m & b and t < nxt:
                return None
        if all(m & b for m in masks):
            return b
        for j in range(start, len(verts)):
            got = walk(j + 1, b | (1 << verts[j]))
            if got is not None:
                return got
            stats.backtracks += 1
        return None

    found = walk(0, 0)
    return None if found is None else from_mask(found)


def splits(fam, b):
    b = frozenset(b)
    return all(a & b and not a <= b for a in fam.sets)


# -- essential disjointness ---------------------------------------------------


def _kept_subsets(avail, k_min, k_max):
    """Subsets of ``avail`` with size in [k_min, k_max], lexicographic order."""
    pts = list(iter_bits(avail))
    n = len(pts)

    def walk(start, acc, size):
        if k_min <= size <= k_max:
            yield acc
        if size == k_max:
            return
        for j in range(start, n):
            if size + (n - j) < k_min:
                break
            yield from walk(j + 1, acc | (1 << pts[j]), size + 1)

    yield from walk(0, 0, 0)


def check_essentially_disjoint(
    fam, bound_kind=STRICT_BELOW, bound=None, budget=DEFAULT_BUDGET, stats=None
):
    """Search for removals B(A_i) leaving pairwise disjoint, nonempty remainders.

    With ``bound_kind='strict-below'`` each |B(A_i)| < bound (bound None means
    |B(A_i)| < |A_i|, plain e.d.); with ``'exact'`` each |B(A_i)| == bound.
    Among all certificates the one returned removes the fewest points in
    total, ties going to the lexicographically least tuple of remainders.
    """
    if bound_kind not in (STRICT_BELOW, EXACT):
        raise BadParameters(f"unknown bound kind {bound_kind!r}")
    if bound_kind == EXACT and bound is None:
        raise BadParameters("exact bound kind needs a bound")
    if bound is not None and bound < 0:
        raise BadParameters("bound must be nonnegative")
    stats = _stats(stats, budget)
    masks = fam.masks
    m = len(masks)
    sizes = [popcount(x) for x in masks]

    def removal_range(i):
        hi = sizes[i] - 1
        lo = 0
        if bound is not None:
            if bound_kind == EXACT:
                lo = hi = bound if bound <= hi else -1
                if lo < 0:
                    return None
            else:
                hi = min(hi, bound - 1)
        return (lo, hi) if lo <= hi else None

    ranges = [removal_range(i) for i in range(m)]
    if any(r is None for r in ranges):
        return None

    def future_floor(i, used):
        total = 0
        for j in range(i, m):
            forced = popcount(masks[j] & used)
            lo, hi = ranges[j]
            if forced > hi:
                return None
            total += max(forced, lo)
        return total

    def walk(i, used, left, out):
        stats.tick("essential-disjointness search")
        if i == m:
            return True
        lo, hi = ranges[i]
        forced = popcount(masks[i] & used)
        avail = masks[i] & ~used
        r_min = max(lo, forced)
        r_max = min(hi, left)
        if r_min > r_max:
            return False
        k_min = sizes[i] - r_max
        k_max = sizes[i] - r_min
        for kept in _kept_subsets(avail, max(k_min, 1), k_max):
            removed = sizes[i] - popcount(kept)
            floor = future_floor(i + 1, used | kept)
            if floor is None or floor > left - removed:
                continue
            out.append(masks[i] & ~kept)
            if walk(i + 1, used | kept, left - removed, out):
                return True
            out.pop()
            stats.backtracks += 1
        return False

    start = future_floor(0, 0)
    for total in range(start, sum(hi for _, hi in ranges) + 1):
        out = []
        if walk(0, 0, total, out):
            return EDCertificate(tuple(from_mask(b) for b in out), bound_kind, bound)
    return None


__all__ = [
    "DEFAULT_BUDGET",
    "EXACT",
    "STRICT_BELOW",
    "Condition",
    "EDCertificate",
    "SearchStats",
    "SetFamily",
    "check_condition",
    "check_essentially_disjoint",
    "check_property_b",
    "condition_violation",
    "is_almost_disjoint",
    "is_nu_disjoint",
    "is_pairwise_disjoint",
    "splits",
]
