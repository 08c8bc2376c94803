"""Anti-monotone set functions and the closure operators they induce.

For F and a level kappa, a set D is closed when F(Y) is inside D for every
kappa-subset Y of D. ``close`` computes the least closed superset by
iterating A <- A | U{F(Y) : Y a kappa-subset of A} to a fixpoint.

Two kinds of F are supported: an explicit table over subsets, and the
family-induced F(X) = U{A in family : X inside A}. Both expose
``apply(mask) -> mask`` on bitmasks and ``__call__`` on point sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from ._bits import all_masks_lex, from_mask, iter_bits, mask_combinations, popcount, to_mask
from .errors import BadParameters, UniverseTooLarge

EXHAUSTIVE_LIMIT = 12


class TableFn:
    """F given point-wise; subsets missing from the table map to the empty set."""

    def __init__(self, universe_size, table):
        self.universe_size = universe_size
        self._table = {}
        full = (1 << universe_size) - 1
        for k, v in dict(table).items():
            km, vm = to_mask(k), to_mask(v)
            if km & ~full or vm & ~full:
                raise BadParameters(f"table entry {sorted(k)} -> {sorted(v)} leaves the universe")
            self._table[km] = vm

    def apply(self, mask):
        return self._table.get(mask, 0)

    def __call__(self, points):
        return from_mask(self.apply(to_mask(points)))

    def items(self):
        return [(from_mask(k), from_mask(v)) for k, v in sorted(self._table.items())]


class FamilyFn:
    """F(X) = union of the members of ``family`` that contain X."""

    def __init__(self, family):
        self.family = family
        self.universe_size = family.universe_size

    def apply(self, mask):
        out = 0
        for a in self.family.masks:
            if mask & ~a == 0:
                out |= a
        return out

    def __call__(self, points):
        return from_mask(self.apply(to_mask(points)))


def anti_monotone_violation(fn, limit=EXHAUSTIVE_LIMIT):
    """First pair (A, B), A inside B, with F(B) not inside F(A); None if anti-monotone.

    Single-point steps suffice: the relation is transitive along chains.
    """
    if isinstance(fn, FamilyFn):
        return None
    n = fn.universe_size
    if n > limit:
        raise UniverseTooLarge(n, limit)
    for b in range(1 << n):
        fb = fn.apply(b)
        for v in iter_bits(b):
            a = b & ~(1 << v)
            if fb & ~fn.apply(a):
                return from_mask(a), from_mask(b)
    return None


@dataclass(frozen=True)
class ClosureSpec:
    fn: object
    kappa: int

    def __post_init__(self):
        if self.kappa < 1:
            raise BadParameters("kappa must be at least 1")

    @property
    def universe_size(self):
        return self.fn.universe_size

    @classmethod
    def from_family(cls, family, kappa):
        return cls(FamilyFn(family), kappa)


def _is_closed_mask(spec, u):
    fn = spec.fn
    if isinstance(fn, FamilyFn):
        for a in fn.family.masks:
            if popcount(a & u) >= spec.kappa and a & ~u:
                return False
        return True
    for y in mask_combinations(u, spec.kappa):
        if fn.apply(y) & ~u:
            return False
    return True


def is_closed(spec, u):
    return _is_closed_mask(spec, to_mask(u))


def is_closed_generic(spec, u):
    """Closedness straight from the definition, without the family shortcut."""
    u = to_mask(u)
    return all(spec.fn.apply(y) & ~u == 0 for y in mask_combinations(u, spec.kappa))


def _close_mask(spec, a, incremental=False):
    fn, k = spec.fn, spec.kappa
    fresh = a
    while True:
        grow = 0
        for y in mask_combinations(a, k):
            # incremental mode: subsets already examined in earlier rounds are skipped
            if incremental and not y & fresh:
                continue
            grow |= fn.apply(y)
        new = a | grow
        if new == a:
            return a
        fresh = new & ~a
        a = new


def close(spec, a, incremental=False):
    """Least closed superset of ``a``.

    ``incremental`` only re-examines kappa-subsets touching points added in
    the previous round; it must agree with the reference mode exactly.
    """
    return from_mask(_close_mask(spec, to_mask(a), incremental))


def closure_table(spec, limit=EXHAUSTIVE_LIMIT):
    n = spec.universe_size
    if n > limit:
        raise UniverseTooLarge(n, limit)
    return [_close_mask(spec, a) for a in range(1 << n)]


@dataclass
class AxiomCheck:
    holds: bool = True
    counterexample: tuple | None = None

    def fail(self, *sets):
        if self.holds:
            self.holds = False
            self.counterexample = tuple(sorted(s) for s in sets)


@dataclass
class KuratowskiReport:
    """Per-axiom verdicts for K = close(spec, .).

    empty: K(0) = 0; extensive: A <= K(A); idempotent: K(K(A)) = K(A);
    union: K(A|B) = K(A)|K(B); monotone: A <= B implies K(A) <= K(B).
    """

    empty: AxiomCheck = field(default_factory=AxiomCheck)
    extensive: AxiomCheck = field(default_factory=AxiomCheck)
    idempotent: AxiomCheck = field(default_factory=AxiomCheck)
    union: AxiomCheck = field(default_factory=AxiomCheck)
    monotone: AxiomCheck = field(default_factory=AxiomCheck)
    anti_monotone_counterexample: tuple | None = None
    sampled: bool = False

    def axioms(self):
        return {
            "empty": self.empty,
            "extensive": self.extensive,
            "idempotent": self.idempotent,
            "union": self.union,
            "monotone": self.monotone,
        }

    @property
    def is_closure_operator(self):
        return all(c.holds for name, c in self.axioms().items() if name != "monotone")

    def as_dict(self):
        out = {
            name: {"holds": c.holds, "counterexample": c.counterexample}
            for name, c in self.axioms().items()
        }
        out["anti_monotone_counterexample"] = self.anti_monotone_counterexample
        out["sampled"] = self.sampled
        return out


def verify_kuratowski(spec, limit=EXHAUSTIVE_LIMIT, samples=None, seed=0):
    """Check the closure axioms for K = close(spec, .).

    Exhaustive over all subsets (and all pairs for the union and monotone
    laws) when the universe has at most ``limit`` points. Beyond that,
    pass ``samples`` to check that many random subsets/pairs instead; the
    report is then flagged as sampled. Counterexamples are the first found
    in subset order.
    """
    n = spec.universe_size
    report = KuratowskiReport()
    if n <= limit:
        subsets = range(1 << n)
        pairs = ((a, b) for a in subsets for b in subsets)
        K = closure_table(spec, limit)
        kk = K.__getitem__
    else:
        if samples is None:
            raise UniverseTooLarge(n, limit)
        report.sampled = True
        rng = random.Random(seed)
        subsets = [rng.getrandbits(n) for _ in range(samples)]
        pairs = [(rng.getrandbits(n), rng.getrandbits(n)) for _ in range(samples)]
        cache = {}

        def kk(a):
            if a not in cache:
                cache[a] = _close_mask(spec, a)
            return cache[a]

    if not isinstance(spec.fn, FamilyFn) and n <= limit:
        report.anti_monotone_counterexample = _as_lists(anti_monotone_violation(spec.fn, limit))

    if kk(0) != 0:
        report.empty.fail(from_mask(kk(0)))
    for a in subsets:
        ka = kk(a)
        if a & ~ka:
            report.extensive.fail(from_mask(a))
        if kk(ka) != ka:
            report.idempotent.fail(from_mask(a))
    for a, b in pairs:
        ka, kb = kk(a), kk(b)
        if kk(a | b) != ka | kb:
            report.union.fail(from_mask(a), from_mask(b))
        if a & ~b == 0 and ka & ~kb:
            report.monotone.fail(from_mask(a), from_mask(b))
    return report


def _as_lists(pair):
    return None if pair is None else tuple(sorted(s) for s in pair)


def closed_sets(spec, limit=EXHAUSTIVE_LIMIT):
    """All closed subsets of the universe, in lexicographic order."""
    n = spec.universe_size
    if n > limit:
        raise UniverseTooLarge(n, limit)
    return [from_mask(u) for u in all_masks_lex(range(n)) if _is_closed_mask(spec, u)]


@dataclass
class ClosureLaws:
    has_empty: bool
    has_universe: bool
    intersection_closed: bool
    union_closed: bool
    union_counterexample: tuple | None = None

    def as_dict(self):
        return {
            "has_empty": self.has_empty,
            "has_universe": self.has_universe,
            "intersection_closed": self.intersection_closed,
            "union_closed": self.union_closed,
            "union_counterexample": self.union_counterexample,
        }


def closure_laws(spec, closed=None):
    """Which notion-of-closure laws the closed sets satisfy.

    Closure under binary union is reported, not assumed: with finite kappa
    >= 2 it can fail. Pairwise intersection closure implies closure under
    arbitrary intersections on a finite universe.
    """
    if closed is None:
        closed = closed_sets(spec)
    masks = [to_mask(c) for c in closed]
    present = set(masks)
    full = (1 << spec.universe_size) - 1
    inter = all(a & b in present for a, b in combinations(masks, 2))
    bad = next(((a, b) for a, b in combinations(masks, 2) if a | b not in present), None)
    return ClosureLaws(
        has_empty=0 in present,
        has_universe=full in present,
        intersection_closed=inter,
        union_closed=bad is None,
        union_counterexample=None if bad is None else (sorted(from_mask(bad[0])), sorted(from_mask(bad[1]))),
    )


def close_by_intersection(spec, a, closed=None):
    """Intersection of all closed supersets of ``a`` (brute-force side of ``close``)."""
    if closed is None:
        closed = closed_sets(spec)
    am = to_mask(a)
    out = (1 << spec.universe_size) - 1
    for c in closed:
        cm = to_mask(c)
        if am & ~cm == 0:
            out &= cm
    return from_mask(out)


def chain_union_closed(spec, chain):
    """Is the union of an increasing chain of closed sets closed?"""
    union = 0
    for link in chain:
        union |= to_mask(link)
    return _is_closed_mask(spec, union)


__all__ = [
    "ClosureLaws",
    "ClosureSpec",
    "FamilyFn",
    "KuratowskiReport",
    "TableFn",
    "anti_monotone_violation",
    "chain_union_closed",
    "close",
    "close_by_intersection",
    "closed_sets",
    "closure_laws",
    "is_closed",
    "verify_kuratowski",
]
