"""Density numbers D(n, k1, k2) and the revised power n^[theta] at finite n.

D(n, k1, k2) is the least number of k1-subsets of {0..n-1} such that every
k2-subset contains one of them: a covering/Turan-type number. The revised
power n^[theta] is the least number of theta-subsets such that every
theta-subset lies inside the union of fewer than theta of them.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ._bits import from_mask, lex_key, mask_combinations, popcount, to_mask
from .core import DEFAULT_BUDGET, SearchStats, _stats
from .errors import BadParameters, SearchBudgetExceeded, ShapeMismatch

DENSE = "dense"
WEAKLY_COVERING = "weakly-covering"


@dataclass(frozen=True)
class DensityQuery:
    lam: int
    kappa1: int
    kappa2: int

    def __post_init__(self):
        if not 1 <= self.kappa1 <= self.kappa2 <= self.lam:
            raise BadParameters(
                f"need 1 <= kappa1 <= kappa2 <= lambda, got "
                f"({self.lam}, {self.kappa1}, {self.kappa2})"
            )


@dataclass(frozen=True)
class DensityWitness:
    members: tuple
    mode: str = DENSE
    theta: int | None = None

    def __post_init__(self):
        members = sorted((frozenset(m) for m in self.members), key=lex_key)
        object.__setattr__(self, "members", tuple(members))
        if self.mode not in (DENSE, WEAKLY_COVERING):
            raise BadParameters(f"unknown witness mode {self.mode!r}")
        if self.mode == WEAKLY_COVERING and self.theta is None:
            raise BadParameters("weakly-covering witness needs theta")

    def __len__(self):
        return len(self.members)


def is_dense_in(members, ground, k2):
    """True iff every k2-subset of ``ground`` contains some member.

    ``members`` and ``ground`` are point collections; only members inside
    ``ground`` can matter.
    """
    ground_mask = to_mask(ground)
    masks = [to_mask(m) for m in members]
    masks = [m for m in masks if m & ~ground_mask == 0]
    for x in mask_combinations(ground_mask, k2):
        if not any(m & ~x == 0 for m in masks):
            return False
    return True


def _cover_with(x, masks, depth):
    """Can ``x`` be covered by at most ``depth`` of ``masks``?"""
    if x == 0:
        return True
    if depth == 0:
        return False
    low = x & -x
    for m in masks:
        if m & low and _cover_with(x & ~m, masks, depth - 1):
            return True
    return False


def is_weakly_covering(members, n, theta):
    masks = [to_mask(m) for m in members]
    for x in mask_combinations((1 << n) - 1, theta):
        if not _cover_with(x, masks, theta - 1):
            return False
    return True


def verify_witness(w, q):
    """Exhaustively check a density or weak-covering witness.

    For weak covering, ``q.lam`` is the universe size and ``w.theta`` the
    covering parameter; ``q``'s kappas are not consulted.
    """
    n = q.lam
    size = q.kappa1 if w.mode == DENSE else w.theta
    for m in w.members:
        if len(m) != size:
            raise ShapeMismatch(f"member {sorted(m)} has size {len(m)}, expected {size}")
        if any(v < 0 or v >= n for v in m):
            raise ShapeMismatch(f"member {sorted(m)} leaves the universe 0..{n - 1}")
    if w.mode == DENSE:
        return is_dense_in(w.members, range(n), q.kappa2)
    return is_weakly_covering(w.members, n, w.theta)


class _CoverProblem:
    """Rows are k2-subsets, columns k1-subsets; column c covers row r iff c is inside r."""

    def __init__(self, q):
        full = (1 << q.lam) - 1
        self.rows = list(mask_combinations(full, q.kappa2))
        self.cols = list(mask_combinations(full, q.kappa1))
        self.cover = []
        self.row_cands = [[] for _ in self.rows]
        for c, cm in enumerate(self.cols):
            bits = 0
            for r, rm in enumerate(self.rows):
                if cm & ~rm == 0:
                    bits |= 1 << r
                    self.row_cands[r].append(c)
            self.cover.append(bits)
        self.all_rows = (1 << len(self.rows)) - 1
        # most-constrained row first; ties to the lexicographically first row
        self.row_order = sorted(range(len(self.rows)), key=lambda r: (len(self.row_cands[r]), r))

    def pick_row(self, uncovered):
        for r in self.row_order:
            if uncovered >> r & 1:
                return r
        raise AssertionError("no uncovered row")

    def lower_bound(self, uncovered, banned):
        best = 0
        for c, bits in enumerate(self.cover):
            if not banned >> c & 1:
                best = max(best, popcount(bits & uncovered))
        if best == 0:
            return None
        return -(-popcount(uncovered) // best)

    def search(self, uncovered, depth, banned, chosen, stats):
        stats.tick("density search")
        if uncovered == 0:
            return list(chosen)
        if depth == 0:
            return None
        lb = self.lower_bound(uncovered, banned)
        if lb is None or lb > depth:
            return None
        r = self.pick_row(uncovered)
        local_ban = banned
        for c in self.row_cands[r]:
            if local_ban >> c & 1:
                continue
            chosen.append(c)
            got = self.search(uncovered & ~self.cover[c], depth - 1, local_ban, chosen, stats)
            chosen.pop()
            if got is not None:
                return got
            stats.backtracks += 1
            # any solution using c would have been found in that branch
            local_ban |= 1 << c
        return None


def density_greedy(q):
    """Greedy max-coverage upper bound; always returns a valid dense family."""
    prob = _CoverProblem(q)
    uncovered = prob.all_rows
    chosen = []
    while uncovered:
        best, gain = None, 0
        for c, bits in enumerate(prob.cover):
            g = popcount(bits & uncovered)
            if g > gain:
                best, gain = c, g
        chosen.append(best)
        uncovered &= ~prob.cover[best]
    return DensityWitness(tuple(from_mask(prob.cols[c]) for c in chosen), DENSE)


def _top_level(prob, depth, stats, threads):
    """Run one depth-limited search, splitting the root branches across threads.

    The merge walks branches in sequential order and charges only the nodes
    a sequential run would have spent, so results and statistics do not
    depend on the thread count.
    """
    stats.tick("density search")
    uncovered = prob.all_rows
    if uncovered == 0:
        return []
    if depth == 0:
        return None
    lb = prob.lower_bound(uncovered, 0)
    if lb is None or lb > depth:
        return None
    r = prob.pick_row(uncovered)
    cands = prob.row_cands[r]
    remaining = None if stats.budget is None else stats.budget - stats.nodes

    def branch(i):
        local = SearchStats(budget=remaining)
        banned = 0
        for c in cands[:i]:
            banned |= 1 << c
        c = cands[i]
        try:
            got = prob.search(uncovered & ~prob.cover[c], depth - 1, banned, [c], local)
        except SearchBudgetExceeded:
            return None, local, True
        return got, local, False

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(branch, range(len(cands))))
    else:
        results = (branch(i) for i in range(len(cands)))

    for got, local, blown in results:
        stats.nodes += local.nodes
        stats.backtracks += local.backtracks
        if blown or (stats.budget is not None and stats.nodes > stats.budget):
            stats.nodes = stats.budget + 1
            raise SearchBudgetExceeded(stats.budget, stats, "density search")
        if got is not None:
            return got
        stats.backtracks += 1
    return None


def density_exact(q, budget=DEFAULT_BUDGET, stats=None, threads=1):
    """Exact D(n, k1, k2) by iterative-deepening branch and bound.

    Returns ``(value, witness)``. The greedy family bounds the deepening
    from above; the witness always comes from the exact search.
    """
    stats = _stats(stats, budget)
    prob = _CoverProblem(q)
    upper = len(density_greedy(q))
    lower = prob.lower_bound(prob.all_rows, 0) or 0
    for depth in range(lower, upper + 1):
        got = _top_level(prob, depth, stats, threads)
        if got is not None:
            members = tuple(from_mask(prob.cols[c]) for c in got)
            return len(got), DensityWitness(members, DENSE)
    raise AssertionError("greedy bound was not attained")  # pragma: no cover


def revised_power_exact(n, theta, budget=DEFAULT_BUDGET, stats=None):
    """Exact n^[theta]; returns ``(value, witness)``.

    Tries family sizes upward from ceil(n/theta) (the union must be the
    whole universe) and, at each size, families in lexicographic order.
    """
    if not 2 <= theta <= n:
        raise BadParameters(f"need 2 <= theta <= n, got theta={theta}, n={n}")
    stats = _stats(stats, budget)
    full = (1 << n) - 1
    cands = list(mask_combinations(full, theta))
    targets = cands

    def covers_all(chosen):
        return all(_cover_with(x, chosen, theta - 1) for x in targets)

    def walk(start, chosen, k):
        stats.tick("revised-power search")
        if len(chosen) == k:
            return list(chosen) if covers_all(chosen) else None
        # the union of the final family has to be the whole universe
        union = 0
        for m in chosen:
            union |= m
        if popcount(full & ~union) > theta * (k - len(chosen)):
            return None
        for i in range(start, len(cands) - (k - len(chosen)) + 1):
            chosen.append(cands[i])
            got = walk(i + 1, chosen, k)
            chosen.pop()
            if got is not None:
                return got
            stats.backtracks += 1
        return None

    for k in range(-(-n // theta), len(cands) + 1):
        got = walk(0, [], k)
        if got is not None:
            w = DensityWitness(tuple(from_mask(m) for m in got), WEAKLY_COVERING, theta)
            return k, w
    raise AssertionError("the full family is always weakly covering")  # pragma: no cover


# -- monotonicity sweeps --------------------------------------------------------


def density_table(max_n, budget=DEFAULT_BUDGET):
    """D(n, k1, k2) for every 1 <= k1 <= k2 <= n <= max_n."""
    table = {}
    for n in range(1, max_n + 1):
        for k1 in range(1, n + 1):
            for k2 in range(k1, n + 1):
                table[n, k1, k2] = density_exact(DensityQuery(n, k1, k2), budget)[0]
    return table


def monotonicity_violations(table):
    """Instances breaking monotonicity in n or the sandwich inequality."""
    bad = []
    for (n, k1, k2), v in table.items():
        nxt = table.get((n + 1, k1, k2))
        if nxt is not None and nxt < v:
            bad.append(("lambda", (n, k1, k2), (n + 1, k1, k2)))
        for (n2, j1, j2), w in table.items():
            if n2 == n and j1 <= k1 and k2 <= j2 and w > v:
                bad.append(("sandwich", (n, k1, k2), (n, j1, j2)))
    return bad


def kappa_direction_witnesses(table):
    """First instances with D(n,k) < D(n,k') and with D(n,k) > D(n,k'), k < k'.

    Returns ``(increasing, decreasing)``; each is ``(n, k, k')`` or None.
    """
    up = down = None
    for (n, k, k2), v in sorted(table.items()):
        if k != k2:
            continue
        for k_ in range(k + 1, n + 1):
            w = table[n, k_, k_]
            if v < w and up is None:
                up = (n, k, k_)
            if v > w and down is None:
                down = (n, k, k_)
    return up, down


def chain_union_dense(chain, families, k1, k3):
    """Is the union of ``families`` (restricted to k1-subsets of the last
    link of ``chain``) dense in the k3-subsets of that link?"""
    top = frozenset(chain[-1])
    pooled = {frozenset(m) for fam in families for m in fam if len(m) == k1 and m <= top}
    return is_dense_in(pooled, top, k3)


def restrict(members, ground, k1):
    """Members of size k1 lying inside ``ground``."""
    ground = frozenset(ground)
    return [frozenset(m) for m in members if len(m) == k1 and frozenset(m) <= ground]


__all__ = [
    "DENSE",
    "WEAKLY_COVERING",
    "DensityQuery",
    "DensityWitness",
    "chain_union_dense",
    "density_exact",
    "density_greedy",
    "density_table",
    "is_dense_in",
    "is_weakly_covering",
    "kappa_direction_witnesses",
    "monotonicity_violations",
    "restrict",
    "revised_power_exact",
    "verify_witness",
]
