"""Conflict-free colorings: the greedy list procedure and an exact oracle.

Colorings are plain dicts vertex -> color, list assignments dicts
vertex -> set of colors. Colors are opaque ints.
"""

from __future__ import annotations

from collections import Counter

from .core import DEFAULT_BUDGET, _stats
from .errors import BadParameters, ListTooSmall, UniverseTooLarge

CHI_CF_LIMIT = 16


def unique_colored(a, c):
    """Vertices of ``a`` whose color appears nowhere else in ``a``."""
    counts = Counter(c[v] for v in a)
    return {v for v in a if counts[c[v]] == 1}


def is_conflict_free(fam, c):
    for a in fam.sets:
        if a and not unique_colored(a, c):
            return False
    return True


def sufficient_list_size(fam, r):
    """(b + 1) * max set size + 1, with b the largest back-hit count of ``r``."""
    return (r.max_back_hits + 1) * max(fam.sizes(), default=0) + 1


def greedy_list_cf(fam, r, lists):
    """Color V(F) from ``lists`` so each d-vertex is unique in its member.

    Vertices outside every d_alpha get their smallest list color. The
    d-vertices are then colored in enumeration order (members by ``r.order``,
    points of d_alpha increasingly), each avoiding every color already
    placed on a member that contains it and comes no later than its own
    member; the smallest admissible color is taken.
    """
    universe = sorted(fam.universe())
    for v in universe:
        if not lists.get(v):
            raise BadParameters(f"vertex {v} has no color list")
    in_d = set().union(*r.d) if r.d else set()
    c = {v: min(lists[v]) for v in universe if v not in in_d}
    pos = {i: p for p, i in enumerate(r.order)}
    rho_max = max(fam.sizes(), default=0)
    containing = {v: [i for i, a in enumerate(fam.sets) if v in a] for v in universe}
    for step, alpha in enumerate(r.order):
        for x in sorted(r.d[alpha]):
            forbidden = set()
            for beta in containing[x]:
                if pos[beta] <= step:
                    forbidden.update(c[y] for y in fam.sets[beta] if y in c)
            assert len(forbidden) <= (r.back_hits[alpha] + 1) * rho_max
            choice = sorted(set(lists[x]) - forbidden)
            if not choice:
                raise ListTooSmall(step, alpha, x, forbidden)
            c[x] = choice[0]
    return c


def list_cf_problems(fam, r, lists, c):
    """Recheck a greedy output: colors from lists, d-vertices unique in their sets."""
    out = []
    for v in fam.universe():
        if c.get(v) not in lists.get(v, ()):
            out.append(f"vertex {v} colored {c.get(v)} outside its list")
    for i, a in enumerate(fam.sets):
        uniq = unique_colored(a, c)
        for x in r.d[i]:
            if x not in uniq:
                out.append(f"d-vertex {x} is not uniquely colored in set {i}")
    if not is_conflict_free(fam, c):
        out.append("coloring is not conflict-free")
    return out


def chi_cf_exact(fam, limit=CHI_CF_LIMIT, budget=DEFAULT_BUDGET, stats=None):
    """Least k with a conflict-free coloring of V(F) in colors 1..k.

    Returns ``(k, coloring)``. Colorings are searched with vertices in
    increasing order and a new color only ever one above the largest used,
    so the witness is the first such coloring in lexicographic order.
    """
    stats = _stats(stats, budget)
    verts = sorted(fam.universe())
    if len(verts) > limit:
        raise UniverseTooLarge(len(verts), limit, "V(F)")
    if not verts:
        return 0, {}
    sets = [sorted(a) for a in fam.sets if a]
    # a member can be judged once its last vertex is colored
    closes_at = {}
    for a in sets:
        closes_at.setdefault(a[-1], []).append(a)

    def walk(i, c, used, k):
        stats.tick("chi-cf search")
        if i == len(verts):
            return dict(c)
        v = verts[i]
        for color in range(1, min(used + 1, k) + 1):
            c[v] = color
            if all(unique_colored(a, c) for a in closes_at.get(v, ())):
                got = walk(i + 1, c, max(used, color), k)
                if got is not None:
                    return got
            stats.backtracks += 1
        del c[v]
        return None

    for k in range(1, len(verts) + 1):
        got = walk(0, {}, 0, k)
        if got is not None:
            return k, got
    raise AssertionError("distinct colors are always conflict-free")  # pragma: no cover


__all__ = [
    "chi_cf_exact",
    "greedy_list_cf",
    "is_conflict_free",
    "list_cf_problems",
    "sufficient_list_size",
    "unique_colored",
]
