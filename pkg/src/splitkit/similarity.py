"""Similarity of families and an experiment on e.d. transfer under dominance.

Two families are similar when some bijection between them preserves every
pairwise intersection size. Dominance is the one-sided version:
|A_a & A_b| >= |B_a & B_b| for a < b under a fixed pairing.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._bits import popcount
from .core import DEFAULT_BUDGET, STRICT_BELOW, _stats, check_essentially_disjoint

DOMINANCE_ABSENT = "dominance-absent"
SOURCE_NOT_ED = "source-not-ed"
TRANSFER_HELD = "transfer-held"
TRANSFER_FAILED = "transfer-failed"


def intersection_matrix(fam):
    masks = fam.masks
    return tuple(tuple(popcount(a & b) for b in masks) for a in masks)


def _signatures(matrix):
    return [(row[i], tuple(sorted(row))) for i, row in enumerate(matrix)]


def find_similarity(famF, famG, budget=DEFAULT_BUDGET, stats=None):
    """Lexicographically least index bijection f with matching intersection sizes.

    Returns a tuple ``f`` (``f[i]`` is the G-index of F's member i) or None.
    """
    if len(famF) != len(famG):
        return None
    stats = _stats(stats, budget)
    mf, mg = intersection_matrix(famF), intersection_matrix(famG)
    sf, sg = _signatures(mf), _signatures(mg)
    if sorted(sf) != sorted(sg):
        return None
    m = len(mf)
    f = []
    taken = [False] * m

    def walk(i):
        stats.tick("similarity search")
        if i == m:
            return True
        for j in range(m):
            if taken[j] or sf[i] != sg[j]:
                continue
            if all(mf[k][i] == mg[f[k]][j] for k in range(i)):
                f.append(j)
                taken[j] = True
                if walk(i + 1):
                    return True
                f.pop()
                taken[j] = False
                stats.backtracks += 1
        return False

    return tuple(f) if walk(0) else None


def dominance_violation(famF, famG, pairing=None):
    """First (a, b), a < b, with |A_a & A_b| < |B_f(a) & B_f(b)|; None if dominated."""
    m = len(famF)
    if pairing is None:
        pairing = range(m)
    f = list(pairing)
    mf, mg = intersection_matrix(famF), intersection_matrix(famG)
    for a in range(m):
        for b in range(a + 1, m):
            if mf[a][b] < mg[f[a]][f[b]]:
                return a, b
    return None


def find_dominating_pairing(famF, famG, budget=DEFAULT_BUDGET, stats=None):
    """Lexicographically least bijection under which F dominates G, or None."""
    if len(famF) != len(famG):
        return None
    stats = _stats(stats, budget)
    mf, mg = intersection_matrix(famF), intersection_matrix(famG)
    m = len(mf)
    f = []
    taken = [False] * m

    def walk(i):
        stats.tick("dominance search")
        if i == m:
            return True
        for j in range(m):
            if taken[j]:
                continue
            if all(mf[k][i] >= mg[f[k]][j] for k in range(i)):
                f.append(j)
                taken[j] = True
                if walk(i + 1):
                    return True
                f.pop()
                taken[j] = False
                stats.backtracks += 1
        return False

    return tuple(f) if walk(0) else None


@dataclass
class ProbeReport:
    verdict: str
    pairing: tuple | None = None
    violation: tuple | None = None
    source_certificate: object = None
    target_certificate: object = None

    def as_dict(self):
        def cert(c):
            return None if c is None else [sorted(b) for b in c.removals]

        return {
            "verdict": self.verdict,
            "pairing": None if self.pairing is None else list(self.pairing),
            "violation": None if self.violation is None else list(self.violation),
            "source_removals": cert(self.source_certificate),
            "target_removals": cert(self.target_certificate),
        }


def dominance_ed_probe(famF, famG, bound=None, search_bijections=False,
                       budget=DEFAULT_BUDGET, stats=None):
    """Does e.d. (removals below ``bound``) carry over from F to a dominated G?

    This only collects evidence at finite size. The verdict is one of
    dominance-absent, source-not-ed, transfer-held, transfer-failed.
    """
    if len(famF) != len(famG):
        raise ValueError("families must have the same number of members")
    stats = _stats(stats, budget)
    if search_bijections:
        pairing = find_dominating_pairing(famF, famG, budget, stats)
        if pairing is None:
            return ProbeReport(DOMINANCE_ABSENT)
        violation = None
    else:
        pairing = tuple(range(len(famF)))
        violation = dominance_violation(famF, famG, pairing)
        if violation is not None:
            return ProbeReport(DOMINANCE_ABSENT, pairing, violation)
    source = check_essentially_disjoint(famF, STRICT_BELOW, bound, budget, stats)
    if source is None:
        return ProbeReport(SOURCE_NOT_ED, pairing)
    # G is read in the pairing's order so removals line up with F's members
    ordered = famG.subfamily(pairing)
    target = check_essentially_disjoint(ordered, STRICT_BELOW, bound, budget, stats)
    verdict = TRANSFER_HELD if target is not None else TRANSFER_FAILED
    return ProbeReport(verdict, pairing, None, source, target)


__all__ = [
    "DOMINANCE_ABSENT",
    "SOURCE_NOT_ED",
    "TRANSFER_FAILED",
    "TRANSFER_HELD",
    "ProbeReport",
    "dominance_ed_probe",
    "dominance_violation",
    "find_dominating_pairing",
    "find_similarity",
    "intersection_matrix",
]
