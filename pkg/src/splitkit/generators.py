"""Parametric instance families for sweeps and the ``gen`` command."""

from __future__ import annotations

import random

from .core import SetFamily

FANO_LINES = [
    (0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5),
]


def fano():
    return SetFamily(7, FANO_LINES)


def sunflower(petals, core=2, petal_size=1):
    """``petals`` sets sharing the core {0..core-1}, each with its own extra points."""
    n = core + petals * petal_size
    base = list(range(core))
    sets = [base + list(range(core + i * petal_size, core + (i + 1) * petal_size))
            for i in range(petals)]
    return SetFamily(n, sets)


def disjoint(m, size=2):
    return SetFamily(m * size, [range(i * size, (i + 1) * size) for i in range(m)])


def random_family(rng, n, m, min_size=1, max_size=None):
    max_size = n if max_size is None else min(max_size, n)
    sets = [rng.sample(range(n), rng.randint(min_size, max_size)) for _ in range(m)]
    return SetFamily(n, sets)


def random_nu_disjoint(rng, n, m, size, nu, attempts=200):
    """Up to ``m`` random ``size``-sets with pairwise intersections below ``nu``.

    Rejection sampling; may return fewer than ``m`` sets when the universe
    is too crowded.
    """
    sets = []
    for _ in range(attempts):
        if len(sets) == m:
            break
        cand = frozenset(rng.sample(range(n), size))
        if all(len(cand & s) < nu for s in sets):
            sets.append(cand)
    return SetFamily(n, sets)


def generate(kind, seed, **params):
    """Dispatch used by the CLI; every kind takes a seed, used or not."""
    rng = random.Random(seed)
    if kind == "fano":
        return fano()
    if kind == "sunflower":
        return sunflower(params.get("petals", 3), params.get("core", 2), params.get("petal_size", 1))
    if kind == "disjoint":
        return disjoint(params.get("m", 3), params.get("size", 2))
    if kind == "random":
        n = params.get("n", 8)
        return random_family(rng, n, params.get("m", 4), params.get("min_size", 1), params.get("size"))
    if kind == "random-nu-disjoint":
        return random_nu_disjoint(
            rng, params.get("n", 12), params.get("m", 5), params.get("size", 3), params.get("nu", 2)
        )
    raise ValueError(f"unknown family kind {kind!r}")


KINDS = ("fano", "sunflower", "disjoint", "random", "random-nu-disjoint")
