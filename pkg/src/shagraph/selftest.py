"""Oracle-equivalence checks run by ``shagraph selftest``.

Each check returns ``None`` on success or raises a :class:`ShaGraphError`
carrying the first failing witness.  The sizes are smaller than the test
suite's so the whole run stays well under two minutes.
"""

from __future__ import annotations

import itertools
import random
import time

from . import corpus, oracles
from .actions import AutomorphismTable, fixed_positions, tree_actions
from .arith import d_kappa, hilbert_symbol, relevant_places, squarefree_part, tate_h_minus_1
from .cohomology import compare_h1
from .errors import Mismatch
from .groups import validate_group


def check_groups(extra=()):
    for g in corpus.groups() + list(extra):
        validate_group(g)


def check_h1(max_edges=5, seed=0):
    grps = corpus.groups()
    for g in corpus.bipartite_graphs(max_edges):
        for grp in grps:
            compare_h1(g, grp, seed=seed)


def check_product_formula(bound=60):
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a == 0 or b == 0:
                continue
            prod = 1
            for v in relevant_places(a, b):
                prod *= hilbert_symbol(a, b, v)
            if prod != 1:
                raise Mismatch(f"product of Hilbert symbols of ({a}, {b}) is -1", witness=(a, b))


def check_hilbert_oracle(samples=100, seed=0):
    rng = random.Random(seed)
    places = ["inf", 2, 3, 5, 7, 11, 13]
    for _ in range(samples):
        a = rng.choice([-1, 1]) * rng.randint(1, 200)
        b = rng.choice([-1, 1]) * rng.randint(1, 200)
        v = rng.choice(places)
        got, want = hilbert_symbol(a, b, v), oracles.hilbert_by_search(a, b, v)
        if got != want:
            raise Mismatch(f"({a}, {b})_{v} = {got}, search gives {want}", witness=(a, b, v))


def check_dkappa(bound=30):
    vals = [n for n in range(-bound, bound + 1) if n not in (0, 1) and squarefree_part(n) == n]
    for a, b in itertools.combinations(vals, 2):
        if squarefree_part(a * b) == 1:
            continue
        got, want = d_kappa([], a, b), oracles.d_kappa_over_Q(a, b)
        if got != want:
            raise Mismatch(f"d_kappa(Q, {a}, {b}) = {got}, oracle gives {want}", witness=(a, b))


def check_tate():
    for mod in corpus.tate_modules(per_shape=3):
        got, want = tate_h_minus_1(mod), oracles.tate_by_enumeration(mod.orders, mod.action)
        if got != want:
            raise Mismatch(f"H^-1 of module {mod.orders}: {got} vs enumeration {want}",
                           witness=(tuple(mod.orders), [m.tolist() for m in mod.action]))


def check_serre(max_vertices=8, samples=200, seed=0):
    grps = corpus.groups(corpus.GROUPS_UPTO_8)
    for t in corpus.trees(max_vertices):
        table = AutomorphismTable(t)
        for grp in grps:
            for perms in tree_actions(t, grp, samples=samples, seed=seed, table=table).actions:
                if not fixed_positions(perms):
                    raise Mismatch("group action on a tree without a fixed vertex",
                                   witness=([v.id for v in t.vertices], perms))


CHECKS = (
    ("groups", check_groups),
    ("h1-oracle", check_h1),
    ("hilbert-product", check_product_formula),
    ("hilbert-oracle", check_hilbert_oracle),
    ("dkappa-oracle", check_dkappa),
    ("tate-oracle", check_tate),
    ("serre-fixed-point", check_serre),
)


def run(extra_groups=(), seed=0, report=None):
    """Run every check in order, stopping at the first failure (which is raised)."""
    results = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        if name == "groups":
            fn(extra_groups)
        elif name in ("h1-oracle", "hilbert-oracle", "serre-fixed-point"):
            fn(seed=seed)
        else:
            fn()
        results.append((name, time.perf_counter() - t0))
        if report:
            report(name)
    return results
