"""Enumerating kind-preserving actions of finite groups on trees.

Actions are homomorphisms into the automorphism group of the tree, found by
choosing images for the group's generators and extending along the Cayley
graph.  Permutations here are tuples over vertex positions (``g.vertices``
order); :func:`to_graph_action` converts to a :class:`GraphAction`.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .graph import GraphAction, ReductionGraph, TreeSymmetry, edge_perm_from_vertices

AUT_LIST_LIMIT = 50_000
EXHAUSTIVE_LIMIT = 20000


def _order(perm):
    k, x = 1, perm
    ident = tuple(range(len(perm)))
    while x != ident:
        x = tuple(perm[i] for i in x)
        k += 1
    return k


def _power(perm, j):
    out = tuple(range(len(perm)))
    for _ in range(j):
        out = tuple(perm[i] for i in out)
    return out


def extend(group, gen_images, n):
    """Per-element permutations for generator images, or None if not a homomorphism.

    ``x * s`` acts as "apply s, then x".
    """
    gens = group.generators
    ident = tuple(range(n))
    perm = {group.identity: ident}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            px = perm[x]
            for s, ps in zip(gens, gen_images):
                xs = int(group.table[x, s])
                img = tuple(px[i] for i in ps)
                old = perm.get(xs)
                if old is None:
                    perm[xs] = img
                    nxt.append(xs)
                elif old != img:
                    return None
        frontier = nxt
    return [perm[x] for x in group.elements]


class AutomorphismTable:
    """Automorphisms of a tree as position tuples, listed when there are few."""

    def __init__(self, g: ReductionGraph, aut_limit=AUT_LIST_LIMIT):
        self.graph = g
        self.pos = {v.id: i for i, v in enumerate(g.vertices)}
        self.sym = TreeSymmetry(g)
        self.count = self.sym.count
        self.listed = self.count <= aut_limit
        if self.listed:
            self.auts = sorted({self.to_tuple(m) for m in self.sym})
            self.orders = [_order(a) for a in self.auts]

    def to_tuple(self, m):
        return tuple(self.pos[m[v.id]] for v in self.graph.vertices)

    def with_order_dividing(self, k):
        return [a for a, o in zip(self.auts, self.orders) if k % o == 0]

    def random(self, rng):
        return self.to_tuple(self.sym.random(rng))


@dataclass
class ActionSweep:
    mode: str          # "exhaustive" or "sampled"
    actions: list      # each: per-element permutation tuples


def tree_actions(g: ReductionGraph, group, *, samples=1000, seed=0, table=None,
                 exhaustive_limit=EXHAUSTIVE_LIMIT) -> ActionSweep:
    """All kind-preserving actions of ``group`` on the tree ``g`` when the search
    space is small, otherwise up to ``samples`` random valid ones (plus the
    trivial action).  Pass a shared ``table`` when sweeping many groups."""
    table = table or AutomorphismTable(g)
    n = len(g.vertices)
    gens = group.generators
    gen_orders = [group.element_order(s) for s in gens]
    rng = random.Random(seed)
    if table.listed:
        cands = [table.with_order_dividing(k) for k in gen_orders]
        if len(gens) == 1 or math.prod(len(c) for c in cands) <= exhaustive_limit:
            acts = [p for imgs in itertools.product(*cands) if (p := extend(group, imgs, n)) is not None]
            return ActionSweep("exhaustive", acts)
        draw = lambda i: rng.choice(cands[i])
    else:
        def draw(i):
            a = table.random(rng)
            k = _order(a)
            return _power(a, k // math.gcd(k, gen_orders[i]))
    acts = [extend(group, [tuple(range(n))] * len(gens), n)]
    seen = {tuple(acts[0])}
    attempts = 0
    while len(acts) < samples + 1 and attempts < 5 * samples:
        attempts += 1
        p = extend(group, [draw(i) for i in range(len(gens))], n)
        if p is not None and tuple(p) not in seen:
            seen.add(tuple(p))
            acts.append(p)
    return ActionSweep("sampled", acts)


def fixed_positions(perms):
    """Vertex positions fixed by every element (brute force over all elements)."""
    n = len(perms[0])
    return [i for i in range(n) if all(p[i] == i for p in perms)]


def to_graph_action(g: ReductionGraph, group, perms) -> GraphAction:
    ids = [v.id for v in g.vertices]
    vps = tuple({ids[i]: ids[p[i]] for i in range(len(ids))} for p in perms)
    eps = tuple(edge_perm_from_vertices(g, vp) for vp in vps)
    return GraphAction(g, group, vps, eps)
