"""Small test objects: groups, bipartite multigraphs, trees and monotonic models."""

from __future__ import annotations

import itertools
import random
from collections import Counter

import numpy as np

from .graph import P, U, FieldLattice, ReductionGraph, is_monotonic_tree
from .groups import homomorphisms, named_group

GROUP_CORPUS = ("z2", "z3", "z4", "v4", "s3", "z8", "q8", "d4")
SMALL_GROUPS = ("z1", "z2", "z3", "z4", "v4", "z5", "z6", "s3")  # every group of order <= 6
GROUPS_UPTO_8 = SMALL_GROUPS + ("z7", "z8", "z2xz4", "z2xz2xz2", "d4", "q8")  # up to isomorphism


def groups(names=GROUP_CORPUS):
    return [named_group(n) for n in names]


def _canonical(n_p, n_u, edges):
    best = None
    for sp in itertools.permutations(range(n_p)):
        for su in itertools.permutations(range(n_u)):
            key = tuple(sorted((sp[p], su[u]) for p, u in edges))
            if best is None or key < best:
                best = key
    return best


def _connected(n_p, n_u, edges):
    adj = {("P", i): set() for i in range(n_p)} | {("U", j): set() for j in range(n_u)}
    for p, u in edges:
        adj[("P", p)].add(("U", u))
        adj[("U", u)].add(("P", p))
    start = next(iter(adj))
    seen, todo = {start}, [start]
    while todo:
        for w in adj[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(adj)


def graph_from_pairs(n_p, n_u, edges, field="k"):
    """U-vertices get ids ``0..n_u-1``, P-vertices the next ids; edges ``0..``."""
    vertices = [(j, U, field) for j in range(n_u)] + [(n_u + i, P, field) for i in range(n_p)]
    es = [(k, n_u + p, u) for k, (p, u) in enumerate(sorted(edges))]
    return ReductionGraph(vertices, es, FieldLattice([field]))


def bipartite_graphs(max_edges):
    """Connected bipartite multigraphs with at most ``max_edges`` edges, up to
    kind-preserving isomorphism (including the two one-vertex graphs)."""
    out = [ReductionGraph([(0, U, "k")], [], FieldLattice(["k"])),
           ReductionGraph([(0, P, "k")], [], FieldLattice(["k"]))]
    for n_e in range(1, max_edges + 1):
        seen = set()
        for n_p in range(1, n_e + 1):
            for n_u in range(1, n_e + 2 - n_p):
                pairs = list(itertools.product(range(n_p), range(n_u)))
                for edges in itertools.combinations_with_replacement(pairs, n_e):
                    used_p = {p for p, _ in edges}
                    used_u = {u for _, u in edges}
                    if len(used_p) != n_p or len(used_u) != n_u:
                        continue
                    if not _connected(n_p, n_u, edges):
                        continue
                    key = (n_p, n_u, _canonical(n_p, n_u, edges))
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(graph_from_pairs(n_p, n_u, key[2]))
    return out


def trees(max_vertices):
    """All trees up to isomorphism, each with both choices of bipartition kinds."""
    import networkx as nx

    out = [ReductionGraph([(0, U, "k")], []), ReductionGraph([(0, P, "k")], [])]
    for n in range(2, max_vertices + 1):
        for t in nx.nonisomorphic_trees(n):
            color = nx.bipartite.color(t)
            for flip in (0, 1):
                kind = {v: (U if (color[v] ^ flip) == 0 else P) for v in t.nodes}
                vertices = [(v, kind[v], "k") for v in sorted(t.nodes)]
                edges = []
                for k, (x, y) in enumerate(sorted(t.edges)):
                    p, u = (x, y) if kind[x] == P else (y, x)
                    edges.append((k, p, u))
                out.append(ReductionGraph(vertices, edges))
    return out


def monotonic_labelings(g: ReductionGraph, lattice: FieldLattice):
    """Field labelings of ``g`` making it a monotonic tree over ``lattice``."""
    out = []
    ids = g.ids()
    for fields in itertools.product(lattice.labels, repeat=len(ids)):
        f = dict(zip(ids, fields))
        if any(not lattice.le(f[e.u], f[e.p]) for e in g.edges):
            continue
        h = ReductionGraph([(v.id, v.kind, f[v.id]) for v in g.vertices], g.edges, lattice)
        if is_monotonic_tree(h)[0]:
            out.append(h)
    return out


def monotonic_models(max_edges=5, group_names=SMALL_GROUPS):
    """Every model on a monotonic tree over the chain k < k' with groups from
    ``group_names`` and any homomorphism for the inclusion; equal-field maps are
    identities.  Yields ShaModels."""
    from .sha import ShaModel

    lattice = FieldLattice(["k", "k'"], [("k", "k'")])
    grps = [named_group(n) for n in group_names]
    homs = {}
    for g in trees(max_edges + 1):
        if not g.edges and g.vertices[0].kind == P:
            continue
        for h in monotonic_labelings(g, lattice):
            used = Counter(v.field for v in h.vertices)
            if len(used) == 1:
                for grp in grps:
                    yield ShaModel(h, {"k": grp, "k'": grp}, {("k", "k'"): _ident(grp)})
                continue
            for gk, gk2 in itertools.product(grps, repeat=2):
                key = (gk.name, gk2.name)
                if key not in homs:
                    homs[key] = homomorphisms(gk, gk2)
                for inc in homs[key]:
                    yield ShaModel(h, {"k": gk, "k'": gk2}, {("k", "k'"): inc})


def _ident(grp):
    from .groups import identity_hom
    return identity_hom(grp)


TATE_SHAPES = ([1], [2], [3], [4], [5], [8], [9], [2, 2], [2, 4], [3, 3], [2, 8], [4, 4],
               [3, 9], [5, 5], [2, 2, 2], [2, 2, 4], [3, 3, 3], [4, 4, 4])


def _well_defined(m, orders):
    return all((m[j][i] * orders[i]) % orders[j] == 0
               for i in range(len(orders)) for j in range(len(orders)))


def _matrix_order(m, orders, limit=64):
    n = np.asarray(orders, dtype=np.int64)[:, None]
    ident = np.eye(len(orders), dtype=np.int64) % n
    x = ident
    for k in range(1, limit + 1):
        x = (x @ m) % n
        if np.array_equal(x, ident):
            return k
    return None


def tate_modules(per_shape=6, seed=0):
    """Finite modules for the Tate check: cyclic groups acting through a random
    invertible matrix (at its own order and at twice it), trivial actions of
    the Klein group, and S3 acting on (Z/2)^2 and on Z/3 through the sign."""
    from .arith import GModule

    rng = random.Random(seed)
    out = []
    for orders in TATE_SHAPES:
        r = len(orders)
        out.append(GModule.cyclic(orders, np.eye(r, dtype=np.int64), 2))
        found, tries = 0, 0
        while found < per_shape and tries < 400:
            tries += 1
            m = np.asarray([[rng.randrange(max(orders)) for _ in range(r)] for _ in range(r)], dtype=np.int64)
            if not _well_defined(m.tolist(), orders):
                continue
            k = _matrix_order(m, orders)
            if k is None or k == 1:
                continue
            found += 1
            for s in (k, 2 * k):
                mod = GModule.cyclic(orders, m, s)
                if mod.size * mod.group.order <= 10**5:
                    out.append(mod)
        out.append(GModule.trivial(orders, named_group("v4")))
    s3 = named_group("s3")
    # S3 = GL_2(F_2): realize the action through its permutation of the three nonzero vectors
    nonzero = [(1, 0), (0, 1), (1, 1)]
    perms = {}
    for x in s3.elements:
        for mat in itertools.product(range(2), repeat=4):
            a = np.asarray(mat).reshape(2, 2)
            if round(np.linalg.det(a)) % 2 == 0:
                continue
            perms.setdefault(tuple(tuple(int(v) for v in (a @ np.asarray(u)) % 2) for u in nonzero), a)
    # match group elements to matrices via a homomorphism found by search
    mats = list(perms.values())
    for assign in itertools.permutations(range(6)):
        act = [mats[i] for i in assign]
        mod = GModule([2, 2], s3, act)
        try:
            mod.validate()
        except Exception:
            continue
        if len({tuple(m.ravel()) for m in mod.action}) == 6:
            out.append(mod)
            break
    sign = [1 if _is_even(s3, x) else -1 for x in s3.elements]
    out.append(GModule([3], s3, [[[s % 3]] for s in sign]))
    return out


def _is_even(g, x):
    # even permutations of S3 are exactly the squares
    return any(g.mul(y, y) == x for y in g.elements)
