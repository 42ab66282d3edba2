"""Bipartite reduction graphs with field labels.

Vertices are P-vertices (closed points) and U-vertices (components); each
edge is a branch joining one of each.  Multi-edges are allowed.  The field of
an edge is the field of its P endpoint and is never stored separately.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import FieldNotAbove, InvalidAction, InvariantViolation, NotConnected

P, U = "P", "U"


def idkey(x):
    """Sort key putting integer ids before string ids."""
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


class FieldLattice:
    """Field labels ordered by containment; the relation is stored closed."""

    def __init__(self, labels, contains=(), degree=None):
        self.labels = list(dict.fromkeys(labels))
        known = set(self.labels)
        le = {(x, x) for x in self.labels}
        for small, big in contains:
            for x in (small, big):
                if x not in known:
                    raise InvariantViolation(f"unknown field label {x!r}", witness=x)
            le.add((small, big))
        # transitive closure (Warshall)
        for k in self.labels:
            for i in self.labels:
                if (i, k) in le:
                    for j in self.labels:
                        if (k, j) in le:
                            le.add((i, j))
        for a, b in le:
            if a != b and (b, a) in le:
                raise InvariantViolation(f"fields {a!r} and {b!r} contain each other", witness=(a, b))
        self._le = frozenset(le)
        self.degree = dict(degree or {})

    def __repr__(self):
        return f"FieldLattice({self.labels})"

    @classmethod
    def single(cls, label="k"):
        return cls([label])

    @property
    def pairs(self):
        """All containment pairs ``(smaller, larger)``, reflexive ones included."""
        return sorted(self._le, key=lambda p: (self.labels.index(p[0]), self.labels.index(p[1])))

    def le(self, small, big):
        return (small, big) in self._le

    def minimal(self):
        return [x for x in self.labels if not any(self.le(y, x) and y != x for y in self.labels)]

    def cover_pairs(self):
        return [(a, b) for a, b in self._le if a != b
                and not any(self.le(a, c) and self.le(c, b) and c not in (a, b) for c in self.labels)]


class Vertex(NamedTuple):
    id: object
    kind: str
    field: str


class Edge(NamedTuple):
    id: object
    p: object
    u: object


class ReductionGraph:
    """Connected bipartite multigraph of P- and U-vertices with field labels.

    Structural invariants (ids, kinds, field containment along edges) are
    checked on construction.  Connectivity is checked by the operations that
    need it, which raise :class:`NotConnected`.
    """

    def __init__(self, vertices, edges, lattice: FieldLattice | None = None):
        vs = [Vertex(*v) for v in vertices]
        es = [Edge(*e) for e in edges]
        if lattice is None:
            lattice = FieldLattice(sorted({v.field for v in vs}))
        self.lattice = lattice
        self.vertices = sorted(vs, key=lambda v: idkey(v.id))
        self.edges = sorted(es, key=lambda e: idkey(e.id))
        self.vertex = {}
        for v in self.vertices:
            if v.id in self.vertex:
                raise InvariantViolation(f"duplicate vertex id {v.id!r}", witness=v.id)
            if v.kind not in (P, U):
                raise InvariantViolation(f"vertex {v.id!r} has kind {v.kind!r}", witness=v.id)
            if v.field not in lattice.labels:
                raise InvariantViolation(f"vertex {v.id!r} has unknown field {v.field!r}", witness=v.id)
            self.vertex[v.id] = v
        self.edge = {}
        for e in self.edges:
            if e.id in self.edge:
                raise InvariantViolation(f"duplicate edge id {e.id!r}", witness=e.id)
            for end, kind in ((e.p, P), (e.u, U)):
                if end not in self.vertex:
                    raise InvariantViolation(f"edge {e.id!r} has unknown endpoint {end!r}", witness=e.id)
                if self.vertex[end].kind != kind:
                    raise InvariantViolation(
                        f"edge {e.id!r} does not join a P-vertex to a U-vertex", witness=e.id)
            if not lattice.le(self.vertex[e.u].field, self.vertex[e.p].field):
                raise FieldNotAbove(
                    f"edge {e.id!r}: field of {e.u!r} is not contained in field of {e.p!r}", witness=e.id)
            self.edge[e.id] = e
        self.vertex_index = {v.id: i for i, v in enumerate(self.vertices)}
        self.edge_index = {e.id: i for i, e in enumerate(self.edges)}

    def __repr__(self):
        return f"ReductionGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def __eq__(self, other):
        return (isinstance(other, ReductionGraph) and self.vertices == other.vertices
                and self.edges == other.edges)

    @cached_property
    def incident(self):
        """Vertex id -> incident edge ids, ascending."""
        inc = {v.id: [] for v in self.vertices}
        for e in self.edges:
            inc[e.p].append(e.id)
            inc[e.u].append(e.id)
        return inc

    def other_end(self, edge_id, vertex_id):
        e = self.edge[edge_id]
        return e.u if vertex_id == e.p else e.p

    def edge_field(self, edge_id):
        return self.vertex[self.edge[edge_id].p].field

    @cached_property
    def is_connected(self):
        if not self.vertices:
            return False
        start = self.vertices[0].id
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for e in self.incident[v]:
                w = self.other_end(e, v)
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def require_connected(self):
        if not self.is_connected:
            witness = self.vertices[0].id if self.vertices else None
            raise NotConnected("reduction graph is not connected", witness=witness)

    def ids(self, kind=None):
        return [v.id for v in self.vertices if kind is None or v.kind == kind]


def cycle_rank(g: ReductionGraph) -> int:
    g.require_connected()
    return len(g.edges) - len(g.vertices) + 1


def is_tree(g: ReductionGraph) -> bool:
    return cycle_rank(g) == 0


def is_monotonic_tree(g: ReductionGraph, lattice: FieldLattice | None = None):
    """Return ``(True, root)`` for the least valid U-root, else ``(False, None)``.

    Fields must grow (weakly) away from the root, and a P-vertex that is the
    parent of a U-vertex must carry the same field.
    """
    lattice = lattice or g.lattice
    if not is_tree(g):
        return False, None
    for root in g.ids(U):
        if _monotone_from(g, lattice, root):
            return True, root
    return False, None


def _monotone_from(g, lattice, root):
    seen = {root}
    todo = deque([root])
    while todo:
        v = todo.popleft()
        fv = g.vertex[v].field
        for e in g.incident[v]:
            w = g.other_end(e, v)
            if w in seen:
                continue
            fw = g.vertex[w].field
            if not lattice.le(fv, fw):
                return False
            if g.vertex[v].kind == P and fv != fw:
                return False
            seen.add(w)
            todo.append(w)
    return True


def _fresh_ids(existing, count, stem):
    if all(isinstance(x, int) for x in existing):
        start = max(existing, default=-1) + 1
        return list(range(start, start + count))
    taken, out, k = {str(x) for x in existing}, [], 0
    while len(out) < count:
        cand = f"{stem}{k}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        k += 1
    return out


def refine(g: ReductionGraph, u, new_fields) -> ReductionGraph:
    """Attach one new leaf P-vertex per label in ``new_fields`` to U-vertex ``u``."""
    if u not in g.vertex or g.vertex[u].kind != U:
        raise InvariantViolation(f"{u!r} is not a U-vertex", witness=u)
    fu = g.vertex[u].field
    for f in new_fields:
        if f not in g.lattice.labels or not g.lattice.le(fu, f):
            raise FieldNotAbove(f"field {f!r} does not contain the field {fu!r} of {u!r}", witness=f)
    new_v = _fresh_ids([v.id for v in g.vertices], len(new_fields), f"{u}.p")
    new_e = _fresh_ids([e.id for e in g.edges], len(new_fields), f"{u}.b")
    vertices = list(g.vertices) + [Vertex(v, P, f) for v, f in zip(new_v, new_fields)]
    edges = list(g.edges) + [Edge(e, v, u) for e, v in zip(new_e, new_v)]
    return ReductionGraph(vertices, edges, g.lattice)


@dataclass(frozen=True)
class BFSTree:
    root: object
    order: tuple            # vertices in BFS order, root first
    parent_edge: dict       # non-root vertex -> tree edge to its parent
    tree_edges: frozenset
    cycle_edges: tuple      # ascending edge-id order


def bfs_tree(g: ReductionGraph) -> BFSTree:
    """BFS spanning tree from the least vertex id, scanning edges by ascending id."""
    g.require_connected()
    root = g.vertices[0].id
    seen, order, parent_edge = {root}, [root], {}
    todo = deque([root])
    while todo:
        v = todo.popleft()
        for e in g.incident[v]:
            w = g.other_end(e, v)
            if w not in seen:
                seen.add(w)
                parent_edge[w] = e
                order.append(w)
                todo.append(w)
    tree = frozenset(parent_edge.values())
    cycles = tuple(e.id for e in g.edges if e.id not in tree)
    return BFSTree(root, tuple(order), parent_edge, tree, cycles)


def spanning_tree(g: ReductionGraph):
    """``(tree edge set, cycle edges)`` of the deterministic BFS spanning tree."""
    t = bfs_tree(g)
    return t.tree_edges, list(t.cycle_edges)


# --- group actions ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GraphAction:
    """A group acting on a graph: ``vertex_perm[a][v]`` is ``a . v``."""

    graph: ReductionGraph
    group: object
    vertex_perm: tuple  # per element: dict vertex id -> vertex id
    edge_perm: tuple    # per element: dict edge id -> edge id


def validate_action(a: GraphAction):
    g, grp = a.graph, a.group
    if len(a.vertex_perm) != grp.order or len(a.edge_perm) != grp.order:
        raise InvalidAction("need one permutation per group element", witness=grp.order)
    vids, eids = set(g.vertex), set(g.edge)
    for x in grp.elements:
        vp, ep = a.vertex_perm[x], a.edge_perm[x]
        if set(vp) != vids or set(vp.values()) != vids:
            raise InvalidAction(f"element {x} does not permute the vertices", witness=x)
        if set(ep) != eids or set(ep.values()) != eids:
            raise InvalidAction(f"element {x} does not permute the edges", witness=x)
        for v in vids:
            if g.vertex[v].kind != g.vertex[vp[v]].kind:
                raise InvalidAction(f"element {x} changes the kind of {v!r}", witness=(x, v))
        for e in g.edges:
            img = g.edge[ep[e.id]]
            if (img.p, img.u) != (vp[e.p], vp[e.u]):
                raise InvalidAction(f"element {x} breaks incidence at edge {e.id!r}", witness=(x, e.id))
    ident = grp.identity
    if any(k != v for k, v in a.vertex_perm[ident].items()) or any(k != v for k, v in a.edge_perm[ident].items()):
        raise InvalidAction("identity does not act trivially", witness=ident)
    for x in grp.elements:
        for y in grp.elements:
            xy = grp.mul(x, y)
            for v in vids:
                if a.vertex_perm[xy][v] != a.vertex_perm[x][a.vertex_perm[y][v]]:
                    raise InvalidAction("action is not compatible with the group law", witness=(x, y))
            for e in eids:
                if a.edge_perm[xy][e] != a.edge_perm[x][a.edge_perm[y][e]]:
                    raise InvalidAction("action is not compatible with the group law", witness=(x, y))
    return True


def fixed_vertices(g: ReductionGraph, a: GraphAction):
    validate_action(a)
    return {v for v in g.vertex if all(a.vertex_perm[x][v] == v for x in a.group.elements)}


def trivial_action(g: ReductionGraph, group):
    vp = {v: v for v in g.vertex}
    ep = {e: e for e in g.edge}
    return GraphAction(g, group, tuple(dict(vp) for _ in group.elements), tuple(dict(ep) for _ in group.elements))


def edge_perm_from_vertices(g: ReductionGraph, vp):
    """Edge permutation induced by a vertex automorphism of a simple graph."""
    by_ends = {(e.p, e.u): e.id for e in g.edges}
    if len(by_ends) != len(g.edges):
        raise InvalidAction("edge images are ambiguous in a multigraph", witness=None)
    try:
        return {e.id: by_ends[(vp[e.p], vp[e.u])] for e in g.edges}
    except KeyError as exc:
        raise InvalidAction("vertex map does not preserve edges", witness=exc.args[0]) from None


def action_from_generators(g: ReductionGraph, group, gen_perms):
    """Extend vertex permutations of ``group.generators`` to a GraphAction.

    Returns ``None`` when the assignment is not a homomorphism.
    """
    gens = group.generators
    ident = {v: v for v in g.vertex}
    perm = {group.identity: ident}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, sp in zip(gens, gen_perms):
                xs = group.mul(x, s)
                img = {v: perm[x][sp[v]] for v in g.vertex}
                if xs in perm:
                    if perm[xs] != img:
                        return None
                else:
                    perm[xs] = img
                    nxt.append(xs)
        frontier = nxt
    vps = tuple(perm[x] for x in group.elements)
    for x in group.elements:
        for s, sp in zip(gens, gen_perms):
            if perm[group.mul(x, s)] != {v: vps[x][sp[v]] for v in g.vertex}:
                return None
    eps = tuple(edge_perm_from_vertices(g, vp) for vp in vps)
    return GraphAction(g, group, vps, eps)


# --- tree automorphisms -------------------------------------------------------


def tree_center(g: ReductionGraph):
    if not is_tree(g):
        raise InvariantViolation("graph is not a tree", witness=None)
    deg = {v: len(g.incident[v]) for v in g.vertex}
    remaining = set(g.vertex)
    layer = [v for v in remaining if deg[v] <= 1]
    while len(remaining) > 2:
        nxt = []
        for v in layer:
            remaining.discard(v)
            for e in g.incident[v]:
                w = g.other_end(e, v)
                if w in remaining:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(remaining, key=idkey)


class _RootedTree:
    """Tree rooted at a center vertex, with canonical labels of subtrees."""

    def __init__(self, g):
        self.g = g
        self.root = tree_center(g)[0]
        self.children = {}
        order, parent = [self.root], {self.root: None}
        for v in order:
            kids = [g.other_end(e, v) for e in g.incident[v]]
            kids = [w for w in kids if w != parent[v]]
            for w in kids:
                parent[w] = v
            self.children[v] = kids
            order.extend(kids)
        self.label = {}
        for v in reversed(order):
            self.label[v] = (g.vertex[v].kind, tuple(sorted(self.label[w] for w in self.children[v])))
        self.aut_count = {}
        for v in reversed(order):
            n = 1
            for lab, kids in self._classes(v).items():
                n *= math.factorial(len(kids)) * self.aut_count[kids[0]] ** len(kids)
            self.aut_count[v] = n

    def _classes(self, v):
        out = defaultdict(list)
        for w in self.children[v]:
            out[self.label[w]].append(w)
        return out

    def isos(self, a, b):
        """All isomorphisms of the subtree at ``a`` onto the subtree at ``b``."""
        ca, cb = self._classes(a), self._classes(b)
        per_class = []
        for lab, src in sorted(ca.items()):
            dst = cb[lab]
            per_class.append([(src, perm) for perm in itertools.permutations(dst)])
        for choice in itertools.product(*per_class):
            child_maps = []
            for src, dst in choice:
                for x, y in zip(src, dst):
                    child_maps.append(list(self.isos(x, y)))
            for combo in itertools.product(*child_maps):
                m = {a: b}
                for part in combo:
                    m.update(part)
                yield m

    def random_iso(self, a, b, rng):
        m = {a: b}
        ca, cb = self._classes(a), self._classes(b)
        for lab, src in ca.items():
            dst = list(cb[lab])
            rng.shuffle(dst)
            for x, y in zip(src, dst):
                m.update(self.random_iso(x, y, rng))
        return m


class TreeSymmetry:
    """Kind-preserving automorphisms of a tree, as vertex dicts.

    Every automorphism fixes the center; with two centers they have different
    kinds, so rooting at either one loses nothing.
    """

    def __init__(self, g: ReductionGraph):
        self._rt = _RootedTree(g)

    @property
    def count(self) -> int:
        return self._rt.aut_count[self._rt.root]

    def __iter__(self):
        return self._rt.isos(self._rt.root, self._rt.root)

    def random(self, rng):
        """Uniformly random automorphism; ``rng`` is a ``random.Random``."""
        return self._rt.random_iso(self._rt.root, self._rt.root, rng)
