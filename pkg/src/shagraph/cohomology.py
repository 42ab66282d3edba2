"""Nonabelian H^1 of a coefficient system on a reduction graph.

H^1 is the double coset space ``prod G_U \\ prod G_e / prod G_P``: a U-vertex
acts on the left of every incident edge coordinate through its incidence
homomorphism, a P-vertex on the right.  A cochain is a tuple of element ids
indexed by the graph's edges in ascending id order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import orbits
from .errors import BadCochain, InvariantViolation, Mismatch, NotARefinement
from .graph import P, U, ReductionGraph, bfs_tree
from .groups import FiniteGroup, GroupHom, identity_hom, uniform_conjugacy_classes, validate_hom


@dataclass(frozen=True, eq=False)
class CoefficientSystem:
    graph: ReductionGraph
    vertex_group: dict   # vertex id -> FiniteGroup
    edge_group: dict     # edge id -> FiniteGroup
    incidence: dict      # (vertex id, edge id) -> GroupHom vertex group -> edge group

    def __post_init__(self):
        g = self.graph
        for v in g.vertices:
            if v.id not in self.vertex_group:
                raise InvariantViolation(f"no group on vertex {v.id!r}", witness=v.id)
        for e in g.edges:
            if e.id not in self.edge_group:
                raise InvariantViolation(f"no group on edge {e.id!r}", witness=e.id)
            for v in (e.p, e.u):
                h = self.incidence.get((v, e.id))
                if h is None:
                    raise InvariantViolation(f"no incidence map at ({v!r}, {e.id!r})", witness=(v, e.id))
                if h.source is not self.vertex_group[v] and h.source != self.vertex_group[v]:
                    raise InvariantViolation(f"incidence map at ({v!r}, {e.id!r}) has the wrong source",
                                             witness=(v, e.id))
                if h.target is not self.edge_group[e.id] and h.target != self.edge_group[e.id]:
                    raise InvariantViolation(f"incidence map at ({v!r}, {e.id!r}) has the wrong target",
                                             witness=(v, e.id))
                validate_hom(h)

    @property
    def radices(self):
        return [self.edge_group[e.id].order for e in self.graph.edges]

    def identity_cochain(self):
        return tuple(self.edge_group[e.id].identity for e in self.graph.edges)

    def act(self, cochain, vertex, element):
        """Act by ``element`` of the group at ``vertex`` (left for U, right for P)."""
        g = self.graph
        out = list(cochain)
        kind = g.vertex[vertex].kind
        for e in g.incident[vertex]:
            i = g.edge_index[e]
            x = self.incidence[(vertex, e)](element)
            grp = self.edge_group[e]
            out[i] = grp.mul(x, out[i]) if kind == U else grp.mul(out[i], x)
        return tuple(out)

    def moves(self):
        """One coordinate-permutation move per generator of each vertex group."""
        g = self.graph
        out = []
        for v in g.vertices:
            for s in self.vertex_group[v.id].generators:
                move = {}
                for e in g.incident[v.id]:
                    t = self.edge_group[e].table
                    x = self.incidence[(v.id, e)](s)
                    move[g.edge_index[e]] = t[x, :] if v.kind == U else t[:, x]
                out.append(move)
        return out


def constant_system(g: ReductionGraph, grp: FiniteGroup) -> CoefficientSystem:
    ident = identity_hom(grp)
    return CoefficientSystem(
        g,
        {v.id: grp for v in g.vertices},
        {e.id: grp for e in g.edges},
        {(v, e.id): ident for e in g.edges for v in (e.p, e.u)},
    )


def check_cochain(cochain, radices):
    if len(cochain) != len(radices):
        raise BadCochain(f"cochain has {len(cochain)} entries for {len(radices)} edges", witness=len(cochain))
    for i, (x, r) in enumerate(zip(cochain, radices)):
        if not isinstance(x, (int, np.integer)) or not 0 <= x < r:
            raise BadCochain(f"entry {i} = {x!r} is not an element id", witness=i)
    return tuple(int(x) for x in cochain)


def cochain_from_entries(g: ReductionGraph, entries: dict, radices=None):
    """Build a cochain from ``{edge id: element id}``; string keys are matched to ids."""
    by_str = {str(e.id): e.id for e in g.edges}
    vals = {}
    for k, x in entries.items():
        key = k if k in g.edge else by_str.get(str(k))
        if key is None:
            raise BadCochain(f"unknown edge {k!r}", witness=k)
        vals[key] = x
    missing = [e.id for e in g.edges if e.id not in vals]
    if missing:
        raise BadCochain(f"no entry for edge {missing[0]!r}", witness=missing[0])
    c = tuple(vals[e.id] for e in g.edges)
    return check_cochain(c, radices) if radices is not None else c


@dataclass(frozen=True, eq=False)
class DoubleCosetSpace:
    """Classes of a double coset space with a total class-of function.

    ``representatives`` are the lexicographically least cochains of their
    classes, in ascending order; ``base_point`` indexes the identity class.
    """

    graph: ReductionGraph
    radices: tuple
    representatives: tuple
    base_point: int
    classify: Callable = field(repr=False)  # digit matrix (N x edges) -> class indices

    def __len__(self):
        return len(self.representatives)

    def class_of(self, cochain) -> int:
        c = check_cochain(cochain, self.radices)
        return int(self.classify(np.asarray([c], dtype=np.int64).reshape(1, len(c)))[0])

    def classes_of(self, cochains) -> np.ndarray:
        arr = np.asarray(cochains, dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(-1, len(self.radices))
        return np.asarray(self.classify(arr))

    def is_trivial(self, cochain) -> bool:
        return self.class_of(cochain) == self.base_point

    def to_json(self):
        eids = [e.id for e in self.graph.edges]
        return {
            "classCount": len(self),
            "basePoint": self.base_point,
            "representatives": [{"entries": {str(e): x for e, x in zip(eids, r)}} for r in self.representatives],
        }


def h1_brute_force(sys: CoefficientSystem, max_states=orbits.DEFAULT_MAX_STATES) -> DoubleCosetSpace:
    """Enumerate the double cosets by orbit closure over the whole cochain space."""
    radices = sys.radices
    labels, reps = orbits.label_orbits(radices, sys.moves(), max_states=max_states)
    places = orbits.places_for(radices)

    def classify(digits):
        if not len(radices):
            return np.zeros(len(digits), dtype=np.int64)
        return labels[digits @ places]

    base = int(labels[orbits.encode(sys.identity_cochain(), radices)])
    return DoubleCosetSpace(
        sys.graph, tuple(radices), tuple(orbits.decode(r, radices) for r in reps), base, classify)


def _collapse(g, grp, tree, digits):
    """Normalize tree-edge coordinates to the identity, vertex by vertex in BFS order."""
    c = np.array(digits, dtype=np.int64, copy=True)
    t, inv = grp.table, grp.inverses
    for v in tree.order[1:]:
        j = g.edge_index[tree.parent_edge[v]]
        h = inv[c[:, j]]
        left = g.vertex[v].kind == U
        for e in g.incident[v]:
            k = g.edge_index[e]
            c[:, k] = t[h, c[:, k]] if left else t[c[:, k], h]
    return c


def h1_constant(g: ReductionGraph, grp: FiniteGroup, max_states=orbits.DEFAULT_MAX_STATES) -> DoubleCosetSpace:
    """H^1 with constant coefficients via holonomy on the cycle edges.

    Classes are the simultaneous-conjugation classes of ``grp**m`` placed on the
    cycle edges of the BFS spanning tree, identity elsewhere.
    """
    tree = bfs_tree(g)
    m = len(tree.cycle_edges)
    orbits.check_bound(grp.order**m, max_states)
    uc = uniform_conjugacy_classes(grp, m, max_states=max_states)
    cyc = [g.edge_index[e] for e in tree.cycle_edges]
    e_id = grp.identity

    def embed(tup):
        c = [e_id] * len(g.edges)
        for i, x in zip(cyc, tup):
            c[i] = x
        return tuple(c)

    embedded = [embed(r) for r in uc.reps]
    order = sorted(range(len(embedded)), key=lambda i: embedded[i])
    remap = np.empty(len(order), dtype=np.int64)
    remap[order] = np.arange(len(order))
    places = orbits.places_for([grp.order] * m)

    def classify(digits):
        c = _collapse(g, grp, tree, digits)
        if m == 0:
            return np.zeros(len(c), dtype=np.int64)
        return remap[uc.labels[c[:, cyc] @ places]]

    space = DoubleCosetSpace(
        g, tuple([grp.order] * len(g.edges)), tuple(embedded[i] for i in order), 0, classify)
    base = space.class_of(tuple([e_id] * len(g.edges)))
    return DoubleCosetSpace(g, space.radices, space.representatives, base, classify)


def refinement_map(cochain, old: ReductionGraph, new: ReductionGraph, identity=0):
    """Extend a cochain on ``old`` to ``new`` by the identity on the added edges.

    ``identity`` is an element id, or a dict from new edge ids to element ids.
    """
    _check_refinement(old, new)
    if len(cochain) != len(old.edges):
        raise BadCochain(f"cochain has {len(cochain)} entries for {len(old.edges)} edges", witness=len(cochain))
    vals = {e.id: int(x) for e, x in zip(old.edges, cochain)}
    out = []
    for e in new.edges:
        if e.id in vals:
            out.append(vals[e.id])
        else:
            out.append(identity[e.id] if isinstance(identity, dict) else identity)
    return tuple(out)


def _check_refinement(old, new):
    for v in old.vertices:
        if new.vertex.get(v.id) != v:
            raise NotARefinement(f"vertex {v.id!r} is missing or changed", witness=v.id)
    for e in old.edges:
        if new.edge.get(e.id) != e:
            raise NotARefinement(f"edge {e.id!r} is missing or changed", witness=e.id)
    for v in new.vertices:
        if v.id in old.vertex:
            continue
        inc = new.incident[v.id]
        if v.kind != P or len(inc) != 1 or new.edge[inc[0]].u not in old.vertex:
            raise NotARefinement(f"new vertex {v.id!r} is not a leaf point on an old component", witness=v.id)
    for e in new.edges:
        if e.id not in old.edge and e.p in old.vertex:
            raise NotARefinement(f"new edge {e.id!r} meets an old point", witness=e.id)


@dataclass(frozen=True)
class H1Comparison:
    class_count: int
    checked: int
    exhaustive: bool


def compare_h1(g: ReductionGraph, grp: FiniteGroup, max_states=orbits.DEFAULT_MAX_STATES,
               exhaustive_limit=10**5, samples=10**4, seed=0) -> H1Comparison:
    """Check that brute force and the spanning-tree collapse give the same H^1.

    Raises :class:`Mismatch` with a witness cochain on any disagreement.
    """
    bf = h1_brute_force(constant_system(g, grp), max_states=max_states)
    hc = h1_constant(g, grp, max_states=max_states)
    if len(bf) != len(hc):
        raise Mismatch(f"brute force has {len(bf)} classes, collapse has {len(hc)}", witness=None)
    to_bf = hc.classes_of(hc.representatives) if len(hc) else np.empty(0, dtype=np.int64)
    if len(set(to_bf.tolist())) != len(hc):
        i = _first_dup(to_bf)
        raise Mismatch("collapse representatives merge under brute force", witness=hc.representatives[i])
    if int(to_bf[hc.base_point]) != bf.base_point:
        raise Mismatch("base points do not correspond", witness=hc.representatives[hc.base_point])
    radices = list(bf.radices)
    total = orbits.state_count(radices)
    exhaustive = total <= exhaustive_limit
    if exhaustive:
        states = np.arange(total, dtype=np.int64)
    else:
        states = np.random.default_rng(seed).integers(0, total, size=samples)
    digits = orbits.decode_many(states, radices)
    a = bf.classes_of(digits)
    b = to_bf[hc.classes_of(digits)]
    bad = np.flatnonzero(a != b)
    if len(bad):
        raise Mismatch("class partitions differ", witness=tuple(int(x) for x in digits[bad[0]]))
    return H1Comparison(len(bf), len(states), exhaustive)


def _first_dup(arr):
    seen = {}
    for i, x in enumerate(arr.tolist()):
        if x in seen:
            return i
        seen[x] = i
    return 0
