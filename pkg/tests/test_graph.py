import random

import pytest
from hypothesis import given, settings, strategies as st

from shagraph import corpus
from shagraph.actions import AutomorphismTable, fixed_positions, to_graph_action, tree_actions
from shagraph.errors import FieldNotAbove, InvariantViolation, NotConnected
from shagraph.graph import (P, U, FieldLattice, ReductionGraph, TreeSymmetry, bfs_tree, cycle_rank,
                            fixed_vertices, is_monotonic_tree, is_tree, refine, spanning_tree,
                            trivial_action, validate_action)
from shagraph.groups import named_group
from shagraph.sha import nonmono_model, triangle_model
from shagraph.groups import trivial, trivial_hom

CHAIN = FieldLattice(["k", "k'", "k''"], [("k", "k'"), ("k'", "k''")])


def random_graph(rng, n_p, n_u, n_extra):
    """Random connected bipartite multigraph: a random spanning tree plus extra edges."""
    nodes = [("P", i) for i in range(n_p)] + [("U", j) for j in range(n_u)]
    rng.shuffle(nodes)
    edges = []
    placed = [nodes[0]]
    for v in nodes[1:]:
        partners = [w for w in placed if w[0] != v[0]]
        if not partners:
            # attach via a vertex of the other kind later; put it back at the end
            return random_graph(rng, n_p, n_u, n_extra)
        w = rng.choice(partners)
        edges.append((v[1], w[1]) if v[0] == "P" else (w[1], v[1]))
        placed.append(v)
    for _ in range(n_extra):
        edges.append((rng.randrange(n_p), rng.randrange(n_u)))
    return corpus.graph_from_pairs(n_p, n_u, edges)


def random_monotonic_tree(rng, n):
    """Grow a tree away from a U root, never decreasing the field, P-children of
    U-vertices free, U-children of P-vertices carry the parent's field."""
    labels = CHAIN.labels
    vertices = [(0, U, rng.choice(labels[:2]))]
    edges = []
    for i in range(1, n):
        parent = vertices[rng.randrange(len(vertices))]
        pf = labels.index(parent[2])
        if parent[1] == U:
            vertices.append((i, P, labels[rng.randrange(pf, len(labels))]))
            edges.append((len(edges), i, parent[0]))
        else:
            vertices.append((i, U, parent[2]))
            edges.append((len(edges), parent[0], i))
    return ReductionGraph(vertices, edges, CHAIN)


def test_triangle_rank(z2):
    g = triangle_model(z2).graph
    assert cycle_rank(g) == 1 and not is_tree(g)
    assert is_monotonic_tree(g) == (False, None)


def test_nonmono_not_monotonic(z2):
    g = nonmono_model(trivial(), z2, trivial_hom(trivial(), z2)).graph
    assert is_tree(g)
    assert is_monotonic_tree(g) == (False, None)


def test_single_edge():
    g = ReductionGraph([(0, U, "k"), (1, P, "k")], [(0, 1, 0)])
    assert is_tree(g) and is_monotonic_tree(g) == (True, 0)


def test_chain_root():
    lat = FieldLattice(["k", "k'"], [("k", "k'")])
    g = ReductionGraph([(0, U, "k"), (1, P, "k'"), (2, U, "k'")], [(0, 1, 0), (1, 1, 2)], lat)
    assert is_monotonic_tree(g) == (True, 0)


def test_field_not_above():
    lat = FieldLattice(["k", "k'"], [("k", "k'")])
    with pytest.raises(FieldNotAbove):
        ReductionGraph([(0, U, "k'"), (1, P, "k")], [(0, 1, 0)], lat)


def test_bad_kind_and_endpoint():
    with pytest.raises(InvariantViolation):
        ReductionGraph([(0, "X", "k")], [])
    with pytest.raises(InvariantViolation):
        ReductionGraph([(0, U, "k"), (1, U, "k")], [(0, 1, 0)])


def test_disconnected():
    g = ReductionGraph([(0, U, "k"), (1, P, "k")], [])
    assert not g.is_connected
    with pytest.raises(NotConnected):
        g.require_connected()


def test_lattice_cycle_rejected():
    with pytest.raises(InvariantViolation):
        FieldLattice(["a", "b"], [("a", "b"), ("b", "a")])


def test_refine_ids():
    g = ReductionGraph([("U1", U, "k"), ("P1", P, "k")], [("e", "P1", "U1")])
    h = refine(g, "U1", ["k", "k"])
    assert {v.id for v in h.vertices} == {"U1", "P1", "U1.p0", "U1.p1"}
    with pytest.raises(InvariantViolation):
        refine(g, "P1", ["k"])


def test_star_symmetry():
    g = ReductionGraph([(0, U, "k")] + [(i, P, "k") for i in range(1, 5)],
                       [(i - 1, i, 0) for i in range(1, 5)])
    assert TreeSymmetry(g).count == 24
    assert len(AutomorphismTable(g).auts) == 24


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 4), st.integers(0, 10**6))
def test_spanning_tree_rank(n_p, n_u, extra, seed):
    g = random_graph(random.Random(seed), n_p, n_u, extra)
    tree, cycles = spanning_tree(g)
    assert len(cycles) == cycle_rank(g)
    assert len(tree) == len(g.vertices) - 1
    assert set(bfs_tree(g).order) == set(g.ids())


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 4), st.integers(0, 10**6))
def test_refine_preserves_rank(n_p, n_u, extra, seed):
    rng = random.Random(seed)
    g = random_graph(rng, n_p, n_u, extra)
    u = rng.choice(g.ids(U))
    h = refine(g, u, ["k"] * rng.randint(1, 3))
    assert cycle_rank(h) == cycle_rank(g)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.integers(1, 9), st.integers(0, 10**6))
def test_refine_preserves_monotonic(n, seed):
    rng = random.Random(seed)
    g = random_monotonic_tree(rng, n)
    ok, root = is_monotonic_tree(g)
    assert ok and is_tree(g)
    u = rng.choice(g.ids(U))
    fu = CHAIN.labels.index(g.vertex[u].field)
    h = refine(g, u, [rng.choice(CHAIN.labels[fu:])])
    assert is_monotonic_tree(h)[0]


def test_monotonic_implies_tree():
    for g in corpus.bipartite_graphs(4):
        if is_monotonic_tree(g)[0]:
            assert is_tree(g)


def test_fixed_vertices_cross_check():
    grp = named_group("z2")
    checked = 0
    for t in corpus.trees(7):
        for perms in tree_actions(t, grp, samples=20).actions:
            act = to_graph_action(t, grp, perms)
            validate_action(act)
            ids = [v.id for v in t.vertices]
            assert sorted(fixed_vertices(t, act)) == sorted(ids[i] for i in fixed_positions(perms))
            checked += 1
    assert checked > 50
    t = corpus.trees(5)[-1]
    assert sorted(fixed_vertices(t, trivial_action(t, grp))) == sorted(t.ids())
