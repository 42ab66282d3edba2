"""Sha models: a reduction graph, field lattice, per-field groups and maps.

``group_of[k]`` stands for G(k)/R and ``map_of[(k, k2)]`` for the map induced by
a field inclusion ``k <= k2``.  The double coset space built from these is a
quotient of Sha, and equals it when every vertex carries the base field.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import orbits
from .cohomology import CoefficientSystem, DoubleCosetSpace, check_cochain, h1_brute_force, h1_constant
from .errors import HypothesisViolated, MissingMap, NotFunctorial, NotHomomorphism
from .graph import P, U, FieldLattice, ReductionGraph
from .groups import FiniteGroup, GroupHom, identity_hom, validate_group, validate_hom


@dataclass(frozen=True, eq=False)
class ShaModel:
    graph: ReductionGraph
    group_of: dict   # field label -> FiniteGroup
    map_of: dict     # (smaller, larger) -> GroupHom
    lattice: FieldLattice = None

    def __post_init__(self):
        lat = self.lattice or self.graph.lattice
        object.__setattr__(self, "lattice", lat)
        for label in lat.labels:
            if label not in self.group_of:
                raise MissingMap(f"no group for field {label!r}", witness=label)
            validate_group(self.group_of[label])
        maps = dict(self.map_of)
        for (a, b), h in maps.items():
            if not lat.le(a, b):
                raise MissingMap(f"map given for non-containment {a!r} -> {b!r}", witness=(a, b))
            if h.source != self.group_of[a] or h.target != self.group_of[b]:
                raise MissingMap(f"map {a!r} -> {b!r} has the wrong source or target", witness=(a, b))
            validate_hom(h)
        for a in lat.labels:
            ident = identity_hom(self.group_of[a])
            if (a, a) in maps and maps[(a, a)].image != ident.image:
                raise NotFunctorial(f"map {a!r} -> {a!r} is not the identity", witness=(a, a))
            maps[(a, a)] = ident
        # fill containments reachable by composing given maps
        changed = True
        while changed:
            changed = False
            for (a, b) in list(maps):
                for (b2, c) in list(maps):
                    if b2 == b and (a, c) not in maps:
                        maps[(a, c)] = maps[(a, b)].compose(maps[(b, c)])
                        changed = True
        for (a, b) in maps:
            for (b2, c) in maps:
                if b2 == b and a != b and b != c:
                    if maps[(a, c)].image != maps[(a, b)].compose(maps[(b, c)]).image:
                        raise NotFunctorial(
                            f"maps {a!r} -> {b!r} -> {c!r} do not compose to {a!r} -> {c!r}", witness=(a, b, c))
        object.__setattr__(self, "map_of", maps)

    def hom(self, small, big) -> GroupHom:
        try:
            return self.map_of[(small, big)]
        except KeyError:
            raise MissingMap(f"no map for {small!r} -> {big!r}", witness=(small, big)) from None


def to_coefficient_system(m: ShaModel) -> CoefficientSystem:
    """Edge groups are the P-endpoint groups; U-vertices map in along field inclusions."""
    g = m.graph
    field = {v.id: v.field for v in g.vertices}
    vertex_group = {v.id: m.group_of[v.field] for v in g.vertices}
    edge_group, incidence = {}, {}
    for e in g.edges:
        fp, fu = field[e.p], field[e.u]
        edge_group[e.id] = m.group_of[fp]
        incidence[(e.p, e.id)] = m.hom(fp, fp)
        incidence[(e.u, e.id)] = m.hom(fu, fp)
    return CoefficientSystem(g, vertex_group, edge_group, incidence)


def sha_lower_bound(m: ShaModel, max_states=orbits.DEFAULT_MAX_STATES) -> DoubleCosetSpace:
    """The double coset quotient of Sha; more than one class certifies a counterexample."""
    return h1_brute_force(to_coefficient_system(m), max_states=max_states)


def base_field(m: ShaModel):
    mins = m.lattice.minimal()
    return mins[0] if len(mins) == 1 else m.graph.vertices[0].field


def check_rational(m: ShaModel):
    """Raise HypothesisViolated unless every vertex carries the base field."""
    k = base_field(m)
    for v in m.graph.vertices:
        if v.field != k:
            what = "intersection point" if v.kind == P else "component"
            raise HypothesisViolated(
                f"{what} {v.id!r} has field {v.field!r}, not the base field {k!r}", witness=v.id)
    return k


def sha_exact_rational(m: ShaModel, max_states=orbits.DEFAULT_MAX_STATES) -> DoubleCosetSpace:
    k = check_rational(m)
    return h1_constant(m.graph, m.group_of[k], max_states=max_states)


def is_rational(m: ShaModel) -> bool:
    try:
        check_rational(m)
    except HypothesisViolated:
        return False
    return True


def verdict(m: ShaModel, space: DoubleCosetSpace, exact: bool) -> str:
    if len(space) > 1:
        return "counterexample"
    return "trivial" if exact or is_rational(m) else "inconclusive"


def is_class_trivial(space: DoubleCosetSpace, cochain) -> bool:
    return space.class_of(check_cochain(cochain, space.radices)) == space.base_point


def triangle_model(grp: FiniteGroup) -> ShaModel:
    """Three rational lines meeting pairwise in rational points: a hexagonal graph."""
    validate_group(grp)
    lat = FieldLattice(["k"])
    vertices = [("U1", U, "k"), ("U2", U, "k"), ("U3", U, "k"),
                ("P12", P, "k"), ("P23", P, "k"), ("P31", P, "k")]
    edges = [("b1", "P12", "U1"), ("b2", "P12", "U2"), ("b3", "P23", "U2"),
             ("b4", "P23", "U3"), ("b5", "P31", "U3"), ("b6", "P31", "U1")]
    return ShaModel(ReductionGraph(vertices, edges, lat), {"k": grp}, {})


def nonmono_model(gk: FiniteGroup, gk2: FiniteGroup, inc: GroupHom) -> ShaModel:
    """Two lines over k meeting in a single point with residue field k' > k."""
    if inc.source != gk or inc.target != gk2:
        raise NotHomomorphism("inclusion map must go from the k-group to the k'-group", witness=None)
    validate_hom(inc)
    lat = FieldLattice(["k", "k'"], [("k", "k'")])
    vertices = [("U1", U, "k"), ("U2", U, "k"), ("P", P, "k'")]
    edges = [("b1", "P", "U1"), ("b2", "P", "U2")]
    return ShaModel(ReductionGraph(vertices, edges, lat), {"k": gk, "k'": gk2}, {("k", "k'"): inc})
