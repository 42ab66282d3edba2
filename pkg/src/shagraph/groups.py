"""Finite groups given by Cayley tables, homomorphisms, and conjugation orbits."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import orbits
from .errors import BadIdentity, BadInverse, InvariantViolation, NotAssociative, NotHomomorphism

EXHAUSTIVE_ASSOCIATIVITY_MAX_ORDER = 64


class FiniteGroup:
    """A group on element ids ``0..order-1`` with ``table[a, b] = a*b``.

    Construction does not validate; call :func:`validate_group` (the JSON
    loader always does).  ``identity`` is ``None`` when no two-sided unit
    exists, and ``inverses[g]`` is ``-1`` when ``g`` has no left inverse.
    """

    def __init__(self, table, names=None, name=None):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvariantViolation("Cayley table must be a non-empty square array", witness=table.shape)
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            bad = tuple(int(i) for i in np.argwhere((table < 0) | (table >= n))[0])
            raise InvariantViolation(f"table entry at {bad} is not an element id", witness=bad)
        table.setflags(write=False)
        self.table = table
        self.order = n
        self.names = list(names) if names is not None else None
        if self.names is not None and len(self.names) != n:
            raise InvariantViolation("names must have one entry per element", witness=len(self.names))
        self.name = name

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    @property
    def elements(self):
        return range(self.order)

    @cached_property
    def identity(self):
        n = self.order
        ids = np.arange(n)
        for e in range(n):
            if np.array_equal(self.table[e], ids) and np.array_equal(self.table[:, e], ids):
                return e
        return None

    @cached_property
    def inverses(self):
        e = self.identity
        inv = np.full(self.order, -1, dtype=np.int64)
        if e is None:
            return inv
        for g in range(self.order):
            hit = np.flatnonzero(self.table[:, g] == e)
            if len(hit):
                inv[g] = hit[0]
        inv.setflags(write=False)
        return inv

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inverses[a])

    def conj(self, h, x):
        """``h x h^-1``."""
        return int(self.table[self.table[h, x], self.inverses[h]])

    def label(self, g):
        return self.names[g] if self.names else str(g)

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    @cached_property
    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def conjugation(self):
        """``conjugation[h, x] = h x h^-1`` as an order x order array."""
        inv = self.inverses
        return self.table[self.table, inv[:, None]]

    def centralizer_order(self, x):
        return int(np.sum(self.conjugation[:, x] == x))

    @cached_property
    def generators(self):
        """A small generating set, chosen greedily by descending element order."""
        e = self.identity
        by_order = sorted(self.elements, key=lambda g: (-self.element_order(g), g))
        gens, span = [], {e}
        for g in by_order:
            if len(span) == self.order:
                break
            if g in span:
                continue
            gens.append(g)
            span = self.closure(gens)
        return tuple(gens)

    def closure(self, gens):
        span = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return span


def validate_group(g: FiniteGroup, *, exhaustive_max_order=EXHAUSTIVE_ASSOCIATIVITY_MAX_ORDER, seed=0):
    """Raise if ``g`` is not a group; return True otherwise.

    Associativity is checked on all triples up to ``exhaustive_max_order``
    and on ``10 * order**3`` random triples above it.
    """
    t, n = g.table, g.order
    e = g.identity
    if e is None:
        ids = np.arange(n)
        witness = next((x for x in range(n) if np.array_equal(t[x], ids) or np.array_equal(t[:, x], ids)), 0)
        raise BadIdentity("no two-sided identity element", witness=witness)
    inv = g.inverses
    for x in range(n):
        if inv[x] < 0 or t[x, inv[x]] != e:
            raise BadInverse(f"element {x} has no two-sided inverse", witness=x)
    if n <= exhaustive_max_order:
        lhs = t[t, :]  # (a*b)*c
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]  # a*(b*c)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise NotAssociative("associativity fails", witness=tuple(int(v) for v in bad[0]))
    else:
        rng = np.random.default_rng(seed)
        remaining = 10 * n**3
        while remaining > 0:
            k = min(remaining, 1 << 20)
            a, b, c = rng.integers(0, n, size=(3, k))
            bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
            if len(bad):
                i = bad[0]
                raise NotAssociative("associativity fails", witness=(int(a[i]), int(b[i]), int(c[i])))
            remaining -= k
    return True


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(x) for x in self.image))

    def __call__(self, g):
        return self.image[g]

    def compose(self, after: "GroupHom") -> "GroupHom":
        """``after o self``."""
        return GroupHom(self.source, after.target, [after.image[x] for x in self.image])

    @property
    def is_injective(self):
        return len(set(self.image)) == self.source.order

    @property
    def is_surjective(self):
        return len(set(self.image)) == self.target.order

    @property
    def is_isomorphism(self):
        return self.is_injective and self.is_surjective


def validate_hom(h: GroupHom):
    src, tgt = h.source, h.target
    if len(h.image) != src.order:
        raise NotHomomorphism("image length differs from source order", witness=len(h.image))
    img = np.asarray(h.image, dtype=np.int64)
    if img.min() < 0 or img.max() >= tgt.order:
        raise NotHomomorphism("image contains a non-element", witness=int(np.argmax((img < 0) | (img >= tgt.order))))
    lhs = img[src.table]
    rhs = tgt.table[img[:, None], img[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise NotHomomorphism(f"image({a}*{b}) != image({a})*image({b})", witness=(a, b))
    return True


def identity_hom(g):
    return GroupHom(g, g, range(g.order))


def trivial_hom(source, target):
    return GroupHom(source, target, [target.identity] * source.order)


def homomorphisms(source, target):
    """Every homomorphism ``source -> target``, by extending generator images."""
    gens = source.generators
    cands = [[y for y in target.elements if target.element_order(y) and source.element_order(g) % target.element_order(y) == 0]
             for g in gens]
    out = []
    for imgs in itertools.product(*cands):
        h = _extend(source, target, gens, imgs)
        if h is not None:
            out.append(h)
    return out


def _extend(source, target, gens, imgs):
    image = {source.identity: target.identity}
    frontier = [source.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, y in zip(gens, imgs):
                xg = int(source.table[x, g])
                val = int(target.table[image[x], y])
                if xg in image:
                    if image[xg] != val:
                        return None
                else:
                    image[xg] = val
                    nxt.append(xg)
        frontier = nxt
    h = GroupHom(source, target, [image[x] for x in source.elements])
    try:
        validate_hom(h)
    except NotHomomorphism:
        return None
    return h


# --- constructions -------------------------------------------------------


def cyclic(n):
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, name=f"Z{n}")


def trivial():
    return FiniteGroup([[0]], name="1")


def direct_product(g, h, name=None):
    n, m = g.order, h.order
    a = np.arange(n * m)
    gi, hi = a // m, a % m
    table = g.table[gi[:, None], gi[None, :]] * m + h.table[hi[:, None], hi[None, :]]
    return FiniteGroup(table, name=name or f"{g.name}x{h.name}")


def from_permutations(perms, name=None):
    """Group table of a list of permutations closed under composition.

    ``a*b`` is "apply b, then a".
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[x] for x in q)]
    return FiniteGroup(table, names=["".join(map(str, p)) for p in perms], name=name)


def symmetric(n):
    return from_permutations(sorted(itertools.permutations(range(n))), name=f"S{n}")


def dihedral(n):
    """Symmetries of the n-gon (order 2n)."""
    rots = [tuple((i + k) % n for i in range(n)) for k in range(n)]
    refl = [tuple((k - i) % n for i in range(n)) for k in range(n)]
    return from_permutations(rots + refl, name=f"D{n}")


def quaternion():
    # elements (sign, unit) with units 1, i, j, k
    units = ["1", "i", "j", "k"]
    prod = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    index = {x: i for i, x in enumerate(elems)}
    table = np.empty((8, 8), dtype=np.int64)
    for a, (s, u) in enumerate(elems):
        for b, (t, v) in enumerate(elems):
            r, w = prod[(u, v)]
            table[a, b] = index[(s * t * r, w)]
    names = [("" if s > 0 else "-") + u for s, u in elems]
    return FiniteGroup(table, names=names, name="Q8")


def named_group(name: str) -> FiniteGroup:
    """Look up a small group by name: ``z<n>``, ``v4``/``z2xz2``, ``s3``, ``d4``, ``q8`` ..."""
    key = name.strip().lower()
    if key in ("1", "trivial", "z1"):
        return trivial()
    if key in ("v4", "z2xz2", "klein"):
        return direct_product(cyclic(2), cyclic(2), name="Z2xZ2")
    if key in ("z2xz2xz2", "z2^3"):
        return direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2), name="Z2xZ2xZ2")
    if key in ("z2xz4", "z4xz2"):
        return direct_product(cyclic(2), cyclic(4), name="Z2xZ4")
    if key == "q8":
        return quaternion()
    if key.startswith("z") and key[1:].isdigit() and int(key[1:]) > 0:
        return cyclic(int(key[1:]))
    if key.startswith("s") and key[1:].isdigit() and 1 <= int(key[1:]) <= 5:
        return symmetric(int(key[1:]))
    if key.startswith("d") and key[1:].isdigit() and int(key[1:]) >= 3:
        return dihedral(int(key[1:]))
    raise KeyError(f"unknown group {name!r}")


# --- conjugation ----------------------------------------------------------


def conjugacy_classes(g: FiniteGroup):
    """Conjugacy classes as sorted lists, ordered by their least element."""
    seen, out = set(), []
    for x in g.elements:
        if x in seen:
            continue
        cls = sorted({int(c) for c in g.conjugation[:, x]})
        seen.update(cls)
        out.append(cls)
    return out


@dataclass(frozen=True, eq=False)
class UniformClasses:
    """Orbits of simultaneous conjugation on ``group**m``.

    ``labels[encode(t)]`` is the class index of tuple ``t``; ``reps[i]`` is the
    lexicographically least tuple of class ``i``.
    """

    group: FiniteGroup
    m: int
    labels: np.ndarray
    reps: tuple

    def __len__(self):
        return len(self.reps)

    def class_of(self, tup):
        return int(self.labels[orbits.encode(tup, [self.group.order] * self.m)])

    def canonical(self, tup):
        return self.reps[self.class_of(tup)]

    def partition(self):
        radices = [self.group.order] * self.m
        out = [[] for _ in self.reps]
        for s, lab in enumerate(self.labels):
            out[lab].append(orbits.decode(s, radices))
        return out


def uniform_conjugacy_classes(g: FiniteGroup, m: int, max_states=orbits.DEFAULT_MAX_STATES):
    if m < 0:
        raise ValueError("m must be nonnegative")
    radices = [g.order] * m
    conj = g.conjugation
    moves = [{i: conj[h] for i in range(m)} for h in g.generators]
    labels, reps = orbits.label_orbits(radices, moves, max_states=max_states)
    return UniformClasses(g, m, labels, tuple(orbits.decode(r, radices) for r in reps))


def burnside_count(g: FiniteGroup, m: int) -> int:
    """Number of simultaneous-conjugation orbits on ``g**m`` by Burnside's lemma."""
    total = sum(g.centralizer_order(x) ** m for x in g.elements)
    q, r = divmod(total, g.order)
    assert r == 0
    return q
