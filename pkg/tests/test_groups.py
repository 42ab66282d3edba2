import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shagraph.errors import BadIdentity, BadInverse, NotAssociative, NotHomomorphism
from shagraph.groups import (FiniteGroup, GroupHom, burnside_count, conjugacy_classes, cyclic,
                             direct_product, homomorphisms, identity_hom, named_group, trivial_hom,
                             uniform_conjugacy_classes, validate_group, validate_hom)

NAMES = ["z1", "z2", "z3", "z4", "v4", "z5", "z6", "s3", "z8", "q8", "d4", "z2xz2xz2"]

# a Latin square with identity and inverses that is not associative
LOOP5 = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]


@pytest.mark.parametrize("name", NAMES)
def test_named_groups_are_groups(name):
    g = named_group(name)
    assert validate_group(g)


def test_orders():
    assert [named_group(n).order for n in ["s3", "q8", "d4", "v4", "s4"]] == [6, 8, 8, 4, 24]


def test_not_associative_witness():
    with pytest.raises(NotAssociative) as exc:
        validate_group(FiniteGroup(LOOP5))
    a, b, c = exc.value.witness
    t = np.asarray(LOOP5)
    assert t[t[a, b], c] != t[a, t[b, c]]


def test_bad_identity_and_inverse():
    with pytest.raises(BadIdentity):
        validate_group(FiniteGroup([[0, 0], [0, 0]]))
    with pytest.raises(BadInverse):
        validate_group(FiniteGroup([[0, 1, 2], [1, 1, 1], [2, 1, 0]]))


def test_hom_validation(z2):
    z4 = cyclic(4)
    validate_hom(GroupHom(z4, z2, (0, 1, 0, 1)))
    with pytest.raises(NotHomomorphism) as exc:
        validate_hom(GroupHom(z4, z2, (0, 1, 1, 0)))
    assert len(exc.value.witness) == 2


def test_hom_counts(s3, z2):
    assert len(homomorphisms(s3, s3)) == 10
    assert len(homomorphisms(cyclic(4), cyclic(4))) == 4
    assert len(homomorphisms(s3, z2)) == 2
    assert len(homomorphisms(z2, s3)) == 4


def test_hom_compose(s3):
    idh = identity_hom(s3)
    t = trivial_hom(s3, s3)
    assert idh.compose(t).image == t.image
    assert idh.is_isomorphism and not t.is_injective


def test_conjugacy_classes(s3):
    assert sorted(len(c) for c in conjugacy_classes(s3)) == [1, 2, 3]
    assert len(conjugacy_classes(named_group("q8"))) == 5


def test_s3_pairs_eleven(s3):
    uc = uniform_conjugacy_classes(s3, 2)
    assert len(uc) == 11 == burnside_count(s3, 2)


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_burnside(name, m):
    g = named_group(name)
    assert len(uniform_conjugacy_classes(g, m)) == burnside_count(g, m)


@pytest.mark.parametrize("name", NAMES)
def test_m1_is_conjugacy(name):
    g = named_group(name)
    uc = uniform_conjugacy_classes(g, 1)
    assert sorted(sorted(t[0] for t in part) for part in uc.partition()) == sorted(conjugacy_classes(g))


@pytest.mark.parametrize("name", ["z4", "v4", "z6", "z2xz2xz2"])
def test_abelian_singletons(name):
    g = named_group(name)
    assert g.is_abelian
    assert len(uniform_conjugacy_classes(g, 2)) == g.order**2


def test_m0(s3):
    assert len(uniform_conjugacy_classes(s3, 0)) == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["s3", "q8", "d4"]), st.lists(st.integers(0, 7), min_size=3, max_size=3),
       st.integers(0, 7))
def test_canonical_constant_on_orbits(name, tup, h):
    g = named_group(name)
    tup = tuple(x % g.order for x in tup)
    h %= g.order
    uc = uniform_conjugacy_classes(g, 3)
    conj = tuple(g.conj(h, x) for x in tup)
    assert uc.canonical(tup) == uc.canonical(conj)
    assert uc.canonical(tup) <= tup


def test_direct_product():
    g = direct_product(cyclic(2), cyclic(4))
    validate_group(g)
    assert g.order == 8 and g.is_abelian
