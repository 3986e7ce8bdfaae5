from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nalattice.cones import (WPoint, ci_statement, cone_C_membership, facet_count, facet_triples,
                             fan_P_membership, project_to_W, s2_preimage, supermodular_membership)
from nalattice.entropy import entropy_vector
from nalattice.field import FieldDescriptor
from nalattice.lattice import random_lattice
from nalattice.setfunc import SetFunctionVector, subsets

from conftest import example_3d


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_facet_count(d):
    assert len(facet_triples(d)) == facet_count(d)
    assert len(set(facet_triples(d))) == facet_count(d)


def test_example_3d_cone_and_ci(anyfield):
    H = entropy_vector(example_3d(anyfield))
    rep = supermodular_membership(H)
    assert rep.inside and rep.tight == [] and rep.checked == 6
    for i, j, k in [(1, 2, 3), (1, 3, 2), (2, 3, 1)]:
        assert ci_statement(H, i, j, [k]) is False
    pt = project_to_W(H)
    assert pt.as_tuple() == (-2, -2, -1, -3)
    assert cone_C_membership(pt)
    assert fan_P_membership(pt).member


def test_violation_reported():
    v = SetFunctionVector(2, {0: 0, 1: 1, 2: 1, 3: 1})
    rep = supermodular_membership(v)
    assert not rep.inside and rep.violated == [(0, 1, 2)]
    assert rep.to_json()["violated"] == [{"I": [], "i": 1, "j": 2}]


def test_ci_argument_checks():
    H = entropy_vector(example_3d(FieldDescriptor.padic(2)))
    with pytest.raises(ValueError):
        ci_statement(H, 1, 1)
    with pytest.raises(ValueError):
        ci_statement(H, 1, 2, [1])


def test_witness_in_C_not_in_P():
    pt = WPoint(Fraction(-1), Fraction(-3, 2), Fraction(-1), Fraction(-9, 5))
    assert cone_C_membership(pt)
    assert not fan_P_membership(pt).member


def _s3_vector(w, x, y, z):
    # a point of W as a set function: x1 = x12 = x123 = 0
    vals = {0: 0, 1: 0, 2: w, 4: x, 3: 0, 5: y, 6: z, 7: 0}
    return SetFunctionVector(3, vals)


coords = st.fractions(-5, 5, max_denominator=6)


@given(w=coords, x=coords, y=coords, z=coords)
@settings(max_examples=200, deadline=None)
def test_C_is_S3_on_W(w, x, y, z):
    pt = WPoint(w, x, y, z)
    v = _s3_vector(w, x, y, z)
    assert project_to_W(v) == pt
    assert cone_C_membership(pt) == supermodular_membership(v).inside
    if fan_P_membership(pt).member:
        assert cone_C_membership(pt)


@given(seed=st.integers(0, 10**6), data=st.data())
@settings(max_examples=25, deadline=None)
def test_projection_kills_modular_part(seed, data):
    H = entropy_vector(random_lattice(3, FieldDescriptor.padic(3), seed))
    c = data.draw(st.lists(st.integers(-4, 4), min_size=3, max_size=3))
    shifted = SetFunctionVector(3, {m: h + sum(c[i] for i in range(3) if m >> i & 1) for m, h in H.items()})
    assert project_to_W(shifted) == project_to_W(H)
    assert supermodular_membership(H).inside


@given(x1=coords, x2=coords, extra=st.fractions(0, 5, max_denominator=6))
@settings(max_examples=50, deadline=None)
def test_s2_preimage_roundtrip(x1, x2, extra):
    x12 = x1 + x2 + extra
    H = entropy_vector(s2_preimage(x1, x2, x12))
    assert (H[(1,)], H[(2,)], H[(1, 2)]) == (x1, x2, x12)
    assert supermodular_membership(H).inside


def test_s2_preimage_rejects_outside():
    with pytest.raises(ValueError):
        s2_preimage(1, 1, 1)


def test_subsets_cover():
    assert sorted(subsets(4)) == list(range(16))
