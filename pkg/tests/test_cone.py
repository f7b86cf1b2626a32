import random

import pytest
from hypothesis import given, strategies as st

from desingkit.acceptance import parallelepiped_size, random_pointed_cone
from desingkit.cone import (
    Cone,
    contains,
    dual_cone,
    faces,
    facets,
    hilbert_basis,
    intersect,
    is_face,
    is_simplicial,
    is_smooth,
    multiplicity,
    parallelepiped_points,
    triangulate,
)
from desingkit.exactmath import DomainError, det
from desingkit.oracles import SmallCone, brute_hilbert

ORTH2 = Cone(2, ((1, 0), (0, 1)))
ORTH3 = Cone(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
A1 = Cone(2, ((1, 0), (1, 2)))
A2 = Cone(2, ((1, 0), (1, 3)))


def test_rays_are_primitivized():
    assert Cone(2, ((2, 0), (3, 6))).rays == ((1, 0), (1, 2))


def test_redundant_generator_is_dropped():
    assert Cone(2, ((1, 0), (0, 1), (1, 1))) == ORTH2


def test_line_is_rejected():
    with pytest.raises(DomainError):
        Cone(2, ((1, 0), (-1, 0)))


def test_zero_ray_is_rejected():
    with pytest.raises(DomainError):
        Cone(2, ((0, 0),))


def test_json_roundtrip():
    assert Cone.from_json(A1.to_json()) == A1
    assert A1.to_json() == {"rank": 2, "rays": [["1", "0"], ["1", "2"]]}


def test_dual_examples():
    assert dual_cone(ORTH2) == ORTH2
    assert dual_cone(A1).rays == ((0, 1), (2, -1))
    half = dual_cone(Cone(2, ((1, 0),)))
    assert not half.pointed
    assert set(half.rays) == {(1, 0), (0, 1), (0, -1)}


def test_faces_examples():
    assert [f.rays for f in faces(ORTH2)] == [(), ((0, 1),), ((1, 0),)]
    assert [f.rays for f in faces(Cone(2, ((1, 0),)))] == [()]
    by_dim = {}
    for f in faces(ORTH3):
        by_dim[f.dim] = by_dim.get(f.dim, 0) + 1
    assert by_dim == {0: 1, 1: 3, 2: 3}
    assert len(facets(ORTH3)) == 3


def test_contains_examples():
    assert contains(ORTH2, (2, 3))
    assert not contains(ORTH2, (-1, 0))
    assert contains(A1, (1, 1))
    assert not contains(A1, (0, 1))


def test_hilbert_examples():
    assert hilbert_basis(ORTH2) == [(0, 1), (1, 0)]
    assert hilbert_basis(A1) == [(1, 0), (1, 1), (1, 2)]
    assert hilbert_basis(A2) == [(1, 0), (1, 1), (1, 2), (1, 3)]


def test_hilbert_rejects_non_pointed():
    with pytest.raises(DomainError):
        hilbert_basis(dual_cone(Cone(2, ((1, 0),))))


def test_is_simplicial():
    assert is_simplicial(ORTH3)
    # (1,1,1) is a combination of the unit vectors, so this is the orthant
    assert is_simplicial(Cone(3, ((1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 0, 1))))
    square = Cone(3, ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)))
    assert len(square.rays) == 4
    assert not is_simplicial(square)


def test_smooth_and_multiplicity():
    assert is_smooth(ORTH2) and multiplicity(ORTH2) == 1
    assert not is_smooth(A1) and multiplicity(A1) == 2
    assert not is_smooth(Cone(2, ((1, 1), (1, -1))))
    assert multiplicity(A2) == 3


def test_multiplicity_of_lower_dim_cone():
    # a ray that is primitive is smooth; the plane cone {(1,0,0),(1,2,0)} has index 2
    assert multiplicity(Cone(3, ((1, 1, 1),))) == 1
    assert multiplicity(Cone(3, ((1, 0, 0), (1, 2, 0)))) == 2


def test_multiplicity_rejects_non_simplicial():
    with pytest.raises(DomainError):
        multiplicity(Cone(3, ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1))))


def test_parallelepiped_count_is_multiplicity():
    c = Cone(3, ((1, 0, 0), (0, 1, 0), (1, 2, 5)))
    assert len(parallelepiped_points(c)) == multiplicity(c) == 5


def test_intersect_and_is_face():
    ray = Cone(2, ((1, 1),))
    assert intersect(Cone(2, ((1, 0), (1, 1))), Cone(2, ((1, 1), (0, 1)))) == ray
    assert is_face(ray, Cone(2, ((1, 0), (1, 1))))
    assert not is_face(ray, ORTH2)


cones = st.builds(
    lambda seed, rank, full: random_pointed_cone(random.Random(seed), rank, full=full),
    st.integers(0, 10**9), st.integers(1, 3), st.booleans(),
)


@given(cones)
def test_dual_involution(c):
    if c.dim == c.rank:
        d = dual_cone(c)
        assert d.pointed and d.dim == c.rank
        assert dual_cone(d) == c


@given(cones)
def test_dual_pairs_nonnegatively(c):
    d = dual_cone(c)
    assert all(sum(a * b for a, b in zip(u, r)) >= 0 for u in d.rays for r in c.rays)


@given(cones)
def test_matches_cross_product_description(c):
    small = SmallCone(c.rays)
    assert small.dim == c.dim
    rng = random.Random(len(c.rays))
    for _ in range(30):
        v = tuple(rng.randint(-6, 6) for _ in range(c.rank))
        assert contains(c, v) == small.contains(v)


@given(cones)
def test_hilbert_matches_box_oracle(c):
    if parallelepiped_size(c) <= 2000:
        assert hilbert_basis(c) == brute_hilbert(c.rank, c.rays)


@given(cones)
def test_hilbert_elements_irreducible(c):
    H = hilbert_basis(c)
    assert all(contains(c, v) for v in H)
    assert set(c.rays) <= set(H)
    for v in H:
        for u in H:
            if u != v:
                assert not contains(c, tuple(a - b for a, b in zip(v, u)))


@given(cones)
def test_smooth_iff_multiplicity_one(c):
    if is_simplicial(c):
        assert is_smooth(c) == (multiplicity(c) == 1)
        if c.dim == c.rank:
            assert multiplicity(c) == abs(det([list(r) for r in c.rays]))
    else:
        assert not is_smooth(c)


@given(cones)
def test_triangulation_uses_cone_rays(c):
    for simplex in triangulate(c):
        assert set(simplex) <= set(c.rays)
        assert is_simplicial(Cone(c.rank, simplex))
