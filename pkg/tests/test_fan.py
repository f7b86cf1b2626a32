import random

import pytest
from hypothesis import given, settings, strategies as st

from desingkit.acceptance import random_fan, random_pointed_cone
from desingkit.cone import Cone, is_smooth, multiplicity
from desingkit.exactmath import DomainError, primitive
from desingkit.fan import (
    Fan,
    barycentric_subdivision,
    is_refinement,
    resolve,
    restrict_subdivision,
    stellar_subdivision,
    validate_fan,
)


def C(*rays):
    return Cone(len(rays[0]), tuple(rays))


def F(*cones):
    return Fan(cones[0].rank, tuple(cones))


ORTH2 = C((1, 0), (0, 1))
ORTH3 = C((1, 0, 0), (0, 1, 0), (0, 0, 1))


def cone_sets(f):
    return {c.rays for c in f.cones}


def test_faces_of_listed_cones_are_dropped():
    f = F(ORTH2, C((1, 0),))
    assert f.cones == (ORTH2,)


def test_validate_examples():
    assert validate_fan(Fan.of_cone(ORTH2)) == (True, None)
    assert validate_fan(F(C((1, 0), (1, 1)), C((1, 1), (0, 1))))[0]
    ok, why = validate_fan(F(ORTH2, C((1, 1), (-1, 1))))
    assert not ok and why


def test_validate_catches_partial_overlap_in_rank3():
    a = C((1, 0, 0), (0, 1, 0), (0, 0, 1))
    b = C((1, 1, 0), (0, 0, 1), (-1, 0, 0))
    assert not validate_fan(F(a, b))[0]


def test_refinement_examples():
    assert is_refinement(Fan.of_cone(ORTH2), Fan.of_cone(ORTH2))
    assert is_refinement(barycentric_subdivision(Fan.of_cone(ORTH2)), Fan.of_cone(ORTH2))
    assert not is_refinement(F(C((1, 0), (1, 1))), Fan.of_cone(ORTH2))


def test_barycentric_examples():
    ray = Fan.of_cone(C((1, 0)))
    assert barycentric_subdivision(ray) == ray
    assert cone_sets(barycentric_subdivision(Fan.of_cone(ORTH2))) == {((0, 1), (1, 1)), ((1, 0), (1, 1))}
    b = barycentric_subdivision(Fan.of_cone(C((1, 0), (1, 2))))
    assert cone_sets(b) == {((1, 0), (1, 1)), ((1, 1), (1, 2))}
    assert all(is_smooth(c) for c in b.cones)


def test_barycentric_orthant3_has_six_chambers():
    b = barycentric_subdivision(Fan.of_cone(ORTH3))
    assert len(b.cones) == 6
    assert (1, 1, 1) in b.rays


def test_stellar_examples():
    s = stellar_subdivision(Fan.of_cone(ORTH2), (1, 1))
    assert cone_sets(s) == {((1, 0), (1, 1)), ((0, 1), (1, 1))}
    assert all(is_smooth(c) for c in s.cones)
    assert stellar_subdivision(Fan.of_cone(ORTH2), (1, 0)) == Fan.of_cone(ORTH2)
    s = stellar_subdivision(Fan.of_cone(C((1, 0), (1, 3))), (1, 1))
    assert cone_sets(s) == {((1, 0), (1, 1)), ((1, 1), (1, 3))}
    assert sorted(multiplicity(c) for c in s.cones) == [1, 2]


def test_resolve_examples():
    orth = Fan.of_cone(ORTH2)
    assert resolve(orth) == barycentric_subdivision(orth)
    r = resolve(Fan.of_cone(C((1, 0), (1, 2))))
    assert len(r.cones) == 2 and (1, 1) in r.rays
    assert all(is_smooth(c) for c in r.cones)
    r = resolve(Fan.of_cone(C((0, 1), (2, -1))))
    assert (1, 0) in r.rays and len(r.cones) == 2
    assert all(is_smooth(c) for c in r.cones)


def test_resolve_trace():
    trace = []
    resolve(Fan.of_cone(C((1, 0), (1, 5))), trace)
    assert trace[0]["kind"] == "barycentric"
    assert trace[-1]["max_multiplicity"] == "1"
    assert [t["step"] for t in trace] == list(range(1, len(trace) + 1))


def test_restrict_examples():
    big = barycentric_subdivision(Fan.of_cone(ORTH2))
    ray = restrict_subdivision(big, [[1], [0]], C((1,)))
    assert ray == Fan.of_cone(C((1,)))
    assert restrict_subdivision(big, [[1, 0], [0, 1]], ORTH2) == big
    big3 = barycentric_subdivision(Fan.of_cone(ORTH3))
    face = restrict_subdivision(big3, [[1, 0], [0, 1], [0, 0]], ORTH2)
    assert face == barycentric_subdivision(Fan.of_cone(ORTH2))


def test_restrict_rejects_non_face():
    big = Fan.of_cone(ORTH2)
    with pytest.raises(DomainError):
        restrict_subdivision(big, [[1], [1]], C((1,)))


def test_json_roundtrip():
    f = barycentric_subdivision(Fan.of_cone(ORTH3))
    assert Fan.from_json(f.to_json()) == f


def _random_collection(rng, rank):
    # unions of random cones are frequently not fans; good for exercising both routes
    return Fan(rank, tuple(random_pointed_cone(rng, rank, max_rays=4, bound=2) for _ in range(rng.randint(2, 4))))


@given(st.integers(0, 10**9), st.integers(2, 3))
def test_certified_validation_agrees_with_exact(seed, rank):
    rng = random.Random(seed)
    f = _random_collection(rng, rank) if seed % 2 else random_fan(rng, rank)
    assert validate_fan(f, certify=True)[0] == validate_fan(f, certify=False)[0]


@given(st.integers(0, 10**9), st.integers(2, 3))
def test_subdivisions_refine_and_stay_valid(seed, rank):
    rng = random.Random(seed)
    f = random_fan(rng, rank)
    b = barycentric_subdivision(f)
    assert validate_fan(b)[0] and is_refinement(b, f)
    coeffs = [rng.randint(0, 2) for _ in f.cones[0].rays]
    v = tuple(sum(a * x for a, x in zip(coeffs, col)) for col in zip(*f.cones[0].rays))
    if any(v):
        s = stellar_subdivision(f, primitive(v))
        assert validate_fan(s)[0] and is_refinement(s, f)


@settings(max_examples=25)
@given(st.integers(0, 10**9), st.integers(2, 3))
def test_resolve_properties(seed, rank):
    rng = random.Random(seed)
    c = random_pointed_cone(rng, rank, max_rays=4, bound=3, full=True)
    f = Fan.of_cone(c)
    r = resolve(f)
    assert all(is_smooth(x) for x in r.cones)
    assert is_refinement(r, f)
    assert validate_fan(r)[0]
