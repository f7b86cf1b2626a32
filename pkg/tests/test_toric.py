import pytest

from desingkit.cone import Cone, is_smooth, multiplicity
from desingkit.exactmath import DomainError
from desingkit.fan import Fan, barycentric_subdivision, resolve
from desingkit.toric import (
    Inclusion,
    StrataSystem,
    barycentric_family,
    check_compatible_family,
    orthant_chain,
    toric_from_monomials,
)


def test_identity_cover():
    t = toric_from_monomials(2, [(1, 0), (0, 1)])
    assert set(t.m_plus) == {(1, 0), (0, 1)}
    assert t.n_plus == Cone(2, ((1, 0), (0, 1)))
    assert t.smooth


def test_double_cover_of_line():
    t = toric_from_monomials(1, [(2,)])
    assert t.m_plus == ((1,),)
    assert t.n_plus.rays == ((1,),)
    assert t.smooth


def test_a1_point():
    t = toric_from_monomials(2, [(1, 0), (1, 2)])
    assert t.m_plus == ((1, 0), (1, 1), (1, 2))
    assert t.n_plus.rays == ((0, 1), (2, -1))
    assert multiplicity(t.n_plus) == 2 and not t.smooth
    r = resolve(Fan.of_cone(t.n_plus))
    assert (1, 0) in r.rays and len(r.cones) == 2
    assert all(is_smooth(c) for c in r.cones)


def test_extra_affine_rank_is_carried():
    t = toric_from_monomials(1, [(1,)], extra_affine_rank=3)
    assert t.extra_affine_rank == 3
    assert t.to_json()["extra_affine_rank"] == 3


def test_infinite_index_rejected():
    with pytest.raises(DomainError, match="infinite index"):
        toric_from_monomials(2, [(1, 1), (2, 2)])


def test_non_pointed_monomial_cone_rejected():
    with pytest.raises(DomainError):
        toric_from_monomials(1, [(1,), (-1,)])


def test_single_stratum():
    s = StrataSystem({"T": Cone(2, ((1, 0), (0, 1)))}, {"T": 2})
    assert check_compatible_family(s, barycentric_family(s)) == (True, None)


def test_two_level_chain():
    s = orthant_chain(2)
    assert check_compatible_family(s, barycentric_family(s))[0]
    fam = barycentric_family(s)
    fam["T1"] = Fan.of_cone(s.supports["T1"])
    assert check_compatible_family(s, fam)[0]
    fam = barycentric_family(s)
    fam["T2"] = Fan.of_cone(s.supports["T2"])
    assert check_compatible_family(s, fam)[0]


def test_trivial_small_under_barycentric_big_is_rejected():
    s = orthant_chain(3)
    fam = barycentric_family(s)
    fam["T2"] = Fan.of_cone(s.supports["T2"])
    ok, why = check_compatible_family(s, fam)
    assert not ok
    assert "T2->T3" in why


def test_rank_must_equal_codimension():
    s = StrataSystem({"T": Cone(2, ((1, 0), (0, 1)))}, {"T": 3})
    ok, why = s.validate()
    assert not ok and "codimension" in why


def test_inclusion_must_land_on_a_face():
    sup = {"a": Cone(1, ((1,),)), "b": Cone(2, ((1, 0), (0, 1)))}
    s = StrataSystem(sup, {"a": 1, "b": 2}, (Inclusion("a", "b", ((1,), (1,))),))
    ok, why = s.validate()
    assert not ok and "face" in why


def test_missing_member_is_reported():
    s = orthant_chain(2)
    fam = barycentric_family(s)
    del fam["T1"]
    assert not check_compatible_family(s, fam)[0]


def test_barycentric_of_face_is_restriction():
    s = orthant_chain(3)
    fam = barycentric_family(s)
    assert fam["T3"] == barycentric_subdivision(Fan.of_cone(s.supports["T3"]))
