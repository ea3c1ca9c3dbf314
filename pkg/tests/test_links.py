from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import rank_one_from_seed
from upsilon_kit import cfk, links, upsilon as U
from upsilon_kit.errors import CatalogError, DomainError, IntegrityError, NotALinkError, ValidationError
from upsilon_kit.links import LinkComplex, LinkGenerator, LinkTerm

ts = st.integers(0, 12).map(lambda k: F(k, 6))


@pytest.mark.parametrize("ell,expected", [
    (1, [F(0)]), (2, [F(-1, 2), F(1, 2)]), (3, [F(-1), F(0), F(0), F(1)]),
    (4, [F(-3, 2)] + [F(-1, 2)] * 3 + [F(1, 2)] * 3 + [F(3, 2)]),
])
def test_binomial_gradings(ell, expected):
    assert links.binomial_gradings(ell) == expected


@pytest.mark.parametrize("ell", [1, 2, 3, 4])
@pytest.mark.parametrize("t", [F(0), F(1, 3), F(1), F(2)])
def test_unlink_is_constant(ell, t):
    c = links.unlink(ell)
    assert links.is_link_calibrated(c)
    assert links.upsilon_set(c, t) == links.binomial_gradings(ell)


def test_builtin_link_names():
    assert links.builtin_link("unlink:3") == links.builtin_link("unlink(3)") == links.unlink(3)
    with pytest.raises(CatalogError):
        links.builtin_link("hopf")


@given(st.integers(0, 10**6), ts)
def test_one_component_matches_knot_upsilon(seed, t):
    c = rank_one_from_seed(seed)
    lc = LinkComplex.from_knot(c)
    assert links.validate_link(lc) == []
    assert links.upsilon_set(lc, t) == [U.upsilon_at(c, t)]


@given(st.integers(0, 10**6), ts)
def test_symmetry_under_reflection(seed, t):
    lc = LinkComplex.from_knot(rank_one_from_seed(seed))
    assert links.upsilon_set(lc, t) == links.upsilon_set(lc, 2 - t)


@given(st.integers(0, 10**6), st.integers(-3, 3), st.integers(-3, 3))
def test_calibration_undoes_shifts(seed, dm, da):
    lc = LinkComplex.from_knot(rank_one_from_seed(seed))
    assert links.link_calibrate(lc.shifted(2 * dm, (da,))) == lc


@given(st.integers(0, 10**6))
def test_json_roundtrip(seed):
    lc = LinkComplex.from_knot(rank_one_from_seed(seed))
    assert LinkComplex.from_json(lc.to_json()) == lc
    u = links.unlink(3)
    assert LinkComplex.from_json(u.to_json()) == u


def _two(gx, gy, w, z):
    return LinkComplex(2, [LinkGenerator("x", F(0), gx), LinkGenerator("y", F(-1), gy)],
                       [LinkTerm("x", "y", w, z)])


@pytest.mark.parametrize("c,kind", [
    (_two((F(0), F(0)), (F(0), F(0)), (1, 0), (1, 0)), "grading"),
    (_two((F(0), F(0)), (F(0), F(0)), (0, 0), (1, 0)), "filtration"),
    (LinkComplex(1, [LinkGenerator("a", F(0), (F(0),)), LinkGenerator("b", F(-1), (F(0),)),
                     LinkGenerator("c", F(-2), (F(0),))],
                 [LinkTerm("a", "b", (0,), (0,)), LinkTerm("b", "c", (0,), (0,))]), "d-squared"),
])
def test_validation_kinds(c, kind):
    assert [v.kind for v in links.validate_link(c)] == [kind]
    with pytest.raises(ValidationError):
        links.require_valid_link(c)


def test_valid_two_component_term():
    assert links.validate_link(_two((F(0), F(0)), (F(0), F(0)), (0, 0), (0, 0))) == []


def test_wrong_rank_is_refused():
    c = LinkComplex(2, [LinkGenerator("x", F(0), (F(0), F(0)))], [])
    with pytest.raises(NotALinkError):
        links.link_calibrate(c)
    with pytest.raises(IntegrityError):
        links.upsilon_set(c, 1)


@pytest.mark.parametrize("data", [
    {"components": 0, "generators": []},
    {"components": 1, "generators": [{"name": "x", "m": ["0", "1"], "a": ["0", "1"]}]},
    {"components": 2, "generators": [{"name": "x", "m": ["0", "1"], "a": [["0", "1"]]}]},
    {"components": 1, "generators": [{"name": "x", "m": ["0", "1"], "a": [["0", "1"]]}],
     "differential": [{"from": "x", "to": "x", "w": [-1], "z": [0]}]},
    {"generators": []},
])
def test_malformed_json(data):
    with pytest.raises(DomainError):
        LinkComplex.from_json(data)


def test_domain_of_t():
    with pytest.raises(DomainError):
        links.upsilon_set(links.unlink(2), F(3))


def test_from_knot_keeps_collapsed_edges():
    c = cfk.builtin("torus:3,4")
    lc = LinkComplex.from_knot(c)
    assert sorted((t.source, t.target, t.u) for t in lc.terms) == sorted(c.edges())
