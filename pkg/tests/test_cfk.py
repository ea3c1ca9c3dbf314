from collections import Counter

import pytest
from hypothesis import given, strategies as st

from conftest import rank_one_from_seed
from upsilon_kit import cfk
from upsilon_kit.cfk import AlexanderPoly, CfkComplex
from upsilon_kit.errors import CatalogError, DomainError, NotLSpacePolynomialError, ValidationError


def semigroup_alexander(p, q):
    """Alexander polynomial of T(p,q) from the gaps of the semigroup <p, q>.

    Delta(t) = 1 - (1 - t) * sum_{gaps s} t^s, then centred by t^-g.
    """
    g = (p - 1) * (q - 1) // 2
    reachable = {a * p + b * q for a in range(q + 1) for b in range(p + 1)}
    gaps = [s for s in range(2 * g) if s not in reachable]
    coeffs = Counter({0: 1})
    for s in gaps:
        coeffs[s] -= 1
        coeffs[s + 1] += 1
    return AlexanderPoly({e - g: c for e, c in coeffs.items() if c})


def gf2_rank(vectors):
    rows, rank = [v for v in vectors if v], 0
    while rows:
        piv = rows.pop()
        low = piv & -piv
        rows = [r ^ piv if r & low else r for r in rows]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def hfk_by_ranks(c: CfkComplex):
    """dim HFK-hat per bigrading from GF(2) ranks of the U=0, A-preserving differential."""
    gens = c.generators
    dhat = {}
    for x, y, k in c.index_edges():
        if k == 0 and gens[x].alexander == gens[y].alexander:
            dhat.setdefault(x, 0)
            dhat[x] ^= 1 << y
    by_grade = {}
    for i, g in enumerate(gens):
        by_grade.setdefault((g.maslov, g.alexander), []).append(i)

    def rank_out(key):
        return gf2_rank(dhat.get(i, 0) for i in by_grade.get(key, []))

    out = {}
    for (m, a), idx in by_grade.items():
        dim = len(idx) - rank_out((m, a)) - rank_out((m + 1, a))
        if dim:
            out[(m, a)] = dim
    return out


# -- construction and validation --------------------------------------------

def test_repeated_terms_cancel():
    c = CfkComplex([("x", 0, 0), ("y", -1, 0)], [("x", "y", 0), ("x", "y", 0)])
    assert list(c.edges()) == []


@pytest.mark.parametrize("gens,edges,kind", [
    ([("x", 0, 0), ("y", 0, 0)], [("x", "y", 0)], "grading"),
    ([("x", 0, 0), ("y", 1, 2)], [("x", "y", 1)], "filtration"),
    ([("a", 0, 0), ("b", -1, 0), ("c", -2, 0)], [("a", "b", 0), ("b", "c", 0)], "d-squared"),
])
def test_validate_reports_each_kind(gens, edges, kind):
    bad = cfk.validate(CfkComplex(gens, edges))
    assert [v.kind for v in bad] == [kind]
    with pytest.raises(ValidationError):
        cfk.require_valid(CfkComplex(gens, edges))


@pytest.mark.parametrize("edges", [[("x", "nope", 0)], [("x", "x", -1)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(DomainError):
        CfkComplex([("x", 0, 0)], edges)


def test_duplicate_names_rejected():
    with pytest.raises(DomainError):
        CfkComplex([("x", 0, 0), ("x", 1, 0)])


@pytest.mark.parametrize("name", ["unknot", "trefoil", "figure8", "torus:3,4", "T(2,7)", "torus(4,5)",
                                  "wd_trefoil", "hom_counterexample"])
def test_builtins_valid_and_calibrated(name):
    c = cfk.builtin(name)
    assert cfk.is_valid(c)
    assert cfk.is_calibrated(c)
    assert cfk.total_homology_rank(c) == 1


def test_unknown_builtin():
    with pytest.raises(CatalogError):
        cfk.builtin("granny")


# -- Alexander polynomials and staircases -----------------------------------

@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (2, 9), (5, 6), (4, 7), (3, 7)])
def test_torus_alexander_matches_semigroup(p, q):
    assert cfk.torus_alexander(p, q).coeffs == semigroup_alexander(p, q).coeffs


def test_alexander_poly_text():
    p = cfk.torus_alexander(3, 4)
    assert str(p) == "t^3 - t^2 + 1 - t^-2 + t^-3"
    assert AlexanderPoly.parse(str(p)).coeffs == p.coeffs
    assert (p * AlexanderPoly({0: 1})).coeffs == p.coeffs


@pytest.mark.parametrize("poly", [AlexanderPoly({1: 1, 0: -1, -1: 1, -2: 1}), AlexanderPoly({1: -1, 0: 3, -1: -1}),
                                  AlexanderPoly({2: 1, 0: -1, -1: 1})])
def test_non_lspace_polynomials(poly):
    with pytest.raises(NotLSpacePolynomialError):
        cfk.lspace_sequence(poly)


@pytest.mark.parametrize("p,q", [(2, 3), (3, 4), (2, 7), (3, 5), (4, 5)])
def test_staircase_hfk(p, q):
    c = cfk.builtin(f"torus:{p},{q}")
    table = cfk.hfk_hat(c)
    assert table == hfk_by_ranks(c)
    assert cfk.euler_characteristic(table).coeffs == cfk.torus_alexander(p, q).coeffs
    assert sum(table.values()) == len(cfk.torus_alexander(p, q).coeffs)


def test_figure8_hfk():
    assert cfk.hfk_hat(cfk.builtin("figure8")) == {(1, 1): 1, (0, 0): 3, (-1, -1): 1}


def test_wd_trefoil_hfk():
    table = cfk.hfk_hat(cfk.builtin("wd_trefoil"))
    assert sum(table.values()) == 15
    assert cfk.euler_characteristic(table).coeffs == {0: 1}


@pytest.mark.parametrize("sigma,poly", [(-2, cfk.torus_alexander(2, 3)), (0, AlexanderPoly({1: -1, 0: 3, -1: -1})),
                                        (-6, cfk.torus_alexander(2, 7)), (2, cfk.torus_alexander(2, 3)),
                                        (0, AlexanderPoly({2: 1, 1: -4, 0: 7, -1: -4, -2: 1}))])
def test_alternating_model_is_thin(sigma, poly):
    c = cfk.alternating_model(sigma, poly)
    table = cfk.hfk_hat(c)
    assert table == hfk_by_ranks(c)
    assert all(m - a == sigma // 2 for m, a in table)
    assert cfk.euler_characteristic(table).coeffs == poly.coeffs


# -- operations --------------------------------------------------------------

def _convolve(s, t):
    out = Counter()
    for (m1, a1), d1 in s.items():
        for (m2, a2), d2 in t.items():
            out[(m1 + m2, a1 + a2)] += d1 * d2
    return dict(out)


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_kunneth_for_hfk(s1, s2):
    a, b = rank_one_from_seed(s1, 5), rank_one_from_seed(s2, 5)
    assert cfk.hfk_hat(cfk.tensor(a, b)) == _convolve(cfk.hfk_hat(a), cfk.hfk_hat(b))


@given(st.integers(0, 10**6))
def test_dual_flips_hfk(seed):
    c = rank_one_from_seed(seed)
    assert cfk.hfk_hat(cfk.dual(c)) == {(-m, -a): d for (m, a), d in cfk.hfk_hat(c).items()}
    assert cfk.dual(cfk.dual(c)) == c


@given(st.integers(0, 10**6))
def test_simplify_preserves_hfk(seed):
    c = rank_one_from_seed(seed)
    s = cfk.simplify(c)
    assert cfk.is_valid(s)
    assert cfk.hfk_hat(s) == cfk.hfk_hat(c) == hfk_by_ranks(c)
    assert not any(k == 0 and s[x].alexander == s[y].alexander for x, y, k in s.edges())


@given(st.integers(0, 10**6))
def test_json_roundtrip(seed):
    c = rank_one_from_seed(seed)
    assert CfkComplex.from_json(c.to_json()) == c


@given(st.integers(0, 10**6), st.integers(-3, 3), st.integers(-3, 3))
def test_calibrate_undoes_shifts(seed, dm, da):
    c = cfk.calibrate(rank_one_from_seed(seed))
    assert cfk.calibrate(c.shifted(2 * dm, da)) == c


def test_direct_sum_and_components():
    t = cfk.builtin("trefoil")
    s = cfk.direct_sum(t, cfk.box_complex(0, 0, "b"))
    assert len(s) == 7
    assert sorted(map(len, cfk.connected_components(s))) == [3, 4]


def test_zedges_are_metadata():
    c = cfk.builtin("wd_trefoil")
    assert c.zedges
    assert CfkComplex.from_json(c.to_json()).zedges == c.zedges
