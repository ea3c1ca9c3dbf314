import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import rank_one_from_seed
from upsilon_kit import cfk, upsilon as U
from upsilon_kit.acceptance import (alphas_from_steps, lspace_step_sequences, property_failures,
                                    torus_n_n1_formula)
from upsilon_kit.cfk import AlexanderPoly, CfkComplex
from upsilon_kit.errors import DomainError, NotAKnotError
from upsilon_kit.exact import PLFunction

T = lambda p, q: cfk.builtin(f"torus:{p},{q}")


def staircase(alphas):
    return cfk.staircase_from_alexander(AlexanderPoly({a: (-1) ** k for k, a in enumerate(alphas)}))


# -- values --------------------------------------------------------------------

@pytest.mark.parametrize("name,t,value", [
    ("unknot", F(1), 0), ("trefoil", F(1), -1), ("trefoil", F(1, 2), F(-1, 2)),
    ("torus:3,4", F(1), -2), ("torus:3,4", F(1, 3), -1), ("figure8", F(2, 3), 0),
    ("hom_counterexample", F(1), -1), ("hom_counterexample", F(1, 2), 0),
])
def test_upsilon_at(name, t, value):
    assert U.upsilon_at(cfk.builtin(name), t) == value


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_two_strand_torus_knots(k):
    # alternating with signature -2k, so Upsilon = -k (1 - |1 - t|)
    f = U.upsilon(T(2, 2 * k + 1)).upsilon
    assert f == PLFunction.from_points([(0, 0), (1, -k), (2, 0)])


@pytest.mark.parametrize("n", range(2, 9))
def test_torus_n_n1_formula_against_closed_form(n):
    alphas = cfk.lspace_sequence(cfk.torus_alexander(n, n + 1))
    assert U.upsilon_lspace(alphas) == torus_n_n1_formula(n) == U.upsilon(T(n, n + 1)).upsilon


@pytest.mark.parametrize("steps", list(lspace_step_sequences(9)))
def test_closed_form_matches_reduction(steps):
    alphas = alphas_from_steps(steps)
    assert U.upsilon(staircase(alphas)).upsilon == U.upsilon_lspace(alphas)


@pytest.mark.parametrize("alphas", [[1, 0], [2, 0, -1], [1, 1, -1]])
def test_closed_form_rejects_bad_sequences(alphas):
    with pytest.raises(DomainError):
        U.upsilon_lspace(alphas)


def test_witness_and_json():
    r = U.upsilon(cfk.builtin("trefoil"))
    assert r.witness == ((0, 1, "x0"), (1, 2, "x2"))
    assert r.tau == 1 and r.jumps == ((1, 2),)
    assert PLFunction.from_json(r.to_json()) == r.upsilon
    assert r.to_csv() == "t,upsilon\n0,0\n1,-1\n2,0\n"
    assert r.to_csv(samples=3) == r.to_csv()


def test_window():
    f = U.upsilon(T(3, 4), F(1, 2), 1).upsilon
    assert f.domain == (F(1, 2), F(1))
    assert f == U.upsilon(T(3, 4)).upsilon.restrict(F(1, 2), 1)


@pytest.mark.parametrize("t", [F(-1), F(5, 2)])
def test_domain(t):
    with pytest.raises(DomainError):
        U.upsilon_at(cfk.builtin("trefoil"), t)


def test_rank_two_is_not_a_knot():
    c = CfkComplex([("x", 0, 0), ("y", 0, 0)])
    with pytest.raises(NotAKnotError):
        U.upsilon(c)


# -- tau, delta, nu ------------------------------------------------------------

@pytest.mark.parametrize("p,q", [(2, 3), (3, 4), (2, 5), (3, 5), (4, 5)])
def test_staircase_tau_and_nu_equal_genus(p, q):
    g = (p - 1) * (q - 1) // 2
    assert U.tau(T(p, q)) == g
    assert U.nu_minus(T(p, q)) == g
    assert U.tau(cfk.dual(T(p, q))) == -g


@pytest.mark.parametrize("p,q", [(2, 3), (3, 4), (2, 5), (3, 5), (4, 5), (2, 7)])
def test_delta_of_sub_complexes_is_minus_twice_V(p, q):
    # V_s = sum_{j >= 1} j a_{s+j} for an L-space knot with Alexander coefficients a
    a = cfk.torus_alexander(p, q).coeffs
    g = max(a)
    for s in range(-g - 1, g + 2):
        v = sum(j * a.get(s + j, 0) for j in range(1, 3 * g + 3))
        assert U.delta(U.sub_A(T(p, q), s)) == -2 * v
    assert U.delta(U.full_complex(T(p, q))) == 0
    assert U.delta(U.a_prime(T(p, q))) == 0


@pytest.mark.parametrize("name,nu", [("unknot", 0), ("figure8", 0), ("hom_counterexample", 2)])
def test_nu_minus(name, nu):
    assert U.nu_minus(cfk.builtin(name)) == nu


def test_nu_minus_of_mirror_trefoil():
    assert U.nu_minus(cfk.dual(cfk.builtin("trefoil"))) == 0


# -- triviality --------------------------------------------------------------

@pytest.mark.parametrize("c,strong,eps", [
    (cfk.builtin("unknot"), True, True),
    (cfk.builtin("trefoil"), False, False),
    (cfk.builtin("figure8"), True, True),
    (cfk.tensor(cfk.builtin("trefoil"), cfk.dual(cfk.builtin("trefoil"))), True, True),
    (cfk.builtin("hom_counterexample"), False, True),
    (cfk.builtin("wd_trefoil"), False, False),
])
def test_triviality(c, strong, eps):
    assert U.is_strongly_trivial(c) is strong
    assert U.is_epsilon_trivial(c) is eps


def test_slice_knot_has_zero_upsilon():
    c = cfk.tensor(cfk.builtin("trefoil"), cfk.dual(cfk.builtin("trefoil")))
    assert U.upsilon(c).upsilon.is_zero()


# -- bounds, phi, independence -------------------------------------------------

def test_genus_bounds():
    r = U.upsilon(T(3, 4))
    assert U.slice_genus_lower_bound(r) == 3
    assert U.concordance_genus_lower_bound(r) == 3


def test_crossing_change_sandwich():
    assert U.crossing_change_check(T(2, 5), T(2, 3)).ok
    rep = U.crossing_change_check(T(2, 3), T(2, 5))
    assert not rep.ok and rep.violations


@pytest.mark.parametrize("name,t,value", [("trefoil", F(1), 1), ("torus:3,4", F(2, 3), 1), ("torus:3,4", F(1), 0),
                                          ("torus:4,5", F(1, 2), 1), ("torus:4,5", F(1), 2)])
def test_phi(name, t, value):
    assert U.phi(cfk.builtin(name), t) == value


def test_independence_of_torus_family():
    knots = [T(n, n + 1) for n in range(2, 6)]
    rep = U.independence_certificate(knots, [F(2, n) for n in range(2, 6)])
    assert rep.unitriangular and rep.certificate
    assert rep.matrix[0] == (1, 0, 2, 0)


def test_independence_detects_dependence():
    rep = U.independence_certificate([T(2, 3), T(2, 3)], [F(1), F(1)])
    assert not rep.unitriangular and rep.certificate is None


# -- properties on random complexes ---------------------------------------------

@given(st.integers(0, 10**7), st.integers(0, 10**7))
def test_random_complex_properties(seed, other):
    c = rank_one_from_seed(seed)
    partner = rank_one_from_seed(other, 5)
    assert property_failures(c, partner) == []


@given(st.integers(0, 10**7))
def test_delta_slope_matches_function(seed):
    c = rank_one_from_seed(seed)
    f = U.upsilon(c).upsilon
    rng = random.Random(seed)
    for t in list(f.interior_breakpoints()) + [F(rng.randint(1, 19), 10)]:
        assert U.delta_slope_at(c, t) == f.delta_slope(t)


@given(st.integers(0, 10**7))
def test_pointwise_matches_function(seed):
    c = rank_one_from_seed(seed)
    f = U.upsilon(c).upsilon
    for k in range(0, 13):
        assert U.upsilon_at(c, F(k, 6)) == f(F(k, 6))


@given(st.integers(0, 10**7))
def test_tau_additive(seed):
    a, b = rank_one_from_seed(seed, 5), rank_one_from_seed(seed + 1, 5)
    assert U.tau(cfk.tensor(a, b)) == U.tau(a) + U.tau(b)
    assert U.tau(cfk.dual(a)) == -U.tau(a)
