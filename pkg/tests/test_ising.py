import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from colorrep.errors import SizeLimitError, ValidationError
from colorrep.graphs import complete_graph, cycle_graph, path_graph
from colorrep.ising import (
    ModelParams,
    SpinMeasure,
    complete_graph_class_weights,
    complete_graph_class_weights_float,
    cylinder,
    dnu_dp,
    dnu_dp_transitive,
    ising_measure,
    ising_probabilities_float,
    marginal_p,
    moment_identity_check,
    sum_conversion_sides,
    transitive_identity_sides,
    up_marginal,
)

params = st.fractions(min_value=F(1, 4), max_value=6, max_denominator=8).filter(lambda v: v > 0)


def test_edge_by_hand():
    nu = ising_measure(complete_graph(2), 2, 1)
    assert nu[(0, 0)] == nu[(1, 1)] == F(1, 3)
    assert nu[(0, 1)] == nu[(1, 0)] == F(1, 6)
    nu = ising_measure(complete_graph(2), 1, 3)
    # independent spins with P(1) = 3/4
    assert nu[(1, 1)] == F(9, 16)
    assert marginal_p(nu) == F(3, 4)


def test_rejects_bad_parameters():
    with pytest.raises(ValidationError):
        ising_measure(complete_graph(3), 0, 1)
    with pytest.raises(ValidationError):
        ModelParams(2, -1)
    with pytest.raises(SizeLimitError):
        ising_measure(complete_graph(17), 2)


@pytest.mark.parametrize("g", [complete_graph(3), complete_graph(4), cycle_graph(5), path_graph(4)])
def test_matches_exponential_form(g):
    x, y = F(5, 2), F(7, 4)
    nu = ising_measure(g, x, y)
    fl = ising_probabilities_float(g, math.log(x) / 2, math.log(y) / 2)
    assert nu.is_probability
    for s, v in fl.items():
        assert abs(float(nu[s]) - v) < 1e-12


@settings(max_examples=25, deadline=None)
@given(params, params)
def test_spin_flip_symmetry_at_h0(x, _):
    nu = ising_measure(complete_graph(4), x, 1)
    for s, v in nu.items():
        assert nu[tuple(1 - b for b in s)] == v
    assert marginal_p(nu) == F(1, 2)


@settings(max_examples=25, deadline=None)
@given(params, params)
def test_class_weights_match_enumeration(x, y):
    n = 5
    nu = ising_measure(complete_graph(n), x, y)
    cls = complete_graph_class_weights(n, x, y)
    for k in range(n + 1):
        assert cls[k] == sum((v for s, v in nu.items() if sum(s) == k), F(0))
    fl = complete_graph_class_weights_float(n, math.log(x) / 2, math.log(y) / 2)
    assert all(abs(a - float(b)) < 1e-12 for a, b in zip(fl, cls))


def test_cylinder_consistency():
    nu = ising_measure(cycle_graph(5), 3, 2)
    assert cylinder(nu) == 1
    assert cylinder(nu, (1,), ()) + cylinder(nu, (), (1,)) == 1
    assert up_marginal(nu, (1, 2)) == cylinder(nu, (1, 2, 3)) + cylinder(nu, (1, 2), (3,))


def test_json_round_trip():
    nu = ising_measure(complete_graph(3), F(3, 2), 2)
    assert SpinMeasure.from_json(nu.to_json()) == nu


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_moment_identities(n):
    for x, y in [(2, 1), (F(3, 2), 2), (5, F(1, 3))]:
        for m in range(0, min(5, n) + 1):
            assert moment_identity_check(n, x, y, m)


def test_sum_conversion():
    nu = ising_measure(path_graph(4), 3, F(2, 3))
    for s in [(1,), (1, 2), (1, 2, 3), (1, 2, 3, 4), (2, 4)]:
        lhs, rhs = sum_conversion_sides(nu, s)
        assert lhs == rhs


@pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(5)])
def test_transitive_identities(g):
    for k in range(1, g.n + 1):
        sides = transitive_identity_sides(g, 3, range(1, k + 1))
        assert sides["i"][0] == sides["i"][1]
        assert sides["ii"][0] == sides["ii"][1]


@pytest.mark.parametrize("g", [complete_graph(3), complete_graph(4), cycle_graph(5)])
def test_derivative_forms_agree_on_transitive_graphs(g):
    assert dnu_dp(g, F(5, 2)) == dnu_dp_transitive(g, F(5, 2))


@pytest.mark.parametrize("g", [complete_graph(4), path_graph(4)])
def test_derivative_against_finite_difference(g):
    # dν/dp = (dν/dh) / (dp/dh) at h = 0, by central differences in h
    beta, eps = math.log(3) / 2, 1e-5
    up = ising_probabilities_float(g, beta, eps)
    dn = ising_probabilities_float(g, beta, -eps)

    def p1(d):
        return sum(v for s, v in d.items() if s[0] == 1)

    dp = (p1(up) - p1(dn)) / (2 * eps)
    d = dnu_dp(g, 3)
    for s in up:
        fd = (up[s] - dn[s]) / (2 * eps) / dp
        assert abs(fd - float(d[s])) < 1e-6
