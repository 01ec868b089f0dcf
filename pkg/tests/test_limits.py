import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from colorrep.errors import ValidationError
from colorrep.graphs import complete_graph, cycle_graph, path_graph
from colorrep.ising import ising_measure, magnetization_moment, subsets
from colorrep.limits import (
    lambda_,
    lambda_alternating,
    lambda_complete,
    lambda_complete_float,
    lambda_hat_critical,
    lambda_infinity,
    lambda_vector_float,
    limiting_system_raw,
    limiting_system_reduced,
    mu_infinity_closed_forms,
    null_dimension,
    one_side_identity,
    particular_and_null,
    reduced_system,
    root_tanh,
    same_solution_set,
    scaled_moments_float,
    shape_values_to_measure,
    solve_with_zeros,
    zero_pattern_solutions,
)
from colorrep.partitions import odd_block_indicator
from colorrep.rcm import PartitionMeasure, rcm_for_ising
from colorrep.solver import has_color_representation

unit = st.fractions(min_value=0, max_value=1, max_denominator=40).filter(lambda v: 0 < v < 1)


@pytest.mark.parametrize("g", [complete_graph(3), complete_graph(4), cycle_graph(5)])
def test_raw_and_reduced_agree_on_transitive_graphs(g):
    assert same_solution_set(limiting_system_raw(g, 2), limiting_system_reduced(g, 2))


def test_raw_and_reduced_can_differ_without_transitivity():
    # the reduced odd rows divide by the vertex-1 derivative, which is not the
    # same at every vertex of a path
    g = path_graph(4)
    assert not same_solution_set(limiting_system_raw(g, 2), limiting_system_reduced(g, 2))


@pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(5), path_graph(4)])
def test_lambda_alternating_form(g):
    for s in subsets(range(1, g.n + 1)):
        if s:
            assert lambda_alternating(g, 3, s) == lambda_(g, 3, s)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_lambda_fast_path(n):
    g = complete_graph(n)
    for k in range(n + 1):
        assert lambda_(n, F(5, 2), range(1, k + 1)) == lambda_(g, F(5, 2), range(1, k + 1))


def test_lambda_low_order():
    for n in (3, 5):
        assert lambda_complete(n, 2, 0) == 1
        assert lambda_complete(n, 2, 1) == 1
    with pytest.raises(ValidationError):
        lambda_complete(3, 2, 4)


def test_even_rows_hold_for_solver_witness():
    # even rows do not involve h, so any representation at h = 0 satisfies them
    g = complete_graph(4)
    out = has_color_representation(ising_measure(g, 3, 1))
    sys_ = limiting_system_reduced(g, 3)
    mu = out.witness
    for s, row, b in zip(sys_.rows, sys_.matrix, sys_.rhs):
        if len(s) % 2 == 0:
            assert sum(a * mu[c] for a, c in zip(row, sys_.cols)) == b


@pytest.mark.parametrize("g", [complete_graph(3), complete_graph(4), cycle_graph(5)])
def test_one_side_identity(g):
    for x in (F(3, 2), 3):
        sys_ = limiting_system_reduced(g, x)
        part, null = particular_and_null(sys_)
        vals = list(part)
        for i, v in enumerate(null):
            vals = [a + (i + 1) * b for a, b in zip(vals, v)]
        mu = PartitionMeasure(g.n, dict(zip(sys_.cols, vals)))
        assert sys_.is_satisfied_by(mu)
        for s in subsets(range(1, g.n + 1)):
            if len(s) % 2:
                lhs, rhs = one_side_identity(g, x, mu, s)
                assert lhs == rhs


def test_rcm_fails_limit_system_on_k4():
    g = complete_graph(4)
    for x in (F(3, 2), 2, 3, 5):
        assert not limiting_system_reduced(g, x).is_satisfied_by(rcm_for_ising(g, x))


def test_root_tanh():
    z = root_tanh(2)
    assert abs(z - math.tanh(2 * z)) < 1e-12
    assert abs(z - 0.957504) < 1e-6
    with pytest.raises(ValidationError):
        root_tanh(1)


def test_reduced_system_matrices():
    a4 = reduced_system(4)
    assert a4.cols == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert a4.matrix[0] == [1, 4, 3, 6, 1]
    assert a4.matrix[1] == [1, 4, 3, 6, 1]
    assert null_dimension(a4) == 1
    assert null_dimension(reduced_system(5)) == 2
    with pytest.raises(ValidationError):
        reduced_system(6)


@settings(max_examples=20, deadline=None)
@given(unit)
def test_closed_forms(z):
    sys_ = reduced_system(4, lambda_infinity(z))
    got = [vals for _, vals in zero_pattern_solutions(sys_)]
    assert got == mu_infinity_closed_forms(z)
    for vals in got:
        assert min(vals) < 0
        mu = shape_values_to_measure(sys_, vals)
        lam = lambda_infinity(z)
        for s in subsets(range(1, 5)):
            assert sum(odd_block_indicator(s, pi) * v for pi, v in mu.items()) == lam[len(s)]


def test_solve_with_zeros_accepts_shapes():
    sys_ = reduced_system(4, lambda_infinity(F(1, 2)))
    assert solve_with_zeros(sys_, [(4,)]) == solve_with_zeros(sys_, [0])


def test_k5_zero_patterns_have_negative_entries():
    sys_ = reduced_system(5, lambda_infinity(F(1, 2), 5))
    sols = [v for _, v in zero_pattern_solutions(sys_) if v is not None]
    assert sols
    assert all(min(v) < 0 for v in sols)


def test_float_path_matches_exact():
    n, x = 12, F(3, 2)
    beta = math.log(x) / 2
    for k in range(6):
        assert abs(lambda_complete_float(n, beta, k) - float(lambda_complete(n, x, k))) < 1e-12


def test_lambda_converges_supercritical():
    z = root_tanh(2)
    errs = {k: [abs(lambda_vector_float(n, 2)[k] - z**k) for n in (100, 200, 400)] for k in (2, 4)}
    for k, e in errs.items():
        assert e[0] > e[1] > e[2]
        assert e[2] < 0.05 * z**k


def test_critical_moments_and_gap():
    lam_hat = lambda_hat_critical(100)
    m = scaled_moments_float(100, 1 / 100)
    assert lam_hat[0] == lam_hat[1] == 1.0
    assert lam_hat[2] == pytest.approx(100**-0.5 * m[2])
    gaps = []
    for n in (100, 400):
        lam = lambda_vector_float(n, 1.0)
        hat = lambda_hat_critical(n)
        gaps.append([abs(hat[k] - lam[k]) * n**0.5 for k in range(2, 6)])
    assert all(b < a for a, b in zip(*gaps))


def test_scaled_second_moment_exact_small_n():
    n, x = 6, F(5, 4)
    m2 = magnetization_moment(ising_measure(complete_graph(n), x, 1), 2)
    assert scaled_moments_float(n, math.log(x) / 2)[2] == pytest.approx(float(m2) / n**1.5, rel=1e-12)
