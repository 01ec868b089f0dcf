from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from colorrep.closedform import k3_closed_form, k4_polynomial
from colorrep.colorop import phi_p
from colorrep.errors import NotInvariantError, SizeLimitError, ValidationError
from colorrep.graphs import complete_graph, cycle_graph, path_graph
from colorrep.ising import SpinMeasure, ising_measure, marginal_p
from colorrep.solver import (
    enumerate_zero_pattern_solutions,
    full_problem,
    has_color_representation,
    is_permutation_invariant,
    orbit_members,
    solution_set_dimension,
    solve_feasibility,
    symmetry_reduce,
    verify_certificate,
)

above_one = st.fractions(min_value=1, max_value=6, max_denominator=6).filter(lambda v: v > 1)


def test_tiny_lp():
    status, vals, _ = solve_feasibility([[1, 1]], [1])
    assert status == "feasible" and sum(vals) == 1 and min(vals) >= 0
    status, _, cert = solve_feasibility([[1, 1]], [-1])
    assert status == "infeasible" and verify_certificate([[1, 1]], [-1], cert)
    # x - y = 1, x + y = 0 forces y < 0
    status, _, cert = solve_feasibility([[1, -1], [1, 1]], [1, 0])
    assert status == "infeasible" and verify_certificate([[1, -1], [1, 1]], [1, 0], cert)


def test_infeasible_k4_with_certificate():
    nu = ising_measure(complete_graph(4), 4, F(101, 100))
    out = has_color_representation(nu)
    assert out.status == "infeasible"
    assert out.verify()
    assert "certificate" in out.to_json()


def test_feasible_k4_witness():
    nu = ising_measure(complete_graph(4), F(7, 2), F(101, 100))
    out = has_color_representation(nu)
    assert out.feasible and out.verify()
    assert out.witness.is_probability
    assert phi_p(out.witness, marginal_p(nu)) == nu


@pytest.mark.parametrize("xy", [(2, 3), (F(3, 2), 5), (4, F(101, 100)), (F(7, 2), F(101, 100)), (3, 2)])
def test_full_and_reduced_agree(xy):
    nu = ising_measure(complete_graph(4), *xy)
    full = has_color_representation(nu)
    red = has_color_representation(nu, reduced=True)
    assert full.feasible == red.feasible
    assert red.verify()
    if red.feasible:
        assert phi_p(red.witness, marginal_p(nu)) == nu


@settings(max_examples=10, deadline=None)
@given(above_one, above_one)
def test_k3_witness_is_closed_form(x, y):
    nu = ising_measure(complete_graph(3), x, y)
    out = has_color_representation(nu)
    assert out.feasible
    assert out.witness == k3_closed_form(x, y)


def test_wrong_p_is_infeasible():
    nu = ising_measure(complete_graph(3), 2, 3)
    out = has_color_representation(nu, p=F(1, 2))
    assert not out.feasible and out.verify()


def test_h0_always_feasible():
    for g in (complete_graph(4), cycle_graph(5), path_graph(4)):
        assert has_color_representation(ising_measure(g, 3, 1)).feasible


def test_invariance_checks():
    assert is_permutation_invariant(ising_measure(complete_graph(4), 2, 3))
    assert not is_permutation_invariant(ising_measure(path_graph(4), 2, 3))
    with pytest.raises(NotInvariantError):
        symmetry_reduce(ising_measure(path_graph(4), 2, 3))


def test_reduced_shape_count():
    prob = symmetry_reduce(ising_measure(complete_graph(5), 2, 3))
    assert len(prob.columns) == 7
    assert len(prob.rows) == 6
    assert sum(len(orbit_members(c)) for c in prob.columns) == 52


def test_rejects_non_probability():
    bad = SpinMeasure(2, {(0, 0): F(1, 2), (1, 1): F(1, 4)}, normalizer=1)
    with pytest.raises(ValidationError):
        has_color_representation(bad)


def test_full_guard():
    nu = ising_measure(complete_graph(9), 2)
    with pytest.raises(SizeLimitError):
        full_problem(nu)


@pytest.mark.parametrize("n,dim", [(3, 0), (4, 1), (5, 2)])
def test_solution_set_dimension(n, dim):
    assert solution_set_dimension(ising_measure(complete_graph(n), 2, 3)) == dim


def test_zero_pattern_solutions_are_formal_solutions():
    nu = ising_measure(complete_graph(4), 2, 3)
    sols = enumerate_zero_pattern_solutions(nu)
    assert sols
    for zeros, mu in sols:
        assert len(zeros) == 1
        assert phi_p(mu, marginal_p(nu)) == nu


def test_feasibility_matches_k4_polynomial_on_a_few_points():
    for x, y in [(2, 2), (5, F(11, 10)), (6, 6), (F(5, 4), F(7, 4))]:
        nu = ising_measure(complete_graph(4), x, y)
        assert has_color_representation(nu).feasible == (k4_polynomial(x, y) >= 0)
