from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from colorrep.colorop import (
    a_entry,
    build_A,
    build_Adoubleprime,
    build_Adoubleprime_sum_form,
    build_Aprime,
    check_formal_solution,
    exact_rank,
    formal_solution,
    formal_solution_by_size,
    formal_solution_from_measure,
    formal_solution_sign_profile,
    phi_p,
    second_representation,
    supported_on_connected_blocks,
    tree_basis_transform,
    is_permutation_matrix,
)
from colorrep.errors import NoSecondRepresentationError, SingularParameterError, SizeLimitError, ValidationError
from colorrep.graphs import Graph, complete_graph, connected_graphs, cycle_graph, path_graph
from colorrep.ising import ising_measure
from colorrep.partitions import SetPartition, enumerate_partitions, restrict
from colorrep.rcm import PartitionMeasure, rcm_measure

P = SetPartition.parse
unit = st.fractions(min_value=0, max_value=1, max_denominator=30).filter(lambda v: 0 < v < 1)


def test_phi_singletons_is_product():
    n, p = 3, F(1, 3)
    mu = PartitionMeasure(n, {P("1|2|3"): 1})
    nu = phi_p(mu, p)
    for s in product((0, 1), repeat=n):
        assert nu[s] == p ** sum(s) * (1 - p) ** (n - sum(s))


def test_phi_full_block():
    nu = phi_p(PartitionMeasure(4, {P("1,2,3,4"): 1}), F(2, 5))
    assert nu[(1, 1, 1, 1)] == F(2, 5)
    assert nu[(0, 0, 0, 0)] == F(3, 5)
    assert nu[(1, 0, 0, 0)] == 0


def test_phi_rejects_endpoints():
    mu = PartitionMeasure(2, {P("1|2"): 1})
    for p in (0, 1, F(3, 2)):
        with pytest.raises(ValidationError):
            phi_p(mu, p)


@settings(max_examples=20, deadline=None)
@given(unit, unit)
def test_phi_linear_and_mass_preserving(p, r):
    a = rcm_measure(complete_graph(3), r)
    b = PartitionMeasure(3, {P("1,2|3"): F(1, 2), P("1|2|3"): F(1, 2)})
    mix = a.scale(F(1, 3)) + b.scale(F(2, 3))
    lhs = phi_p(mix, p)
    pa, pb = phi_p(a, p), phi_p(b, p)
    for s, v in lhs.items():
        assert v == F(1, 3) * pa[s] + F(2, 3) * pb[s]
    assert sum(v for _, v in lhs.items()) == 1


def test_matrix_columns_are_images():
    p = F(1, 3)
    m = build_A(3, p)
    for pi in m.cols:
        img = phi_p(PartitionMeasure(3, {pi: 1}), p)
        assert m.column(pi) == [img[s] for s in m.rows]
    assert m.shape == (8, 5)
    assert a_entry((1, 0, 0), P("1,2|3"), p) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ranks(n):
    assert exact_rank(build_A(n, F(1, 2))) == 2 ** (n - 1)
    assert exact_rank(build_A(n, F(1, 3))) == 2**n - n
    assert exact_rank(build_A(n, F(2, 5))) == 2**n - n
    assert exact_rank(build_Aprime(n)) == exact_rank(build_Adoubleprime(n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_aprime_entries(n):
    m = build_Aprime(n)
    for s in m.rows:
        if not s:
            continue
        for pi in m.cols:
            assert m.entry(s, pi) == F(1, 2 ** restrict(pi, s).block_count)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_adoubleprime_forms_agree(n):
    assert build_Adoubleprime(n).entries == build_Adoubleprime_sum_form(n).entries


def test_matrix_guard_and_csv():
    with pytest.raises(SizeLimitError):
        build_A(9, F(1, 2))
    text = build_Aprime(2).to_csv()
    assert text.splitlines()[0].startswith("row,")
    assert "{1,2}" in text


@pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(5), path_graph(4)])
def test_tree_basis_is_permutation(g):
    assert is_permutation_matrix(tree_basis_transform(g)[2])


@pytest.mark.parametrize("n", [3, 4])
def test_second_representation_exhaustive(n):
    for g in connected_graphs(n):
        mu0, mu1 = second_representation(g, 2)
        assert mu0 != mu1
        assert mu0.is_probability and mu1.is_probability
        assert phi_p(mu0, F(1, 2)) == phi_p(mu1, F(1, 2)) == ising_measure(g, 2, 1)
        if not g.is_tree:
            assert supported_on_connected_blocks(g, mu0)
            assert supported_on_connected_blocks(g, mu1)


def test_second_representation_errors():
    with pytest.raises(NoSecondRepresentationError):
        second_representation(complete_graph(2), 2)
    with pytest.raises(ValidationError):
        second_representation(Graph(3, [(1, 2)]), 2)
    with pytest.raises(ValidationError):
        second_representation(complete_graph(3), 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_formal_solution_image(n):
    for x, y in [(F(6, 5), 20), (2, 3), (3, F(1, 2))]:
        assert check_formal_solution(n, x, y)


@pytest.mark.parametrize("n", [3, 4])
def test_formal_solution_generic_form(n):
    nu = ising_measure(complete_graph(n), F(3, 2), 5)
    assert formal_solution_from_measure(nu) == formal_solution(n, F(3, 2), 5)


def test_formal_solution_supported_on_single_blocks():
    mu = formal_solution(4, 2, 3)
    for pi in mu.support():
        assert sum(1 for b in pi.blocks if len(b) > 1) <= 1
    assert mu.total() == 1


def test_formal_solution_singular_at_half():
    # p = 1/2 makes the odd-size denominators vanish
    with pytest.raises(SingularParameterError):
        formal_solution(3, 2, 1)


def test_formal_solution_k3_matches_closed_form():
    from colorrep.closedform import k3_closed_form

    assert formal_solution(3, 2, 3) == k3_closed_form(2, 3)


def test_sign_profile_shape():
    prof = formal_solution_sign_profile(4, F(6, 5), 100)
    assert set(prof) == {0, 2, 3, 4}
    assert all(v["sign"] == "+" for v in prof.values())
    assert prof[2]["min"] == formal_solution_by_size(4, F(6, 5), 100)[2]


def test_sign_profile_negative_somewhere():
    # the formal solution is not always a probability measure
    prof = formal_solution_sign_profile(4, 5, F(101, 100))
    assert prof[2]["sign"] == "-"


def test_partitions_of_k5_count():
    assert len(enumerate_partitions(5)) == 52
