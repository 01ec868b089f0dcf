"""Systems satisfied by h -> 0 limits of color representations, and their K_n reductions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from scipy.optimize import bisect

from .errors import InconsistentSystemError, ValidationError
from .graphs import Graph
from .ising import (
    chi_sum,
    class_chi_sum,
    class_moment,
    complete_graph_class_weights,
    complete_graph_class_weights_float,
    dnu_dp,
    ising_measure,
    subsets,
    up_marginal,
    weighted_chi_sum,
)
from .linalg import bareiss_rank, nullspace, solve_unique
from .partitions import (
    enumerate_partitions,
    integer_partitions,
    odd_block,
    odd_block_indicator,
    restricted_block_sizes,
)
from .rcm import PartitionMeasure


@dataclass
class LimitSystem:
    rows: list
    cols: list
    matrix: list
    rhs: list
    provenance: str = "exact-n"

    def augmented(self) -> list:
        return [row + [b] for row, b in zip(self.matrix, self.rhs)]

    def is_satisfied_by(self, mu: PartitionMeasure) -> bool:
        vals = [mu[c] for c in self.cols]
        return all(
            sum((a * v for a, v in zip(row, vals) if a), Fraction(0)) == b
            for row, b in zip(self.matrix, self.rhs)
        )


def same_solution_set(a: LimitSystem, b: LimitSystem) -> bool:
    """True iff both (consistent) systems over the same columns have the same solutions."""
    if a.cols != b.cols:
        raise ValidationError("systems are over different columns")
    r = bareiss_rank(a.matrix)
    return (
        r == bareiss_rank(b.matrix)
        == bareiss_rank(a.augmented())
        == bareiss_rank(b.augmented())
        == bareiss_rank(a.augmented() + b.augmented())
    )


def _derivative_up(d: dict, subset) -> Fraction:
    return sum((v for s, v in d.items() if all(s[i - 1] == 1 for i in subset)), Fraction(0))


def limiting_system_raw(g: Graph, x) -> LimitSystem:
    """Rows for every S ⊆ [n]:

    |S| even:  Σ_π 2^{-‖π|_S‖} μ(π) = ν_{1/2}(1^S)
    |S| odd:   Σ_π ‖π|_S‖ 2^{1-‖π|_S‖} μ(π) = ν'_{1/2}(1^S)   (derivative in p)
    """
    nu = ising_measure(g, x, 1)
    d = dnu_dp(g, x)
    cols = enumerate_partitions(g.n)
    rows, matrix, rhs = [], [], []
    half = Fraction(1, 2)
    for s in subsets(range(1, g.n + 1)):
        k = [len(restricted_block_sizes(pi, s)) for pi in cols]
        if len(s) % 2 == 0:
            matrix.append([half**kk for kk in k])
            rhs.append(up_marginal(nu, s))
        else:
            matrix.append([kk * half ** (kk - 1) for kk in k])
            rhs.append(_derivative_up(d, s))
        rows.append(s)
    return LimitSystem(rows, cols, matrix, rhs)


def lambda_from_measure(nu, subset: Iterable[int]) -> Fraction:
    """λ_S for ν at h = 0: Σ χ_S ν if |S| even, Σ Mχ_S ν / Σ Mχ_{{1}} ν if |S| odd."""
    s = tuple(subset)
    if len(s) % 2 == 0:
        return chi_sum(nu, s)
    denom = weighted_chi_sum(nu, (1,))
    if denom == 0:
        raise ValidationError("Σ M χ_{1} ν vanishes")
    return weighted_chi_sum(nu, s) / denom


def limiting_system_reduced(g: Graph, x) -> LimitSystem:
    """Rows Σ_π A(S,π) μ(π) = λ_S for every S ⊆ [n]."""
    nu = ising_measure(g, x, 1)
    cols = enumerate_partitions(g.n)
    rows, matrix, rhs = [], [], []
    for s in subsets(range(1, g.n + 1)):
        rows.append(s)
        matrix.append([Fraction(odd_block_indicator(s, pi)) for pi in cols])
        rhs.append(lambda_from_measure(nu, s))
    return LimitSystem(rows, cols, matrix, rhs)


def lambda_alternating(g: Graph, x, subset: Iterable[int]) -> Fraction:
    """λ_S from alternating subset sums of ν_{1/2}(1^{S'}) or of its p-derivative."""
    s = tuple(subset)
    if len(s) % 2 == 0:
        nu = ising_measure(g, x, 1)
        return sum((Fraction(-2) ** len(t) * up_marginal(nu, t) for t in subsets(s)), Fraction(0))
    d = dnu_dp(g, x)
    return sum((Fraction(-2) ** (len(t) - 1) * _derivative_up(d, t) for t in subsets(s)), Fraction(0))


def lambda_(g, x, subset: Iterable[int]) -> Fraction:
    """λ_S^(n) exactly; ``g`` is a Graph or an integer n meaning K_n (fast path)."""
    s = tuple(subset)
    if isinstance(g, Graph):
        return lambda_from_measure(ising_measure(g, x, 1), s)
    n = int(g)
    return lambda_complete(n, x, len(s))


def lambda_complete(n: int, x, m: int) -> Fraction:
    """λ_{[m]} on K_n from Hamming-weight classes."""
    if not 0 <= m <= n:
        raise ValidationError("need 0 <= |S| <= n")
    classes = complete_graph_class_weights(n, x, 1)
    if m % 2 == 0:
        return class_chi_sum(classes, m)
    return class_chi_sum(classes, m, weighted=True) / class_chi_sum(classes, 1, weighted=True)


def lambda_complete_float(n: int, beta: float, m: int) -> float:
    classes = complete_graph_class_weights_float(n, beta, 0.0)
    if m % 2 == 0:
        return class_chi_sum(classes, m)
    return class_chi_sum(classes, m, weighted=True) / class_chi_sum(classes, 1, weighted=True)


def root_tanh(beta_hat: float, tol: float = 1e-12) -> float:
    """The positive root of z = tanh(β̂ z), β̂ > 1."""
    if beta_hat <= 1:
        raise ValidationError("z = tanh(β̂ z) has a positive root only for β̂ > 1")

    def f(z):
        return z - math.tanh(beta_hat * z)

    lo = 1e-300
    while f(lo * 2) < 0 and lo < 0.5:
        lo *= 2
    # f < 0 just above 0 and f(1) > 0
    return bisect(f, lo, 1.0, xtol=tol)


# -- shape-reduced systems on [4] and [5] --------------------------------------

def reduced_system(n_small: int, rhs: Sequence | None = None) -> LimitSystem:
    """A^(n_small) folded over S_n: row k is S = [k], column j the shape of its representative.

    The unknown for a column is the common mass of each partition in that orbit, so the
    entry is Σ_{π in orbit} A([k], π).
    """
    if n_small not in (4, 5):
        raise ValidationError("reduced systems are defined for n_small in {4, 5}")
    shapes = list(integer_partitions(n_small))
    parts = enumerate_partitions(n_small)
    matrix = []
    for k in range(n_small + 1):
        s = tuple(range(1, k + 1))
        matrix.append([
            Fraction(sum(odd_block_indicator(s, pi) for pi in parts if pi.shape == sh)) for sh in shapes
        ])
    if rhs is None:
        rhs = [Fraction(0)] * (n_small + 1)
    if len(rhs) != n_small + 1:
        raise ValidationError("rhs needs one entry per |S| = 0..n_small")
    return LimitSystem(list(range(n_small + 1)), shapes, matrix, list(rhs), "asymptotic")


def lambda_infinity(z, n_small: int = 4) -> list:
    """λ^(∞)_{[k]} = z^{2⌊k/2⌋}."""
    z = Fraction(z)
    return [z ** (2 * (k // 2)) for k in range(n_small + 1)]


def null_dimension(sys: LimitSystem) -> int:
    return len(sys.cols) - bareiss_rank(sys.matrix)


def solve_with_zeros(sys: LimitSystem, zero_set: Iterable) -> list | None:
    """Per-shape values of the solution with the given columns forced to zero.

    ``zero_set`` holds column indices or shapes.  Returns None when the choice leaves
    the remaining columns dependent; raises if the restricted system is inconsistent.
    """
    zeros = {sys.cols.index(z) if isinstance(z, tuple) else int(z) for z in zero_set}
    keep = [j for j in range(len(sys.cols)) if j not in zeros]
    sol = solve_unique([[row[j] for j in keep] for row in sys.matrix], sys.rhs)
    if sol is None:
        return None
    out = [Fraction(0)] * len(sys.cols)
    for j, v in zip(keep, sol):
        out[j] = v
    return out


def shape_values_to_measure(sys: LimitSystem, values: Sequence) -> PartitionMeasure:
    n = sum(sys.cols[0])
    masses = {}
    for sh, v in zip(sys.cols, values):
        for pi in enumerate_partitions(n):
            if pi.shape == sh:
                masses[pi] = v
    return PartitionMeasure(n, masses)


def zero_pattern_solutions(sys: LimitSystem) -> list:
    """Every solution with null-dimension many prescribed zero columns: [(zeros, values | None)]."""
    k = null_dimension(sys)
    out = []
    for zeros in combinations(range(len(sys.cols)), k):
        try:
            out.append((zeros, solve_with_zeros(sys, zeros)))
        except InconsistentSystemError:
            out.append((zeros, None))
    return out


def mu_infinity_closed_forms(z) -> list:
    """The five zero-pattern solutions of A^(4) μ = λ^(∞), as displayed, in shape order
    (4), (3,1), (2,2), (2,1,1), (1,1,1,1)."""
    t = Fraction(z) ** 2
    return [
        [Fraction(0), t, t * t / 3, -t * (1 + t / 3), (1 + t) ** 2],
        [t, Fraction(0), t * (t - 1) / 3, -t * (t - 1) / 3, (t - 1) ** 2],
        [t * t, -t * (t - 1), Fraction(0), t * (t - 1), -(t - 1) * (1 + 3 * t)],
        [t * (3 + t) / 4, -t * (t - 1) / 4, t * (t - 1) / 4, Fraction(0), -(t - 1)],
        [(1 + t) ** 2 / 4, -(t - 1) ** 2 / 4, (t - 1) * (1 + 3 * t) / 12, -(t - 1) / 3, Fraction(0)],
    ]


# -- critical scaling -----------------------------------------------------------

def scaled_moments_float(n: int, beta: float) -> dict:
    """m_k = E[((2‖σ‖-n) / n^{3/4})^k] for K_n at h = 0, k = 2, 4, 6."""
    classes = complete_graph_class_weights_float(n, beta, 0.0)
    scale = n ** 0.75
    return {k: class_moment(classes, k) / scale**k for k in (2, 4, 6)}


def lambda_hat_critical(n: int, beta_hat: float = 1.0) -> dict:
    """Leading-order λ̂_{[k]}, k = 0..5, from the scaled moments at β = β̂/n."""
    m = scaled_moments_float(n, beta_hat / n)
    return {
        0: 1.0,
        1: 1.0,
        2: n**-0.5 * m[2],
        3: n**-0.5 * m[4] / m[2],
        4: n**-1 * m[4],
        5: n**-1 * m[6] / m[2],
    }


def lambda_vector_float(n: int, beta_hat: float, top: int = 5) -> dict:
    return {k: lambda_complete_float(n, beta_hat / n, k) for k in range(top + 1)}


# -- the necessary condition on a solution of the reduced system --------------------

def one_side_identity(g: Graph, x, mu: PartitionMeasure, subset: Iterable[int]) -> tuple:
    """Σ_σ M(σ) χ_S(σ) ν(σ)  versus  Σ_π A(S,π) |T_{S,π}| μ(π), for odd |S|."""
    s = tuple(subset)
    nu = ising_measure(g, x, 1)
    rhs = sum(
        (len(odd_block(s, pi)) * v for pi, v in mu.items() if odd_block_indicator(s, pi)),
        Fraction(0),
    )
    return weighted_chi_sum(nu, s), rhs


def particular_and_null(sys: LimitSystem) -> tuple:
    """One solution (free columns zero) and a null-space basis."""
    from .linalg import solve_particular

    return solve_particular(sys.matrix, sys.rhs), nullspace(sys.matrix)
