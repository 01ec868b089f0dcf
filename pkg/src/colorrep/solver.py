"""Exact feasibility of A μ = b, μ >= 0 over the rationals.

Phase-one simplex with Bland's rule on a dense ``Fraction`` tableau.  An
infeasible answer carries a Farkas vector c with cᵀA >= 0 and cᵀb < 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .colorop import build_A
from .errors import InconsistentSystemError, NotInvariantError, SizeLimitError, ValidationError
from .ising import SpinMeasure, all_spins, marginal_p
from .linalg import bareiss_rank, solve_particular, solve_unique
from .partitions import MAX_ENUMERATION_N, enumerate_partitions, integer_partitions, orbit_size
from .rcm import PartitionMeasure

MAX_FULL_N = 8
PIVOT_CAP = 100_000


@dataclass
class FeasibilityProblem:
    matrix: list
    rhs: list
    columns: list
    rows: list = field(default_factory=list)
    reduced: bool = False
    n: int = 0
    p: Fraction | None = None

    def __post_init__(self):
        if len(self.matrix) != len(self.rhs):
            raise ValidationError("rhs length does not match the row count")
        if any(len(r) != len(self.columns) for r in self.matrix):
            raise ValidationError("every row needs one entry per column")

    def solve(self) -> "FeasibilityOutcome":
        status, values, cert = solve_feasibility(self.matrix, self.rhs)
        out = FeasibilityOutcome(status, problem=self)
        if status == "feasible":
            out.values = values
            out.witness = self.witness_measure(values)
        else:
            out.certificate = cert
        return out

    def witness_measure(self, values) -> PartitionMeasure | None:
        if not self.n:
            return None
        masses = {}
        for label, v in zip(self.columns, values):
            if v == 0:
                continue
            if self.reduced:
                for pi in orbit_members(label):
                    masses[pi] = v
            else:
                masses[label] = v
        return PartitionMeasure(self.n, masses)


@dataclass
class FeasibilityOutcome:
    status: str
    witness: PartitionMeasure | None = None
    certificate: list | None = None
    values: list | None = None
    problem: FeasibilityProblem | None = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def verify(self) -> bool:
        a, b = self.problem.matrix, self.problem.rhs
        if self.feasible:
            return all(v >= 0 for v in self.values) and all(
                sum((x * v for x, v in zip(row, self.values)), Fraction(0)) == rhs
                for row, rhs in zip(a, b)
            )
        return verify_certificate(a, b, self.certificate)

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.feasible and self.witness is not None:
            out["witness"] = self.witness.to_json()
        if not self.feasible:
            out["certificate"] = [str(c) for c in self.certificate]
        return out


def verify_certificate(a, b, c) -> bool:
    cols = len(a[0]) if a else 0
    if any(sum((ci * row[j] for ci, row in zip(c, a)), Fraction(0)) < 0 for j in range(cols)):
        return False
    return sum((ci * bi for ci, bi in zip(c, b)), Fraction(0)) < 0


def solve_feasibility(a: Sequence[Sequence], b: Sequence) -> tuple:
    """Decide {μ >= 0 : a μ = b} exactly.

    Returns ("feasible", values, None) or ("infeasible", None, certificate).
    """
    m = len(a)
    ncols = len(a[0]) if m else 0
    sign = [(-1 if Fraction(bi) < 0 else 1) for bi in b]
    # columns 0..ncols-1 are the unknowns, ncols..ncols+m-1 the artificials
    tab = [
        [sign[i] * Fraction(v) for v in a[i]] + [Fraction(int(k == i)) for k in range(m)]
        for i in range(m)
    ]
    rhs = [sign[i] * Fraction(b[i]) for i in range(m)]
    basis = [ncols + i for i in range(m)]
    width = ncols + m
    cost = [-sum((tab[i][j] for i in range(m)), Fraction(0)) for j in range(ncols)] + [Fraction(0)] * m
    cap = min(comb(width, m) if m else 1, PIVOT_CAP)
    pivots = 0
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = rhs[i] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise AssertionError("phase-one objective is bounded below; unbounded ray impossible")
        piv = tab[leave][enter]
        row = [v / piv for v in tab[leave]]
        tab[leave] = row
        rhs[leave] /= piv
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [u - f * v for u, v in zip(tab[i], row)]
                rhs[i] -= f * rhs[leave]
        f = cost[enter]
        cost = [u - f * v for u, v in zip(cost, row)]
        basis[leave] = enter
        pivots += 1
        if pivots > cap:
            raise AssertionError("pivot count exceeded the Bland bound")
    residual = sum((rhs[i] for i in range(m) if basis[i] >= ncols), Fraction(0))
    if residual == 0:
        values = [Fraction(0)] * ncols
        for i, j in enumerate(basis):
            if j < ncols:
                values[j] = rhs[i]
        return "feasible", values, None
    # reduced cost of artificial i is 1 - y_i; the Farkas vector is -y with the row flips undone
    y = [1 - cost[ncols + i] for i in range(m)]
    cert = [-sign[i] * y[i] for i in range(m)]
    if not verify_certificate(a, b, cert):
        raise AssertionError("Farkas certificate failed exact verification")
    return "infeasible", None, cert


# -- problems built from spin measures ----------------------------------------

def _check_probability(nu: SpinMeasure):
    if not nu.is_probability:
        raise ValidationError("ν must be a probability measure")


def full_problem(nu: SpinMeasure, p=None) -> FeasibilityProblem:
    if nu.n > MAX_FULL_N:
        raise SizeLimitError(f"full systems are limited to n <= {MAX_FULL_N}; use the reduced solver")
    p = marginal_p(nu) if p is None else Fraction(p)
    a = build_A(nu.n, p)
    return FeasibilityProblem(a.entries, [nu[s] for s in a.rows], a.cols, a.rows, False, nu.n, p)


def is_permutation_invariant(nu: SpinMeasure) -> bool:
    seen = {}
    for s in all_spins(nu.n):
        k = sum(s)
        if seen.setdefault(k, nu[s]) != nu[s]:
            return False
    return True


def orbit_members(label: tuple) -> list:
    """Every set partition with the given block sizes."""
    n = sum(label)
    return [pi for pi in enumerate_partitions(n) if pi.shape == tuple(label)]


def _shape_row_coefficients(sizes, p) -> list:
    """Coefficients of t^k in Π_b ((1 - p) + p t^{|b|})."""
    poly = [Fraction(1)]
    for b in sizes:
        nxt = [Fraction(0)] * (len(poly) + b)
        for k, c in enumerate(poly):
            nxt[k] += c * (1 - p)
            nxt[k + b] += c * p
        poly = nxt
    return poly


def symmetry_reduce(nu: SpinMeasure, p=None) -> FeasibilityProblem:
    """Fold an S_n-invariant system onto partition shapes.

    Rows are Hamming weights k, with right side P(‖σ‖ = k); the unknown for a shape
    is the common mass of each partition in that orbit.
    """
    if not is_permutation_invariant(nu):
        raise NotInvariantError("ν is not permutation invariant; use the full solver")
    n = nu.n
    if n > MAX_ENUMERATION_N:
        raise SizeLimitError(f"reduced systems are limited to n <= {MAX_ENUMERATION_N}")
    p = marginal_p(nu) if p is None else Fraction(p)
    shapes = list(integer_partitions(n))
    matrix = [[Fraction(0)] * len(shapes) for _ in range(n + 1)]
    for j, sh in enumerate(shapes):
        coefs = _shape_row_coefficients(sh, p)
        for k in range(n + 1):
            matrix[k][j] = orbit_size(sh) * coefs[k]
    rhs = [comb(n, k) * nu[(1,) * k + (0,) * (n - k)] for k in range(n + 1)]
    return FeasibilityProblem(matrix, rhs, shapes, list(range(n + 1)), True, n, p)


def has_color_representation(nu: SpinMeasure, reduced: bool = False, p=None) -> FeasibilityOutcome:
    """Exact decision whether Φ_p(μ) = ν has a probability solution μ (p = marginal unless given)."""
    _check_probability(nu)
    prob = symmetry_reduce(nu, p) if reduced else full_problem(nu, p)
    return prob.solve()


def solution_set_dimension(nu: SpinMeasure) -> int:
    """Dimension of the affine set of invariant formal solutions (shape-reduced system)."""
    prob = symmetry_reduce(nu)
    solve_particular(prob.matrix, prob.rhs)
    return len(prob.columns) - bareiss_rank(prob.matrix)


def enumerate_zero_pattern_solutions(nu: SpinMeasure, k: int | None = None) -> list:
    """Invariant formal solutions with k prescribed zero shapes, one per solvable choice.

    Returns a list of (zero shapes, signed PartitionMeasure).
    """
    prob = symmetry_reduce(nu)
    if k is None:
        k = solution_set_dimension(nu)
    ncols = len(prob.columns)
    out = []
    for zeros in combinations(range(ncols), k):
        keep = [j for j in range(ncols) if j not in zeros]
        sub = [[row[j] for j in keep] for row in prob.matrix]
        try:
            sol = solve_unique(sub, prob.rhs)
        except InconsistentSystemError:
            continue
        if sol is None:
            continue
        values = [Fraction(0)] * ncols
        for j, v in zip(keep, sol):
            values[j] = v
        out.append(([prob.columns[j] for j in zeros], prob.witness_measure(values)))
    return out
