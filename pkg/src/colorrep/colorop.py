"""The color operator Φ_p, the matrices A_{n,p}, A', A'' and constructions built on them."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .errors import (
    NoSecondRepresentationError,
    SingularParameterError,
    SizeLimitError,
    ValidationError,
)
from .graphs import Graph, spanning_tree
from .ising import (
    SpinMeasure,
    all_spins,
    complete_graph_class_weights,
    ising_measure,
    marginal_p,
    subsets,
    zero_marginal,
)
from .linalg import bareiss_rank, solve_unique
from .partitions import (
    SetPartition,
    enumerate_partitions,
    is_constant_on_blocks,
    only_even_blocks,
    partition_from_edges,
    restricted_block_sizes,
    single_block_partition,
)
from .rcm import PartitionMeasure, blocks_connected, rcm_for_ising

MAX_MATRIX_N = 8


def _check_p(p) -> Fraction:
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValidationError("p must lie strictly between 0 and 1")
    return p


def phi_p(mu: PartitionMeasure, p) -> SpinMeasure:
    """Color every block independently: 1 with probability p, else 0.

    Works for signed μ as well, in which case the result is the signed image.
    """
    p = _check_p(p)
    n = mu.n
    out: dict = {s: Fraction(0) for s in all_spins(n)}
    for pi, mass in mu.items():
        if mass == 0:
            continue
        for colors in product((0, 1), repeat=pi.block_count):
            sigma = [0] * n
            for b, c in zip(pi.blocks, colors):
                for e in b:
                    sigma[e - 1] = c
            ones = sum(colors)
            out[tuple(sigma)] += mass * p**ones * (1 - p) ** (pi.block_count - ones)
    return SpinMeasure(n, out, normalizer=Fraction(1))


@dataclass
class ColorMatrix:
    """Exact matrix with labelled rows (spins or subsets) and partition columns."""

    rows: list
    cols: list
    entries: list
    row_kind: str = "spin"

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.cols)

    def entry(self, row, col) -> Fraction:
        return self.entries[self.rows.index(row)][self.cols.index(col)]

    def column(self, col) -> list:
        j = self.cols.index(col)
        return [r[j] for r in self.entries]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["row"] + [str(c) for c in self.cols])
        for label, r in zip(self.rows, self.entries):
            w.writerow([self.row_label(label)] + [str(v) for v in r])
        return buf.getvalue()

    def row_label(self, label) -> str:
        if self.row_kind == "spin":
            return "".join(map(str, label))
        return "{" + ",".join(map(str, label)) + "}"


def _guard(n: int):
    if not 1 <= n <= MAX_MATRIX_N:
        raise SizeLimitError(f"matrix construction needs 1 <= n <= {MAX_MATRIX_N}, got {n}")


def a_entry(sigma, pi: SetPartition, p) -> Fraction:
    """A_{n,p}(σ, π) = p^{#1-blocks} (1-p)^{#0-blocks} if σ is constant on blocks, else 0."""
    if not is_constant_on_blocks(pi, sigma):
        return Fraction(0)
    ones = sum(1 for b in pi.blocks if sigma[b[0] - 1] == 1)
    return p**ones * (1 - p) ** (pi.block_count - ones)


def build_A(n: int, p) -> ColorMatrix:
    _guard(n)
    p = _check_p(p)
    rows = list(all_spins(n))
    cols = enumerate_partitions(n)
    return ColorMatrix(rows, cols, [[a_entry(s, pi, p) for pi in cols] for s in rows])


def subset_rows(n: int) -> list:
    return [tuple(s) for s in subsets(range(1, n + 1))]


def build_Aprime(n: int) -> ColorMatrix:
    """A'(S, π) = Σ_{σ: σ|_S ≡ 1} A_{n,1/2}(σ, π) = 2^{-‖π|_S‖}."""
    _guard(n)
    rows = subset_rows(n)
    cols = enumerate_partitions(n)
    half = Fraction(1, 2)
    return ColorMatrix(
        rows, cols, [[half ** len(restricted_block_sizes(pi, s)) for pi in cols] for s in rows], "subset"
    )


def build_Adoubleprime(n: int) -> ColorMatrix:
    """A''(S, π) = 1 iff every block of π meets S in an even number of points."""
    _guard(n)
    rows = subset_rows(n)
    cols = enumerate_partitions(n)
    return ColorMatrix(rows, cols, [[Fraction(only_even_blocks(s, pi)) for pi in cols] for s in rows], "subset")


def build_Adoubleprime_sum_form(n: int) -> ColorMatrix:
    """A''(S, π) = Σ_{S' ⊆ S} (-2)^{|S'|} A'(S', π), computed literally."""
    ap = build_Aprime(n)
    index = {s: i for i, s in enumerate(ap.rows)}
    out = []
    for s in ap.rows:
        row = [Fraction(0)] * len(ap.cols)
        for sp in subsets(s):
            coef = (-2) ** len(sp)
            src = ap.entries[index[tuple(sp)]]
            row = [a + coef * b for a, b in zip(row, src)]
        out.append(row)
    return ColorMatrix(ap.rows, ap.cols, out, "subset")


def exact_rank(m) -> int:
    entries = m.entries if isinstance(m, ColorMatrix) else m
    return bareiss_rank(entries)


# -- two distinct representations at h = 0 ------------------------------------

def spanning_tree_column_basis(g: Graph) -> list:
    """Partitions whose blocks are connected in the BFS spanning tree of g (2^{n-1} of them)."""
    t = spanning_tree(g)
    return sorted({partition_from_edges(t, w) for w in product((0, 1), repeat=len(t.edges))})


def tree_basis_transform(g: Graph) -> tuple:
    """Möbius transform of A'' on the tree basis over subsets of tree edges.

    Column D (a set of tree edges) collects Σ_{C ⊇ D} (-1)^{|C|-|D|} A''(S, π_C), where
    π_C are the components of the tree with the edges of C removed.  The result is a
    0/1 matrix with one 1 per row and column: row S hits exactly the tree edges whose
    removal leaves both sides with an even number of points of S.
    Returns (even subsets, edge subsets, matrix).
    """
    t = spanning_tree(g)
    te = t.edges
    rows = [s for s in subset_rows(g.n) if len(s) % 2 == 0]
    edge_sets = [frozenset(c) for k in range(len(te) + 1) for c in combinations(te, k)]

    def pi_removed(cut):
        return partition_from_edges(t, [0 if e in cut else 1 for e in te])

    value = {c: None for c in edge_sets}
    mat = []
    for s in rows:
        for c in edge_sets:
            value[c] = only_even_blocks(s, pi_removed(c))
        mat.append([
            sum((-1) ** (len(c) - len(d)) * value[c] for c in edge_sets if d <= c)
            for d in edge_sets
        ])
    return rows, edge_sets, mat


def is_permutation_matrix(m) -> bool:
    if any(v not in (0, 1) for r in m for v in r):
        return False
    return all(sum(r) == 1 for r in m) and all(sum(c) == 1 for c in zip(*m))


def free_partition(g: Graph) -> SetPartition:
    """π[{i,j}] for the first non-tree edge of g, or the first non-adjacent pair if g is a tree."""
    tree_edges = set(spanning_tree(g).edges)
    for e in g.edges:
        if e not in tree_edges:
            return single_block_partition(e, g.n)
    adjacent = set(g.edges)
    for e in combinations(range(1, g.n + 1), 2):
        if e not in adjacent:
            return single_block_partition(e, g.n)
    raise NoSecondRepresentationError("no free column available")


def second_representation(g: Graph, x) -> tuple:
    """Two distinct color representations of ν_{G,x,1}: the random-cluster model and a perturbation.

    The tree-basis columns are solved for in terms of one extra column; moving that
    column by half the largest step keeping every coordinate nonnegative gives μ'.
    """
    if g.n < 3:
        raise NoSecondRepresentationError("graphs on fewer than three vertices have a unique representation")
    if not g.is_connected:
        raise ValidationError("graph must be connected")
    x = Fraction(x)
    if x <= 1:
        raise ValidationError("x must exceed 1")
    mu0 = rcm_for_ising(g, x)
    basis = spanning_tree_column_basis(g)
    if not is_permutation_matrix(tree_basis_transform(g)[2]):
        raise NoSecondRepresentationError("tree basis is not invertible")
    free = free_partition(g)
    rows = [s for s in subset_rows(g.n) if len(s) % 2 == 0]
    sub = [[Fraction(only_even_blocks(s, pi)) for pi in basis] for s in rows]
    rhs = [-Fraction(only_even_blocks(s, free)) for s in rows]
    d = solve_unique(sub, rhs)
    direction = dict(zip(basis, d))
    direction[free] = Fraction(1)
    ratios = [mu0[pi] / -v for pi, v in direction.items() if v < 0]
    step = min(ratios) / 2
    values = {pi: mu0[pi] for pi in mu0.support()}
    for pi, v in direction.items():
        values[pi] = values.get(pi, Fraction(0)) + step * v
    mu1 = PartitionMeasure(g.n, {pi: v for pi, v in values.items() if v != 0})
    return mu0, mu1


def supported_on_connected_blocks(g: Graph, mu: PartitionMeasure) -> bool:
    return all(blocks_connected(g, pi) for pi in mu.support())


# -- the formal solution for K_n ----------------------------------------------

def _denominator(p: Fraction, s: int) -> Fraction:
    d = p * (-(1 - p)) ** s + p**s * (1 - p)
    if d == 0:
        raise SingularParameterError(f"formal solution denominator vanishes at |S|={s}, p={p}")
    return d


def formal_solution_from_measure(nu: SpinMeasure) -> PartitionMeasure:
    """The formal solution written as a literal sum over subsets (any exchangeable ν)."""
    n = nu.n
    p = marginal_p(nu)
    ground = range(1, n + 1)
    zero = {s: zero_marginal(nu, s) for s in map(tuple, subsets(ground))}

    def inner(s):
        return sum(
            ((-(1 - p)) ** (len(s) - len(sp)) * zero[tuple(sp)] for sp in subsets(s)),
            Fraction(0),
        ) / _denominator(p, len(s))

    term = {s: inner(s) for s in zero if len(s) >= 2}
    values = {}
    for t in term:
        values[single_block_partition(t, n)] = sum(
            ((-1) ** (len(s) - len(t)) * v for s, v in term.items() if set(t) <= set(s)),
            Fraction(0),
        )
    values[single_block_partition((), n)] = 1 - sum(values.values(), Fraction(0))
    return PartitionMeasure(n, values)


def formal_solution_by_size(n: int, x, y) -> dict:
    """μ(π[T]) as a function of |T| on K_n, keyed by |T| (0 means π[∅])."""
    classes = complete_graph_class_weights(n, x, y)
    p = sum((Fraction(k, n) * w for k, w in enumerate(classes)), Fraction(0))
    # z[k] = ν(0^{[k]}), the chance that k fixed vertices are all 0
    z = [
        sum((w * comb(n - k, j) / comb(n, j) for j, w in enumerate(classes) if j <= n - k), Fraction(0))
        for k in range(n + 1)
    ]
    inner = {}
    for s in range(2, n + 1):
        g = sum((comb(s, k) * (-(1 - p)) ** (s - k) * z[k] for k in range(s + 1)), Fraction(0))
        inner[s] = g / _denominator(p, s)
    out = {}
    for t in range(2, n + 1):
        out[t] = sum(
            (comb(n - t, s - t) * (-1) ** (s - t) * inner[s] for s in range(t, n + 1)), Fraction(0)
        )
    out[0] = 1 - sum((comb(n, t) * out[t] for t in range(2, n + 1)), Fraction(0))
    return out


def formal_solution(n: int, x, y) -> PartitionMeasure:
    """The explicit signed solution of A_{n,p} μ = ν_{K_n,x,y} supported on the π[T]."""
    if n > 12:
        raise SizeLimitError("formal solution measures are built for n <= 12")
    sizes = formal_solution_by_size(n, x, y)
    values = {single_block_partition((), n): sizes[0]}
    for t in range(2, n + 1):
        for block in combinations(range(1, n + 1), t):
            values[single_block_partition(block, n)] = sizes[t]
    return PartitionMeasure(n, values)


def formal_solution_sign_profile(n: int, x, y) -> dict:
    """Smallest entry per block size |T| (0 for π[∅]) with its sign."""
    out = {}
    for t, v in sorted(formal_solution_by_size(n, x, y).items()):
        out[t] = {"min": v, "sign": "+" if v > 0 else "-" if v < 0 else "0"}
    return out


def check_formal_solution(n: int, x, y) -> bool:
    from .graphs import complete_graph

    return phi_p(formal_solution(n, x, y), marginal_p(ising_measure(complete_graph(n), x, y))) == ising_measure(
        complete_graph(n), x, y
    )
