"""Random-cluster measures, Bernoulli edge measures and the rcm-limit necessary condition."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Callable, Iterable

from .errors import SizeLimitError, ValidationError
from .graphs import Graph, complete_graph
from .partitions import (
    SetPartition,
    odd_block,
    odd_block_indicator,
    partition_from_edges,
)

MAX_RCM_EDGES = 24


class PartitionMeasure:
    """A signed measure on set partitions of [n] with exact rational masses."""

    def __init__(self, n: int, values: dict | None = None):
        self.n = n
        self.values = {}
        for pi, v in (values or {}).items():
            if pi.ground != tuple(range(1, n + 1)):
                raise ValidationError(f"{pi} is not a partition of [{n}]")
            self.values[pi] = Fraction(v)

    def __getitem__(self, pi: SetPartition) -> Fraction:
        return self.values.get(pi, Fraction(0))

    def items(self):
        return self.values.items()

    def support(self) -> list:
        return [pi for pi, v in self.values.items() if v != 0]

    def total(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    @property
    def is_probability(self) -> bool:
        return all(v >= 0 for v in self.values.values()) and self.total() == 1

    def __eq__(self, other):
        if not isinstance(other, PartitionMeasure) or self.n != other.n:
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return all(self[k] == other[k] for k in keys)

    def __add__(self, other: "PartitionMeasure") -> "PartitionMeasure":
        keys = set(self.values) | set(other.values)
        return PartitionMeasure(self.n, {k: self[k] + other[k] for k in keys})

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "PartitionMeasure":
        return PartitionMeasure(self.n, {k: c * v for k, v in self.values.items()})

    def __repr__(self):
        body = ", ".join(f"{pi}: {v}" for pi, v in sorted(self.values.items()))
        return f"PartitionMeasure(n={self.n}, {{{body}}})"

    def to_json(self) -> dict:
        return {str(pi): str(v) for pi, v in sorted(self.values.items())}

    @classmethod
    def from_json(cls, n: int, data: dict) -> "PartitionMeasure":
        return cls(n, {SetPartition.parse(k): Fraction(v) for k, v in data.items()})


def blocks_connected(g: Graph, pi: SetPartition) -> bool:
    """True iff every block of ``pi`` induces a connected subgraph of ``g``."""
    for b in pi.blocks:
        inside = set(b)
        seen = {b[0]}
        stack = [b[0]]
        while stack:
            v = stack.pop()
            for u in g.adjacency[v]:
                if u in inside and u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(b):
            return False
    return True


@lru_cache(maxsize=32)
def edge_configuration_counts(g: Graph) -> dict:
    """Counter of (open-edge count, induced partition) over all w in {0,1}^E."""
    if len(g.edges) > MAX_RCM_EDGES:
        raise SizeLimitError(f"{len(g.edges)} edges exceed the enumeration guard of {MAX_RCM_EDGES}")
    counts = Counter()
    for w in product((0, 1), repeat=len(g.edges)):
        counts[(sum(w), partition_from_edges(g, w))] += 1
    return dict(counts)


def _check_r(r) -> Fraction:
    r = Fraction(r)
    if not 0 < r < 1:
        raise ValidationError("edge parameter must lie in (0, 1)")
    return r


def rcm_weights(g: Graph, r, q) -> dict:
    """Unnormalized random-cluster weights Z' μ_{G,r,q}(π)."""
    r, q = _check_r(r), Fraction(q)
    if q < 0:
        raise ValidationError("q must be nonnegative")
    m = len(g.edges)
    out: dict = {}
    for (k, pi), c in edge_configuration_counts(g).items():
        out[pi] = out.get(pi, Fraction(0)) + c * r**k * (1 - r) ** (m - k) * q**pi.block_count
    return out


def rcm_measure(g: Graph, r, q=2) -> PartitionMeasure:
    """μ_{G,r,q} computed by summing over every edge configuration."""
    w = rcm_weights(g, r, q)
    z = sum(w.values())
    return PartitionMeasure(g.n, {pi: v / z for pi, v in w.items()})


def rcm_for_ising(g: Graph, x) -> PartitionMeasure:
    """The random-cluster model coupled to ν_{G,β,0}: r = 1 - e^{-2β} = 1 - 1/x, q = 2."""
    x = Fraction(x)
    if x <= 1:
        raise ValidationError("coupling needs x > 1 (β > 0)")
    return rcm_measure(g, 1 - 1 / x, 2)


def bernoulli_pushforward(g: Graph, r) -> PartitionMeasure:
    """Law of π[w] for independent Bernoulli(r) edges (the q = 1 case, computed directly)."""
    r = _check_r(r)
    m = len(g.edges)
    out: dict = {}
    for w in product((0, 1), repeat=m):
        k = sum(w)
        pi = partition_from_edges(g, w)
        out[pi] = out.get(pi, Fraction(0)) + r**k * (1 - r) ** (m - k)
    return PartitionMeasure(g.n, out)


def coupling_check(g: Graph, x) -> bool:
    """Φ_{1/2}(μ_{G,1-1/x,2}) == ν_{G,x,1} exactly."""
    from .colorop import phi_p
    from .ising import ising_measure

    return phi_p(rcm_for_ising(g, x), Fraction(1, 2)) == ising_measure(g, x, 1)


# -- the rcm-limit necessary condition ---------------------------------------

def necessary_condition_sides(mu: PartitionMeasure, subset: Iterable[int]) -> tuple:
    """Both sides of  n Σ A(S,π)|T_{S,π}| μ(π) = [Σ_i Σ_π |T_{{i},π}| μ(π)] · [Σ_π A(S,π) μ(π)]."""
    s = tuple(subset)
    if len(s) % 2 == 0:
        raise ValidationError("the necessary condition is stated for odd |S|")
    n = mu.n
    weighted = Fraction(0)
    plain = Fraction(0)
    sizes = Fraction(0)
    for pi, v in mu.items():
        if odd_block_indicator(s, pi):
            plain += v
            weighted += len(odd_block(s, pi)) * v
        sizes += sum(len(b) ** 2 for b in pi.blocks) * v
    return n * weighted, sizes * plain


def necessary_condition_residual(g: Graph, r, subset: Iterable[int]) -> Fraction:
    """LHS - RHS of the necessary condition evaluated at μ = μ_{G,r,2}."""
    lhs, rhs = necessary_condition_sides(rcm_measure(g, r, 2), subset)
    return lhs - rhs


# -- exact polynomials in r̂ -----------------------------------------------------

def poly_add(a: list, b: list) -> list:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return out


def poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


def poly_eval(a: list, t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


def bernoulli_monomial(k: int, m: int) -> list:
    """Coefficients of t^k (1-t)^(m-k)."""
    return [Fraction(0)] * k + [Fraction((-1) ** j * comb(m - k, j)) for j in range(m - k + 1)]


@dataclass(frozen=True)
class EdgeMeasure:
    """Weights t^{‖w‖}(1-t)^{|E|-‖w‖} q^{‖π[w]‖} on {0,1}^E.

    The Bernoulli-translated measure used for the rcm-limit series takes no
    cluster factor, which is ``q = 1`` here.
    """

    graph: Graph
    t: Fraction
    q: Fraction = Fraction(1)

    def weight(self, w) -> Fraction:
        k = sum(w)
        m = len(self.graph.edges)
        return (Fraction(self.t) ** k * (1 - Fraction(self.t)) ** (m - k)
                * Fraction(self.q) ** partition_from_edges(self.graph, w).block_count)

    def expectation(self, f: Callable[[SetPartition], object]) -> Fraction:
        m = len(self.graph.edges)
        t, q = Fraction(self.t), Fraction(self.q)
        return sum(
            (c * t**k * (1 - t) ** (m - k) * q**pi.block_count * f(pi)
             for (k, pi), c in edge_configuration_counts(self.graph).items()),
            Fraction(0),
        )


def edge_series(g: Graph, f: Callable[[SetPartition], object]) -> list:
    """Σ_w f(π[w]) t^{‖w‖}(1-t)^{|E|-‖w‖} as an exact polynomial in t."""
    m = len(g.edges)
    poly: list = []
    by_k: dict = {}
    for (k, pi), c in edge_configuration_counts(g).items():
        val = f(pi)
        if val:
            by_k[k] = by_k.get(k, 0) + c * val
    for k, coeff in by_k.items():
        poly = poly_add(poly, [coeff * v for v in bernoulli_monomial(k, m)])
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


SERIES_KINDS = ("A_weighted", "A_plain", "singleton_sizes", "vertex_one_size")


def bernoulli_series_coefficients(n: int, subset: Iterable[int] = (1, 2, 3), which: str = "A_weighted") -> list:
    """Exact polynomial in r̂ for one bracketed Bernoulli-percolation sum on K_n.

    ``A_weighted``:      Σ_w A(S,π[w]) (|T_{S,π[w]}| - 1) μ̂(w)
    ``A_plain``:         Σ_w A(S,π[w]) μ̂(w)
    ``singleton_sizes``: Σ_i Σ_w (|T_{{i},π[w]}| - 1) μ̂(w)
    ``vertex_one_size``: Σ_w (|T_{{1},π[w]}| - 1) μ̂(w)
    """
    if not 4 <= n <= 6:
        raise SizeLimitError("series coefficients are computed for 4 <= n <= 6")
    s = tuple(subset)
    if which == "A_weighted":
        def f(pi):
            return len(odd_block(s, pi)) - 1 if odd_block_indicator(s, pi) else 0
    elif which == "A_plain":
        def f(pi):
            return odd_block_indicator(s, pi)
    elif which == "singleton_sizes":
        def f(pi):
            return sum(len(b) * (len(b) - 1) for b in pi.blocks)
    elif which == "vertex_one_size":
        def f(pi):
            return len(pi.block_of(1)) - 1
    else:
        raise ValidationError(f"unknown series {which!r}; choose from {SERIES_KINDS}")
    return edge_series(complete_graph(n), f)


def rhat(r) -> Fraction:
    r = Fraction(r)
    return r / (2 - r)


NAMED_FUNCTIONALS = {
    "one": lambda s: (lambda pi: 1),
    "blocks": lambda s: (lambda pi: pi.block_count),
    "A": lambda s: (lambda pi: odd_block_indicator(s, pi)),
    "A_weighted": lambda s: (lambda pi: len(odd_block(s, pi)) if odd_block_indicator(s, pi) else 0),
}


def bernoulli_translation_sides(g: Graph, r, f: Callable[[SetPartition], object]) -> dict:
    """Exact forms of the translation from μ_{G,r,2} to Bernoulli(r̂) percolation.

    ``start``:  Z' Σ_π f(π) μ(π)  vs  Σ_w r^{‖w‖}(1-r)^{|E|-‖w‖} 2^{‖π[w]‖} f(π[w])
    ``cyclic``: the same quantity vs
        (1-r)^{|E|} 2^{|V|} (1-r̂)^{-|E|} Σ_w r̂^{‖w‖}(1-r̂)^{|E|-‖w‖} 2^{c(w)} f(π[w]),
        where c(w) = ‖w‖ - |V| + ‖π[w]‖ is the cycle rank of (V, E_w).
    ``remainder``: the part of the cyclic sum dropped when 2^{c(w)} is replaced
        by 1 + 1(c(w) > 0); it only involves configurations with two or more
        independent cycles.
    """
    r = _check_r(r)
    t = rhat(r)
    m, nv = len(g.edges), g.n
    weights = rcm_weights(g, r, 2)
    z = sum(weights.values())
    mu_sum = sum((f(pi) * v / z for pi, v in weights.items()), Fraction(0))
    direct = Fraction(0)
    cyclic = Fraction(0)
    truncated = Fraction(0)
    for (k, pi), c in edge_configuration_counts(g).items():
        fv = f(pi)
        direct += c * r**k * (1 - r) ** (m - k) * 2**pi.block_count * fv
        cyc = k - nv + pi.block_count
        base = c * t**k * (1 - t) ** (m - k) * fv
        cyclic += base * 2**cyc
        truncated += base * (1 + (1 if cyc > 0 else 0))
    pref = (1 - r) ** m * 2**nv / (1 - t) ** m
    return {
        "start": (z * mu_sum, direct),
        "cyclic": (z * mu_sum, pref * cyclic),
        "remainder": pref * (cyclic - truncated),
    }


def bernoulli_translation_check(g: Graph, r, f="one", subset: Iterable[int] = (1, 2, 3)) -> bool:
    if isinstance(f, str):
        f = NAMED_FUNCTIONALS[f](tuple(subset))
    sides = bernoulli_translation_sides(g, r, f)
    return sides["start"][0] == sides["start"][1] and sides["cyclic"][0] == sides["cyclic"][1]
