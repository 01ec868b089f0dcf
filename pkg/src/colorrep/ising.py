"""Exact Ising distributions in the coordinates x = e^{2β}, y = e^{2h}.

The unnormalized weight of a configuration is ``x**agree * y**ones`` where
``agree`` counts edges with equal endpoint spins.  This differs from
``exp(β Σ ±1 + h Σ ±1)`` by a σ-independent factor only, so the normalized
measure is the Ising measure and every quantity stays rational.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from .errors import SizeLimitError, ValidationError
from .graphs import Graph, complete_graph


@dataclass(frozen=True)
class ModelParams:
    x: Fraction
    y: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if self.x <= 0 or self.y <= 0:
            raise ValidationError("x and y must be positive")

    @property
    def beta(self) -> float:
        """Lossy float conversion β = log(x) / 2."""
        return math.log(self.x) / 2

    @property
    def h(self) -> float:
        return math.log(self.y) / 2


class SpinMeasure:
    """A (possibly signed) measure on {0,1}^n stored as exact weights and a normalizer."""

    def __init__(self, n: int, weights: dict, normalizer=None):
        self.n = n
        self.weights = dict(weights)
        self.Z = sum(self.weights.values()) if normalizer is None else normalizer
        if self.Z == 0:
            raise ValidationError("spin measure has zero total weight")
        self.probs = {s: w / self.Z for s, w in self.weights.items()}

    def __getitem__(self, sigma) -> Fraction:
        return self.probs.get(tuple(sigma), Fraction(0))

    def items(self):
        return self.probs.items()

    def __eq__(self, other):
        if not isinstance(other, SpinMeasure) or self.n != other.n:
            return NotImplemented
        keys = set(self.probs) | set(other.probs)
        return all(self[k] == other[k] for k in keys)

    @property
    def is_probability(self) -> bool:
        return all(v >= 0 for v in self.probs.values()) and sum(self.probs.values()) == 1

    def to_json(self) -> dict:
        return {"".join(map(str, s)): str(v) for s, v in sorted(self.probs.items())}

    @classmethod
    def from_json(cls, data: dict) -> "SpinMeasure":
        probs = {tuple(int(c) for c in k): Fraction(v) for k, v in data.items()}
        n = len(next(iter(probs)))
        return cls(n, probs, normalizer=Fraction(1))


MAX_SPIN_N = 16


def all_spins(n: int):
    return product((0, 1), repeat=n)


def _params(x, y):
    p = x if isinstance(x, ModelParams) else ModelParams(x, y)
    return p.x, p.y


def ising_measure(g: Graph, x, y=1) -> SpinMeasure:
    """ν_{G,β,h} with x = e^{2β}, y = e^{2h}; ``x`` may also be a ModelParams."""
    x, y = _params(x, y)
    if g.n > MAX_SPIN_N:
        raise SizeLimitError(f"exact spin enumeration is limited to n <= {MAX_SPIN_N}")
    weights = {}
    for s in all_spins(g.n):
        agree = sum(1 for i, j in g.edges if s[i - 1] == s[j - 1])
        weights[s] = x**agree * y ** sum(s)
    return SpinMeasure(g.n, weights)


def cylinder(nu: SpinMeasure, ones: Iterable[int] = (), zeros: Iterable[int] = ()) -> Fraction:
    """ν(1^T 0^T'): probability that ``ones`` are all 1 and ``zeros`` all 0."""
    ones, zeros = tuple(ones), tuple(zeros)
    return sum(
        (v for s, v in nu.items()
         if all(s[i - 1] == 1 for i in ones) and all(s[i - 1] == 0 for i in zeros)),
        Fraction(0),
    )


def up_marginal(nu: SpinMeasure, subset: Iterable[int]) -> Fraction:
    """ν(1^T)."""
    return cylinder(nu, ones=subset)


def zero_marginal(nu: SpinMeasure, subset: Iterable[int]) -> Fraction:
    """ν(0^T)."""
    return cylinder(nu, zeros=subset)


def marginal_p(nu: SpinMeasure) -> Fraction:
    return up_marginal(nu, (1,))


def magnetization(sigma: Sequence[int]) -> int:
    return 2 * sum(sigma) - len(sigma)


def chi(sigma: Sequence[int], subset: Iterable[int]) -> int:
    """χ_S(σ) = Π_{i∈S} (-1)^{1(σ_i = 0)}."""
    zeros = sum(1 for i in subset if sigma[i - 1] == 0)
    return -1 if zeros % 2 else 1


def chi_sum(nu: SpinMeasure, subset: Iterable[int]) -> Fraction:
    subset = tuple(subset)
    return sum((chi(s, subset) * v for s, v in nu.items()), Fraction(0))


def weighted_chi_sum(nu: SpinMeasure, subset: Iterable[int]) -> Fraction:
    """Σ_σ (2‖σ‖ - n) χ_S(σ) ν(σ)."""
    subset = tuple(subset)
    return sum((magnetization(s) * chi(s, subset) * v for s, v in nu.items()), Fraction(0))


def magnetization_moment(nu: SpinMeasure, k: int) -> Fraction:
    """Σ_σ (2‖σ‖ - n)^k ν(σ)."""
    if k < 0:
        raise ValidationError("moment order must be nonnegative")
    return sum((magnetization(s) ** k * v for s, v in nu.items()), Fraction(0))


# -- complete graphs: aggregate over Hamming-weight classes -------------------

def complete_graph_class_weights(n: int, x, y=1) -> list:
    """Exact P(‖σ‖ = k), k = 0..n, for the Ising model on K_n."""
    x, y = _params(x, y)
    w = [comb(n, k) * x ** (comb(k, 2) + comb(n - k, 2)) * y**k for k in range(n + 1)]
    z = sum(w)
    return [v / z for v in w]


def complete_graph_class_weights_float(n: int, beta: float, h: float = 0.0) -> list:
    """Float P(‖σ‖ = k) for K_n, via log-sum-exp; for n far beyond exact reach."""
    logs = [
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        + 2 * beta * (comb(k, 2) + comb(n - k, 2)) + 2 * h * k
        for k in range(n + 1)
    ]
    top = max(logs)
    w = [math.exp(v - top) for v in logs]
    z = math.fsum(w)
    return [v / z for v in w]


def elementary_chi(n: int, k: int, m: int) -> int:
    """Σ_{|S|=m} χ_S(σ) for any σ with ‖σ‖ = k."""
    return sum((-1) ** i * comb(n - k, i) * comb(k, m - i) for i in range(0, min(m, n - k) + 1))


def class_moment(classes: Sequence, k: int):
    n = len(classes) - 1
    return sum(classes[j] * (2 * j - n) ** k for j in range(n + 1))


def class_chi_sum(classes: Sequence, m: int, weighted: bool = False):
    """Σ_σ [(2‖σ‖-n)] χ_{[m]}(σ) ν(σ) for an exchangeable ν given by its weight classes."""
    n = len(classes) - 1
    total = 0
    for j in range(n + 1):
        term = classes[j] * elementary_chi(n, j, m)
        if weighted:
            term *= 2 * j - n
        total += term
    return total / comb(n, m)


# -- derivative in p at h = 0 -------------------------------------------------

def dnu_dp(g: Graph, x) -> dict:
    """dν_{G,β,h}(σ)/dp_{G,β} at h = 0, for every σ.

    Uses (2‖σ‖-n) ν(σ) / Σ_{σ̂: σ̂_1 = 1} (2‖σ̂‖-n) ν(σ̂), which is valid for any
    graph; on vertex-transitive graphs it coincides with
    2n (2‖σ‖-n) ν(σ) / Σ (2‖σ̂‖-n)² ν(σ̂)  (see ``dnu_dp_transitive``).
    """
    nu = ising_measure(g, x, 1)
    denom = sum((magnetization(s) * v for s, v in nu.items() if s[0] == 1), Fraction(0))
    if denom == 0:
        raise ValidationError("dp/dh vanishes; derivative in p is undefined")
    return {s: magnetization(s) * v / denom for s, v in nu.items()}


def dnu_dp_at_h0(g: Graph, x, sigma: Sequence[int]) -> Fraction:
    return dnu_dp(g, x)[tuple(sigma)]


def dnu_dp_transitive(g: Graph, x) -> dict:
    nu = ising_measure(g, x, 1)
    m2 = magnetization_moment(nu, 2)
    if m2 == 0:
        raise ValidationError("second magnetization moment vanishes")
    return {s: 2 * g.n * magnetization(s) * v / m2 for s, v in nu.items()}


# -- identity checks ----------------------------------------------------------

def moment_identity_sides(n: int, x, y, m: int) -> tuple:
    """Both sides of the K_n identity expressing χ_{[m]}-sums through magnetization moments.

    For m = 1 the left side is n Σ (2‖σ‖-n) χ_{1}(σ) ν(σ).
    """
    if not 0 <= m <= 5 or m > n:
        raise ValidationError("need 0 <= m <= min(5, n)")
    nu = ising_measure(complete_graph(n), x, y)
    M = {k: magnetization_moment(nu, k) for k in (2, 4, 6)}
    ff = math.perm(n, m)
    subset = range(1, m + 1)
    if m % 2:
        lhs = ff * weighted_chi_sum(nu, subset)
    else:
        lhs = ff * chi_sum(nu, subset)
    rhs = {
        0: Fraction(1),
        1: M[2],
        2: M[2] - n,
        3: M[4] - (3 * n - 2) * M[2],
        4: M[4] - 2 * (3 * n - 4) * M[2] + 3 * (n * n - 2 * n),
        5: M[6] - 10 * (n - 2) * M[4] + (15 * n * n - 50 * n + 24) * M[2],
    }[m]
    return lhs, rhs


def moment_identity_check(n: int, x, y, m: int) -> bool:
    lhs, rhs = moment_identity_sides(n, x, y, m)
    return lhs == rhs


def subsets(items: Iterable[int]):
    items = tuple(items)
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def sum_conversion_sides(nu: SpinMeasure, subset: Iterable[int]) -> tuple:
    """Σ_{T⊆S} ν(1^T)(-2)^{|T|}  versus  Σ_{T⊆S} (-1)^{|T|} ν(1^T 0^{S∖T})."""
    s = tuple(subset)
    lhs = sum((up_marginal(nu, t) * (-2) ** len(t) for t in subsets(s)), Fraction(0))
    rhs = sum(
        ((-1) ** len(t) * cylinder(nu, t, [i for i in s if i not in t]) for t in subsets(s)),
        Fraction(0),
    )
    return lhs, rhs


def transitive_identity_sides(g: Graph, x, subset: Iterable[int]) -> dict:
    """Both sides of the two h = 0 alternating-sum identities for ν_{G,β,0}.

    Part (i):  Σ_{S'⊆S} (-2)^{|S'|} ν(1^{S'}) = (-1)^{|S|} Σ χ_S ν.
    Part (ii): Σ_{S'⊆S} (-2)^{|S'|-1} dν(1^{S'})/dp
               = n (-1)^{|S|+1} Σ (2‖σ‖-n) χ_S ν / Σ (2‖σ‖-n)² ν.
    Part (ii) uses the graph-agnostic derivative, so it holds when G is vertex transitive.
    """
    s = tuple(subset)
    nu = ising_measure(g, x, 1)
    d = dnu_dp(g, x)

    def d_up(t):
        return sum((v for sig, v in d.items() if all(sig[i - 1] == 1 for i in t)), Fraction(0))

    lhs1 = sum((Fraction(-2) ** len(t) * up_marginal(nu, t) for t in subsets(s)), Fraction(0))
    rhs1 = (-1) ** len(s) * chi_sum(nu, s)
    lhs2 = sum((Fraction(-2) ** (len(t) - 1) * d_up(t) for t in subsets(s)), Fraction(0))
    rhs2 = g.n * (-1) ** (len(s) + 1) * weighted_chi_sum(nu, s) / magnetization_moment(nu, 2)
    return {"i": (lhs1, rhs1), "ii": (lhs2, rhs2)}


def ising_probabilities_float(g: Graph, beta: float, h: float) -> dict:
    """Float ν_{G,β,h} straight from the exponential form (finite-difference oracle)."""
    w = {}
    for s in all_spins(g.n):
        e = sum(1 if s[i - 1] == s[j - 1] else -1 for i, j in g.edges)
        w[s] = math.exp(beta * e + h * (2 * sum(s) - g.n))
    z = math.fsum(w.values())
    return {s: v / z for s, v in w.items()}
