"""Closed forms for K_3, K_4 and K_5 and feasibility scans over (x, y) grids."""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SizeLimitError, ValidationError
from .graphs import complete_graph
from .ising import ising_measure
from .partitions import SetPartition
from .rcm import PartitionMeasure

DEFAULT_MAX_CELLS = 10_000
GRID_BOUNDS = (Fraction(1), Fraction(16))

# (coefficient, power of x, power of y)
K4_TERMS = [
    (1, 5, 0), (3, 2, 1), (4, 1, 2), (-2, 3, 2), (1, 5, 2), (-3, 0, 3), (7, 2, 3),
    (-1, 4, 3), (-1, 6, 3), (4, 1, 4), (-2, 3, 4), (1, 5, 4), (3, 2, 5), (1, 5, 6),
]

K5_TERMS = [
    (-1, 18, 10), (-1, 18, 8), (1, 18, 7), (-1, 18, 6), (-1, 18, 4),
    (1, 16, 14), (1, 16, 12), (1, 16, 9), (3, 16, 8), (2, 16, 7), (3, 16, 6), (1, 16, 5),
    (1, 16, 2), (1, 16, 0),
    (-3, 14, 11), (-1, 14, 10), (-12, 14, 9), (6, 14, 8), (-11, 14, 7), (6, 14, 6),
    (-12, 14, 5), (-1, 14, 4), (-3, 14, 3),
    (9, 12, 13), (-3, 12, 12), (6, 12, 11), (7, 12, 10), (15, 12, 9), (-4, 12, 8),
    (18, 12, 7), (-4, 12, 6), (15, 12, 5), (7, 12, 4), (6, 12, 3), (-3, 12, 2), (9, 12, 1),
    (19, 10, 12), (27, 10, 11), (14, 10, 10), (36, 10, 9), (-21, 10, 8), (45, 10, 7),
    (-21, 10, 6), (36, 10, 5), (14, 10, 4), (27, 10, 3), (19, 10, 2),
    (20, 8, 12), (-18, 8, 11), (15, 8, 10), (-11, 8, 9), (50, 8, 8), (-102, 8, 7),
    (50, 8, 6), (-11, 8, 5), (15, 8, 4), (-18, 8, 3), (20, 8, 2),
    (82, 6, 11), (83, 6, 10), (76, 6, 9), (178, 6, 8), (197, 6, 7), (178, 6, 6),
    (76, 6, 5), (83, 6, 4), (82, 6, 3),
    (54, 4, 10), (226, 4, 9), (152, 4, 8), (386, 4, 7), (152, 4, 6), (226, 4, 5), (54, 4, 4),
    (-84, 2, 9), (12, 2, 8), (-156, 2, 7), (12, 2, 6), (-84, 2, 5),
    (-72, 0, 8), (-56, 0, 7), (-72, 0, 6),
]


def _poly(terms, x, y) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    return sum((c * x**i * y**j for c, i, j in terms), Fraction(0))


def k4_polynomial(x, y) -> Fraction:
    """Left side of the K_4 criterion; a representation exists iff this is >= 0."""
    return _poly(K4_TERMS, x, y)


def k5_polynomial(x, y) -> Fraction:
    """Left side of the K_5 criterion; a representation exists iff this is >= 0."""
    return _poly(K5_TERMS, x, y)


def k3_closed_form(x, y) -> PartitionMeasure:
    """The unique color representation of ν_{K_3,x,y}."""
    x, y = Fraction(x), Fraction(y)
    if x <= 0 or y <= 0:
        raise ValidationError("x and y must be positive")
    x2 = x * x
    d = (x2 + 2 * y + y * y) * (x2 * y * y + 2 * y + 1) * (x2 + x2 * y + x2 * y * y + y)
    common = x2 - x2 * y + x2 * y * y + 3 * y
    full = (x2 - 1) ** 2 * y * y * (x2 + x2 * y + x2 * y * y + 5 * y + 2 * y * y + 2) / d
    pair = (x2 - 1) * y * (y + 1) ** 2 * common / d
    single = (y + 1) ** 2 * common**2 / d
    return PartitionMeasure(3, {
        SetPartition.parse("1,2,3"): full,
        SetPartition.parse("1,2|3"): pair,
        SetPartition.parse("1,3|2"): pair,
        SetPartition.parse("1|2,3"): pair,
        SetPartition.parse("1|2|3"): single,
    })


def k3_limit_vs_rcm(x) -> tuple:
    """(h -> 0 limit of the singleton mass, random-cluster singleton mass) on K_3."""
    x = Fraction(x)
    if x <= 1:
        raise ValidationError("x must exceed 1")
    return 4 / (1 + 3 * x * x), 4 / (x * (3 + x * x))


def sign(v) -> str:
    return "+" if v > 0 else "-" if v < 0 else "0"


# -- region scans -----------------------------------------------------------------

def parse_range(text: str) -> tuple:
    """``"1..8"`` -> (Fraction(1), Fraction(8))."""
    try:
        lo, hi = text.split("..")
        return Fraction(lo), Fraction(hi)
    except ValueError as exc:
        raise ValidationError(f"range must look like lo..hi, got {text!r}") from exc


def axis(lo, hi, step) -> list:
    """lo + step, lo + 2 step, ... up to hi (the lower end is excluded)."""
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    if step <= 0 or hi <= lo:
        raise ValidationError("need hi > lo and a positive step")
    out = []
    v = lo + step
    while v <= hi:
        out.append(v)
        v += step
    return out


@dataclass
class RegionGrid:
    x_range: tuple
    y_range: tuple
    step: Fraction
    model: str = "K4"
    cells: list = field(default_factory=list)

    @property
    def xs(self) -> list:
        return axis(*self.x_range, self.step)

    @property
    def ys(self) -> list:
        return axis(*self.y_range, self.step)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["x", "y", "sign", "feasible"])
        for c in self.cells:
            w.writerow([str(c["x"]), str(c["y"]), c["sign"], int(c["feasible"])])
        return buf.getvalue()


def max_cells() -> int:
    return int(os.environ.get("COLORREP_MAX_CELLS", DEFAULT_MAX_CELLS))


def region_scan(which: str, grid: RegionGrid) -> RegionGrid:
    """Fill ``grid.cells`` row-major (y outer, x inner).

    ``K4``/``K5`` use the polynomial sign only; ``LP-K4``/``LP-K5`` decide each cell
    with the exact solver (full system for K_4, shape-reduced for K_5) and also
    record the polynomial sign.
    """
    from .solver import has_color_representation

    if which not in ("K4", "K5", "LP-K4", "LP-K5"):
        raise ValidationError(f"unknown model {which!r}")
    lo, hi = GRID_BOUNDS
    if any(not (lo <= a < b <= hi) for a, b in (grid.x_range, grid.y_range)):
        raise ValidationError(f"grid ranges must lie within ({lo}, {hi}]")
    xs, ys = grid.xs, grid.ys
    if which.startswith("LP") and len(xs) * len(ys) > max_cells():
        raise SizeLimitError(f"{len(xs) * len(ys)} cells exceed the limit of {max_cells()}")
    n = 4 if which.endswith("K4") else 5
    poly = k4_polynomial if n == 4 else k5_polynomial
    grid.model = which
    grid.cells = []
    for y in ys:
        for x in xs:
            s = sign(poly(x, y))
            if which.startswith("LP"):
                nu = ising_measure(complete_graph(n), x, y)
                feasible = has_color_representation(nu, reduced=(n == 5)).feasible
            else:
                feasible = s != "-"
            grid.cells.append({"x": x, "y": y, "sign": s, "feasible": feasible})
    return grid


def rcm_satisfies_limit_system(x) -> bool:
    """Whether μ_{K_4,1-1/x,2} solves the h -> 0 limiting system of ν_{K_4,x,1}."""
    from .limits import limiting_system_reduced
    from .rcm import rcm_for_ising

    g = complete_graph(4)
    return limiting_system_reduced(g, x).is_satisfied_by(rcm_for_ising(g, x))
