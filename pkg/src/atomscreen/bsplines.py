"""B-spline radial basis: knot generation, evaluation, quadrature.

The radial box [0, r_max] is partitioned into breakpoints carrying an
order-k clamped knot sequence. The first and last spline are dropped to
enforce zero boundary values, leaving ``n_splines - 2`` active functions.
Gauss-Legendre nodes on every breakpoint interval stay strictly interior,
so integrands singular at r = 0 are never sampled there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

__all__ = [
    "GridSpec",
    "PAPER_GRID",
    "KnotBasis",
    "QuadratureRule",
    "DesignTables",
    "Workspace",
    "make_knots",
    "eval_bspline",
    "make_quadrature",
    "design_tables",
    "build_workspace",
]

#: Fraction of the intervals a pure geometric progression would need to reach
#: r_max; fixes the growth ratio of the exp-linear grid (see make_knots).
_GEOMETRIC_BUDGET_FRACTION = 2.0 / 3.0


@dataclass(frozen=True)
class GridSpec:
    """Hashable bundle of every numerical-grid parameter."""

    n_splines: int = 600
    order_k: int = 10
    r_max: float = 200.0
    knot_kind: str = "exp-linear"
    r_first: float = 1e-4
    nodes_per_interval: int = 20


#: Default configuration used by all table reproduction runs.
PAPER_GRID = GridSpec()


@dataclass(frozen=True, eq=False)
class KnotBasis:
    """Clamped B-spline basis on [0, r_max].

    ``breakpoints`` are the distinct radii (first 0, last r_max);
    ``knots`` repeat both endpoints order_k times. Active basis functions
    are indices 1 .. n_splines - 2 (boundary splines trimmed).
    """

    order_k: int
    n_splines: int
    r_max: float
    breakpoints: np.ndarray
    knots: np.ndarray

    @property
    def n_intervals(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def active_range(self) -> range:
        return range(1, self.n_splines - 1)

    @property
    def n_active(self) -> int:
        return self.n_splines - 2


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Per-interval Gauss-Legendre nodes and weights, shape (n_intervals, nq)."""

    nodes: np.ndarray
    weights: np.ndarray
    nodes_per_interval: int


@dataclass(frozen=True, eq=False)
class DesignTables:
    """Nonzero spline values/derivatives at every quadrature node.

    ``values[iv, q, a]`` is spline ``iv + a`` evaluated at node q of
    interval iv (only order_k splines are nonzero per interval).
    """

    values: np.ndarray
    derivs: np.ndarray


@dataclass(frozen=True, eq=False)
class Workspace:
    """One fully built grid: basis, quadrature and design tables."""

    grid: GridSpec
    basis: KnotBasis
    quad: QuadratureRule
    tables: DesignTables


def _geometric_ratio(r_first: float, r_max: float, steps: int) -> float:
    """Ratio q > 1 with r_first * (q^steps - 1)/(q - 1) = r_max (bisection)."""

    def total(q: float) -> float:
        return r_first * (q**steps - 1.0) / (q - 1.0)

    lo, hi = 1.0 + 1e-12, 2.0
    while total(hi) < r_max:
        hi *= 2.0
        if hi > 1e9:
            raise ValueError("geometric knot ratio diverged; r_first too large")
    if total(lo) >= r_max:
        raise ValueError(
            "degenerate exp-linear grid: r_first too large for the requested box"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if total(mid) < r_max:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _exp_linear_breakpoints(r_max: float, n_intervals: int, r_first: float) -> np.ndarray:
    """Geometric spacing from r_first, switching to a uniform tail.

    Spacings grow by a fixed ratio q until the next geometric step would
    reach the spacing needed to fill the remaining intervals uniformly; the
    grid then continues linearly and lands exactly on r_max. q is set so a
    pure geometric run would use ~2/3 of the intervals, which makes the
    switch-over smooth.
    """
    budget = max(2, int(np.ceil(_GEOMETRIC_BUDGET_FRACTION * n_intervals)))
    q = _geometric_ratio(r_first, r_max, budget)
    points = [0.0, r_first]
    step = r_first
    while len(points) < n_intervals + 1:
        remaining = n_intervals + 1 - len(points)
        uniform = (r_max - points[-1]) / remaining
        if q * step >= uniform or remaining == 1:
            points.extend(np.linspace(points[-1], r_max, remaining + 1)[1:].tolist())
            break
        step *= q
        points.append(points[-1] + step)
    return np.asarray(points)


def make_knots(
    r_max: float,
    n_splines: int,
    order_k: int,
    kind: str = "exp-linear",
    r_first: float = 1e-4,
) -> KnotBasis:
    """Build the clamped knot sequence for the radial box.

    Parameters
    ----------
    r_max : box radius in bohr.
    n_splines : total spline count before boundary trimming.
    order_k : spline order (polynomial degree + 1), 2 <= order_k <= 15.
    kind : "exp-linear" (dense near the origin, uniform tail) or "linear".
    r_first : first nonzero breakpoint for the exp-linear grid.
    """
    if not 2 <= order_k <= 15:
        raise ValueError("order_k must lie in [2, 15]")
    if n_splines <= 2 * order_k:
        raise ValueError("n_splines must exceed 2 * order_k")
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    n_breakpoints = n_splines - order_k + 2
    n_intervals = n_breakpoints - 1
    if kind == "linear":
        breakpoints = np.linspace(0.0, r_max, n_breakpoints)
    elif kind == "exp-linear":
        if not 0 < r_first < r_max:
            raise ValueError("r_first must lie in (0, r_max)")
        breakpoints = _exp_linear_breakpoints(r_max, n_intervals, r_first)
    else:
        raise ValueError(f"unknown knot kind: {kind!r}")
    if not np.all(np.diff(breakpoints) > 0):
        raise ValueError("degenerate grid: breakpoints are not strictly increasing")
    knots = np.concatenate(
        [
            np.zeros(order_k - 1),
            breakpoints,
            np.full(order_k - 1, r_max),
        ]
    )
    return KnotBasis(
        order_k=order_k,
        n_splines=n_splines,
        r_max=r_max,
        breakpoints=breakpoints,
        knots=knots,
    )


def _nonzero_values(t: np.ndarray, k: int, span: int, x: np.ndarray) -> np.ndarray:
    """Values of the k splines that are nonzero on knot span ``span``.

    Cox-de Boor triangular recursion, vectorised over the points x (which
    must all lie inside the span). Column a holds spline span - k + 1 + a.
    """
    values = np.ones((x.shape[0], 1))
    for j in range(1, k):
        d_right = t[span + 1 : span + j + 1][None, :] - x[:, None]
        d_left = x[:, None] - t[span - j + 1 : span + 1][None, ::-1]
        step = np.zeros((x.shape[0], j + 1))
        carry = np.zeros(x.shape[0])
        for i in range(j):
            term = values[:, i] / (d_right[:, i] + d_left[:, j - 1 - i])
            step[:, i] = carry + d_right[:, i] * term
            carry = d_left[:, j - 1 - i] * term
        step[:, j] = carry
        values = step
    return values


def _values_and_derivs(
    t: np.ndarray, k: int, span: int, x: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Values and first derivatives of the nonzero splines on one span."""
    values = _nonzero_values(t, k, span, x)
    derivs = np.zeros_like(values)
    if k == 1:
        return values, derivs
    lower = _nonzero_values(t, k - 1, span, x)
    for a in range(k):
        p = span - k + 1 + a
        acc = np.zeros(x.shape[0])
        width = t[p + k - 1] - t[p]
        if a >= 1 and width > 0:
            acc += lower[:, a - 1] / width
        width = t[p + k] - t[p + 1]
        if a <= k - 2 and width > 0:
            acc -= lower[:, a] / width
        derivs[:, a] = (k - 1) * acc
    return values, derivs


def _find_interval(basis: KnotBasis, r: float) -> int:
    iv = int(np.searchsorted(basis.breakpoints, r, side="right")) - 1
    return min(max(iv, 0), basis.n_intervals - 1)


def eval_bspline(basis: KnotBasis, index: int, r: float, derivative_order: int = 0) -> float:
    """Evaluate one basis function (or its first derivative) at radius r."""
    if not 0 <= index < basis.n_splines:
        raise ValueError(f"spline index {index} out of range")
    if not 0 <= r <= basis.r_max:
        raise ValueError(f"radius {r} outside [0, {basis.r_max}]")
    if derivative_order not in (0, 1):
        raise ValueError("derivative_order must be 0 or 1")
    k = basis.order_k
    span = k - 1 + _find_interval(basis, r)
    first = span - k + 1
    if not first <= index <= span:
        return 0.0
    x = np.array([float(r)])
    if derivative_order == 0:
        row = _nonzero_values(basis.knots, k, span, x)
    else:
        row = _values_and_derivs(basis.knots, k, span, x)[1]
    return float(row[0, index - first])


@lru_cache(maxsize=32)
def _legendre_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(n)
    return x, w


def make_quadrature(basis: KnotBasis, nodes_per_interval: int) -> QuadratureRule:
    """Gauss-Legendre rule mapped onto every breakpoint interval."""
    if nodes_per_interval < 1:
        raise ValueError("nodes_per_interval must be >= 1")
    x, w = _legendre_rule(nodes_per_interval)
    bp = basis.breakpoints
    mid = 0.5 * (bp[1:] + bp[:-1])
    half = 0.5 * (bp[1:] - bp[:-1])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return QuadratureRule(
        nodes=nodes, weights=weights, nodes_per_interval=nodes_per_interval
    )


def design_tables(basis: KnotBasis, quad: QuadratureRule) -> DesignTables:
    """Tabulate the nonzero splines and derivatives at all quadrature nodes."""
    if quad.nodes.shape[0] != basis.n_intervals:
        raise ValueError("quadrature rule does not match the basis intervals")
    k = basis.order_k
    n_iv, nq = quad.nodes.shape
    values = np.empty((n_iv, nq, k))
    derivs = np.empty((n_iv, nq, k))
    for iv in range(n_iv):
        span = k - 1 + iv
        values[iv], derivs[iv] = _values_and_derivs(basis.knots, k, span, quad.nodes[iv])
    return DesignTables(values=values, derivs=derivs)


@lru_cache(maxsize=16)
def build_workspace(grid: GridSpec = PAPER_GRID) -> Workspace:
    """Build (and memoise) the basis, quadrature and tables for one grid."""
    basis = make_knots(
        r_max=grid.r_max,
        n_splines=grid.n_splines,
        order_k=grid.order_k,
        kind=grid.knot_kind,
        r_first=grid.r_first,
    )
    quad = make_quadrature(basis, grid.nodes_per_interval)
    tables = design_tables(basis, quad)
    return Workspace(grid=grid, basis=basis, quad=quad, tables=tables)
