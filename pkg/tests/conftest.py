"""Shared helpers: independent brute-force oracles for the numerical tests."""

from __future__ import annotations

import numpy as np

from atomscreen.bsplines import KnotBasis, QuadratureRule, eval_bspline
from atomscreen.operators import OperatorPair
from atomscreen.model import Pseudopotential, AtomSpec


def dense_to_band(dense: np.ndarray, bandwidth: int) -> np.ndarray:
    """Pack a symmetric dense matrix into upper-banded storage."""
    n = dense.shape[0]
    band = np.zeros((bandwidth + 1, n))
    for d in range(bandwidth + 1):
        band[bandwidth - d, d:] = np.diag(dense, d)
    return band


def random_banded_pair(rng: np.random.Generator, dim: int, bandwidth: int) -> OperatorPair:
    """Random symmetric banded H and banded SPD S (via banded Cholesky factor)."""
    h_dense = rng.standard_normal((dim, dim))
    h_dense = h_dense + h_dense.T
    h_dense = np.triu(np.tril(h_dense, bandwidth), -bandwidth)
    factor = np.tril(rng.standard_normal((dim, dim)), 0)
    factor = np.triu(factor, -bandwidth)
    factor[np.arange(dim), np.arange(dim)] = rng.uniform(1.0, 2.0, dim)
    s_dense = factor @ factor.T
    atom = AtomSpec("He", 2, 2, 1, 0, 2, ((1, 0, 2),))
    return OperatorPair(
        h_band=dense_to_band(h_dense, bandwidth),
        s_band=dense_to_band(s_dense, bandwidth),
        dimension=dim,
        bandwidth=bandwidth,
        channel_l=0,
        model=Pseudopotential.BARE_COULOMB,
        atom=atom,
    )


def brute_force_matrix(
    basis: KnotBasis, quad: QuadratureRule, weight_of_r, derivative: bool = False
) -> np.ndarray:
    """Dense Galerkin matrix built point by point from eval_bspline.

    Deliberately slow and independent of the design-table assembly path:
    every value comes from a separate de Boor evaluation at each node.
    """
    n_active = basis.n_active
    order = 1 if derivative else 0
    radii = quad.nodes.ravel()
    weights = quad.weights.ravel() * weight_of_r(radii)
    table = np.zeros((len(radii), n_active))
    for j, global_index in enumerate(basis.active_range):
        table[:, j] = [eval_bspline(basis, global_index, r, order) for r in radii]
    return table.T @ (weights[:, None] * table)
