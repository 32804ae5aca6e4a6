"""Galerkin assembly of the radial Hamiltonian/overlap pair for one channel.

The reduced radial problem for angular momentum l is

    H[i,j] = 1/2 * int B_i' B_j' dr + int B_i B_j (l(l+1)/(2 r^2) + V(r)) dr
    S[i,j] = int B_i B_j dr

with the kinetic term integrated by parts (boundary terms vanish because the
boundary splines are trimmed). Matrices are stored in symmetric upper-banded
layout, ``band[bw - d, j] = A[j - d, j]`` with bandwidth bw = order_k - 1,
the same convention scipy's banded routines use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .bsplines import DesignTables, KnotBasis, QuadratureRule, design_tables
from .model import AtomSpec, Pseudopotential, potential_value

__all__ = [
    "OperatorPair",
    "assemble",
    "band_profile",
    "band_to_dense",
    "band_matvec",
    "dump_banded",
    "load_banded_dump",
]


@dataclass(frozen=True, eq=False)
class OperatorPair:
    """Banded Hamiltonian and overlap for one (atom, l, model) channel."""

    h_band: np.ndarray
    s_band: np.ndarray
    dimension: int
    bandwidth: int
    channel_l: int
    model: Pseudopotential
    atom: AtomSpec


def _scatter_band(local: np.ndarray, n_splines: int, order_k: int) -> np.ndarray:
    """Accumulate per-interval k-by-k blocks into the trimmed upper band.

    Local block (iv, a, b) couples global splines iv+a and iv+b; active
    (trimmed) indices are the global ones shifted down by one, with the
    first and last spline discarded.
    """
    n_iv = local.shape[0]
    dim = n_splines - 2
    bw = order_k - 1
    band = np.zeros((order_k, dim))
    for a in range(order_k):
        for d in range(order_k - a):
            b = a + d
            lo = max(0, 1 - a)
            hi = min(n_iv - 1, n_splines - 2 - b)
            if hi < lo:
                continue
            band[bw - d, lo + b - 1 : hi + b] += local[lo : hi + 1, a, b]
    return band


def assemble(
    basis: KnotBasis,
    quad: QuadratureRule,
    atom: AtomSpec,
    l: int,
    model: Pseudopotential,
    tables: DesignTables | None = None,
) -> OperatorPair:
    """Assemble the banded (H, S) pair for one angular-momentum channel."""
    if l < 0:
        raise ValueError("l must be non-negative")
    if quad.nodes.shape[0] != basis.n_intervals:
        raise ValueError("quadrature rule does not match the basis")
    if tables is None:
        tables = design_tables(basis, quad)
    if tables.values.shape != (basis.n_intervals, quad.nodes.shape[1], basis.order_k):
        raise ValueError("design tables do not match basis and quadrature")

    r = quad.nodes
    w = quad.weights
    v = potential_value(model, r, atom, l)
    if l > 0:
        v = v + l * (l + 1) / (2.0 * r * r)
    wv = w * v

    vals, ders = tables.values, tables.derivs
    h_local = 0.5 * np.einsum("xq,xqa,xqb->xab", w, ders, ders)
    h_local += np.einsum("xq,xqa,xqb->xab", wv, vals, vals)
    s_local = np.einsum("xq,xqa,xqb->xab", w, vals, vals)

    return OperatorPair(
        h_band=_scatter_band(h_local, basis.n_splines, basis.order_k),
        s_band=_scatter_band(s_local, basis.n_splines, basis.order_k),
        dimension=basis.n_splines - 2,
        bandwidth=basis.order_k - 1,
        channel_l=l,
        model=model,
        atom=atom,
    )


def band_profile(pair: OperatorPair) -> tuple[int, int]:
    """(dimension, bandwidth) of an assembled pair."""
    return pair.dimension, pair.bandwidth


def band_to_dense(band: np.ndarray) -> np.ndarray:
    """Expand symmetric upper-banded storage to a full dense matrix."""
    rows, n = band.shape
    bw = rows - 1
    dense = np.zeros((n, n))
    for d in range(bw + 1):
        diag = band[bw - d, d:]
        idx = np.arange(n - d)
        dense[idx, idx + d] = diag
        dense[idx + d, idx] = diag
    return dense


def band_matvec(band: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Multiply a symmetric upper-banded matrix by a vector."""
    rows, n = band.shape
    bw = rows - 1
    y = band[bw] * x
    for d in range(1, bw + 1):
        diag = band[bw - d, d:]
        y[: n - d] += diag * x[d:]
        y[d:] += diag * x[: n - d]
    return y


def dump_banded(pair: OperatorPair, stream: TextIO) -> None:
    """Write both matrices as plain text, one line per stored diagonal.

    Format: a comment header, then lines ``<matrix> <offset> <entries...>``
    where matrix is H or S, offset is the superdiagonal index d, and the
    entries are A[j-d, j] for j = d .. dimension-1 in full (round-trip)
    precision.
    """
    stream.write("# banded symmetric operator pair\n")
    stream.write(
        f"# dimension={pair.dimension} bandwidth={pair.bandwidth} "
        f"l={pair.channel_l} model={pair.model.value} atom={pair.atom.name}\n"
    )
    bw = pair.bandwidth
    for tag, band in (("H", pair.h_band), ("S", pair.s_band)):
        for d in range(bw + 1):
            entries = " ".join(repr(float(x)) for x in band[bw - d, d:])
            stream.write(f"{tag} {d} {entries}\n")


def load_banded_dump(stream: TextIO) -> tuple[np.ndarray, np.ndarray]:
    """Read a dump_banded stream back into (h_band, s_band) arrays."""
    diagonals: dict[str, dict[int, np.ndarray]] = {"H": {}, "S": {}}
    dim = None
    for line in stream:
        line = line.strip()
        if not line or line.startswith("#"):
            if line.startswith("# dimension="):
                dim = int(line.split()[1].split("=")[1])
            continue
        tag, offset, *values = line.split()
        diagonals[tag][int(offset)] = np.array([float(v) for v in values])
    if dim is None or not diagonals["H"]:
        raise ValueError("not a banded operator dump")
    bw = max(diagonals["H"])
    out = []
    for tag in ("H", "S"):
        band = np.zeros((bw + 1, dim))
        for d, diag in diagonals[tag].items():
            band[bw - d, d:] = diag
        out.append(band)
    return out[0], out[1]
