import io

import numpy as np
import pytest

from conftest import brute_force_matrix

from atomscreen.bsplines import GridSpec, build_workspace, make_knots, make_quadrature
from atomscreen.eigensolve import solve_lowest
from atomscreen.model import (
    AtomSpec,
    Pseudopotential,
    catalog_atom,
    effective_charge,
    hydrogenic_energy,
)
from atomscreen.operators import (
    assemble,
    band_matvec,
    band_profile,
    band_to_dense,
    dump_banded,
    load_banded_dump,
)

HYDROGEN = AtomSpec("H", 1, 1, 1, 0, 1, ((1, 0, 1),))


@pytest.fixture(scope="module")
def paper_ws():
    return build_workspace()


@pytest.fixture(scope="module")
def coarse_ws():
    return build_workspace(GridSpec(n_splines=40, order_k=5, r_max=30.0, r_first=1e-3,
                                    nodes_per_interval=10))


class TestAssemble:
    def test_hydrogen_ground_state(self, paper_ws):
        pair = assemble(paper_ws.basis, paper_ws.quad, HYDROGEN, 0,
                        Pseudopotential.BARE_COULOMB, paper_ws.tables)
        solution = solve_lowest(pair, 1)
        assert solution.eigenvalues[0] == pytest.approx(-0.5, abs=1e-9)

    def test_helium_screened_ground_state(self, paper_ws):
        helium = catalog_atom("He")
        pair = assemble(paper_ws.basis, paper_ws.quad, helium, 0,
                        Pseudopotential.SYMMETRY_DEPENDENT, paper_ws.tables)
        solution = solve_lowest(pair, 1)
        exact = hydrogenic_energy(effective_charge(2, 2, 0), 1)
        assert exact == pytest.approx(-0.727580, abs=1e-6)
        assert solution.eigenvalues[0] == pytest.approx(exact, abs=1e-8)

    def test_matches_brute_force_on_coarse_grid(self):
        basis = make_knots(12.0, 16, 4, "exp-linear", 1e-2)
        quad = make_quadrature(basis, 8)
        helium = catalog_atom("He")
        pair = assemble(basis, quad, helium, 1, Pseudopotential.SYMMETRY_DEPENDENT)

        z_eff = effective_charge(2, 2, 1)
        s_ref = brute_force_matrix(basis, quad, lambda r: np.ones_like(r))
        t_ref = 0.5 * brute_force_matrix(basis, quad, lambda r: np.ones_like(r),
                                         derivative=True)
        v_ref = brute_force_matrix(basis, quad, lambda r: -z_eff / r + 1.0 / r**2)
        h_ref = t_ref + v_ref
        assert band_to_dense(pair.s_band) == pytest.approx(s_ref, abs=1e-13)
        assert band_to_dense(pair.h_band) == pytest.approx(h_ref, abs=1e-11)

    def test_overlap_row_sums_integrate_central_splines(self, coarse_ws):
        basis, quad = coarse_ws.basis, coarse_ws.quad
        pair = assemble(basis, quad, HYDROGEN, 0, Pseudopotential.BARE_COULOMB,
                        coarse_ws.tables)
        s_dense = band_to_dense(pair.s_band)
        k = basis.order_k
        # boundary splines are trimmed, so row sums only reproduce the
        # integral for splines whose support avoids both box ends
        for active in range(k, basis.n_active - k):
            global_index = active + 1
            integral = np.sum(
                coarse_ws.tables.values[:, :, :] * quad.weights[:, :, None],
                axis=(0, 1),
            )
            # values[iv, q, a] holds spline iv + a; gather its pieces
            total = 0.0
            for iv in range(basis.n_intervals):
                a = global_index - iv
                if 0 <= a < k:
                    total += np.sum(quad.weights[iv] * coarse_ws.tables.values[iv, :, a])
            assert s_dense[active].sum() == pytest.approx(total, rel=1e-12)

    def test_symmetry_and_band_structure(self, coarse_ws):
        pair = assemble(coarse_ws.basis, coarse_ws.quad, HYDROGEN, 2,
                        Pseudopotential.BARE_COULOMB, coarse_ws.tables)
        h_dense = band_to_dense(pair.h_band)
        assert np.max(np.abs(h_dense - h_dense.T)) <= 1e-13 * np.max(np.abs(h_dense))
        beyond = np.triu(np.ones_like(h_dense, dtype=bool), pair.bandwidth + 1)
        assert np.all(h_dense[beyond] == 0.0)

    def test_centrifugal_block_is_positive_semidefinite(self):
        basis = make_knots(8.0, 14, 3, "exp-linear", 1e-2)
        quad = make_quadrature(basis, 6)
        l = 2
        centrifugal = brute_force_matrix(basis, quad, lambda r: l * (l + 1) / (2 * r**2))
        eigenvalues = np.linalg.eigvalsh(centrifugal)
        assert eigenvalues.min() > 0.0

    def test_quadrature_doubling_leaves_eigenvalues_alone(self):
        lithium = catalog_atom("Li")
        results = []
        for nodes in (20, 40):
            grid = GridSpec(nodes_per_interval=nodes)
            ws = build_workspace(grid)
            pair = assemble(ws.basis, ws.quad, lithium, 0,
                            Pseudopotential.CENTRAL_SCREENING, ws.tables)
            results.append(solve_lowest(pair, 4).eigenvalues)
        assert np.max(np.abs(results[0] - results[1])) <= 1e-10

    def test_variational_bound_and_monotone_refinement(self):
        # coarse grids keep discretization error above roundoff so the
        # variational ordering is strict
        exact = [hydrogenic_energy(1.0, nu) for nu in (1, 2, 3)]
        previous = None
        for n_splines in (24, 36, 54):
            basis = make_knots(40.0, n_splines, 5, "exp-linear", 1e-3)
            quad = make_quadrature(basis, 10)
            pair = assemble(basis, quad, HYDROGEN, 0, Pseudopotential.BARE_COULOMB)
            values = solve_lowest(pair, 3).eigenvalues
            assert np.all(values > np.asarray(exact))
            if previous is not None:
                assert np.all(values < previous)
            previous = values

    def test_dimension_mismatch_is_rejected(self, coarse_ws):
        other = make_knots(30.0, 50, 5, "exp-linear", 1e-3)
        with pytest.raises(ValueError):
            assemble(other, coarse_ws.quad, HYDROGEN, 0, Pseudopotential.BARE_COULOMB)
        with pytest.raises(ValueError):
            assemble(coarse_ws.basis, coarse_ws.quad, HYDROGEN, -1,
                     Pseudopotential.BARE_COULOMB)


class TestBandHelpers:
    def test_band_profile_paper_settings(self, paper_ws):
        pair = assemble(paper_ws.basis, paper_ws.quad, HYDROGEN, 0,
                        Pseudopotential.BARE_COULOMB, paper_ws.tables)
        assert band_profile(pair) == (598, 9)

    def test_band_profile_small(self):
        basis = make_knots(10.0, 20, 4, "linear")
        quad = make_quadrature(basis, 8)
        pair = assemble(basis, quad, HYDROGEN, 0, Pseudopotential.BARE_COULOMB)
        assert band_profile(pair) == (18, 3)

    def test_band_matvec_matches_dense(self, coarse_ws):
        pair = assemble(coarse_ws.basis, coarse_ws.quad, HYDROGEN, 1,
                        Pseudopotential.BARE_COULOMB, coarse_ws.tables)
        rng = np.random.default_rng(3)
        x = rng.standard_normal(pair.dimension)
        dense = band_to_dense(pair.h_band)
        assert band_matvec(pair.h_band, x) == pytest.approx(dense @ x, rel=1e-13)

    def test_dump_round_trip(self, coarse_ws):
        pair = assemble(coarse_ws.basis, coarse_ws.quad, HYDROGEN, 0,
                        Pseudopotential.BARE_COULOMB, coarse_ws.tables)
        buffer = io.StringIO()
        dump_banded(pair, buffer)
        buffer.seek(0)
        h_band, s_band = load_banded_dump(buffer)
        assert np.array_equal(h_band, pair.h_band)
        assert np.array_equal(s_band, pair.s_band)
