import numpy as np
import pytest
import scipy.linalg as sla

from conftest import random_banded_pair

from atomscreen.bsplines import build_workspace
from atomscreen.eigensolve import (
    DegenerateSpectrumError,
    EigensolverError,
    radial_expectation,
    solve_lowest,
)
from atomscreen.model import (
    AtomSpec,
    Pseudopotential,
    catalog_atom,
    effective_charge,
    hydrogenic_energy,
)
from atomscreen.operators import OperatorPair, assemble, band_matvec, band_to_dense

HYDROGEN = AtomSpec("H", 1, 1, 1, 0, 1, ((1, 0, 1),))


@pytest.fixture(scope="module")
def hydrogen_solution():
    ws = build_workspace()
    pair = assemble(ws.basis, ws.quad, HYDROGEN, 0, Pseudopotential.BARE_COULOMB,
                    ws.tables)
    return pair, solve_lowest(pair, 6)


class TestSolveLowest:
    def test_hydrogen_spectrum(self, hydrogen_solution):
        _, solution = hydrogen_solution
        expected = [-0.5, -0.125, -1.0 / 18.0, -0.03125]
        for value, target in zip(solution.eigenvalues, expected):
            assert value == pytest.approx(target, abs=1e-9)

    def test_lithium_p_channel_matches_analytic(self):
        ws = build_workspace()
        lithium = catalog_atom("Li")
        pair = assemble(ws.basis, ws.quad, lithium, 1,
                        Pseudopotential.SYMMETRY_DEPENDENT, ws.tables)
        solution = solve_lowest(pair, 1)
        exact = hydrogenic_energy(effective_charge(3, 3, 1), 2)
        assert exact == pytest.approx(-0.196201, abs=1e-6)
        assert solution.eigenvalues[0] == pytest.approx(exact, abs=1e-7)

    def test_full_spectrum_on_small_pair_matches_dense(self):
        rng = np.random.default_rng(5)
        pair = random_banded_pair(rng, 10, 3)
        solution = solve_lowest(pair, 10)
        reference = sla.eigh(
            band_to_dense(pair.h_band), band_to_dense(pair.s_band), eigvals_only=True
        )
        assert solution.eigenvalues == pytest.approx(reference, abs=1e-12)

    def test_random_pairs_match_dense_reference(self):
        rng = np.random.default_rng(12345)
        for dim, bandwidth in ((8, 2), (17, 4), (30, 6), (30, 1)):
            pair = random_banded_pair(rng, dim, bandwidth)
            k = max(1, dim // 2)
            solution = solve_lowest(pair, k)
            reference = sla.eigh(
                band_to_dense(pair.h_band), band_to_dense(pair.s_band),
                eigvals_only=True,
            )[:k]
            rel = np.abs(solution.eigenvalues - reference) / np.abs(reference)
            assert np.max(rel) <= 1e-11

    def test_shift_invariance(self):
        rng = np.random.default_rng(99)
        pair = random_banded_pair(rng, 25, 4)
        sigma = 3.25
        shifted = OperatorPair(
            h_band=pair.h_band + sigma * pair.s_band,
            s_band=pair.s_band,
            dimension=pair.dimension,
            bandwidth=pair.bandwidth,
            channel_l=pair.channel_l,
            model=pair.model,
            atom=pair.atom,
        )
        base = solve_lowest(pair, 10).eigenvalues
        moved = solve_lowest(shifted, 10).eigenvalues
        # the absolute 1e-12 bound presumes hartree-scale spectra; random
        # pairs can carry O(100) eigenvalues, so scale accordingly
        scale = max(1.0, float(np.max(np.abs(base))))
        assert np.max(np.abs(moved - (base + sigma))) <= 1e-12 * scale

    def test_vectors_are_s_orthonormal(self, hydrogen_solution):
        pair, solution = hydrogen_solution
        gram = np.empty((solution.count, solution.count))
        for i in range(solution.count):
            s_ci = band_matvec(pair.s_band, solution.vectors[:, i])
            for j in range(solution.count):
                gram[i, j] = solution.vectors[:, j] @ s_ci
        assert np.max(np.abs(gram - np.eye(solution.count))) <= 1e-10

    def test_residuals_small_and_ascending(self, hydrogen_solution):
        _, solution = hydrogen_solution
        assert np.all(solution.residual_norms <= 1e-10)
        assert np.all(np.diff(solution.eigenvalues) > 0)

    def test_rejects_bad_state_count(self, hydrogen_solution):
        pair, _ = hydrogen_solution
        with pytest.raises(ValueError):
            solve_lowest(pair, 0)
        with pytest.raises(ValueError):
            solve_lowest(pair, pair.dimension + 1)

    def test_rejects_indefinite_overlap(self):
        rng = np.random.default_rng(1)
        pair = random_banded_pair(rng, 12, 3)
        broken = OperatorPair(
            h_band=pair.h_band,
            s_band=-pair.s_band,
            dimension=pair.dimension,
            bandwidth=pair.bandwidth,
            channel_l=pair.channel_l,
            model=pair.model,
            atom=pair.atom,
        )
        with pytest.raises(EigensolverError):
            solve_lowest(broken, 2)

    def test_degenerate_spectrum_fails_loudly(self):
        rng = np.random.default_rng(2)
        pair = random_banded_pair(rng, 12, 3)
        degenerate = OperatorPair(
            h_band=pair.s_band.copy(),  # H = S makes every eigenvalue exactly 1
            s_band=pair.s_band,
            dimension=pair.dimension,
            bandwidth=pair.bandwidth,
            channel_l=pair.channel_l,
            model=pair.model,
            atom=pair.atom,
        )
        with pytest.raises(DegenerateSpectrumError):
            solve_lowest(degenerate, 3)


class TestRadialExpectation:
    def test_equals_eigenvalue(self, hydrogen_solution):
        pair, solution = hydrogen_solution
        for state in range(solution.count):
            expectation = radial_expectation(solution, pair, state)
            assert expectation == pytest.approx(solution.eigenvalues[state], abs=1e-10)

    def test_hydrogen_ground_state(self, hydrogen_solution):
        pair, solution = hydrogen_solution
        assert radial_expectation(solution, pair, 0) == pytest.approx(-0.5, abs=1e-9)

    def test_helium_screened_ground_state(self):
        ws = build_workspace()
        helium = catalog_atom("He")
        pair = assemble(ws.basis, ws.quad, helium, 0,
                        Pseudopotential.SYMMETRY_DEPENDENT, ws.tables)
        solution = solve_lowest(pair, 1)
        exact = hydrogenic_energy(effective_charge(2, 2, 0), 1)
        assert radial_expectation(solution, pair, 0) == pytest.approx(exact, abs=1e-8)

    def test_rejects_bad_index(self, hydrogen_solution):
        pair, solution = hydrogen_solution
        with pytest.raises(IndexError):
            radial_expectation(solution, pair, solution.count)
