import numpy as np
import pytest

from entspec import (
    Bipartition,
    BipartitionFamily,
    EnsembleSpec,
    PureState,
    apply_single_qubit,
    compute_distribution,
    make_basis,
    make_cluster1d,
    make_ghz,
    make_product,
    make_w,
    permute_qubits,
    purity,
    sample_haar,
    sample_phase_sphere,
    state_from_dict,
    state_to_dict,
)
from helpers import graph_state_line, haar_states


def all_masks(n):
    return [Bipartition(n, m) for m in range(1, (1 << n) - 1)]


class TestPureState:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalized"):
            PureState(2, np.array([1.0, 1.0, 0.0, 0.0]))

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError, match="length"):
            PureState(2, np.array([1.0, 0.0]))

    def test_rejects_bad_qubit_counts(self):
        with pytest.raises(ValueError):
            PureState(0, np.array([1.0]))
        with pytest.raises(ValueError, match="guard"):
            PureState(27, np.zeros(8))

    def test_amplitudes_immutable(self):
        state = make_ghz(2)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0.0


class TestBasis:
    def test_three_qubit_ends(self):
        z0 = make_basis(3, 0).amplitudes
        z7 = make_basis(3, 7).amplitudes
        assert z0[0] == 1.0 and np.all(z0[1:] == 0.0)
        assert z7[7] == 1.0 and np.all(z7[:7] == 0.0)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            make_basis(1, 2)

    def test_every_mask_unentangled(self):
        state = make_basis(4, 0b1011)
        for part in all_masks(4):
            assert purity(state, part).purity == pytest.approx(1.0, abs=1e-12)


class TestGhz:
    def test_amplitudes(self):
        z = make_ghz(3).amplitudes
        assert z[0] == pytest.approx(1 / np.sqrt(2))
        assert z[7] == pytest.approx(1 / np.sqrt(2))
        assert np.all(z[1:7] == 0.0)

    def test_two_qubits_is_bell(self):
        z = make_ghz(2).amplitudes
        np.testing.assert_allclose(z, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)])

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_purity_half_every_bipartition(self, n):
        state = make_ghz(n)
        for part in all_masks(n):
            assert purity(state, part).purity == pytest.approx(0.5, abs=1e-12)

    def test_rejects_single_qubit(self):
        with pytest.raises(ValueError):
            make_ghz(1)


class TestW:
    def test_amplitudes_three_qubits(self):
        z = make_w(3).amplitudes
        expected = np.zeros(8)
        expected[[1, 2, 4]] = 1 / np.sqrt(3)
        np.testing.assert_allclose(z, expected)

    def test_single_qubit_cut(self):
        state = make_w(3)
        res = purity(state, Bipartition(3, 0b001))
        assert res.participation == pytest.approx(9 / 5, abs=1e-12)

    def test_balanced_cut_six_qubits(self):
        state = make_w(6)
        res = purity(state, Bipartition(6, 0b000111))
        assert res.participation == pytest.approx(2.0, abs=1e-12)

    def test_rejects_single_qubit(self):
        with pytest.raises(ValueError):
            make_w(1)


class TestCluster:
    def test_two_qubit_expansion(self):
        # direct expansion of the defining chain product for n = 2
        np.testing.assert_allclose(
            make_cluster1d(2).amplitudes, np.array([1, 1, -1, 1]) / 2.0
        )

    def test_two_qubit_single_purity(self):
        state = make_cluster1d(2)
        assert purity(state, Bipartition(2, 1)).purity == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_matches_cz_graph_state_purities(self, n):
        """The CZ-circuit graph state is local-Z equivalent: purities must agree."""
        ours = make_cluster1d(n)
        circuit = graph_state_line(n)
        for part in all_masks(n):
            assert purity(ours, part).purity == pytest.approx(
                purity(circuit, part).purity, abs=1e-12
            )

    def test_balanced_mean_five_qubits(self):
        dist = compute_distribution(make_cluster1d(5), BipartitionFamily.balanced(5))
        assert dist.mean_participation == pytest.approx(3.6, abs=1e-10)

    def test_balanced_mean_twelve_qubits(self):
        dist = compute_distribution(make_cluster1d(12), BipartitionFamily.balanced(12))
        assert dist.mean_participation == pytest.approx(1783 / 77, abs=1e-9)


class TestProduct:
    def test_basis_product_index(self):
        state = make_product(make_basis(1, 0), make_basis(1, 1))
        assert state.amplitudes[2] == 1.0
        assert state.n == 2

    def test_norm_preserved(self):
        a = haar_states(2, 1, 11)[0]
        b = haar_states(3, 1, 12)[0]
        prod = make_product(a, b)
        assert np.vdot(prod.amplitudes, prod.amplitudes).real == pytest.approx(1.0)

    def test_bell_pair_mean(self):
        bell = make_ghz(2)
        dist = compute_distribution(
            make_product(bell, bell), BipartitionFamily.balanced(4)
        )
        assert dist.mean_participation == pytest.approx(3.0, abs=1e-12)

    def test_size_guard(self):
        with pytest.raises(ValueError, match="guard"):
            make_product(make_basis(13, 0), make_basis(14, 0))


class TestPermutationAndLocalOps:
    def test_permute_is_index_remap(self):
        state = make_basis(3, 0b011)  # qubits 0,1 set
        swapped = permute_qubits(state, [2, 1, 0])
        assert swapped.amplitudes[0b110] == 1.0

    def test_permute_preserves_purity_multiset(self):
        state = haar_states(5, 1, 5)[0]
        rng = np.random.default_rng(17)
        perm = list(rng.permutation(5))
        permuted = permute_qubits(state, perm)
        before = sorted(purity(state, p).purity for p in all_masks(5))
        after = sorted(purity(permuted, p).purity for p in all_masks(5))
        np.testing.assert_allclose(before, after, atol=1e-12)

    def test_apply_single_qubit_identity(self):
        state = haar_states(3, 1, 6)[0]
        same = apply_single_qubit(state, 1, np.eye(2))
        np.testing.assert_allclose(same.amplitudes, state.amplitudes)


class TestSamplers:
    def test_haar_norms(self):
        for state in haar_states(4, 10, 0):
            assert np.vdot(state.amplitudes, state.amplitudes).real == pytest.approx(
                1.0, abs=1e-12
            )

    def test_haar_deterministic(self):
        spec = EnsembleSpec("haar", 5, 123)
        a = sample_haar(spec, 4)
        b = sample_haar(spec, 4)
        for x, y in zip(a, b):
            assert np.array_equal(x.amplitudes, y.amplitudes)

    def test_haar_streams_independent_of_count(self):
        spec = EnsembleSpec("haar", 4, 77)
        assert np.array_equal(
            sample_haar(spec, 5)[2].amplitudes, sample_haar(spec, 3)[2].amplitudes
        )

    def test_haar_seeds_differ(self):
        a = sample_haar(EnsembleSpec("haar", 4, 1), 1)[0]
        b = sample_haar(EnsembleSpec("haar", 4, 2), 1)[0]
        assert not np.allclose(a.amplitudes, b.amplitudes)

    def test_haar_balanced_purity_mean(self):
        # 1000-sample mean against the large-N value, 5% headroom covers the
        # finite-N offset (~1.5%) plus Monte-Carlo noise
        states = haar_states(10, 1000, 2024)
        part = Bipartition(10, 0b11111)
        mean = np.mean([purity(s, part).purity for s in states])
        assert abs(mean - 63 / 1024) / (63 / 1024) < 0.05

    def test_phase_sphere_norms(self):
        spec = EnsembleSpec("phase-sphere", 4, 9)
        for state in sample_phase_sphere(spec, 10):
            assert np.vdot(state.amplitudes, state.amplitudes).real == pytest.approx(
                1.0, abs=1e-12
            )

    def test_phase_sphere_deterministic(self):
        spec = EnsembleSpec("phase-sphere", 3, 42)
        a = sample_phase_sphere(spec, 3)
        b = sample_phase_sphere(spec, 3)
        for x, y in zip(a, b):
            assert np.array_equal(x.amplitudes, y.amplitudes)

    def test_phase_sphere_second_moment(self):
        # E[r_k^2] = 1/N by symmetry under the sphere constraint
        spec = EnsembleSpec("phase-sphere", 3, 7)
        r2 = np.array(
            [np.abs(s.amplitudes[1]) ** 2 for s in sample_phase_sphere(spec, 4000)]
        )
        se = r2.std(ddof=1) / np.sqrt(r2.size)
        assert abs(r2.mean() - 1 / 8) < 3 * se

    def test_kind_mismatch(self):
        with pytest.raises(ValueError, match="haar"):
            sample_haar(EnsembleSpec("phase-sphere", 3, 0), 1)
        with pytest.raises(ValueError, match="phase-sphere"):
            sample_phase_sphere(EnsembleSpec("haar", 3, 0), 1)

    def test_bad_spec(self):
        with pytest.raises(ValueError, match="kind"):
            EnsembleSpec("ginibre", 3, 0)
        with pytest.raises(ValueError, match="seed"):
            EnsembleSpec("haar", 3, -1)


class TestStateDict:
    def test_round_trip_exact(self):
        state = haar_states(3, 1, 31)[0]
        back = state_from_dict(state_to_dict(state))
        assert back.n == state.n
        assert np.array_equal(back.amplitudes, state.amplitudes)

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            state_from_dict({"n": 2})
        with pytest.raises(ValueError):
            state_from_dict({"n": 2, "amplitudes": [[1.0, 0.0]]})
