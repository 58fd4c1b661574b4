import numpy as np
import pytest

from diracwalk import (DomainError, QubitLayout, WalshSpectrum, circuit_unitary,
                       fwht, gate_count, synthesize_diagonal, truncation_error,
                       walsh_transform)


def popcount(x):
    return bin(x).count("1")


def direct_walsh(f):
    n = f.size
    q = n.bit_length() - 1
    return np.array([
        sum(f[x] * (-1) ** popcount(w & x) for x in range(n)) / n
        for w in range(n)
    ])


def diagonal_of(circ, size):
    u = circuit_unitary(circ)
    return np.diag(u)[:size]


class TestTransform:
    @pytest.mark.parametrize("q", [1, 2, 3, 5])
    def test_matches_direct_definition(self, q):
        rng = np.random.default_rng(q)
        f = rng.normal(size=2**q)
        spec = walsh_transform(f)
        np.testing.assert_allclose(spec.coefficients, direct_walsh(f), atol=1e-12)

    def test_reconstruct_round_trip(self):
        rng = np.random.default_rng(11)
        f = rng.normal(size=64)
        spec = walsh_transform(f)
        np.testing.assert_allclose(spec.reconstruct(), f, atol=1e-12)

    def test_fwht_is_self_inverse_up_to_n(self):
        rng = np.random.default_rng(2)
        f = rng.normal(size=32)
        np.testing.assert_allclose(fwht(fwht(f)) / 32, f, atol=1e-12)

    def test_non_power_of_two_rejected(self):
        with pytest.raises(DomainError):
            walsh_transform(np.zeros(12))

    def test_constant_function_single_coefficient(self):
        spec = walsh_transform(np.full(16, 2.5))
        assert spec.coefficients[0] == pytest.approx(2.5)
        assert np.all(spec.coefficients[1:] == 0.0)


class TestThreshold:
    def test_kept_masks_drop_below_threshold(self):
        spec = WalshSpectrum(2, np.array([1.0, 0.5, 0.05, 0.0]), threshold=0.1)
        assert list(spec.kept_masks()) == [0, 1]

    def test_threshold_keeps_equal_values(self):
        spec = WalshSpectrum(2, np.array([1.0, 0.1, 0.05, 0.0]), threshold=0.1)
        assert 1 in spec.kept_masks()

    def test_exact_zeros_always_dropped(self):
        spec = WalshSpectrum(2, np.array([1.0, 0.0, 0.3, 0.0]))
        assert list(spec.kept_masks()) == [0, 2]


class TestSynthesis:
    @pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 6])
    def test_exact_diagonal(self, q):
        rng = np.random.default_rng(q * 13)
        lay = QubitLayout(dim=1, q=q)
        f = rng.normal(size=2**q)
        circ = synthesize_diagonal(walsh_transform(f), lay, lay.axis_register(1))
        diag = diagonal_of(circ, 2**q)
        np.testing.assert_allclose(diag, np.exp(1j * f), atol=1e-12)

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_conditioned_diagonal(self, q):
        # with condition=(aux,+1): exp(+if) on aux=0, exp(-if) on aux=1
        rng = np.random.default_rng(q * 17)
        lay = QubitLayout(dim=1, q=q)
        f = rng.normal(size=2**q)
        circ = synthesize_diagonal(walsh_transform(f), lay, lay.axis_register(1),
                                   condition=(lay.beta_qubit, 1))
        u = circuit_unitary(circ)
        n = 2**q
        np.testing.assert_allclose(np.diag(u)[:n], np.exp(1j * f), atol=1e-12)
        np.testing.assert_allclose(np.diag(u)[n:], np.exp(-1j * f), atol=1e-12)

    def test_conditioned_nonzero_mean(self):
        # the w=0 coefficient must become an aux rotation, not a global phase
        lay = QubitLayout(dim=1, q=2)
        f = np.array([1.0, 1.0, 1.0, 1.0])  # pure mean
        circ = synthesize_diagonal(walsh_transform(f), lay, lay.axis_register(1),
                                   condition=(lay.beta_qubit, 1))
        u = circuit_unitary(circ)
        np.testing.assert_allclose(np.diag(u)[:4], np.exp(1j), atol=1e-12)
        np.testing.assert_allclose(np.diag(u)[4:], np.exp(-1j), atol=1e-12)

    @pytest.mark.parametrize("q", [2, 4, 6, 8, 10])
    def test_cnot_bound(self, q):
        rng = np.random.default_rng(q)
        lay = QubitLayout(dim=1, q=q)
        f = rng.normal(size=2**q)  # dense spectrum
        circ = synthesize_diagonal(walsh_transform(f), lay, lay.axis_register(1))
        counts = gate_count(circ)
        assert counts["by_kind"].get("cnot", 0) <= 2**q
        assert counts["by_kind"]["rz"] == 2**q - 1

    def test_step_function_single_rz(self):
        # step at the sign-bit boundary: exactly one Rz plus a global phase
        lay = QubitLayout(dim=1, q=6)
        f = np.where(np.arange(64) >= 32, 0.7, 0.0)
        circ = synthesize_diagonal(walsh_transform(f), lay, lay.axis_register(1))
        counts = gate_count(circ)["by_kind"]
        assert counts["rz"] == 1
        assert counts.get("cnot", 0) == 0
        diag = diagonal_of(circ, 64)
        np.testing.assert_allclose(diag, np.exp(1j * f), atol=1e-14)

    def test_wrong_target_count(self):
        lay = QubitLayout(dim=1, q=3)
        with pytest.raises(DomainError):
            synthesize_diagonal(walsh_transform(np.zeros(8)), lay, [0, 1])

    def test_threshold_warning_when_everything_dropped(self):
        lay = QubitLayout(dim=1, q=2)
        spec = walsh_transform(np.array([0.01, -0.01, 0.01, -0.01]),
                               threshold=1.0)
        with pytest.warns(RuntimeWarning):
            synthesize_diagonal(spec, lay, lay.axis_register(1))


class TestTruncation:
    def test_bound_dominates_exact(self):
        rng = np.random.default_rng(23)
        spec = walsh_transform(rng.normal(size=64), threshold=0.05)
        report = truncation_error(spec)
        assert report["max_phase_error"] <= report["bound"] + 1e-12
        assert report["dropped"] > 0

    def test_truncated_synthesis_error_within_bound(self):
        rng = np.random.default_rng(29)
        lay = QubitLayout(dim=1, q=5)
        f = rng.normal(size=32)
        spec = walsh_transform(f, threshold=0.08)
        report = truncation_error(spec)
        circ = synthesize_diagonal(spec, lay, lay.axis_register(1))
        diag = diagonal_of(circ, 32)
        err = np.max(np.abs(diag - np.exp(1j * f)))
        assert err <= report["bound"] + 1e-10

    def test_no_threshold_no_loss(self):
        spec = walsh_transform(np.arange(8.0))
        report = truncation_error(spec)
        assert report == {"bound": 0.0, "max_phase_error": 0.0, "dropped": 0}
