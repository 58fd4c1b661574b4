import math

import numpy as np
import pytest

from diracwalk import (DegenerateModeError, DimensionError, DomainError,
                       ConfigError, Grid, PhysParams, SpinorField,
                       cfl_timestep, density_projection,
                       gaussian_spinor_packet, load_snapshot, momentum_grid,
                       position_expectation, position_grid,
                       positive_branch_overlap, positive_energy_packet,
                       save_snapshot, transmission_probability)


class TestGrid:
    def test_basic_properties(self):
        g = Grid(dim=1, n=16, omega=2.0)
        assert g.q == 4
        assert g.spacing == pytest.approx(0.125)
        assert g.positions()[0] == pytest.approx(-1.0)
        assert g.positions()[-1] == pytest.approx(1.0 - 0.125)

    def test_invalid_parameters(self):
        with pytest.raises(ConfigError):
            Grid(dim=2, n=16, omega=1.0)
        with pytest.raises(ConfigError):
            Grid(dim=1, n=12, omega=1.0)
        with pytest.raises(ConfigError):
            Grid(dim=1, n=16, omega=-1.0)

    def test_position_momentum_maps(self):
        g = Grid(dim=1, n=8, omega=4.0)
        assert position_grid(g, -4) == pytest.approx(-2.0)
        assert position_grid(g, 3) == pytest.approx(1.5)
        assert momentum_grid(g, 2) == pytest.approx(4.0 * np.pi / 4.0)
        with pytest.raises(DomainError):
            position_grid(g, 4)
        with pytest.raises(DomainError):
            momentum_grid(g, -5)

    def test_wavenumbers_match_momentum_grid(self):
        g = Grid(dim=1, n=8, omega=2.0)
        k = g.wavenumbers()
        # FFT order: index f carries centered mode (f XOR n/2) - n/2
        for f in range(8):
            p = f if f < 4 else f - 8
            assert k[f] == pytest.approx(momentum_grid(g, p))

    def test_cfl_timestep(self):
        g = Grid(dim=1, n=16, omega=2.0, n_star=0.5)
        assert cfl_timestep(g) == pytest.approx(0.5 * 2.0 / 16)
        with pytest.raises(ConfigError):
            cfl_timestep(Grid(dim=1, n=16, omega=2.0, n_star=0.3))


class TestPhysParams:
    def test_atomic_units(self):
        p = PhysParams.atomic()
        assert p.c == pytest.approx(137.035999)
        assert p.unit_system == "atomic"

    def test_validation(self):
        with pytest.raises(ConfigError):
            PhysParams(m=-1.0)
        with pytest.raises(ConfigError):
            PhysParams(c=0.0)
        with pytest.raises(ConfigError):
            PhysParams(unit_system="cgs")


class TestSpinorField:
    def test_shape_validation(self):
        g = Grid(dim=1, n=8, omega=1.0)
        with pytest.raises(DimensionError):
            SpinorField(g, np.zeros((4, 8), dtype=complex))

    def test_norm_weighting(self):
        g = Grid(dim=1, n=8, omega=2.0)
        amps = np.zeros((2, 8), dtype=complex)
        amps[0, 0] = 2.0  # |psi|^2 * spacing = 4 * 0.25 = 1
        assert SpinorField(g, amps).norm() == pytest.approx(1.0)

    def test_density_sums_to_one(self):
        g = Grid(dim=1, n=32, omega=1.0)
        f = gaussian_spinor_packet(g, 0.0, 0.1)
        assert f.density().sum() == pytest.approx(1.0)


class TestGaussianPacket:
    def test_normalized_and_centered(self):
        g = Grid(dim=1, n=64, omega=1.0)
        f = gaussian_spinor_packet(g, 0.25, 0.05)
        assert f.norm() == pytest.approx(1.0)
        assert position_expectation(f) == pytest.approx(0.0, abs=1e-12)

    def test_under_resolved_warning(self):
        g = Grid(dim=1, n=8, omega=8.0)  # spacing 1
        with pytest.warns(RuntimeWarning):
            gaussian_spinor_packet(g, 0.0, 1.0)

    def test_invalid_sigma(self):
        g = Grid(dim=1, n=8, omega=1.0)
        with pytest.raises(DomainError):
            gaussian_spinor_packet(g, 0.0, -0.1)

    def test_3d_packet(self):
        g = Grid(dim=3, n=8, omega=8.0)
        f = gaussian_spinor_packet(g, (1.0, 0.0, 0.0), 2.0)
        assert f.amplitudes.shape == (4, 8, 8, 8)
        assert f.norm() == pytest.approx(1.0)

    def test_spinor_weight_validation(self):
        g = Grid(dim=1, n=8, omega=1.0)
        with pytest.raises(DimensionError):
            gaussian_spinor_packet(g, 0.0, 0.3, spinor_weights=[1, 0, 0])


class TestPositiveEnergyPacket:
    def test_pure_particle_branch(self):
        g = Grid(dim=1, n=256, omega=1.4)
        phys = PhysParams.atomic()
        f = positive_energy_packet(g, 106.4, -0.35, 0.03, phys)
        assert f.norm() == pytest.approx(1.0)
        assert positive_branch_overlap(f, phys) < 1e-24

    def test_centering(self):
        g = Grid(dim=1, n=512, omega=1.4)
        f = positive_energy_packet(g, 106.4, -0.35, 0.03, PhysParams.atomic())
        assert position_expectation(f) == pytest.approx(-0.35, abs=1e-3)

    def test_degenerate_mode(self):
        g = Grid(dim=1, n=16, omega=1.0)
        with pytest.raises(DegenerateModeError):
            positive_energy_packet(g, 0.0, 0.0, 0.1, PhysParams(m=0.0))

    def test_massless_moves_one_way(self):
        # a pure massless particle branch with p0 > 0 has no left-moving part
        g = Grid(dim=1, n=256, omega=4.0)
        phys = PhysParams(m=0.0, c=1.0)
        f = positive_energy_packet(g, 20.0, 0.0, 0.5, phys)
        assert positive_branch_overlap(f, phys) < 1e-24


class TestObservables:
    def test_position_expectation_point_mass(self):
        g = Grid(dim=1, n=16, omega=4.0)
        amps = np.zeros((2, 16), dtype=complex)
        amps[0, 12] = 1.0  # centered index 4 -> coordinate 1.0
        f = SpinorField(g, amps).normalized()
        assert position_expectation(f) == pytest.approx(1.0)

    def test_transmission_strictly_beyond(self):
        g = Grid(dim=1, n=16, omega=4.0)
        amps = np.zeros((2, 16), dtype=complex)
        amps[0, 8] = 1.0  # exactly at the barrier: not transmitted
        f = SpinorField(g, amps).normalized()
        assert transmission_probability(f, 0.0) == 0.0
        amps2 = np.zeros((2, 16), dtype=complex)
        amps2[0, 9] = 1.0
        f2 = SpinorField(g, amps2).normalized()
        assert transmission_probability(f2, 0.0) == pytest.approx(1.0)

    def test_transmission_requires_1d(self):
        g = Grid(dim=3, n=4, omega=1.0)
        f = SpinorField(g, np.ones((4, 4, 4, 4), dtype=complex)).normalized()
        with pytest.raises(DimensionError):
            transmission_probability(f)

    def test_density_projection_planes(self):
        g = Grid(dim=3, n=4, omega=1.0)
        rng = np.random.default_rng(0)
        f = SpinorField(g, rng.normal(size=(4, 4, 4, 4))
                        + 1j * rng.normal(size=(4, 4, 4, 4))).normalized()
        rho = f.density()
        np.testing.assert_allclose(density_projection(f, "xy"), rho.sum(axis=2))
        np.testing.assert_allclose(density_projection(f, "yz"), rho.sum(axis=0))
        np.testing.assert_allclose(density_projection(f, "xz"), rho.sum(axis=1))
        assert density_projection(f, "xy").sum() == pytest.approx(1.0)
        with pytest.raises(DomainError):
            density_projection(f, "zz")


class TestSnapshots:
    def test_round_trip_1d(self, tmp_path):
        g = Grid(dim=1, n=16, omega=1.4)
        f = gaussian_spinor_packet(g, 3.0, 0.2)
        path = tmp_path / "snap.txt"
        save_snapshot(f, path, PhysParams.atomic())
        back = load_snapshot(path)
        assert back.grid == g
        np.testing.assert_array_equal(back.amplitudes, f.amplitudes)

    def test_round_trip_3d(self, tmp_path):
        g = Grid(dim=3, n=4, omega=2.0)
        f = gaussian_spinor_packet(g, 0.0, 1.0)
        path = tmp_path / "snap.txt"
        save_snapshot(f, path)
        back = load_snapshot(path)
        np.testing.assert_array_equal(back.amplitudes, f.amplitudes)

    def test_missing_header(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 0 1.0 0.0\n")
        with pytest.raises(ConfigError):
            load_snapshot(path)
