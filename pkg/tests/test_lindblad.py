"""Tests for the physical model and the master-equation oracle."""

import numpy as np
import pytest

from tfdsim import _kernels_numpy
from tfdsim.fock import (DensityMatrix, FockSpace, annihilation, embed,
                         number_op, thermal_state, two_mode_space,
                         two_mode_squeezed_vacuum)
from tfdsim.lindblad import (LindbladGenerator, ModelParams, build_hamiltonian,
                             dissipator_rhs, fock_log_negativity,
                             integrate_master, make_generator, master_rhs,
                             von_neumann_entropy)

PARAMS = ModelParams(eps0=2.44744765, eps1=-1.22372382, g1=0.2, E1=0.7 + 0.3j,
                     gamma1=0.1)


def basis(space, na, nb):
    v = np.zeros(space.dim, dtype=complex)
    v[space.index(na, nb)] = 1.0
    return v


def random_state(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / m.trace()


class TestHamiltonian:
    def test_uncoupled_is_diagonal(self):
        space = two_mode_space(3)
        p = ModelParams(eps0=1.3, eps1=0.7, g1=0.0, E1=1.0)
        h = build_hamiltonian(p, space)
        expect = np.diag([1.3 * na + 0.7 * nb for na in range(3) for nb in range(3)])
        assert np.abs(h - expect).max() < 1e-14

    def test_hermitian(self):
        space = two_mode_space(3)
        h = build_hamiltonian(PARAMS, space)
        assert np.array_equal(h, h.conj().T)

    def test_single_excitation_energy(self):
        space = two_mode_space(3)
        p = ModelParams(eps0=1.3, eps1=0.7, g1=0.0, E1=1.0)
        h = build_hamiltonian(p, space)
        v = basis(space, 1, 0)
        assert (v.conj() @ h @ v).real == pytest.approx(1.3)

    def test_drive_phase(self):
        space = two_mode_space(3)
        p = ModelParams(eps0=1.0, eps1=1.0, g1=0.5, E1=1.0, omega1=2.0)
        h = build_hamiltonian(p, space, t=0.4)
        a = embed(annihilation(space.mode_a), "a", space)
        b = embed(annihilation(space.mode_b), "b", space)
        hop = a.conj().T @ b
        e1 = np.exp(-1j * 2.0 * 0.4)
        expect = number_op_sum(space, 1.0, 1.0) + 0.5 * (e1 * hop + np.conj(e1) * hop.conj().T)
        assert np.abs(h - expect).max() < 1e-14


def number_op_sum(space, eps0, eps1):
    na = embed(number_op(space.mode_a), "a", space)
    nb = embed(number_op(space.mode_b), "b", space)
    return eps0 * na + eps1 * nb


class TestDissipator:
    def test_dark_state(self):
        space = two_mode_space(2)
        gen = make_generator(PARAMS, space)
        rho = np.outer(basis(space, 0, 0), basis(space, 0, 0).conj())
        assert np.abs(dissipator_rhs(rho, gen)).max() < 1e-14

    def test_single_quantum_transfer(self):
        # |0,1><0,1| feeds |1,0><1,0| at rate gamma
        space = two_mode_space(2)
        gen = make_generator(PARAMS, space)
        rho = np.outer(basis(space, 0, 1), basis(space, 0, 1).conj())
        out = dissipator_rhs(rho, gen)
        expect = PARAMS.gamma1 * (np.outer(basis(space, 1, 0), basis(space, 1, 0).conj()) - rho)
        assert np.abs(out - expect).max() < 1e-14

    def test_traceless(self):
        rng = np.random.default_rng(21)
        space = two_mode_space(3)
        gen = make_generator(PARAMS, space)
        for _ in range(5):
            out = dissipator_rhs(random_state(rng, space.dim), gen)
            assert abs(out.trace()) < 1e-12

    def test_two_commutator_form(self):
        # gamma (J rho J+ - {J+J, rho}/2) == (gamma/2)([J rho, J+] + [J, rho J+])
        rng = np.random.default_rng(22)
        space = two_mode_space(3)
        gen = make_generator(PARAMS, space)
        j = gen.jump
        jd = j.conj().T
        rho = random_state(rng, space.dim)
        lhs = dissipator_rhs(rho, gen)
        t1 = (j @ rho) @ jd - jd @ (j @ rho)
        t2 = j @ (rho @ jd) - (rho @ jd) @ j
        rhs = 0.5 * PARAMS.gamma1 * (t1 + t2)
        assert np.abs(lhs - rhs).max() < 1e-13


class TestMasterRhs:
    def test_stationary_diagonal(self):
        rng = np.random.default_rng(20)
        space = two_mode_space(3)
        p_diag = ModelParams(eps0=1.0, eps1=0.5, g1=0.0, E1=0.0, gamma1=0.0)
        gen_diag = make_generator(p_diag, space)
        w = rng.uniform(size=space.dim)
        rho = np.diag((w / w.sum()).astype(complex))
        out = master_rhs(rho, p_diag, gen_diag)
        assert np.abs(out).max() < 1e-14

    def test_hermiticity_and_trace_preserving(self):
        rng = np.random.default_rng(23)
        space = two_mode_space(3)
        gen = make_generator(PARAMS, space)
        for _ in range(5):
            out = master_rhs(random_state(rng, space.dim), PARAMS, gen)
            assert np.abs(out - out.conj().T).max() < 1e-13
            assert abs(out.trace()) < 1e-12

    def test_snapshot_time_independence(self):
        # generators snapshotted at different times give the same RHS at
        # the same absolute time
        rng = np.random.default_rng(28)
        space = two_mode_space(3)
        p = ModelParams(eps0=1.0, eps1=0.5, g1=0.4, E1=0.8 + 0.1j, omega1=2.0,
                        gamma1=0.1)
        rho = random_state(rng, space.dim)
        gen0 = make_generator(p, space, t=0.0)
        gen1 = make_generator(p, space, t=0.4)
        out0 = master_rhs(rho, p, gen0, t=1.1)
        out1 = master_rhs(rho, p, gen1, t=1.1)
        assert np.abs(out0 - out1).max() < 1e-13

    def test_total_number_conserved(self):
        rng = np.random.default_rng(24)
        space = two_mode_space(4)
        gen = make_generator(PARAMS, space)
        n_tot = number_op_sum(space, 1.0, 1.0)
        for _ in range(5):
            out = master_rhs(random_state(rng, space.dim), PARAMS, gen)
            assert abs((n_tot @ out).trace()) < 1e-12


class TestIntegrateMaster:
    def test_zero_time(self):
        space = two_mode_space(3)
        gen = make_generator(PARAMS, space)
        rho0 = two_mode_squeezed_vacuum(0.2, space)
        out = integrate_master(rho0, PARAMS, gen, 0.0, 1e-3)
        assert np.array_equal(out.matrix, rho0.matrix)

    def test_rate_equation_decay(self):
        # pure dissipation moves |0,1> population to |1,0> as exp(-gamma t)
        space = two_mode_space(2)
        p = ModelParams(eps0=0.0, eps1=0.0, g1=0.0, E1=0.0, gamma1=0.3)
        gen = make_generator(p, space)
        rho0 = DensityMatrix(space, np.outer(basis(space, 0, 1), basis(space, 0, 1).conj()))
        t1 = 2.0
        out = integrate_master(rho0, p, gen, t1, 1e-3)
        idx = space.index(0, 1)
        assert out.matrix[idx, idx].real == pytest.approx(np.exp(-0.3 * t1), abs=1e-8)

    def test_trace_distance_contractive(self):
        # CPTP contractivity: ||rho1(t) - rho2(t)||_1 never grows.  (Purity
        # itself is not monotone here: the channel is non-unital and drives
        # mixtures toward dark states, which can purify.)
        from tfdsim.numerics import trace_norm
        rng = np.random.default_rng(25)
        space = two_mode_space(3)
        gen = make_generator(PARAMS, space)
        rho1 = DensityMatrix(space, random_state(rng, space.dim))
        rho2 = DensityMatrix(space, random_state(rng, space.dim))
        dist = [trace_norm(rho1.matrix - rho2.matrix)]
        for _ in range(4):
            rho1 = integrate_master(rho1, PARAMS, gen, 0.5, 1e-3)
            rho2 = integrate_master(rho2, PARAMS, gen, 0.5, 1e-3)
            dist.append(trace_norm(rho1.matrix - rho2.matrix))
        for before, after in zip(dist, dist[1:]):
            assert after <= before + 1e-8

    def test_unitary_spectrum_conserved(self):
        rng = np.random.default_rng(26)
        space = two_mode_space(3)
        p = ModelParams(eps0=2.4, eps1=-1.2, g1=0.2, E1=0.7 + 0.3j, gamma1=0.0)
        gen = make_generator(p, space)
        rho0 = DensityMatrix(space, random_state(rng, space.dim))
        out = integrate_master(rho0, p, gen, 1.0, 1e-3)
        before = np.sort(np.linalg.eigvalsh(rho0.matrix))
        after = np.sort(np.linalg.eigvalsh(out.matrix))
        assert np.abs(before - after).max() < 1e-8

    def test_time_dependent_drive_path(self):
        # omega1 != 0 takes the generic RK4 route; trace still conserved
        space = two_mode_space(2)
        p = ModelParams(eps0=1.0, eps1=0.5, g1=0.4, E1=1.0, omega1=3.0, gamma1=0.1)
        gen = make_generator(p, space)
        rho0 = DensityMatrix(space, np.eye(4, dtype=complex) / 4.0)
        out = integrate_master(rho0, p, gen, 0.5, 1e-3)
        assert abs(out.matrix.trace() - 1.0) < 1e-10

    def test_backend_twins_agree(self):
        space = two_mode_space(3)
        gen = make_generator(PARAMS, space)
        rho0 = two_mode_squeezed_vacuum(0.2, space)
        via_api = integrate_master(rho0, PARAMS, gen, 0.3, 1e-3)
        j = gen.jump
        jd = j.conj().T
        ref, ok = _kernels_numpy.lindblad_rk4(
            gen.hamiltonian, j, jd, jd @ j, gen.rate,
            rho0.matrix.astype(complex), 300, 1e-3, 0.0)
        assert ok == 1
        assert np.abs(via_api.matrix - ref).max() < 1e-12


class TestMeasures:
    def test_product_state_not_entangled(self):
        space = two_mode_space(3)
        rho = DensityMatrix(space, np.kron(thermal_state(0.5, space.mode_a).matrix,
                                           thermal_state(1.0, space.mode_b).matrix))
        assert fock_log_negativity(rho) == pytest.approx(0.0, abs=1e-10)

    def test_bell_state(self):
        space = two_mode_space(2)
        psi = (basis(space, 0, 0) + basis(space, 1, 1)) / np.sqrt(2)
        rho = DensityMatrix(space, np.outer(psi, psi.conj()))
        assert fock_log_negativity(rho) == pytest.approx(np.log(2.0), abs=1e-12)

    def test_squeezed_vacuum_closed_form(self):
        rho = two_mode_squeezed_vacuum(0.3, two_mode_space(25))
        assert fock_log_negativity(rho) == pytest.approx(0.6, abs=1e-6)

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(27)
        space = two_mode_space(4)
        rho = two_mode_squeezed_vacuum(0.25, space)
        qa, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        qb, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        u = np.kron(qa, qb)
        rotated = DensityMatrix(space, u @ rho.matrix @ u.conj().T)
        assert fock_log_negativity(rotated) == pytest.approx(
            fock_log_negativity(rho), abs=1e-9)

    def test_entropy_pure_state(self):
        rho = two_mode_squeezed_vacuum(0.4, two_mode_space(10))
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-9)

    def test_entropy_maximally_mixed(self):
        rho = DensityMatrix(FockSpace(2), np.eye(2, dtype=complex) / 2)
        assert von_neumann_entropy(rho) == pytest.approx(np.log(2.0), abs=1e-12)

    def test_entropy_thermal_closed_form(self):
        rho = thermal_state(1.0, FockSpace(60))
        assert von_neumann_entropy(rho) == pytest.approx(2.0 * np.log(2.0), abs=1e-6)


class TestValidation:
    def test_negative_rate_rejected(self):
        with pytest.raises(ValueError):
            ModelParams(eps0=1.0, eps1=1.0, g1=0.1, E1=1.0, gamma1=-0.1)

    def test_non_hermitian_generator_rejected(self):
        with pytest.raises(ValueError):
            LindbladGenerator(np.array([[0.0, 1.0], [0.0, 0.0]]), np.eye(2), 0.1)
