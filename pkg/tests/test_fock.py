"""Tests for the truncated Fock-space layer."""

import numpy as np
import pytest

from tfdsim.fock import (DensityMatrix, FockSpace, annihilation,
                         bose_einstein_nbar, creation, embed, number_op,
                         partial_trace, partial_transpose, thermal_state,
                         thermal_weight, two_mode_space,
                         two_mode_squeezed_vacuum, HBAR_SI, KB_SI)


def basis(space, na, nb):
    v = np.zeros(space.dim, dtype=complex)
    v[space.index(na, nb)] = 1.0
    return v


class TestOperators:
    def test_annihilation_dim2(self):
        assert np.array_equal(annihilation(FockSpace(2)), [[0.0, 1.0], [0.0, 0.0]])

    def test_annihilation_dim3(self):
        a = annihilation(FockSpace(3))
        assert a[0, 1] == 1.0 and a[1, 2] == pytest.approx(np.sqrt(2))
        assert np.count_nonzero(a) == 2

    def test_number_operator(self):
        space = FockSpace(6)
        a = annihilation(space)
        assert np.abs(a.conj().T @ a - number_op(space)).max() < 1e-14

    def test_truncated_commutator(self):
        # [a, a+] = I - dim |top><top| exactly on the truncated space
        space = FockSpace(5)
        a = annihilation(space)
        comm = a @ a.conj().T - a.conj().T @ a
        expect = np.eye(5, dtype=complex)
        expect[4, 4] = 1.0 - 5.0
        assert np.abs(comm - expect).max() < 1e-14


class TestEmbed:
    def test_identity(self):
        space = two_mode_space(3, 4)
        out = embed(np.eye(3), "a", space)
        assert np.array_equal(out, np.eye(12))

    def test_disjoint_modes_commute(self):
        space = two_mode_space(4)
        a = embed(annihilation(space.mode_a), "a", space)
        bd = embed(creation(space.mode_b), "b", space)
        assert np.array_equal(a @ bd - bd @ a, np.zeros_like(a))

    def test_lowering_both_modes(self):
        space = two_mode_space(3)
        a = embed(annihilation(space.mode_a), "a", space)
        b = embed(annihilation(space.mode_b), "b", space)
        assert np.allclose(a @ b @ basis(space, 1, 1), basis(space, 0, 0))

    def test_dimension_mismatch(self):
        space = two_mode_space(3, 4)
        with pytest.raises(ValueError):
            embed(np.eye(4), "a", space)


class TestThermalState:
    def test_vacuum_limit(self):
        rho = thermal_state(0.0, FockSpace(4))
        expect = np.zeros((4, 4))
        expect[0, 0] = 1.0
        assert np.allclose(rho.matrix, expect)

    def test_geometric_weights(self):
        rho = thermal_state(1.0, FockSpace(3))
        assert np.allclose(np.diag(rho.matrix).real, [4 / 7, 2 / 7, 1 / 7])

    def test_mean_occupation(self):
        n_bar, dim = 1.0, 20
        rho = thermal_state(n_bar, FockSpace(dim))
        mean = float(np.diag(rho.matrix).real @ np.arange(dim))
        bound = (n_bar / (n_bar + 1.0)) ** dim * dim
        assert abs(mean - n_bar) <= bound * 1.01

    def test_valid_density_matrix(self):
        thermal_state(2.5, FockSpace(10)).validate()


class TestBoseEinstein:
    def test_zero_temperature(self):
        assert bose_einstein_nbar(1.5, 0.0) == 0.0

    def test_ln2_exponent(self):
        # hbar*omega/kB*T = ln 2  ->  n_bar = 1
        t = 1e-3
        omega = np.log(2.0) * KB_SI * t / HBAR_SI
        assert bose_einstein_nbar(omega, t) == pytest.approx(1.0, abs=1e-12)

    def test_unit_exponent(self):
        t = 1.0
        omega = KB_SI * t / HBAR_SI
        assert bose_einstein_nbar(omega, t) == pytest.approx(1.0 / (np.e - 1.0), abs=1e-9)

    def test_overflow_returns_zero(self):
        assert bose_einstein_nbar(1e15, 1e-15) == 0.0


class TestPartialTrace:
    def test_product_state(self):
        space = two_mode_space(3)
        rho_a = thermal_state(0.5, space.mode_a)
        rho_b = thermal_state(1.5, space.mode_b)
        joint = DensityMatrix(space, np.kron(rho_a.matrix, rho_b.matrix))
        assert np.abs(partial_trace(joint, "a").matrix - rho_a.matrix).max() < 1e-14
        assert np.abs(partial_trace(joint, "b").matrix - rho_b.matrix).max() < 1e-14

    def test_maximally_correlated(self):
        space = two_mode_space(2)
        m = np.zeros((4, 4), dtype=complex)
        for i in (0, 1):
            m[space.index(i, i), space.index(i, i)] = 0.5
        rho = DensityMatrix(space, m)
        assert np.allclose(partial_trace(rho, "a").matrix, np.eye(2) / 2)

    def test_squeezed_vacuum_reduces_to_thermal(self):
        r = 0.3
        rho = two_mode_squeezed_vacuum(r, two_mode_space(25))
        reduced = partial_trace(rho, "a")
        n_bar = np.sinh(r) ** 2
        expect = np.array([thermal_weight(n_bar, n) for n in range(25)])
        assert np.abs(np.diag(reduced.matrix).real - expect).max() < 1e-10

    def test_single_mode_rejected(self):
        rho = thermal_state(1.0, FockSpace(3))
        with pytest.raises(ValueError):
            partial_trace(rho, "a")


class TestPartialTranspose:
    def test_product_state_spectrum(self):
        space = two_mode_space(3)
        rho = DensityMatrix(space, np.kron(thermal_state(0.5, space.mode_a).matrix,
                                           thermal_state(1.5, space.mode_b).matrix))
        before = np.linalg.eigvalsh(rho.matrix)
        after = np.linalg.eigvalsh(partial_transpose(rho, "b"))
        assert np.abs(np.sort(before) - np.sort(after)).max() < 1e-12

    def test_bell_state_negative_eigenvalue(self):
        space = two_mode_space(2)
        psi = (basis(space, 0, 0) + basis(space, 1, 1)) / np.sqrt(2)
        rho = DensityMatrix(space, np.outer(psi, psi.conj()))
        vals = np.linalg.eigvalsh(partial_transpose(rho, "b"))
        assert vals.min() == pytest.approx(-0.5, abs=1e-12)

    def test_involution(self):
        rng = np.random.default_rng(12)
        space = two_mode_space(3)
        g = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        m = g @ g.conj().T
        m /= m.trace()
        rho = DensityMatrix(space, m)
        twice = partial_transpose(DensityMatrix(space, partial_transpose(rho, "b")), "b")
        assert np.array_equal(twice, m)

    def test_hermiticity_preserved(self):
        rho = two_mode_squeezed_vacuum(0.4, two_mode_space(8))
        pt = partial_transpose(rho, "b")
        assert np.abs(pt - pt.conj().T).max() < 1e-14


class TestValidation:
    def test_dim_lower_bound(self):
        with pytest.raises(ValueError):
            FockSpace(1)

    def test_trace_violation(self):
        with pytest.raises(ValueError):
            DensityMatrix(FockSpace(2), np.eye(2, dtype=complex)).validate()
