import numpy as np
import pytest

from cyclictf.generators import delta_window, gaussian_window
from cyclictf.phasespace import Lattice
from cyclictf.transforms import (
    canonical_dual,
    dft,
    dft_matrix,
    frame_bounds,
    frame_operator,
    gabor_reconstruct,
    idft,
    stft,
    stft_adjoint,
    tf_shift,
)


def rand_signal(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


class TestDft:
    def test_impulse(self):
        out = dft(delta_window(8))
        assert np.allclose(out, np.full(8, 8**-0.5))

    def test_parseval(self):
        rng = np.random.default_rng(0)
        f = rand_signal(rng, 16)
        assert np.linalg.norm(dft(f)) == pytest.approx(np.linalg.norm(f))

    def test_fourth_power_is_identity(self):
        rng = np.random.default_rng(1)
        f = rand_signal(rng, 8)
        out = dft(dft(dft(dft(f))))
        assert np.abs(out - f).max() < 1e-12

    def test_idft_inverts(self):
        rng = np.random.default_rng(2)
        f = rand_signal(rng, 12)
        assert np.abs(idft(dft(f)) - f).max() < 1e-12

    def test_matrix_matches(self):
        rng = np.random.default_rng(3)
        f = rand_signal(rng, 8)
        assert np.allclose(dft_matrix(8) @ f, dft(f))


class TestTfShift:
    def test_identity_shift(self):
        rng = np.random.default_rng(4)
        f = rand_signal(rng, 8)
        assert np.allclose(tf_shift((0, 0), f), f)

    def test_unitary(self):
        rng = np.random.default_rng(5)
        f = rand_signal(rng, 8)
        assert np.linalg.norm(tf_shift((3, 5), f)) == pytest.approx(np.linalg.norm(f))

    def test_commutation_phase_exhaustive(self):
        # pi(z) pi(z') = e^{-2 pi i x w' / N} pi(z + z') for z = (x, w), z' = (x', w'),
        # with pi(z') applied first
        n = 8
        rng = np.random.default_rng(6)
        f = rand_signal(rng, n)
        for x in range(n):
            for w in range(n):
                for xp in range(n):
                    for wp in range(n):
                        lhs = tf_shift((x, w), tf_shift((xp, wp), f))
                        phase = np.exp(-2j * np.pi * x * wp / n)
                        rhs = phase * tf_shift((x + xp, w + wp), f)
                        assert np.abs(lhs - rhs).max() < 1e-12


class TestStft:
    def test_value_at_origin(self):
        rng = np.random.default_rng(7)
        f, g = rand_signal(rng, 8), rand_signal(rng, 8)
        assert stft(f, g)[0, 0] == pytest.approx(np.vdot(g, f))

    def test_cauchy_schwarz(self):
        rng = np.random.default_rng(8)
        f, g = rand_signal(rng, 16), rand_signal(rng, 16)
        bound = np.linalg.norm(f) * np.linalg.norm(g)
        assert np.abs(stft(f, g)).max() <= bound + 1e-12

    def test_matches_direct_sum(self):
        # independent slow oracle for the STFT definition
        rng = np.random.default_rng(9)
        n = 6
        f, g = rand_signal(rng, n), rand_signal(rng, n)
        grid = stft(f, g)
        for x in range(n):
            for w in range(n):
                direct = sum(
                    f[y] * np.conj(g[(y - x) % n]) * np.exp(-2j * np.pi * y * w / n)
                    for y in range(n)
                )
                assert grid[x, w] == pytest.approx(direct, abs=1e-12)

    def test_fundamental_identity(self):
        rng = np.random.default_rng(10)
        n = 8
        f, g = rand_signal(rng, n), rand_signal(rng, n)
        lhs = stft(f, g)
        hat = stft(dft(f), dft(g))
        for x in range(n):
            for w in range(n):
                rhs = np.exp(-2j * np.pi * x * w / n) * hat[w, (-x) % n]
                assert lhs[x, w] == pytest.approx(rhs, abs=1e-12)

    def test_zero_window_rejected(self):
        with pytest.raises(ValueError, match="non-zero"):
            stft(np.ones(4), np.zeros(4))


class TestStftAdjoint:
    def test_adjointness(self):
        rng = np.random.default_rng(11)
        n = 8
        f, g = rand_signal(rng, n), rand_signal(rng, n)
        coeff = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        lhs = np.vdot(coeff, stft(f, g))  # <V_g f, F>
        rhs = np.vdot(stft_adjoint(coeff, g), f)  # <f, V_g* F>
        assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_zero_coefficients(self):
        assert np.allclose(stft_adjoint(np.zeros((8, 8)), gaussian_window(8)), 0)

    def test_inversion_constant_from_delta_oracle(self):
        # Brute-force V_g* V_g delta_0 at N=4 pins the constant: the composition
        # is N ||g||^2 times the identity, so the calibrated constant is 1/N.
        n = 4
        rng = np.random.default_rng(12)
        g = rand_signal(rng, n)
        delta = np.zeros(n, dtype=complex)
        delta[0] = 1.0
        out = np.zeros(n, dtype=complex)
        for x in range(n):
            for w in range(n):
                coeff = sum(
                    delta[y] * np.conj(g[(y - x) % n]) * np.exp(-2j * np.pi * y * w / n)
                    for y in range(n)
                )
                out += coeff * tf_shift((x, w), g)
        measured = out[0] / (np.linalg.norm(g) ** 2 * delta[0])
        assert measured == pytest.approx(n, abs=1e-10)

    @pytest.mark.parametrize("n", [4, 8, 16])
    def test_inversion_all_signals(self, n):
        rng = np.random.default_rng(13)
        f, g = rand_signal(rng, n), rand_signal(rng, n)
        recon = stft_adjoint(stft(f, g), g) / (n * np.linalg.norm(g) ** 2)
        assert np.abs(recon - f).max() < 1e-10


class TestFrames:
    def test_full_grid_tight(self):
        # brute-force oracle at N=4: S = sum_z pi(z) phi <pi(z) phi, .> summed directly
        n = 4
        rng = np.random.default_rng(14)
        phi = rand_signal(rng, n)
        s = np.zeros((n, n), dtype=complex)
        for x in range(n):
            for w in range(n):
                v = tf_shift((x, w), phi)
                s += np.outer(v, v.conj())
        expected = n * np.linalg.norm(phi) ** 2 * np.eye(n)
        assert np.abs(s - expected).max() < 1e-10
        assert np.abs(frame_operator(phi, Lattice(1, 1)) - expected).max() < 1e-10

    def test_translation_frame_diagonal(self):
        n = 4
        phi = delta_window(n)
        s = frame_operator(phi, Lattice(1, n))
        assert np.abs(s - np.eye(n)).max() < 1e-12

    def test_hermitian_psd(self):
        rng = np.random.default_rng(15)
        phi = rand_signal(rng, 8)
        s = frame_operator(phi, Lattice(2, 4))
        assert np.abs(s - s.conj().T).max() < 1e-12
        assert np.linalg.eigvalsh(s).min() > -1e-12

    def test_commutes_with_lattice_shifts(self):
        rng = np.random.default_rng(16)
        phi = rand_signal(rng, 8)
        lat = Lattice(2, 2)
        s = frame_operator(phi, lat)
        for p in lat.points(8):
            shift = np.stack([tf_shift(p, e) for e in np.eye(8, dtype=complex).T], axis=1)
            assert np.abs(s @ shift - shift @ s).max() < 1e-10

    def test_full_grid_bounds(self):
        phi = gaussian_window(8)  # unit norm
        rep = frame_bounds(phi, Lattice(1, 1))
        assert rep.lower == pytest.approx(8.0, abs=1e-10)
        assert rep.upper == pytest.approx(8.0, abs=1e-10)
        assert rep.is_frame

    def test_undersampled_not_frame(self):
        rep = frame_bounds(gaussian_window(4), Lattice(2, 4))
        assert not rep.is_frame
        assert rep.condition == np.inf

    def test_gaussian_oversampled_regression(self):
        rep = frame_bounds(gaussian_window(16), Lattice(2, 2))
        assert rep.is_frame
        # frozen regression values from the eigenvalue oracle
        assert rep.lower == pytest.approx(3.970176713771, rel=1e-9)
        assert rep.upper == pytest.approx(4.029934881184, rel=1e-9)

    def test_bounds_ordered(self):
        rng = np.random.default_rng(19)
        for seed in range(5):
            phi = rand_signal(rng, 8)
            rep = frame_bounds(phi, Lattice(2, 2))
            assert rep.lower <= rep.upper + 1e-12

    def test_frame_bound_sandwich(self):
        rng = np.random.default_rng(17)
        phi = gaussian_window(16)
        lat = Lattice(2, 2)
        rep = frame_bounds(phi, lat)
        pts = lat.points(16)
        for _ in range(100):
            f = rand_signal(rng, 16)
            energy = sum(abs(np.vdot(tf_shift(p, phi), f)) ** 2 for p in pts)
            norm2 = np.linalg.norm(f) ** 2
            assert rep.lower * norm2 - 1e-8 <= energy <= rep.upper * norm2 + 1e-8


class TestCanonicalDual:
    def test_full_grid_dual(self):
        phi = gaussian_window(4)
        dual = canonical_dual(phi, Lattice(1, 1))
        assert np.abs(dual - phi / 4).max() < 1e-12

    def test_delta_dual(self):
        dual = canonical_dual(delta_window(4), Lattice(1, 1))
        assert np.abs(dual - delta_window(4) / 4).max() < 1e-12

    def test_reconstruction(self):
        rng = np.random.default_rng(18)
        phi = gaussian_window(16)
        lat = Lattice(2, 2)
        dual = canonical_dual(phi, lat)
        f = rand_signal(rng, 16)
        recon = gabor_reconstruct(f, phi, dual, lat)
        assert np.abs(recon - f).max() < 1e-8

    def test_singular_rejected(self):
        with pytest.raises(ValueError, match="singular"):
            canonical_dual(gaussian_window(4), Lattice(2, 4))


class TestInputValidation:
    def test_signal_must_be_vector(self):
        with pytest.raises(ValueError, match="one-dimensional"):
            dft(np.ones((4, 4)))

    def test_adjoint_grid_shape(self):
        from cyclictf.transforms import stft_adjoint

        with pytest.raises(ValueError, match="N x N"):
            stft_adjoint(np.ones((4, 5)), gaussian_window(4))

    def test_grid_stft_zero_window(self):
        from cyclictf.transforms import stft_grid

        with pytest.raises(ValueError, match="non-zero"):
            stft_grid(np.ones((4, 4)), np.zeros((4, 4)))

    def test_frame_operator_zero_window(self):
        with pytest.raises(ValueError, match="non-zero"):
            frame_operator(np.zeros(4), Lattice(1, 1))
