import numpy as np
import pytest

from gfrframes import (bspline_n2, bspline_tight_windows, dual_heat_window, eigenvector_windows,
                       frame_bounds_mw, frame_vector_mw, frame_vector_shift, fractional_shift,
                       gaussian_window, generate_graph, graph_basis, heat_window, householder_windows,
                       translate, translated_family, verify_dual_windows)
from gfrframes.exceptions import DimensionError
from gfrframes.frames import gram
from gfrframes.windows import default_householder_generator, even_centers


class TestHeatWindow:
    def test_large_tau_still_unit(self):
        b = graph_basis(generate_graph("path", 256), 0.8)
        ws = heat_window(b, 300.0)
        assert np.linalg.norm(ws.profiles[0]) == pytest.approx(1.0)
        ref = np.exp(-300.0 * b.eigenvalues)
        assert np.allclose(ws.profiles[0], ref / np.linalg.norm(ref))
        sharp = heat_window(graph_basis(generate_graph("ring", 12), 0.5), 1e4).profiles[0]
        assert np.allclose(sharp, np.eye(12)[0])

    def test_tiny_tau_is_flat(self):
        b = graph_basis(generate_graph("sphere", 30, seed=0), 0.5)
        assert np.allclose(heat_window(b, 1e-12).profiles[0], 1 / np.sqrt(30))

    def test_ring60_formula(self):
        b = graph_basis(generate_graph("ring", 60), 0.7)
        lam = b.eigenvalues
        ref = np.exp(-60 * lam)
        ref /= np.linalg.norm(ref)
        assert np.allclose(heat_window(b, 60.0).profiles[0], ref, rtol=1e-12)

    def test_unnormalized(self):
        b = graph_basis(generate_graph("path", 8), 0.5)
        assert np.allclose(heat_window(b, 0.3, normalize=False).profiles[0], np.exp(-0.3 * b.eigenvalues))

    def test_tau_positive(self):
        b = graph_basis(generate_graph("path", 8), 0.5)
        for tau in (0.0, -1.0, float("nan")):
            with pytest.raises(ValueError):
                heat_window(b, tau)


class TestGaussianWindow:
    def test_normalized(self):
        b = graph_basis(generate_graph("sphere", 20, seed=1), 0.6)
        assert np.linalg.norm(gaussian_window(b, 0.5).profiles[0]) == pytest.approx(1.0)

    def test_flat_limit(self):
        b = graph_basis(generate_graph("sphere", 20, seed=1), 0.6)
        assert np.allclose(gaussian_window(b, 1e-14).profiles[0], 1 / np.sqrt(20))

    def test_formula(self):
        b = graph_basis(generate_graph("random_ring", 32, seed=0), 0.9)
        ref = np.exp(-2.0 * b.eigenvalues ** 2)
        assert np.allclose(gaussian_window(b, 2.0).profiles[0], ref / np.linalg.norm(ref))


class TestDualHeatWindow:
    def test_tau_zero_is_constant(self):
        b = graph_basis(generate_graph("path", 9), 0.5)
        ws = dual_heat_window(b, 0.0)
        assert np.allclose(ws.profiles[0], 1 / 3)
        assert ws.params["mu"] == pytest.approx(1 / 3)

    def test_large_tau_log_mu(self):
        b = graph_basis(generate_graph("community", 80, seed=0), 0.6)
        lam = b.eigenvalues
        ws = dual_heat_window(b, 60.0)
        top = lam.max()
        expected = -60 * top - 0.5 * np.log(np.sum(np.exp(120 * (lam - top))))
        assert ws.params["log_mu"] == pytest.approx(expected, rel=1e-12)
        assert np.linalg.norm(ws.profiles[0]) == pytest.approx(1.0)
        assert np.all(np.isfinite(ws.profiles))

    def test_explicit_mu(self):
        b = graph_basis(generate_graph("path", 9), 0.5)
        ws = dual_heat_window(b, 0.4, mu=2.0)
        assert np.allclose(ws.profiles[0], 2 * np.exp(0.4 * b.eigenvalues))
        with pytest.raises(ValueError):
            dual_heat_window(b, 0.4, mu=0.0)

    def test_explicit_mu_overflow_guard(self):
        b = graph_basis(generate_graph("community", 80, seed=0), 0.6)
        with pytest.raises(OverflowError):
            dual_heat_window(b, 60.0, mu=1.0)

    def test_pairs_with_heat(self):
        b = graph_basis(generate_graph("sphere", 18, seed=0), 0.7)
        chk = verify_dual_windows(heat_window(b, 1.5), dual_heat_window(b, 1.5), b)
        assert chk.mu > 0 and chk.dual_is_frame


class TestTranslatedFamily:
    def test_single(self):
        b = graph_basis(generate_graph("ring", 8), 0.5)
        mother = heat_window(b, 0.5)
        ws = translated_family(mother, 1, b)
        assert ws.params["centers"] == [0]
        assert np.allclose(ws.vertex_windows[0], translate(mother.vertex_windows[0], 0, b))

    def test_even_centres_n256(self):
        assert even_centers(256, 10) == [int(round(l * 25.6)) for l in range(10)]
        b = graph_basis(generate_graph("path", 256), 0.8)
        mother = gaussian_window(b, 0.5)
        ws = translated_family(mother, 10, b)
        assert ws.L == 10 and ws.params["tau"] == 0.5
        for l, c in enumerate(ws.params["centers"]):
            assert np.allclose(ws.vertex_windows[l], translate(mother.vertex_windows[0], c, b), atol=1e-12)

    def test_explicit_placement(self):
        b = graph_basis(generate_graph("ring", 8), 0.5)
        ws = translated_family(heat_window(b, 0.5), 2, b, placement=[5, 1])
        assert ws.params["centers"] == [5, 1]

    @pytest.mark.parametrize("placement", [[1, 1], [0, 8], [0]])
    def test_bad_placement(self, placement):
        b = graph_basis(generate_graph("ring", 8), 0.5)
        with pytest.raises(ValueError):
            translated_family(heat_window(b, 0.5), 2, b, placement=placement)

    def test_bad_l_and_mother(self):
        b = graph_basis(generate_graph("ring", 8), 0.5)
        h = heat_window(b, 0.5)
        with pytest.raises(ValueError):
            translated_family(h, 9, b)
        with pytest.raises(DimensionError):
            translated_family(h + h, 2, b)


class TestBSpline:
    def test_values(self):
        assert bspline_n2(0.5) == 0.5
        assert bspline_n2(1.0) == 1.0
        assert bspline_n2(-0.3) == 0.0
        assert bspline_n2(2.5) == 0.0
        assert bspline_n2(1.5) == 0.5

    def test_partition_of_unity(self):
        r = np.linspace(0, 2, 101)
        total = bspline_n2(r - 1) + bspline_n2(r) + bspline_n2(r + 1)
        assert np.allclose(total, 1.0)

    def test_zero_frequency_uses_third_window(self):
        b = graph_basis(generate_graph("ring", 16), 0.9, normalized=True)
        p = bspline_tight_windows(b).profiles
        assert b.r[0] == 0
        assert np.allclose(p[:, 0], [0, 0, 1])

    def test_tight_constant(self):
        b = graph_basis(generate_graph("ring", 16), 0.9, normalized=True)
        d = frame_bounds_mw(bspline_tight_windows(b), b)
        assert d.tight
        assert d.A == pytest.approx(16 ** 1.8) and d.B == pytest.approx(16 ** 1.8)

    def test_needs_normalized_spectrum(self):
        b = graph_basis(generate_graph("ring", 16), 0.9)
        with pytest.raises(ValueError):
            bspline_tight_windows(b)


class TestHouseholder:
    def test_default_generator(self):
        v = default_householder_generator(15)
        assert np.allclose(v[:10], np.exp(-0.5 * np.arange(10)))
        assert np.all(v[10:] == 0)

    def test_orthogonal(self):
        b = graph_basis(generate_graph("sphere", 15, seed=0), 0.5)
        H = householder_windows(b).vertex_windows
        assert np.allclose(H.conj().T @ H, np.eye(15))
        assert np.allclose(gram(householder_windows(b)), np.eye(15))

    def test_shift_frame_vector_is_row_energy(self):
        g = generate_graph("sphere", 15, seed=0)
        b = graph_basis(g, 0.5)
        s = fractional_shift(g, 0.5)
        c = frame_vector_shift(householder_windows(b), s)
        assert np.allclose(c, np.sum(np.abs(s.s_alpha) ** 2, axis=1))

    def test_generator_validation(self):
        b = graph_basis(generate_graph("ring", 6), 0.5)
        with pytest.raises(DimensionError):
            householder_windows(b, np.ones(5))
        with pytest.raises(ValueError):
            householder_windows(b, np.zeros(6))


class TestEigenvectorWindows:
    def test_gram_identity(self):
        b = graph_basis(generate_graph("ring", 12), 0.6)
        assert np.allclose(gram(eigenvector_windows(b)), np.eye(12))

    def test_frame_vector(self):
        b = graph_basis(generate_graph("ring", 12), 0.6)
        assert np.allclose(frame_vector_mw(eigenvector_windows(b), b), 12 ** 1.2)
