import json

import numpy as np
import pytest

from gfrframes import graph_basis, io
from gfrframes.cli import build_parser, main


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def ring(tmp_path):
    g = tmp_path / "g.json"
    assert run("graph", "--kind", "random_ring", "--n", 16, "--seed", 3, "--out", g) == 0
    s = tmp_path / "s.csv"
    assert run("signal", "--kind", "f9_chirp", "--n", 16, "--out", s) == 0
    return g, s


def _windows(tmp_path, graph, name, *extra):
    out = tmp_path / f"{name}.json"
    assert run("windows", "--graph", graph, "--out", out, *extra) == 0
    return out


class TestParser:
    def test_help_exits_zero(self, capsys):
        assert run("--help") == 0
        assert "transform" in capsys.readouterr().out

    def test_all_subcommands(self):
        assert set(build_parser().subcommands) == {"graph", "signal", "windows", "transform", "frame",
                                                    "bench", "detect", "nmse"}

    def test_bad_kind(self, tmp_path, capsys):
        assert run("graph", "--kind", "torus", "--out", tmp_path / "g.json") == 2
        assert "torus" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run("frame", "--graph", tmp_path / "nope.json", "--windows", "w.json") == 2

    def test_unknown_algorithm(self, tmp_path, ring):
        g, s = ring
        w = _windows(tmp_path, g, "w", "--tau", 0.5)
        assert run("transform", "--graph", g, "--signal", s, "--windows", w, "--algo", "fft") == 2


class TestGraphAndSignal:
    def test_reruns_are_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run("graph", "--kind", "random_ring", "--n", 30, "--seed", 9, "--out", a)
        run("graph", "--kind", "random_ring", "--n", 30, "--seed", 9, "--out", b)
        assert a.read_bytes() == b.read_bytes()

    def test_generator_params(self, tmp_path):
        out = tmp_path / "c.json"
        assert run("graph", "--kind", "community", "--n", 30, "--param", "n_clusters=2", "--out", out) == 0
        assert run("graph", "--kind", "community", "--n", 30, "--param", "clusters=2", "--out", out) == 2

    def test_eigvec_signal_is_one_based(self, tmp_path, ring):
        g, _ = ring
        out = tmp_path / "e.csv"
        assert run("signal", "--graph", g, "--kind", "eigvec_combination", "--indices", "1,3",
                   "--alpha", 1.0, "--out", out) == 0
        b = graph_basis(io.read_graph(g), 1.0)
        assert np.allclose(io.read_signal(out), b.gamma[:, 0].real + b.gamma[:, 2].real)


class TestTransform:
    def test_fast_and_naive_outputs_agree(self, tmp_path, ring):
        g, s = ring
        w = _windows(tmp_path, g, "w", "--tau", 0.5, "--L", 3)
        for algo in ("fmwgfrft", "mwgfrft"):
            assert run("transform", "--graph", g, "--signal", s, "--windows", w, "--algo", algo,
                       "--out-dir", tmp_path / algo) == 0
        a = io.read_complex_matrix(tmp_path / "fmwgfrft" / "coefficients.csv")
        b = io.read_complex_matrix(tmp_path / "mwgfrft" / "coefficients.csv")
        assert a.shape == (16, 16)
        assert np.max(np.abs(a - b)) <= 1e-9
        pa, pb = (io.read_pgm(tmp_path / d / "heatmap.pgm") for d in ("fmwgfrft", "mwgfrft"))
        assert np.array_equal(pa, pb)

    def test_wgft_pins_alpha_and_window(self, tmp_path, ring):
        g, s = ring
        w = _windows(tmp_path, g, "w", "--tau", 0.5, "--L", 3)
        out = tmp_path / "t"
        assert run("transform", "--graph", g, "--signal", s, "--windows", w, "--algo", "wgft",
                   "--out-dir", out) == 0
        meta = json.loads((out / "transform.json").read_text())
        assert meta["alpha"] == 1.0 and meta["L"] == 1

    def test_per_window_files(self, tmp_path, ring):
        g, s = ring
        w = _windows(tmp_path, g, "w", "--tau", 0.5, "--L", 2)
        out = tmp_path / "t"
        assert run("transform", "--graph", g, "--signal", s, "--windows", w, "--per-window",
                   "--out-dir", out) == 0
        parts = [io.read_complex_matrix(out / f"coefficients_window_{l}.csv") for l in (1, 2)]
        assert np.allclose(parts[0] + parts[1], io.read_complex_matrix(out / "coefficients.csv"))

    def test_shift_transform(self, tmp_path, ring):
        g, s = ring
        w = _windows(tmp_path, g, "w", "--kind", "householder")
        assert run("transform", "--graph", g, "--signal", s, "--windows", w, "--algo", "smwgfrft",
                   "--out-dir", tmp_path / "t") == 0

    def test_windows_rebased_to_other_alpha(self, tmp_path, ring):
        g, s = ring
        w = _windows(tmp_path, g, "w", "--tau", 0.5, "--alpha", 0.5)
        assert run("transform", "--graph", g, "--signal", s, "--windows", w, "--algo", "mwgft",
                   "--out-dir", tmp_path / "t") == 0

    def test_signal_length_mismatch(self, tmp_path, ring):
        g, _ = ring
        short = tmp_path / "short.csv"
        io.write_signal(np.ones(5), short)
        w = _windows(tmp_path, g, "w", "--tau", 0.5)
        assert run("transform", "--graph", g, "--signal", short, "--windows", w) == 2


class TestFrame:
    def test_bspline_tight(self, tmp_path, ring):
        g, _ = ring
        w = _windows(tmp_path, g, "b", "--kind", "bspline", "--normalized", "--alpha", 0.9)
        out = tmp_path / "f.json"
        assert run("frame", "--graph", g, "--windows", w, "--normalized", "--alpha", 0.9, "--out", out) == 0
        rep = json.loads(out.read_text())
        assert rep["tight"] and rep["C"] == pytest.approx(16 ** 1.8)
        assert rep["residual"] < 1e-10
        assert 1 <= rep["c_min_index"] <= 16

    def test_zero_window_not_a_frame(self, tmp_path, ring):
        g, _ = ring
        w = _windows(tmp_path, g, "z", "--kind", "zero")
        out = tmp_path / "f.json"
        assert run("frame", "--graph", g, "--windows", w, "--out", out) == 0
        rep = json.loads(out.read_text())
        assert rep["is_frame"] is False and rep["residual"] is None

    def test_dual_pair(self, tmp_path, ring):
        g, _ = ring
        h = _windows(tmp_path, g, "h", "--tau", 0.5)
        d = _windows(tmp_path, g, "d", "--kind", "dual_heat", "--tau", 0.5)
        out = tmp_path / "f.json"
        assert run("frame", "--graph", g, "--windows", h, "--dual", d, "--out", out) == 0
        dual = json.loads(out.read_text())["dual"]
        assert dual["ok"] and dual["residual"] < 1e-9
        assert dual["C"] == pytest.approx(1 / (16 ** 1.6 * dual["mu"]))

    def test_not_dual(self, tmp_path, ring):
        g, _ = ring
        h = _windows(tmp_path, g, "h", "--tau", 0.5)
        out = tmp_path / "f.json"
        assert run("frame", "--graph", g, "--windows", h, "--dual", h, "--out", out) == 0
        assert json.loads(out.read_text())["dual"]["ok"] is False

    def test_shift_family(self, tmp_path, ring):
        g, _ = ring
        w = _windows(tmp_path, g, "hh", "--kind", "householder")
        out = tmp_path / "f.json"
        assert run("frame", "--graph", g, "--windows", w, "--family", "shift", "--out", out) == 0
        rep = json.loads(out.read_text())
        assert rep["family"] == "smwgfrff" and rep["residual"] < 1e-9


class TestDetectNmseBench:
    def test_detect_fixture(self, tmp_path):
        out, hm = tmp_path / "d.json", tmp_path / "d.pgm"
        assert run("detect", "--seed", 0, "--out", out, "--heatmap", hm) == 0
        rep = json.loads(out.read_text())
        assert rep["match"] and all(1 <= i <= 20 for i in rep["planted"])
        assert io.read_pgm(hm).shape == (20, 20)

    def test_detect_on_signal(self, tmp_path, ring):
        g, s = ring
        w = _windows(tmp_path, g, "w", "--tau", 0.01, "--alpha", 0.4)
        out = tmp_path / "d.json"
        assert run("detect", "--graph", g, "--signal", s, "--windows", w, "--out", out) == 0
        assert "planted" not in json.loads(out.read_text())

    def test_nmse_csv(self, tmp_path):
        out = tmp_path / "n.csv"
        assert run("nmse", "--n", 30, "--trials", 2, "--L", 3, "--alphas", "0.6,1.0", "--out", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "alpha,noise_param,mean_nmse,std_nmse" and len(lines) == 7

    def test_bench_single_thread(self, tmp_path):
        csv_path, js = tmp_path / "b.csv", tmp_path / "b.json"
        assert run("bench", "--sizes", "8,16", "--L", 2, "--reps", 3, "--threads", 1,
                   "--out-csv", csv_path, "--out-json", js) == 0
        assert len(csv_path.read_text().splitlines()) == 5
        assert "slope_fast" in json.loads(js.read_text())


class TestConfig:
    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"kind": "path", "n": 7, "out": str(tmp_path / "cfg_graph.json")}))
        assert run("graph", "--config", cfg) == 0
        assert io.read_graph(tmp_path / "cfg_graph.json").n == 7
        assert run("graph", "--config", cfg, "--n", 9) == 0
        assert io.read_graph(tmp_path / "cfg_graph.json").n == 9

    def test_unknown_config_key(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"nodes": 7}))
        assert run("graph", "--config", cfg) == 2
