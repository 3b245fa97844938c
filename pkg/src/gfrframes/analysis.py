"""Spectrograms, noise models, NMSE, anomaly detection and timing benchmarks."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from threadpoolctl import threadpool_limits

from .graph import generate_graph, generate_signal
from .spectral import graph_basis
from .transforms import fmwgfrft, mwgfrft
from .windows import gaussian_window, heat_window, translated_family

NOISE_MODELS = ("gaussian", "poisson", "exponential")


@dataclass(frozen=True)
class Spectrogram:
    values: np.ndarray
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BenchmarkRecord:
    sizes_naive: list
    sizes_fast: list
    times_naive: list
    times_fast: list
    slope_naive: float
    slope_fast: float
    meta: dict = field(default_factory=dict)

    def rows(self):
        """``(N, algorithm, median_seconds)`` tuples."""
        out = [(n, "mwgfrft", t) for n, t in zip(self.sizes_naive, self.times_naive)]
        out += [(n, "fmwgfrft", t) for n, t in zip(self.sizes_fast, self.times_fast)]
        return out

    def summary(self) -> dict:
        return {"slope_naive": self.slope_naive, "slope_fast": self.slope_fast,
                "sizes_naive": list(self.sizes_naive), "sizes_fast": list(self.sizes_fast),
                "times_naive": list(self.times_naive), "times_fast": list(self.times_fast),
                **self.meta}


def spectrogram(coeffs, **meta) -> Spectrogram:
    c = np.asarray(coeffs)
    return Spectrogram(np.real(c * c.conj()), dict(meta))


def add_noise(f, model: str, param: float, seed: int, centered: bool = False) -> np.ndarray:
    """Additive noise, one draw per vertex.

    ``gaussian``: N(0, param^2). ``poisson``: Poisson with mean ``param``.
    ``exponential``: exponential with mean (scale) ``param``. ``centered``
    subtracts the mean of the poisson/exponential draw.
    """
    if model not in NOISE_MODELS:
        raise ValueError(f"unknown noise model {model!r}; choose from {NOISE_MODELS}")
    if not (param >= 0 and math.isfinite(param)):
        raise ValueError(f"noise parameter must be non-negative, got {param}")
    f = np.asarray(f)
    rng = np.random.default_rng(seed)
    if model == "gaussian":
        noise = rng.normal(0.0, param, size=f.shape)
    elif model == "poisson":
        noise = rng.poisson(param, size=f.shape).astype(float)
    else:
        noise = rng.exponential(param, size=f.shape) if param > 0 else np.zeros(f.shape)
    if centered and model != "gaussian":
        noise = noise - param
    return f + noise


def nmse(reference, contaminated) -> float:
    """``mean |ref - other|^2 / ||ref||_F^2``."""
    ref = np.asarray(reference)
    other = np.asarray(contaminated)
    if ref.shape != other.shape:
        raise ValueError(f"shape mismatch {ref.shape} vs {other.shape}")
    energy = float(np.sum(np.abs(ref) ** 2))
    if energy == 0:
        raise ValueError("reference coefficients have zero energy")
    return float(np.mean(np.abs(ref - other) ** 2)) / energy


def detect_anomalies(spec) -> set:
    """Vertices whose row maximum exceeds half the global maximum."""
    S = spec.values if isinstance(spec, Spectrogram) else np.asarray(spec)
    if S.size == 0:
        raise ValueError("empty spectrogram")
    m = S.max(axis=1)
    delta = 0.5 * S.max()
    return {int(i) for i in np.flatnonzero(m > delta)}


NMSE_EXPERIMENTS = {
    "sphere": ("poisson", "f7_sine"),
    "community": ("exponential", "f8_piecewise"),
    "swiss_roll": ("gaussian", "f9_chirp"),
}


def nmse_sweep(graph_family: str, n: int, signal_kind: str, model: str, params=(0.2, 0.3, 0.5),
               alphas=(0.8,), trials: int = 20, L: int = 20, tau: float = 0.5, seed: int = 0):
    """Mean and standard deviation of FMWGFRFT-coefficient NMSE under additive noise.

    The graph uses ``seed``; trial ``t`` draws noise with seed ``seed + t``.
    Windows are ``L`` even translates of a Gaussian mother window. Returns rows
    ``(alpha, noise_param, mean_nmse, std_nmse)``.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    graph = generate_graph(graph_family, n, seed=seed)
    f = generate_signal(signal_kind, n)
    rows = []
    for alpha in alphas:
        basis = graph_basis(graph, alpha)
        ws = translated_family(gaussian_window(basis, tau), L, basis)
        ref = fmwgfrft(f, ws, basis)
        for p in params:
            vals = [nmse(ref, fmwgfrft(add_noise(f, model, p, seed + t), ws, basis)) for t in range(trials)]
            rows.append((float(alpha), float(p), float(np.mean(vals)), float(np.std(vals))))
    return rows


ANOMALY_TAUS = (0.005, 0.01, 0.02)


def planted_anomalies(n: int, seed: int, n_anomalies: int = 2, amplitude: float = 5.0):
    """Uniform ``[-1, 1]`` signal with ``n_anomalies`` vertices set to ``amplitude``.

    Returns ``(f, planted)`` where ``planted`` is the set of 0-based vertices.
    """
    if not 1 <= n_anomalies <= n:
        raise ValueError(f"n_anomalies must be in [1, {n}], got {n_anomalies}")
    rng = np.random.default_rng(seed)
    f = rng.uniform(-1.0, 1.0, n)
    idx = rng.choice(n, n_anomalies, replace=False)
    f[idx] = amplitude
    return f, {int(i) for i in idx}


def anomaly_experiment(seed: int, n: int = 20, alpha: float = 0.4, amplitude: float = 5.0,
                       n_anomalies: int = 2, taus=ANOMALY_TAUS):
    """Planted-anomaly run on a seeded community graph.

    Windows are narrow heat kernels, one per ``tau``; the detector reads the
    FMWGFRFT spectrogram. Returns ``(detected, planted, spectrogram)``.
    """
    graph = generate_graph("community", n, seed=seed)
    basis = graph_basis(graph, alpha)
    f, planted = planted_anomalies(n, seed + 1000, n_anomalies, amplitude)
    ws = heat_window(basis, taus[0])
    for t in taus[1:]:
        ws = ws + heat_window(basis, t)
    spec = spectrogram(fmwgfrft(f, ws, basis), transform="fmwgfrft", alpha=alpha, windows="heat")
    return detect_anomalies(spec), planted, spec


def loglog_slope(sizes, times) -> float:
    """Least-squares slope of ``log t`` against ``log N`` over the larger half of sizes."""
    sizes = np.asarray(sizes, dtype=float)
    times = np.asarray(times, dtype=float)
    order = np.argsort(sizes)
    sizes, times = sizes[order], times[order]
    k = max(2, math.ceil(len(sizes) / 2))
    x, y = np.log(sizes[-k:]), np.log(times[-k:])
    return float(np.polyfit(x, y, 1)[0])


def _median_time(fn, reps):
    ts = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    return float(np.median(ts))


def benchmark(graph_family: str = "random_ring", sizes=(64, 128, 256, 512), L: int = 10,
              alpha: float = 0.8, reps: int = 5, seed: int = 0, naive_sizes=None,
              fast_sizes=None, tau: float = 0.5) -> BenchmarkRecord:
    """Median single-threaded wall time of naive and fast multi-window transforms.

    Gaussian mother window, ``L`` even translates, seeded random signal. Basis
    and window construction are excluded from the timing.
    """
    if reps < 3:
        raise ValueError("benchmark needs reps >= 3")
    naive_sizes = sorted(sizes if naive_sizes is None else naive_sizes)
    fast_sizes = sorted(sizes if fast_sizes is None else fast_sizes)
    setups = {}
    rng = np.random.default_rng(seed)

    def setup(n):
        if n not in setups:
            g = generate_graph(graph_family, n, seed=seed)
            basis = graph_basis(g, alpha)
            ws = translated_family(gaussian_window(basis, tau), L, basis)
            f = rng.standard_normal(n)
            setups[n] = (f, ws, basis)
        return setups[n]

    t_naive, t_fast = [], []
    with threadpool_limits(limits=1):
        for n in naive_sizes:
            f, ws, basis = setup(n)
            t_naive.append(_median_time(lambda: mwgfrft(f, ws, basis, method="direct"), reps))
        for n in fast_sizes:
            f, ws, basis = setup(n)
            t_fast.append(_median_time(lambda: fmwgfrft(f, ws, basis), reps))
    return BenchmarkRecord(
        naive_sizes, fast_sizes, t_naive, t_fast,
        loglog_slope(naive_sizes, t_naive) if len(naive_sizes) >= 2 else float("nan"),
        loglog_slope(fast_sizes, t_fast) if len(fast_sizes) >= 2 else float("nan"),
        {"graph_family": graph_family, "L": L, "alpha": alpha, "reps": reps, "seed": seed},
    )
