"""``gfrframes`` command line: graph, signal, windows, transform, frame, bench, detect, nmse.

Exit codes: 0 success, 2 invalid input, 1 numeric failure. Vertex indices in
files and reports are 1-based. ``--config file.json`` supplies defaults for a
subcommand's options (keys use the long option name, dashes or underscores);
explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import nullcontext
from pathlib import Path

import numpy as np
from threadpoolctl import threadpool_limits

from . import io
from .analysis import NOISE_MODELS, anomaly_experiment, benchmark, detect_anomalies, nmse_sweep, spectrogram
from .atoms import WindowSet
from .exceptions import NotDualError, SingularFrameError
from .frames import dual_scaling, frame_bounds_mw, frame_bounds_shift, reconstruction_residual, \
    verify_dual_windows
from .graph import GRAPH_KINDS, SIGNAL_KINDS, generate_graph, generate_signal
from .spectral import fractional_shift, graph_basis
from .transforms import fmwgfrft, mw_synthesis, mwgfrft, shift_frame_coefficients, smwgfrft, wgfrft
from .windows import bspline_tight_windows, dual_heat_window, eigenvector_windows, gaussian_window, \
    heat_window, householder_windows, translated_family

WINDOW_KINDS = ("heat", "gaussian", "dual_heat", "bspline", "householder", "eigenvector", "zero")
ALGOS = ("wgft", "wgfrft", "mwgft", "mwgfrft", "fmwgfrft", "smwgft", "smwgfrft")


class UsageError(ValueError):
    """Bad command-line input; mapped to exit code 2."""


def _ints(text):
    return [int(t) for t in str(text).split(",") if t.strip()]


def _floats(text):
    return [float(t) for t in str(text).split(",") if t.strip()]


def _kv(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"expected KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k] = json.loads(v)
        except json.JSONDecodeError:
            out[k] = v
    return out


# builders shared by several commands

def build_windows(kind: str, basis, params: dict) -> WindowSet:
    """Window set from a kind name and parameters (0-based ``centers``)."""
    p = dict(params)
    L = p.pop("L", None)
    centers = p.pop("centers", None)
    if kind in ("heat", "gaussian"):
        mother = (heat_window if kind == "heat" else gaussian_window)(basis, float(p.get("tau", 1.0)))
        if L is None and centers is None:
            return mother
        placement = "even" if centers is None else centers
        return translated_family(mother, int(L if L is not None else len(centers)), basis, placement)
    if kind == "dual_heat":
        return dual_heat_window(basis, float(p.get("tau", 1.0)), p.get("mu"))
    if kind == "bspline":
        return bspline_tight_windows(basis)
    if kind == "householder":
        return householder_windows(basis, p.get("generator"))
    if kind == "eigenvector":
        return eigenvector_windows(basis)
    if kind == "zero":
        return WindowSet.from_profiles(np.zeros((int(L or 1), basis.n)), basis, "zero", {"L": int(L or 1)})
    raise UsageError(f"unknown window kind {kind!r}; choose from {WINDOW_KINDS}")


def load_windows(path, graph, basis, normalized: bool) -> WindowSet:
    """Window set from a JSON descriptor.

    With a ``profiles`` file the stored windows are reused (moved to ``basis``
    through the vertex domain when the stored order differs); otherwise the
    set is rebuilt from ``kind`` and ``params``.
    """
    path = Path(path)
    desc = json.loads(path.read_text())
    if "profiles" not in desc:
        return build_windows(desc.get("kind", ""), basis, io.descriptor_params(desc))
    if desc.get("graph_hash") not in (None, graph.digest):
        raise UsageError(f"{path}: windows were built for graph {desc['graph_hash']}, not {graph.digest}")
    P = io.read_window_profiles(desc, path.parent)
    if P.shape[1] != basis.n:
        raise UsageError(f"{path}: windows have N={P.shape[1]}, graph has N={basis.n}")
    label, params = desc.get("kind", "windows"), io.descriptor_params(desc)
    stored_alpha = float(desc.get("alpha", basis.alpha))
    if stored_alpha == basis.alpha and bool(desc.get("normalized", normalized)) == normalized:
        return WindowSet.from_profiles(P, basis, label, params)
    src = graph_basis(graph, stored_alpha, bool(desc.get("normalized", normalized)))
    return WindowSet.from_vertex(P @ src.gamma.T, basis, label, params)


def _load_graph(args):
    if not args.graph:
        raise UsageError("--graph is required")
    return io.read_graph(args.graph)


def _out_dir(args) -> Path:
    d = Path(args.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


# commands

def cmd_graph(args):
    if args.kind not in GRAPH_KINDS:
        raise UsageError(f"unknown graph kind {args.kind!r}; choose from {GRAPH_KINDS}")
    g = generate_graph(args.kind, args.n, seed=args.seed, **_kv(args.param))
    io.write_graph(g, args.out)
    return {"n": g.n, "edges": g.n_edges, "hash": g.digest, "out": str(args.out)}


def cmd_signal(args):
    if args.kind not in SIGNAL_KINDS:
        raise UsageError(f"unknown signal kind {args.kind!r}; choose from {SIGNAL_KINDS}")
    basis, n = None, args.n
    if args.graph:
        g = io.read_graph(args.graph)
        n = g.n if n is None else n
        if n != g.n:
            raise UsageError(f"--n {n} disagrees with the graph size {g.n}")
        basis = graph_basis(g, args.alpha, args.normalized)
    if n is None:
        raise UsageError("give --n or --graph")
    if args.kind == "eigvec_combination" and basis is None:
        raise UsageError("eigvec_combination needs --graph")
    indices = [i - 1 for i in _ints(args.indices)] if args.indices else ()
    values = _floats(args.values) if args.values else None
    f = generate_signal(args.kind, n, basis=basis, indices=indices, values=values)
    io.write_signal(f, args.out)
    return {"n": n, "kind": args.kind, "out": str(args.out)}


def cmd_windows(args):
    g = _load_graph(args)
    basis = graph_basis(g, args.alpha, args.normalized)
    params = _kv(args.param)
    for key in ("tau", "mu", "L"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    if args.centers:
        params["centers"] = [c - 1 for c in _ints(args.centers)]
    ws = build_windows(args.kind, basis, params)
    csv_path = io.write_windows(ws, basis, g, args.out, kind=args.kind, normalized=bool(args.normalized),
                                params={k: v for k, v in params.items() if k != "centers"})
    return {"L": ws.L, "out": str(args.out), "profiles": str(csv_path)}


def _pinned(algo: str, alpha: float):
    """``(alpha, single_window, family)`` after degeneration pinning."""
    if algo not in ALGOS:
        raise UsageError(f"unknown algorithm {algo!r}; choose from {ALGOS}")
    fractional = algo.endswith("frft")
    a = alpha if fractional else 1.0
    single = algo in ("wgft", "wgfrft")
    family = "shift" if algo.startswith("smw") else "mw"
    return a, single, family


def cmd_transform(args):
    g = _load_graph(args)
    alpha, single, family = _pinned(args.algo, args.alpha)
    basis = graph_basis(g, alpha, args.normalized)
    if not (args.signal and args.windows):
        raise UsageError("--signal and --windows are required")
    f = io.read_signal(args.signal)
    if f.shape != (g.n,):
        raise UsageError(f"signal has {f.shape[0]} values, graph has {g.n} vertices")
    ws = load_windows(args.windows, g, basis, args.normalized)
    if single:
        ws = WindowSet(ws.profiles[:1], ws.vertex_windows[:1], ws.label, ws.params)
    if args.algo in ("wgft", "wgfrft"):
        per = wgfrft(f, ws.vertex_windows[0], basis)[None]
    elif args.algo == "fmwgfrft":
        per = fmwgfrft(f, ws, basis, per_window=True)
    elif family == "shift":
        per = smwgfrft(f, ws, fractional_shift(g, alpha), basis).per_window
    else:
        per = mwgfrft(f, ws, basis).per_window
    coeffs = per.sum(axis=0)
    spec = spectrogram(coeffs, transform=args.algo, alpha=alpha, windows=ws.label)
    out = _out_dir(args)
    io.write_complex_matrix(coeffs, out / "coefficients.csv")
    io.write_real_matrix(spec.values, out / "spectrogram.csv")
    io.write_heatmap(spec.values, out / "heatmap.pgm")
    if args.per_window:
        io.write_tensor(per, out, "coefficients_window")
    meta = {"algo": args.algo, "alpha": alpha, "L": ws.L, "N": g.n, "graph_hash": g.digest,
            "windows": ws.label}
    io.write_json(meta, out / "transform.json")
    return meta


def _mw_residual(f, ws, basis, dual_ws=None, C=None):
    if dual_ws is None:
        c = frame_bounds_mw(ws, basis).c
        d = dual_scaling(c).d
        return reconstruction_residual(f, d * mw_synthesis(mwgfrft(f, ws, basis).per_window, ws, basis))
    rec = C * mw_synthesis(mwgfrft(f, dual_ws, basis).per_window, ws, basis)
    return reconstruction_residual(f, rec)


def _shift_residual(f, ws, shift, basis, c):
    d = dual_scaling(c).d
    coef = shift_frame_coefficients(f, ws, shift, basis)   # [l, i]
    SG = ws.vertex_windows @ shift.s_alpha.T                # [l, n]
    synth = np.sum(SG * (coef @ basis.gamma.T), axis=0)
    return reconstruction_residual(f, d * synth)


def cmd_frame(args):
    g = _load_graph(args)
    basis = graph_basis(g, args.alpha, args.normalized)
    if not args.windows:
        raise UsageError("--windows is required")
    ws = load_windows(args.windows, g, basis, args.normalized)
    if args.signal:
        f = io.read_signal(args.signal)
        if f.shape != (g.n,):
            raise UsageError(f"signal has {f.shape[0]} values, graph has {g.n} vertices")
    else:
        f = np.random.default_rng(args.seed).standard_normal(g.n)
    if args.family == "shift":
        shift = fractional_shift(g, args.alpha)
        diag = frame_bounds_shift(ws, shift)
    else:
        diag = frame_bounds_mw(ws, basis)
    report = diag.report()
    report["c_min_index"] += 1
    report["c_max_index"] += 1
    report["residual"] = None
    if diag.is_frame:
        try:
            if args.family == "shift":
                report["residual"] = _shift_residual(f, ws, shift, basis, diag.c)
            else:
                report["residual"] = _mw_residual(f, ws, basis)
        except SingularFrameError:
            report["is_frame"] = False
    if args.dual:
        if args.family != "mw":
            raise UsageError("--dual applies to the multi-window family")
        dual_ws = load_windows(args.dual, g, basis, args.normalized)
        try:
            chk = verify_dual_windows(ws, dual_ws, basis)
            mu = chk.mu
            report["dual"] = {"ok": True, "mu": mu, "C": chk.C, "max_deviation": chk.max_deviation,
                              "dual_is_frame": chk.dual_is_frame,
                              "residual": _mw_residual(f, ws, basis, dual_ws, chk.C)}
        except NotDualError as exc:
            report["dual"] = {"ok": False, "max_deviation": exc.max_deviation}
    if args.out:
        io.write_json(report, args.out)
    return report


def cmd_bench(args):
    sizes = _ints(args.sizes)
    rec = benchmark(args.family, sizes, L=args.L, alpha=args.alpha, reps=args.reps, seed=args.seed,
                    naive_sizes=_ints(args.naive_sizes) if args.naive_sizes else None,
                    fast_sizes=_ints(args.fast_sizes) if args.fast_sizes else None, tau=args.tau)
    io.write_benchmark(rec, args.out_csv, args.out_json)
    return rec.summary()


def cmd_detect(args):
    if args.signal:
        g = _load_graph(args)
        basis = graph_basis(g, args.alpha, args.normalized)
        f = io.read_signal(args.signal)
        if f.shape != (g.n,):
            raise UsageError(f"signal has {f.shape[0]} values, graph has {g.n} vertices")
        if not args.windows:
            raise UsageError("--windows is required with --signal")
        ws = load_windows(args.windows, g, basis, args.normalized)
        spec = spectrogram(fmwgfrft(f, ws, basis))
        detected, planted = detect_anomalies(spec), None
    else:
        detected, planted, spec = anomaly_experiment(args.seed, n=args.n, alpha=args.alpha,
                                                     amplitude=args.amplitude, n_anomalies=args.anomalies)
    report = {"detected": sorted(i + 1 for i in detected), "seed": args.seed, "alpha": args.alpha}
    if planted is not None:
        report["planted"] = sorted(i + 1 for i in planted)
        report["match"] = detected == planted
    if args.heatmap:
        io.write_heatmap(spec.values, args.heatmap)
    if args.out:
        io.write_json(report, args.out)
    return report


def cmd_nmse(args):
    if args.noise not in NOISE_MODELS:
        raise UsageError(f"unknown noise model {args.noise!r}; choose from {NOISE_MODELS}")
    rows = nmse_sweep(args.family, args.n, args.signal_kind, args.noise, _floats(args.params),
                      _floats(args.alphas), trials=args.trials, L=args.L, tau=args.tau, seed=args.seed)
    io.write_nmse_sweep(rows, args.out)
    return {"rows": len(rows), "out": str(args.out)}


# parser

def _common(p):
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--config", help="JSON file with option defaults; flags override it")
    p.add_argument("--threads", type=int, help="cap BLAS/OpenMP threads (1 = serial)")


def _basis_opts(p, alpha=0.8):
    p.add_argument("--graph", help="graph JSON file")
    p.add_argument("--alpha", type=float, default=alpha, help=f"fractional order (default {alpha})")
    p.add_argument("--normalized", action="store_true", help="use the normalized Laplacian")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gfrframes", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    ap.subcommands = sub.choices

    p = sub.add_parser("graph", help="generate a synthetic graph")
    _common(p)
    p.add_argument("--kind", default="ring", help=f"one of {', '.join(GRAPH_KINDS)}")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="generator parameter (repeatable)")
    p.add_argument("--out", default="graph.json")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("signal", help="generate a test signal")
    _common(p)
    _basis_opts(p)
    p.add_argument("--kind", default="f7_sine", help=f"one of {', '.join(SIGNAL_KINDS)}")
    p.add_argument("--n", type=int)
    p.add_argument("--indices", help="1-based eigenvector indices, comma separated")
    p.add_argument("--values", help="comma separated values for kind=custom")
    p.add_argument("--out", default="signal.csv")
    p.set_defaults(func=cmd_signal)

    p = sub.add_parser("windows", help="build a window set and save its descriptor")
    _common(p)
    _basis_opts(p)
    p.add_argument("--kind", default="heat", help=f"one of {', '.join(WINDOW_KINDS)}")
    p.add_argument("--tau", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--L", type=int, help="number of translates (heat/gaussian) or zero windows")
    p.add_argument("--centers", help="1-based translation centres, comma separated")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--out", default="windows.json")
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("transform", help="compute coefficients, spectrogram and heatmap")
    _common(p)
    _basis_opts(p)
    p.add_argument("--algo", default="fmwgfrft", help=f"one of {', '.join(ALGOS)}")
    p.add_argument("--signal", help="signal CSV")
    p.add_argument("--windows", help="window descriptor JSON")
    p.add_argument("--per-window", action="store_true", help="also write one coefficient CSV per window")
    p.add_argument("--out-dir", default="transform_out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("frame", help="frame bounds, tightness, duals and reconstruction")
    _common(p)
    _basis_opts(p)
    p.add_argument("--windows")
    p.add_argument("--dual", help="dual window descriptor to verify")
    p.add_argument("--family", choices=("mw", "shift"), default="mw")
    p.add_argument("--signal", help="signal used for the reconstruction residual (default: seeded noise)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("bench", help="time naive against fast multi-window transforms")
    _common(p)
    p.add_argument("--family", default="random_ring")
    p.add_argument("--sizes", default="64,128,256,512")
    p.add_argument("--naive-sizes")
    p.add_argument("--fast-sizes")
    p.add_argument("--L", type=int, default=10)
    p.add_argument("--alpha", type=float, default=0.8)
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--out-csv", default="bench.csv")
    p.add_argument("--out-json", default="bench.json")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("detect", help="spectrogram anomaly detection")
    _common(p)
    _basis_opts(p, alpha=0.4)
    p.add_argument("--signal", help="detect on this signal instead of the planted fixture")
    p.add_argument("--windows")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--amplitude", type=float, default=5.0)
    p.add_argument("--anomalies", type=int, default=2)
    p.add_argument("--heatmap", help="write the spectrogram as PGM")
    p.add_argument("--out")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("nmse", help="NMSE sweep over noise parameters and fractional orders")
    _common(p)
    p.add_argument("--family", default="sphere")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--signal-kind", default="f7_sine")
    p.add_argument("--noise", default="poisson", help=f"one of {', '.join(NOISE_MODELS)}")
    p.add_argument("--params", default="0.2,0.3,0.5")
    p.add_argument("--alphas", default="0.8")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--L", type=int, default=20)
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--out", default="nmse.csv")
    p.set_defaults(func=cmd_nmse)
    return ap


def _apply_config(parser, argv):
    """Re-parse with config-file values installed as subcommand defaults."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    cfg = json.loads(Path(args.config).read_text())
    if not isinstance(cfg, dict):
        raise UsageError(f"{args.config}: config must be a JSON object")
    sub = parser.subcommands[args.command]
    known = {a.dest for a in sub._actions}
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    unknown = sorted(set(cfg) - known - {"command"})
    if unknown:
        raise UsageError(f"{args.config}: unknown option(s) {unknown} for '{args.command}'")
    cfg.pop("command", None)
    cfg.pop("config", None)
    sub.set_defaults(**cfg)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, OSError, json.JSONDecodeError) as exc:
        print(f"gfrframes: error: {exc}", file=sys.stderr)
        return 2
    limit = threadpool_limits(limits=args.threads) if args.threads else nullcontext()
    try:
        with limit:
            result = args.func(args)
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"gfrframes: numeric failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, KeyError, IndexError, OSError, json.JSONDecodeError) as exc:
        print(f"gfrframes: error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(result, default=io._json_default, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
