"""File formats: graph JSON, signal and matrix CSV, window descriptors, reports, PGM heatmaps.

Graph files and every vertex index written to disk are 1-based; the Python
API is 0-based. CSV floats use 17 significant digits so values round-trip.
"""

from __future__ import annotations

import csv
import json
import re
from pathlib import Path

import numpy as np

from .atoms import WindowSet
from .exceptions import DimensionError, GraphError
from .graph import Graph
from .spectral import FractionalBasis

FLOAT_FMT = "%.17g"


def _fmt(x) -> str:
    return FLOAT_FMT % float(x)


# graphs

def graph_to_dict(graph: Graph) -> dict:
    edges = [[i + 1, j + 1, float(w)] for i, j, w in graph.edges]
    out = {"n": graph.n, "edges": edges}
    if graph.name:
        out["name"] = graph.name
    return out


def graph_from_dict(data: dict) -> Graph:
    try:
        n = int(data["n"])
        raw = data["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"graph file needs integer 'n' and an 'edges' list: {exc}") from None
    edges = []
    for e in raw:
        if len(e) not in (2, 3):
            raise GraphError(f"edge {e!r} must be [i, j] or [i, j, w]")
        i, j = int(e[0]) - 1, int(e[1]) - 1
        edges.append((i, j, float(e[2]) if len(e) == 3 else 1.0))
    return Graph(n, tuple(edges), name=str(data.get("name", "graph")))


def write_graph(graph: Graph, path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(graph), indent=1, allow_nan=False) + "\n")


def read_graph(path) -> Graph:
    return graph_from_dict(json.loads(Path(path).read_text()))


# signals and matrices

def write_signal(f, path) -> None:
    f = np.asarray(f)
    if f.ndim != 1:
        raise DimensionError(f"signal must be 1-D, got shape {f.shape}")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if np.iscomplexobj(f) and np.any(f.imag != 0):
            w.writerows([_fmt(z.real), _fmt(z.imag)] for z in f)
        else:
            w.writerows([_fmt(x)] for x in np.real(f))


def read_signal(path) -> np.ndarray:
    rows = [r for r in csv.reader(open(path, newline="")) if r and any(c.strip() for c in r)]
    if not rows:
        raise ValueError(f"{path}: empty signal file")
    widths = {len(r) for r in rows}
    if widths == {1}:
        return np.array([float(r[0]) for r in rows])
    if widths == {2}:
        return np.array([complex(float(a), float(b)) for a, b in rows])
    raise ValueError(f"{path}: signal rows must have 1 (real) or 2 (re, im) columns")


def write_complex_matrix(M, path) -> None:
    """Rows of ``M`` with columns interleaved ``re_0, im_0, re_1, im_1, ...``."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {M.shape}")
    out = np.empty((M.shape[0], 2 * M.shape[1]))
    out[:, 0::2] = M.real
    out[:, 1::2] = M.imag
    np.savetxt(path, out, fmt=FLOAT_FMT, delimiter=",")


def read_complex_matrix(path) -> np.ndarray:
    raw = np.atleast_2d(np.loadtxt(path, delimiter=",", ndmin=2))
    if raw.shape[1] % 2:
        raise ValueError(f"{path}: odd column count {raw.shape[1]} for interleaved complex data")
    return raw[:, 0::2] + 1j * raw[:, 1::2]


def write_real_matrix(M, path) -> None:
    np.savetxt(path, np.atleast_2d(np.asarray(M, dtype=float)), fmt=FLOAT_FMT, delimiter=",")


def write_tensor(T, directory, stem: str) -> list[Path]:
    """One complex-matrix CSV per leading index: ``stem_1.csv``, ``stem_2.csv``, ...

    A 4-D atom bank ``[l, i, k, n]`` is flattened per window to rows ``i`` and
    columns ``k``-major ``(k, n)`` complex pairs.
    """
    T = np.asarray(T)
    if T.ndim not in (3, 4):
        raise DimensionError(f"tensor must be 3-D or 4-D, got shape {T.shape}")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for l, block in enumerate(T, start=1):
        p = directory / f"{stem}_{l}.csv"
        write_complex_matrix(block.reshape(block.shape[0], -1), p)
        paths.append(p)
    return paths


# window sets

def window_descriptor(ws: WindowSet, basis: FractionalBasis, graph: Graph, profiles_file: str | None,
                      **extra) -> dict:
    """JSON descriptor ``{kind, params, alpha, graph_hash, ...}``; ``centers`` are written 1-based."""
    params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in (ws.params or {}).items()}
    params.update(extra.pop("params", {}))
    if "centers" in params:
        params["centers"] = [int(c) + 1 for c in params["centers"]]
    out = {"kind": ws.label, "params": params, "alpha": basis.alpha, "graph_hash": graph.digest,
           "L": ws.L, "N": ws.n}
    out.update(extra)
    if profiles_file is not None:
        out["profiles"] = profiles_file
    return out


def descriptor_params(desc: dict) -> dict:
    """Descriptor parameters with ``centers`` back to 0-based."""
    params = dict(desc.get("params") or {})
    if "centers" in params:
        params["centers"] = [int(c) - 1 for c in params["centers"]]
    return params


def write_windows(ws: WindowSet, basis: FractionalBasis, graph: Graph, json_path, **extra) -> Path:
    """Write profiles to ``<stem>_profiles.csv`` next to the JSON descriptor."""
    json_path = Path(json_path)
    csv_path = json_path.with_name(json_path.stem + "_profiles.csv")
    write_complex_matrix(ws.profiles, csv_path)
    desc = window_descriptor(ws, basis, graph, csv_path.name, **extra)
    json_path.write_text(json.dumps(desc, indent=1, allow_nan=False) + "\n")
    return csv_path


def read_window_profiles(desc: dict, base_dir) -> np.ndarray:
    return read_complex_matrix(Path(base_dir) / desc["profiles"])


# reports

def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1, sort_keys=True, allow_nan=True, default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, complex):
        return {"re": o.real, "im": o.imag}
    raise TypeError(f"cannot serialize {type(o).__name__}")


def write_rows(header, rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(x) if isinstance(x, (float, np.floating)) else x for x in r])


def write_benchmark(record, csv_path, json_path=None) -> None:
    write_rows(["N", "algorithm", "median_seconds"], record.rows(), csv_path)
    if json_path is not None:
        write_json(record.summary(), json_path)


def write_nmse_sweep(rows, path) -> None:
    """``rows`` of ``(alpha, noise_param, mean_nmse, std_nmse)``."""
    write_rows(["alpha", "noise_param", "mean_nmse", "std_nmse"], rows, path)


# heatmaps

def heatmap_bytes(values) -> bytes:
    """8-bit binary PGM (P5), linear in ``values / max(values)``."""
    S = np.asarray(values, dtype=float)
    if S.ndim != 2 or S.size == 0:
        raise DimensionError(f"heatmap needs a nonempty matrix, got shape {S.shape}")
    if not np.all(np.isfinite(S)) or np.any(S < 0):
        raise ValueError("heatmap values must be finite and nonnegative")
    top = S.max()
    pix = np.zeros(S.shape, dtype=np.uint8) if top == 0 else np.rint(255.0 * S / top).astype(np.uint8)
    rows, cols = S.shape
    return f"P5\n{cols} {rows}\n255\n".encode("ascii") + pix.tobytes()


def write_heatmap(values, path) -> None:
    Path(path).write_bytes(heatmap_bytes(values))


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    m = re.match(rb"P5\s+(\d+)\s+(\d+)\s+255\s", data)
    if m is None:
        raise ValueError(f"{path}: not an 8-bit binary PGM")
    cols, rows = int(m.group(1)), int(m.group(2))
    pix = np.frombuffer(data[m.end():], dtype=np.uint8)
    if pix.size != rows * cols:
        raise ValueError(f"{path}: truncated pixel data")
    return pix.reshape(rows, cols)
