"""Eigenbases, fractional powers and the spectral graph fractional Fourier transform."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

from .exceptions import DecompositionError, DimensionError
from .graph import Graph, build_laplacian

# arguments this close to the negative real axis are pinned to +pi
_BRANCH_SNAP = 1e-9


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    source: str = "laplacian"

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class FractionalBasis:
    """Fractional Fourier basis ``gamma = chi**alpha``.

    Columns ``gamma[:, k]`` are the basis vectors; ``r[k] = lambda_k**alpha``.
    """

    alpha: float
    gamma: np.ndarray
    r: np.ndarray
    decomposition: SpectralDecomposition

    @property
    def n(self) -> int:
        return self.gamma.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.decomposition.eigenvalues


@dataclass(frozen=True)
class FractionalShift:
    """Fractional shift ``S^alpha = V J^alpha V^{-1}`` of a symmetric adjacency."""

    alpha: float
    s_alpha: np.ndarray
    V: np.ndarray
    J: np.ndarray
    J_alpha: np.ndarray

    @property
    def rows(self) -> np.ndarray:
        """Row vectors ``s~_k`` of ``S^alpha`` (one per row)."""
        return self.s_alpha


def _canonical_signs(vecs):
    """Flip columns so that the largest-magnitude entry (first on ties) is positive."""
    idx = np.argmax(np.abs(vecs), axis=0)
    s = np.sign(vecs[idx, np.arange(vecs.shape[1])])
    s[s == 0] = 1.0
    return vecs * s


def _order_degenerate(lam, vecs, tol):
    """Within each cluster of equal eigenvalues, sort columns lexicographically (descending)."""
    order = np.arange(len(lam))
    start = 0
    for end in range(1, len(lam) + 1):
        if end == len(lam) or lam[end] - lam[end - 1] > tol:
            if end - start > 1:
                block = np.round(vecs[:, start:end], 10)
                keys = sorted(range(end - start), key=lambda c: tuple(-block[:, c]))
                order[start:end] = start + np.array(keys)
            start = end
    return vecs[:, order]


def eig_sym(matrix, source: str = "laplacian") -> SpectralDecomposition:
    """Symmetric eigendecomposition with ascending eigenvalues and fixed signs.

    Columns get their largest-magnitude entry positive; inside a cluster of
    equal eigenvalues they are then sorted lexicographically. The basis of a
    repeated eigenspace is still whatever the solver returns.
    """
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    asym = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if asym > 1e-12 * scale:
        raise DimensionError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
    lam, chi = scipy.linalg.eigh(M)
    chi = _order_degenerate(lam, _canonical_signs(chi), 1e-9 * scale)
    resid = float(np.max(np.abs(M @ chi - chi * lam))) if M.size else 0.0
    if resid > 1e-8 * max(1.0, float(np.max(np.abs(lam)))):
        raise DecompositionError(f"eigendecomposition residual {resid:.3e} too large", resid)
    if source == "laplacian":
        # Laplacians are PSD; round-off below zero is clipped so that 0**alpha stays 0
        lam = np.where(np.abs(lam) <= 1e-12 * scale, 0.0, lam)
    lam.flags.writeable = False
    chi.flags.writeable = False
    return SpectralDecomposition(lam, chi, source)


def principal_power(z, alpha: float) -> np.ndarray:
    """Principal-branch ``z**alpha`` with ``arg z`` in ``(-pi, pi]`` and ``0**alpha = 0``."""
    z = np.asarray(z, dtype=complex)
    mod = np.abs(z)
    arg = np.angle(z)
    # np.angle gives -pi for values just below the negative real axis
    arg = np.where(np.abs(arg + np.pi) <= _BRANCH_SNAP, np.pi, arg)
    out = np.zeros_like(z)
    nz = mod > 0
    out[nz] = np.exp(alpha * (np.log(mod[nz]) + 1j * arg[nz]))
    return out


def _check_alpha(alpha):
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    return alpha


def unitary_power(Q, alpha: float) -> np.ndarray:
    """Principal fractional power of a real orthogonal (hence normal) matrix.

    Uses the complex Schur form, which is diagonal up to round-off for a normal
    matrix, so the Schur vectors stay unitary even for repeated eigenvalues.
    """
    T, Z = scipy.linalg.schur(np.asarray(Q, dtype=complex), output="complex")
    t = np.diag(T)
    t = t / np.abs(t)  # eigenvalues of an orthogonal matrix lie on the unit circle
    return (Z * principal_power(t, alpha)) @ Z.conj().T


def fractional_basis(decomp: SpectralDecomposition, alpha: float) -> FractionalBasis:
    alpha = _check_alpha(alpha)
    chi = decomp.eigenvectors
    if alpha == 1.0:
        gamma = chi.astype(complex)
    else:
        gamma = unitary_power(chi, alpha)
    r = np.where(decomp.eigenvalues > 0, np.maximum(decomp.eigenvalues, 0.0) ** alpha, 0.0)
    gamma.flags.writeable = False
    r.flags.writeable = False
    return FractionalBasis(alpha, gamma, r, decomp)


def graph_basis(graph: Graph, alpha: float, normalized: bool = False) -> FractionalBasis:
    """Shortcut: Laplacian -> eigendecomposition -> fractional basis."""
    return fractional_basis(eig_sym(build_laplacian(graph, normalized)), alpha)


def cached_basis(graph: Graph, alpha: float, normalized: bool, cache_dir) -> FractionalBasis:
    """Like :func:`graph_basis` but memoized on disk by (graph hash, normalized, alpha)."""
    cache_dir = Path(cache_dir)
    key = f"{graph.digest}_{'norm' if normalized else 'comb'}_{float(alpha):.17g}.npz"
    path = cache_dir / key
    if path.exists():
        with np.load(path) as z:
            decomp = SpectralDecomposition(z["eigenvalues"], z["eigenvectors"], "laplacian")
            return FractionalBasis(float(z["alpha"]), z["gamma"], z["r"], decomp)
    basis = graph_basis(graph, alpha, normalized)
    cache_dir.mkdir(parents=True, exist_ok=True)
    np.savez(path, alpha=basis.alpha, gamma=basis.gamma, r=basis.r,
             eigenvalues=basis.eigenvalues, eigenvectors=basis.decomposition.eigenvectors)
    return basis


def _check_len(v, basis):
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != basis.n:
        raise DimensionError(f"expected a length-{basis.n} vector, got shape {v.shape}")
    return v


def sgfrft(f, basis: FractionalBasis) -> np.ndarray:
    """Forward transform ``gamma^H f``."""
    return basis.gamma.conj().T @ _check_len(f, basis)


def inverse_sgfrft(coeffs, basis: FractionalBasis) -> np.ndarray:
    """Inverse transform ``gamma @ coeffs``."""
    return basis.gamma @ _check_len(coeffs, basis)


def fractional_shift(graph_or_adjacency, alpha: float) -> FractionalShift:
    """Fractional power of the adjacency matrix through its eigendecomposition.

    Eigenvalues with ``|lambda| <= 1e-12 * max|lambda|`` are treated as zero.
    """
    alpha = _check_alpha(alpha)
    A = graph_or_adjacency.adjacency if isinstance(graph_or_adjacency, Graph) else np.asarray(graph_or_adjacency, float)
    dec = eig_sym(A, source="adjacency")
    J = np.array(dec.eigenvalues)
    V = dec.eigenvectors
    J[np.abs(J) <= 1e-12 * max(1.0, float(np.max(np.abs(J))))] = 0.0
    J_alpha = J.astype(complex) if alpha == 1.0 else principal_power(J, alpha)
    S = (V * J_alpha) @ V.T
    resid = float(np.max(np.abs((V * J) @ V.T - A)))
    if resid > 1e-8 * max(1.0, float(np.max(np.abs(A)))):
        raise DecompositionError(f"adjacency reconstruction residual {resid:.3e}", resid)
    S.flags.writeable = False
    return FractionalShift(alpha, S, V, J, J_alpha)
