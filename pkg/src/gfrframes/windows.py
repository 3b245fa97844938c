"""Window factories: spectral kernels, translated families and tight constructions."""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from .atoms import WindowSet, translation_matrix
from .exceptions import DimensionError
from .spectral import FractionalBasis

# exp() overflows float64 just above 709
MAX_EXPONENT = 700.0


def _unit(v):
    nrm = np.linalg.norm(v)
    if nrm == 0 or not np.isfinite(nrm):
        raise ValueError("window profile cannot be normalized")
    return v / nrm


def heat_window(basis: FractionalBasis, tau: float, normalize: bool = True) -> WindowSet:
    """Heat kernel profile ``C exp(-tau lambda_p)`` with ``C`` giving unit norm."""
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    lam = basis.eigenvalues
    # shifting by lambda_min only changes C and avoids underflow for big tau
    prof = _unit(np.exp(-tau * (lam - lam.min()))) if normalize else np.exp(-tau * lam)
    return WindowSet.from_profiles(prof, basis, "heat", {"tau": tau})


def gaussian_window(basis: FractionalBasis, tau: float, normalize: bool = True) -> WindowSet:
    """Gaussian profile ``C exp(-tau lambda_p**2)``."""
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    lam2 = basis.eigenvalues**2
    prof = _unit(np.exp(-tau * (lam2 - lam2.min()))) if normalize else np.exp(-tau * lam2)
    return WindowSet.from_profiles(prof, basis, "gaussian", {"tau": tau})


def dual_heat_window(basis: FractionalBasis, tau: float, mu: float | None = None) -> WindowSet:
    """Dual heat profile ``mu exp(tau lambda_p)``.

    With ``mu=None`` the constant is chosen for unit norm and the profile is
    evaluated as ``exp(tau (lambda_p - lambda_max))`` rescaled, so large
    ``tau lambda`` cannot overflow; ``params`` then carries ``mu`` (which may
    underflow to 0) and ``log_mu``. An explicit ``mu`` needs
    ``tau * lambda_max <= 700``.
    """
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    lam = basis.eigenvalues
    top = float(tau * lam.max())
    if mu is None:
        log_mu = -0.5 * float(logsumexp(2 * tau * lam))
        prof = _unit(np.exp(tau * (lam - lam.max())))
        return WindowSet.from_profiles(prof, basis, "dual_heat",
                                       {"tau": tau, "mu": float(np.exp(log_mu)), "log_mu": log_mu})
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if top > MAX_EXPONENT:
        raise OverflowError(f"tau * lambda_max = {top:.1f} exceeds {MAX_EXPONENT}")
    return WindowSet.from_profiles(mu * np.exp(tau * lam), basis, "dual_heat",
                                   {"tau": tau, "mu": float(mu), "log_mu": float(np.log(mu))})


def even_centers(n: int, L: int) -> list[int]:
    """Evenly spaced centres ``round(l N / L)``, ``l = 0..L-1`` (0-based)."""
    return [int(round(l * n / L)) for l in range(L)]


def translated_family(mother: WindowSet, L: int, basis: FractionalBasis, placement="even") -> WindowSet:
    """``L`` translates ``T_{i_l} g`` of a single mother window.

    ``placement`` is ``"even"`` or an explicit list of 0-based centres.
    """
    if mother.L != 1:
        raise DimensionError(f"mother window set must hold one window, got L={mother.L}")
    N = basis.n
    if not 1 <= L <= N:
        raise ValueError(f"L must be in [1, {N}], got {L}")
    centers = even_centers(N, L) if isinstance(placement, str) and placement == "even" else [int(c) for c in placement]
    if len(centers) != L:
        raise ValueError(f"got {len(centers)} centres for L={L}")
    if len(set(centers)) != L:
        raise ValueError(f"duplicate window centres {centers}")
    if any(not 0 <= c < N for c in centers):
        raise ValueError(f"window centres out of range [0, {N}): {centers}")
    T = translation_matrix(mother.profiles[0], basis)
    params = dict(mother.params or {})
    params.update(L=L, centers=centers)
    return WindowSet.from_vertex(T[centers], basis, f"{mother.label}_translated", params)


def bspline_n2(x):
    """Second-order cardinal B-spline: ``x`` on [0, 1), ``2 - x`` on [1, 2], else 0.

    Higher orders follow the recursion ``N_k(x) = int_0^1 N_{k-1}(x - t) dt``;
    only ``N_2`` is provided.
    """
    x = np.asarray(x, dtype=float)
    out = np.where((x >= 0) & (x < 1), x, np.where((x >= 1) & (x <= 2), 2 - x, 0.0))
    return out if out.ndim else float(out)


def bspline_tight_windows(basis: FractionalBasis, tol: float = 1e-12) -> WindowSet:
    """Three windows with ``|g_hat_l(r_p)|^2`` = ``N_2(r-1)``, ``N_2(r)``, ``N_2(r+1)``.

    The squared profiles sum to one on ``[0, 2]``, so the basis must come from a
    normalized Laplacian.
    """
    r = basis.r
    if np.any(r < -tol) or np.any(r > 2 + tol):
        raise ValueError(f"fractional spectrum [{r.min():.4g}, {r.max():.4g}] leaves [0, 2]; use the normalized Laplacian")
    r = np.clip(r, 0.0, 2.0)
    sq = np.vstack([bspline_n2(r - 1), bspline_n2(r), bspline_n2(r + 1)])
    return WindowSet.from_profiles(np.sqrt(sq), basis, "bspline_n2")


def default_householder_generator(n: int) -> np.ndarray:
    m = np.arange(1, n + 1)
    return np.where(m <= 10, np.exp(-0.5 * (m - 1)), 0.0)


def householder_windows(basis: FractionalBasis, generator=None) -> WindowSet:
    """Columns of ``H = I - 2 v v^T`` for the unit-normalized generator ``v``.

    The default generator is ``exp(-0.5 (n - 1))`` on the first ten vertices.
    """
    n = basis.n
    v = default_householder_generator(n) if generator is None else np.asarray(generator, dtype=float)
    if v.shape != (n,):
        raise DimensionError(f"generator must have length {n}, got {v.shape}")
    nv = np.linalg.norm(v)
    if nv == 0:
        raise ValueError("Householder generator must be nonzero")
    v = v / nv
    H = np.eye(n) - 2.0 * np.outer(v, v)
    return WindowSet.from_vertex(H.T, basis, "householder")


def eigenvector_windows(basis: FractionalBasis) -> WindowSet:
    """Windows ``g_l = gamma_{l-1}``; the profiles are the standard unit vectors."""
    return WindowSet.from_profiles(np.eye(basis.n), basis, "eigenvectors")
