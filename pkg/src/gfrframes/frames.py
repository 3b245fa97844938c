"""Frame vectors, bounds, tightness, duals and reconstruction.

Both atom families have a diagonal frame operator, so everything reduces to
the frame vector ``c`` (the diagonal).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .atoms import WindowSet
from .exceptions import DimensionError, NotDualError, SingularFrameError
from .spectral import FractionalBasis, FractionalShift

TIGHT_TOL = 1e-8
SINGULAR_CUTOFF = 1e-12


@dataclass(frozen=True)
class FrameDiagnostics:
    c: np.ndarray
    A: float
    B: float
    is_frame: bool
    tight: bool
    tight_constant: float | None
    family: str
    alpha: float
    L: int
    dc_condition: bool | None = None

    @property
    def N(self) -> int:
        return len(self.c)

    def report(self) -> dict:
        """JSON-ready summary (indices are 0-based)."""
        return {
            "family": self.family,
            "N": self.N,
            "L": self.L,
            "alpha": self.alpha,
            "A": self.A,
            "B": self.B,
            "is_frame": self.is_frame,
            "tight": self.tight,
            "C": self.tight_constant,
            "c_min_index": int(np.argmin(self.c)),
            "c_max_index": int(np.argmax(self.c)),
        }


@dataclass(frozen=True)
class DualScaling:
    d: np.ndarray
    mu: complex | float | None = None


@dataclass(frozen=True)
class DualCheck:
    """Outcome of a successful dual-window test."""

    mu: float | complex
    C: float | complex
    max_deviation: float
    dual_is_frame: bool | None


def frame_vector_mw(ws: WindowSet, basis: FractionalBasis) -> np.ndarray:
    """``c_n = N**(2 alpha) sum_p sum_l |g_hat_l(r_p)|^2 |gamma_p(n)|^2``."""
    if ws.n != basis.n:
        raise DimensionError(f"windows on N={ws.n}, basis N={basis.n}")
    power = np.sum(np.abs(ws.profiles) ** 2, axis=0)
    return basis.n ** (2 * basis.alpha) * (np.abs(basis.gamma) ** 2 @ power)


def frame_vector_shift(ws: WindowSet, shift: FractionalShift) -> np.ndarray:
    """``c_k = s~_k G s~_k^*`` with ``G = sum_l g_l g_l^*``."""
    Gw = ws.vertex_windows
    if Gw.shape[1] != shift.s_alpha.shape[0]:
        raise DimensionError(f"windows on N={Gw.shape[1]}, shift on N={shift.s_alpha.shape[0]}")
    SG = shift.s_alpha @ Gw.T  # column l = S g_l
    return np.sum(np.abs(SG) ** 2, axis=1)


def gram(ws: WindowSet) -> np.ndarray:
    """Window Gram operator ``G = sum_l g_l g_l^*``."""
    return ws.vertex_windows.T @ ws.vertex_windows.conj()


def _spread_tight(c, tol):
    top = float(np.max(c)) if len(c) else 0.0
    if top <= 0:
        return False, None
    tight = (top - float(np.min(c))) <= tol * top
    return bool(tight), float(np.mean(c))


def _diagnose(c, family, alpha, L, tol, dc=None):
    c = np.asarray(c, dtype=float)
    A, B = float(np.min(c)), float(np.max(c))
    is_frame = B > 0 and A > SINGULAR_CUTOFF * B
    tight, C = _spread_tight(c, tol)
    return FrameDiagnostics(c, A, B, bool(is_frame), tight and is_frame, C if tight else None,
                            family, float(alpha), int(L), dc)


def frame_bounds_mw(ws: WindowSet, basis: FractionalBasis, tol: float = TIGHT_TOL) -> FrameDiagnostics:
    """Optimal frame bounds ``A = min c``, ``B = max c`` of the multi-window family.

    ``dc_condition`` records whether ``sum_l |g_hat_l(r_0)|^2 > 0``, which
    guarantees a frame.
    """
    c = frame_vector_mw(ws, basis)
    dc = bool(np.sum(np.abs(ws.profiles[:, 0]) ** 2) > 0)
    return _diagnose(c, "mwgfrff", basis.alpha, ws.L, tol, dc)


def frame_bounds_shift(ws: WindowSet, shift: FractionalShift, tol: float = TIGHT_TOL) -> FrameDiagnostics:
    return _diagnose(frame_vector_shift(ws, shift), "smwgfrff", shift.alpha, ws.L, tol)


def is_tight_mw(ws: WindowSet, basis: FractionalBasis, tol: float = TIGHT_TOL):
    """``(tight, C)`` with ``C`` the mean of the frame vector."""
    c = frame_vector_mw(ws, basis)
    tight, C = _spread_tight(c, tol)
    return tight, C


def is_tight_shift(ws: WindowSet, shift: FractionalShift, tol: float = TIGHT_TOL):
    c = frame_vector_shift(ws, shift)
    tight, C = _spread_tight(c, tol)
    return tight, C


def tight_spectral_check(ws: WindowSet, tol: float = TIGHT_TOL) -> bool:
    """True if ``sum_l |g_hat_l(r_p)|^2`` is the same for every ``p``.

    Sufficient for a tight multi-window frame, not necessary.
    """
    power = np.sum(np.abs(ws.profiles) ** 2, axis=0)
    return _spread_tight(power, tol)[0]


def dual_scaling(c, cutoff: float = SINGULAR_CUTOFF) -> DualScaling:
    c = np.asarray(c, dtype=float)
    top = float(np.max(np.abs(c))) if c.size else 0.0
    small = np.abs(c) <= cutoff * top
    if top == 0 or np.any(small):
        raise SingularFrameError(f"frame vector vanishes at vertices {np.flatnonzero(small).tolist()}")
    return DualScaling(1.0 / c)


def canonical_dual(atom_bank, c, cutoff: float = SINGULAR_CUTOFF) -> np.ndarray:
    """Canonical dual atoms ``d o atom`` with ``d = 1 / c``, for any bank shaped ``[..., n]``."""
    bank = np.asarray(atom_bank)
    d = dual_scaling(c, cutoff).d
    if bank.shape[-1] != len(d):
        raise DimensionError(f"atoms of length {bank.shape[-1]} vs frame vector of length {len(d)}")
    return bank * d


def verify_dual_windows(ws: WindowSet, dual_ws: WindowSet, basis: FractionalBasis | None = None,
                        tol: float = 1e-8) -> DualCheck:
    """Check ``sum_l conj(g_hat_l(r_p)) g~_hat_l(r_p) = mu`` for every ``p``.

    Raises :class:`NotDualError` when the product is not constant or ``mu`` is
    zero. ``C = 1 / (N**(2 alpha) mu)`` is the reconstruction constant (needs
    ``basis``, else ``C`` is ``1 / mu``).
    """
    if ws.L != dual_ws.L or ws.n != dual_ws.n:
        raise DimensionError(f"window sets differ: L={ws.L}/{dual_ws.L}, N={ws.n}/{dual_ws.n}")
    prod = np.sum(ws.profiles.conj() * dual_ws.profiles, axis=0)
    mu = prod.mean()
    dev = float(np.max(np.abs(prod - mu)))
    scale = float(np.max(np.abs(prod)))
    if scale == 0 or dev > tol * scale:
        raise NotDualError(f"window products are not constant (max deviation {dev:.3e})", dev)
    if abs(mu.imag) <= tol * abs(mu):
        mu = float(mu.real)
    dual_is_frame = None
    C = 1.0 / mu
    if basis is not None:
        C = 1.0 / (basis.n ** (2 * basis.alpha) * mu)
        dual_is_frame = frame_bounds_mw(dual_ws, basis).is_frame
    return DualCheck(mu, C, dev, dual_is_frame)


def frame_operator(atom_bank) -> np.ndarray:
    """Dense ``sum atom atom^H`` for a bank shaped ``[..., n]``."""
    A = np.asarray(atom_bank).reshape(-1, np.shape(atom_bank)[-1])
    return A.T @ A.conj()


def analysis(f, atom_bank) -> np.ndarray:
    """Inner products ``<f, atom>`` for every atom (last axis is the vertex)."""
    return np.asarray(atom_bank).conj() @ np.asarray(f)


def reconstruct(coeffs, bank, C=1.0):
    """Synthesis ``C * sum coeffs[idx] * bank[idx]``.

    ``coeffs`` shape must equal ``bank.shape[:-1]``; pair ``<f, dual>`` with the
    frame atoms or ``<f, atom>`` with the dual atoms.
    """
    coeffs = np.asarray(coeffs)
    bank = np.asarray(bank)
    if coeffs.shape != bank.shape[:-1]:
        raise DimensionError(f"coefficients {coeffs.shape} do not match bank {bank.shape[:-1]}")
    n = bank.shape[-1]
    return C * (coeffs.reshape(-1) @ bank.reshape(-1, n))


def reconstruction_residual(f, f_rec) -> float:
    f = np.asarray(f)
    return float(np.linalg.norm(f - f_rec) / max(np.linalg.norm(f), np.finfo(float).tiny))

