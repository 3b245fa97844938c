"""Fractional translation and modulation, and the atom families built from them.

Index conventions (0-based): ``l`` window, ``i`` vertex (translation centre or
shift row), ``k`` frequency, ``n`` vertex of the atom itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError
from .spectral import FractionalBasis, FractionalShift


@dataclass(frozen=True)
class WindowSet:
    """``L`` windows stored both as spectral profiles and in the vertex domain.

    ``profiles[l]`` holds the window's fractional spectrum over ``r_0..r_{N-1}``
    and ``vertex_windows[l] = gamma @ profiles[l]``.
    """

    profiles: np.ndarray
    vertex_windows: np.ndarray
    label: str = "windows"
    params: dict | None = None

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.profiles, dtype=complex))
        G = np.atleast_2d(np.asarray(self.vertex_windows, dtype=complex))
        if P.shape != G.shape or P.ndim != 2 or P.shape[0] < 1:
            raise DimensionError(f"profiles {P.shape} and vertex windows {G.shape} must both be (L, N)")
        if not (np.all(np.isfinite(P)) and np.all(np.isfinite(G))):
            raise ValueError("window values must be finite")
        P.flags.writeable = False
        G.flags.writeable = False
        object.__setattr__(self, "profiles", P)
        object.__setattr__(self, "vertex_windows", G)

    @property
    def L(self) -> int:
        return self.profiles.shape[0]

    @property
    def n(self) -> int:
        return self.profiles.shape[1]

    @classmethod
    def from_profiles(cls, profiles, basis: FractionalBasis, label="windows", params=None):
        P = np.atleast_2d(np.asarray(profiles, dtype=complex))
        _check_n(P.shape[-1], basis)
        return cls(P, P @ basis.gamma.T, label, params)

    @classmethod
    def from_vertex(cls, windows, basis: FractionalBasis, label="windows", params=None):
        G = np.atleast_2d(np.asarray(windows, dtype=complex))
        _check_n(G.shape[-1], basis)
        return cls(G @ basis.gamma.conj(), G, label, params)

    def __add__(self, other: "WindowSet") -> "WindowSet":
        """Concatenate two window sets (``L`` adds up)."""
        if other.n != self.n:
            raise DimensionError(f"cannot join window sets on N={self.n} and N={other.n}")
        return WindowSet(np.vstack([self.profiles, other.profiles]),
                         np.vstack([self.vertex_windows, other.vertex_windows]),
                         f"{self.label}+{other.label}")

    def scaled(self, factor) -> "WindowSet":
        return WindowSet(self.profiles * factor, self.vertex_windows * factor, self.label, self.params)


@dataclass(frozen=True)
class AtomIndex:
    l: int
    i: int
    k: int


def _check_n(n, basis):
    if n != basis.n:
        raise DimensionError(f"length {n} does not match basis N={basis.n}")


def _check_index(name, value, upper):
    if not 0 <= int(value) < upper:
        raise IndexError(f"{name}={value} out of range [0, {upper})")
    return int(value)


def translation_matrix(profile, basis: FractionalBasis) -> np.ndarray:
    """Rows ``T_i g`` for every vertex ``i`` given a window profile.

    ``T[i, n] = N**(alpha/2) * sum_p g_hat(r_p) conj(gamma_p(i)) gamma_p(n)``.
    """
    gamma = basis.gamma
    return basis.n ** (basis.alpha / 2) * ((gamma.conj() * profile) @ gamma.T)


def translate(g, i: int, basis: FractionalBasis) -> np.ndarray:
    """Fractional translation ``T_i^alpha g`` of a vertex-domain window."""
    g = np.asarray(g)
    _check_n(g.shape[-1], basis)
    i = _check_index("i", i, basis.n)
    gamma = basis.gamma
    ghat = gamma.conj().T @ g
    return basis.n ** (basis.alpha / 2) * (gamma @ (ghat * gamma[i].conj()))


def modulate(g, k: int, basis: FractionalBasis) -> np.ndarray:
    """Fractional modulation ``M_k^alpha g = N**(alpha/2) g * gamma_k``."""
    g = np.asarray(g)
    _check_n(g.shape[-1], basis)
    k = _check_index("k", k, basis.n)
    return basis.n ** (basis.alpha / 2) * g * basis.gamma[:, k]


def mw_atom(ws: WindowSet, idx: AtomIndex, basis: FractionalBasis) -> np.ndarray:
    """Multi-window atom ``M_k T_i g_l``."""
    l = _check_index("l", idx.l, ws.L)
    return modulate(translate(ws.vertex_windows[l], idx.i, basis), idx.k, basis)


def mw_atom_bank(ws: WindowSet, basis: FractionalBasis) -> np.ndarray:
    """All multi-window atoms as an array indexed ``[l, i, k, n]``.

    Memory is ``L N^3`` complex numbers; meant for small graphs and checks.
    """
    _check_n(ws.n, basis)
    N, a = basis.n, basis.alpha
    gamma = basis.gamma
    bank = np.empty((ws.L, N, N, N), dtype=complex)
    for l in range(ws.L):
        T = translation_matrix(ws.profiles[l], basis)  # [i, n]
        bank[l] = N ** (a / 2) * T[:, None, :] * gamma.T[None, :, :]
    return bank


def shift_atom(ws: WindowSet, i: int, l: int, shift: FractionalShift, basis: FractionalBasis) -> np.ndarray:
    """Shift atom ``gamma_i * (S^alpha g_l)`` (entrywise)."""
    l = _check_index("l", l, ws.L)
    i = _check_index("i", i, basis.n)
    sg = shift.s_alpha @ ws.vertex_windows[l]
    if not np.any(np.abs(sg) > 0):
        raise ValueError(f"shifted window {l} vanishes; shift atoms require S^alpha g_l != 0")
    return basis.gamma[:, i] * sg


def shift_atom_bank(ws: WindowSet, shift: FractionalShift, basis: FractionalBasis) -> np.ndarray:
    """All shift atoms indexed ``[l, i, n]``."""
    _check_n(ws.n, basis)
    SG = ws.vertex_windows @ shift.s_alpha.T  # [l, n] = S g_l
    if np.any(~np.any(np.abs(SG) > 0, axis=1)):
        raise ValueError("some shifted window vanishes; shift atoms require S^alpha g_l != 0")
    return basis.gamma.T[None, :, :] * SG[:, None, :]


def shift_modulated_atom(ws: WindowSet, idx: AtomIndex, shift: FractionalShift, basis: FractionalBasis) -> np.ndarray:
    """Modulated shift atom ``N**(alpha/2) gamma_k(n) s~_i(n) g_l(n)``.

    ``s~_i`` is row ``i`` of ``S^alpha`` (not conjugated); it acts on the window
    entrywise.
    """
    l = _check_index("l", idx.l, ws.L)
    i = _check_index("i", idx.i, basis.n)
    return modulate(shift.s_alpha[i] * ws.vertex_windows[l], idx.k, basis)


def shift_modulated_atom_bank(ws: WindowSet, shift: FractionalShift, basis: FractionalBasis) -> np.ndarray:
    """All modulated shift atoms indexed ``[l, i, k, n]``."""
    _check_n(ws.n, basis)
    N, a = basis.n, basis.alpha
    bank = np.empty((ws.L, N, N, N), dtype=complex)
    for l in range(ws.L):
        SG = shift.s_alpha * ws.vertex_windows[l][None, :]  # [i, n]
        bank[l] = N ** (a / 2) * SG[:, None, :] * basis.gamma.T[None, :, :]
    return bank
