"""Multi-window and shift multi-window frames in the graph fractional Fourier domain."""

from .analysis import add_noise, benchmark, detect_anomalies, nmse, spectrogram
from .atoms import AtomIndex, WindowSet, modulate, mw_atom, mw_atom_bank, shift_atom, shift_atom_bank, \
    shift_modulated_atom, shift_modulated_atom_bank, translate
from .frames import canonical_dual, frame_bounds_mw, frame_bounds_shift, frame_vector_mw, \
    frame_vector_shift, is_tight_mw, is_tight_shift, reconstruct, tight_spectral_check, verify_dual_windows
from .graph import Graph, build_laplacian, generate_graph, generate_signal
from .spectral import FractionalBasis, FractionalShift, SpectralDecomposition, eig_sym, \
    fractional_basis, fractional_shift, graph_basis, inverse_sgfrft, sgfrft
from .transforms import CoefficientSet, f_tilde, fmwgfrft, mwgfrft, smwgfrft, wgfrft
from .windows import bspline_n2, bspline_tight_windows, dual_heat_window, eigenvector_windows, \
    gaussian_window, heat_window, householder_windows, translated_family

__version__ = "0.1.0"
