"""Numerical tolerances shared across the package.

All rank decisions go through the same two knobs: a relative threshold
below which singular values count as zero, and a minimum gap ratio
between the smallest kept and largest dropped singular value.  A rank
read off from a poorly separated spectrum is worse than an error, so
the gap is enforced rather than hoped for.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle used by analysis and verification routines.

    rank_rel: singular values below rank_rel * sigma_max are treated as zero.
    rank_gap_min: required ratio between smallest kept and largest dropped
        singular value; below this the rank decision raises instead.
    residual: ceiling for residual norms that should vanish exactly.
    xi_imag: ceiling for the imaginary part of components that are real
        in exact arithmetic.
    spectrum: ceiling for eigenvalue deviation from predicted values.
    perp_defect: ceiling for the annihilation defect of admissible vectors.
    resample_norm: spinor draws with norm below this are rejected and redrawn.
    """

    rank_rel: float = 1e-10
    rank_gap_min: float = 1e3
    residual: float = 1e-10
    xi_imag: float = 1e-12
    spectrum: float = 1e-9
    perp_defect: float = 1e-10
    resample_norm: float = 1e-6


DEFAULT_TOLERANCES = Tolerances()
