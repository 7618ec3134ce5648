"""Clifford action of the Kaehler 2-form and its eigenlevel decomposition.

For the standard complex structure J on R^{2m} the operator
alpha = -1/2 sum_j e_j . (J e_j) .  is skew-Hermitian with spectrum
{i(m - 2r) : r = 0..m} and level multiplicities binomial(m, r).  The
decomposition is computed by dense Hermitian eigendecomposition of
i * alpha, then matched against the predicted lattice; a mismatch is an
error, never a silent relabeling.  Multiplication by Z = X - iJX moves
level r to r + 1, the conjugate moves it to r - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .clifford import (
    Spinor,
    SpinorSpace,
    apply_generator,
    apply_vector,
    make_space,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DimensionError,
    ParityError,
    RangeError,
    SpectrumMismatchError,
    ZeroVectorError,
)


@dataclass(frozen=True)
class ComplexStructureMatrix:
    """Orthogonal complex structure on R^{2m} with integer entries."""

    m: int
    matrix: np.ndarray


def standard_j(m: int) -> ComplexStructureMatrix:
    """Block rotation structure: J e_{2a-1} = e_{2a}, J e_{2a} = -e_{2a-1}."""
    m = int(m)
    if m < 1:
        raise RangeError(f"m must be >= 1, got {m}")
    block = np.array([[0.0, -1.0], [1.0, 0.0]])
    matrix = np.kron(np.eye(m), block)
    return ComplexStructureMatrix(m=m, matrix=matrix)


@dataclass(frozen=True)
class SigmaLevel:
    """One eigenlevel: eigenvalue i(m - 2r) with an orthonormal basis."""

    r: int
    eigenvalue: complex
    multiplicity: int
    basis: np.ndarray


@dataclass(frozen=True)
class KaehlerSpectrum:
    """Eigenlevel decomposition of the alpha operator, r ascending."""

    m: int
    space: SpinorSpace
    levels: tuple

    def level(self, r: int) -> SigmaLevel:
        if not 0 <= r <= self.m:
            raise RangeError(f"level {r} out of range 0..{self.m}")
        return self.levels[r]


def _check_even_match(j: ComplexStructureMatrix, space: SpinorSpace) -> None:
    if space.odd:
        raise ParityError(f"Kaehler action needs even n, got n={space.n}")
    if space.n != 2 * j.m:
        raise DimensionError(f"J is on R^{2 * j.m} but the spinor space has n={space.n}")


def alpha_apply(j: ComplexStructureMatrix, psi: Spinor) -> Spinor:
    """Action -1/2 sum_{j=1}^{n} e_j . (J e_j) . psi over the full frame.

    The sum runs over all n frame vectors; halving conventions are settled
    by the spectrum check in kaehler_spectrum, not assumed here.
    """
    space = psi.space
    _check_even_match(j, space)
    acc = np.zeros(space.dim, dtype=np.complex128)
    for col in range(space.n):
        jed = j.matrix[:, col].astype(np.complex128)
        term = apply_generator(space, col + 1, apply_vector(space, jed, psi))
        acc += term.coeffs
    return Spinor(space, -0.5 * acc)


def _alpha_matrix(j: ComplexStructureMatrix) -> np.ndarray:
    space = make_space(2 * j.m)
    cols = []
    for i in range(space.dim):
        e = np.zeros(space.dim, dtype=np.complex128)
        e[i] = 1.0
        cols.append(alpha_apply(j, Spinor(space, e)).coeffs)
    return np.stack(cols, axis=1)


def kaehler_spectrum(
    j: ComplexStructureMatrix, tol: Tolerances = DEFAULT_TOLERANCES
) -> KaehlerSpectrum:
    """Dense eigendecomposition of alpha, matched to the predicted lattice.

    i * alpha is Hermitian, so its real eigenvalues are computed with eigh
    and must land on {2r - m} with multiplicity binomial(m, r) each.
    """
    m = j.m
    space = make_space(2 * m)
    amat = _alpha_matrix(j)
    herm = 1j * amat
    skew_defect = np.abs(herm - herm.conj().T).max()
    if skew_defect > tol.spectrum:
        raise SpectrumMismatchError(
            f"alpha is not skew-Hermitian (defect {skew_defect:.3e})"
        )
    evals, evecs = np.linalg.eigh(0.5 * (herm + herm.conj().T))
    levels = []
    used = 0
    for r in range(m + 1):
        target = 2 * r - m
        mult = comb(m, r)
        chunk = evals[used : used + mult]
        resid = np.abs(chunk - target).max(initial=0.0)
        if chunk.size != mult or resid > tol.spectrum:
            raise SpectrumMismatchError(
                f"eigenvalues near level r={r} miss i(m-2r): residual {resid:.3e}"
            )
        basis = evecs[:, used : used + mult].copy()
        levels.append(
            SigmaLevel(
                r=r,
                eigenvalue=complex(0.0, m - 2 * r),
                multiplicity=mult,
                basis=basis,
            )
        )
        used += mult
    if used != space.dim:
        raise SpectrumMismatchError(
            f"level multiplicities cover {used} of {space.dim} dimensions"
        )
    return KaehlerSpectrum(m=m, space=space, levels=tuple(levels))


def project_sigma_r(spec: KaehlerSpectrum, psi: Spinor, r: int) -> Spinor:
    """Orthogonal projection onto the level-r eigenspace."""
    if psi.space != spec.space:
        raise DimensionError(
            f"spinor lives on n={psi.space.n}, spectrum on n={spec.space.n}"
        )
    if not 0 <= int(r) <= spec.m:
        raise RangeError(f"level {r} out of range 0..{spec.m}")
    basis = spec.levels[int(r)].basis
    return Spinor(psi.space, basis @ (basis.conj().T @ psi.coeffs))


def _infer_level(spec: KaehlerSpectrum, psi: Spinor) -> int:
    norms = [project_sigma_r(spec, psi, r).norm() for r in range(spec.m + 1)]
    r = int(np.argmax(norms))
    total = psi.norm()
    if total == 0.0 or norms[r] < (1.0 - 1e-8) * total:
        raise RangeError(
            "spinor is not concentrated at a single eigenlevel; "
            f"level norms {np.round(norms, 6)}"
        )
    return r


def raising_defect(
    spec: KaehlerSpectrum,
    j: ComplexStructureMatrix,
    x,
    psi_r: Spinor,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Leakage of (X - iJX) . psi_r outside level r + 1.

    Returns the norm of the projection of Z . psi_r onto every level other
    than r + 1.  At the top level there is no r + 1, so the whole product
    must vanish and its norm is returned.
    """
    if j.m != spec.m:
        raise DimensionError(f"J has m={j.m}, spectrum has m={spec.m}")
    x_arr = np.asarray(x, dtype=float)
    if x_arr.shape != (2 * spec.m,):
        raise DimensionError(f"X must be a real {2 * spec.m}-vector")
    if np.linalg.norm(x_arr) == 0.0:
        raise ZeroVectorError("raising direction must be nonzero")
    r = _infer_level(spec, psi_r)
    z = x_arr.astype(np.complex128) - 1j * (j.matrix @ x_arr)
    z_psi = apply_vector(spec.space, z, psi_r)
    if r == spec.m:
        return z_psi.norm()
    allowed = project_sigma_r(spec, z_psi, r + 1)
    leak = z_psi.coeffs - allowed.coeffs
    return float(np.linalg.norm(leak))
