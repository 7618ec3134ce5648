"""Isotropic kernel, nullity, purity classes, and the induced CR data.

The kernel of a nonzero spinor psi is T_psi = {Z in C^n : Z . psi = 0},
computed as the null space of the dim x n matrix whose column j is
e_j . psi.  Nullity is its complex dimension, decided by SVD with a
relative threshold and a mandatory spectral gap: an ambiguous gap raises
instead of guessing, because a wrong rank corrupts everything downstream.

From the kernel the almost-CR data follows: D is the real span of the
real and imaginary parts of T_psi, J is recovered on D by solving
X . psi = i Y . psi for real Y and setting JX = -Y, D-perp is the real
orthogonal complement, and xi_j = i <e_j . psi, psi>.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .clifford import (
    ComplexVector,
    Spinor,
    apply_generator,
    apply_vector,
    inner,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    EmptyDistributionError,
    IllConditionedRankError,
    InternalVerificationError,
    ResidualError,
    ZeroSpinorError,
    ZeroVectorError,
)


class PurityTag(enum.Enum):
    PURE = "Pure"
    STRICTLY_PARTIALLY_PURE = "StrictlyPartiallyPure"
    TOTALLY_IMPURE = "TotallyImpure"
    IMPURE = "Impure"


@dataclass(frozen=True)
class NullityReport:
    """Nullity, orthonormal kernel basis, and the singular value evidence."""

    nullity: int
    kernel_basis: tuple
    singular_values: np.ndarray
    rank_gap: float


@dataclass(frozen=True)
class Classification:
    """Purity class and CR rank of a spinor; rank equals the nullity."""

    tag: PurityTag
    rank: int
    report: NullityReport

    @property
    def is_impure(self) -> bool:
        """Nullity strictly between 0 and n/2."""
        return self.tag in (PurityTag.STRICTLY_PARTIALLY_PURE, PurityTag.IMPURE)


@dataclass(frozen=True)
class CRFrame:
    """Distribution D (columns of d_basis), J on D, D-perp, and xi.

    d_basis is n x 2m with orthonormal columns, j_matrix is the 2m x 2m
    matrix of J in those columns, dperp_basis is n x (n - 2m).
    """

    d_basis: np.ndarray
    j_matrix: np.ndarray
    dperp_basis: np.ndarray
    xi: np.ndarray

    def j_operator(self) -> np.ndarray:
        """J as an n x n matrix acting on D and vanishing on D-perp."""
        return self.d_basis @ self.j_matrix @ self.d_basis.T

    def j_apply(self, x: np.ndarray) -> np.ndarray:
        return self.j_operator() @ np.asarray(x, dtype=float)


def _require_nonzero(psi: Spinor) -> float:
    nrm = psi.norm()
    if nrm == 0.0:
        raise ZeroSpinorError("operation undefined for the zero spinor")
    return nrm


def kernel_matrix(psi: Spinor) -> np.ndarray:
    """Matrix of Z -> Z . psi over the standard bases; column j is e_j . psi."""
    _require_nonzero(psi)
    space = psi.space
    cols = [apply_generator(space, j, psi).coeffs for j in range(1, space.n + 1)]
    return np.stack(cols, axis=1)


def _split_rank(s: np.ndarray, total: int, tol: Tolerances):
    """Retained count and rank gap for a descending singular value array.

    s may be shorter than total (wide matrices); missing values are exact
    zeros.  Raises when the retained/discarded separation is too small to
    trust the rank decision.
    """
    padded = np.zeros(total)
    padded[: s.size] = s
    smax = padded[0]
    if smax == 0.0:
        return 0, float("inf"), padded
    keep = int(np.sum(padded > tol.rank_rel * smax))
    if keep == total:
        gap = float("inf")
    else:
        largest_dropped = padded[keep]
        if largest_dropped == 0.0:
            gap = float("inf")
        else:
            gap = float(padded[keep - 1] / largest_dropped)
    if gap < tol.rank_gap_min:
        raise IllConditionedRankError(
            f"singular value gap {gap:.3e} below {tol.rank_gap_min:.1e}; "
            "numerical rank is ambiguous"
        )
    return keep, gap, padded


def nullity(psi: Spinor, tol: Tolerances = DEFAULT_TOLERANCES) -> NullityReport:
    """Nullity N_psi with kernel basis from the right singular subspace."""
    space = psi.space
    kmat = kernel_matrix(psi)
    _, s, vh = np.linalg.svd(kmat, full_matrices=True)
    keep, gap, padded = _split_rank(s, space.n, tol)
    n_psi = space.n - keep
    if n_psi > space.n // 2:
        raise InternalVerificationError(
            f"computed nullity {n_psi} exceeds the isotropic bound {space.n // 2}"
        )
    basis = tuple(
        ComplexVector(space, np.conj(vh[row])) for row in range(keep, space.n)
    )
    return NullityReport(
        nullity=n_psi,
        kernel_basis=basis,
        singular_values=padded,
        rank_gap=gap,
    )


def classify(psi: Spinor, tol: Tolerances = DEFAULT_TOLERANCES) -> Classification:
    """Purity class from the nullity and the parity of n."""
    report = nullity(psi, tol)
    n = psi.space.n
    if report.nullity == 0:
        tag = PurityTag.TOTALLY_IMPURE
    elif n % 2 == 0 and report.nullity == n // 2:
        tag = PurityTag.PURE
    else:
        tag = PurityTag.STRICTLY_PARTIALLY_PURE
    return Classification(tag=tag, rank=report.nullity, report=report)


def _real_span_basis(columns: np.ndarray, tol: Tolerances):
    """Orthonormal basis and complement of the span of real columns."""
    u, s, _ = np.linalg.svd(columns, full_matrices=True)
    rank, _, _ = _split_rank(s, min(columns.shape), tol)
    return u[:, :rank], u[:, rank:]


def xi_vector(psi: Spinor, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Characteristic vector: xi_j = i <e_j . psi, psi>, real componentwise."""
    space = psi.space
    raw = np.array(
        [
            1j * inner(apply_generator(space, j, psi), psi)
            for j in range(1, space.n + 1)
        ]
    )
    scale = psi.norm() ** 2
    assert np.abs(raw.imag).max(initial=0.0) <= tol.xi_imag * max(scale, 1e-300), (
        "xi acquired an imaginary part; generator skew-adjointness is broken"
    )
    return raw.real.copy()


def cr_frame(psi: Spinor, tol: Tolerances = DEFAULT_TOLERANCES) -> CRFrame:
    """Almost-CR data (D, J, D-perp, xi) of a spinor with positive nullity."""
    psi_norm = _require_nonzero(psi)
    space = psi.space
    report = nullity(psi, tol)
    if report.nullity == 0:
        raise EmptyDistributionError(
            "nullity is zero, so the distribution D is trivial and J undefined"
        )
    kmat = kernel_matrix(psi)
    realim = np.empty((space.n, 2 * report.nullity))
    for col, z in enumerate(report.kernel_basis):
        realim[:, 2 * col] = z.components.real
        realim[:, 2 * col + 1] = z.components.imag
    d_basis, dperp_basis = _real_span_basis(realim, tol)

    # J on D: for each basis X solve K Y = -i K X for real Y, set JX = -Y.
    # The least squares system stacks real and imaginary parts; residuals
    # must vanish on their own, no symmetrization is applied afterwards.
    lhs = np.vstack([kmat.real, kmat.imag])
    dim2 = 2 * report.nullity
    jx_vectors = np.empty((space.n, dim2))
    for col in range(dim2):
        rhs_c = -1j * (kmat @ d_basis[:, col])
        rhs = np.concatenate([rhs_c.real, rhs_c.imag])
        y, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
        resid = np.linalg.norm(lhs @ y - rhs)
        if resid > tol.residual * psi_norm:
            raise ResidualError(
                f"J solve residual {resid:.3e} exceeds {tol.residual:.1e}"
            )
        jx_vectors[:, col] = -y
    j_matrix = d_basis.T @ jx_vectors
    off_d = jx_vectors - d_basis @ j_matrix
    off_norm = float(np.linalg.norm(off_d))
    if off_norm > tol.residual * max(1.0, float(np.linalg.norm(jx_vectors))):
        raise ResidualError(
            f"J image leaves D by {off_norm:.3e}; distribution is not J-invariant"
        )
    xi = xi_vector(psi, tol)
    return CRFrame(
        d_basis=d_basis, j_matrix=j_matrix, dperp_basis=dperp_basis, xi=xi
    )


@dataclass(frozen=True)
class PerpCheckResult:
    """Outcome of the multiplication test u . psi against (D, J)."""

    ok: bool
    max_defect: float
    d_overlap: float


def perp_multiplication_check(
    psi: Spinor, u, tol: Tolerances = DEFAULT_TOLERANCES
) -> PerpCheckResult:
    """Whether u . psi stays partially pure for the frame of psi.

    Checks || X . u . psi + i (JX) . u . psi || over the D basis; the defect
    vanishes exactly when u lies in D-perp, and is bounded below by
    2 max_l |<u, X_l>| for unit u in D.  The overlap of u with D is returned
    alongside as the independent cross-check.
    """
    _require_nonzero(psi)
    space = psi.space
    u_arr = np.asarray(u, dtype=float)
    u_norm = float(np.linalg.norm(u_arr))
    if u_norm == 0.0:
        raise ZeroVectorError("perp check needs a nonzero real vector")
    u_unit = u_arr / u_norm
    psi_unit = psi.normalized()
    frame = cr_frame(psi_unit, tol)
    u_psi = apply_vector(space, u_unit, psi_unit)
    max_defect = 0.0
    for col in range(frame.d_basis.shape[1]):
        x = frame.d_basis[:, col]
        jx = frame.d_basis @ frame.j_matrix[:, col]
        w = apply_vector(space, x + 1j * jx, u_psi)
        max_defect = max(max_defect, w.norm())
    d_overlap = float(np.linalg.norm(frame.d_basis.T @ u_unit))
    return PerpCheckResult(
        ok=max_defect <= tol.perp_defect,
        max_defect=max_defect,
        d_overlap=d_overlap,
    )
