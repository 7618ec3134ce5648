"""Canonical spinors, seeded random draws, tensor products, prescribed nullity.

Sampling uses the counter-based Philox generator keyed by (seed, stream),
so any number of reproducible substreams derive from one seed without
overlapping; the stream tag is the counter handed out by suites.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .analysis import nullity
from .clifford import (
    Spinor,
    SpinorSpace,
    basis_spinor,
    chirality_project,
    make_space,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DimensionError,
    InternalVerificationError,
    NoTotallyImpureError,
    ParityError,
    RangeError,
    UnreachableNullityError,
)

SAMPLER_ALGORITHM = "philox-4x64"
_MASK64 = (1 << 64) - 1


@dataclass
class SeededSampler:
    """Deterministic spinor sampler; one owner per instance.

    The same (seed, stream) pair always reproduces the same draw sequence.
    substream() derives an independent sampler from the same seed, which is
    how per-trial reproducibility is arranged without sharing state.
    """

    seed: int
    stream: int = 0
    algorithm: str = SAMPLER_ALGORITHM
    counter: int = field(default=0, init=False)

    def __post_init__(self) -> None:
        if self.algorithm != SAMPLER_ALGORITHM:
            raise RangeError(f"unknown sampler algorithm {self.algorithm!r}")
        key = [int(self.seed) & _MASK64, int(self.stream) & _MASK64]
        self._rng = np.random.Generator(np.random.Philox(key=key))

    def substream(self, stream: int) -> "SeededSampler":
        return SeededSampler(seed=self.seed, stream=stream)

    def complex_normal(self, size: int) -> np.ndarray:
        self.counter += 1
        return self._rng.standard_normal(size) + 1j * self._rng.standard_normal(size)

    def integers(self, low: int, high: int) -> int:
        self.counter += 1
        return int(self._rng.integers(low, high))


def psi_pure(n: int) -> Spinor:
    """The all-plus basis spinor; nullity floor(n/2), pure for even n."""
    return basis_spinor(make_space(n), 0)


def psi_totally_impure(n: int) -> Spinor:
    """Sum of the all-plus and all-minus basis spinors; nullity 0.

    Dimensions 3, 4, 5 admit no spinor of nullity zero at all, so the
    request is refused there.
    """
    if n in (3, 4, 5):
        raise NoTotallyImpureError(
            f"every nonzero spinor in dimension {n} has nullity >= 1"
        )
    space = make_space(n)
    return basis_spinor(space, 0) + basis_spinor(space, space.dim - 1)


def random_spinor(
    space: SpinorSpace,
    sampler: SeededSampler,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Spinor:
    """Unit spinor with independent standard complex Gaussian coefficients."""
    while True:
        coeffs = sampler.complex_normal(space.dim)
        nrm = np.linalg.norm(coeffs)
        if nrm >= tol.resample_norm:
            return Spinor(space, coeffs / nrm)


def random_chiral_spinor(
    space: SpinorSpace,
    sampler: SeededSampler,
    sign: int,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Spinor:
    """Unit spinor in the chirality half Sigma^sign; resamples near-zero hits."""
    if space.odd:
        raise ParityError(f"chiral sampling needs even n, got n={space.n}")
    if sign not in (1, -1):
        raise RangeError(f"sign must be +1 or -1, got {sign!r}")
    while True:
        raw = random_spinor(space, sampler, tol)
        proj = chirality_project(space, raw, sign)
        nrm = proj.norm()
        if nrm >= tol.resample_norm:
            return Spinor(space, proj.coeffs / nrm)


def tensor_spinor(psi_a: Spinor, psi_b: Spinor) -> Spinor:
    """Product spinor, with psi_a occupying the slots acted on by e_1..e_{n_a}.

    Requires even n_a so the slot bookkeeping composes: the first factor's
    k_a index bits are the low bits of the product index, hence the Kronecker
    order below.  For a pure first factor the product nullity is
    n_a/2 + nullity(psi_b).
    """
    if psi_a.space.odd:
        raise ParityError(
            f"first tensor factor must have even dimension, got n={psi_a.space.n}"
        )
    n_total = psi_a.space.n + psi_b.space.n
    space = make_space(n_total)
    if space.k != psi_a.space.k + psi_b.space.k:
        raise DimensionError("slot counts do not add up")
    coeffs = np.kron(psi_b.coeffs, psi_a.coeffs)
    return Spinor(space, coeffs)


def admissible_nullities(n: int) -> tuple:
    """All N realisable by the tensor construction in ambient dimension n."""
    if n < 2:
        raise DimensionError(f"ambient dimension must be >= 2, got {n}")
    return tuple(N for N in range(n // 2 + 1) if n - 2 * N not in (3, 4, 5))


def construct_with_nullity(
    n: int, N: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> Spinor:
    """Spinor in dimension n with nullity exactly N, oracle-checked.

    Built as psi_pure(2N) tensor psi_totally_impure(n - 2N).  The leftover
    dimensions 3, 4, 5 admit no nullity-zero factor, so those (n, N) pairs
    are unreachable by this construction (and, for the remainder 3 or 5,
    by any construction).  A leftover of one dimension contributes nothing:
    in ambient dimension 1 every nonzero spinor already has nullity zero,
    and the product collapses to psi_pure(n).
    """
    n = int(n)
    N = int(N)
    if n < 2:
        raise RangeError(f"ambient dimension must be >= 2, got {n}")
    if not 0 <= N <= n // 2:
        raise RangeError(f"nullity {N} out of range 0..{n // 2} for n={n}")
    rest = n - 2 * N
    if rest in (3, 4, 5):
        raise UnreachableNullityError(
            f"no nullity-zero factor exists in dimension {rest}, so (n={n}, N={N}) "
            "is unreachable"
        )
    if rest == 0:
        result = psi_pure(n)
    elif rest == 1:
        result = psi_pure(n)
    elif N == 0:
        result = psi_totally_impure(n)
    else:
        result = tensor_spinor(psi_pure(2 * N), psi_totally_impure(rest))
    report = nullity(result, tol)
    if report.nullity != N:
        raise InternalVerificationError(
            f"constructed spinor has oracle nullity {report.nullity}, wanted {N}"
        )
    return result
