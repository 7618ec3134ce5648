"""Core spinor representation: generator action, inner product, volume element.

The spinor space for ambient dimension n is C^(2^k) with k = floor(n/2).
Basis spinors are labelled by sign tuples eps = (eps_1, ..., eps_k).  The
coefficient index encodes eps with eps_1 as the most significant bit and
+1 encoding bit value 0, so the all-plus spinor sits at index 0.

Generators e_1, ..., e_n act basis spinor to basis spinor: e_{2a-1} and
e_{2a} flip the sign in slot k-a+1 (bit a-1 of the index) and multiply by
a unit phase depending on the trailing signs; for odd n the last generator
is diagonal.  All phase factors lie in {+1, -1, +i, -i}, so the matrix-free
path costs O(2^k) per application and its only error is rounding.

Two dense routes exist for cross-checking: standard_generator_matrix gives
the representation matrix in the plain tensor-product basis of (C^2)^{x k},
and dense_generator_matrix conjugates it into the coefficient basis used
by the matrix-free kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .errors import (
    DimensionError,
    ParityError,
    RangeError,
    SpinorlabError,
    ZeroSpinorError,
)

ID2 = np.eye(2, dtype=np.complex128)
G1 = np.array([[1j, 0.0], [0.0, -1j]], dtype=np.complex128)
G2 = np.array([[0.0, 1j], [1j, 0.0]], dtype=np.complex128)
TMAT = np.array([[0.0, -1j], [1j, 0.0]], dtype=np.complex128)

# Columns are u_{+1} = (1, -i)/sqrt(2) and u_{-1} = (1, i)/sqrt(2): the
# eigenbasis the coefficient indexing refers to, written in the standard
# basis of C^2.
UBASIS2 = np.array([[1.0, 1.0], [-1j, 1j]], dtype=np.complex128) / np.sqrt(2.0)

_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class SpinorSpace:
    """Ambient dimension n, k = floor(n/2), spinor dimension 2^k."""

    n: int
    k: int
    dim: int
    odd: bool


def make_space(n: int) -> SpinorSpace:
    """Build the spinor space for ambient dimension n >= 2."""
    n = int(n)
    if n < 2:
        raise DimensionError(f"ambient dimension must be >= 2, got {n}")
    k = n // 2
    return SpinorSpace(n=n, k=k, dim=1 << k, odd=bool(n % 2))


@dataclass(frozen=True)
class Spinor:
    """Coefficient vector over the u_eps basis of a SpinorSpace."""

    space: SpinorSpace
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.shape != (self.space.dim,):
            raise DimensionError(
                f"expected {self.space.dim} coefficients, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise SpinorlabError("spinor coefficients must be finite")
        object.__setattr__(self, "coeffs", arr)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def normalized(self) -> "Spinor":
        nrm = self.norm()
        if nrm == 0.0:
            raise ZeroSpinorError("cannot normalize the zero spinor")
        return Spinor(self.space, self.coeffs / nrm)

    def __add__(self, other: "Spinor") -> "Spinor":
        _check_same_space(self.space, other.space)
        return Spinor(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other: "Spinor") -> "Spinor":
        _check_same_space(self.space, other.space)
        return Spinor(self.space, self.coeffs - other.coeffs)

    def __mul__(self, scalar: complex) -> "Spinor":
        return Spinor(self.space, self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "Spinor":
        return Spinor(self.space, -self.coeffs)


@dataclass(frozen=True)
class ComplexVector:
    """Vector z in C^n acting on spinors by Clifford multiplication."""

    space: SpinorSpace
    components: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.components, dtype=np.complex128)
        if arr.shape != (self.space.n,):
            raise DimensionError(
                f"expected {self.space.n} components, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise SpinorlabError("vector components must be finite")
        object.__setattr__(self, "components", arr)

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def conjugate(self) -> "ComplexVector":
        return ComplexVector(self.space, np.conj(self.components))


@dataclass(frozen=True)
class DenseOperator:
    """Square matrix acting on coefficient vectors; test oracle plumbing."""

    space: SpinorSpace
    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.matrix, dtype=np.complex128)
        if arr.shape != (self.space.dim, self.space.dim):
            raise DimensionError(
                f"expected {(self.space.dim, self.space.dim)} matrix, got {arr.shape}"
            )
        object.__setattr__(self, "matrix", arr)

    def apply(self, psi: Spinor) -> Spinor:
        _check_same_space(self.space, psi.space)
        return Spinor(self.space, self.matrix @ psi.coeffs)


def _check_same_space(a: SpinorSpace, b: SpinorSpace) -> None:
    if a != b:
        raise DimensionError(f"space mismatch: n={a.n} vs n={b.n}")


def eps_to_index(eps) -> int:
    """Index of the basis spinor u_eps; eps_1 is the most significant bit."""
    idx = 0
    k = len(eps)
    for a, e in enumerate(eps, start=1):
        if e == 1:
            continue
        if e == -1:
            idx |= 1 << (k - a)
        else:
            raise RangeError(f"sign tuple entries must be +1 or -1, got {e!r}")
    return idx

def index_to_eps(i: int, k: int) -> tuple:
    """Sign tuple of the basis spinor at coefficient index i, for k slots."""
    i = int(i)
    if not 0 <= i < (1 << k):
        raise RangeError(f"index {i} out of range for k={k}")
    return tuple(-1 if (i >> (k - a)) & 1 else 1 for a in range(1, k + 1))


def basis_spinor(space: SpinorSpace, index: int) -> Spinor:
    """The basis spinor u_eps at the given coefficient index."""
    index = int(index)
    if not 0 <= index < space.dim:
        raise RangeError(f"basis index {index} out of range for dim {space.dim}")
    coeffs = np.zeros(space.dim, dtype=np.complex128)
    coeffs[index] = 1.0
    return Spinor(space, coeffs)


def zero_spinor(space: SpinorSpace) -> Spinor:
    return Spinor(space, np.zeros(space.dim, dtype=np.complex128))


def _masked_parity_signs(dim: int, mask: int) -> np.ndarray:
    """(-1)**popcount(i & mask) for every index i below dim."""
    return np.array(
        [-1.0 if bin(i & mask).count("1") % 2 else 1.0 for i in range(dim)]
    )


@lru_cache(maxsize=None)
def _generator_table(n: int, j: int):
    """Permutation and phase table for e_j on coefficient vectors.

    Returns (perm, phase) with (e_j psi)[i] = (phase * psi)[perm[i]]; perm is
    None for the diagonal odd generator.  Derived from the basis action:
    e_{2a-1} u_eps = i (-1)^(a-1) (prod of eps_{k-a+2}..eps_k) u_eps', and
    e_{2a} u_eps picks up the slot k-a+1 sign as well; eps' flips slot
    k-a+1, which is bit a-1 of the index.
    """
    k = n // 2
    dim = 1 << k
    if n % 2 and j == n:
        signs = _masked_parity_signs(dim, dim - 1)
        phase = (1j if k % 2 == 0 else -1j) * signs
        phase.flags.writeable = False
        return None, phase
    a = (j + 1) // 2
    if j % 2:
        mask = (1 << (a - 1)) - 1
        unit = 1j * (1 if (a - 1) % 2 == 0 else -1)
    else:
        mask = (1 << a) - 1
        unit = complex(1 if (a - 1) % 2 == 0 else -1)
    phase = unit * _masked_parity_signs(dim, mask)
    perm = np.arange(dim) ^ (1 << (a - 1))
    phase.flags.writeable = False
    perm.flags.writeable = False
    return perm, phase


def apply_generator(space: SpinorSpace, j: int, psi: Spinor) -> Spinor:
    """Clifford multiplication e_j . psi, matrix-free."""
    _check_same_space(space, psi.space)
    j = int(j)
    if not 1 <= j <= space.n:
        raise RangeError(f"generator index {j} out of range 1..{space.n}")
    perm, phase = _generator_table(space.n, j)
    scaled = phase * psi.coeffs
    if perm is None:
        return Spinor(space, scaled)
    return Spinor(space, scaled[perm])


def as_complex_vector(space: SpinorSpace, v) -> ComplexVector:
    """Coerce an array-like of length n into a ComplexVector on space."""
    if isinstance(v, ComplexVector):
        _check_same_space(space, v.space)
        return v
    return ComplexVector(space, np.asarray(v, dtype=np.complex128))


def apply_vector(space: SpinorSpace, v, psi: Spinor) -> Spinor:
    """Clifford multiplication (sum_j v_j e_j) . psi."""
    _check_same_space(space, psi.space)
    vec = as_complex_vector(space, v)
    out = np.zeros(space.dim, dtype=np.complex128)
    for j in range(1, space.n + 1):
        z = vec.components[j - 1]
        if z == 0:
            continue
        perm, phase = _generator_table(space.n, j)
        scaled = phase * psi.coeffs
        out += z * (scaled if perm is None else scaled[perm])
    return Spinor(space, out)


def inner(phi: Spinor, psi: Spinor) -> complex:
    """Hermitian product, linear in phi and conjugate-linear in psi."""
    _check_same_space(phi.space, psi.space)
    return complex(np.vdot(psi.coeffs, phi.coeffs))


@lru_cache(maxsize=None)
def _volume_phase(n: int) -> complex:
    """Unit c(n) making c(n) e_1...e_n square to Id, and act as +Id for odd n.

    For even n the standard choice i^(n/2) works.  For odd n the generator
    product already acts as a unit scalar on the whole spinor space, so the
    scalar is read off exactly from the all-plus basis spinor and cancelled.
    """
    if n % 2 == 0:
        return _I_POWERS[(n // 2) % 4]
    space = make_space(n)
    psi = basis_spinor(space, 0)
    for j in range(space.n, 0, -1):
        psi = apply_generator(space, j, psi)
    lam = complex(psi.coeffs[0])
    rest = np.linalg.norm(psi.coeffs[1:])
    assert rest == 0.0 and abs(abs(lam) - 1.0) < 1e-14, "volume scalar not a unit"
    return lam.conjugate()


def volume_element(space: SpinorSpace, psi: Spinor) -> Spinor:
    """Action of the normalized volume element c(n) e_1 e_2 ... e_n."""
    _check_same_space(space, psi.space)
    out = psi
    for j in range(space.n, 0, -1):
        out = apply_generator(space, j, out)
    return _volume_phase(space.n) * out


def chirality_project(space: SpinorSpace, psi: Spinor, sign: int) -> Spinor:
    """Projection (psi + sign * volume . psi) / 2 onto a chirality half."""
    if space.odd:
        raise ParityError(f"chirality projection needs even n, got n={space.n}")
    if sign not in (1, -1):
        raise RangeError(f"sign must be +1 or -1, got {sign!r}")
    return 0.5 * (psi + sign * volume_element(space, psi))


def _kron_chain(factors) -> np.ndarray:
    return reduce(np.kron, factors, np.eye(1, dtype=np.complex128))


def standard_generator_matrix(space: SpinorSpace, j: int) -> DenseOperator:
    """Representation matrix of e_j in the plain tensor basis of (C^2)^{x k}.

    This is the literal Kronecker recipe: e_{2a-1} = Id^(k-a) x g1 x T^(a-1),
    e_{2a} = Id^(k-a) x g2 x T^(a-1), and for odd n the last generator is
    i T^k.  Note the tensor basis differs from the coefficient basis; see
    dense_generator_matrix for the conjugated version.
    """
    j = int(j)
    if not 1 <= j <= space.n:
        raise RangeError(f"generator index {j} out of range 1..{space.n}")
    k = space.k
    if space.odd and j == space.n:
        return DenseOperator(space, 1j * _kron_chain([TMAT] * k))
    a = (j + 1) // 2
    head = [ID2] * (k - a)
    mid = [G1 if j % 2 else G2]
    tail = [TMAT] * (a - 1)
    return DenseOperator(space, _kron_chain(head + mid + tail))


@lru_cache(maxsize=None)
def _u_basis_matrix(k: int) -> np.ndarray:
    """Change of basis: column i is the basis spinor at index i in the tensor basis."""
    return _kron_chain([UBASIS2] * k)


def dense_generator_matrix(space: SpinorSpace, j: int) -> DenseOperator:
    """Matrix of e_j acting on coefficient vectors (dense oracle).

    Built independently of the matrix-free tables: the Kronecker matrix in
    the tensor basis is conjugated by the u-basis change of basis, so its
    action on coefficient vectors must agree with apply_generator.
    """
    std = standard_generator_matrix(space, j).matrix
    u = _u_basis_matrix(space.k)
    return DenseOperator(space, u.conj().T @ std @ u)
