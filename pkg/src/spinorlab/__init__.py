"""Numerical Clifford algebra and spinor classification toolkit."""

from .clifford import (
    ComplexVector,
    DenseOperator,
    Spinor,
    SpinorSpace,
    apply_generator,
    apply_vector,
    basis_spinor,
    chirality_project,
    dense_generator_matrix,
    eps_to_index,
    index_to_eps,
    inner,
    make_space,
    standard_generator_matrix,
    volume_element,
    zero_spinor,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ConfigError,
    DimensionError,
    EmptyDistributionError,
    IllConditionedRankError,
    InternalVerificationError,
    NoTotallyImpureError,
    ParityError,
    ParseError,
    RangeError,
    ResidualError,
    SpectrumMismatchError,
    SpinorlabError,
    UnreachableNullityError,
    ZeroSpinorError,
    ZeroVectorError,
)

__version__ = "0.1.0"
