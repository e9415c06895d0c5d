"""Core QRAC algebra: Pauli words, dense oracle, codebook and decoder."""

from .codebook import (
    DisplacementData,
    QracInstance,
    a_entry,
    a_pauli,
    a_squared_exact,
    bits_to_int,
    bits_to_str,
    codebook_json,
    displace,
    displacement,
    encode,
    encoding_matrix,
    int_to_bits,
    parse_bits,
    parity,
    reference_input,
    reference_state,
)
from .decoder import (
    PovmPair,
    WDecomposition,
    decode_bit,
    diagonal_word,
    observable_explicit,
    observable_from_povm,
    parity_projector,
    povm,
    projector_sum,
    validate_povm,
    w_decomposition,
    w_decomposition_json,
)
from .dense import (
    basis_state,
    commutator,
    expectation,
    hermitian_eigen,
    is_hermitian,
    operator_norm,
)
from .errors import (
    ConstructionError,
    ConvergenceError,
    DimensionLimitError,
    OutputError,
    QracError,
    SiteMismatchError,
)
from .pauli import (
    PauliString,
    PauliSum,
    commutes,
    conjugate_by_word,
    multiply,
    rotate_conjugate,
    to_dense,
)

__all__ = [
    "DisplacementData",
    "QracInstance",
    "a_entry",
    "a_pauli",
    "a_squared_exact",
    "bits_to_int",
    "bits_to_str",
    "codebook_json",
    "displace",
    "displacement",
    "encode",
    "encoding_matrix",
    "int_to_bits",
    "parse_bits",
    "parity",
    "reference_input",
    "reference_state",
    "PovmPair",
    "WDecomposition",
    "decode_bit",
    "diagonal_word",
    "observable_explicit",
    "observable_from_povm",
    "parity_projector",
    "povm",
    "projector_sum",
    "validate_povm",
    "w_decomposition",
    "w_decomposition_json",
    "basis_state",
    "commutator",
    "expectation",
    "hermitian_eigen",
    "is_hermitian",
    "operator_norm",
    "ConstructionError",
    "ConvergenceError",
    "DimensionLimitError",
    "OutputError",
    "QracError",
    "SiteMismatchError",
    "PauliString",
    "PauliSum",
    "commutes",
    "conjugate_by_word",
    "multiply",
    "rotate_conjugate",
    "to_dense",
]
