"""Exact unitary conjugations of many-body operators.

Conjugations H' = e^{iθG} H e^{-iθG} are evaluated as finite polynomials
in the adjoint map for generators whose nested commutators close: Pauli
strings and anticommuting Pauli sums, fermionic excitation generators,
orbital rotations, and linear displacement generators.  Every closed form
is validated against a dense-matrix oracle.

The top-level functions mirror the HTTP service and the CLI: `transform`,
`classify_ucc`, `coeffs`, and `rotate_tensors` take and return the same
payload dictionaries.
"""

from .adjoint import (
    AdjointClosure,
    CoefficientVector,
    DifferenceSet,
    adjoint_action,
    anticommuting_reduction,
    detect_closure,
    difference_set,
    lagrange_block_probe,
    nested_adjoints,
    solve_vandermonde,
    supported_set,
    transform_via_closure,
    transform_via_spectrum,
)
from .dense import conjugate_exact, sandwich_norm, spectrum, to_dense
from .errors import (
    ComplexResidueTooLarge,
    DimensionMismatch,
    EngineError,
    InvariantViolation,
    NoClosureWithinBound,
    NotAnticommuting,
    NotClosed,
    NotHermitian,
    OracleCapExceeded,
    ParseError,
    SingularSystem,
)
from .fermion import FermiString, FermiSum, jordan_wigner, normal_order
from .generators import (
    BlockPattern,
    InvolutoryGenerator,
    UCCGenerator,
    build_ucc,
    classify_ucc_pair,
    pauli_generator_transform,
    pg_sandwich_norms,
    ucc_fragment_transform,
)
from .lie import (
    ElectronicTensors,
    OrbitalRotation,
    module_adjoint_matrix,
    module_transform,
    rotate_annihilation,
    rotate_creation,
)
from .lie import rotate_tensors as rotate_tensor_objects
from .pauli import PauliString, PauliSum, anticommutator, commutator, commutes, pauli_mul
from .service import run_classify as classify_ucc
from .service import run_coeffs as coeffs
from .service import run_rotate as rotate_tensors
from .service import run_transform as transform
from .weyl import WeylPolynomial, heisenberg_displace

__version__ = "0.1.0"

__all__ = [
    "AdjointClosure", "BlockPattern", "CoefficientVector", "DifferenceSet",
    "ElectronicTensors", "FermiString", "FermiSum", "InvolutoryGenerator",
    "OrbitalRotation", "PauliString", "PauliSum", "UCCGenerator",
    "WeylPolynomial",
    "adjoint_action", "anticommutator", "anticommuting_reduction",
    "build_ucc", "classify_ucc", "classify_ucc_pair", "coeffs", "commutator",
    "commutes", "conjugate_exact", "detect_closure", "difference_set",
    "heisenberg_displace", "jordan_wigner", "lagrange_block_probe",
    "module_adjoint_matrix", "module_transform", "nested_adjoints",
    "normal_order", "pauli_generator_transform", "pauli_mul",
    "pg_sandwich_norms", "rotate_annihilation", "rotate_creation",
    "rotate_tensor_objects", "rotate_tensors", "sandwich_norm",
    "solve_vandermonde", "spectrum", "supported_set", "to_dense",
    "transform", "transform_via_closure", "transform_via_spectrum",
    "ucc_fragment_transform",
    "EngineError", "ComplexResidueTooLarge", "DimensionMismatch",
    "InvariantViolation", "NoClosureWithinBound", "NotAnticommuting",
    "NotClosed", "NotHermitian", "OracleCapExceeded", "ParseError",
    "SingularSystem",
]
