"""Dense-matrix ground truth for small systems.

Every closed-form transform in this package is validated against explicit
matrices built here.  Qubit j maps to bit j of the basis index, i.e. the
basis state |q_{n-1} ... q_1 q_0> has index sum_j q_j 2**j, so the matrix
of a one-qubit letter on qubit 0 varies fastest.  This module is the
deliberately slow, trusted path; it does no sparsity tricks.
"""

from __future__ import annotations

import os
from typing import List

import numpy as np

from .errors import DimensionMismatch, NotHermitian, OracleCapExceeded
from .pauli import PauliString, PauliSum

DEFAULT_QUBIT_CAP = 10
HARD_QUBIT_CAP = 14
CAP_ENV_VAR = "EXACT_ADJOINT_ORACLE_CAP"

_LETTERS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

DenseOperator = np.ndarray


def qubit_cap(max_qubits: int | None = None) -> int:
    """Resolve the dense-size cap: explicit argument, env override, default."""
    if max_qubits is not None:
        return min(int(max_qubits), HARD_QUBIT_CAP)
    env = os.environ.get(CAP_ENV_VAR)
    if env is not None:
        return min(int(env), HARD_QUBIT_CAP)
    return DEFAULT_QUBIT_CAP


def string_to_dense(string: PauliString) -> DenseOperator:
    label = string.label()
    mat = np.array([[1.0 + 0.0j]])
    # kron(last, ..., first) puts qubit 0 on the least significant bit
    for j in range(string.n_qubits - 1, -1, -1):
        mat = np.kron(mat, _LETTERS[label[j]])
    return string.phase * mat


def to_dense(op, max_qubits: int | None = None) -> DenseOperator:
    """Exact Kronecker construction of a PauliSum (or, via Jordan-Wigner,
    a FermiSum) as a dense matrix."""
    from .fermion import FermiSum, jordan_wigner

    if isinstance(op, FermiSum):
        op = jordan_wigner(op, op.n_orbitals)
    if not isinstance(op, PauliSum):
        raise TypeError(f"cannot densify {type(op).__name__}")
    cap = qubit_cap(max_qubits)
    if op.n_qubits > cap:
        raise OracleCapExceeded(
            f"{op.n_qubits} qubits exceeds the dense cap of {cap}"
        )
    dim = 1 << op.n_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    for string, coeff in op:
        mat += coeff * string_to_dense(string)
    return mat


def _require_hermitian(mat: DenseOperator, tol: float = 1e-10) -> None:
    if np.max(np.abs(mat - mat.conj().T)) > tol:
        raise NotHermitian("dense operand is not Hermitian")


def conjugate_exact(g: DenseOperator, h: DenseOperator, theta: float) -> DenseOperator:
    """Exact conjugation exp(i*theta*G) H exp(-i*theta*G).

    The unitary is built from the eigendecomposition of G, so it is
    unitary by construction.
    """
    if g.shape != h.shape:
        raise DimensionMismatch("generator and operand dimensions differ")
    _require_hermitian(g)
    w, v = np.linalg.eigh(g)
    u = (v * np.exp(1j * theta * w)) @ v.conj().T
    return u @ h @ u.conj().T


def spectrum(g: DenseOperator, merge_tol: float = 1e-9) -> List[float]:
    """Sorted distinct eigenvalues of a Hermitian matrix, degeneracy-merged."""
    _require_hermitian(g)
    w = np.linalg.eigvalsh(g)
    out: List[float] = []
    for val in np.sort(w):
        if not out or abs(val - out[-1]) > merge_tol:
            out.append(float(val))
    return out


def sandwich_norm(p_left: DenseOperator, o: DenseOperator, p_right: DenseOperator) -> float:
    if p_left.shape != o.shape or o.shape != p_right.shape:
        raise DimensionMismatch("sandwich factors have different dimensions")
    return float(np.linalg.norm(p_left @ o @ p_right))
