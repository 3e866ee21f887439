"""Closed-form transforms for generators living in a matrix Lie algebra.

Orbital rotations exp(i sum M_pq a†_p a_q) act on creation/annihilation
operators and on one-/two-body coefficient tensors through the N×N matrix
exponential e^{iM} alone, so the conjugation of an entire electronic
Hamiltonian reduces to tensor contractions.  The module also handles the
generic case of an operator basis closed under commutation with the
generator: the matrix of the adjoint action is extracted once and
exponentiated.
"""

from __future__ import annotations

from typing import List, Sequence

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, InvariantViolation, NotClosed, NotHermitian
from .fermion import FermiString, FermiSum

MODULE_CLOSURE_TOL = 1e-10


class OrbitalRotation:
    """Unitary e^{iM} for a Hermitian one-body generator matrix M."""

    __slots__ = ("m", "u1")

    def __init__(self, m: np.ndarray):
        m = np.asarray(m, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch("generator matrix must be square")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise NotHermitian("generator matrix must be Hermitian")
        self.m = m
        w, v = np.linalg.eigh(m)
        self.u1 = (v * np.exp(1j * w)) @ v.conj().T
        if np.max(np.abs(self.u1 @ self.u1.conj().T - np.eye(len(m)))) > 1e-10:
            raise InvariantViolation("matrix exponential lost unitarity")

    @property
    def n(self) -> int:
        return self.m.shape[0]

    def generator_operator(self) -> FermiSum:
        """The second-quantized generator sum_pq M_pq a†_p a_q."""
        terms = []
        for p in range(self.n):
            for q in range(self.n):
                if abs(self.m[p, q]) > 1e-15:
                    terms.append((self.m[p, q], [(p, True), (q, False)]))
        return FermiSum.from_ops(self.n, terms)


class ElectronicTensors:
    """One-body h_pq and two-body g_pqrs coefficients of
    H = sum h_pq a†_p a_q + sum g_pqrs a†_p a_q a†_r a_s."""

    __slots__ = ("h", "g")

    def __init__(self, h: np.ndarray, g: np.ndarray, check: bool = True):
        h = np.asarray(h, dtype=complex)
        g = np.asarray(g, dtype=complex)
        n = h.shape[0]
        if h.shape != (n, n) or g.shape != (n, n, n, n):
            raise DimensionMismatch("tensor shapes must be (N,N) and (N,N,N,N)")
        if check:
            if np.max(np.abs(h - h.conj().T)) > 1e-10:
                raise NotHermitian("one-body tensor is not Hermitian")
            if np.max(np.abs(g - np.conj(np.transpose(g, (3, 2, 1, 0))))) > 1e-10:
                raise NotHermitian("two-body tensor breaks Hermiticity of the operator")
        self.h = h
        self.g = g

    @property
    def n(self) -> int:
        return self.h.shape[0]

    def operator(self) -> FermiSum:
        """The second-quantized Hamiltonian with these coefficients."""
        terms = []
        for p in range(self.n):
            for q in range(self.n):
                if abs(self.h[p, q]) > 1e-15:
                    terms.append((self.h[p, q], [(p, True), (q, False)]))
        for p in range(self.n):
            for q in range(self.n):
                for r in range(self.n):
                    for s in range(self.n):
                        if abs(self.g[p, q, r, s]) > 1e-15:
                            terms.append((
                                self.g[p, q, r, s],
                                [(p, True), (q, False), (r, True), (s, False)],
                            ))
        return FermiSum.from_ops(self.n, terms)

    def max_deviation(self, other: "ElectronicTensors") -> float:
        return float(max(np.max(np.abs(self.h - other.h)), np.max(np.abs(self.g - other.g))))


def rotate_tensors(rotation: OrbitalRotation, tensors: ElectronicTensors) -> ElectronicTensors:
    """Conjugated coefficient tensors h' = U h U†, g' contracted with two
    copies of the one-body adjoint.

    The compound (rs)(pq) adjoint matrix is never materialized; the
    two-body tensor is rotated by four successive one-index contractions,
    O(N^5) instead of O(N^8).
    """
    if rotation.n != tensors.n:
        raise DimensionMismatch("rotation and tensor dimensions differ")
    u = rotation.u1
    ud = u.conj().T
    h_out = u @ tensors.h @ ud
    g_out = np.einsum("pa,aqrs->pqrs", u, tensors.g)
    g_out = np.einsum("bq,pbrs->pqrs", ud, g_out)
    g_out = np.einsum("rc,pqcs->pqrs", u, g_out)
    g_out = np.einsum("ds,pqrd->pqrs", ud, g_out)
    return ElectronicTensors(h_out, g_out)


def rotate_creation(rotation: OrbitalRotation, p: int) -> FermiSum:
    """Image of a†_p under the rotation: column p of e^{iM} over a†_q."""
    if not 0 <= p < rotation.n:
        raise DimensionMismatch(f"orbital {p} out of range for N={rotation.n}")
    terms = [(rotation.u1[q, p], [(q, True)]) for q in range(rotation.n)]
    return FermiSum.from_ops(rotation.n, terms)


def rotate_annihilation(rotation: OrbitalRotation, p: int) -> FermiSum:
    """Image of a_p: row p of e^{-iM} over a_q."""
    if not 0 <= p < rotation.n:
        raise DimensionMismatch(f"orbital {p} out of range for N={rotation.n}")
    ud = rotation.u1.conj().T
    terms = [(ud[p, q], [(q, False)]) for q in range(rotation.n)]
    return FermiSum.from_ops(rotation.n, terms)


def _coefficient_matrix(ops: Sequence[FermiSum]) -> tuple:
    keys = sorted({k for op in ops for k, _ in op.items()})
    index = {k: i for i, k in enumerate(keys)}
    mat = np.zeros((len(keys), len(ops)), dtype=complex)
    for j, op in enumerate(ops):
        for k, c in op.items():
            mat[index[k], j] = c
    return mat, index


def module_adjoint_matrix(g: FermiSum, basis: Sequence[FermiSum]) -> np.ndarray:
    """Matrix A with [G, basis_i] = sum_j A_ij basis_j.

    Raises NotClosed when a commutator leaves the span of the basis
    (residual above 1e-10 relative to the commutator norm scale).
    """
    basis = list(basis)
    mat, index = _coefficient_matrix(basis)
    n = len(basis)
    a = np.zeros((n, n), dtype=complex)
    for i, elem in enumerate(basis):
        comm = g.commutator(elem)
        vec = np.zeros(len(index), dtype=complex)
        leftover = 0.0
        for k, c in comm.items():
            if k in index:
                vec[index[k]] = c
            else:
                leftover = max(leftover, abs(c))
        coeffs, *_ = np.linalg.lstsq(mat, vec, rcond=None)
        residual = float(np.linalg.norm(mat @ coeffs - vec))
        scale = max(1.0, comm.norm())
        if max(residual, leftover) > MODULE_CLOSURE_TOL * scale:
            raise NotClosed(f"commutator with basis element {i} leaves the span")
        a[i, :] = coeffs
    return a


def module_transform(g: FermiSum, basis: Sequence[FermiSum], theta: float) -> List[FermiSum]:
    """Transformed basis elements e^{iθG} A_i e^{-iθG} = sum_j [e^{iθA}]_ij A_j."""
    a = module_adjoint_matrix(g, basis)
    u = scipy.linalg.expm(1j * theta * a)
    out = []
    for i in range(len(basis)):
        combo = basis[0] * u[i, 0]
        for j in range(1, len(basis)):
            combo = combo + basis[j] * u[i, j]
        out.append(combo)
    return out
