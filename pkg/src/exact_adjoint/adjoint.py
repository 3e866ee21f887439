"""Finite resummation of the conjugation e^{iθG} H e^{-iθG}.

Two routes are implemented and cross-validated:

* closure route: detect the smallest d with ad^d(H) in the span of the
  lower nested adjoints, then exponentiate the d×d companion matrix of the
  recurrence on the Krylov basis {ad^j(H)}.
* spectral route: from the eigenvalues of G, form the difference set, probe
  which eigenvalue gaps are supported by H, and solve the generalized
  Vandermonde system for the polynomial coefficients.

Both work for Pauli sums and, because only commutators, sums and norms are
used, for normal-ordered fermionic sums as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg

from .errors import (
    ComplexResidueTooLarge,
    InvariantViolation,
    NoClosureWithinBound,
    NotAnticommuting,
    NotHermitian,
    SingularSystem,
)

DIFF_DEDUP_TOL = 1e-9
SUPPORT_REL_TOL = 1e-9
CLOSURE_REL_TOL = 1e-8
REALNESS_TOL = 1e-9


@dataclass(frozen=True)
class AdjointClosure:
    """Krylov record of nested adjoints with the minimal recurrence.

    powers[j] = ad_{iG}^j(H) for j = 0..degree; the recurrence expresses
    ad^degree as sum_j recurrence[j] * ad^j over j < degree.
    """

    powers: tuple
    recurrence: Tuple[complex, ...]
    degree: int


@dataclass(frozen=True)
class DifferenceSet:
    """Eigenvalue gaps of a generator and the subset supported by an operator."""

    eigenvalues: Tuple[float, ...]
    all_diffs: Tuple[float, ...]
    supported: Tuple[float, ...] = ()


@dataclass(frozen=True)
class CoefficientVector:
    """Real polynomial coefficients c_m(theta) of the finite conjugation."""

    theta: float
    c: Tuple[float, ...]


def _op_norm(op) -> float:
    return op.frobenius_norm() if hasattr(op, "frobenius_norm") else op.norm()


def _term_items(op):
    return list(op.items()) if hasattr(op, "items") else list(op)


def _require_hermitian_generator(g) -> None:
    if not g.is_hermitian(1e-10):
        raise NotHermitian("generator must be Hermitian")


def adjoint_action(g, op):
    """ad_{iG}(op) = [iG, op]."""
    return g.commutator(op) * 1j


def nested_adjoints(g, h, max_order: int) -> List:
    """[ad_{iG}^0(H), ..., ad_{iG}^max_order(H)] by the one-step recursion."""
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    _require_hermitian_generator(g)
    out = [h]
    for _ in range(max_order):
        out.append(adjoint_action(g, out[-1]))
    return out


def _coefficient_matrix(ops: Sequence) -> np.ndarray:
    """Stack operators as coefficient columns over the union of their terms."""
    keys = sorted({k for op in ops for k, _ in _term_items(op)})
    index = {k: i for i, k in enumerate(keys)}
    mat = np.zeros((len(keys), len(ops)), dtype=complex)
    for j, op in enumerate(ops):
        for k, c in _term_items(op):
            mat[index[k], j] = c
    return mat


def detect_closure(g, h, max_degree: int) -> AdjointClosure:
    """Smallest d with ad^d(H) in span{ad^0(H)..ad^{d-1}(H)}.

    The membership test is a least-squares solve over the term-coefficient
    vectors with residual threshold CLOSURE_REL_TOL * ||H||; nested
    commutators amplify noise geometrically, so the threshold is scaled.
    """
    _require_hermitian_generator(g)
    tol = CLOSURE_REL_TOL * _op_norm(h)
    powers = [h]
    for degree in range(1, max_degree + 1):
        powers.append(adjoint_action(g, powers[-1]))
        mat = _coefficient_matrix(powers)
        basis, target = mat[:, :degree], mat[:, degree]
        coeffs, *_ = np.linalg.lstsq(basis, target, rcond=None)
        residual = float(np.linalg.norm(basis @ coeffs - target))
        if residual <= tol:
            return AdjointClosure(tuple(powers), tuple(coeffs), degree)
    raise NoClosureWithinBound(
        f"nested adjoints linearly independent through degree {max_degree}"
    )


def transform_via_closure(g, h, theta: float, closure: AdjointClosure):
    """Resummed conjugation: weights from exponentiating the companion matrix.

    On Krylov coordinates v (operator = sum v_j ad^j(H)) the adjoint acts as
    the companion matrix of the recurrence, so the full series collapses to
    w = expm(theta * C) e_0.
    """
    d = closure.degree
    if d == 0:
        return h
    companion = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        companion[k, k - 1] = 1.0
    companion[:, d - 1] += np.asarray(closure.recurrence)
    weights = scipy.linalg.expm(theta * companion)[:, 0]
    out = closure.powers[0] * weights[0]
    for m in range(1, d):
        out = out + closure.powers[m] * weights[m]
    return out


def difference_set(eigenvalues: Sequence[float]) -> DifferenceSet:
    """All distinct eigenvalue gaps g_j - g_k, deduplicated at 1e-9."""
    if len(eigenvalues) == 0:
        raise ValueError("eigenvalue list must be nonempty")
    evs = tuple(sorted(float(v) for v in eigenvalues))
    raw = sorted(a - b for a in evs for b in evs)
    diffs: List[float] = []
    for v in raw:
        if not diffs or abs(v - diffs[-1]) > DIFF_DEDUP_TOL:
            diffs.append(v)
    return DifferenceSet(evs, tuple(diffs))


def lagrange_block_probe(g, eigenvalues: Sequence[float], o, delta: float) -> float:
    """Norm of the gap-Δ component of O isolated by Lagrange interpolation.

    Applies prod_{δ∈D, δ≠Δ} (ad_G - δ)/(Δ - δ) to O, where ad_G = [G, ·]
    (no factor of i: the gaps are real).  Zero within tolerance means every
    block of O connecting eigenspaces separated by Δ vanishes.
    """
    diffs = difference_set(eigenvalues).all_diffs
    if all(abs(delta - d) > DIFF_DEDUP_TOL for d in diffs):
        raise InvariantViolation(f"delta {delta} is not an eigenvalue gap")
    current = o
    for d in diffs:
        if abs(d - delta) <= DIFF_DEDUP_TOL:
            continue
        current = (g.commutator(current) - current * d) * (1.0 / (delta - d))
    return _op_norm(current)


def supported_set(g, eigenvalues: Sequence[float], o) -> DifferenceSet:
    """Probe every gap in D and keep those with nonvanishing blocks.

    The zero gap is kept whenever the diagonal probe is nonzero; the
    supported set therefore always yields a complete Vandermonde system.
    """
    ds = difference_set(eigenvalues)
    threshold = SUPPORT_REL_TOL * _op_norm(o)
    supported = tuple(
        d for d in ds.all_diffs
        if lagrange_block_probe(g, eigenvalues, o, d) > threshold
    )
    return DifferenceSet(ds.eigenvalues, ds.all_diffs, supported)


def _deltas(s) -> Tuple[float, ...]:
    if isinstance(s, DifferenceSet):
        return tuple(s.supported)
    return tuple(float(v) for v in s)


def solve_vandermonde(s, theta: float) -> CoefficientVector:
    """Coefficients c_m with e^{iθΔ} = sum_m c_m (iΔ)^m for every Δ in S.

    The system matrix is the generalized Vandermonde [W]_{Δ,m} = (iΔ)^m of
    size |S| × |S|; distinct gaps make it invertible.  For Hermitian setups
    (S symmetric under negation) the solution is real; a large imaginary
    residue signals a non-Hermitian configuration.
    """
    deltas = _deltas(s)
    if len(deltas) < 1:
        raise ValueError("need at least one supported gap")
    for i, a in enumerate(deltas):
        for b in deltas[i + 1:]:
            if abs(a - b) <= DIFF_DEDUP_TOL:
                raise SingularSystem("difference set members must be distinct")
    size = len(deltas)
    w = np.array([[(1j * d) ** m for m in range(size)] for d in deltas], dtype=complex)
    e = np.exp(1j * theta * np.asarray(deltas))
    try:
        c = np.linalg.solve(w, e)
    except np.linalg.LinAlgError as err:  # pragma: no cover - guarded above
        raise SingularSystem(str(err)) from err
    if float(np.linalg.norm(w @ c - e)) > 1e-9:
        raise SingularSystem("Vandermonde solve residual exceeds 1e-9")
    if float(np.max(np.abs(c.imag))) > REALNESS_TOL:
        raise ComplexResidueTooLarge(
            "coefficients are not real; generator/operator pair is not Hermitian"
        )
    return CoefficientVector(float(theta), tuple(float(v) for v in c.real))


def transform_via_spectrum(g, h, theta: float, s):
    """Finite polynomial conjugation sum_m c_m(θ) ad_{iG}^m(H)."""
    deltas = _deltas(s)
    if not deltas:
        return h
    coeffs = solve_vandermonde(deltas, theta)
    powers = nested_adjoints(g, h, len(deltas) - 1)
    out = powers[0] * coeffs.c[0]
    for m in range(1, len(deltas)):
        out = out + powers[m] * coeffs.c[m]
    return out


def anticommuting_reduction(g, o, eigenvalues: Sequence[float]) -> DifferenceSet:
    """Difference set for an operator that anticommutes with the generator.

    {G, O} = 0 forces every block between eigenspaces with g_i + g_j != 0
    to vanish, so only paired gaps 2g with both ±g in the spectrum can
    survive; each candidate is confirmed with the Lagrange probe.
    """
    scale = max(1.0, _op_norm(g) * _op_norm(o))
    if _op_norm(g.anticommutator(o)) > 1e-9 * scale:
        raise NotAnticommuting("operator does not anticommute with the generator")
    ds = difference_set(eigenvalues)
    threshold = SUPPORT_REL_TOL * _op_norm(o)
    candidates: List[float] = []
    for ev in ds.eigenvalues:
        if any(abs(ev + other) <= DIFF_DEDUP_TOL for other in ds.eigenvalues):
            candidates.append(2.0 * ev)
    supported = tuple(
        d for d in sorted(set(candidates))
        if lagrange_block_probe(g, eigenvalues, o, d) > threshold
    )
    return DifferenceSet(ds.eigenvalues, ds.all_diffs, supported)
