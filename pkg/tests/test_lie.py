"""Orbital rotations, module transforms, and tensor contractions."""

import numpy as np
import pytest

from exact_adjoint.dense import conjugate_exact, to_dense
from exact_adjoint.errors import DimensionMismatch, NotClosed, NotHermitian
from exact_adjoint.fermion import FermiSum
from exact_adjoint.lie import (
    ElectronicTensors,
    OrbitalRotation,
    module_adjoint_matrix,
    module_transform,
    rotate_annihilation,
    rotate_creation,
    rotate_tensors,
)


def random_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return m + m.conj().T


def random_tensors(rng, n):
    h = random_hermitian(rng, n)
    g = rng.normal(size=(n, n, n, n)) + 1j * rng.normal(size=(n, n, n, n))
    g = 0.5 * (g + np.conj(np.transpose(g, (3, 2, 1, 0))))
    return ElectronicTensors(h, g)


def test_rotation_validation():
    with pytest.raises(NotHermitian):
        OrbitalRotation(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(DimensionMismatch):
        OrbitalRotation(np.zeros((2, 3)))


def test_tensor_validation():
    rng = np.random.default_rng(0)
    with pytest.raises(NotHermitian):
        ElectronicTensors(rng.normal(size=(2, 2)) + 1j, np.zeros((2, 2, 2, 2)))


def test_zero_generator_is_identity():
    rng = np.random.default_rng(40)
    t = random_tensors(rng, 3)
    rotated = rotate_tensors(OrbitalRotation(np.zeros((3, 3))), t)
    assert rotated.max_deviation(t) < 1e-14
    assert rotate_creation(OrbitalRotation(np.zeros((3, 3))), 1).approx_equal(
        FermiSum.from_ops(3, [(1.0, [(1, True)])]), 1e-14)


def test_two_orbital_swap_generator_against_dense():
    # h' for the pi/2 off-diagonal swap generator, fixed by the dense oracle
    m = (np.pi / 2) * np.array([[0.0, 1.0], [1.0, 0.0]])
    rot = OrbitalRotation(m)
    t = ElectronicTensors(np.diag([1.0, 2.0]).astype(complex), np.zeros((2, 2, 2, 2)))
    rotated = rotate_tensors(rot, t)
    gen = rot.generator_operator()
    dense = conjugate_exact(to_dense(gen), to_dense(t.operator()), 1.0)
    assert np.max(np.abs(to_dense(rotated.operator()) - dense)) < 1e-10
    # the swap exchanges the two orbital energies
    assert np.allclose(np.diag(rotated.h).real, [2.0, 1.0], atol=1e-12)


def test_rotate_tensors_matches_dense_random():
    rng = np.random.default_rng(41)
    for _ in range(3):
        rot = OrbitalRotation(random_hermitian(rng, 4))
        t = random_tensors(rng, 4)
        rotated = rotate_tensors(rot, t)
        dense = conjugate_exact(
            to_dense(rot.generator_operator()), to_dense(t.operator()), 1.0)
        assert np.max(np.abs(to_dense(rotated.operator()) - dense)) < 1e-9


def test_rotation_composition():
    import scipy.linalg

    rng = np.random.default_rng(42)
    m1, m2 = random_hermitian(rng, 3), random_hermitian(rng, 3)
    t = random_tensors(rng, 3)
    once = rotate_tensors(OrbitalRotation(m2), rotate_tensors(OrbitalRotation(m1), t))
    u_total = OrbitalRotation(m2).u1 @ OrbitalRotation(m1).u1
    m_total = -1j * scipy.linalg.logm(u_total)
    m_total = 0.5 * (m_total + m_total.conj().T)
    combined = OrbitalRotation(m_total)
    assert np.max(np.abs(combined.u1 - u_total)) < 1e-9
    direct = rotate_tensors(combined, t)
    assert once.max_deviation(direct) < 1e-9


def test_compound_adjoint_unitarity():
    rng = np.random.default_rng(43)
    rot = OrbitalRotation(random_hermitian(rng, 3))
    n = 3
    u = np.einsum("rp,qs->rspq", rot.u1, rot.u1.conj().T).reshape(n * n, n * n)
    assert np.max(np.abs(u.conj().T @ u - np.eye(n * n))) < 1e-10


def test_rotate_creation_consistent_with_tensor_route():
    rng = np.random.default_rng(44)
    rot = OrbitalRotation(random_hermitian(rng, 3))
    t = random_tensors(rng, 3)
    rotated = rotate_tensors(rot, t)
    # substitute transformed ladder operators into the one-body part
    built = FermiSum.zero(3)
    for p in range(3):
        for q in range(3):
            if abs(t.h[p, q]) > 1e-15:
                built = built + rotate_creation(rot, p).mul(rotate_annihilation(rot, q)) * t.h[p, q]
    one_body_only = ElectronicTensors(rotated.h, np.zeros((3, 3, 3, 3)))
    assert built.approx_equal(one_body_only.operator(), 1e-9)


def test_module_adjoint_matrix_is_m_transpose():
    rng = np.random.default_rng(45)
    m = random_hermitian(rng, 4)
    g = OrbitalRotation(m).generator_operator()
    basis = [FermiSum.from_ops(4, [(1.0, [(p, True)])]) for p in range(4)]
    a = module_adjoint_matrix(g, basis)
    assert np.max(np.abs(a - m.T)) < 1e-12


def test_module_adjoint_matrix_abelian_diagonal():
    m = np.diag([0.3, -1.0, 2.5]).astype(complex)
    g = OrbitalRotation(m).generator_operator()
    basis = [FermiSum.from_ops(3, [(1.0, [(p, True)])]) for p in range(3)]
    a = module_adjoint_matrix(g, basis)
    assert np.max(np.abs(a - np.diag(np.diag(a)))) < 1e-12


def test_module_transform_matches_dense():
    rng = np.random.default_rng(46)
    m = random_hermitian(rng, 3)
    g = OrbitalRotation(m).generator_operator()
    basis = [FermiSum.from_ops(3, [(1.0, [(p, True)])]) for p in range(3)]
    theta = 0.62
    images = module_transform(g, basis, theta)
    dg = to_dense(g)
    for p in range(3):
        dense = conjugate_exact(dg, to_dense(basis[p]), theta)
        assert np.max(np.abs(to_dense(images[p]) - dense)) < 1e-9


def test_module_not_closed():
    rng = np.random.default_rng(47)
    m = random_hermitian(rng, 3)
    g = OrbitalRotation(m).generator_operator()
    with pytest.raises(NotClosed):
        module_adjoint_matrix(g, [FermiSum.from_ops(3, [(1.0, [(0, True)])])])
