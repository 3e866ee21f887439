"""Acceptance criteria.

Each test prints one PASS/FAIL line (run with `pytest -s` to see them all):

  A1  coefficient fixtures reproduced by the Vandermonde solver
  A2  fixture table reproduced and cross-checked against dense norms
  A3  oracle-equivalence sweep over >= 500 random transforms
  A4  excitation-generator identities on every |A| = |B| in {1, 2} pair
  A5  orbital-rotation tensor transforms against dense conjugation
  A6  displacement-algebra nilpotency and substitution identities
  A7  closure-detection degree equals the supported-gap count, both routes agree
"""

import itertools
import math

import numpy as np
import pytest

from exact_adjoint import adjoint as adj
from exact_adjoint.dense import conjugate_exact, sandwich_norm, spectrum, to_dense
from exact_adjoint.errors import InvariantViolation
from exact_adjoint.fermion import FermiSum, jordan_wigner
from exact_adjoint.generators import (
    InvolutoryGenerator,
    UCCGenerator,
    build_ucc,
    classify_ucc_pair,
    fragment_operator,
    pauli_generator_transform,
    ucc_fragment_transform,
)
from exact_adjoint.lie import ElectronicTensors, OrbitalRotation, rotate_tensors
from exact_adjoint.pauli import PauliString, PauliSum
from exact_adjoint.service import run_table1
from exact_adjoint.weyl import WeylPolynomial, adjoint_once, heisenberg_displace, linear_generator

from test_generators import random_anticommuting_body
from test_pauli import random_pauli_sum


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"{name} {'PASS' if ok else 'FAIL'} - {detail}")


# ----------------------------------------------------------------------
# A1: coefficient fixtures, 50 random angles each, < 1e-10
# ----------------------------------------------------------------------

A1_SETS = [
    ("S={0,±2}", (0.0, 2.0, -2.0),
     lambda t: (1.0, 0.5 * math.sin(2 * t), 0.5 * math.sin(t) ** 2)),
    ("S={±2}", (2.0, -2.0),
     lambda t: (math.cos(2 * t), 0.5 * math.sin(2 * t))),
    ("S={0,±1}", (0.0, 1.0, -1.0),
     lambda t: (1.0, math.sin(t), 1.0 - math.cos(t))),
    ("S={±1}", (1.0, -1.0),
     lambda t: (math.cos(t), math.sin(t))),
    ("S={0,±1,±2}", (0.0, 1.0, -1.0, 2.0, -2.0),
     lambda t: (1.0,
                4 / 3 * math.sin(t) - 1 / 6 * math.sin(2 * t),
                5 / 4 - 4 / 3 * math.cos(t) + 1 / 12 * math.cos(2 * t),
                1 / 3 * math.sin(t) - 1 / 6 * math.sin(2 * t),
                1 / 4 - 1 / 3 * math.cos(t) + 1 / 12 * math.cos(2 * t))),
]


def test_a1_coefficient_fixtures():
    rng = np.random.default_rng(101)
    worst = 0.0
    for _, deltas, closed_form in A1_SETS:
        for theta in rng.uniform(-math.pi, math.pi, size=50):
            cv = adj.solve_vandermonde(deltas, float(theta))
            expected = closed_form(float(theta))
            worst = max(worst, max(abs(a - b) for a, b in zip(cv.c, expected)))
    ok = worst < 1e-10
    _report("A1", ok, f"{len(A1_SETS)} coefficient sets x 50 angles, max error {worst:.3e}")
    assert ok


# ----------------------------------------------------------------------
# A2: fixture-table reproduction with dense sandwich cross-check
# ----------------------------------------------------------------------

def test_a2_table_reproduction():
    result = run_table1(extended=False)
    rows_ok = [row["agrees"] for row in result["rows"]]
    ok = result["all_agree"] and len(rows_ok) == 5 and all(rows_ok)
    _report("A2", ok, f"{sum(rows_ok)}/5 rows reproduced incl. dense sandwich norms")
    assert ok


# ----------------------------------------------------------------------
# A3 + A7: oracle sweep and closure/spectral consistency
# ----------------------------------------------------------------------

def _single_pauli_instances(rng, count):
    out = []
    for _ in range(count):
        n = int(rng.integers(2, 9))
        label = "".join(rng.choice(list("IXYZ"), size=n))
        if set(label) == {"I"}:
            continue
        gen = InvolutoryGenerator.single_pauli(label)
        h = random_pauli_sum(rng, n, int(rng.integers(2, 11)))
        theta = float(rng.uniform(-math.pi, math.pi))
        out.append(("single", gen, h, theta))
    return out


def _acp_instances(rng, count):
    out = []
    while len(out) < count:
        n = int(rng.integers(2, 7))
        body = random_anticommuting_body(rng, n, int(rng.integers(2, 5)))
        if len(body) < 2:
            continue
        gen = InvolutoryGenerator.anticommuting_sum(body)
        h = random_pauli_sum(rng, n, int(rng.integers(2, 9)))
        theta = float(rng.uniform(-math.pi, math.pi))
        out.append(("acp", gen, h, theta))
    return out


def _ucc_instances(rng, count):
    out = []
    while len(out) < count:
        norb = int(rng.integers(3, 7))
        size = int(rng.integers(1, 3))
        perm = rng.permutation(norb)
        a, b = sorted(perm[:size]), sorted(perm[size:2 * size])
        try:
            gen = build_ucc(tuple(int(i) for i in a), tuple(int(i) for i in b), norb)
        except InvariantViolation:
            continue
        nc, na = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        if nc + na == 0:
            continue
        cre = tuple(int(i) for i in rng.choice(norb, size=nc, replace=False))
        ann = tuple(int(i) for i in rng.choice(norb, size=na, replace=False))
        frag = FermiSum.excitation(cre, ann, norb)
        if frag.is_zero():
            continue
        theta = float(rng.uniform(-math.pi, math.pi))
        out.append(("ucc", gen, frag.single_term()[0], theta))
    return out


@pytest.fixture(scope="module")
def sweep_instances():
    rng = np.random.default_rng(202)
    return (_single_pauli_instances(rng, 220)
            + _acp_instances(rng, 140)
            + _ucc_instances(rng, 145))


def test_a3_oracle_equivalence_sweep(sweep_instances):
    worst = 0.0
    worst_isometry = 0.0
    count = 0
    for kind, gen, operand, theta in sweep_instances:
        if kind == "ucc":
            out = ucc_fragment_transform(gen, operand, theta)
            h_op = fragment_operator(gen, operand)
            g_op = gen.g.embed(h_op.n_orbitals)
        else:
            out = pauli_generator_transform(gen, operand, theta)
            g_op, h_op = gen.body, operand
        exact = conjugate_exact(to_dense(g_op), to_dense(h_op), theta)
        dense_out = to_dense(out)
        worst = max(worst, float(np.max(np.abs(dense_out - exact))))
        # conjugation is a Frobenius-norm isometry
        worst_isometry = max(worst_isometry, abs(
            float(np.linalg.norm(dense_out)) - float(np.linalg.norm(to_dense(h_op)))))
        count += 1
    ok = count >= 500 and worst < 1e-9 and worst_isometry < 1e-9
    _report("A3", ok, f"{count} instances, max dense deviation {worst:.3e}, "
                      f"max norm drift {worst_isometry:.3e}")
    assert ok


def test_a7_closure_matches_supported_set(sweep_instances):
    checked = 0
    degree_mismatches = 0
    worst_route = 0.0
    for kind, gen, operand, theta in sweep_instances:
        if kind == "ucc":
            h_op = fragment_operator(gen, operand)
            g_op = gen.g.embed(h_op.n_orbitals)
            evs = [-1.0, 0.0, 1.0]
        else:
            g_op, h_op = gen.body, operand
            evs = [-1.0, 1.0]
        s = adj.supported_set(g_op, evs, h_op)
        if not s.supported:
            continue
        closure = adj.detect_closure(g_op, h_op, len(s.all_diffs))
        if closure.degree != len(s.supported):
            degree_mismatches += 1
            continue
        via_closure = adj.transform_via_closure(g_op, h_op, theta, closure)
        via_spectrum = adj.transform_via_spectrum(g_op, h_op, theta, s)
        diff = (via_closure - via_spectrum)
        norm = diff.frobenius_norm() if hasattr(diff, "frobenius_norm") else diff.norm()
        worst_route = max(worst_route, norm)
        checked += 1
    ok = degree_mismatches == 0 and worst_route < 1e-9 and checked >= 490
    _report("A7", ok, f"{checked} instances, degree mismatches {degree_mismatches}, "
                      f"max route disagreement {worst_route:.3e}")
    assert ok


# ----------------------------------------------------------------------
# A4: excitation-generator identities
# ----------------------------------------------------------------------

def test_a4_excitation_identities():
    norb = 6
    pairs = []
    for a in range(norb):
        for b in range(norb):
            if a != b:
                pairs.append(((a,), (b,)))
    for a_set in itertools.combinations(range(norb), 2):
        rest = [i for i in range(norb) if i not in a_set]
        pairs.extend((a_set, b_set) for b_set in itertools.combinations(rest, 2))
    worst = 0.0
    spectra_ok = True
    for a_set, b_set in pairs:
        gen = build_ucc(a_set, b_set, norb)
        n = gen.n_orbitals
        ident = FermiSum.identity(n)
        checks = [
            gen.t.mul(gen.t),
            gen.t.mul(gen.t_dag).mul(gen.t) - gen.t,
            gen.p_plus.mul(gen.p_plus) - gen.p_plus,
            gen.p_minus.mul(gen.p_minus) - gen.p_minus,
            gen.p_zero.mul(gen.p_zero) - gen.p_zero,
            gen.p_plus.mul(gen.p_minus),
            gen.p_plus.mul(gen.p_zero),
            gen.p_minus.mul(gen.p_zero),
            gen.p_plus + gen.p_minus + gen.p_zero - ident,
            gen.g - (gen.p_plus - gen.p_minus),
        ]
        worst = max(worst, max(c.norm() for c in checks))
        evs = spectrum(to_dense(gen.g))
        if not set(np.round(evs, 9)) <= {-1.0, 0.0, 1.0}:
            spectra_ok = False
    ok = worst < 1e-12 and spectra_ok and len(pairs) == 120
    _report("A4", ok, f"{len(pairs)} generators, worst identity residual {worst:.3e}, "
                      f"spectra in {{0,±1}}: {spectra_ok}")
    assert ok


# ----------------------------------------------------------------------
# A5: orbital rotations against dense conjugation
# ----------------------------------------------------------------------

def test_a5_orbital_rotations():
    rng = np.random.default_rng(505)
    n = 4
    worst = 0.0
    for _ in range(20):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        m = m + m.conj().T
        h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = h + h.conj().T
        g = rng.normal(size=(n, n, n, n)) + 1j * rng.normal(size=(n, n, n, n))
        g = 0.5 * (g + np.conj(np.transpose(g, (3, 2, 1, 0))))
        rot = OrbitalRotation(m)
        tensors = ElectronicTensors(h, g)
        rotated = rotate_tensors(rot, tensors)
        exact = conjugate_exact(to_dense(rot.generator_operator()),
                                to_dense(tensors.operator()), 1.0)
        worst = max(worst, float(np.max(np.abs(to_dense(rotated.operator()) - exact))))
    # composition invariant
    m1 = rng.normal(size=(n, n)); m1 = m1 + m1.T
    m2 = rng.normal(size=(n, n)); m2 = m2 + m2.T
    t0 = ElectronicTensors(np.eye(n, dtype=complex), np.zeros((n, n, n, n)))
    h0 = rng.normal(size=(n, n)); h0 = h0 + h0.T
    t0 = ElectronicTensors(h0.astype(complex), np.zeros((n, n, n, n)))
    chained = rotate_tensors(OrbitalRotation(m2), rotate_tensors(OrbitalRotation(m1), t0))
    import scipy.linalg

    u_total = OrbitalRotation(m2).u1 @ OrbitalRotation(m1).u1
    m_total = -1j * scipy.linalg.logm(u_total)
    direct = rotate_tensors(OrbitalRotation(0.5 * (m_total + m_total.conj().T)), t0)
    comp_dev = chained.max_deviation(direct)
    # unitarity of the compound adjoint
    rot = OrbitalRotation(m1)
    u = np.einsum("rp,qs->rspq", rot.u1, rot.u1.conj().T).reshape(n * n, n * n)
    unit_dev = float(np.max(np.abs(u.conj().T @ u - np.eye(n * n))))
    ok = worst < 1e-9 and comp_dev < 1e-9 and unit_dev < 1e-10
    _report("A5", ok, f"20 rotations, max dense deviation {worst:.3e}, "
                      f"composition {comp_dev:.3e}, unitarity {unit_dev:.3e}")
    assert ok


# ----------------------------------------------------------------------
# A6: displacement algebra
# ----------------------------------------------------------------------

def test_a6_displacement_algebra():
    rng = np.random.default_rng(606)
    nilpotent_ok = True
    for _ in range(100):
        modes = int(rng.integers(1, 4))
        g = linear_generator(rng.normal(size=modes), rng.normal(size=modes),
                             float(rng.normal()))
        o = linear_generator(rng.normal(size=modes), rng.normal(size=modes),
                             float(rng.normal()))
        if not adjoint_once(g, adjoint_once(g, o)).is_zero():
            nilpotent_ok = False
    x, p = WeylPolynomial.x(0), WeylPolynomial.p(0)
    u, v = 0.8, -0.45
    cx, cp = -v, -u
    subs_ok = True
    for poly in (x.mul(x), p.mul(p), x.mul(p)):
        displaced = heisenberg_displace([u], [v], 0.3, poly)
        x_img = x + WeylPolynomial.constant(cx)
        p_img = p + WeylPolynomial.constant(cp)
        expected = WeylPolynomial({})
        for (xs, ps), coeff in poly.items():
            term = WeylPolynomial.constant(coeff)
            for _ in xs:
                term = term.mul(x_img)
            for _ in ps:
                term = term.mul(p_img)
            expected = expected + term
        if not displaced.approx_equal(expected, 1e-14):
            subs_ok = False
    ok = nilpotent_ok and subs_ok
    _report("A6", ok, f"100 nilpotency checks: {nilpotent_ok}, "
                      f"substitution identities: {subs_ok}")
    assert ok
