"""HTTP service wrapping the engine.

Endpoints accept pydantic-validated requests and return canonical JSON
built by the payload functions below, so responses are byte-deterministic
and identical for every client (CLI, bindings, raw HTTP).
"""

from __future__ import annotations

import itertools
from typing import List, Optional

import numpy as np
from fastapi import FastAPI, Response
from pydantic import BaseModel, Field

from . import dense
from .adjoint import solve_vandermonde, supported_set
from .errors import (
    DimensionMismatch,
    EngineError,
    InvariantViolation,
    NoClosureWithinBound,
    NotAnticommuting,
    NotClosed,
    NotHermitian,
    OracleCapExceeded,
    ParseError,
)
from .fermion import FermiSum, jordan_wigner
from .formats import (
    canonical_json,
    format_fermi_sum,
    format_pauli_sum,
    format_tensors,
    parse_fermi_string_spec,
    parse_matrix,
    parse_pauli_sum,
    parse_tensors,
)
from .generators import (
    BLOCK_FAMILIES,
    InvolutoryGenerator,
    UCCGenerator,
    classify_ucc_pair,
    fragment_operator,
    pauli_generator_transform,
    pg_sandwich_norms,
    ucc_fragment_transform,
    vanishing_families_from_norms,
)
from .lie import ElectronicTensors, OrbitalRotation, rotate_tensors

SCHEMA_VERSION = 1
DEFAULT_TOLERANCE = 1e-9


# ----------------------------------------------------------------------
# request models
# ----------------------------------------------------------------------

class TransformRequest(BaseModel):
    generator: Optional[str] = Field(None, description="Pauli-sum text generator")
    ucc: Optional[str] = Field(None, description="fermionic excitation word, e.g. '3^ 2^ 1 0'")
    hamiltonian: Optional[str] = Field(None, description="Pauli-sum text operator")
    fragment: Optional[str] = Field(None, description="fermionic string word for H_α")
    theta: float = 0.0
    verify: bool = False
    tolerance: float = DEFAULT_TOLERANCE
    max_qubits: Optional[int] = None


class ClassifyRequest(BaseModel):
    ucc: str
    fragment: str


class CoeffsRequest(BaseModel):
    s: List[float] = Field(..., alias="S")
    theta: float

    model_config = {"populate_by_name": True}


class RotateRequest(BaseModel):
    matrix: str
    tensors: str
    verify: bool = False
    tolerance: float = DEFAULT_TOLERANCE


class Table1Request(BaseModel):
    extended: bool = False


# ----------------------------------------------------------------------
# payload builders (shared by every front end)
# ----------------------------------------------------------------------

def _spec_string(word) -> str:
    return " ".join(f"a{i}^" if dag else f"a{i}" for i, dag in word)


def run_transform(generator: str | None = None, ucc: str | None = None,
                  hamiltonian: str | None = None, fragment: str | None = None,
                  theta: float = 0.0, verify: bool = False,
                  tolerance: float = DEFAULT_TOLERANCE,
                  max_qubits: int | None = None) -> dict:
    if (generator is None) == (ucc is None):
        raise ParseError("provide exactly one of generator / ucc")
    if generator is not None:
        if hamiltonian is None:
            raise ParseError("a Pauli generator needs --hamiltonian")
        body = parse_pauli_sum(generator)
        ham = parse_pauli_sum(hamiltonian)
        gen = (InvolutoryGenerator.single_pauli(body) if len(body) == 1
               else InvolutoryGenerator.anticommuting_sum(body))
        s = supported_set(gen.body, gen.eigenvalues, ham).supported
        transformed = pauli_generator_transform(gen, ham, theta)
        out_text = format_pauli_sum(transformed)
        g_op, h_op, out_op = gen.body, ham, transformed
    else:
        if fragment is None:
            raise ParseError("a UCC generator needs --fragment")
        gen = UCCGenerator.from_word(parse_fermi_string_spec(ucc))
        frag_ops = parse_fermi_string_spec(fragment)
        n = max([gen.n_orbitals] + [i + 1 for i, _ in frag_ops])
        t_alpha_sum = FermiSum.from_ops(n, [(1.0, frag_ops)])
        if t_alpha_sum.is_zero():
            raise InvariantViolation("fragment word normal-orders to zero")
        t_alpha = t_alpha_sum.single_term()[0]
        pattern = classify_ucc_pair(gen, t_alpha)
        s = pattern.s
        transformed = ucc_fragment_transform(gen, t_alpha, theta)
        out_text = format_fermi_sum(transformed)
        g_op = gen.g.embed(transformed.n_orbitals)
        h_op = fragment_operator(gen, t_alpha)
        out_op = transformed

    coefficients = list(solve_vandermonde(s, theta).c) if s else []
    payload = {
        "schema": SCHEMA_VERSION,
        "theta": theta,
        "S": [float(v) for v in s],
        "coefficients": [float(c) for c in coefficients],
        "n_commutators": max(len(s) - 1, 0),
        "transformed_operator": out_text,
        "oracle_residual": None,
    }
    if verify:
        dg = dense.to_dense(g_op, max_qubits)
        dh = dense.to_dense(h_op, max_qubits)
        exact = dense.conjugate_exact(dg, dh, theta)
        payload["oracle_residual"] = float(np.max(np.abs(dense.to_dense(out_op, max_qubits) - exact)))
        payload["verify_ok"] = payload["oracle_residual"] <= tolerance
    return payload


def run_classify(ucc: str, fragment: str) -> dict:
    gen = UCCGenerator.from_word(parse_fermi_string_spec(ucc))
    frag_ops = parse_fermi_string_spec(fragment)
    n = max([gen.n_orbitals] + [i + 1 for i, _ in frag_ops])
    t_alpha_sum = FermiSum.from_ops(n, [(1.0, frag_ops)])
    if t_alpha_sum.is_zero():
        raise InvariantViolation("fragment word normal-orders to zero")
    t_alpha = t_alpha_sum.single_term()[0]
    pattern = classify_ucc_pair(gen, t_alpha)
    return {
        "schema": SCHEMA_VERSION,
        "T_G": _spec_string([(i, True) for i in gen.creation] + [(i, False) for i in gen.annihilation]),
        "T_alpha": _spec_string(t_alpha.ops()),
        "case_label": pattern.case_label,
        "vanishing_blocks": list(pattern.vanishing_sorted()),
        "S": [float(v) for v in pattern.s],
        "n_commutators": pattern.n_commutators,
    }


def run_coeffs(s_values, theta: float) -> dict:
    cv = solve_vandermonde(tuple(float(v) for v in s_values), theta)
    return {
        "schema": SCHEMA_VERSION,
        "theta": theta,
        "S": [float(v) for v in s_values],
        "coefficients": [float(c) for c in cv.c],
        "n_commutators": len(cv.c) - 1,
    }


def run_rotate(matrix_text: str, tensors_text: str, verify: bool = False,
               tolerance: float = DEFAULT_TOLERANCE) -> dict:
    m = parse_matrix(matrix_text)
    h, g = parse_tensors(tensors_text)
    if h.shape[0] != m.shape[0]:
        raise DimensionMismatch("matrix and tensor orbital counts differ")
    rotation = OrbitalRotation(m)
    tensors = ElectronicTensors(h, g)
    rotated = rotate_tensors(rotation, tensors)
    payload = {
        "schema": SCHEMA_VERSION,
        "tensors": format_tensors(rotated.h, rotated.g),
        "oracle_residual": None,
    }
    if verify:
        gen = rotation.generator_operator()
        before = dense.to_dense(tensors.operator())
        exact = dense.conjugate_exact(dense.to_dense(gen), before, 1.0)
        after = dense.to_dense(rotated.operator())
        payload["oracle_residual"] = float(np.max(np.abs(after - exact)))
        payload["verify_ok"] = payload["oracle_residual"] <= tolerance
    return payload


# Fixture pairs with the expected classification: (T_G word, T_α word,
# admissible case labels, vanishing families, S).
TABLE1_ROWS = (
    ("2^ 1^ 2 0", "3^ 1^ 4 0", ("i", "ii"), ("P±HP0", "P0HP±"), (-2.0, 0.0, 2.0)),
    ("3^ 2^ 1 0", "1^ 1", ("iii", "iv"), ("P±HP0", "P0HP±"), (-2.0, 0.0, 2.0)),
    ("3^ 2^ 1 0", "3^ 2^ 1 0", ("i", "ii"),
     ("P±HP±", "P±HP0", "P0HP±", "P0HP0"), (-2.0, 2.0)),
    ("3^ 2^ 1 0", "4^ 2^ 1 0", ("generic_offdiag",),
     ("P±HP±", "P±HP∓", "P0HP0"), (-1.0, 1.0)),
    ("3^ 2^ 1 0", "3^ 2^ 2 0", ("generic_offdiag",),
     ("P±HP±", "P±HP∓"), (-1.0, 0.0, 1.0)),
)


def _dense_vanishing(gen: UCCGenerator, t_alpha) -> frozenset:
    """Block families whose dense sandwich norms all vanish."""
    h_alpha = fragment_operator(gen, t_alpha)
    n = h_alpha.n_orbitals
    dh = dense.to_dense(h_alpha)
    projs = {label: dense.to_dense(gen.projector(label).embed(n)) for label in "+-0"}
    norms = {}
    for a in "+-0":
        for b in "+-0":
            norms[(a, b)] = dense.sandwich_norm(projs[a], dh, projs[b])
    return vanishing_families_from_norms(norms, tol=1e-10)


def run_table1(extended: bool = False) -> dict:
    rows = []
    all_agree = True
    for idx, (tg, ta, cases, vanishing, s) in enumerate(TABLE1_ROWS, start=1):
        gen = UCCGenerator.from_word(parse_fermi_string_spec(tg))
        frag_ops = parse_fermi_string_spec(ta)
        n = max([gen.n_orbitals] + [i + 1 for i, _ in frag_ops])
        t_alpha = FermiSum.from_ops(n, [(1.0, frag_ops)]).single_term()[0]
        pattern = classify_ucc_pair(gen, t_alpha)
        exact_vanishing = vanishing_families_from_norms(pg_sandwich_norms(gen, t_alpha))
        dense_vanishing = _dense_vanishing(gen, t_alpha)
        agrees = (
            pattern.case_label in cases
            and pattern.vanishing_sorted() == vanishing
            and pattern.s == s
            and pattern.vanishing == exact_vanishing == dense_vanishing
        )
        all_agree = all_agree and agrees
        rows.append({
            "row": idx,
            "T_G": tg,
            "T_alpha": ta,
            "case_label": pattern.case_label,
            "vanishing_blocks": list(pattern.vanishing_sorted()),
            "S": [float(v) for v in pattern.s],
            "n_commutators": pattern.n_commutators,
            "agrees": agrees,
        })
    payload = {"schema": SCHEMA_VERSION, "rows": rows, "all_agree": all_agree}
    if extended:
        checked = agree = 0
        norb = 4
        singles = [((a,), (b,)) for a in range(norb) for b in range(norb) if a != b]
        frags = []
        for nc in range(0, 3):
            for na in range(0, 3):
                if nc + na == 0 or nc + na > 4:
                    continue
                frags.extend(
                    (c, d)
                    for c in itertools.combinations(range(norb), nc)
                    for d in itertools.combinations(range(norb), na)
                )
        for (gc, ga), (ac, aa) in itertools.product(singles, frags):
            try:
                gen = UCCGenerator(gc, ga, norb)
                frag = FermiSum.excitation(ac, aa, norb)
                if frag.is_zero():
                    continue
                t_alpha = frag.single_term()[0]
            except EngineError:
                continue
            pattern = classify_ucc_pair(gen, t_alpha)
            truth = vanishing_families_from_norms(pg_sandwich_norms(gen, t_alpha))
            checked += 1
            ok = pattern.vanishing <= truth if pattern.case_label == "commuting" \
                else pattern.vanishing == truth
            agree += bool(ok)
        payload["extended_checked"] = checked
        payload["extended_agree"] = agree
        payload["all_agree"] = all_agree and checked == agree
    return payload


def run_verify(**kwargs) -> dict:
    kwargs["verify"] = True
    result = run_transform(**kwargs)
    return {
        "schema": SCHEMA_VERSION,
        "oracle_residual": result["oracle_residual"],
        "tolerance": kwargs.get("tolerance", DEFAULT_TOLERANCE),
        "ok": bool(result.get("verify_ok")),
    }


# ----------------------------------------------------------------------
# FastAPI wiring
# ----------------------------------------------------------------------

app = FastAPI(title="exact-adjoint", version="0.1.0")

_ERROR_KINDS = (
    (ParseError, "parse"),
    ((InvariantViolation, NotHermitian, DimensionMismatch, NotAnticommuting,
      NotClosed, NoClosureWithinBound), "invariant"),
    (OracleCapExceeded, "oracle_cap"),
)


@app.exception_handler(EngineError)
async def _engine_error_handler(request, exc: EngineError):
    kind = "engine"
    for types, name in _ERROR_KINDS:
        if isinstance(exc, types):
            kind = name
            break
    return Response(
        content=canonical_json({"detail": str(exc), "kind": kind}),
        status_code=422,
        media_type="application/json",
    )


def _json_response(payload: dict) -> Response:
    return Response(content=canonical_json(payload), media_type="application/json")


@app.get("/health")
async def health():
    return _json_response({"schema": SCHEMA_VERSION, "status": "ok"})


@app.post("/transform")
async def transform_endpoint(req: TransformRequest):
    return _json_response(run_transform(
        generator=req.generator, ucc=req.ucc, hamiltonian=req.hamiltonian,
        fragment=req.fragment, theta=req.theta, verify=req.verify,
        tolerance=req.tolerance, max_qubits=req.max_qubits,
    ))


@app.post("/classify")
async def classify_endpoint(req: ClassifyRequest):
    return _json_response(run_classify(req.ucc, req.fragment))


@app.post("/coeffs")
async def coeffs_endpoint(req: CoeffsRequest):
    return _json_response(run_coeffs(req.s, req.theta))


@app.post("/rotate")
async def rotate_endpoint(req: RotateRequest):
    return _json_response(run_rotate(req.matrix, req.tensors, req.verify, req.tolerance))


@app.post("/table1")
async def table1_endpoint(req: Table1Request):
    return _json_response(run_table1(req.extended))


@app.post("/verify")
async def verify_endpoint(req: TransformRequest):
    return _json_response(run_verify(
        generator=req.generator, ucc=req.ucc, hamiltonian=req.hamiltonian,
        fragment=req.fragment, theta=req.theta,
        tolerance=req.tolerance, max_qubits=req.max_qubits,
    ))
