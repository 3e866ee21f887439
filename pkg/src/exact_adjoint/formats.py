"""Text formats for operators and tensors, plus canonical JSON.

All floats are written with repr (shortest round-trip, 17 significant
digits), so every format round-trips exactly.  Serialization orders terms
canonically, which makes outputs byte-deterministic.
"""

from __future__ import annotations

import json
from typing import Sequence, Tuple

import numpy as np

from .errors import ParseError
from .fermion import FermiString, FermiSum
from .pauli import PauliString, PauliSum


def fmt_complex(value: complex) -> str:
    value = complex(value)
    if value.imag == 0.0:
        return repr(value.real)
    sign = "+" if value.imag >= 0 else "-"
    return f"{value.real!r}{sign}{abs(value.imag)!r}j"


def parse_complex(token: str) -> complex:
    try:
        return complex(token)
    except ValueError as err:
        raise ParseError(f"bad coefficient {token!r}") from err


# ----------------------------------------------------------------------
# Pauli sums: one term per line, "<coeff> <label>"
# ----------------------------------------------------------------------

def format_pauli_sum(op: PauliSum) -> str:
    lines = [f"{fmt_complex(c)} {s.label()}" for s, c in op.sorted_terms()]
    if not lines:
        lines = [f"{fmt_complex(0.0)} {'I' * op.n_qubits}"]
    return "\n".join(lines)


def parse_pauli_sum(text: str) -> PauliSum:
    terms = []
    n_qubits = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected '<coeff> <label>', got {line!r}")
        coeff = parse_complex(parts[0])
        string = PauliString.from_label(parts[1])
        if n_qubits is None:
            n_qubits = string.n_qubits
        elif string.n_qubits != n_qubits:
            raise ParseError("inconsistent qubit counts across lines")
        terms.append((coeff, string))
    if n_qubits is None:
        raise ParseError("no Pauli terms found")
    return PauliSum.from_terms(n_qubits, terms)


# ----------------------------------------------------------------------
# Fermionic sums: "<coeff> a3^ a2^ a1 a0" per term (bare coeff = identity)
# ----------------------------------------------------------------------

def _format_fermi_string(string: FermiString) -> str:
    bits = [f"a{p}^" for p in string.cre] + [f"a{p}" for p in string.ann]
    return " ".join(bits)


def format_fermi_sum(op: FermiSum) -> str:
    lines = []
    for string, coeff in op.sorted_terms():
        tail = _format_fermi_string(string)
        lines.append(f"{fmt_complex(coeff)} {tail}".rstrip())
    if not lines:
        lines = [fmt_complex(0.0)]
    return "\n".join(lines)


def parse_fermi_ops(tokens: Sequence[str]) -> list:
    """Operator word from tokens like 'a3^', '3^', 'a2', '2'."""
    ops = []
    for tok in tokens:
        body = tok[1:] if tok.startswith("a") else tok
        dagger = body.endswith("^")
        if dagger:
            body = body[:-1]
        if not body.isdigit():
            raise ParseError(f"bad fermionic operator token {tok!r}")
        ops.append((int(body), dagger))
    return ops


def parse_fermi_sum(text: str, n_orbitals: int | None = None) -> FermiSum:
    raw_terms = []
    max_idx = -1
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        coeff = parse_complex(parts[0])
        ops = parse_fermi_ops(parts[1:])
        max_idx = max([max_idx] + [i for i, _ in ops])
        raw_terms.append((coeff, ops))
    if not raw_terms:
        raise ParseError("no fermionic terms found")
    if n_orbitals is None:
        n_orbitals = max(max_idx + 1, 1)
    return FermiSum.from_ops(n_orbitals, raw_terms)


def parse_fermi_string_spec(spec: str) -> list:
    """Single-string spec like '3^ 2^ 1 0' (used for --ucc / --fragment)."""
    tokens = spec.split()
    if not tokens:
        raise ParseError("empty fermionic string spec")
    return parse_fermi_ops(tokens)


# ----------------------------------------------------------------------
# Electronic tensors: FCIDUMP-style "<value> p q r s" with 1-based indices;
# one-body entries use r = s = 0.  A leading "norb N" line fixes N.
# ----------------------------------------------------------------------

def format_tensors(h: np.ndarray, g: np.ndarray) -> str:
    n = h.shape[0]
    lines = [f"norb {n}"]
    for p in range(n):
        for q in range(n):
            if h[p, q] != 0:
                lines.append(f"{fmt_complex(h[p, q])} {p + 1} {q + 1} 0 0")
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if g[p, q, r, s] != 0:
                        lines.append(
                            f"{fmt_complex(g[p, q, r, s])} {p + 1} {q + 1} {r + 1} {s + 1}"
                        )
    return "\n".join(lines)


def parse_tensors(text: str) -> Tuple[np.ndarray, np.ndarray]:
    lines = [l.strip() for l in text.splitlines() if l.strip() and not l.strip().startswith("#")]
    if not lines or not lines[0].lower().startswith("norb"):
        raise ParseError("tensor file must start with 'norb N'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError) as err:
        raise ParseError("bad norb header") from err
    h = np.zeros((n, n), dtype=complex)
    g = np.zeros((n, n, n, n), dtype=complex)
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 5:
            raise ParseError(f"expected '<value> p q r s', got {line!r}")
        value = parse_complex(parts[0])
        p, q, r, s = (int(x) for x in parts[1:])
        if r == 0 and s == 0:
            h[p - 1, q - 1] = value
        else:
            g[p - 1, q - 1, r - 1, s - 1] = value
    return h, g


def format_matrix(m: np.ndarray) -> str:
    n = m.shape[0]
    lines = [f"norb {n}"]
    for p in range(n):
        for q in range(n):
            if m[p, q] != 0:
                lines.append(f"{fmt_complex(m[p, q])} {p + 1} {q + 1}")
    return "\n".join(lines)


def parse_matrix(text: str) -> np.ndarray:
    lines = [l.strip() for l in text.splitlines() if l.strip() and not l.strip().startswith("#")]
    if not lines or not lines[0].lower().startswith("norb"):
        raise ParseError("matrix file must start with 'norb N'")
    n = int(lines[0].split()[1])
    m = np.zeros((n, n), dtype=complex)
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected '<value> p q', got {line!r}")
        m[int(parts[1]) - 1, int(parts[2]) - 1] = parse_complex(parts[0])
    return m


# ----------------------------------------------------------------------
# Weyl polynomials: "<coeff> x0^2 p1" per term
# ----------------------------------------------------------------------

def format_weyl(poly) -> str:
    lines = []
    for (xs, ps), coeff in poly.sorted_terms():
        factors = []
        for kind, seq in (("x", xs), ("p", ps)):
            i = 0
            while i < len(seq):
                j = i
                while j < len(seq) and seq[j] == seq[i]:
                    j += 1
                power = j - i
                factors.append(f"{kind}{seq[i]}" + (f"^{power}" if power > 1 else ""))
                i = j
        tail = " ".join(factors)
        lines.append(f"{fmt_complex(coeff)} {tail}".rstrip())
    if not lines:
        lines = [fmt_complex(0.0)]
    return "\n".join(lines)


def parse_weyl(text: str, hbar: float = 1.0):
    from .weyl import WeylPolynomial

    terms = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        coeff = parse_complex(parts[0])
        xs: list = []
        ps: list = []
        for tok in parts[1:]:
            if "^" in tok:
                head, _, exp = tok.partition("^")
                power = int(exp)
            else:
                head, power = tok, 1
            kind, idx = head[0], head[1:]
            if kind not in "xp" or not idx.isdigit():
                raise ParseError(f"bad Weyl factor {tok!r}")
            (xs if kind == "x" else ps).extend([int(idx)] * power)
        key = (tuple(sorted(xs)), tuple(sorted(ps)))
        terms[key] = terms.get(key, 0.0) + coeff
    if not terms:
        raise ParseError("no Weyl terms found")
    return WeylPolynomial(terms, hbar)


# ----------------------------------------------------------------------
# canonical JSON
# ----------------------------------------------------------------------

def canonical_json(payload) -> str:
    """Compact deterministic JSON; field order as constructed."""
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"), allow_nan=False)
