"""Exact Pauli-string algebra in the symplectic (x, z) bit-mask encoding.

A Pauli string is stored as two bit masks plus an integer power of i:

    operator = i**phase_quarter * L_0 ⊗ L_1 ⊗ ... ⊗ L_{n-1}

where the letter on qubit j is read off bit j of the masks:
(x=0, z=0) -> I, (1, 0) -> X, (0, 1) -> Z, (1, 1) -> Y.  Qubit 0 is the
first character of a text label.  All phase bookkeeping is integer
arithmetic, so products and commutators of strings are exact.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Tuple

from .errors import DimensionMismatch, ParseError

# Coefficients smaller than this are treated as cancellation noise and
# dropped after every sum or product.
DROP_TOL = 1e-12

_I_POWERS = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


class PauliString:
    """A single N-qubit Pauli string with an exact i**k phase."""

    __slots__ = ("n_qubits", "x_mask", "z_mask", "phase_quarter")

    def __init__(self, n_qubits: int, x_mask: int, z_mask: int, phase_quarter: int = 0):
        if n_qubits <= 0:
            raise ValueError("n_qubits must be positive")
        mask = (1 << n_qubits) - 1
        if x_mask & ~mask or z_mask & ~mask:
            raise ValueError("bit mask exceeds n_qubits")
        self.n_qubits = n_qubits
        self.x_mask = x_mask
        self.z_mask = z_mask
        self.phase_quarter = phase_quarter % 4

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0, 0)

    @classmethod
    def from_label(cls, label: str, phase_quarter: int = 0) -> "PauliString":
        """Build from a label over {I, X, Y, Z}; character j acts on qubit j."""
        if not label:
            raise ParseError("empty Pauli label")
        x = z = 0
        for j, ch in enumerate(label):
            if ch == "X":
                x |= 1 << j
            elif ch == "Y":
                x |= 1 << j
                z |= 1 << j
            elif ch == "Z":
                z |= 1 << j
            elif ch != "I":
                raise ParseError(f"invalid Pauli letter {ch!r} in {label!r}")
        return cls(len(label), x, z, phase_quarter)

    def label(self) -> str:
        out = []
        for j in range(self.n_qubits):
            xb = (self.x_mask >> j) & 1
            zb = (self.z_mask >> j) & 1
            out.append("IXZY"[xb + 2 * zb])
        return "".join(out)

    @property
    def phase(self) -> complex:
        return _I_POWERS[self.phase_quarter]

    def weight(self) -> int:
        """Number of non-identity letters."""
        return (self.x_mask | self.z_mask).bit_count()

    def _xz_quarter(self) -> int:
        # Exponent of i when the string is rewritten as i^q * X^x Z^z.
        return (self.phase_quarter + (self.x_mask & self.z_mask).bit_count()) % 4

    def mul(self, other: "PauliString") -> "PauliString":
        """Exact group product; the phase is computed in integer arithmetic."""
        if self.n_qubits != other.n_qubits:
            raise DimensionMismatch(
                f"qubit counts differ: {self.n_qubits} vs {other.n_qubits}"
            )
        x = self.x_mask ^ other.x_mask
        z = self.z_mask ^ other.z_mask
        # In the X^x Z^z convention the only sign is from moving Z past X.
        q = (
            self._xz_quarter()
            + other._xz_quarter()
            + 2 * (self.z_mask & other.x_mask).bit_count()
            - (x & z).bit_count()
        )
        return PauliString(self.n_qubits, x, z, q % 4)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return self.mul(other)

    def commutes(self, other: "PauliString") -> bool:
        """Symplectic test: even overlap count means the strings commute."""
        if self.n_qubits != other.n_qubits:
            raise DimensionMismatch(
                f"qubit counts differ: {self.n_qubits} vs {other.n_qubits}"
            )
        overlap = (self.x_mask & other.z_mask).bit_count() + (
            self.z_mask & other.x_mask
        ).bit_count()
        return overlap % 2 == 0

    def dagger(self) -> "PauliString":
        # Letters are Hermitian; only the i**k phase conjugates.
        return PauliString(self.n_qubits, self.x_mask, self.z_mask, -self.phase_quarter)

    def key(self) -> Tuple[int, int]:
        """Phase-free identity of the string, used as a PauliSum term key."""
        return (self.x_mask, self.z_mask)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PauliString)
            and self.n_qubits == other.n_qubits
            and self.x_mask == other.x_mask
            and self.z_mask == other.z_mask
            and self.phase_quarter == other.phase_quarter
        )

    def __hash__(self) -> int:
        return hash((self.n_qubits, self.x_mask, self.z_mask, self.phase_quarter))

    def __repr__(self) -> str:
        pre = ("", "i*", "-", "-i*")[self.phase_quarter]
        return f"{pre}{self.label()}"


def pauli_mul(a: PauliString, b: PauliString) -> PauliString:
    """Module-level alias for the exact string product."""
    return a.mul(b)


def commutes(a: PauliString, b: PauliString) -> bool:
    return a.commutes(b)


class PauliSum:
    """Sparse complex combination of phase-free Pauli strings.

    Terms are keyed by (x_mask, z_mask); the i**k phase of any string fed
    in is folded into its coefficient.  Coefficients with magnitude below
    DROP_TOL are removed after every operation.
    """

    __slots__ = ("n_qubits", "_terms")

    def __init__(self, n_qubits: int, terms: Dict[Tuple[int, int], complex] | None = None):
        if n_qubits <= 0:
            raise ValueError("n_qubits must be positive")
        self.n_qubits = n_qubits
        self._terms: Dict[Tuple[int, int], complex] = {}
        if terms:
            for key, coeff in terms.items():
                if abs(coeff) > DROP_TOL:
                    self._terms[key] = complex(coeff)

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliSum":
        return cls(n_qubits)

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls(n_qubits, {(0, 0): complex(coeff)})

    @classmethod
    def from_terms(cls, n_qubits: int, terms: Iterable[Tuple[complex, PauliString]]) -> "PauliSum":
        out = cls(n_qubits)
        for coeff, string in terms:
            if string.n_qubits != n_qubits:
                raise DimensionMismatch("term qubit count differs from sum")
            out._add_term(string.key(), complex(coeff) * string.phase)
        out._prune()
        return out

    @classmethod
    def from_label(cls, label: str, coeff: complex = 1.0) -> "PauliSum":
        s = PauliString.from_label(label)
        return cls.from_terms(s.n_qubits, [(coeff, s)])

    # ------------------------------------------------------------------
    # term access
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[PauliString, complex]]:
        for (x, z), coeff in self._terms.items():
            yield PauliString(self.n_qubits, x, z), coeff

    def items(self) -> Iterator[Tuple[Tuple[int, int], complex]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> list[Tuple[PauliString, complex]]:
        """Terms in a fixed canonical order (for deterministic output)."""
        out = []
        for (x, z) in sorted(self._terms):
            out.append((PauliString(self.n_qubits, x, z), self._terms[(x, z)]))
        return out

    def coefficient(self, string: PauliString) -> complex:
        return self._terms.get(string.key(), 0.0 + 0.0j) * string.phase.conjugate()

    def _add_term(self, key: Tuple[int, int], coeff: complex) -> None:
        cur = self._terms.get(key)
        if cur is None:
            self._terms[key] = coeff
        else:
            self._terms[key] = cur + coeff

    def _prune(self) -> None:
        dead = [k for k, c in self._terms.items() if abs(c) <= DROP_TOL]
        for k in dead:
            del self._terms[k]

    # ------------------------------------------------------------------
    # linear structure
    # ------------------------------------------------------------------

    def _check_dim(self, other: "PauliSum") -> None:
        if self.n_qubits != other.n_qubits:
            raise DimensionMismatch(
                f"qubit counts differ: {self.n_qubits} vs {other.n_qubits}"
            )

    def __add__(self, other: "PauliSum") -> "PauliSum":
        self._check_dim(other)
        out = PauliSum(self.n_qubits, dict(self._terms))
        for key, coeff in other._terms.items():
            out._add_term(key, coeff)
        out._prune()
        return out

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "PauliSum":
        if isinstance(scalar, PauliSum):
            return self.mul(scalar)
        c = complex(scalar)
        return PauliSum(self.n_qubits, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "PauliSum":
        return self * -1.0

    # ------------------------------------------------------------------
    # algebra
    # ------------------------------------------------------------------

    def mul(self, other: "PauliSum") -> "PauliSum":
        """Exact operator product, distributing over term pairs."""
        self._check_dim(other)
        n = self.n_qubits
        out = PauliSum(n)
        for (xa, za), ca in self._terms.items():
            qa = (xa & za).bit_count()
            for (xb, zb), cb in other._terms.items():
                x = xa ^ xb
                z = za ^ zb
                q = (
                    qa
                    + (xb & zb).bit_count()
                    + 2 * (za & xb).bit_count()
                    - (x & z).bit_count()
                ) % 4
                out._add_term((x, z), ca * cb * _I_POWERS[q])
        out._prune()
        return out

    def commutator(self, other: "PauliSum") -> "PauliSum":
        """Exact [self, other].

        Commuting string pairs are skipped; anticommuting pairs contribute
        2*PQ, so only one string product is formed per surviving pair.
        """
        self._check_dim(other)
        n = self.n_qubits
        out = PauliSum(n)
        for (xa, za), ca in self._terms.items():
            qa = (xa & za).bit_count()
            for (xb, zb), cb in other._terms.items():
                if ((xa & zb).bit_count() + (za & xb).bit_count()) % 2 == 0:
                    continue
                x = xa ^ xb
                z = za ^ zb
                q = (
                    qa
                    + (xb & zb).bit_count()
                    + 2 * (za & xb).bit_count()
                    - (x & z).bit_count()
                ) % 4
                out._add_term((x, z), 2.0 * ca * cb * _I_POWERS[q])
        out._prune()
        return out

    def anticommutator(self, other: "PauliSum") -> "PauliSum":
        """Exact {self, other}: commuting pairs contribute 2*PQ, others cancel."""
        self._check_dim(other)
        out = PauliSum(self.n_qubits)
        for (xa, za), ca in self._terms.items():
            qa = (xa & za).bit_count()
            for (xb, zb), cb in other._terms.items():
                if ((xa & zb).bit_count() + (za & xb).bit_count()) % 2 == 1:
                    continue
                x = xa ^ xb
                z = za ^ zb
                q = (
                    qa
                    + (xb & zb).bit_count()
                    + 2 * (za & xb).bit_count()
                    - (x & z).bit_count()
                ) % 4
                out._add_term((x, z), 2.0 * ca * cb * _I_POWERS[q])
        out._prune()
        return out

    def dagger(self) -> "PauliSum":
        # Strings are Hermitian, so conjugating coefficients suffices.
        return PauliSum(self.n_qubits, {k: v.conjugate() for k, v in self._terms.items()})

    def frobenius_norm(self) -> float:
        """2-norm of the coefficient vector.

        Distinct Pauli strings are trace-orthogonal, so this equals the
        matrix Frobenius norm divided by 2**(n/2).
        """
        return sum(abs(c) ** 2 for c in self._terms.values()) ** 0.5

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return all(abs(c.imag) <= tol for c in self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self._terms == other._terms

    def approx_equal(self, other: "PauliSum", tol: float = 1e-9) -> bool:
        return (self - other).frobenius_norm() <= tol

    def __repr__(self) -> str:
        if not self._terms:
            return f"PauliSum(zero on {self.n_qubits} qubits)"
        bits = [f"({c:.6g})*{PauliString(self.n_qubits, x, z).label()}"
                for (x, z), c in list(self._terms.items())[:6]]
        more = " + ..." if len(self._terms) > 6 else ""
        return " + ".join(bits) + more


def commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    return a.commutator(b)


def anticommutator(a: PauliSum, b: PauliSum) -> PauliSum:
    return a.anticommutator(b)


def frobenius_norm(a: PauliSum) -> float:
    return a.frobenius_norm()
