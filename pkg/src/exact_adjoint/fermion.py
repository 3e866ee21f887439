"""Fermionic strings with exact normal ordering and the Jordan-Wigner map.

A string is kept in the canonical form

    a†_{c1} a†_{c2} ... a_{d1} a_{d2} ...

with creation indices strictly increasing and annihilation indices strictly
decreasing.  Arbitrary products are rewritten into this form with the
anticommutation rule {a_p, a_q†} = δ_pq, which is where all contraction
terms come from.  A string with a repeated index on the same side is the
zero operator and is dropped.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .errors import DimensionMismatch, ParseError
from .pauli import DROP_TOL, PauliString, PauliSum

# (index, dagger) pairs; dagger=True is a creation operator.
Op = Tuple[int, bool]


def _sorted_with_parity(indices: Sequence[int], reverse: bool) -> Tuple[int, Tuple[int, ...]] | None:
    """Sort same-type operators, counting transpositions.

    Returns (sign, sorted tuple), or None when an index repeats (the string
    annihilates itself).
    """
    items = list(indices)
    sign = 1
    # insertion sort; adjacent swaps of identical fermionic operators flip sign
    for i in range(1, len(items)):
        j = i
        while j > 0 and ((items[j - 1] > items[j]) if not reverse else (items[j - 1] < items[j])):
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return None
    return sign, tuple(items)


class FermiString:
    """A canonical normal-ordered fermionic string."""

    __slots__ = ("cre", "ann")

    def __init__(self, cre: Sequence[int] = (), ann: Sequence[int] = ()):
        cre = tuple(cre)
        ann = tuple(ann)
        if any(cre[i] >= cre[i + 1] for i in range(len(cre) - 1)):
            raise ValueError("creation indices must be strictly increasing")
        if any(ann[i] <= ann[i + 1] for i in range(len(ann) - 1)):
            raise ValueError("annihilation indices must be strictly decreasing")
        if any(i < 0 for i in cre + ann):
            raise ValueError("negative spin-orbital index")
        self.cre = cre
        self.ann = ann

    @classmethod
    def identity(cls) -> "FermiString":
        return cls((), ())

    @classmethod
    def number(cls, p: int) -> "FermiString":
        """The occupation operator a†_p a_p."""
        return cls((p,), (p,))

    def ops(self) -> Tuple[Op, ...]:
        return tuple((i, True) for i in self.cre) + tuple((i, False) for i in self.ann)

    def indices(self) -> frozenset:
        return frozenset(self.cre) | frozenset(self.ann)

    def max_index(self) -> int:
        return max(self.cre + self.ann, default=-1)

    def is_identity(self) -> bool:
        return not self.cre and not self.ann

    def is_number_product(self) -> bool:
        """True when the string is (up to sign) a product of a†_p a_p factors."""
        return set(self.cre) == set(self.ann)

    def is_single_ladder(self) -> bool:
        return len(self.cre) + len(self.ann) == 1

    def dagger_key(self) -> "FermiString":
        """Canonical string of the Hermitian conjugate, sign discarded."""
        return FermiString(tuple(sorted(self.ann)), tuple(sorted(self.cre, reverse=True)))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FermiString)
            and self.cre == other.cre
            and self.ann == other.ann
        )

    def __hash__(self) -> int:
        return hash((self.cre, self.ann))

    def __lt__(self, other: "FermiString") -> bool:
        return (len(self.cre) + len(self.ann), self.cre, self.ann) < (
            len(other.cre) + len(other.ann),
            other.cre,
            other.ann,
        )

    def __repr__(self) -> str:
        if self.is_identity():
            return "1"
        bits = [f"a{p}^" for p in self.cre] + [f"a{p}" for p in self.ann]
        return " ".join(bits)


def normal_order_ops(ops: Sequence[Op]) -> Dict[FermiString, float]:
    """Rewrite an arbitrary operator word into canonical strings.

    Returns a map canonical string -> integer-valued coefficient (the only
    coefficients produced by the CAR are ±1 sums).
    """
    out: Dict[FermiString, float] = {}
    stack: List[Tuple[float, Tuple[Op, ...]]] = [(1.0, tuple(ops))]
    while stack:
        sign, word = stack.pop()
        # find the first annihilation operator standing left of a creation one
        swap_at = -1
        for i in range(len(word) - 1):
            if not word[i][1] and word[i + 1][1]:
                swap_at = i
                break
        if swap_at >= 0:
            p, q = word[swap_at][0], word[swap_at + 1][0]
            swapped = (
                word[:swap_at] + (word[swap_at + 1], word[swap_at]) + word[swap_at + 2:]
            )
            stack.append((-sign, swapped))
            if p == q:
                stack.append((sign, word[:swap_at] + word[swap_at + 2:]))
            continue
        # all creations precede annihilations; sort each side
        cre = [i for i, dag in word if dag]
        ann = [i for i, dag in word if not dag]
        sorted_cre = _sorted_with_parity(cre, reverse=False)
        if sorted_cre is None:
            continue
        sorted_ann = _sorted_with_parity(ann, reverse=True)
        if sorted_ann is None:
            continue
        key = FermiString(sorted_cre[1], sorted_ann[1])
        total = sign * sorted_cre[0] * sorted_ann[0]
        out[key] = out.get(key, 0.0) + total
    return {k: v for k, v in out.items() if v != 0.0}


class FermiSum:
    """Sparse complex combination of canonical fermionic strings."""

    __slots__ = ("n_orbitals", "_terms")

    def __init__(self, n_orbitals: int, terms: Dict[FermiString, complex] | None = None):
        if n_orbitals <= 0:
            raise ValueError("n_orbitals must be positive")
        self.n_orbitals = n_orbitals
        self._terms: Dict[FermiString, complex] = {}
        if terms:
            for key, coeff in terms.items():
                if key.max_index() >= n_orbitals:
                    raise DimensionMismatch(
                        f"index {key.max_index()} out of bounds for {n_orbitals} orbitals"
                    )
                if abs(coeff) > DROP_TOL:
                    self._terms[key] = complex(coeff)

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, n_orbitals: int) -> "FermiSum":
        return cls(n_orbitals)

    @classmethod
    def identity(cls, n_orbitals: int, coeff: complex = 1.0) -> "FermiSum":
        return cls(n_orbitals, {FermiString.identity(): complex(coeff)})

    @classmethod
    def from_ops(cls, n_orbitals: int, terms: Iterable[Tuple[complex, Sequence[Op]]]) -> "FermiSum":
        """Build from raw (coefficient, operator word) pairs, normal ordering
        each word exactly."""
        out = cls(n_orbitals)
        for coeff, ops in terms:
            for key, factor in normal_order_ops(ops).items():
                if key.max_index() >= n_orbitals:
                    raise DimensionMismatch(
                        f"index {key.max_index()} out of bounds for {n_orbitals} orbitals"
                    )
                out._add_term(key, complex(coeff) * factor)
        out._prune()
        return out

    @classmethod
    def excitation(cls, creation: Sequence[int], annihilation: Sequence[int],
                   n_orbitals: int) -> "FermiSum":
        """The string a†_A a_B with A, B taken in increasing order."""
        ops = [(p, True) for p in sorted(creation)] + [(p, False) for p in sorted(annihilation)]
        return cls.from_ops(n_orbitals, [(1.0, ops)])

    # ------------------------------------------------------------------
    # term access
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[FermiString, complex]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> list[Tuple[FermiString, complex]]:
        return [(k, self._terms[k]) for k in sorted(self._terms)]

    def single_term(self) -> Tuple[FermiString, complex]:
        if len(self._terms) != 1:
            raise ValueError("sum does not hold exactly one string")
        return next(iter(self._terms.items()))

    def _add_term(self, key: FermiString, coeff: complex) -> None:
        cur = self._terms.get(key)
        self._terms[key] = coeff if cur is None else cur + coeff

    def _prune(self) -> None:
        dead = [k for k, c in self._terms.items() if abs(c) <= DROP_TOL]
        for k in dead:
            del self._terms[k]

    def items(self) -> Iterator[Tuple[FermiString, complex]]:
        return iter(self._terms.items())

    def embed(self, n_orbitals: int) -> "FermiSum":
        """Same operator viewed on a larger orbital count."""
        if n_orbitals < self.n_orbitals:
            for key in self._terms:
                if key.max_index() >= n_orbitals:
                    raise DimensionMismatch("cannot shrink below occupied indices")
        return FermiSum(n_orbitals, dict(self._terms))

    # ------------------------------------------------------------------
    # linear structure
    # ------------------------------------------------------------------

    def _check_dim(self, other: "FermiSum") -> None:
        if self.n_orbitals != other.n_orbitals:
            raise DimensionMismatch(
                f"orbital counts differ: {self.n_orbitals} vs {other.n_orbitals}"
            )

    def __add__(self, other: "FermiSum") -> "FermiSum":
        self._check_dim(other)
        out = FermiSum(self.n_orbitals, dict(self._terms))
        for key, coeff in other._terms.items():
            out._add_term(key, coeff)
        out._prune()
        return out

    def __sub__(self, other: "FermiSum") -> "FermiSum":
        return self + (other * -1.0)

    def __mul__(self, other):
        if isinstance(other, FermiSum):
            return self.mul(other)
        c = complex(other)
        return FermiSum(self.n_orbitals, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "FermiSum":
        return self * -1.0

    # ------------------------------------------------------------------
    # algebra
    # ------------------------------------------------------------------

    def mul(self, other: "FermiSum") -> "FermiSum":
        self._check_dim(other)
        out = FermiSum(self.n_orbitals)
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                word = ka.ops() + kb.ops()
                for key, factor in normal_order_ops(word).items():
                    out._add_term(key, ca * cb * factor)
        out._prune()
        return out

    def commutator(self, other: "FermiSum") -> "FermiSum":
        return self.mul(other) - other.mul(self)

    def anticommutator(self, other: "FermiSum") -> "FermiSum":
        return self.mul(other) + other.mul(self)

    def dagger(self) -> "FermiSum":
        out = FermiSum(self.n_orbitals)
        for key, coeff in self._terms.items():
            word = tuple((i, not dag) for i, dag in reversed(key.ops()))
            for k, factor in normal_order_ops(word).items():
                out._add_term(k, coeff.conjugate() * factor)
        out._prune()
        return out

    def norm(self) -> float:
        """2-norm of the coefficient vector.

        Canonical strings are linearly independent operators, so this is a
        genuine norm: it vanishes exactly when the operator is zero.
        """
        return sum(abs(c) ** 2 for c in self._terms.values()) ** 0.5

    def is_zero(self) -> bool:
        return not self._terms

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return (self - self.dagger()).norm() <= tol

    def approx_equal(self, other: "FermiSum", tol: float = 1e-9) -> bool:
        return (self - other).norm() <= tol

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FermiSum):
            return NotImplemented
        return self.n_orbitals == other.n_orbitals and self._terms == other._terms

    def __repr__(self) -> str:
        if not self._terms:
            return f"FermiSum(zero on {self.n_orbitals} orbitals)"
        bits = [f"({c:.6g})*[{k!r}]" for k, c in list(self._terms.items())[:6]]
        more = " + ..." if len(self._terms) > 6 else ""
        return " + ".join(bits) + more


def normal_order(source, n_orbitals: int | None = None) -> FermiSum:
    """Normal order a FermiSum or raw (coeff, ops) terms.

    FermiSums are canonical by construction, so for them this re-applies
    the drop tolerance and returns an equal operator (idempotent).
    """
    if isinstance(source, FermiSum):
        return FermiSum(source.n_orbitals, dict(source._terms))
    if n_orbitals is None:
        raise ValueError("n_orbitals required for raw term input")
    return FermiSum.from_ops(n_orbitals, source)


def jordan_wigner(source, n_orbitals: int | None = None) -> PauliSum:
    """Jordan-Wigner map: a†_p -> (X_p - iY_p)/2 with a Z string on all
    qubits below p; qubit index equals spin-orbital index."""
    if isinstance(source, FermiString):
        if n_orbitals is None:
            n_orbitals = source.max_index() + 1
        source = FermiSum(max(n_orbitals, 1), {source: 1.0})
    if n_orbitals is None:
        n_orbitals = source.n_orbitals
    if n_orbitals < source.n_orbitals:
        for key in source._terms:
            if key.max_index() >= n_orbitals:
                raise DimensionMismatch("orbital index exceeds requested qubit count")
    n = max(n_orbitals, 1)
    out = PauliSum.zero(n)
    for key, coeff in source:
        term = PauliSum.identity(n, coeff)
        for p, dag in key.ops():
            zmask = (1 << p) - 1
            x_part = PauliString(n, 1 << p, zmask)
            y_part = PauliString(n, 1 << p, zmask | (1 << p))
            sign = -0.5j if dag else 0.5j
            ladder = PauliSum.from_terms(n, [(0.5, x_part), (sign, y_part)])
            term = term.mul(ladder)
        out = out + term
    return out
