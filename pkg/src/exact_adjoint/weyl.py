"""Symbolic polynomials in canonical pairs (x_i, p_i) with [x_i, p_j] = iħδ_ij.

Monomials are kept with all x factors before all p factors, indices
ascending.  Reordering uses the commutator exactly, so the algebra is
symbolic: coefficients stay exact up to float arithmetic.  Linear
generators displace x and p by constants; the double adjoint of a linear
generator on a linear operator vanishes identically, which makes these
transforms single-commutator exact.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InvariantViolation

# monomial: (x indices with multiplicity, ascending; p indices likewise)
Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]

WEYL_DROP_TOL = 1e-14


def _normal_order_word(word: Tuple[Tuple[str, int], ...], hbar: float) -> Dict[Monomial, complex]:
    out: Dict[Monomial, complex] = {}
    stack: List[Tuple[complex, Tuple[Tuple[str, int], ...]]] = [(1.0 + 0.0j, word)]
    while stack:
        coeff, w = stack.pop()
        swap_at = -1
        for i in range(len(w) - 1):
            if w[i][0] == "p" and w[i + 1][0] == "x":
                swap_at = i
                break
        if swap_at >= 0:
            a, b = w[swap_at][1], w[swap_at + 1][1]
            swapped = w[:swap_at] + (w[swap_at + 1], w[swap_at]) + w[swap_at + 2:]
            stack.append((coeff, swapped))
            if a == b:
                # p x = x p - iħ on the same mode
                stack.append((coeff * (-1j * hbar), w[:swap_at] + w[swap_at + 2:]))
            continue
        xs = tuple(sorted(i for kind, i in w if kind == "x"))
        ps = tuple(sorted(i for kind, i in w if kind == "p"))
        key = (xs, ps)
        out[key] = out.get(key, 0.0 + 0.0j) + coeff
    return {k: v for k, v in out.items() if abs(v) > WEYL_DROP_TOL}


class WeylPolynomial:
    """Finite-degree polynomial in {x_i, p_i, 1}."""

    __slots__ = ("hbar", "_terms")

    def __init__(self, terms: Dict[Monomial, complex] | None = None, hbar: float = 1.0):
        if hbar <= 0:
            raise InvariantViolation("hbar must be positive")
        self.hbar = float(hbar)
        self._terms: Dict[Monomial, complex] = {}
        if terms:
            for key, coeff in terms.items():
                if abs(coeff) > WEYL_DROP_TOL:
                    self._terms[key] = complex(coeff)

    # ------------------------------------------------------------------

    @classmethod
    def constant(cls, value: complex, hbar: float = 1.0) -> "WeylPolynomial":
        return cls({((), ()): complex(value)}, hbar)

    @classmethod
    def x(cls, index: int, hbar: float = 1.0) -> "WeylPolynomial":
        return cls({((index,), ()): 1.0}, hbar)

    @classmethod
    def p(cls, index: int, hbar: float = 1.0) -> "WeylPolynomial":
        return cls({((), (index,)): 1.0}, hbar)

    def items(self) -> Iterable[Tuple[Monomial, complex]]:
        return self._terms.items()

    def sorted_terms(self) -> List[Tuple[Monomial, complex]]:
        return [(k, self._terms[k]) for k in sorted(self._terms)]

    def degree(self) -> int:
        return max((len(xs) + len(ps) for xs, ps in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def norm(self) -> float:
        return sum(abs(c) ** 2 for c in self._terms.values()) ** 0.5

    def constant_part(self) -> complex:
        return self._terms.get(((), ()), 0.0 + 0.0j)

    # ------------------------------------------------------------------

    def _check(self, other: "WeylPolynomial") -> None:
        if abs(self.hbar - other.hbar) > 0:
            raise InvariantViolation("mixing polynomials with different hbar")

    def __add__(self, other: "WeylPolynomial") -> "WeylPolynomial":
        self._check(other)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0.0) + c
        return WeylPolynomial(terms, self.hbar)

    def __sub__(self, other: "WeylPolynomial") -> "WeylPolynomial":
        return self + (other * -1.0)

    def __mul__(self, other):
        if isinstance(other, WeylPolynomial):
            return self.mul(other)
        c = complex(other)
        return WeylPolynomial({k: v * c for k, v in self._terms.items()}, self.hbar)

    __rmul__ = __mul__

    def mul(self, other: "WeylPolynomial") -> "WeylPolynomial":
        self._check(other)
        out: Dict[Monomial, complex] = {}
        for (xa, pa), ca in self._terms.items():
            word_a = tuple(("x", i) for i in xa) + tuple(("p", i) for i in pa)
            for (xb, pb), cb in other._terms.items():
                word = word_a + tuple(("x", i) for i in xb) + tuple(("p", i) for i in pb)
                for key, factor in _normal_order_word(word, self.hbar).items():
                    out[key] = out.get(key, 0.0) + ca * cb * factor
        return WeylPolynomial(out, self.hbar)

    def commutator(self, other: "WeylPolynomial") -> "WeylPolynomial":
        return self.mul(other) - other.mul(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylPolynomial):
            return NotImplemented
        return self.hbar == other.hbar and self._terms == other._terms

    def approx_equal(self, other: "WeylPolynomial", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for (xs, ps), c in self.sorted_terms():
            factors = [f"x{i}" for i in xs] + [f"p{i}" for i in ps]
            bits.append(f"({c:.6g})" + ("*" + " ".join(factors) if factors else ""))
        return " + ".join(bits)


def linear_generator(u: Sequence[float], v: Sequence[float], z: float,
                     hbar: float = 1.0) -> WeylPolynomial:
    """G = sum_i (u_i x_i - v_i p_i) + z."""
    terms: Dict[Monomial, complex] = {((), ()): complex(z)}
    for i, ui in enumerate(u):
        if ui:
            terms[((i,), ())] = complex(ui)
    for i, vi in enumerate(v):
        if vi:
            terms[((), (i,))] = terms.get(((), (i,)), 0.0) - complex(vi)
    return WeylPolynomial(terms, hbar)


def adjoint_once(g: WeylPolynomial, op: WeylPolynomial) -> WeylPolynomial:
    """ad_{iG}(op) = i[G, op]."""
    return g.commutator(op) * 1j


def heisenberg_displace(u: Sequence[float], v: Sequence[float], z: float,
                        poly: WeylPolynomial) -> WeylPolynomial:
    """Conjugation of a polynomial by exp(iG) for linear G.

    The image of each canonical variable is computed with a single
    symbolic commutator (the double adjoint vanishes because the algebra
    is nilpotent of class 2), then substituted:

        x_j -> x_j + i[G, x_j],   p_j -> p_j + i[G, p_j],

    both shifts being real constants fixed by [x, p] = iħ.
    """
    hbar = poly.hbar
    g = linear_generator(u, v, z, hbar)
    indices = sorted({i for xs, ps in poly._terms for i in xs + ps})
    shift_x: Dict[int, WeylPolynomial] = {}
    shift_p: Dict[int, WeylPolynomial] = {}
    for j in indices:
        img_x = WeylPolynomial.x(j, hbar) + adjoint_once(g, WeylPolynomial.x(j, hbar))
        img_p = WeylPolynomial.p(j, hbar) + adjoint_once(g, WeylPolynomial.p(j, hbar))
        for img, base in ((img_x, ((j,), ())), (img_p, ((), (j,)))):
            extra = WeylPolynomial(dict(img._terms), hbar)
            extra._terms.pop(base, None)
            if set(extra._terms) - {((), ())}:
                raise InvariantViolation("linear generator produced a non-central shift")
        shift_x[j] = img_x
        shift_p[j] = img_p
    out = WeylPolynomial({}, hbar)
    for (xs, ps), coeff in poly._terms.items():
        term = WeylPolynomial.constant(coeff, hbar)
        for i in xs:
            term = term.mul(shift_x[i])
        for i in ps:
            term = term.mul(shift_p[i])
        out = out + term
    return out
