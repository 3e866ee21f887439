"""Generator families with closed-form transforms and block classification.

Three families are covered:

* single Pauli strings (involutory, spectrum {±1});
* normalized sums of mutually anticommuting Pauli strings (also involutory);
* fermionic excitation generators G = -i(T - T†) with spectrum {0, ±1},
  together with the projectors onto their eigenspaces and a rule-based
  classifier that predicts which projected blocks of a fragment
  H_α = T_α + T_α† vanish, hence how many nested commutators its exact
  transform needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from .adjoint import nested_adjoints, solve_vandermonde
from .errors import InvariantViolation
from .fermion import FermiString, FermiSum
from .pauli import PauliString, PauliSum, _I_POWERS

SINGLE_PAULI = "single_pauli"
ANTICOMMUTING_SUM = "anticommuting_sum"

# family labels for projected blocks of H_α between G eigenspaces,
# in the fixed order used by reports
BLOCK_FAMILIES = ("P±HP±", "P±HP∓", "P±HP0", "P0HP±", "P0HP0")

_FAMILY_OF_BLOCK = {
    ("+", "+"): "P±HP±",
    ("-", "-"): "P±HP±",
    ("+", "-"): "P±HP∓",
    ("-", "+"): "P±HP∓",
    ("+", "0"): "P±HP0",
    ("-", "0"): "P±HP0",
    ("0", "+"): "P0HP±",
    ("0", "-"): "P0HP±",
    ("0", "0"): "P0HP0",
}


class InvolutoryGenerator:
    """A Hermitian Pauli-sum generator squaring to the identity."""

    __slots__ = ("body", "kind", "weights")

    def __init__(self, body: PauliSum, kind: str, weights: Tuple[float, ...]):
        self.body = body
        self.kind = kind
        self.weights = weights
        self._validate()

    @classmethod
    def single_pauli(cls, body: PauliSum | PauliString | str) -> "InvolutoryGenerator":
        if isinstance(body, str):
            body = PauliSum.from_label(body)
        elif isinstance(body, PauliString):
            body = PauliSum.from_terms(body.n_qubits, [(1.0, body)])
        if len(body) != 1:
            raise InvariantViolation("single-Pauli generator must hold one string")
        (_, coeff), = body.items()
        return cls(body, SINGLE_PAULI, (float(coeff.real),))

    @classmethod
    def anticommuting_sum(cls, body: PauliSum, normalize: bool = False) -> "InvolutoryGenerator":
        """Sum of mutually anticommuting strings; requires sum d_j^2 = 1
        (pass normalize=True to rescale)."""
        if normalize:
            norm = body.frobenius_norm()
            if norm == 0.0:
                raise InvariantViolation("cannot normalize the zero operator")
            body = body * (1.0 / norm)
        weights = tuple(float(c.real) for _, c in body.items())
        return cls(body, ANTICOMMUTING_SUM, weights)

    def _validate(self) -> None:
        if not self.body.is_hermitian(1e-12):
            raise InvariantViolation("involutory generator must be Hermitian")
        if self.kind == ANTICOMMUTING_SUM:
            strings = [PauliString(self.body.n_qubits, x, z) for (x, z), _ in self.body.items()]
            for i, a in enumerate(strings):
                for b in strings[i + 1:]:
                    if a.commutes(b):
                        raise InvariantViolation(
                            f"constituent strings {a!r} and {b!r} do not anticommute"
                        )
        square = self.body.mul(self.body)
        if not square.approx_equal(PauliSum.identity(self.body.n_qubits), 1e-12):
            raise InvariantViolation("generator does not square to the identity")

    @property
    def n_qubits(self) -> int:
        return self.body.n_qubits

    @property
    def eigenvalues(self) -> Tuple[float, float]:
        return (-1.0, 1.0)


def pauli_generator_transform(g: InvolutoryGenerator, h: PauliSum, theta: float) -> PauliSum:
    """Exact conjugation of H by exp(iθG) for an involutory Pauli generator.

    A single Pauli string commutes or anticommutes with every term of H, so
    the sum is split term-wise: commuting terms pass through and each
    anticommuting term needs one string product,

        P' = cos(2θ) P + sin(2θ) i G P.

    A sum of anticommuting strings admits no such per-term split (a term
    must anticommute with every constituent at once), so the full
    two-commutator form H + sin(2θ)/2 [iG,H] + sin²(θ)/2 [iG,[iG,H]] is
    used instead.
    """
    if g.n_qubits != h.n_qubits:
        raise InvariantViolation("generator and Hamiltonian qubit counts differ")
    if g.kind == ANTICOMMUTING_SUM:
        ad1 = g.body.commutator(h) * 1j
        ad2 = g.body.commutator(ad1) * 1j
        return h + ad1 * (0.5 * math.sin(2 * theta)) + ad2 * (0.5 * math.sin(theta) ** 2)

    ((gx, gz), gc), = g.body.items()
    qg = (gx & gz).bit_count()
    cos2, sin2 = math.cos(2 * theta), math.sin(2 * theta)
    out = PauliSum.zero(h.n_qubits)
    for (x, z), c in h.items():
        if ((gx & z).bit_count() + (gz & x).bit_count()) % 2 == 0:
            out._add_term((x, z), c)
            continue
        out._add_term((x, z), c * cos2)
        px, pz = gx ^ x, gz ^ z
        q = (qg + (x & z).bit_count() + 2 * (gz & x).bit_count()
             - (px & pz).bit_count() + 1) % 4  # +1 carries the i of iGP
        out._add_term((px, pz), c * gc * sin2 * _I_POWERS[q])
    out._prune()
    return out


class UCCGenerator:
    """G = -i(T - T†) for a fermionic excitation string T.

    The strict form T = a†_A a_B with disjoint A, B is produced by
    build_ucc; the general constructor also accepts strings whose creation
    and annihilation sets overlap (the shared part acts as occupation
    factors).  Both satisfy T² = 0 and T T† T = T, which makes
    P_G = T†T + TT† a projector, G² = P_G, and the spectrum {0, ±1}.
    """

    __slots__ = ("t", "t_dag", "g", "p_plus", "p_minus", "p_zero", "p_g",
                 "creation", "annihilation", "n_orbitals")

    def __init__(self, creation: Sequence[int] | None = None,
                 annihilation: Sequence[int] | None = None,
                 n_orbitals: int | None = None,
                 word: Sequence[Tuple[int, bool]] | None = None):
        if word is None:
            if creation is None or annihilation is None:
                raise InvariantViolation("need either index sets or an operator word")
            # a†_A a_B with both sets taken in increasing order: daggers
            # come out in decreasing index order, a_B ascends
            word = [(a, True) for a in sorted(creation, reverse=True)]
            word += [(b, False) for b in sorted(annihilation)]
        word = [(int(i), bool(d)) for i, d in word]
        creation = tuple(i for i, d in word if d)
        annihilation = tuple(i for i, d in word if not d)
        if not creation or not annihilation:
            raise InvariantViolation("excitation needs both creation and annihilation indices")
        if len(set(creation)) != len(creation) or len(set(annihilation)) != len(annihilation):
            raise InvariantViolation("repeated index within one side of the excitation")
        if n_orbitals is None:
            n_orbitals = max(creation + annihilation) + 1
        self.creation = creation
        self.annihilation = annihilation
        self.n_orbitals = n_orbitals

        t = FermiSum.from_ops(n_orbitals, [(1.0, word)])
        t_dag = t.dagger()
        if not t.mul(t).is_zero():
            raise InvariantViolation("excitation is not nilpotent (T² != 0)")
        if not t.mul(t_dag).mul(t).approx_equal(t, 1e-12):
            raise InvariantViolation("excitation is not a partial isometry (TT†T != T)")
        g = (t - t_dag) * (-1j)
        if g.is_zero():
            raise InvariantViolation("pure occupation string generates the zero operator")
        p_g = t.mul(t_dag) + t_dag.mul(t)
        half_pg = p_g * 0.5
        self.t = t
        self.t_dag = t_dag
        self.g = g
        self.p_g = p_g
        self.p_plus = half_pg + g * 0.5
        self.p_minus = half_pg - g * 0.5
        self.p_zero = FermiSum.identity(n_orbitals) - p_g

    @classmethod
    def from_word(cls, word: Sequence[Tuple[int, bool]],
                  n_orbitals: int | None = None) -> "UCCGenerator":
        """Build from a literal operator word, keeping its sign."""
        return cls(n_orbitals=n_orbitals, word=word)

    @property
    def eigenvalues(self) -> Tuple[float, float, float]:
        return (-1.0, 0.0, 1.0)

    def t_string(self) -> FermiString:
        key, _ = self.t.single_term()
        return key

    def projector(self, label: str) -> FermiSum:
        return {"+": self.p_plus, "-": self.p_minus, "0": self.p_zero}[label]

    def __repr__(self) -> str:
        ups = " ".join(f"a{p}^" for p in self.creation)
        downs = " ".join(f"a{p}" for p in self.annihilation)
        return f"UCCGenerator({ups} {downs} on {self.n_orbitals} orbitals)"


def build_ucc(a: Iterable[int], b: Iterable[int], n_orbitals: int | None = None) -> UCCGenerator:
    """Strict excitation a†_A a_B with |A| = |B|, A and B disjoint, nonempty."""
    a = tuple(sorted(a))
    b = tuple(sorted(b))
    if not a or not b:
        raise InvariantViolation("index sets must be nonempty")
    if len(a) != len(b):
        raise InvariantViolation("index sets must have equal size")
    if set(a) & set(b):
        raise InvariantViolation("index sets must be disjoint")
    return UCCGenerator(a, b, n_orbitals)


@dataclass(frozen=True)
class BlockPattern:
    """Classifier verdict: vanishing block families, supported gaps, case tag."""

    vanishing: frozenset
    s: Tuple[float, ...]
    case_label: str

    @property
    def n_commutators(self) -> int:
        return len(self.s) - 1

    def vanishing_sorted(self) -> Tuple[str, ...]:
        return tuple(f for f in BLOCK_FAMILIES if f in self.vanishing)


def _as_fermi_string(t_alpha) -> FermiString:
    if isinstance(t_alpha, FermiString):
        return t_alpha
    if isinstance(t_alpha, FermiSum):
        key, _ = t_alpha.single_term()
        return key
    raise TypeError("fragment must be a single fermionic string")


def _restrict(string: FermiString, keep: frozenset) -> FermiString:
    return FermiString(
        tuple(i for i in string.cre if i in keep),
        tuple(i for i in string.ann if i in keep),
    )


def fragment_operator(g: UCCGenerator, t_alpha) -> FermiSum:
    """H_α = T_α + T_α† on the generator's orbital count."""
    string = _as_fermi_string(t_alpha)
    n = max(g.n_orbitals, string.max_index() + 1)
    t = FermiSum(n, {string: 1.0})
    return t + t.dagger()


_FAMILY_BLOCKS = {
    "P±HP±": (("+", "+"), ("-", "-")),
    "P±HP∓": (("+", "-"), ("-", "+")),
    "P±HP0": (("+", "0"), ("-", "0")),
    "P0HP±": (("0", "+"), ("0", "-")),
    "P0HP0": (("0", "0"),),
}


def classify_ucc_pair(g: UCCGenerator, t_alpha) -> BlockPattern:
    """Predict the vanishing projected blocks of H_α = T_α + T_α†.

    Works on the factorization T_α = ±T̃_α L̃_α over shared and unshared
    spin-orbital indices.  The eigenspace projectors of G commute with the
    unshared factor L̃_α, so every block obeys

        P_a H_α P_b = ±(P_a T̃_α P_b · L̃_α + (P_b T̃_α P_a)† · L̃_α†),

    and its vanishing is decided entirely by sandwiches of the small shared
    factor: both sandwiches must vanish, except that an occupation-type
    L̃_α (equal to its dagger) lets the two halves cancel as a pair.  The
    cost is therefore independent of the fragment's unshared content.  Case
    labels follow the live branch of the projector expansion of
    P_G T̃_α P_G - T̃_G T̃_G† / T̃_G† T̃_G on either side, the mixed branches
    requiring an occupation-type unshared generator factor.
    """
    string_a = _as_fermi_string(t_alpha)
    h_alpha = fragment_operator(g, string_a)
    g_op = g.g.embed(h_alpha.n_orbitals)
    if g_op.commutator(h_alpha).is_zero():
        return BlockPattern(
            vanishing=frozenset({"P±HP∓", "P±HP0", "P0HP±"}),
            s=(0.0,),
            case_label="commuting",
        )

    t_g_string = g.t_string()
    shared = t_g_string.indices() & string_a.indices()
    tilde_g = _restrict(t_g_string, shared)
    l_g = _restrict(t_g_string, t_g_string.indices() - shared)
    tilde_a = _restrict(string_a, shared)
    l_a = _restrict(string_a, string_a.indices() - shared)
    number_unshared = l_a.is_number_product()

    # shared factor of the fragment, on the generator's orbital space
    ta_sum = FermiSum(g.n_orbitals, {tilde_a: 1.0})
    sandwiches: Dict[Tuple[str, str], FermiSum] = {}
    for a in ("+", "-", "0"):
        left = g.projector(a).mul(ta_sum)
        for b in ("+", "-", "0"):
            sandwiches[(a, b)] = left.mul(g.projector(b))

    def family_vanishes(family: str) -> bool:
        # block (a,b) of H_α combines the (a,b) and (b,a) sandwiches of T̃_α
        for a, b in _FAMILY_BLOCKS[family]:
            if number_unshared:
                if not (sandwiches[(a, b)] + sandwiches[(b, a)].dagger()).is_zero():
                    return False
            elif not (sandwiches[(a, b)].is_zero() and sandwiches[(b, a)].is_zero()):
                return False
        return True

    vanishing = frozenset(f for f in BLOCK_FAMILIES if family_vanishes(f))
    gaps = set()
    if not {"P±HP±", "P0HP0"} <= vanishing:
        gaps.add(0.0)
    if "P±HP∓" not in vanishing:
        gaps.update((-2.0, 2.0))
    if not {"P±HP0", "P0HP±"} <= vanishing:
        gaps.update((-1.0, 1.0))
    s = tuple(sorted(gaps))

    case_label = "generic_offdiag"
    if not {"P±HP±", "P±HP∓"} <= vanishing:
        dim = max(tilde_g.max_index(), tilde_a.max_index(), 0) + 1
        tg_sum = FermiSum(dim, {tilde_g: 1.0})
        ta_small = FermiSum(dim, {tilde_a: 1.0})
        up = tg_sum.mul(tg_sum.dagger())
        down = tg_sum.dagger().mul(tg_sum)
        number_lg = l_g.is_number_product()
        if number_lg and not up.mul(ta_small).mul(down).is_zero():
            case_label = "i"
        elif number_lg and not down.mul(ta_small).mul(up).is_zero():
            case_label = "ii"
        elif not up.mul(ta_small).mul(up).is_zero():
            case_label = "iii"
        else:
            case_label = "iv"
    return BlockPattern(vanishing, s, case_label)


def ucc_fragment_transform(g: UCCGenerator, t_alpha, theta: float) -> FermiSum:
    """Exact conjugation of H_α = T_α + T_α† by exp(iθG).

    Classifies the pair, solves the Vandermonde system for the supported
    gaps, and evaluates the adjoint polynomial in normal-ordered fermionic
    algebra.
    """
    pattern = classify_ucc_pair(g, t_alpha)
    h_alpha = fragment_operator(g, t_alpha)
    if pattern.s == (0.0,):
        return h_alpha
    n = h_alpha.n_orbitals
    g_op = g.g.embed(n)
    coeffs = solve_vandermonde(pattern.s, theta)
    powers = nested_adjoints(g_op, h_alpha, len(pattern.s) - 1)
    out = powers[0] * coeffs.c[0]
    for m in range(1, len(pattern.s)):
        out = out + powers[m] * coeffs.c[m]
    return out


def pg_sandwich_norms(g: UCCGenerator, t_alpha) -> Dict[Tuple[str, str], float]:
    """Exact norms of every projected block P_a H_α P_b, a, b in {+,-,0}.

    Computed in normal-ordered fermionic algebra; this is the ground truth
    the rule-based classifier is tested against.
    """
    h_alpha = fragment_operator(g, t_alpha)
    n = h_alpha.n_orbitals
    projs = {}
    for label in ("+", "-", "0"):
        p = g.projector(label)
        projs[label] = p.embed(n)
    out: Dict[Tuple[str, str], float] = {}
    for a in ("+", "-", "0"):
        left = projs[a].mul(h_alpha)
        for b in ("+", "-", "0"):
            out[(a, b)] = left.mul(projs[b]).norm()
    return out


def vanishing_families_from_norms(norms: Dict[Tuple[str, str], float],
                                  tol: float = 1e-10) -> frozenset:
    """Collapse per-block norms into the vanishing block-family set."""
    alive = {family: 0.0 for family in BLOCK_FAMILIES}
    for block, value in norms.items():
        family = _FAMILY_OF_BLOCK[block]
        alive[family] = max(alive[family], value)
    return frozenset(f for f, v in alive.items() if v <= tol)
