"""Partition vectors, their twisted versions, and fixed-point dimensions.

For a category ``D`` and ``N``, the fixed vectors of ``u^{⊗m}`` for the
corresponding quizzy quantum group are spanned by ``xi_vector(pi, N)`` (or
``xi_twisted`` at q = -1), ``pi in D(m)``.  Hom-space questions are always
reduced to fixed vectors on ``k + l`` legs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterable, Sequence

from . import partitions as P
from .errors import BudgetExceededError, SingularGramError, SingularMatrixError
from .linalg import ExactMatrix, Scalar, SparseTensorVector, _Echelon, _integer_row, invert
from .partitions import SetPartition

DEFAULT_MAX_INDEX_SPACE = 10**8

# quantum group name -> (category, twisted)
GROUPS = {
    "S_N": ("P", False),
    "S_N+": ("NC", False),
    "O_N": ("P2", False),
    "O_N+": ("NC2", False),
    "Obar_N": ("P2", True),
    "H_N": ("Peven", False),
    "H_N+": ("NCeven", False),
    "B_N": ("P12", False),
    "B_N+": ("NC12", False),
    "O_N*": ("P2star", False),
    "Obar_N*": ("P2star", True),
    "H_N*": ("Pevenstar", False),
}
ALIASES = {
    "SN": "S_N", "SNplus": "S_N+", "symmetric": "S_N",
    "ON": "O_N", "ONplus": "O_N+", "orthogonal": "O_N", "ObarN": "Obar_N",
    "HN": "H_N", "HNplus": "H_N+", "hyperoctahedral": "H_N",
    "BN": "B_N", "BNplus": "B_N+", "ONstar": "O_N*", "ObarNstar": "Obar_N*",
    "HNstar": "H_N*",
}


def group_name(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in GROUPS:
        raise ValueError(f"unknown quantum group {name!r}; known: {', '.join(GROUPS)}")
    return name


@dataclass(frozen=True)
class QuizzySpec:
    category: str
    twisted: bool = False
    N: int = 5
    experimental: bool = False

    def __post_init__(self):
        P.check_category(self.category, self.experimental)
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.twisted and not P.is_even_category(self.category):
            raise ValueError(f"twisting needs an even category, {self.category} is not")

    @classmethod
    def for_group(cls, name: str, N: int, experimental: bool = False) -> QuizzySpec:
        cat, tw = GROUPS[group_name(name)]
        return cls(cat, tw, N, experimental)

    def at(self, N: int) -> QuizzySpec:
        return QuizzySpec(self.category, self.twisted, N, self.experimental)

    def partitions(self, m: int) -> list[SetPartition]:
        return P.enumerate_category(self.category, m, self.experimental)

    def vector(self, pi: SetPartition) -> SparseTensorVector:
        return xi_twisted(pi, self.N) if self.twisted else xi_vector(pi, self.N)

    def __str__(self):
        return f"{'twisted ' if self.twisted else ''}{self.category} (N={self.N})"


def check_budget(N: int, m: int, max_index_space: int | None = DEFAULT_MAX_INDEX_SPACE):
    if max_index_space is not None and N ** m > max_index_space:
        raise BudgetExceededError(
            f"index space N^m = {N}^{m} = {N ** m} exceeds budget {max_index_space}"
        )


def _block_weights(pi: SetPartition, N: int) -> list[int]:
    return [sum(N ** (p - 1) for p in b) for b in pi.blocks]


@lru_cache(maxsize=4096)
def xi_vector(pi: SetPartition, N: int) -> SparseTensorVector:
    """Indicator of the multi-indices constant on every block of ``pi``."""
    w = _block_weights(pi, N)
    entries = {sum(v * x for v, x in zip(vals, w)): 1
               for vals in product(range(N), repeat=len(w))}
    return SparseTensorVector(N, pi.m, entries)


def _coarsen(pi: SetPartition, vals: Sequence[int]) -> SetPartition:
    merged: dict[int, list[int]] = {}
    for b, v in zip(pi.blocks, vals):
        merged.setdefault(v, []).extend(b)
    return SetPartition(pi.m, tuple(tuple(x) for x in merged.values()))


def _rgs_of(vals: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(v, len(seen)) for v in vals)


@lru_cache(maxsize=4096)
def xi_twisted(pi: SetPartition, N: int) -> SparseTensorVector:
    """Signed partition vector: entry ``signature(kernel(i))`` on the support of ``xi_pi``."""
    if any(len(b) % 2 for b in pi.blocks):
        raise ValueError(f"twisted vectors need an even partition, got {pi}")
    w = _block_weights(pi, N)
    signs: dict[tuple[int, ...], int] = {}
    entries = {}
    for vals in product(range(N), repeat=len(w)):
        key = _rgs_of(vals)
        if key not in signs:
            # kernel(i) is the coarsening of pi by equal block values
            signs[key] = P.signature(_coarsen(pi, key))
        entries[sum(v * x for v, x in zip(vals, w))] = signs[key]
    return SparseTensorVector(N, pi.m, entries)


def mobius_twist_coefficients(pi: SetPartition, lattice: str = "Peven") -> dict[SetPartition, int]:
    """Coefficients ``c_sigma = sum_{sigma<=tau<=pi} eps(tau) mu(sigma, tau)``."""
    mu = P.Mobius(lattice)
    coeffs: dict[SetPartition, int] = {}
    taus = [t for t in P.coarsenings(pi)]
    for tau in taus:
        eps = P.signature(tau)
        for sigma in P.coarsenings(tau):
            c = eps * mu(sigma, tau)
            if c:
                coeffs[sigma] = coeffs.get(sigma, 0) + c
    return {s: c for s, c in coeffs.items() if c}


def twist_via_mobius(pi: SetPartition, N: int) -> SparseTensorVector:
    """The twisted vector rebuilt as a Möbius combination of untwisted ones."""
    if any(len(b) % 2 for b in pi.blocks):
        raise ValueError(f"twisting needs an even partition, got {pi}")
    out = SparseTensorVector(N, pi.m)
    for sigma, c in mobius_twist_coefficients(pi).items():
        out = out + c * xi_vector(sigma, N)
    return out


# --- constrained subspaces -------------------------------------------------

@dataclass(frozen=True)
class LegConstraint:
    """Either two legs forced equal, or a run of consecutive legs antisymmetrized."""

    kind: str
    legs: tuple[int, ...]

    def __post_init__(self):
        if self.kind == "diagonal":
            if len(self.legs) != 2 or self.legs[0] == self.legs[1]:
                raise ValueError("a diagonal constraint ties exactly two distinct legs")
        elif self.kind == "antisymmetric":
            legs = self.legs
            if not legs or list(legs) != list(range(legs[0], legs[0] + len(legs))):
                raise ValueError("an antisymmetric block is a nonempty run of consecutive legs")
        else:
            raise ValueError(f"unknown constraint kind {self.kind!r}")

    @classmethod
    def diagonal(cls, a: int, b: int) -> LegConstraint:
        return cls("diagonal", (a, b))

    @classmethod
    def antisymmetric(cls, legs: Iterable[int]) -> LegConstraint:
        return cls("antisymmetric", tuple(legs))


def validate_constraints(m: int, constraints: Sequence[LegConstraint]):
    used: set[int] = set()
    for c in constraints:
        for leg in c.legs:
            if not 1 <= leg <= m:
                raise ValueError(f"leg {leg} outside 1..{m}")
            if leg in used:
                raise ValueError(f"leg {leg} appears in two constraints")
            used.add(leg)


def _perm_sign(seq: Sequence[int]) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def compress(vec: SparseTensorVector, constraints: Sequence[LegConstraint]) -> dict[int, Scalar]:
    """Coordinates of ``P_V vec`` under a linear map that is injective on ``V``.

    Diagonal constraints keep the entries whose tied legs agree.  An
    antisymmetric block keeps only strictly increasing index runs, collecting
    ``sign * value`` from every rearrangement; this drops the ``1/r!`` of the
    projector, which is harmless for ranks.
    """
    N = vec.N
    diag = [(c.legs[0] - 1, c.legs[1] - 1) for c in constraints if c.kind == "diagonal"]
    blocks = [tuple(x - 1 for x in c.legs) for c in constraints
              if c.kind == "antisymmetric" and len(c.legs) > 1]
    powers = [N ** p for p in range(vec.m)]
    out: dict[int, Scalar] = {}
    for code, val in vec.entries.items():
        digits = []
        x = code
        for _ in range(vec.m):
            x, r = divmod(x, N)
            digits.append(r)
        if any(digits[a] != digits[b] for a, b in diag):
            continue
        sign = 1
        ok = True
        for legs in blocks:
            run = [digits[p] for p in legs]
            if len(set(run)) < len(run):
                ok = False
                break
            sign *= _perm_sign(run)
            for p, d in zip(legs, sorted(run)):
                digits[p] = d
        if not ok:
            continue
        key = sum(d * w for d, w in zip(digits, powers))
        out[key] = out.get(key, 0) + sign * val
    return {k: v for k, v in out.items() if v}


def project(vec: SparseTensorVector, constraints: Sequence[LegConstraint]) -> SparseTensorVector:
    """Orthogonal projection onto the constrained subspace ``V``.

    Both kinds of ``V`` are invariant under ``u^{⊗m}``: the diagonal span is
    invariant because ``u^{⊗2}(e_i⊗e_i) = sum_k u_ki^2 e_k⊗e_k`` for the
    groups containing ``H_N``, and the antisymmetrizer is built from leg
    permutations, which commute with any ``g^{⊗m}``.  So ``P_V`` is an
    intertwiner and ``P_V Fix = Fix ∩ V``.
    """
    validate_constraints(vec.m, constraints)
    N = vec.N
    comp = compress(vec, constraints)
    blocks = [tuple(x - 1 for x in c.legs) for c in constraints
              if c.kind == "antisymmetric" and len(c.legs) > 1]
    scale = Fraction(1)
    for legs in blocks:
        scale /= factorial(len(legs))
    out: dict[int, Scalar] = {}
    for code, val in comp.items():
        digits = []
        x = code
        for _ in range(vec.m):
            x, r = divmod(x, N)
            digits.append(r)
        expanded = [(tuple(digits), 1)]
        for legs in blocks:
            nxt = []
            for d, s in expanded:
                run = [d[p] for p in legs]
                for perm in permutations(range(len(legs))):
                    dd = list(d)
                    for p, q in zip(legs, perm):
                        dd[p] = run[q]
                    nxt.append((tuple(dd), s * _perm_sign(perm)))
            expanded = nxt
        for d, s in expanded:
            key = sum(v * N ** p for p, v in enumerate(d))
            out[key] = out.get(key, 0) + s * val * scale
    return SparseTensorVector(N, vec.m, out)


# --- dimensions ------------------------------------------------------------

def fix_dim(spec: QuizzySpec, k: int,
            max_index_space: int | None = DEFAULT_MAX_INDEX_SPACE) -> int:
    """dim Fix(u^{⊗k}) = rank of the partition vectors of ``D(k)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1
    parts = spec.partitions(k)
    if not parts:
        return 0
    check_budget(spec.N, k, max_index_space)
    ech = _Echelon()
    for pi in parts:
        ech.add(_integer_row(spec.vector(pi).entries))
    return ech.rank


def constrained_fix_dim(spec: QuizzySpec, m: int, constraints: Sequence[LegConstraint],
                        max_index_space: int | None = DEFAULT_MAX_INDEX_SPACE) -> int:
    """dim( span{xi_pi : pi in D(m)} ∩ V ) computed as rank{P_V xi_pi}."""
    validate_constraints(m, constraints)
    if m == 0:
        return 1
    parts = spec.partitions(m)
    if not parts:
        return 0
    check_budget(spec.N, m, max_index_space)
    ech = _Echelon()
    for pi in parts:
        row = compress(spec.vector(pi), constraints)
        if row:
            ech.add(_integer_row(row))
    return ech.rank


def word_layout(word: str) -> tuple[int, list[LegConstraint]]:
    """Legs and diagonal constraints for a word in ``p``/``u``.

    Each ``p`` takes two adjacent legs tied by a diagonal constraint, in word
    order; ``u`` takes one leg.
    """
    m = 0
    constraints = []
    for letter in word:
        if letter == "u":
            m += 1
        elif letter == "p":
            constraints.append(LegConstraint.diagonal(m + 1, m + 2))
            m += 2
        else:
            raise ValueError(f"words are over 'p' and 'u', got {letter!r}")
    return m, constraints


def _require_h_type(spec: QuizzySpec):
    if spec.category not in ("Peven", "NCeven", "Pevenstar"):
        raise ValueError("p ⊂ u⊗u needs H_N ⊂ G, i.e. a category inside Peven")


def word_moment(word: str, spec: QuizzySpec,
                max_index_space: int | None = DEFAULT_MAX_INDEX_SPACE) -> int:
    """∫ of the ordered character product, e.g. ``"upup"`` -> ∫(χ_u χ_p)^2."""
    if not word:
        raise ValueError("empty word")
    _require_h_type(spec)
    m, cons = word_layout(word)
    return constrained_fix_dim(spec, m, cons, max_index_space)


def _sudoku_spec(N: int, liberated: bool) -> QuizzySpec:
    return QuizzySpec("NCeven" if liberated else "Peven", False, N)


def sudoku_words(k: int) -> list[str]:
    return ["".join(w) for w in product("pu", repeat=k)]


def sudoku_breakdown(k: int, N: int, liberated: bool,
                     max_index_space: int | None = DEFAULT_MAX_INDEX_SPACE) -> dict[str, int]:
    """Moment of every word in ``{p,u}^k``."""
    if k < 1:
        raise ValueError("k must be positive")
    spec = _sudoku_spec(N, liberated)
    return {w: word_moment(w, spec, max_index_space) for w in sudoku_words(k)}


def sudoku_moment(k: int, N: int, liberated: bool,
                  max_index_space: int | None = DEFAULT_MAX_INDEX_SPACE) -> int:
    """Analytic k-orbitals of H_N (or H_N^+) acting on the 2N segment endpoints."""
    return sum(sudoku_breakdown(k, N, liberated, max_index_space).values())


def exterior_layout(ranks: Sequence[int]) -> tuple[int, list[LegConstraint]]:
    m = 0
    cons = []
    for r in ranks:
        if r > 1:
            cons.append(LegConstraint.antisymmetric(range(m + 1, m + r + 1)))
        m += r
    return m, cons


def exterior_word_moment(ranks: Sequence[int], N: int,
                         max_index_space: int | None = DEFAULT_MAX_INDEX_SPACE,
                         category: str = "P2", twisted: bool = False) -> int:
    """dim Fix(Λ^{r_1} ⊗ ... ⊗ Λ^{r_k}), for O_N by default."""
    if any(r < 0 for r in ranks):
        raise ValueError("ranks must be nonnegative")
    if any(r > N for r in ranks):
        return 0
    m, cons = exterior_layout(ranks)
    return constrained_fix_dim(QuizzySpec(category, twisted, N), m, cons, max_index_space)


def exterior_orbital_count(k: int, N: int,
                           max_index_space: int | None = DEFAULT_MAX_INDEX_SPACE,
                           category: str = "P2", twisted: bool = False) -> int:
    """Sum over all rank words in ``{0..N}^k``.

    With the default O_N category this is the number of analytic k-orbitals
    of Obar_N on the cube; with ``Peven`` it counts those of H_N.
    """
    return sum(exterior_word_moment(w, N, max_index_space, category, twisted)
               for w in product(range(N + 1), repeat=k))


# --- Gram and Weingarten ---------------------------------------------------

def gram_matrix(spec_or_cat: QuizzySpec | str, m: int, N: int | None = None,
                method: str = "formula") -> tuple[ExactMatrix, list[SetPartition]]:
    """Gram matrix of the partition vectors of ``D(m)``.

    ``method="formula"`` uses ``N^{|pi ∨ sigma|}``; ``method="dot"`` takes
    exact dot products of the (twisted, if requested) vectors.  Twisting
    leaves the Gram matrix unchanged since the signs square to one.
    """
    spec = spec_or_cat if isinstance(spec_or_cat, QuizzySpec) else QuizzySpec(spec_or_cat, False, N)
    if N is not None and N != spec.N:
        spec = spec.at(N)
    parts = spec.partitions(m)
    if not parts:
        raise ValueError(f"{spec.category}({m}) is empty")
    if method == "formula":
        rows = [[spec.N ** len(P.join_coarsen(a, b)) for b in parts] for a in parts]
    elif method == "dot":
        vecs = [spec.vector(p) for p in parts]
        rows = [[a.dot(b) for b in vecs] for a in vecs]
    else:
        raise ValueError(f"unknown method {method!r}")
    return ExactMatrix(rows), parts


def minimal_weingarten_n(spec: QuizzySpec, m: int, start: int = 1) -> int:
    """Smallest N >= start at which the Gram matrix of ``D(m)`` is invertible."""
    n = max(start, 1)
    while True:
        g, parts = gram_matrix(spec.at(n), m)
        if g.rank() == len(parts):
            return n
        n += 1


@dataclass
class WeingartenData:
    spec: QuizzySpec
    m: int
    partitions: list[SetPartition]
    gram: ExactMatrix
    weingarten: ExactMatrix
    index: dict[SetPartition, int] = field(default_factory=dict)


_WG_CACHE: dict[tuple[QuizzySpec, int], WeingartenData] = {}


def weingarten_data(spec: QuizzySpec, m: int) -> WeingartenData:
    key = (spec, m)
    if key not in _WG_CACHE:
        gram, parts = gram_matrix(spec, m)
        try:
            wg = invert(gram)
        except SingularMatrixError:
            n = minimal_weingarten_n(spec, m, spec.N + 1)
            raise SingularGramError(
                f"Gram matrix of {spec.category}({m}) is singular at N={spec.N}; "
                f"the smallest N with an invertible Gram matrix is {n}", n) from None
        _WG_CACHE[key] = WeingartenData(spec, m, parts, gram, wg,
                                        {p: i for i, p in enumerate(parts)})
    return _WG_CACHE[key]


def _delta(pi: SetPartition, idx: Sequence[int]) -> bool:
    return all(len({idx[p - 1] for p in b}) == 1 for b in pi.blocks)


def weingarten_integrate(spec: QuizzySpec, a: Sequence[int], b: Sequence[int]) -> Fraction:
    """Haar integral of ``u_{a_1 b_1} ... u_{a_m b_m}`` via the Weingarten matrix."""
    if len(a) != len(b):
        raise ValueError("row and column index tuples differ in length")
    m = len(a)
    if m == 0:
        return Fraction(1)
    if any(not 1 <= x <= spec.N for x in list(a) + list(b)):
        raise ValueError(f"indices must lie in 1..{spec.N}")
    parts = spec.partitions(m)
    if not parts:
        return Fraction(0)
    data = weingarten_data(spec, m)

    def weight(pi, idx):
        if not _delta(pi, idx):
            return 0
        return P.signature(P.kernel(idx)) if spec.twisted else 1

    wa = [weight(p, a) for p in data.partitions]
    wb = [weight(p, b) for p in data.partitions]
    total = Fraction(0)
    W = data.weingarten.rows
    for i, x in enumerate(wa):
        if x:
            row = W[i]
            for j, y in enumerate(wb):
                if y:
                    total += x * y * row[j]
    return total


def weingarten_constrained_dim(spec: QuizzySpec, m: int,
                               constraints: Sequence[LegConstraint]) -> Fraction:
    """tr(P_Fix P_V) from the Weingarten matrix; equals dim(Fix ∩ V).

    For untwisted specs with only diagonal constraints the overlaps are
    ``N^{|pi ∨ sigma ∨ c|}`` with ``c`` the partition tying the constrained
    legs, so no tensor is ever built.
    """
    validate_constraints(m, constraints)
    if m == 0:
        return Fraction(1)
    parts = spec.partitions(m)
    if not parts:
        return Fraction(0)
    data = weingarten_data(spec, m)
    n = len(parts)
    if not spec.twisted and all(c.kind == "diagonal" for c in constraints):
        tie = SetPartition.from_blocks(
            [c.legs for c in constraints]
            + [(p,) for p in range(1, m + 1) if not any(p in c.legs for c in constraints)], m)
        overlap = [[spec.N ** len(P.join_many([a, b, tie])) for b in parts] for a in parts]
    else:
        proj = [project(spec.vector(p), constraints) for p in parts]
        overlap = [[x.dot(y) for y in proj] for x in proj]
    W = data.weingarten.rows
    return sum((W[i][j] * overlap[j][i] for i in range(n) for j in range(n)), Fraction(0))


def weingarten_word_moment(word: str, spec: QuizzySpec) -> Fraction:
    _require_h_type(spec)
    m, cons = word_layout(word)
    return weingarten_constrained_dim(spec, m, cons)


def weingarten_moment_sum(spec: QuizzySpec, k: int) -> Fraction:
    """sum_{i_1..i_k} ∫ u_{i_1 i_1} ... u_{i_k i_k}, by explicit index enumeration."""
    total = Fraction(0)
    for idx in product(range(1, spec.N + 1), repeat=k):
        total += weingarten_integrate(spec, idx, idx)
    return total


# --- liberation level ------------------------------------------------------

@dataclass
class LevelReport:
    inner: QuizzySpec
    outer: QuizzySpec
    level: int | None
    inner_dims: list[int]
    outer_dims: list[int]
    cap: int


def liberation_level(inner: QuizzySpec, outer: QuizzySpec, cap: int = 6,
                     max_index_space: int | None = DEFAULT_MAX_INDEX_SPACE) -> LevelReport:
    """First tensor power where Fix shrinks passing from ``inner`` to ``outer``."""
    if inner.N != outer.N:
        raise ValueError("both quantum groups must use the same N")
    di, do = [], []
    level = None
    for k in range(cap + 1):
        a = fix_dim(inner, k, max_index_space)
        b = fix_dim(outer, k, max_index_space)
        di.append(a)
        do.append(b)
        if a > b:
            level = k
            break
    return LevelReport(inner, outer, level, di, do, cap)
