"""Noncommutative polynomials in the generators u_ij, and the magic representation of Obar_N.

No relation of the quantum group is ever applied: identities here are
identities of formal sums, or of evaluations at classical points.

Binary vectors ``i in {0,1}^N`` index both the points of ``Z_2^N`` and the
cube vertices; ``i`` is encoded little-endian as ``sum(i_n * 2**(n-1))``,
and ``i_n = 1`` means coordinate ``n`` of the vertex is ``-1``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceededError
from .linalg import Scalar

DEFAULT_SYMBOLIC_BUDGET = 5

Monomial = tuple[tuple[int, int], ...]


class NCPolynomial:
    """Formal rational combination of ordered words in the u_ij."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            if c:
                self.terms[tuple(mono)] = Fraction(c)

    @classmethod
    def unit(cls) -> NCPolynomial:
        return cls({(): 1})

    @classmethod
    def gen(cls, i: int, j: int) -> NCPolynomial:
        return cls({((i, j),): 1})

    @classmethod
    def monomial(cls, factors: Iterable[tuple[int, int]], coeff: Scalar = 1) -> NCPolynomial:
        return cls({tuple(factors): coeff})

    def __add__(self, other: NCPolynomial) -> NCPolynomial:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return NCPolynomial(out)

    def __neg__(self):
        return NCPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            out: dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
            return NCPolynomial(out)
        return NCPolynomial({m: other * c for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            word = "".join(f"u{i}{j}" if i < 10 and j < 10 else f"u[{i},{j}]" for i, j in mono)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(word)
            elif c == -1:
                parts.append("-" + word)
            else:
                parts.append(f"{c}*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def nc_sum(polys: Iterable[NCPolynomial]) -> NCPolynomial:
    out: dict[Monomial, Fraction] = {}
    for p in polys:
        for m, c in p.terms.items():
            out[m] = out.get(m, 0) + c
    return NCPolynomial(out)


def evaluate(poly: NCPolynomial, g: Sequence[Sequence[Scalar]]) -> Scalar:
    """Substitute u_ij -> g[i-1][j-1] and sum exactly (commutative evaluation)."""
    total = Fraction(0)
    for mono, c in poly.terms.items():
        v = c
        for i, j in mono:
            v *= g[i - 1][j - 1]
            if not v:
                break
        total += v
    return total.numerator if total.denominator == 1 else total


# --- Fourier transform on Z_2^N -------------------------------------------

def binary_vectors(N: int) -> list[tuple[int, ...]]:
    """All of {0,1}^N in little-endian encoding order."""
    return [tuple((x >> n) & 1 for n in range(N)) for x in range(2 ** N)]


def encode_binary(v: Sequence[int]) -> int:
    return sum(b << n for n, b in enumerate(v))


def _dot2(i: Sequence[int], j: Sequence[int]) -> int:
    return sum(a & b for a, b in zip(i, j)) & 1


class GroupAlgElement:
    """Element of the group algebra of Z_2^N, keyed by binary exponent vectors."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        self.N = N
        self.terms = {tuple(k): Fraction(v) for k, v in (terms or {}).items() if v}
        for k in self.terms:
            if len(k) != N or any(x not in (0, 1) for x in k):
                raise ValueError(f"exponent {k} is not a binary vector of length {N}")

    @classmethod
    def basis(cls, exps: Sequence[int]) -> GroupAlgElement:
        return cls(len(exps), {tuple(exps): 1})

    def __add__(self, other: GroupAlgElement) -> GroupAlgElement:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgElement(self.N, out)

    def __mul__(self, other):
        if isinstance(other, GroupAlgElement):
            out: dict[tuple[int, ...], Fraction] = {}
            for a, x in self.terms.items():
                for b, y in other.terms.items():
                    k = tuple(p ^ q for p, q in zip(a, b))
                    out[k] = out.get(k, 0) + x * y
            return GroupAlgElement(self.N, out)
        return GroupAlgElement(self.N, {k: other * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupAlgElement):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    def __repr__(self):
        return f"GroupAlgElement({self.N}, {self.terms})"


def fourier_alpha(point: Sequence[int], N: int) -> GroupAlgElement:
    """δ_{g^i} -> 2^{-N} Σ_j (-1)^{<i,j>} g^j."""
    if len(point) != N:
        raise ValueError("point must have length N")
    c = Fraction(1, 2 ** N)
    return GroupAlgElement(N, {j: -c if _dot2(point, j) else c for j in binary_vectors(N)})


def fourier_beta(exps: Sequence[int], N: int) -> dict[tuple[int, ...], int]:
    """g^i -> Σ_j (-1)^{<i,j>} δ_{g^j}, as a coefficient map over points."""
    if len(exps) != N:
        raise ValueError("exponent vector must have length N")
    return {j: -1 if _dot2(exps, j) else 1 for j in binary_vectors(N)}


def alpha_apply(f: Mapping[tuple[int, ...], Scalar], N: int) -> GroupAlgElement:
    out = GroupAlgElement(N)
    for pt, v in f.items():
        if v:
            out = out + v * fourier_alpha(pt, N)
    return out


def beta_apply(x: GroupAlgElement) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for exps, v in x.terms.items():
        for pt, s in fourier_beta(exps, x.N).items():
            out[pt] = out.get(pt, 0) + s * v
    return {k: v for k, v in out.items() if v}


# --- magic unitary and its character ---------------------------------------

def _check_budget(N: int, budget: int | None):
    if N < 1:
        raise ValueError("N must be positive")
    if budget is not None and N > budget:
        raise BudgetExceededError(f"symbolic computations are capped at N={budget}, got N={N}")


def magic_unitary_entry(N: int, i: Sequence[int], k: Sequence[int], full: bool = False) -> NCPolynomial:
    """Entry w_{i,k} of the magic unitary of Obar_N on the 2^N cube vertices.

    With ``full=True`` the sum runs over every ``b in {1..N}^N`` with the
    ``N^{-#(0 in j)}`` weight.  Otherwise ``b`` only ranges over the
    positions where ``j = 1``: at a position with ``j_x = 0`` the factor
    ``u^0`` is the unit and ``b_x`` does not enter the sign
    ``(-1)^{<i + k_b, j>}``, so the ``N`` choices of ``b_x`` give equal terms
    that cancel one factor ``1/N``.
    """
    if len(i) != N or len(k) != N:
        raise ValueError("i and k must have length N")
    out: dict[Monomial, Fraction] = {}
    scale = Fraction(1, 2 ** N)
    for j in binary_vectors(N):
        support = [x for x in range(N) if j[x]]
        base = _dot2(i, j)
        if full:
            weight = scale / Fraction(N) ** (N - len(support))
            choices = product(range(1, N + 1), repeat=N)
        else:
            weight = scale
            choices = product(range(1, N + 1), repeat=len(support))
        for b in choices:
            if full:
                cols = [b[x] for x in support]
            else:
                cols = list(b)
            sign = base
            for c in cols:
                sign ^= k[c - 1]
            mono = tuple((x + 1, c) for x, c in zip(support, cols))
            out[mono] = out.get(mono, 0) + (-weight if sign else weight)
    return NCPolynomial(out)


def magic_unitary(N: int, full: bool = False,
                  budget: int | None = DEFAULT_SYMBOLIC_BUDGET) -> list[list[NCPolynomial]]:
    _check_budget(N, budget)
    pts = binary_vectors(N)
    return [[magic_unitary_entry(N, i, k, full) for k in pts] for i in pts]


def evaluate_matrix(w: Sequence[Sequence[NCPolynomial]], g) -> list[list[Scalar]]:
    return [[evaluate(x, g) for x in row] for row in w]


def _chi_raw(N: int) -> NCPolynomial:
    # Σ_j Σ_b N^{-#(0 in j)} Π_p [j_p ≡ Σ_{b_x=p} j_x] u_{1b_1}^{j_1} ... u_{Nb_N}^{j_N}
    out: dict[Monomial, Fraction] = {}
    for j in binary_vectors(N):
        w = Fraction(1, N ** (N - sum(j)))
        for b in product(range(1, N + 1), repeat=N):
            counts = [0] * N
            for x in range(N):
                if j[x]:
                    counts[b[x] - 1] += 1
            if all((counts[p] - j[p]) % 2 == 0 for p in range(N)):
                mono = tuple((x + 1, b[x]) for x in range(N) if j[x])
                out[mono] = out.get(mono, 0) + w
    return NCPolynomial(out)


def _chi_grouped(N: int) -> list[NCPolynomial]:
    # χ_r = N^{r-N} Σ_{|A|=r} Σ_{b<A} Π_{a in A} u_{a b_a}, b over all maps [N] -> [N]
    parts = []
    for r in range(N + 1):
        out: dict[Monomial, Fraction] = {}
        w = Fraction(1, N ** (N - r))
        for A in combinations(range(1, N + 1), r):
            inA = set(A)
            for b in product(range(1, N + 1), repeat=N):
                hits = [0] * (N + 1)
                for a in A:
                    hits[b[a - 1]] += 1
                if all(hits[p] % 2 == (p in inA) for p in range(1, N + 1)):
                    mono = tuple((a, b[a - 1]) for a in A)
                    out[mono] = out.get(mono, 0) + w
        parts.append(NCPolynomial(out))
    return parts


def _restricted_perms(A: Sequence[int]):
    # σ in S_N fixing the complement of A, given by its values on A
    for img in permutations(A):
        yield dict(zip(A, img))


def _chi_final(N: int) -> list[NCPolynomial]:
    parts = []
    for r in range(N + 1):
        out: dict[Monomial, Fraction] = {}
        for A in combinations(range(1, N + 1), r):
            for sigma in _restricted_perms(A):
                mono = tuple((a, sigma[a]) for a in A)
                out[mono] = out.get(mono, 0) + 1
        parts.append(NCPolynomial(out))
    return parts


def _perm_sign(seq: Sequence[int]) -> int:
    s = 1
    for x in range(len(seq)):
        for y in range(x + 1, len(seq)):
            if seq[x] > seq[y]:
                s = -s
    return s


def magic_character(N: int, form: str = "final",
                    budget: int | None = DEFAULT_SYMBOLIC_BUDGET):
    """Main character of the magic representation of Obar_N.

    ``form`` is one of ``raw`` (Fourier-sum form), ``grouped`` (split by
    ``r = |A|`` with the ``b < A`` condition), ``final`` (sum over subsets
    and permutations) or ``trace`` (Σ_i w_ii from the magic unitary).
    ``grouped`` and ``final`` return the list ``[χ_0, ..., χ_N]``.
    """
    _check_budget(N, budget)
    if form == "raw":
        return _chi_raw(N)
    if form == "grouped":
        return _chi_grouped(N)
    if form == "final":
        return _chi_final(N)
    if form == "trace":
        return nc_sum(magic_unitary_entry(N, i, i) for i in binary_vectors(N))
    raise ValueError(f"unknown form {form!r}")


def antisym_character(N: int, r: int) -> NCPolynomial:
    """Character of the r-th antisymmetric representation of O_N: signed sum over S_N^A."""
    if not 0 <= r <= N:
        raise ValueError(f"r must lie in 0..{N}")
    out: dict[Monomial, Fraction] = {}
    for A in combinations(range(1, N + 1), r):
        for sigma in _restricted_perms(A):
            mono = tuple((a, sigma[a]) for a in A)
            out[mono] = out.get(mono, 0) + _perm_sign([sigma[a] for a in A])
    return NCPolynomial(out)


def strip_signs(poly: NCPolynomial) -> NCPolynomial:
    """Drop the sign of every coefficient (each monomial here occurs once, with ±1)."""
    if any(abs(c) != 1 for c in poly.terms.values()):
        raise ValueError("sign stripping expects coefficients ±1")
    return NCPolynomial({m: 1 for m in poly.terms})
