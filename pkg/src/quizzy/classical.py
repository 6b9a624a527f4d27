"""Brute-force classical ground truth: H_N and S_N, their actions, orbital counts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Iterable, Sequence

from .errors import BudgetExceededError

MAX_GROUP_N = 6
DEFAULT_MAX_TUPLES = 10 ** 6


@dataclass(frozen=True)
class SignedPermutation:
    """Element of H_N acting by e_i -> sign_i * e_{perm(i)}.

    ``perm`` is 1-based: ``perm[i-1]`` is the image of ``i``.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        N = len(self.perm)
        if sorted(self.perm) != list(range(1, N + 1)):
            raise ValueError(f"{self.perm} is not a bijection of 1..{N}")
        if len(self.signs) != N or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be a ±1 vector of length N")

    @property
    def N(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, N: int) -> SignedPermutation:
        return cls(tuple(range(1, N + 1)), (1,) * N)

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        # (self * other)(e_i) = self(other(e_i))
        perm = tuple(self.perm[other.perm[i] - 1] for i in range(self.N))
        signs = tuple(other.signs[i] * self.signs[other.perm[i] - 1] for i in range(self.N))
        return SignedPermutation(perm, signs)

    def inverse(self) -> SignedPermutation:
        perm = [0] * self.N
        signs = [1] * self.N
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p - 1] = i + 1
            signs[p - 1] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    def matrix(self) -> list[list[int]]:
        """Signed permutation matrix with ``g[perm(i)][i] = sign_i`` (1-based)."""
        g = [[0] * self.N for _ in range(self.N)]
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            g[p - 1][i] = s
        return g


def _guard(N: int, limit: int = MAX_GROUP_N):
    if N < 1:
        raise ValueError("N must be positive")
    if N > limit:
        raise BudgetExceededError(f"group enumeration is capped at N={limit}, got N={N}")


def enumerate_hyperoctahedral(N: int, max_n: int = MAX_GROUP_N) -> list[SignedPermutation]:
    _guard(N, max_n)
    return [SignedPermutation(p, s)
            for p in permutations(range(1, N + 1))
            for s in product((1, -1), repeat=N)]


def enumerate_symmetric(N: int, max_n: int = MAX_GROUP_N + 2) -> list[tuple[int, ...]]:
    """S_N as 0-based index arrays acting on range(N)."""
    _guard(N, max_n)
    return list(permutations(range(N)))


@dataclass
class FiniteAction:
    """A finite group acting on ``range(size)``; each element is an index array."""

    size: int
    elements: list[tuple[int, ...]]
    generators: list[tuple[int, ...]] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        ident = tuple(range(self.size))
        if ident not in set(self.elements):
            raise ValueError("action must contain the identity")
        for e in self.elements:
            if len(e) != self.size:
                raise ValueError("element has wrong length")
        if not self.generators:
            self.generators = [e for e in self.elements if e != ident]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_closed_on(self, pairs: Iterable[tuple[int, int]]) -> bool:
        elems = set(self.elements)
        for a, b in pairs:
            x, y = self.elements[a], self.elements[b]
            if tuple(x[y[p]] for p in range(self.size)) not in elems:
                return False
        return True


def segment_endpoint(i: int, sign: int, N: int) -> int:
    """Endpoint (i, +) is point i-1, endpoint (i, -) is point N+i-1."""
    return i - 1 if sign > 0 else N + i - 1


def action_segments(g: SignedPermutation) -> tuple[int, ...]:
    N = g.N
    out = [0] * (2 * N)
    for i in range(1, N + 1):
        for e in (1, -1):
            out[segment_endpoint(i, e, N)] = segment_endpoint(g.perm[i - 1], e * g.signs[i - 1], N)
    return tuple(out)


def cube_vertex(code: int, N: int) -> tuple[int, ...]:
    """Vertex in {±1}^N from its little-endian binary code (bit 1 means -1)."""
    return tuple(-1 if (code >> n) & 1 else 1 for n in range(N))


def cube_code(x: Sequence[int]) -> int:
    return sum(1 << n for n, v in enumerate(x) if v < 0)


def action_cube(g: SignedPermutation) -> tuple[int, ...]:
    N = g.N
    out = []
    for code in range(2 ** N):
        x = cube_vertex(code, N)
        y = [0] * N
        for i in range(N):
            y[g.perm[i] - 1] = g.signs[i] * x[i]
        out.append(cube_code(y))
    return tuple(out)


def permutation_matrix(p: Sequence[int]) -> list[list[int]]:
    """``M[p(x)][x] = 1``."""
    n = len(p)
    M = [[0] * n for _ in range(n)]
    for x, y in enumerate(p):
        M[y][x] = 1
    return M


def hyperoctahedral_generators(N: int) -> list[SignedPermutation]:
    gens = [SignedPermutation(tuple(range(1, N + 1)), (-1,) + (1,) * (N - 1))]
    for i in range(N - 1):
        p = list(range(1, N + 1))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(SignedPermutation(tuple(p), (1,) * N))
    return gens


def hyperoctahedral_action(N: int, on: str = "segments") -> FiniteAction:
    """H_N acting on the 2N segment endpoints or on the 2^N cube vertices."""
    if on == "segments":
        act, size = action_segments, 2 * N
    elif on == "cube":
        act, size = action_cube, 2 ** N
    else:
        raise ValueError(f"unknown action {on!r}")
    elems = [act(g) for g in enumerate_hyperoctahedral(N)]
    gens = [act(g) for g in hyperoctahedral_generators(N)] if N > 0 else []
    return FiniteAction(size, elems, gens, name=f"H_{N} on {on}")


def symmetric_action(N: int) -> FiniteAction:
    gens = []
    for i in range(N - 1):
        p = list(range(N))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    return FiniteAction(N, enumerate_symmetric(N), gens, name=f"S_{N}")


def burnside_orbital_count(action: FiniteAction, k: int) -> int:
    """Number of orbits of the group on X^k, as the average of fix(g)^k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    total = 0
    for e in action.elements:
        fix = sum(1 for x, y in enumerate(e) if x == y)
        total += fix ** k
    q, r = divmod(total, action.order)
    if r:
        raise ArithmeticError("Burnside average is not an integer")
    return q


def enumerate_korbitals(action: FiniteAction, k: int,
                        max_tuples: int = DEFAULT_MAX_TUPLES) -> list[list[tuple[int, ...]]]:
    """Explicit orbits on X^k, found by union-find over the generators."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n = action.size
    total = n ** k
    if total > max_tuples:
        raise BudgetExceededError(f"|X|^k = {total} exceeds the tuple budget {max_tuples}")
    parent = list(range(total))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    weights = [n ** p for p in range(k)]
    for code in range(total):
        digits = [(code // w) % n for w in weights]
        for gen in action.generators:
            img = sum(gen[d] * w for d, w in zip(digits, weights))
            ra, rb = find(code), find(img)
            if ra != rb:
                parent[ra] = rb
    classes: dict[int, list[tuple[int, ...]]] = {}
    for code in range(total):
        classes.setdefault(find(code), []).append(tuple((code // w) % n for w in weights))
    return sorted(classes.values(), key=lambda c: c[0])


def configuration_shape(tup: Sequence[int], N: int) -> tuple[tuple[int, ...], ...]:
    """Unlabelled picture of a tuple of endpoints.

    Each occupied segment contributes the sorted multiplicities of its
    occupied endpoints, e.g. ``(2, 1)`` for two points at one end and one at
    the other.  Forgetting which tuple position sits where, this is what
    stays invariant under H_N and under reordering the tuple.
    """
    per_segment: dict[int, dict[int, int]] = {}
    for x in tup:
        ends = per_segment.setdefault(x % N, {})
        ends[x] = ends.get(x, 0) + 1
    return tuple(sorted((tuple(sorted(e.values(), reverse=True)) for e in per_segment.values()),
                        reverse=True))


def render_shape(shape: tuple[tuple[int, ...], ...]) -> str:
    """``((2, 1), (1,))`` -> ``"••—• •—"``."""
    parts = []
    for seg in shape:
        left = "•" * seg[0]
        right = "•" * seg[1] if len(seg) > 1 else ""
        parts.append(f"{left}—{right}")
    return " ".join(parts)


def configuration_multiplicities(classes: list[list[tuple[int, ...]]], N: int) -> dict[tuple, int]:
    """How many orbitals realise each configuration shape."""
    counts: dict[tuple, int] = {}
    for cls in classes:
        shape = configuration_shape(cls[0], N)
        counts[shape] = counts.get(shape, 0) + 1
    return counts


def _kernel(seq: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in seq)


def sudoku_matrix(g: SignedPermutation | Sequence[Sequence[int]]) -> list[list[int]]:
    """The 2N x 2N matrix [[a, b], [b, a]] with a = (g^2+g)/2, b = (g^2-g)/2 entrywise."""
    m = g.matrix() if isinstance(g, SignedPermutation) else [list(r) for r in g]
    N = len(m)
    a = [[(x * x + x) // 2 for x in row] for row in m]
    b = [[(x * x - x) // 2 for x in row] for row in m]
    top = [a[i] + b[i] for i in range(N)]
    bottom = [b[i] + a[i] for i in range(N)]
    return top + bottom


def is_permutation_matrix(M: Sequence[Sequence[int]]) -> bool:
    n = len(M)
    if any(len(r) != n or any(x not in (0, 1) for x in r) for r in M):
        return False
    return all(sum(r) == 1 for r in M) and all(sum(M[i][j] for i in range(n)) == 1 for j in range(n))


@dataclass
class TransitivityReport:
    name: str
    k: int
    moment: int
    distinct_integral: Fraction | None
    expected_distinct: Fraction | None
    kernel_mismatch_zero: bool
    k_transitive: bool

    @property
    def consistent(self) -> bool:
        """The equivalent transitivity conditions agree with each other."""
        moment_says = self.moment == _bell_upto(self.k)
        integral_says = (self.distinct_integral == self.expected_distinct
                         and self.kernel_mismatch_zero)
        return moment_says == integral_says == self.k_transitive


def _bell_upto(k: int) -> int:
    # number of set partitions of k, the orbit count of S_N on [N]^k when N >= k
    from .partitions import all_partitions
    return sum(1 for _ in all_partitions(k))


def _integral(action: FiniteAction, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    # ∫ u_{i1 j1} ... u_{ik jk} with u_ij the indicator of σ(j) = i
    hits = sum(1 for e in action.elements if all(e[j] == i for i, j in zip(rows, cols)))
    return Fraction(hits, action.order)


def transitivity_check(action: FiniteAction, k: int) -> TransitivityReport:
    """Compare the moment, orbit and integral forms of k-transitivity (k <= 3)."""
    if not 1 <= k <= 3:
        raise ValueError("transitivity_check supports 1 <= k <= 3")
    n = action.size
    if n < k:
        raise ValueError("need at least k points")
    moment = burnside_orbital_count(action, k)
    distinct = list(range(k))
    integral = _integral(action, distinct, distinct[::-1])
    expected = Fraction(factorial(n - k), factorial(n))
    # all index pairs with different kernels integrate to zero
    mismatch_zero = True
    for rows in product(range(min(n, k + 1)), repeat=k):
        for cols in product(range(min(n, k + 1)), repeat=k):
            if _kernel(rows) != _kernel(cols) and _integral(action, rows, cols) != 0:
                mismatch_zero = False
                break
        if not mismatch_zero:
            break
    # k-transitive: transitive on k-tuples of distinct points
    classes = enumerate_korbitals(action, k, max_tuples=max(n ** k, 1))
    distinct_classes = [c for c in classes if len(set(c[0])) == k]
    return TransitivityReport(action.name, k, moment, integral, expected,
                              mismatch_zero, len(distinct_classes) == 1)
