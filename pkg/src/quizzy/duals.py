"""Group duals of products and free products of cyclic groups inside S_N^+.

The dual of ``Z_{N_1} (x or *) ... (x or *) Z_{N_l}`` sits in ``S_N^+`` with
``N = N_1 + ... + N_l``: the magic unitary is block diagonal, and on block
``A_r`` it is the Fourier matrix ``u_ij = (1/N_r) Σ_k ζ^{(i-j)k} g_r^k``.

The Cayley graph uses the *multiset* ``S`` holding every element of every
cyclic factor, so the identity appears once per factor and ``|S| = N``;
this is what makes ``u`` equivalent to ``diag(S)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm, prod
from typing import Sequence

from .errors import BudgetExceededError

MODES = ("direct", "free")


@dataclass(frozen=True)
class DualSpec:
    orders: tuple[int, ...]
    mode: str = "direct"

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if not self.orders or any(n < 2 for n in self.orders):
            raise ValueError("every cyclic order must be at least 2")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")

    @property
    def N(self) -> int:
        return sum(self.orders)

    @property
    def l(self) -> int:
        return len(self.orders)

    def blocks(self) -> list[range]:
        """The orbits A_1, ..., A_l as 0-based index ranges."""
        out, start = [], 0
        for n in self.orders:
            out.append(range(start, start + n))
            start += n
        return out

    def locate(self, i: int) -> tuple[int, int]:
        """0-based point -> (block r, position inside the block)."""
        for r, blk in enumerate(self.blocks()):
            if i in blk:
                return r, i - blk.start
        raise ValueError(f"point {i} outside 0..{self.N - 1}")

    def generating_multiset(self) -> list[tuple[int, int]]:
        """S as (factor, exponent) pairs; exponent 0 is the identity."""
        return [(r, a) for r, n in enumerate(self.orders) for a in range(n)]


# --- loop counting ----------------------------------------------------------

def loop_count(spec: DualSpec, k: int) -> int:
    """Number of length-k words over the multiset S multiplying to the identity."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if spec.mode == "direct":
        return _loops_direct(spec, k)
    return _loops_free(spec, k)


def _loops_direct(spec: DualSpec, k: int) -> int:
    zero = (0,) * spec.l
    counts = {zero: 1}
    for _ in range(k):
        nxt: dict[tuple[int, ...], int] = {}
        for state, c in counts.items():
            for r, n in enumerate(spec.orders):
                for a in range(n):
                    s = list(state)
                    s[r] = (s[r] + a) % n
                    key = tuple(s)
                    nxt[key] = nxt.get(key, 0) + c
        counts = nxt
    return counts.get(zero, 0)


def _loops_free(spec: DualSpec, k: int) -> int:
    # reduced words: tuples of (factor, nonzero exponent), adjacent factors distinct
    counts: dict[tuple[tuple[int, int], ...], int] = {(): 1}
    for step in range(k):
        remaining = k - step - 1
        nxt: dict[tuple[tuple[int, int], ...], int] = {}
        for word, c in counts.items():
            for r, n in enumerate(spec.orders):
                for a in range(n):
                    w = _free_mul(word, r, a, n)
                    # each later letter shortens the word by at most one syllable
                    if len(w) <= remaining:
                        nxt[w] = nxt.get(w, 0) + c
        counts = nxt
    return counts.get((), 0)


def _free_mul(word, r: int, a: int, n: int):
    if a == 0:
        return word
    if word and word[-1][0] == r:
        e = (word[-1][1] + a) % n
        return word[:-1] + ((r, e),) if e else word[:-1]
    return word + ((r, a),)


def loop_count_by_characters(spec: DualSpec, k: int) -> int:
    """Direct products only: (1/|Γ|) Σ_t (Σ_{r: t_r = 0} N_r)^k over the dual group."""
    if spec.mode != "direct":
        raise ValueError("the character sum applies to abelian (direct) duals")
    total = 0
    for t in product(*(range(n) for n in spec.orders)):
        total += sum(n for n, x in zip(spec.orders, t) if x == 0) ** k
    q, r = divmod(total, prod(spec.orders))
    if r:
        raise ArithmeticError("character sum is not an integer")
    return q


def classical_dual_action(spec: DualSpec):
    """The direct product acting on the N points by translation inside each block."""
    from .classical import FiniteAction

    if spec.mode != "direct":
        raise ValueError("only the direct product is a classical group")
    blocks = spec.blocks()
    elems, gens = [], []
    for t in product(*(range(n) for n in spec.orders)):
        img = [0] * spec.N
        for r, blk in enumerate(blocks):
            for p in range(len(blk)):
                img[blk.start + p] = blk.start + (p + t[r]) % len(blk)
        elems.append(tuple(img))
    for r in range(spec.l):
        t = [0] * spec.l
        t[r] = 1
        gens.append(elems[_mixed_index(t, spec.orders)])
    return FiniteAction(spec.N, elems, gens, name=f"dual {spec.orders}")


def _mixed_index(t: Sequence[int], orders: Sequence[int]) -> int:
    idx = 0
    for x, n in zip(t, orders):
        idx = idx * n + x
    return idx


# --- orbital classes by the structural rules --------------------------------

def _class_key(spec: DualSpec, tup: Sequence[int]):
    located = [spec.locate(i) for i in tup]
    pattern = tuple(r for r, _ in located)
    if spec.mode == "direct":
        groups = [[p for p in range(len(tup)) if pattern[p] == r] for r in sorted(set(pattern))]
    else:
        groups, cur = [], [0]
        for p in range(1, len(tup)):
            if pattern[p] == pattern[p - 1]:
                cur.append(p)
            else:
                groups.append(cur)
                cur = [p]
        groups.append(cur)
    diffs = []
    for g in groups:
        r = pattern[g[0]]
        n = spec.orders[r]
        base = located[g[0]][1]
        diffs.append(tuple((located[p][1] - base) % n for p in g[1:]))
    return pattern, tuple(diffs)


def orbital_classes(spec: DualSpec, k: int) -> list[list[tuple[int, ...]]]:
    """Algebraic k-orbitals, k <= 3, from the block structure.

    Tuples are related when they share the block pattern and the same
    cyclic differences inside each group of positions.  In the direct
    product the groups are all positions in one block; in the free product
    they are the maximal runs of consecutive positions in one block, since
    the product of terms from different free factors vanishes only if one of
    them does.
    """
    if not 1 <= k <= 3:
        raise ValueError("orbital classes are only available for k = 1, 2, 3")
    classes: dict[object, list[tuple[int, ...]]] = {}
    for tup in product(range(spec.N), repeat=k):
        classes.setdefault(_class_key(spec, tup), []).append(tup)
    return sorted(classes.values())


def class_count_formula(spec: DualSpec, k: int) -> int:
    """Closed-form class totals per block pattern (k <= 3)."""
    if not 1 <= k <= 3:
        raise ValueError("class counts are only available for k = 1, 2, 3")
    Ns = spec.orders
    total = 0
    for pattern in product(range(spec.l), repeat=k):
        if k == 1:
            total += 1
        elif k == 2:
            r, s = pattern
            total += Ns[r] if r == s else 1
        else:
            r, s, t = pattern
            if r == s == t:
                total += Ns[r] ** 2
            elif r == s:
                total += Ns[r]
            elif s == t:
                total += Ns[s]
            elif r == t:
                total += Ns[r] if spec.mode == "direct" else 1
            else:
                total += 1
    return total


# --- exact nonvanishing oracle ----------------------------------------------

class CyclotomicField:
    """Q(ζ_L) with elements stored as coefficient lists modulo Φ_L."""

    def __init__(self, L: int):
        self.L = L
        self.phi = cyclotomic_polynomial(L)
        self.degree = len(self.phi) - 1

    def reduce(self, coeffs: dict[int, Fraction]) -> tuple[Fraction, ...]:
        # powers of ζ are taken mod L, then the polynomial is reduced mod Φ_L
        poly = [Fraction(0)] * self.L
        for e, c in coeffs.items():
            poly[e % self.L] += c
        d = self.degree
        for top in range(len(poly) - 1, d - 1, -1):
            c = poly[top]
            if c:
                for i, p in enumerate(self.phi):
                    poly[top - d + i] -= c * p
        return tuple(poly[:d])

    def is_zero(self, coeffs: dict[int, Fraction]) -> bool:
        return not any(self.reduce(coeffs))


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients of Φ_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return poly


class DualAlgebra:
    """Exact group algebra of the dual with coefficients in Q(ζ_L).

    Elements are dicts ``group element -> {power of ζ: rational}``; group
    elements are exponent vectors (direct) or reduced words (free).
    """

    def __init__(self, spec: DualSpec):
        self.spec = spec
        self.L = lcm(*spec.orders)
        self.field = CyclotomicField(self.L)

    def _gen(self, r: int, a: int):
        n = self.spec.orders[r]
        if self.spec.mode == "direct":
            e = [0] * self.spec.l
            e[r] = a % n
            return tuple(e)
        return ((r, a % n),) if a % n else ()

    def _mul_elem(self, x, y):
        if self.spec.mode == "direct":
            return tuple((p + q) % n for p, q, n in zip(x, y, self.spec.orders))
        w = x
        for r, a in y:
            w = _free_mul(w, r, a, self.spec.orders[r])
        return w

    def entry(self, i: int, j: int) -> dict:
        """u_ij = (1/N_r) Σ_k ζ_{N_r}^{(i-j)k} g_r^k, or 0 across blocks."""
        (r, a), (s, b) = self.spec.locate(i), self.spec.locate(j)
        if r != s:
            return {}
        n = self.spec.orders[r]
        step = self.L // n
        c = Fraction(1, n)
        return {self._gen(r, k): {(a - b) * k * step % self.L: c} for k in range(n)}

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for gx, cx in x.items():
            for gy, cy in y.items():
                g = self._mul_elem(gx, gy)
                acc = out.setdefault(g, {})
                for ex, vx in cx.items():
                    for ey, vy in cy.items():
                        e = (ex + ey) % self.L
                        acc[e] = acc.get(e, 0) + vx * vy
        return out

    def is_zero(self, x: dict) -> bool:
        return all(self.field.is_zero(c) for c in x.values())

    def product_nonzero(self, rows: Sequence[int], cols: Sequence[int]) -> bool:
        acc = {self._unit(): {0: Fraction(1)}}
        for i, j in zip(rows, cols):
            e = self.entry(i, j)
            if not e:
                return False
            acc = self.mul(acc, e)
            if self.is_zero(acc):
                return False
        return True

    def _unit(self):
        return (0,) * self.spec.l if self.spec.mode == "direct" else ()


@dataclass
class ProductClasses:
    classes: list[list[tuple[int, ...]]]
    reflexive: bool
    symmetric: bool
    transitive: bool

    @property
    def is_equivalence(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive


def orbital_classes_by_products(spec: DualSpec, k: int, max_pairs: int = 10 ** 6) -> ProductClasses:
    """Classes of i ~ j  <=>  u_{i_1 j_1} ... u_{i_k j_k} != 0, computed exactly."""
    if k < 1:
        raise ValueError("k must be positive")
    tuples = list(product(range(spec.N), repeat=k))
    if len(tuples) ** 2 > max_pairs:
        raise BudgetExceededError(f"{len(tuples) ** 2} tuple pairs exceed the budget {max_pairs}")
    alg = DualAlgebra(spec)
    rel = {t: {s for s in tuples if alg.product_nonzero(t, s)} for t in tuples}
    reflexive = all(t in rel[t] for t in tuples)
    symmetric = all(t in rel[s] for t in tuples for s in rel[t])
    transitive = all(rel[s] <= rel[t] for t in tuples for s in rel[t])
    parent = {t: t for t in tuples}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for t in tuples:
        for s in rel[t]:
            ra, rb = find(t), find(s)
            if ra != rb:
                parent[ra] = rb
    classes: dict = {}
    for t in tuples:
        classes.setdefault(find(t), []).append(t)
    return ProductClasses(sorted(classes.values()), reflexive, symmetric, transitive)


# --- S_N^+ ------------------------------------------------------------------

def adjacency_pattern(tup: Sequence[int]) -> tuple[bool, ...]:
    return tuple(tup[p] == tup[p + 1] for p in range(len(tup) - 1))


def snplus_orbital_rule(a: Sequence[int], b: Sequence[int], k: int | None = None) -> bool:
    """(i) ~ (j) for S_N^+ (N >= 4): i_p = i_{p+1} iff j_p = j_{p+1} for every p."""
    if len(a) != len(b) or (k is not None and len(a) != k):
        raise ValueError("tuples must both have length k")
    return adjacency_pattern(a) == adjacency_pattern(b)


def snplus_count(k: int) -> int:
    if k < 1:
        raise ValueError("k must be positive")
    return 2 ** (k - 1)


def snplus_classes(k: int, N: int | None = None) -> list[list[tuple[int, ...]]]:
    """Classes of the S_N^+ rule on tuples over {1..N} (default N = k+1)."""
    N = k + 1 if N is None else N
    classes: dict[tuple[bool, ...], list[tuple[int, ...]]] = {}
    for tup in product(range(1, N + 1), repeat=k):
        classes.setdefault(adjacency_pattern(tup), []).append(tup)
    return sorted(classes.values())


def pattern_constant_space(k: int, N: int):
    """Indicator vectors of the S_N^+ rule classes, spanning F_k."""
    from .linalg import SparseTensorVector

    return [SparseTensorVector.from_indices(N, k, {t: 1 for t in cls})
            for cls in snplus_classes(k, N)]
