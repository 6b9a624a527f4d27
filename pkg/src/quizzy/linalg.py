"""Exact rational linear algebra: sparse tensor vectors, rank, nullspaces, inverses.

Scalars are ``int`` or :class:`fractions.Fraction`; nothing here ever rounds.

Multi-indices ``(i_1, ..., i_m)`` with ``1 <= i_p <= N`` are encoded as one
integer in base ``N``, little-endian, leg 1 least significant::

    code = sum((i_p - 1) * N**(p - 1))
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import SingularMatrixError

Scalar = int | Fraction


def encode(indices: Sequence[int], N: int) -> int:
    code = 0
    for i in reversed(indices):
        if not 1 <= i <= N:
            raise ValueError(f"index {i} outside 1..{N}")
        code = code * N + (i - 1)
    return code


def decode(code: int, N: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        code, r = divmod(code, N)
        out.append(r + 1)
    return tuple(out)


def _norm(x: Scalar) -> Scalar:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class SparseTensorVector:
    """Sparse exact vector in ``(Q^N)^{⊗m}`` keyed by encoded multi-index."""

    __slots__ = ("N", "m", "entries")

    def __init__(self, N: int, m: int, entries: Mapping[int, Scalar] | None = None):
        if N < 1 or m < 0:
            raise ValueError("need N >= 1 and m >= 0")
        self.N = N
        self.m = m
        size = N ** m
        clean = {}
        for k, v in (entries or {}).items():
            if v:
                if not 0 <= k < size:
                    raise ValueError(f"encoded index {k} out of range for N={N}, m={m}")
                clean[k] = _norm(v)
        self.entries = clean

    @classmethod
    def from_indices(cls, N: int, m: int, values: Mapping[tuple[int, ...], Scalar]):
        return cls(N, m, {encode(i, N): v for i, v in values.items()})

    @classmethod
    def basis(cls, N: int, m: int, indices: Sequence[int]):
        return cls(N, m, {encode(indices, N): 1})

    def __getitem__(self, indices: Sequence[int]) -> Scalar:
        return self.entries.get(encode(indices, self.N), 0)

    def items(self) -> Iterator[tuple[tuple[int, ...], Scalar]]:
        for k in sorted(self.entries):
            yield decode(k, self.N, self.m), self.entries[k]

    def __len__(self):
        return len(self.entries)

    def _check(self, other: SparseTensorVector):
        if (self.N, self.m) != (other.N, other.m):
            raise ValueError("vectors live in different tensor spaces")

    def __add__(self, other: SparseTensorVector) -> SparseTensorVector:
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SparseTensorVector(self.N, self.m, out)

    def __neg__(self):
        return SparseTensorVector(self.N, self.m, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c: Scalar) -> SparseTensorVector:
        return SparseTensorVector(self.N, self.m, {k: c * v for k, v in self.entries.items()})

    def dot(self, other: SparseTensorVector) -> Scalar:
        self._check(other)
        a, b = (self.entries, other.entries)
        if len(a) > len(b):
            a, b = b, a
        return _norm(sum((v * b[k] for k, v in a.items() if k in b), 0))

    def __eq__(self, other):
        if not isinstance(other, SparseTensorVector):
            return NotImplemented
        return (self.N, self.m, self.entries) == (other.N, other.m, other.entries)

    def __repr__(self):
        return f"SparseTensorVector(N={self.N}, m={self.m}, nnz={len(self.entries)})"


def _integer_row(entries: Mapping[int, Scalar]) -> dict[int, int]:
    den = 1
    for v in entries.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    return {k: int(v * den) for k, v in entries.items() if v}


class _Echelon:
    """Incremental fraction-free row echelon form over the integers.

    Each stored row is primitive (content 1) and keyed by its pivot, the
    smallest column in its support.  With ``track=True`` every row also
    carries its expression in terms of the inserted vectors, so rows that
    reduce to zero yield integer linear relations.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, tuple[dict[int, int], dict[int, int]]] = {}
        self.track = track
        self.relations: list[dict[int, int]] = []
        self.count = 0

    def add(self, row: dict[int, int]) -> bool:
        """Insert a row; return True if it was independent of the previous ones."""
        combo = {self.count: 1} if self.track else {}
        self.count += 1
        row = dict(row)
        while row:
            c = min(row)
            hit = self.rows.get(c)
            if hit is None:
                g = _content(row, combo)
                if row[c] < 0:
                    g = -g
                if g != 1:
                    row = {k: v // g for k, v in row.items()}
                    combo = {k: v // g for k, v in combo.items()}
                self.rows[c] = (row, combo)
                return True
            prow, pcombo = hit
            a, b = prow[c], row[c]
            row = _axpy(a, row, -b, prow)
            if self.track:
                combo = _axpy(a, combo, -b, pcombo)
            g = _content(row, combo)
            if g > 1:
                row = {k: v // g for k, v in row.items()}
                combo = {k: v // g for k, v in combo.items()}
        if self.track:
            self.relations.append(combo)
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def _axpy(a: int, x: dict[int, int], b: int, y: dict[int, int]) -> dict[int, int]:
    out = {k: a * v for k, v in x.items()} if a != 1 else dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + b * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _content(row: dict[int, int], combo: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    for v in combo.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g or 1


def _same_space(vectors: Sequence[SparseTensorVector]):
    if vectors and len({(v.N, v.m) for v in vectors}) > 1:
        raise ValueError("all vectors must share N and m")


def rank(vectors: Iterable[SparseTensorVector]) -> int:
    """Exact rank over Q of a family of sparse vectors."""
    vectors = list(vectors)
    _same_space(vectors)
    ech = _Echelon()
    for v in vectors:
        ech.add(_integer_row(v.entries))
    return ech.rank


def nullspace_basis(vectors: Sequence[SparseTensorVector]) -> list[list[Fraction]]:
    """Basis of the linear relations ``sum c_i v_i = 0`` among ``vectors``.

    Relations are primitive integer vectors, first nonzero entry positive,
    returned as Fractions.  Their count is ``len(vectors) - rank(vectors)``.
    """
    vectors = list(vectors)
    _same_space(vectors)
    ech = _Echelon(track=True)
    for v in vectors:
        ech.add(_integer_row(v.entries))
    out = []
    for rel in ech.relations:
        coeffs = [rel.get(i, 0) for i in range(len(vectors))]
        lead = next(c for c in coeffs if c)
        s = -1 if lead < 0 else 1
        out.append([Fraction(s * c) for c in coeffs])
    return out


def span_intersection_dim(fam_a: Sequence[SparseTensorVector],
                          fam_b: Sequence[SparseTensorVector]) -> int:
    """dim(span A ∩ span B) = rank A + rank B - rank(A ∪ B)."""
    fam_a, fam_b = list(fam_a), list(fam_b)
    _same_space(fam_a + fam_b)
    return rank(fam_a) + rank(fam_b) - rank(fam_a + fam_b)


class ExactMatrix:
    """Dense matrix of exact rationals."""

    def __init__(self, rows: Sequence[Sequence[Scalar]]):
        rows = [[Fraction(x) for x in r] for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        n, k = self.shape
        k2, p = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        return ExactMatrix([[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0))
                             for c in cols] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self.rows]})"

    def rank(self) -> int:
        ech = _Echelon()
        for r in self.rows:
            ech.add(_integer_row(dict(enumerate(r))))
        return ech.rank

    def is_identity(self) -> bool:
        n, k = self.shape
        return n == k and all(self.rows[i][j] == (i == j) for i in range(n) for j in range(n))


def invert(matrix: ExactMatrix) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n, k = matrix.shape
    if n != k:
        raise ValueError("only square matrices can be inverted")
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(matrix.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {col})")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        prow = [x / p for x in aug[col]]
        aug[col] = prow
        for r in range(n):
            f = aug[r][col]
            if r != col and f:
                row = aug[r]
                aug[r] = [x - f * y if y else x for x, y in zip(row, prow)]
    return ExactMatrix([r[n:] for r in aug])
