"""Exact arithmetic on integer matrices and finitely generated abelian groups.

Everything here works with unbounded Python integers; there is no floating
point and no modular shortcut anywhere.  The two central objects are

* :class:`IntMatrix` -- an immutable integer matrix, the substrate for all
  boundary/relation data, and
* :class:`FgAbGroup` -- a finitely generated abelian group in canonical form
  (free rank plus an invariant-factor divisor chain), so that two groups are
  isomorphic exactly when they compare equal.

On top of those sit the Smith normal form (:func:`snf`), the lattice
utilities derived from it (kernels, column spans, exact linear solving), and
the functor arithmetic (:func:`hom`, :func:`ext`, :func:`direct_sum`) used by
every homology computation downstream.

>>> print(cokernel(IntMatrix.diagonal([2, 3])))
Z/6
>>> print(hom(FgAbGroup.cyclic(4), FgAbGroup.cyclic(6)))
Z/2
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class GroupParseError(ValueError):
    """Raised when a group string does not follow the rendering grammar."""


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """An immutable rows x cols integer matrix (row-major).

    Empty matrices (zero rows and/or zero columns) are legal and represent
    maps to or from the trivial group.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError(f"expected {self.cols} columns, got {len(row)}")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        """Build from a list of rows; `cols` disambiguates the 0-row case."""
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
        else:
            width = 0 if cols is None else cols
        return cls(len(data), width, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        r = len(diag) if rows is None else rows
        c = len(diag) if cols is None else cols
        return cls(r, c, tuple(
            tuple(diag[i] if i == j and i < len(diag) else 0 for j in range(c))
            for i in range(r)))

    # -- queries ------------------------------------------------------

    def __getitem__(self, pos: tuple[int, int]) -> int:
        i, j = pos
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def columns(self, indices: Iterable[int]) -> "IntMatrix":
        """The submatrix formed by the given columns, in the given order."""
        idx = list(indices)
        return IntMatrix(self.rows, len(idx),
                         tuple(tuple(row[j] for j in idx) for row in self.entries))

    def max_abs(self) -> int:
        return max((abs(x) for row in self.entries for x in row), default=0)

    # -- algebra ------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_t = list(zip(*other.entries)) if other.rows and other.cols else []
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols_t)
            if cols_t else (0,) * other.cols
            for row in self.entries)
        return IntMatrix(self.rows, other.cols, out)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.rows):
                row = out[i0 + i]
                for j in range(b.cols):
                    row[j0 + j] = b.entries[i][j]
            i0 += b.rows
            j0 += b.cols
        return cls(rows, cols, tuple(tuple(r) for r in out))

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product: each entry a_ij becomes the block a_ij * other."""
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                out.append(tuple(self.entries[i][j] * other.entries[k][l]
                                 for j in range(self.cols)
                                 for l in range(other.cols)))
        return IntMatrix(rows, cols, tuple(out))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"<{self.rows}x{self.cols}>"
        return "\n".join(" ".join(f"{x:4d}" for x in row) for row in self.entries)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """Certificate U @ source @ V == S with U, V unimodular and S diagonal.

    The diagonal of S is nonnegative, each entry divides the next, and all
    zero entries trail the nonzero ones.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    source: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.S.rows, self.S.cols)
        return tuple(self.S.entries[i][i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _off_diagonal_zero(m: IntMatrix) -> bool:
    return all(x == 0
               for i, row in enumerate(m.entries)
               for j, x in enumerate(row)
               if i != j)


def snf(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Alternates reduced column and row Hermite passes until the matrix is
    diagonal, then couples adjacent diagonal entries until the divisor
    chain holds (the classical Kannan-Bachem scheme).  The Hermite
    reduction keeps every intermediate entry determinant-bounded, unlike
    one-pivot-at-a-time elimination whose entries can explode, and the
    procedure is deterministic.
    """
    rows, cols = m.rows, m.cols
    a = m
    u = IntMatrix.identity(rows)
    v = IntMatrix.identity(cols)
    for _ in range(1000):
        h, w = column_echelon(a)
        a, v = h, v @ w
        ht, wt = column_echelon(a.transpose())
        a, u = ht.transpose(), wt.transpose() @ u
        if not _off_diagonal_zero(a):
            continue
        # both echelon passes sort zero columns/rows to the back, so once the
        # matrix is diagonal its nonzero entries form a prefix
        diag = [a.entries[i][i] for i in range(min(rows, cols))]
        chained = True
        for i in range(len(diag) - 1):
            if diag[i] and diag[i + 1] and diag[i + 1] % diag[i]:
                # pull the offender into row i; the next column pass then
                # replaces the pivot by the gcd of the pair
                bump = IntMatrix.from_rows(
                    [[1 if r == c or (r == i and c == i + 1) else 0
                      for c in range(rows)] for r in range(rows)], cols=rows)
                a, u = bump @ a, bump @ u
                chained = False
                break
        if chained:
            return SmithDecomposition(U=u, S=a, V=v, source=m)
    raise RuntimeError("Smith reduction failed to converge")


def invert_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    if m.rows != m.cols:
        raise ValueError("only square matrices can be inverted")
    n = m.rows
    aug = [[Fraction(x) for x in m.entries[i]] +
           [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            x = aug[i][j]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular (inverse is not integral)")
            row.append(int(x))
        out.append(tuple(row))
    return IntMatrix(n, n, tuple(out))


def column_echelon(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite form: (H, W) with m @ W == H and W unimodular.

    Nonzero columns of H have strictly increasing leading rows and positive
    leading entries, entries to the left of a leading entry are reduced
    modulo it, and zero columns trail.  Unlike the Smith transforms, the
    nonzero part of H is a basis of the column lattice of m with entries of
    moderate size, which is what the homology pipeline builds on.
    """
    rows, ncols = m.rows, m.cols
    cols = [[m.entries[i][j] for i in range(rows)] for j in range(ncols)]
    w = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]

    def combine(j, j0, q):
        # column j -= q * column j0
        cj, c0 = cols[j], cols[j0]
        for i in range(rows):
            cj[i] -= q * c0[i]
        wj, w0 = w[j], w[j0]
        for i in range(ncols):
            wj[i] -= q * w0[i]

    next_pivot = 0
    for row in range(rows):
        if next_pivot >= ncols:
            break
        while True:
            nz = [j for j in range(next_pivot, ncols) if cols[j][row]]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][row]))
            for j in nz:
                if j != j0:
                    q = cols[j][row] // cols[j0][row]
                    if q:
                        combine(j, j0, q)
        nz = [j for j in range(next_pivot, ncols) if cols[j][row]]
        if not nz:
            continue
        j0 = nz[0]
        if j0 != next_pivot:
            cols[j0], cols[next_pivot] = cols[next_pivot], cols[j0]
            w[j0], w[next_pivot] = w[next_pivot], w[j0]
        if cols[next_pivot][row] < 0:
            cols[next_pivot] = [-x for x in cols[next_pivot]]
            w[next_pivot] = [-x for x in w[next_pivot]]
        for j in range(next_pivot):
            q = cols[j][row] // cols[next_pivot][row]
            if q:
                combine(j, next_pivot, q)
        next_pivot += 1

    h = IntMatrix(rows, ncols, tuple(tuple(cols[j][i] for j in range(ncols))
                                     for i in range(rows)))
    wm = IntMatrix(ncols, ncols, tuple(tuple(w[j][i] for j in range(ncols))
                                       for i in range(ncols)))
    return h, wm


def _leading_rows(h: IntMatrix) -> list[tuple[int, int]]:
    """(leading row, column) pairs for the nonzero columns of an echelon matrix."""
    out = []
    for j in range(h.cols):
        lead = next((i for i in range(h.rows) if h.entries[i][j]), None)
        if lead is not None:
            out.append((lead, j))
    return out


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """A lattice basis of ker(m), returned as the columns of a matrix.

    The integer kernel of m is spanned exactly by the columns of the Smith
    transform V beyond the rank; that raw basis is then Hermite-reduced so
    the returned entries stay small.
    """
    dec = snf(m)
    raw = dec.V.columns(range(dec.rank, m.cols))
    reduced, _ = column_echelon(raw)
    return reduced.columns(range(len(_leading_rows(reduced))))


def column_space_basis(m: IntMatrix) -> IntMatrix:
    """A lattice basis of the column span of m (columns of the result)."""
    h, _ = column_echelon(m)
    return h.columns(range(len(_leading_rows(h))))


def solve(m: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """An integer solution X of m @ X == b, or None when none exists."""
    if b.rows != m.rows:
        raise ValueError("right-hand side has wrong height")
    h, w = column_echelon(m)
    pivots = _leading_rows(h)
    z_cols = []
    for k in range(b.cols):
        res = [b.entries[i][k] for i in range(m.rows)]
        z = [0] * m.cols
        for row, j in pivots:
            p = h.entries[row][j]
            if res[row] % p:
                return None
            q = res[row] // p
            if q:
                z[j] = q
                for i in range(row, m.rows):
                    res[i] -= q * h.entries[i][j]
        if any(res):
            return None
        z_cols.append(z)
    zm = IntMatrix(m.cols, b.cols,
                   tuple(tuple(z_cols[k][i] for k in range(b.cols))
                         for i in range(m.cols)))
    return w @ zm


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FgAbGroup:
    """Canonical form: Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk.

    Every factor is >= 2 and the divisor chain makes the representation
    unique, so isomorphism is plain equality.

    >>> FgAbGroup.of(0, [2, 3]) == FgAbGroup.cyclic(6)
    True
    >>> print(FgAbGroup.of(2, [2, 6]))
    Z^2 + Z/2 + Z/6
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        prev = None
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} is not >= 2")
            if prev is not None and d % prev:
                raise ValueError(f"broken divisor chain: {prev} does not divide {d}")
            prev = d

    # -- constructors -------------------------------------------------

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, d: int) -> "FgAbGroup":
        """Z/d; by the usual conventions Z/0 = Z and Z/1 = 0."""
        if d < 0:
            raise ValueError("cyclic order must be nonnegative")
        if d == 0:
            return cls(1, ())
        if d == 1:
            return cls(0, ())
        return cls(0, (d,))

    @classmethod
    def of(cls, free_rank: int, orders: Iterable[int]) -> "FgAbGroup":
        """Canonicalize an arbitrary cyclic decomposition.

        `orders` are the orders of cyclic torsion summands, in any order and
        not necessarily a divisor chain; unit factors are dropped.  The chain
        is recovered from the Smith form of the diagonal relation matrix.
        """
        torsion = [int(d) for d in orders if d != 1]
        for d in torsion:
            if d < 1:
                raise ValueError(f"cyclic order {d} must be positive")
        if not torsion:
            return cls(free_rank, ())
        dec = snf(IntMatrix.diagonal(torsion))
        factors = tuple(d for d in dec.diagonal if d > 1)
        return cls(free_rank, factors)

    # -- queries ------------------------------------------------------

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | float:
        """Number of elements; math.inf when the free rank is positive."""
        if self.free_rank:
            return math.inf
        return math.prod(self.invariant_factors)

    def __str__(self) -> str:
        if self.is_trivial():
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts)


def parse_group(text: str) -> FgAbGroup:
    """Parse the canonical rendering grammar back into a group.

    Accepts "0", "Z", "Z^r", "Z/d" joined by "+"; whitespace-insensitive.
    The summands may appear in any order; the result is canonicalized.
    """
    s = "".join(text.split())
    if not s:
        raise GroupParseError("empty group string")
    if s == "0":
        return FgAbGroup.trivial()
    rank = 0
    orders = []
    for token in s.split("+"):
        if token == "Z":
            rank += 1
        elif token.startswith("Z^"):
            try:
                r = int(token[2:])
            except ValueError:
                raise GroupParseError(f"bad free part {token!r}") from None
            if r < 1:
                raise GroupParseError(f"bad free part {token!r}")
            rank += r
        elif token.startswith("Z/"):
            try:
                d = int(token[2:])
            except ValueError:
                raise GroupParseError(f"bad cyclic factor {token!r}") from None
            if d < 2:
                raise GroupParseError(f"bad cyclic factor {token!r}")
            orders.append(d)
        else:
            raise GroupParseError(f"unrecognized summand {token!r}")
    return FgAbGroup.of(rank, orders)


# ---------------------------------------------------------------------------
# Group-level operations
# ---------------------------------------------------------------------------

def cokernel(m: IntMatrix) -> FgAbGroup:
    """Z^rows / (column span of m), in canonical form."""
    dec = snf(m)
    return FgAbGroup.of(m.rows - dec.rank, (d for d in dec.diagonal if d > 1))


def hom(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    """Hom(g, h), assembled from the cyclic pieces.

    Hom(Z, H) = H, Hom(Z/a, Z) = 0 and Hom(Z/a, Z/b) = Z/gcd(a, b).
    """
    orders = list(h.invariant_factors) * g.free_rank
    orders.extend(math.gcd(a, b)
                  for a in g.invariant_factors
                  for b in h.invariant_factors)
    return FgAbGroup.of(g.free_rank * h.free_rank, orders)


def ext(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    """Ext(g, h): Ext(Z, H) = 0 and Ext(Z/a, H) = H/aH."""
    orders = []
    for a in g.invariant_factors:
        orders.extend([a] * h.free_rank)
        orders.extend(math.gcd(a, b) for b in h.invariant_factors)
    return FgAbGroup.of(0, orders)


def direct_sum(groups: Iterable[FgAbGroup]) -> FgAbGroup:
    """Direct sum, re-normalized into a single divisor chain."""
    rank = 0
    orders: list[int] = []
    for g in groups:
        rank += g.free_rank
        orders.extend(g.invariant_factors)
    return FgAbGroup.of(rank, orders)


def exponent(g: FgAbGroup) -> int | float:
    """Smallest e >= 1 with e*g = 0: 1 for the trivial group, math.inf when
    the free rank is positive, otherwise the largest invariant factor."""
    if g.free_rank:
        return math.inf
    if not g.invariant_factors:
        return 1
    return g.invariant_factors[-1]


def _prime_factors(n: int) -> set[int]:
    out = set()
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.add(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes; membership is validated at construction."""

    primes: frozenset[int]

    def __post_init__(self):
        for p in self.primes:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(frozenset(primes))

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def issuperset(self, other: "PrimeSet") -> bool:
        return self.primes >= other.primes

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in sorted(self.primes)) + "}"


def torsion_primes(g: FgAbGroup) -> PrimeSet:
    """The set of primes dividing some invariant factor of g."""
    out: set[int] = set()
    for d in g.invariant_factors:
        out |= _prime_factors(d)
    return PrimeSet(frozenset(out))


def in_class(g: FgAbGroup, p: PrimeSet) -> bool:
    """True when g is torsion and all its torsion primes lie in p."""
    return g.free_rank == 0 and p.issuperset(torsion_primes(g))
