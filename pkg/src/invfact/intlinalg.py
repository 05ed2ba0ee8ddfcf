"""Integer matrices, Smith/Hermite normal forms and finitely generated abelian groups.

Everything here uses Python's arbitrary-precision ``int``; there is no
fixed-width arithmetic, so reductions cannot silently overflow.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import MalformedInput


class IntMatrix:
    """Immutable ``rows x cols`` integer matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], cols: Optional[int] = None):
        grid = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise MalformedInput("IntMatrix rows must all have the same length")
        self.rows = len(grid)
        self.cols = cols
        self.entries = grid

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows=None, cols=None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        grid = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            grid[i][i] = d
        return cls(grid, cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls([[col[i] for col in columns] for i in range(rows)], cols=len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def tolist(self):
        return [list(r) for r in self.entries]

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise MalformedInput(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self.entries],
                cols=other.cols,
            )
        vec = tuple(other)
        if len(vec) != self.cols:
            raise MalformedInput("vector length does not match matrix")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.entries)

    def __add__(self, other):
        self._same_shape(other)
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols
        )

    def __sub__(self, other):
        self._same_shape(other)
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols
        )

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.entries], cols=self.cols)

    def __pow__(self, k: int):
        if self.rows != self.cols:
            raise MalformedInput("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise MalformedInput(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def shape(self):
        return (self.rows, self.cols)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise MalformedInput("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1

    def rank(self) -> int:
        return sum(1 for d in smith_normal_form(self).diagonal() if d != 0)

    def inverse(self) -> "IntMatrix":
        """Inverse of a unimodular matrix."""
        if not self.is_unimodular():
            raise MalformedInput("only unimodular integer matrices are invertible over Z")
        snf = smith_normal_form(self)
        # U A V = D = diag(1,..,1), so A^{-1} = V U
        return snf.V @ snf.U

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.rows)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self):
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Unimodular ``U, V`` and diagonal ``D`` with ``U @ A @ V == D``.

    Pivot choice is the entry of least nonzero absolute value (first in
    row-major order on ties); each stage sweeps the pivot column, then the
    pivot row, and repeats until both are clear and the pivot divides the
    remaining block.  Diagonal entries come out nonnegative.
    """
    m, n = A.rows, A.cols
    D = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for M in (D, U):
            rs, rd = M[src], M[dst]
            for k in range(len(rd)):
                rd[k] += q * rs[k]

    def add_col(dst, src, q):
        for M in (D, V):
            for r in M:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover in the pivot row/column into place
                cands = [(abs(D[i][t]), 0, i) for i in range(t + 1, m) if D[i][t]]
                cands += [(abs(D[t][j]), 1, j) for j in range(t + 1, n) if D[t][j]]
                _, kind, idx = min(cands)
                if kind == 0:
                    swap_rows(t, idx)
                else:
                    swap_cols(t, idx)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p != 0),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(IntMatrix(U, cols=m), IntMatrix(D, cols=n), IntMatrix(V, cols=n))


def hermite_normal_form(A: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form of ``A`` with zero rows removed.

    Pivots are positive, entries above each pivot lie in ``[0, pivot)``.  Two
    matrices have the same HNF iff their rows span the same lattice.
    """
    H = A.tolist()
    m, n = A.rows, A.cols
    r = 0
    for c in range(n):
        if r == m:
            break
        rows = [i for i in range(r, m) if H[i][c] != 0]
        if not rows:
            continue
        while True:
            rows = [i for i in range(r, m) if H[i][c] != 0]
            if not rows:
                break
            piv = min(rows, key=lambda i: (abs(H[i][c]), i))
            H[r], H[piv] = H[piv], H[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        r += 1
    return IntMatrix(H[:r], cols=n)


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """``Z/d_1 + ... + Z/d_k + Z^r`` with ``d_1 | d_2 | ... | d_k`` and every ``d_i >= 2``."""

    invariant_factors: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if self.free_rank < 0:
            raise MalformedInput("free rank must be nonnegative")
        for d in f:
            if d < 2:
                raise MalformedInput(f"invariant factor {d} < 2; use from_orders to canonicalize")
        for a, b in zip(f, f[1:]):
            if b % a:
                raise MalformedInput(f"invariant factors {f} are not a divisibility chain")

    @classmethod
    def from_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "AbelianGroupPresentation":
        """Canonical form of ``Z/o_1 + ... + Z/o_k + Z^free_rank`` (an order of 0 means Z)."""
        orders = [abs(int(o)) for o in orders]
        zero = sum(1 for o in orders if o == 0)
        orders = [o for o in orders if o != 0]
        if not orders:
            return cls((), free_rank + zero)
        diag = smith_normal_form(IntMatrix.diagonal(orders)).diagonal()
        return cls(tuple(d for d in diag if d > 1), free_rank + zero)

    @classmethod
    def trivial(cls):
        return cls()

    @classmethod
    def cyclic(cls, n: int):
        return cls.from_orders([n])

    @classmethod
    def free(cls, r: int):
        return cls((), r)

    def direct_sum(self, other: "AbelianGroupPresentation") -> "AbelianGroupPresentation":
        return AbelianGroupPresentation.from_orders(
            self.invariant_factors + other.invariant_factors, self.free_rank + other.free_rank
        )

    __add__ = direct_sum

    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def as_dict(self):
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
            "display": str(self),
        }

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def cokernel(A: IntMatrix) -> AbelianGroupPresentation:
    """``Z^rows / (column span of A)`` in canonical form."""
    diag = smith_normal_form(A).diagonal() if A.cols else []
    nonzero = [d for d in diag if d != 0]
    return AbelianGroupPresentation(tuple(d for d in nonzero if d > 1), A.rows - len(nonzero))


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form a saturated Z-basis of ``{v : A v = 0}``, in Hermite form."""
    snf = smith_normal_form(A)
    r = sum(1 for d in snf.diagonal() if d != 0)
    cols = [snf.V.column(j) for j in range(r, A.cols)]
    if not cols:
        return IntMatrix.zeros(A.cols, 0)
    H = hermite_normal_form(IntMatrix(cols, cols=A.cols))
    return H.T


def solve_integer(A: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """Some integer ``x`` with ``A x = b``, or None if no integer solution exists."""
    if len(b) != A.rows:
        raise MalformedInput("right-hand side has the wrong length")
    snf = smith_normal_form(A)
    c = snf.U @ b
    diag = snf.diagonal()
    y = [0] * A.cols
    for i in range(A.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return snf.V @ y


def rational_rank(A: IntMatrix) -> int:
    """Rank over Q by fraction elimination; independent of the SNF code path."""
    m = [[Fraction(x) for x in r] for r in A.entries]
    rk = 0
    for c in range(A.cols):
        piv = next((i for i in range(rk, A.rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(rk + 1, A.rows):
            if m[i][c]:
                f = m[i][c] / m[rk][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def random_unimodular(n: int, rng: random.Random, steps: int = 12, bound: int = 2) -> IntMatrix:
    """Product of random elementary integer operations (determinant +-1)."""
    M = IntMatrix.identity(n).tolist()
    if n == 0:
        return IntMatrix.zeros(0, 0)
    for _ in range(steps):
        kind = rng.random()
        i = rng.randrange(n)
        if n > 1 and kind < 0.7:
            j = rng.randrange(n - 1)
            j = j + 1 if j >= i else j
            q = rng.randint(-bound, bound)
            M[i] = [a + q * b for a, b in zip(M[i], M[j])]
        elif n > 1 and kind < 0.85:
            j = rng.randrange(n)
            M[i], M[j] = M[j], M[i]
        else:
            M[i] = [-a for a in M[i]]
    return IntMatrix(M, cols=n)
