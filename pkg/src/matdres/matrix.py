"""Dense square matrices over an exact commutative ring.

The ring object supplies ``zero``, ``one`` and ``convert``; a differential
field additionally makes :meth:`Matrix.inverse`, :meth:`Matrix.nullspace`
and entrywise :meth:`Matrix.derive` available. Polynomial rings supply
``exact_div`` so determinants of larger matrices can use fraction-free
elimination.
"""
from __future__ import annotations

from typing import Callable, List, Optional, Sequence

from .errors import DimensionMismatch, SingularMatrix


class Matrix:
    __slots__ = ("rows", "ring", "n", "_hash")

    def __init__(self, rows: Sequence[Sequence], ring, _trusted: bool = False):
        if not _trusted:
            rows = tuple(tuple(ring.convert(x) for x in row) for row in rows)
            n = len(rows)
            if any(len(r) != n for r in rows):
                raise DimensionMismatch("matrix must be square")
        self.rows = rows
        self.ring = ring
        self.n = len(rows)
        self._hash = None

    @classmethod
    def _make(cls, rows, ring) -> "Matrix":
        return cls(tuple(tuple(r) for r in rows), ring, _trusted=True)

    @classmethod
    def zeros(cls, n: int, ring) -> "Matrix":
        z = ring.zero
        return cls._make([[z] * n for _ in range(n)], ring)

    @classmethod
    def identity(cls, n: int, ring) -> "Matrix":
        return cls.scalar(ring.one, n, ring)

    @classmethod
    def scalar(cls, c, n: int, ring) -> "Matrix":
        c = ring.convert(c)
        z = ring.zero
        return cls._make([[c if i == j else z for j in range(n)] for i in range(n)], ring)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: "Matrix"):
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")

    def map(self, fn: Callable, ring=None) -> "Matrix":
        return Matrix._make([[fn(x) for x in row] for row in self.rows], ring or self.ring)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        return Matrix._make([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ring)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        return Matrix._make([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ring)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            n = self.n
            cols = list(zip(*other.rows))
            out = []
            z = self.ring.zero
            for r in self.rows:
                row = []
                for col in cols:
                    acc = z
                    for a, b in zip(r, col):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix._make(out, self.ring)
        try:
            c = self.ring.convert(other)
        except TypeError:
            return NotImplemented
        return self.map(lambda x: x * c)

    def __rmul__(self, other):
        try:
            c = self.ring.convert(other)
        except TypeError:
            return NotImplemented
        return self.map(lambda x: c * x)

    def __bool__(self):
        return any(x for row in self.rows for x in row)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        from .render import render_matrix
        return f"Matrix({render_matrix(self)})"

    def transpose(self) -> "Matrix":
        return Matrix._make(list(zip(*self.rows)), self.ring)

    def derive(self) -> "Matrix":
        return self.map(lambda x: x.derive())

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.n) for j in range(self.n) if i != j)

    def is_upper_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.n) for j in range(i))

    def is_lower_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.n) for j in range(i + 1, self.n))

    # -- determinants -------------------------------------------------------
    def minor(self, i: int, j: int) -> "Matrix":
        return Matrix._make([[x for c, x in enumerate(row) if c != j]
                             for r, row in enumerate(self.rows) if r != i], self.ring)

    def det(self):
        n = self.n
        if n == 0:
            return self.ring.one
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        if n <= 4:
            acc = self.ring.zero
            for j, a in enumerate(self.rows[0]):
                if a:
                    term = a * self.minor(0, j).det()
                    acc = acc + term if j % 2 == 0 else acc - term
            return acc
        return self._bareiss()

    def _bareiss(self):
        div = getattr(self.ring, "exact_div", None) or (lambda a, b: a / b)
        M = [list(r) for r in self.rows]
        n = self.n
        sign = 1
        prev = self.ring.one
        for k in range(n - 1):
            if not M[k][k]:
                for i in range(k + 1, n):
                    if M[i][k]:
                        M[k], M[i] = M[i], M[k]
                        sign = -sign
                        break
                else:
                    return self.ring.zero
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
            prev = M[k][k]
        d = M[n - 1][n - 1]
        return d if sign > 0 else -d

    def adjugate(self) -> "Matrix":
        n = self.n
        if n == 1:
            return Matrix.identity(1, self.ring)
        cof = [[self.minor(i, j).det() for j in range(n)] for i in range(n)]
        return Matrix._make([[cof[j][i] if (i + j) % 2 == 0 else -cof[j][i] for j in range(n)]
                             for i in range(n)], self.ring)

    def inverse(self) -> "Matrix":
        d = self.det()
        if not d:
            raise SingularMatrix("matrix is singular")
        inv = self.ring.one / d
        return self.adjugate().map(lambda x: x * inv)

    # -- linear algebra over a field ------------------------------------------
    def nullspace(self) -> List[List]:
        """Basis of the right kernel, from the reduced row echelon form.

        Pivots are chosen as the first nonzero entry in each column, so the
        result is deterministic.
        """
        n = self.n
        one, zero = self.ring.one, self.ring.zero
        M = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for col in range(n):
            p = next((r for r in range(row, n) if M[r][col]), None)
            if p is None:
                continue
            M[row], M[p] = M[p], M[row]
            inv = one / M[row][col]
            M[row] = [x * inv for x in M[row]]
            for r in range(n):
                if r != row and M[r][col]:
                    f = M[r][col]
                    M[r] = [a - f * b for a, b in zip(M[r], M[row])]
            pivots.append(col)
            row += 1
            if row == n:
                break
        basis = []
        for free in (c for c in range(n) if c not in pivots):
            v = [zero] * n
            v[free] = one
            for r, pc in enumerate(pivots):
                v[pc] = -M[r][free]
            basis.append(v)
        return basis


def matvec(M: Matrix, v: Sequence) -> List:
    z = M.ring.zero
    out = []
    for row in M.rows:
        acc = z
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out
