"""Exact linear algebra over the rationals.

Matrices are lists of rows; entries are ints or ``fractions.Fraction``.  The
forward pass is a fraction-free Bareiss elimination on integer-scaled rows
(intermediate entries stay integral minors, which keeps coefficient growth in
check), and kernels / reduced echelon forms are recovered by rational back
substitution.  Every routine is deterministic: pivots are chosen left to
right, first nonzero row wins.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]


def _to_int_rows(rows) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (preserves row span and
    right kernel)."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        mult = 1
        for x in fr:
            d = x.denominator
            mult = mult * d // gcd(mult, d)
        ints = [int(x * mult) for x in fr]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def bareiss_echelon(rows) -> tuple[list[list[int]], list[int]]:
    """Row echelon form of ``rows`` by fraction-free elimination.

    Returns the nonzero echelon rows (integer entries) and the pivot column
    list.  Row order of the input is respected when selecting pivots.
    """
    m = _to_int_rows(rows)
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        for i in range(r + 1, nr):
            mic = m[i][c]
            for j in range(c + 1, nc):
                m[i][j] = (m[i][j] * m[r][c] - mic * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    _, pivots = bareiss_echelon(rows)
    return len(pivots)


def right_kernel(rows, ncols: int | None = None) -> list[Vec]:
    """Basis of {x : M x = 0}, one vector per free column, in ascending free
    column order.  Each vector has entry 1 at its free column and 0 at the
    other free columns, so the result is canonical."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [_unit(ncols, j) for j in range(ncols)]
    nc = len(rows[0])
    ech, pivots = bareiss_echelon(rows)
    pivset = set(pivots)
    basis = []
    for f in range(nc):
        if f in pivset:
            continue
        x = [Fraction(0)] * nc
        x[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            s = Fraction(0)
            for j in range(pc + 1, nc):
                if x[j]:
                    s += x[j] * ech[i][j]
            x[pc] = -s / ech[i][pc]
        basis.append(tuple(x))
    return basis


def rref(rows) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form (pivot entries 1, zeros above pivots)."""
    ech, pivots = bareiss_echelon(rows)
    nc = len(rows[0]) if rows else 0
    work = [[Fraction(v) for v in row] for row in ech]
    for i in range(len(pivots) - 1, -1, -1):
        pc = pivots[i]
        inv = work[i][pc]
        work[i] = [v / inv for v in work[i]]
        for k in range(i):
            factor = work[k][pc]
            if factor:
                work[k] = [a - factor * b for a, b in zip(work[k], work[i])]
    _ = nc
    return [tuple(r) for r in work], pivots


def solve(rows, rhs) -> Vec | None:
    """One exact solution of M x = rhs, or None if inconsistent."""
    if not rows:
        return None
    nc = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    x = [Fraction(0)] * nc
    for i, pc in enumerate(pivots):
        if pc == nc:  # pivot in the rhs column: inconsistent
            return None
        x[pc] = red[i][nc]
    return tuple(x)


def inverse(rows) -> list[Vec]:
    """Inverse of a square matrix (Gauss-Jordan on [M | I])."""
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [tuple(red[i][n:]) for i in range(n)]


def mat_vec(rows, x) -> Vec:
    return tuple(sum((Fraction(a) * b for a, b in zip(row, x)), Fraction(0))
                 for row in rows)


def mat_mul(a, b) -> list[Vec]:
    bt = list(zip(*b))
    return [tuple(sum((Fraction(x) * Fraction(y) for x, y in zip(row, col)), Fraction(0))
                  for col in bt)
            for row in a]


def _unit(n: int, j: int) -> Vec:
    return tuple(Fraction(int(i == j)) for i in range(n))


class Span:
    """A subspace of Q^ambient held as its canonical reduced-echelon basis.

    Two spans are equal iff they are the same subspace; membership,
    inclusion, sum and intersection are all exact.
    """

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int, rows=(), pivots=None):
        self.ambient = ambient
        if rows and pivots is None:
            rows, pivots = rref(list(rows))
        self.rows: tuple[Vec, ...] = tuple(tuple(Fraction(v) for v in r) for r in rows)
        self.pivots: tuple[int, ...] = tuple(pivots or ())

    @classmethod
    def from_vectors(cls, vectors, ambient: int) -> "Span":
        vecs = [v for v in vectors if any(v)]
        if not vecs:
            return cls(ambient)
        rows, pivots = rref(vecs)
        rows = [r for r in rows if any(r)]
        return cls(ambient, rows, pivots[: len(rows)])

    @classmethod
    def full(cls, ambient: int) -> "Span":
        return cls(ambient, [_unit(ambient, j) for j in range(ambient)],
                   list(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def reduce(self, v) -> Vec:
        """Residual of v after elimination against the basis; zero iff v is
        in the span."""
        x = [Fraction(c) for c in v]
        for row, pc in zip(self.rows, self.pivots):
            c = x[pc]
            if c:
                for j in range(self.ambient):
                    if row[j]:
                        x[j] -= c * row[j]
        return tuple(x)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def contains_span(self, other: "Span") -> bool:
        return all(self.contains(r) for r in other.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Span) and self.ambient == other.ambient
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def __add__(self, other: "Span") -> "Span":
        if not other.rows:
            return self
        if not self.rows:
            return other
        return Span.from_vectors(list(self.rows) + list(other.rows), self.ambient)

    def intersect(self, other: "Span") -> "Span":
        """Exact intersection: solve sum_i a_i u_i = sum_j b_j w_j."""
        if not self.rows or not other.rows:
            return Span(self.ambient)
        k, l = self.dim, other.dim
        stacked = [[self.rows[i][c] for i in range(k)] +
                   [-other.rows[j][c] for j in range(l)]
                   for c in range(self.ambient)]
        vecs = []
        for ab in right_kernel(stacked, ncols=k + l):
            a = ab[:k]
            v = tuple(sum((a[i] * self.rows[i][c] for i in range(k)), Fraction(0))
                      for c in range(self.ambient))
            vecs.append(v)
        return Span.from_vectors(vecs, self.ambient)

    def annihilator(self) -> list[Vec]:
        """Rows N with N v = 0 exactly for v in the span (a basis of the
        orthogonal complement under the dot pairing)."""
        if not self.rows:
            return [_unit(self.ambient, j) for j in range(self.ambient)]
        return right_kernel([list(r) for r in self.rows], ncols=self.ambient)

    def __repr__(self):
        return f"Span(dim={self.dim}, ambient={self.ambient})"
