"""Exact linear algebra: bit-packed F2 matrices and integer Smith normal form.

F2 rows are stored as Python ints (bit j = column j), so row operations are
single XORs on machine words of arbitrary width.  Integer work uses plain
Python ints throughout; nothing here ever rounds.
"""

from __future__ import annotations

from .errors import NotAComplex

__all__ = [
    "MatF2",
    "rank_f2",
    "homology_rank",
    "MatZ",
    "smith_normal_form",
]


class MatF2:
    """Matrix over F2.

    rows[i] is an int whose bit j is the (i, j) entry.  Shape is explicit
    because trailing zero columns are invisible in the packed form.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: list[int] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = list(rows) if rows is not None else [0] * nrows
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        for r in self.rows:
            if r & ~mask:
                raise ValueError("row has bits outside the declared width")

    @classmethod
    def from_entries(cls, entries: list[list[int]]) -> "MatF2":
        nrows = len(entries)
        ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            acc = 0
            for j, v in enumerate(row):
                if v & 1:
                    acc |= 1 << j
            rows.append(acc)
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "MatF2":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "MatF2":
        return cls(nrows, ncols)

    def copy(self) -> "MatF2":
        return MatF2(self.nrows, self.ncols, self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def set_entry(self, i: int, j: int, v: int) -> None:
        if v & 1:
            self.rows[i] |= 1 << j
        else:
            self.rows[i] &= ~(1 << j)

    def to_entries(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "MatF2":
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                j = low.bit_length() - 1
                out[j] |= 1 << i
                r ^= low
        return MatF2(self.ncols, self.nrows, out)

    def __matmul__(self, other: "MatF2") -> "MatF2":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        rows = []
        orows = other.rows
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                low = rr & -rr
                acc ^= orows[low.bit_length() - 1]
                rr ^= low
            rows.append(acc)
        return MatF2(self.nrows, other.ncols, rows)

    def __add__(self, other: "MatF2") -> "MatF2":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in sum")
        return MatF2(self.nrows, self.ncols,
                     [a ^ b for a, b in zip(self.rows, other.rows)])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MatF2)
                and self.nrows == other.nrows
                and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(self.rows)))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def apply(self, vec: int) -> int:
        """Image of a packed column vector: bit i of input selects column... """
        # vec packs a vector in the domain (bit j = coordinate j); the result
        # packs the image, computed as sum of columns j with bit j set.  Work
        # via the transpose identity: (A x)_i = <row_i, x>.
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & vec).count("1") & 1:
                out |= 1 << i
        return out

    def stack_rows(self, other: "MatF2") -> "MatF2":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch in stack")
        return MatF2(self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def rank(self) -> int:
        return _rank_rows(list(self.rows))

    def kernel_basis(self) -> list[int]:
        """Basis of the right kernel, packed (bit j = domain coordinate j)."""
        # Eliminate on the transpose: column relations of A are row relations
        # of A^T, tracked through an augmented identity.
        n = self.ncols
        rows = self.transpose().rows
        aug = [(rows[i], 1 << i) for i in range(n)]
        basis: list[tuple[int, int]] = []  # (reduced row, combination)
        kernel = []
        for row, comb in aug:
            for brow, bcomb in basis:
                low = brow & -brow
                if row & low:
                    row ^= brow
                    comb ^= bcomb
            if row:
                basis.append((row, comb))
            else:
                kernel.append(comb)
        return kernel

    def row_space_basis(self) -> list[int]:
        rows = [r for r in self.rows]
        basis = []
        for row in rows:
            row = _reduce_against(row, basis)
            if row:
                basis.append(row)
        return basis

    def solve(self, target: int) -> int | None:
        """One solution x (packed) of A x = target, or None."""
        cols = self.transpose().rows  # cols[j] = column j as packed rows
        basis: list[tuple[int, int]] = []
        for j, col in enumerate(cols):
            red, comb = col, 1 << j
            for brow, bcomb in basis:
                low = brow & -brow
                if red & low:
                    red ^= brow
                    comb ^= bcomb
            if red:
                basis.append((red, comb))
        red, comb = target, 0
        for brow, bcomb in basis:
            low = brow & -brow
            if red & low:
                red ^= brow
                comb ^= bcomb
        if red:
            return None
        return comb


def _reduce_against(row: int, basis: list[int]) -> int:
    for b in basis:
        low = b & -b
        if row & low:
            row ^= b
    return row


def _rank_rows(rows: list[int]) -> int:
    basis: list[int] = []
    for row in rows:
        row = _reduce_against(row, basis)
        if row:
            basis.append(row)
    return len(basis)


def rank_f2(mat: MatF2) -> int:
    """Rank of an F2 matrix by Gaussian elimination on packed rows."""
    return mat.rank()


def homology_rank(d_in: MatF2, d_out: MatF2) -> int:
    """dim ker(d_out) - rank(d_in) for consecutive differentials.

    d_in : C_prev -> C, d_out : C -> C_next.  Raises NotAComplex unless
    d_out . d_in = 0.
    """
    if d_in.ncols and d_out.nrows:
        if d_in.nrows != d_out.ncols:
            raise ValueError("differentials do not share the middle term")
        if not (d_out @ d_in).is_zero():
            raise NotAComplex("d.d != 0")
    dim = d_out.ncols
    h = (dim - rank_f2(d_out)) - rank_f2(d_in)
    assert h >= 0
    return h


# ---------------------------------------------------------------------------
# Integer matrices


class MatZ:
    """Dense integer matrix with exact arithmetic."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: list[list[int]]):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "MatZ":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "MatZ":
        return cls([[0] * ncols for _ in range(nrows)])

    def copy(self) -> "MatZ":
        return MatZ(self.rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatZ) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __matmul__(self, other: "MatZ") -> "MatZ":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        out = [[0] * other.ncols for _ in range(self.nrows)]
        for i in range(self.nrows):
            ri = self.rows[i]
            oi = out[i]
            for k, a in enumerate(ri):
                if a:
                    rk = other.rows[k]
                    for j in range(other.ncols):
                        oi[j] += a * rk[j]
        return MatZ(out)

    def transpose(self) -> "MatZ":
        return MatZ([[self.rows[i][j] for i in range(self.nrows)]
                     for j in range(self.ncols)])

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        m = [r[:] for r in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def diagonal(self) -> list[int]:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]


# Invariant maintained by the helpers below: A = U @ M @ V at every step.
# A row operation M -> E M therefore updates U -> U E^{-1} (a column
# operation on U), and a column operation M -> M F updates V -> F^{-1} V.


def _snf_swap_rows(m, u, i, j):
    m.rows[i], m.rows[j] = m.rows[j], m.rows[i]
    for r in u.rows:
        r[i], r[j] = r[j], r[i]


def _snf_swap_cols(m, v, i, j):
    for r in m.rows:
        r[i], r[j] = r[j], r[i]
    v.rows[i], v.rows[j] = v.rows[j], v.rows[i]


def _snf_addmul_row(m, u, dst, src, c):
    # M: row_dst += c * row_src;  U: col_src -= c * col_dst
    mr = m.rows
    row_src = mr[src]
    row_dst = mr[dst]
    for j in range(m.ncols):
        row_dst[j] += c * row_src[j]
    for r in u.rows:
        r[src] -= c * r[dst]


def _snf_addmul_col(m, v, dst, src, c):
    # M: col_dst += c * col_src;  V: row_src -= c * row_dst
    for r in m.rows:
        r[dst] += c * r[src]
    row_src = v.rows[src]
    row_dst = v.rows[dst]
    for j in range(v.ncols):
        row_src[j] -= c * row_dst[j]


def _snf_negate_row(m, u, i):
    m.rows[i] = [-x for x in m.rows[i]]
    for r in u.rows:
        r[i] = -r[i]


def smith_normal_form(a: MatZ) -> tuple[MatZ, MatZ, MatZ]:
    """Return (U, D, V) with A = U D V, U and V unimodular, D in Smith form.

    D is diagonal with d1 | d2 | ... | dr and dr+1 = ... = 0.
    """
    m = a.copy()
    u = MatZ.identity(a.nrows)
    v = MatZ.identity(a.ncols)
    n = min(a.nrows, a.ncols)

    for t in range(n):
        while True:
            piv = None
            for i in range(t, m.nrows):
                for j in range(t, m.ncols):
                    x = m.rows[i][j]
                    if x and (piv is None or abs(x) < abs(piv[2])):
                        piv = (i, j, x)
            if piv is None:
                break
            i, j, _ = piv
            if i != t:
                _snf_swap_rows(m, u, t, i)
            if j != t:
                _snf_swap_cols(m, v, t, j)
            p = m.rows[t][t]
            dirty = False
            for i in range(t + 1, m.nrows):
                x = m.rows[i][t]
                if x:
                    q = x // p
                    if q:
                        _snf_addmul_row(m, u, i, t, -q)
                    if m.rows[i][t]:
                        dirty = True
            for j in range(t + 1, m.ncols):
                x = m.rows[t][j]
                if x:
                    q = x // p
                    if q:
                        _snf_addmul_col(m, v, j, t, -q)
                    if m.rows[t][j]:
                        dirty = True
            if dirty:
                continue
            # Row and column t are clear; force the pivot to divide the rest,
            # which is what yields the divisibility chain.
            bad_row = None
            for i in range(t + 1, m.nrows):
                if any(x % p for x in m.rows[i][t + 1:]):
                    bad_row = i
                    break
            if bad_row is None:
                break
            _snf_addmul_row(m, u, t, bad_row, 1)
    for t in range(n):
        if m.rows[t][t] < 0:
            _snf_negate_row(m, u, t)
    return u, m, v
