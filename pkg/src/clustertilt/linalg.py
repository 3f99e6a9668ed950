"""Exact dense and sparse linear algebra over the active scalar field.

Matrices act on row vectors: a d_x by d_y matrix sends v to v @ M.  All
arithmetic is exact; rank decisions are therefore never approximate.
"""

from .scalars import scalar


class Matrix:
    """Dense matrix with explicit shape (so that 0-row or 0-column matrices keep their size)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, nrows=None, ncols=None):
        rows = [[scalar(x) for x in r] for r in rows]
        self.nrows = len(rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        self.ncols = ncols
        if len(rows) != self.nrows or any(len(r) != ncols for r in rows):
            raise ValueError(f"ragged matrix data for shape {self.nrows}x{ncols}")
        self.rows = rows

    @classmethod
    def _raw(cls, rows, nrows, ncols):
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = nrows
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, nrows, ncols):
        z = scalar(0)
        return cls._raw([[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, n):
        m = cls.zeros(n, n)
        one = scalar(1)
        for i in range(n):
            m.rows[i][i] = one
        return m

    @classmethod
    def from_rows(cls, rows, ncols):
        """Build from a list of row vectors that all have length ``ncols``."""
        return cls._raw([list(r) for r in rows], len(rows), ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {[[str(x) for x in r] for r in self.rows]})"

    def copy(self):
        return Matrix._raw([list(r) for r in self.rows], self.nrows, self.ncols)

    def is_zero(self):
        return not any(x for r in self.rows for x in r)

    def transpose(self):
        return Matrix._raw([list(c) for c in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)],
                           self.ncols, self.nrows)

    T = property(transpose)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = scalar(0)
        cols = other.ncols
        out = []
        orows = other.rows
        for r in self.rows:
            acc = [z] * cols
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j in range(cols):
                        b = ok[j]
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix._raw(out, self.nrows, cols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.nrows, self.ncols)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = scalar(c)
        return Matrix._raw([[c * a for a in r] for r in self.rows], self.nrows, self.ncols)

    def row_vector(self, v):
        """Apply to a row vector: v @ self."""
        z = scalar(0)
        acc = [z] * self.ncols
        for a, r in zip(v, self.rows):
            if a:
                for j, b in enumerate(r):
                    if b:
                        acc[j] = acc[j] + a * b
        return acc

    def select_rows(self, idx):
        return Matrix._raw([list(self.rows[i]) for i in idx], len(idx), self.ncols)

    def select_cols(self, idx):
        return Matrix._raw([[r[j] for j in idx] for r in self.rows], self.nrows, len(idx))

    def block(self, r0, r1, c0, c1):
        return Matrix._raw([r[c0:c1] for r in self.rows[r0:r1]], r1 - r0, c1 - c0)

    def rref(self):
        """Reduced row echelon form: returns (nonzero rows as Matrix, pivot columns)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        rank = 0
        for c in range(self.ncols):
            p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
            if p is None:
                continue
            rows[rank], rows[p] = rows[p], rows[rank]
            pr = rows[rank]
            inv = 1 / pr[c]
            pr = [x * inv for x in pr]
            rows[rank] = pr
            for i in range(len(rows)):
                if i != rank and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
            pivots.append(c)
            rank += 1
            if rank == len(rows):
                break
        return Matrix._raw(rows[:rank], rank, self.ncols), pivots

    def rank(self):
        return self.rref()[0].nrows

    def nullspace(self):
        """Basis (as rows of a Matrix) of {x : self @ x = 0}, x a column vector."""
        r, piv = self.rref()
        free = [c for c in range(self.ncols) if c not in set(piv)]
        z = scalar(0)
        one = scalar(1)
        basis = []
        for f in free:
            v = [z] * self.ncols
            v[f] = one
            for i, p in enumerate(piv):
                v[p] = -r.rows[i][f]
            basis.append(v)
        return Matrix._raw(basis, len(basis), self.ncols)

    def left_nullspace(self):
        """Basis (as rows) of {v : v @ self = 0}."""
        return self.transpose().nullspace()

    def row_space(self):
        return self.rref()[0]

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        aug = Matrix._raw([r + e for r, e in zip(self.rows, Matrix.identity(n).rows)], n, 2 * n)
        r, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return r.block(0, n, n, 2 * n)

    def solve_left(self, b):
        """Return X with X @ self = b, or None when no solution exists."""
        # X self = b  <=>  self^T X^T = b^T
        sol = self.transpose().solve_right(b.transpose())
        return None if sol is None else sol.transpose()

    def solve_right(self, b):
        """Return X with self @ X = b, or None when no solution exists."""
        n, m = self.shape
        aug = Matrix._raw([r + br for r, br in zip(self.rows, b.rows)], n, m + b.ncols)
        r, piv = aug.rref()
        if piv and piv[-1] >= m:
            return None
        x = Matrix.zeros(m, b.ncols)
        for i, p in enumerate(piv):
            x.rows[p] = r.rows[i][m:]
        return x


def vstack(mats, ncols):
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column mismatch in vstack")
        rows.extend(list(r) for r in m.rows)
    return Matrix._raw(rows, len(rows), ncols)


def hstack(mats, nrows):
    rows = [[] for _ in range(nrows)]
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("row mismatch in hstack")
        for i in range(nrows):
            rows[i].extend(m.rows[i])
    return Matrix._raw(rows, nrows, sum(m.ncols for m in mats))


def block_diag(mats):
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    out = Matrix.zeros(nr, nc)
    r0 = c0 = 0
    for m in mats:
        for i in range(m.nrows):
            out.rows[r0 + i][c0:c0 + m.ncols] = m.rows[i]
        r0 += m.nrows
        c0 += m.ncols
    return out


def in_row_space(v, rref_rows, pivots):
    """Reduce v against an rref basis; return the residual list."""
    v = list(v)
    for r, p in zip(rref_rows.rows, pivots):
        if v[p]:
            f = v[p]
            v = [a - f * b for a, b in zip(v, r)]
    return v


def complement_basis(sub, ncols):
    """Rows spanning a complement of the row space of ``sub`` inside k^ncols (standard vectors)."""
    r, piv = sub.rref()
    one = scalar(1)
    z = scalar(0)
    rows = []
    ps = set(piv)
    for c in range(ncols):
        if c not in ps:
            v = [z] * ncols
            v[c] = one
            rows.append(v)
    return Matrix._raw(rows, len(rows), ncols)


def intersect_row_spaces(a, b):
    """Row basis of rowspace(a) ∩ rowspace(b)."""
    n = a.ncols
    if a.nrows == 0 or b.nrows == 0:
        return Matrix.zeros(0, n)
    # x a = y b  <=>  [x | y] [a; -b] = 0
    stacked = vstack([a, b.scale(-1)], n)
    ker = stacked.left_nullspace()
    coeffs = ker.select_cols(list(range(a.nrows)))
    return (coeffs @ a).row_space()


class Echelon:
    """Incremental sparse echelon basis of vectors indexed by hashable keys.

    Each stored row has a pivot key that is the smallest of its support under
    ``order`` and that appears in no other row, so reduction is a single pass.
    """

    def __init__(self, order):
        self.order = order
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        v = {k: c for k, c in vec.items() if c}
        for p in [k for k in v if k in self.rows]:
            c = v.get(p)
            if not c:
                continue
            for k, a in self.rows[p].items():
                nv = v.get(k, 0) - c * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec):
        """Insert ``vec``; return True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v, key=self.order)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, a in v.items():
                    nv = row.get(k, 0) - c * a
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return True

    def contains(self, vec):
        return not self.reduce(vec)
