"""
Exact sparse linear algebra over the rationals.

Values are ``fractions.Fraction``; matrices are dictionaries keyed by
(row, col) with no stored zeros.  Elimination picks pivots by a
Markowitz-style fill-in estimate, breaking ties towards unit pivots.
"""

from fractions import Fraction


def frac(v):
    """Parse an int, Fraction or "p/q" string."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


def fmt(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


class DimensionError(ValueError):
    pass


class SparseMatrix:
    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise DimensionError("entry (%d,%d) outside %dx%d" % (r, c, nrows, ncols))
            v = frac(v)
            if v:
                self.entries[r, c] = v

    @classmethod
    def from_dense(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(len(rows), ncols, ent)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __repr__(self):
        return "SparseMatrix(%d, %d, nnz=%d)" % (self.nrows, self.ncols, len(self.entries))

    def rows(self):
        out = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def to_dense(self):
        m = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            m[r][c] = v
        return m

    def transpose(self):
        return SparseMatrix(self.ncols, self.nrows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionError("cannot multiply %s by %s" % (self.shape, other.shape))
        right = other.rows()
        out = {}
        for (r, k), v in self.entries.items():
            for c, w in right.get(k, {}).items():
                out[r, c] = out.get(r, 0) + v * w
        return SparseMatrix(self.nrows, other.ncols, out)

    def apply(self, vec):
        if len(vec) != self.ncols:
            raise DimensionError("vector length %d, expected %d" % (len(vec), self.ncols))
        out = [Fraction(0)] * self.nrows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    def submatrix(self, rows=None, cols=None):
        rows = list(range(self.nrows)) if rows is None else list(rows)
        cols = list(range(self.ncols)) if cols is None else list(cols)
        ri = {r: i for i, r in enumerate(rows)}
        ci = {c: j for j, c in enumerate(cols)}
        ent = {(ri[r], ci[c]): v for (r, c), v in self.entries.items()
               if r in ri and c in ci}
        return SparseMatrix(len(rows), len(cols), ent)

    def is_zero(self):
        return not self.entries


def _row_dicts(rows):
    return [dict(r) for r in rows if r]


def _eliminate(rows):
    """
    Markowitz elimination on a list of row dictionaries.

    Returns the number of pivots.  The input list is consumed.
    """
    rows = {i: r for i, r in enumerate(_row_dicts(rows))}
    cols = {}
    for i, r in rows.items():
        for c in r:
            cols.setdefault(c, set()).add(i)
    rank = 0
    while rows:
        # shortest row first, then the sparsest column within it
        pi = min(rows, key=lambda i: len(rows[i]))
        r = rows[pi]
        pc = min(r, key=lambda c: ((len(cols[c]) - 1) * (len(r) - 1), abs(r[c]) != 1, c))
        prow = rows.pop(pi)
        for c in prow:
            cols[c].discard(pi)
        pv = prow[pc]
        for i in list(cols[pc]):
            r = rows[i]
            f = Fraction(r[pc]) / pv
            for c, v in prow.items():
                nv = r.get(c, 0) - f * v
                if nv:
                    if c not in r:
                        cols.setdefault(c, set()).add(i)
                    r[c] = nv
                elif c in r:
                    del r[c]
                    cols[c].discard(i)
            if not r:
                del rows[i]
        rank += 1
    return rank


def rank(m):
    """Exact rank of a SparseMatrix or a dense list of rows."""
    if isinstance(m, SparseMatrix):
        return _eliminate(list(m.rows().values()))
    return _eliminate([{j: frac(v) for j, v in enumerate(r) if v} for r in m])


def rref(rows, ncols):
    """
    Reduced row echelon form of dense rows (lists of Fractions).

    Returns (reduced rows, pivot columns).
    """
    rows = [[frac(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel_basis(m):
    """Basis of {v : m v = 0} as lists of Fractions."""
    if not isinstance(m, SparseMatrix):
        m = SparseMatrix.from_dense(m)
    red, piv = rref(m.to_dense(), m.ncols)
    free = [c for c in range(m.ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(m, b):
    """
    One solution x of m x = b, or None when inconsistent.

    Free variables are set to zero.
    """
    if not isinstance(m, SparseMatrix):
        m = SparseMatrix.from_dense(m)
    if len(b) != m.nrows:
        raise DimensionError("right-hand side length %d, expected %d" % (len(b), m.nrows))
    dense = m.to_dense()
    aug = [row + [frac(v)] for row, v in zip(dense, b)]
    red, piv = rref(aug, m.ncols + 1)
    if m.ncols in piv:
        return None
    x = [Fraction(0)] * m.ncols
    for row, pc in zip(red, piv):
        x[pc] = row[-1]
    return x


def solve_membership(v, span):
    """
    Decide whether ``v`` lies in the span of the given vectors.

    Returns (True, coefficients) or (False, None).
    """
    v = [frac(a) for a in v]
    if not span:
        return (not any(v), [] if not any(v) else None)
    n = len(v)
    if any(len(s) != n for s in span):
        raise DimensionError("spanning vectors must have length %d" % n)
    cols = SparseMatrix.from_dense([[frac(s[i]) for s in span] for i in range(n)], len(span))
    x = solve(cols, v)
    if x is None:
        return False, None
    return True, x


def rank_of_rows(rows):
    """Rank of a family of sparse vectors given as {index: value} dicts."""
    return _eliminate([dict(r) for r in rows])
