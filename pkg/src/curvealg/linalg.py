"""Exact rational linear algebra: rref, rank, kernels, canonical complements.

Everything is computed over Q with exact arithmetic (gmpy2.mpq when
available, fractions.Fraction otherwise).  No floating point anywhere.
Matrices are stored sparsely; vectors are dicts index -> coefficient with
no stored zeros.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as _ratimpl
except ImportError:  # pragma: no cover
    from fractions import Fraction as _ratimpl

ZERO = _ratimpl(0)
ONE = _ratimpl(1)


def rat(a, b=None):
    """Exact rational from ints, strings like "p/q", or another rational."""
    if b is None:
        if isinstance(a, str):
            return _ratimpl(a.strip())
        return _ratimpl(a)
    return _ratimpl(a) / _ratimpl(b)


def rat_str(x):
    """Serialize as "p" or "p/q" with positive denominator."""
    return str(x)


# ---------------------------------------------------------------------------
# sparse vectors


def vec_add(u, v):
    w = dict(u)
    for i, c in v.items():
        s = w.get(i, ZERO) + c
        if s:
            w[i] = s
        else:
            w.pop(i, None)
    return w


def vec_scale(u, c):
    if not c:
        return {}
    return {i: c * x for i, x in u.items()}


def vec_addmul(u, c, v):
    """u += c*v in place, dropping zeros."""
    if not c:
        return u
    for i, x in v.items():
        s = u.get(i, ZERO) + c * x
        if s:
            u[i] = s
        else:
            u.pop(i, None)
    return u


def vec_from_list(xs):
    return {i: rat(x) for i, x in enumerate(xs) if rat(x)}


def vec_to_list(u, n):
    return [u.get(i, ZERO) for i in range(n)]


# ---------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Sparse matrix over Q. Entries are kept as rows: dict i -> {j: c}."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        self.data = {}
        if data:
            for (i, j), c in data.items():
                self.set(i, j, c)

    @classmethod
    def from_rows(cls, rowlists):
        rows = len(rowlists)
        cols = len(rowlists[0]) if rows else 0
        m = cls(rows, cols)
        for i, row in enumerate(rowlists):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, c in enumerate(row):
                m.set(i, j, rat(c))
        return m

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.set(i, i, ONE)
        return m

    @classmethod
    def from_columns(cls, columns, nrows):
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, c in col.items():
                m.set(i, j, c)
        return m

    def set(self, i, j, c):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        c = rat(c)
        row = self.data.get(i)
        if c:
            if row is None:
                row = self.data[i] = {}
            row[j] = c
        elif row is not None:
            row.pop(j, None)
            if not row:
                del self.data[i]

    def get(self, i, j):
        return self.data.get(i, {}).get(j, ZERO)

    def row(self, i):
        return dict(self.data.get(i, {}))

    def column(self, j):
        return {i: row[j] for i, row in self.data.items() if j in row}

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for i, row in self.data.items():
            for j, c in row.items():
                cols[j][i] = c
        return cols

    def nnz(self):
        return sum(len(r) for r in self.data.values())

    def transpose(self):
        m = ExactMatrix(self.cols, self.rows)
        for i, row in self.data.items():
            for j, c in row.items():
                m.set(j, i, c)
        return m

    def apply(self, v):
        """Matrix times sparse vector (dict)."""
        out = {}
        for i, row in self.data.items():
            s = ZERO
            for j, c in row.items():
                x = v.get(j)
                if x is not None:
                    s += c * x
            if s:
                out[i] = s
        return out

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = ExactMatrix(self.rows, other.cols)
        for i, row in self.data.items():
            acc = {}
            for k, c in row.items():
                orow = other.data.get(k)
                if orow:
                    vec_addmul(acc, c, orow)
            for j, c in acc.items():
                out.set(i, j, c)
        return out

    def to_lists(self):
        return [[self.get(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def copy(self):
        m = ExactMatrix(self.rows, self.cols)
        m.data = {i: dict(row) for i, row in self.data.items()}
        return m

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return "ExactMatrix(%d x %d, nnz=%d)" % (self.rows, self.cols, self.nnz())

    def is_zero(self):
        return not self.data

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return [[rat_str(self.get(i, j)) for j in range(self.cols)]
                for i in range(self.rows)]

    @classmethod
    def from_json(cls, obj):
        return cls.from_rows([[rat(x) for x in row] for row in obj])


# ---------------------------------------------------------------------------
# elimination


def rref(m):
    """Reduced row echelon form. Returns (ExactMatrix, pivot column list).

    The RREF is unique, hence deterministic regardless of pivot choices.
    """
    work = [dict(m.data.get(i, {})) for i in range(m.rows)]
    pivots = []
    pivot_rows = []  # parallel to pivots: row dict holding that pivot
    next_row = 0
    for j in range(m.cols):
        sel = None
        for i in range(next_row, m.rows):
            if work[i].get(j):
                sel = i
                break
        if sel is None:
            continue
        work[next_row], work[sel] = work[sel], work[next_row]
        prow = work[next_row]
        inv = ONE / prow[j]
        if inv != ONE:
            for k in list(prow):
                prow[k] *= inv
        for i in range(m.rows):
            if i != next_row and work[i].get(j):
                vec_addmul(work[i], -work[i][j], prow)
        pivots.append(j)
        pivot_rows.append(prow)
        next_row += 1
    out = ExactMatrix(m.rows, m.cols)
    out.data = {i: row for i, row in enumerate(work) if row}
    return out, pivots


def rank(m):
    return rank_of_columns(m.columns())


def kernel_basis(m):
    """Basis of the null space, as a Subspace of dimension cols - rank.

    One basis vector per free column, in increasing column order; the free
    coordinate is set to 1 (deterministic presentation).
    """
    r, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    # row index of each pivot column
    prow_of = {j: i for i, j in enumerate(pivots)}
    for j in range(m.cols):
        if j in pivset:
            continue
        v = {j: ONE}
        for pj, pi in prow_of.items():
            c = r.get(pi, j)
            if c:
                v[pj] = -c
        basis.append(v)
    return Subspace(m.cols, basis)


def image_basis(m):
    """Basis of the column span: the original columns at rref pivot indices."""
    _, pivots = rref(m)
    return Subspace(m.rows, [m.column(j) for j in pivots])


def solve(m, b):
    """Some x with m x = b, or None. Free variables are set to zero."""
    aug = m.copy()
    bcol = ExactMatrix(m.rows, m.cols + 1)
    bcol.data = {i: dict(row) for i, row in aug.data.items()}
    bcol.cols = m.cols + 1
    for i, c in b.items():
        bcol.set(i, m.cols, c)
    r, pivots = rref(bcol)
    if pivots and pivots[-1] == m.cols:
        return None
    x = {}
    for row_i, j in enumerate(pivots):
        c = r.get(row_i, m.cols)
        if c:
            x[j] = c
    return x


class Subspace:
    """A subspace of Q^n given by an independent list of sparse vectors."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis, check=False):
        self.ambient_dim = ambient_dim
        self.basis = list(basis)
        if check and rank(self.matrix()) != len(self.basis):
            raise ValueError("basis vectors are dependent")

    @property
    def dim(self):
        return len(self.basis)

    def matrix(self):
        """Matrix with the basis vectors as rows."""
        m = ExactMatrix(len(self.basis), self.ambient_dim)
        for i, v in enumerate(self.basis):
            for j, c in v.items():
                m.set(i, j, c)
        return m

    def contains(self, v):
        cols = [dict(b) for b in self.basis]
        return rank_of_columns(cols) == rank_of_columns(cols + [dict(v)])

    def __eq__(self, other):
        if not isinstance(other, Subspace) or self.ambient_dim != other.ambient_dim:
            return False
        if self.dim != other.dim:
            return False
        joint = [dict(v) for v in self.basis] + [dict(v) for v in other.basis]
        return rank_of_columns(joint) == self.dim


def canonical_complement(sub):
    """Span of the standard basis vectors at the non-pivot columns of
    rref(basis-as-rows).

    Depends only on the subspace, not on its presented basis, and satisfies
    sub + complement = ambient with zero intersection.
    """
    _, pivots = rref(sub.matrix())
    pivset = set(pivots)
    basis = [{j: ONE} for j in range(sub.ambient_dim) if j not in pivset]
    return Subspace(sub.ambient_dim, basis)


# ---------------------------------------------------------------------------
# fast rank for large sparse systems


def rank_of_columns(columns):
    """Rank of the span of sparse column vectors.

    Splits the incidence graph into connected components first, then runs
    sparse elimination with a fill-reducing pivot choice per component.
    Any pivot strategy yields the same rank, so this path is free to be
    greedy while rref stays canonical.
    """
    cols = [dict(c) for c in columns if c]
    if not cols:
        return 0
    # union-find over row indices
    parent = {}

    def find(x):
        r = x
        while parent[r] != r:
            r = parent[r]
        while parent[x] != r:
            parent[x], x = r, parent[x]
        return r

    for c in cols:
        it = iter(c)
        first = next(it)
        if first not in parent:
            parent[first] = first
        rf = find(first)
        for i in it:
            if i not in parent:
                parent[i] = i
            ri = find(i)
            if ri != rf:
                parent[ri] = rf
    groups = {}
    for c in cols:
        key = find(next(iter(c)))
        groups.setdefault(key, []).append(c)
    return sum(_rank_component(g) for g in groups.values())


def _rank_component(cols):
    rk = 0
    # row -> set of column indices still containing it
    row_use = {}
    alive = list(range(len(cols)))
    for ci in alive:
        for i in cols[ci]:
            row_use.setdefault(i, set()).add(ci)
    remaining = set(alive)
    while remaining:
        # pick the sparsest live column
        ci = min(remaining, key=lambda k: (len(cols[k]), k))
        col = cols[ci]
        remaining.discard(ci)
        if not col:
            continue
        rk += 1
        # pick pivot row used by fewest other columns
        pr = min(col, key=lambda i: (len(row_use[i]), i))
        pc = col[pr]
        users = [k for k in row_use[pr] if k != ci and k in remaining]
        for k in users:
            other = cols[k]
            factor = -other[pr] / pc
            for i, v in col.items():
                s = other.get(i, ZERO) + factor * v
                if s:
                    if i not in other:
                        row_use.setdefault(i, set()).add(k)
                    other[i] = s
                else:
                    if i in other:
                        del other[i]
                        row_use[i].discard(k)
        for i in col:
            row_use[i].discard(ci)
    return rk
