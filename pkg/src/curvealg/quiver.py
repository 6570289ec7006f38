"""The finite-dimensional graded quiver algebra attached to a subspace
W of Q^n.

The quiver has vertices O, p_1, ..., p_n and arrows A_i: p_i -> O (degree 0),
B_i: O -> p_i (degree 1).  Composition is read left to right, so A_i B_i is
the loop at p_i and B_i A_i the loop at O.  The defining relations kill
A_i B_i A_i, B_i A_i B_i, A_i B_j (i != j), and impose
sum x_i B_i A_i = 0 for every (x_i) in W.  The resulting algebra has basis:
the n+1 vertex idempotents, the arrows A_i and B_i, the loops l_i = A_i B_i,
and g = n - rank-deficiency independent loop classes at O; its dimension is
4n + g + 1.

The loop classes at O are the classes of e_i in Q^n / W at the non-pivot
columns of rref(W) (the canonical-complement pivot rule), which makes the
basis deterministic.
"""

from __future__ import annotations

from .linalg import ExactMatrix, ONE, ZERO, rat, rat_str, rref


class SubspaceW:
    """An (n-g)-dimensional subspace of Q^n, given by full-rank rows."""

    __slots__ = ("n", "g", "matrix")

    def __init__(self, n, rows):
        self.n = n
        if isinstance(rows, ExactMatrix):
            self.matrix = rows
        else:
            m = ExactMatrix(len(rows), n)
            for i, row in enumerate(rows):
                if len(row) != n:
                    raise ValueError("row length must be n")
                for j, c in enumerate(row):
                    m.set(i, j, rat(c))
            self.matrix = m
        red, pivots = rref(self.matrix)
        if len(pivots) != self.matrix.rows:
            raise ValueError("W rows are not linearly independent")
        self.g = n - self.matrix.rows

    def scaled(self, lam):
        """Componentwise rescaling (lambda_1 x_1, ..., lambda_n x_n)."""
        rows = [[lam[j] * self.matrix.get(i, j) for j in range(self.n)]
                for i in range(self.matrix.rows)]
        return SubspaceW(self.n, rows)

    @classmethod
    def zero(cls, n):
        return cls(n, [])

    @classmethod
    def full(cls, n):
        return cls(n, ExactMatrix.identity(n).to_lists())

    def to_json(self):
        return {"n": self.n, "rows": self.matrix.to_json()}


class EWAlgebra:
    """Basis-indexed model of the quotient algebra with explicit structure
    constants, Z-grading and quiver source/target data.

    Vertices are numbered 0 (the hub O) and 1..n (the p_i).
    """

    def __init__(self, w: SubspaceW):
        n, g = w.n, w.g
        self.n = n
        self.g = g
        self.w = w

        labels = ["e_O"] + ["e_p%d" % i for i in range(1, n + 1)]
        labels += ["A%d" % i for i in range(1, n + 1)]
        labels += ["B%d" % i for i in range(1, n + 1)]
        labels += ["l%d" % i for i in range(1, n + 1)]

        red, pivots = rref(w.matrix)
        nonpivots = [j for j in range(n) if j not in set(pivots)]
        labels += ["w%d" % (s + 1) for s in range(len(nonpivots))]
        assert len(nonpivots) == g

        self.labels = labels
        self.dim = len(labels)
        assert self.dim == 4 * n + g + 1
        self.index = {lab: k for k, lab in enumerate(labels)}
        self.loop_columns = nonpivots  # w_s represents the class of e_{nonpivots[s]}

        self.e_idx = list(range(n + 1))
        self.a_idx = [n + 1 + i for i in range(n)]          # A_{i+1}
        self.b_idx = [2 * n + 1 + i for i in range(n)]      # B_{i+1}
        self.l_idx = [3 * n + 1 + i for i in range(n)]      # l_{i+1}
        self.w_idx = [4 * n + 1 + s for s in range(g)]
        self.radical = self.a_idx + self.b_idx + self.l_idx + self.w_idx

        deg = [0] * (n + 1) + [0] * n + [1] * n + [1] * n + [1] * g
        self.deg = deg

        src = list(range(n + 1)) + [i + 1 for i in range(n)] + [0] * n \
            + [i + 1 for i in range(n)] + [0] * g
        tgt = list(range(n + 1)) + [0] * n + [i + 1 for i in range(n)] \
            + [i + 1 for i in range(n)] + [0] * g
        self.src = src
        self.tgt = tgt

        # class of e_j in Q^n/W on the basis (e_c)_{c in nonpivots}:
        # for a pivot column p_r the rref row r gives
        # e_{p_r} = -sum_{c nonpivot} R[r][c] e_c  (mod W)
        coset = []
        prow_of = {j: i for i, j in enumerate(pivots)}
        for j in range(n):
            if j in prow_of:
                i = prow_of[j]
                coset.append({s: -red.get(i, c)
                              for s, c in enumerate(nonpivots) if red.get(i, c)})
            else:
                coset.append({nonpivots.index(j): ONE})
        self.coset_coords = coset  # index j-1 shifted: entry per column 0..n-1

        self.table = self._build_table()

    # -- multiplication -----------------------------------------------------

    def _build_table(self):
        table = {}
        for k in range(self.dim):
            for m in range(self.dim):
                if self.tgt[k] != self.src[m]:
                    continue
                prod = self._product(k, m)
                if prod:
                    table[(k, m)] = prod
        return table

    def _product(self, k, m):
        if k in self.e_idx:
            return {m: ONE}
        if m in self.e_idx:
            return {k: ONE}
        # both radical; only two nonzero families survive the relations
        if k in self.a_idx and m in self.b_idx:
            i = self.a_idx.index(k)
            j = self.b_idx.index(m)
            if i == j:
                return {self.l_idx[i]: ONE}
            return {}
        if k in self.b_idx and m in self.a_idx:
            i = self.b_idx.index(k)
            j = self.a_idx.index(m)
            if i == j:
                return {self.w_idx[s]: c for s, c in self.coset_coords[i].items()}
            return {}
        return {}

    def mul_basis(self, k, m):
        """Structure constants of basis_k * basis_m as a sparse vector."""
        return dict(self.table.get((k, m), ()))

    def mul(self, u, v):
        """Product of sparse E-vectors (dict basis index -> coefficient)."""
        out = {}
        for k, ck in u.items():
            for m, cm in v.items():
                prod = self.table.get((k, m))
                if not prod:
                    continue
                c = ck * cm
                for r, cr in prod.items():
                    s = out.get(r, ZERO) + c * cr
                    if s:
                        out[r] = s
                    else:
                        del out[r]
        return out

    def unit(self):
        return {k: ONE for k in self.e_idx}

    def check_associativity(self):
        for a in range(self.dim):
            for b in range(self.dim):
                ab = self.mul_basis(a, b)
                for c in range(self.dim):
                    left = self.mul({k: v for k, v in ab.items()}, {c: ONE})
                    right = self.mul({a: ONE}, self.mul_basis(b, c))
                    if left != right:
                        return False
        return True

    # -- views --------------------------------------------------------------

    def is_idempotent(self, k):
        return k < self.n + 1

    def hom_basis(self, u, v, d=None):
        """Basis indices of e_u E e_v, optionally restricted to degree d."""
        return [k for k in range(self.dim)
                if self.src[k] == u and self.tgt[k] == v
                and (d is None or self.deg[k] == d)]

    def graded_dims(self):
        out = {}
        for k in range(self.dim):
            out[self.deg[k]] = out.get(self.deg[k], 0) + 1
        return out

    def to_json(self):
        sc = {}
        for (k, m), prod in sorted(self.table.items()):
            sc["%s.%s" % (self.labels[k], self.labels[m])] = {
                self.labels[r]: rat_str(c) for r, c in sorted(prod.items())}
        return {
            "n": self.n,
            "g": self.g,
            "w": self.w.to_json(),
            "basis": list(self.labels),
            "grading": {self.labels[k]: self.deg[k] for k in range(self.dim)},
            "structure_constants": sc,
        }

    def __repr__(self):
        return "EWAlgebra(n=%d, g=%d, dim=%d)" % (self.n, self.g, self.dim)


def build_ew(w: SubspaceW) -> EWAlgebra:
    return EWAlgebra(w)


class AlgebraMap:
    """A linear map between two EWAlgebras given on basis elements."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = images  # list of sparse vectors, one per source basis elt

    def apply(self, u):
        out = {}
        for k, c in u.items():
            for r, cr in self.images[k].items():
                s = out.get(r, ZERO) + c * cr
                if s:
                    out[r] = s
                else:
                    del out[r]
        return out

    def intertwines(self):
        """Check map(x*y) == map(x)*map(y) on every basis pair."""
        E, F = self.source, self.target
        for a in range(E.dim):
            for b in range(E.dim):
                lhs = self.apply(E.mul_basis(a, b))
                rhs = F.mul(self.images[a], self.images[b])
                if lhs != rhs:
                    return False
        return True

    def compose(self, second):
        """second after self (source of second = target of self)."""
        images = [second.apply(img) for img in self.images]
        return AlgebraMap(self.source, second.target, images)

    def is_identity(self):
        return (self.source is self.target or
                self.source.labels == self.target.labels) and \
            all(img == {k: ONE} for k, img in enumerate(self.images))


def gm_rescale(e: EWAlgebra, lam) -> AlgebraMap:
    """The torus isomorphism A_i -> A_i, B_i -> lambda_i B_i onto the algebra
    of the componentwise-rescaled subspace."""
    lam = [rat(x) for x in lam]
    if len(lam) != e.n:
        raise ValueError("need one scalar per marked point")
    if any(not x for x in lam):
        raise ValueError("all rescaling factors must be nonzero")
    target = EWAlgebra(e.w.scaled(lam))
    images = []
    for k in range(e.dim):
        if k in e.e_idx or k in e.a_idx:
            images.append({k: ONE})
        elif k in e.b_idx:
            i = e.b_idx.index(k)
            images.append({k: lam[i]})
        elif k in e.l_idx:
            i = e.l_idx.index(k)
            images.append({k: lam[i]})
        else:
            s = e.w_idx.index(k)
            col = e.loop_columns[s]
            # image of the loop B_c A_c scaled by lambda_c, in target coordinates
            img = {target.w_idx[s2]: lam[col] * c
                   for s2, c in target.coset_coords[col].items()}
            images.append(img)
    return AlgebraMap(e, target, images)
