"""Special-curve coordinate algebras, the branchwise polynomial embedding,
basis verification, Krichever windows, Grassmannian points, and transversal
gluing.

A special curve is encoded by (n, S, a): n branches, a subset S of branch
indices of size g, and a rational matrix a = (a_{ij}) indexed by i in S,
j not in S.  Its affine coordinate ring is generated by h_{S,j} (degree 1,
j not in S), f_i (degree 2) and h_i (degree 3) for i in S, and embeds into
a direct sum of polynomial rings, one per branch, by
    f_i -> x_i^2,   h_i -> x_i^3,   h_{S,j} -> x_j + sum_i a_{ij} x_i.
The marked point of each branch sits at x = infinity with local parameter
t = 1/x, so re-expanding an embedded function into the Krichever model is
exponent negation.
"""

from __future__ import annotations

import itertools

from .linalg import (ExactMatrix, ONE, ZERO, kernel_basis, rank_of_columns,
                     rat, rat_str)
from .poly import LaurentVector, PolyRing, RelationSystem, WindowUnderflowError
from .quiver import SubspaceW

# order weights making every relation template's left side leading:
# they satisfy 2*w_s > w_f, w_f + w_s > w_h, w_h + w_s > 2*w_f, 2*w_h > 3*w_f.
ORDER_W_HS = 20
ORDER_W_F = 36
ORDER_W_H = 55


class SpecialCurveData:
    """(n, S, a) with |S| = g and a rational matrix (a_{ij})_{i in S, j not in S}."""

    __slots__ = ("n", "S", "a")

    def __init__(self, n, S, a=None):
        self.n = n
        self.S = tuple(sorted(set(S)))
        if any(not 1 <= i <= n for i in self.S):
            raise ValueError("S must be a subset of 1..n")
        self.a = {}
        comp = self.complement()
        if a:
            for (i, j), c in a.items():
                if i not in self.S or j not in comp:
                    raise ValueError("a is indexed by S x complement")
                c = rat(c)
                if c:
                    self.a[(i, j)] = c

    @property
    def g(self):
        return len(self.S)

    def complement(self):
        sset = set(self.S)
        return tuple(j for j in range(1, self.n + 1) if j not in sset)

    def a_entry(self, i, j):
        return self.a.get((i, j), ZERO)

    @classmethod
    def from_rows(cls, n, S, rows):
        """a given as a dense matrix, rows over sorted S, columns over the
        sorted complement."""
        d = cls(n, S)
        comp = d.complement()
        a = {}
        for r, i in enumerate(d.S):
            for c, j in enumerate(comp):
                a[(i, j)] = rat(rows[r][c])
        return cls(n, S, a)

    def to_json(self):
        comp = self.complement()
        return {"n": self.n, "S": list(self.S),
                "a": [[rat_str(self.a_entry(i, j)) for j in comp] for i in self.S]}

    @classmethod
    def from_json(cls, obj):
        return cls.from_rows(obj["n"], obj["S"], obj.get("a", []))

    def __repr__(self):
        return "SpecialCurveData(n=%d, S=%s)" % (self.n, list(self.S))


class CurveAlgebraPresentation:
    """The graded relation system of a special curve, with generator
    bookkeeping and the claimed-basis predicate."""

    def __init__(self, data):
        self.data = data
        n, S, comp = data.n, data.S, data.complement()
        names = (["hS_%d" % j for j in comp] + ["f_%d" % i for i in S]
                 + ["h_%d" % i for i in S])
        weights = [1] * len(comp) + [2] * len(S) + [3] * len(S)
        order_w = [ORDER_W_HS] * len(comp) + [ORDER_W_F] * len(S) + [ORDER_W_H] * len(S)
        ring = PolyRing(names, weights, order_w)
        self.ring = ring
        self.hs = {j: ring.var("hS_%d" % j) for j in comp}
        self.f = {i: ring.var("f_%d" % i) for i in S}
        self.h = {i: ring.var("h_%d" % i) for i in S}

        rels = []
        for i, ip in itertools.combinations(S, 2):
            rels.append(self.f[i] * self.f[ip])
            rels.append(self.h[i] * self.h[ip])
        for i in S:
            for ip in S:
                if i != ip:
                    rels.append(self.f[i] * self.h[ip])
        for i in S:
            rels.append(self.h[i] ** 2 - self.f[i] ** 3)
        for j, jp in itertools.combinations(comp, 2):
            rhs = ring.zero()
            for i in S:
                rhs = rhs + self.f[i].scale(data.a_entry(i, j) * data.a_entry(i, jp))
            rels.append(self.hs[j] * self.hs[jp] - rhs)
        for i in S:
            for j in comp:
                rels.append(self.f[i] * self.hs[j] - self.h[i].scale(data.a_entry(i, j)))
                rels.append(self.h[i] * self.hs[j] - (self.f[i] ** 2).scale(data.a_entry(i, j)))

        nhs, ns = len(comp), len(S)

        def claimed(exps):
            hs_part = exps[:nhs]
            f_part = exps[nhs:nhs + ns]
            h_part = exps[nhs + ns:]
            if sum(1 for e in hs_part if e) > 1:
                return False
            if any(hs_part) and (any(f_part) or any(h_part)):
                return False
            used = [k for k in range(ns) if f_part[k] or h_part[k]]
            if len(used) > 1:
                return False
            return all(e <= 1 for e in h_part)

        self.system = RelationSystem(
            ring, rels,
            claimed_basis="powers of a single h_S_j, or f_i^m, or f_i^m h_i",
            is_claimed_basis_monomial=claimed)

    def claimed_basis_monomials(self, degree_bound):
        return [e for e in self.ring.monomials_up_to(degree_bound)
                if self.system.is_claimed_basis_monomial(e)]


def special_curve_algebra(data) -> CurveAlgebraPresentation:
    return CurveAlgebraPresentation(data)


# ---------------------------------------------------------------------------
# the branchwise embedding


def rho_generator_images(data, corrupt=None):
    """Images of the generators as branch polynomials {(branch, exp): c},
    branches numbered 0..n-1 for points 1..n.  corrupt maps a generator name
    to a replacement image (used by the adversarial tests)."""
    images = {}
    for j in data.complement():
        img = {(j - 1, 1): ONE}
        for i in data.S:
            c = data.a_entry(i, j)
            if c:
                img[(i - 1, 1)] = c
        images["hS_%d" % j] = img
    for i in data.S:
        images["f_%d" % i] = {(i - 1, 2): ONE}
        images["h_%d" % i] = {(i - 1, 3): ONE}
    if corrupt:
        images.update(corrupt)
    return images


def bp_mul(u, v):
    """Branchwise product of branch polynomials."""
    out = {}
    for (b1, e1), c1 in u.items():
        for (b2, e2), c2 in v.items():
            if b1 != b2:
                continue
            key = (b1, e1 + e2)
            s = out.get(key, ZERO) + c1 * c2
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def bp_add(u, v):
    out = dict(u)
    for key, c in v.items():
        s = out.get(key, ZERO) + c
        if s:
            out[key] = s
        else:
            del out[key]
    return out


def bp_scale(u, c):
    return {k: c * x for k, x in u.items()} if c else {}


def bp_eval(u, branch, value):
    """Value at the point of the given branch with coordinate x = value."""
    total = ZERO
    for (b, e), c in u.items():
        if b != branch:
            continue
        term = c
        for _ in range(e):
            term = term * value
        total += term
    return total


def rho_monomial(pres, exps, images=None, branches=None):
    """rho of a monomial in the generators, by multiplicative substitution."""
    data = pres.data
    n = branches if branches is not None else data.n
    if images is None:
        images = rho_generator_images(data)
    out = {(b, 0): ONE for b in range(n)}
    for name, e in zip(pres.ring.names, exps):
        img = images[name]
        for _ in range(e):
            out = bp_mul(out, img)
    return out


def rho_embed(pres, p, degree_bound=None, images=None):
    """rho of a polynomial in the presentation's generators."""
    if degree_bound is not None and p.wdeg() > degree_bound:
        raise ValueError("degree above bound")
    out = {}
    for exps, c in p.terms.items():
        out = bp_add(out, bp_scale(rho_monomial(pres, exps, images), c))
    return out


# ---------------------------------------------------------------------------
# basis verification


class BasisReport:
    __slots__ = ("passed", "reason")

    def __init__(self, passed, reason=""):
        self.passed = passed
        self.reason = reason

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"verdict": "PASS" if self.passed else "FAIL", "reason": self.reason}


def verify_basis(data, degree_bound, corrupt=None):
    """Check, degree by degree up to the bound, that the claimed monomials
    embed to an independent family, that every monomial's image lies in
    their span, and that reduction by the relations is compatible with the
    embedding (rho of a monomial equals rho of its normal form)."""
    pres = special_curve_algebra(data)
    images = rho_generator_images(data, corrupt)
    ring = pres.ring
    by_deg_basis = {}
    by_deg_all = {}
    for e in ring.monomials_up_to(degree_bound):
        d = ring.wdeg(e)
        by_deg_all.setdefault(d, []).append(e)
        if pres.system.is_claimed_basis_monomial(e):
            by_deg_basis.setdefault(d, []).append(e)

    def as_column(bp):
        return {key: c for key, c in bp.items()}

    for d in range(degree_bound + 1):
        basis_cols = [as_column(rho_monomial(pres, e, images))
                      for e in by_deg_basis.get(d, [])]
        r_basis = rank_of_columns(basis_cols)
        if r_basis != len(basis_cols):
            return BasisReport(False, "degree %d: claimed monomials dependent" % d)
        for e in by_deg_all.get(d, []):
            col = as_column(rho_monomial(pres, e, images))
            if rank_of_columns(basis_cols + [col]) != r_basis:
                return BasisReport(False, "degree %d: image of %s escapes the span"
                                   % (d, e))
            nf = pres.system.normal_form(ring.monomial(e), degree_bound)
            if rho_embed(pres, nf, images=images) != {k: c for k, c in col.items()}:
                return BasisReport(False, "degree %d: reduction of %s changes the image"
                                   % (d, e))
    return BasisReport(True)


def component_type(data, i):
    """cuspidal iff the a-row of branch i vanishes identically."""
    if i not in data.S:
        raise ValueError("component type is defined for i in S")
    if all(not data.a_entry(i, j) for j in data.complement()):
        return "cuspidal"
    return "rational"


def grassmannian_point(data) -> SubspaceW:
    """The subspace spanned by e_j + sum_i a_{ij} e_i for j not in S."""
    rows = []
    for j in data.complement():
        row = [ZERO] * data.n
        row[j - 1] = ONE
        for i in data.S:
            row[i - 1] = data.a_entry(i, j)
        rows.append(row)
    return SubspaceW(data.n, rows)


# ---------------------------------------------------------------------------
# Krichever windows


class KricheverWindow:
    """Window model of the subspace of branchwise Laurent expansions of the
    curve algebra, with the three nonspecial-subalgebra verdicts."""

    __slots__ = ("branches", "depth", "subspace", "intersection_dim", "codim",
                 "complement_filled", "verdicts")

    def __init__(self, branches, depth, subspace, intersection_dim, codim,
                 complement_filled):
        self.branches = branches
        self.depth = depth
        self.subspace = subspace
        self.intersection_dim = intersection_dim
        self.codim = codim
        self.complement_filled = complement_filled
        self.verdicts = {
            "intersection_is_constants": intersection_dim == 1,
            "codim_matches": None,  # filled by callers who know g
            "complement_condition": complement_filled,
        }

    def to_json(self):
        return {
            "branches": self.branches,
            "depth": self.depth,
            "dim_subspace": len(self.subspace),
            "intersection_dim": self.intersection_dim,
            "codim": self.codim,
            "verdicts": {k: v for k, v in self.verdicts.items() if v is not None},
        }


def window_from_vectors(vectors, branches, depth):
    """Verdict computations for a list of window-supported Laurent vectors."""
    coords = {}

    def col(v):
        out = {}
        for (b, e), c in v.coeffs.items():
            if not -depth <= e <= depth:
                raise ValueError("vector outside window")
            out[(b, e)] = c
        return out

    wcols = [col(v) for v in vectors]
    total = branches * (2 * depth + 1)
    nonneg = [{(b, e): ONE} for b in range(branches) for e in range(0, depth + 1)]
    geq_m1 = [{(b, e): ONE} for b in range(branches) for e in range(-1, depth + 1)]
    r_w = rank_of_columns(wcols)
    r_w_nonneg = rank_of_columns(wcols + nonneg)
    inter = r_w + len(nonneg) - r_w_nonneg
    codim = total - r_w_nonneg
    filled = rank_of_columns(wcols + geq_m1) == total
    return KricheverWindow(branches, depth, vectors, inter, codim, filled)


def krichever_window(data, depth):
    """Window model for a special curve: basis monomials of weighted degree
    <= depth, re-expanded with x_i = 1/t_i."""
    if depth < 2 * data.g + 4:
        raise WindowUnderflowError(
            "depth must be at least 2g+4 for a trustworthy window")
    pres = special_curve_algebra(data)
    images = rho_generator_images(data)
    vectors = []
    for e in pres.claimed_basis_monomials(depth):
        bp = rho_monomial(pres, e, images)
        v = LaurentVector(data.n, -depth, depth)
        for (b, ex), c in bp.items():
            v.coeffs[(b, -ex)] = c
        vectors.append(v)
    win = window_from_vectors(vectors, data.n, depth)
    win.verdicts["codim_matches"] = win.codim == data.g
    return win


# ---------------------------------------------------------------------------
# gluing


class CurveModel:
    """A curve presented by branch polynomials: a filtered basis of its
    affine algebra inside a direct sum of polynomial rings."""

    __slots__ = ("branches", "depth", "basis", "genus")

    def __init__(self, branches, depth, basis, genus):
        self.branches = branches
        self.depth = depth
        self.basis = basis
        self.genus = genus


def branch_model(data, depth) -> CurveModel:
    pres = special_curve_algebra(data)
    images = rho_generator_images(data)
    basis = [rho_monomial(pres, e, images)
             for e in pres.claimed_basis_monomials(depth)]
    return CurveModel(data.n, depth, basis, data.g)


def glue(left, q_left, right, q_right):
    """Transversal gluing of two curve models at the points q = (branch,
    x-value); the glued algebra is the pairs of functions agreeing at the
    glued point.  Returns (glued CurveModel, report)."""
    for q in (q_left, q_right):
        if q[1] is None:
            raise ValueError("gluing at a marked point (x = infinity) is not allowed")
    if left.depth != right.depth:
        raise ValueError("models must share the filtration depth")
    depth = left.depth
    bl, vl = q_left[0], rat(q_left[1])
    br, vr = q_right[0], rat(q_right[1])
    # kernel of (f, g) -> f(q_left) - g(q_right) on the concatenated basis
    row = {}
    for a, f in enumerate(left.basis):
        c = bp_eval(f, bl, vl)
        if c:
            row[a] = c
    off = len(left.basis)
    for b, gfun in enumerate(right.basis):
        c = bp_eval(gfun, br, vr)
        if c:
            row[off + b] = -c
    mat = ExactMatrix(1, off + len(right.basis))
    for jcol, c in row.items():
        mat.set(0, jcol, c)
    ker = kernel_basis(mat)
    branches = left.branches + right.branches
    glued = []
    for v in ker.basis:
        bp = {}
        for idx, c in v.items():
            if idx < off:
                part = {(b, e): c * x for (b, e), x in left.basis[idx].items()}
            else:
                part = {(b + left.branches, e): c * x
                        for (b, e), x in right.basis[idx - off].items()}
            bp = bp_add(bp, part)
        glued.append(bp)
    model = CurveModel(branches, depth, glued, left.genus + right.genus)
    vectors = []
    for bp in glued:
        v = LaurentVector(branches, -depth, depth)
        for (b, ex), c in bp.items():
            v.coeffs[(b, -ex)] = c
        vectors.append(v)
    win = window_from_vectors(vectors, branches, depth)
    report = {
        "genus": win.codim,
        "expected_genus": left.genus + right.genus,
        "additive": win.codim == left.genus + right.genus,
        "branches": branches,
        "window": win.to_json(),
    }
    return model, report
