"""Bigraded Hochschild cochains of the quiver algebra, the differential,
the Gerstenhaber bracket, and cohomology dimensions.

Cochains are normalized relative to the span of the vertex idempotents:
arguments run over composable tuples of radical basis elements and values
live in the full algebra.  A cochain of arity s and internal degree t sends
a tuple of total degree d to a value of degree t + d; the cohomological
degree is i = s + t.

Signs follow the suspended (bar) convention throughout: a basis element x
contributes |x| = deg(x) - 1, a cochain of arity s and internal degree t has
suspended degree s + t - 1, and the suspended product is
b2(x, y) = (-1)^{|x|} x y.  With this convention b2 o b2 = 0 is literally
associativity, the differential is [b2, .], and all higher identities
(delta^2 = 0, graded Jacobi) hold on the nose; the tests assert them.

A second, independently written complex (composable tuples that may contain
idempotents, classic unsuspended signs) serves as the cross-check oracle for
cohomology dimensions.
"""

from __future__ import annotations

import itertools

from .linalg import (ExactMatrix, ONE, ZERO, rank_of_columns, rat, rat_str)


def _sign(k):
    return -1 if k % 2 else 1


def _accum(out, key, c):
    s = out.get(key, ZERO) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class Cochain:
    """A normalized Hochschild cochain given by its values on composable
    radical tuples.  Arity-0 cochains are keyed by vertex index instead."""

    __slots__ = ("E", "s", "t", "values", "is_mul")

    def __init__(self, E, s, t, values=None, is_mul=False):
        self.E = E
        self.s = s
        self.t = t
        self.is_mul = is_mul
        self.values = {}
        if values:
            for key, vec in values.items():
                vec = {k: c for k, c in vec.items() if c}
                if vec:
                    self.values[key] = vec

    @classmethod
    def mul2(cls, E):
        """The suspended multiplication b2 (not a normalized cochain: it
        acts on idempotents too, which compose() special-cases)."""
        return cls(E, 2, 0, None, is_mul=True)

    def susdeg(self):
        return self.s + self.t - 1

    def is_zero(self):
        return not self.is_mul and not self.values

    def copy(self):
        return Cochain(self.E, self.s, self.t,
                       {k: dict(v) for k, v in self.values.items()},
                       self.is_mul)

    def add(self, other):
        assert (self.s, self.t) == (other.s, other.t)
        out = self.copy()
        for key, vec in other.values.items():
            acc = out.values.setdefault(key, {})
            for k, c in vec.items():
                _accum(acc, k, c)
            if not acc:
                del out.values[key]
        return out

    def scale(self, c):
        if not c:
            return Cochain(self.E, self.s, self.t)
        return Cochain(self.E, self.s, self.t,
                       {key: {k: c * x for k, x in vec.items()}
                        for key, vec in self.values.items()})

    def sub(self, other):
        return self.add(other.scale(-1))

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.s == other.s
                and self.t == other.t and self.is_mul == other.is_mul
                and self.values == other.values)

    def value(self, key):
        return self.values.get(key, {})

    def eval_multilinear(self, args):
        """Value on a tuple of E-vectors, expanding over radical components
        only (the normalized extension drops idempotent parts)."""
        E = self.E
        radset = E.radical_set
        choices = []
        for a in args:
            items = [(k, c) for k, c in a.items() if k in radset]
            if not items:
                return {}
            choices.append(items)
        out = {}
        for pick in itertools.product(*choices):
            key = tuple(k for k, _ in pick)
            val = self.values.get(key)
            if not val:
                continue
            c = ONE
            for _, ci in pick:
                c = c * ci
            for k, x in val.items():
                _accum(out, k, c * x)
        return out

    def to_json(self):
        E = self.E
        entries = []
        for key in sorted(self.values):
            vec = self.values[key]
            if self.s == 0:
                args = ["@%d" % key]
            else:
                args = [E.labels[k] for k in key]
            entries.append({"args": args,
                            "value": {E.labels[k]: rat_str(c)
                                      for k, c in sorted(vec.items())}})
        return {"arity": self.s, "t": self.t, "entries": entries}

    @classmethod
    def from_json(cls, E, obj):
        values = {}
        for ent in obj["entries"]:
            args = ent["args"]
            if obj["arity"] == 0:
                key = int(args[0][1:])
            else:
                key = tuple(E.index[a] for a in args)
            values[key] = {E.index[lab]: rat(c)
                           for lab, c in ent["value"].items()}
        return cls(E, obj["arity"], obj["t"], values)

    def __repr__(self):
        return "Cochain(s=%d, t=%d, %d entries)" % (self.s, self.t, len(self.values))


def eval_b2(E, u, v):
    """Suspended product of two E-vectors: sum (-1)^{|x|} x y."""
    out = {}
    for k, ck in u.items():
        sk = ck if E.deg[k] == 1 else -ck
        for m, cm in v.items():
            prod = E.table.get((k, m))
            if not prod:
                continue
            c = sk * cm
            for r, cr in prod.items():
                _accum(out, r, c * cr)
    return out


def _radical_set(E):
    if not hasattr(E, "radical_set"):
        E.radical_set = frozenset(E.radical)
    return E.radical_set


def compose(f, g):
    """Brace insertion sum f o g with Koszul signs in suspended degrees.

    Inserting into a normalized cochain projects the inserted value to the
    radical; inserting into b2 keeps the full value (that is what makes
    [b2, .] the differential of the normalized complex).
    """
    E = f.E
    _radical_set(E)
    p, q = f.s, g.s
    r = p + q - 1
    t = f.t + g.t
    if p == 0 or r < 0:
        return Cochain(E, max(r, 0), t)
    cx = reduced_complex(E)
    gsus = g.susdeg()
    out = {}
    for key in cx.tuple_keys(r, t):
        T = key if r > 0 else ()
        val = {}
        for a in range(p):
            # value of g on the block starting at slot a
            if q == 0:
                if r == 0:
                    v = key
                elif a == 0:
                    v = E.src[T[0]]
                else:
                    v = E.tgt[T[a - 1]]
                gv = g.value(v)
            elif g.is_mul:
                x, y = T[a], T[a + 1]
                prod = E.table.get((x, y))
                sx = _sign(E.deg[x] - 1)
                gv = {k: sx * c for k, c in prod.items()} if prod else {}
            else:
                gv = g.value(T[a:a + q])
            if not gv:
                continue
            presum = sum(E.deg[x] - 1 for x in T[:a])
            sgn = _sign(gsus * presum)
            rest = T[a + q:]
            if f.is_mul:
                if a == 0:
                    term = eval_b2(E, gv, {rest[0]: ONE})
                else:
                    term = eval_b2(E, {T[0]: ONE}, gv)
            else:
                term = {}
                for z, cz in gv.items():
                    if z not in E.radical_set:
                        continue
                    fv = f.values.get(T[:a] + (z,) + rest)
                    if not fv:
                        continue
                    for k, c in fv.items():
                        _accum(term, k, cz * c)
            if not term:
                continue
            for k, c in term.items():
                _accum(val, k, sgn * c)
        if val:
            out[key] = val
    return Cochain(E, r, t, out)


def gerstenhaber(f, g):
    """[f, g] = f o g - (-1)^{|f||g|} g o f in suspended degrees."""
    fg = compose(f, g)
    gf = compose(g, f)
    return fg.add(gf.scale(-_sign(f.susdeg() * g.susdeg())))


def differential_apply(phi):
    """delta(phi) = [b2, phi]; used to cross-check the matrix path."""
    b2 = Cochain.mul2(phi.E)
    return gerstenhaber(b2, phi)


# ---------------------------------------------------------------------------
# the reduced complex


class HochschildComplex:
    """Cochain bases, differential matrices, and cohomology dimensions for
    the normalized (radical-tuple) complex of one algebra."""

    def __init__(self, E):
        self.E = E
        _radical_set(E)
        self._tuples = {}
        self._basis = {}
        self._index = {}
        self._delta = {}
        self._rank = {}
        self._fact = None

    # -- tuple and basis enumeration ----------------------------------------

    def elements(self):
        return self.E.radical

    def tuple_keys(self, s, t):
        """Composable argument keys whose total degree allows a value of
        degree 0 or 1 at internal degree t."""
        if s == 0:
            return list(range(self.E.n + 1))
        dlo, dhi = -t, -t + 1
        dhi = min(dhi, s)
        dlo = max(dlo, 0)
        if dlo > dhi or -t > s or -t + 1 < 0:
            return []
        key = (s, dlo, dhi)
        got = self._tuples.get(key)
        if got is None:
            got = self._enumerate(s, dlo, dhi)
            self._tuples[key] = got
        return got

    def _enumerate(self, s, dlo, dhi):
        E = self.E
        by_src = {}
        for x in self.elements():
            by_src.setdefault(E.src[x], []).append(x)
        out = []
        acc = []

        def rec(pos, vertex, degsum):
            if degsum > dhi or degsum + (s - pos) < dlo:
                return
            if pos == s:
                out.append(tuple(acc))
                return
            for x in by_src.get(vertex, ()):
                acc.append(x)
                rec(pos + 1, E.tgt[x], degsum + E.deg[x])
                acc.pop()

        starts = sorted({E.src[x] for x in self.elements()})
        for v in starts:
            rec(0, v, 0)
        out.sort()
        return out

    def basis(self, s, t):
        """Ordered cochain basis: (argument key, target basis index),
        lexicographic in the tuple then in the target."""
        key = (s, t)
        got = self._basis.get(key)
        if got is not None:
            return got
        E = self.E
        out = []
        if s == 0:
            for v in range(E.n + 1):
                for w in E.hom_basis(v, v, t):
                    out.append((v, w))
        else:
            for T in self.tuple_keys(s, t):
                d = t + sum(E.deg[x] for x in T)
                if d not in (0, 1):
                    continue
                for w in E.hom_basis(E.src[T[0]], E.tgt[T[-1]], d):
                    out.append((T, w))
        self._basis[key] = out
        self._index[key] = {bk: i for i, bk in enumerate(out)}
        return out

    def dim(self, s, t):
        if s < 0:
            return 0
        return len(self.basis(s, t))

    def index(self, s, t):
        self.basis(s, t)
        return self._index[(s, t)]

    def factorizations(self):
        """fact[z] = [(x, y, c)] over radical pairs with (x*y)_z = c."""
        if self._fact is None:
            E = self.E
            fact = {}
            for x in self.elements():
                for y in self.elements():
                    if E.tgt[x] != E.src[y]:
                        continue
                    for z, c in E.table.get((x, y), {}).items():
                        fact.setdefault(z, []).append((x, y, c))
            self._fact = fact
        return self._fact

    # -- the differential ----------------------------------------------------

    def delta_columns(self, s, t):
        """Columns of delta: C^{s} -> C^{s+1} at internal degree t, indexed
        by the (s, t) basis, rows indexed by the (s+1, t) basis."""
        E = self.E
        cols = []
        rindex = self.index(s + 1, t)
        fact = self.factorizations()
        sus = s + t - 1
        for key, w in self.basis(s, t):
            col = {}
            wsign = _sign(E.deg[w] - 1)
            if s == 0:
                v = key
                for x in self.elements():
                    if E.src[x] == v:
                        for wp, c in E.table.get((w, x), {}).items():
                            _accum(col, rindex[((x,), wp)], wsign * c)
                for x in self.elements():
                    if E.tgt[x] == v:
                        sg = _sign((sus + 1) * (E.deg[x] - 1))
                        for wp, c in E.table.get((x, w), {}).items():
                            _accum(col, rindex[((x,), wp)], sg * c)
            else:
                T = key
                for x in self.elements():
                    if E.src[x] == E.tgt[w]:
                        for wp, c in E.table.get((w, x), {}).items():
                            _accum(col, rindex[(T + (x,), wp)], wsign * c)
                for x in self.elements():
                    if E.tgt[x] == E.src[w]:
                        sg = _sign((sus + 1) * (E.deg[x] - 1))
                        for wp, c in E.table.get((x, w), {}).items():
                            _accum(col, rindex[((x,) + T, wp)], sg * c)
                front = -_sign(sus)
                presum = 0
                for a in range(s):
                    for x, y, cf in fact.get(T[a], ()):
                        Tp = T[:a] + (x, y) + T[a + 1:]
                        sg = front * _sign(presum) * _sign(E.deg[x] - 1)
                        _accum(col, rindex[(Tp, w)], sg * cf)
                    presum += E.deg[T[a]] - 1
            cols.append(col)
        return cols

    def delta_matrix(self, s, t):
        key = (s, t)
        got = self._delta.get(key)
        if got is None:
            cols = self.delta_columns(s, t)
            got = ExactMatrix.from_columns(cols, self.dim(s + 1, t))
            self._delta[key] = got
        return got

    def delta_rank(self, s, t):
        if s < 0 or self.dim(s, t) == 0 or self.dim(s + 1, t) == 0:
            return 0
        key = (s, t)
        got = self._rank.get(key)
        if got is None:
            got = rank_of_columns(self.delta_columns(s, t))
            self._rank[key] = got
        return got

    # -- cohomology ----------------------------------------------------------

    def hh_dim(self, i, t):
        """dim HH^i in internal degree t (arity s = i - t)."""
        s = i - t
        if s < 0:
            return 0
        d = self.dim(s, t)
        if d == 0:
            return 0
        return d - self.delta_rank(s, t) - self.delta_rank(s - 1, t)

    def cell(self, i, t):
        """(dim cochains, dim cocycles, dim coboundaries, dim HH)."""
        s = i - t
        if s < 0:
            return (0, 0, 0, 0)
        d = self.dim(s, t)
        cocycles = d - self.delta_rank(s, t)
        coboundaries = self.delta_rank(s - 1, t)
        return (d, cocycles, coboundaries, cocycles - coboundaries)

    # -- coordinates ---------------------------------------------------------

    def cochain_to_vector(self, phi):
        idx = self.index(phi.s, phi.t)
        v = {}
        for key, vec in phi.values.items():
            for k, c in vec.items():
                v[idx[(key, k)]] = c
        return v

    def vector_to_cochain(self, s, t, v):
        basis = self.basis(s, t)
        values = {}
        for i, c in v.items():
            if not c:
                continue
            key, w = basis[i]
            values.setdefault(key, {})[w] = c
        return Cochain(self.E, s, t, values)


def reduced_complex(E) -> HochschildComplex:
    if not hasattr(E, "_hochschild_complex"):
        E._hochschild_complex = HochschildComplex(E)
    return E._hochschild_complex


# -- module-level entry points ------------------------------------------------


def cochain_basis(E, s, t):
    return reduced_complex(E).basis(s, t)


def differential(E, s, t):
    return reduced_complex(E).delta_matrix(s, t)


def hh_dim(E, i, t):
    return reduced_complex(E).hh_dim(i, t)


# ---------------------------------------------------------------------------
# bidegree scan


class BidegreeTable:
    def __init__(self, cells):
        self.cells = cells  # (i, t) -> (dim_c, cocycles, coboundaries, hh)

    def hh(self, i, t):
        return self.cells.get((i, t), (0, 0, 0, 0))[3]

    def max_nonzero(self, i):
        """Largest j with HH^i_{-j} != 0 inside the scanned range, or None."""
        js = [-t for (ii, t), cell in self.cells.items()
              if ii == i and t < 0 and cell[3]]
        return max(js) if js else None

    def to_json(self):
        rows = []
        for (i, t) in sorted(self.cells):
            d, zc, bd, hh = self.cells[(i, t)]
            rows.append({"i": i, "t": t, "dim_cochain": d, "dim_cocycle": zc,
                         "dim_coboundary": bd, "dim_HH": hh})
        return {"cells": rows,
                "stabilization": {"max_j_HH2": self.max_nonzero(2),
                                  "max_j_HH3": self.max_nonzero(3)}}

    def to_csv(self):
        lines = ["i,t,dim_cochain,dim_cocycle,dim_coboundary,dim_HH"]
        for (i, t) in sorted(self.cells):
            d, zc, bd, hh = self.cells[(i, t)]
            lines.append("%d,%d,%d,%d,%d,%d" % (i, t, d, zc, bd, hh))
        return "\n".join(lines) + "\n"


def vanishing_scan(E, i_max, t_min):
    """Dimension table for 0 <= i <= i_max, t_min <= t <= 0, with the largest
    nonvanishing internal degrees of HH^2 and HH^3 in range."""
    cx = reduced_complex(E)
    cells = {}
    for i in range(i_max + 1):
        for t in range(t_min, 1):
            cells[(i, t)] = cx.cell(i, t)
    return BidegreeTable(cells)


# ---------------------------------------------------------------------------
# independent oracle: composable tuples with idempotents allowed, classic
# (unsuspended) sign convention


class UnnormalizedComplex:
    """The relative Hochschild complex without normalization: arguments are
    composable tuples of arbitrary basis elements (idempotents included).

    Written independently of HochschildComplex, with the textbook
    differential: (delta f)(a_1,...,a_{s+1}) =
        (-1)^{deg(a_1) * t} a_1 f(a_2, ...)
      + sum_i (-1)^i f(..., a_i a_{i+1}, ...)
      + (-1)^{s+1} f(...) a_{s+1}.
    Cohomology dimensions agree with the reduced complex; that agreement is
    an acceptance criterion, not an assumption.
    """

    def __init__(self, E):
        self.E = E
        self._tuples = {}
        self._basis = {}
        self._index = {}
        self._rank = {}
        fact = {}
        for x in range(E.dim):
            for y in range(E.dim):
                if E.tgt[x] != E.src[y]:
                    continue
                for z, c in E.table.get((x, y), {}).items():
                    fact.setdefault(z, []).append((x, y, c))
        self.fact = fact

    def tuple_keys(self, s, t):
        if s == 0:
            return list(range(self.E.n + 1))
        dlo = max(-t, 0)
        dhi = min(-t + 1, s)
        if dlo > dhi:
            return []
        key = (s, dlo, dhi)
        got = self._tuples.get(key)
        if got is None:
            E = self.E
            by_src = {}
            for x in range(E.dim):
                by_src.setdefault(E.src[x], []).append(x)
            out = []
            acc = []

            def rec(pos, vertex, degsum):
                if degsum > dhi or degsum + (s - pos) < dlo:
                    return
                if pos == s:
                    out.append(tuple(acc))
                    return
                for x in by_src.get(vertex, ()):
                    acc.append(x)
                    rec(pos + 1, E.tgt[x], degsum + E.deg[x])
                    acc.pop()

            for v in range(E.n + 1):
                rec(0, v, 0)
            out.sort()
            self._tuples[key] = got = out
        return got

    def basis(self, s, t):
        key = (s, t)
        got = self._basis.get(key)
        if got is not None:
            return got
        E = self.E
        out = []
        if s == 0:
            for v in range(E.n + 1):
                for w in E.hom_basis(v, v, t):
                    out.append((v, w))
        else:
            for T in self.tuple_keys(s, t):
                d = t + sum(E.deg[x] for x in T)
                if d not in (0, 1):
                    continue
                for w in E.hom_basis(E.src[T[0]], E.tgt[T[-1]], d):
                    out.append((T, w))
        self._basis[key] = out
        self._index[key] = {bk: i for i, bk in enumerate(out)}
        return out

    def dim(self, s, t):
        if s < 0:
            return 0
        return len(self.basis(s, t))

    def delta_columns(self, s, t):
        E = self.E
        self.basis(s + 1, t)
        rindex = self._index[(s + 1, t)]
        cols = []
        for key, w in self.basis(s, t):
            col = {}
            if s == 0:
                v = key
                # a_1 . c needs tgt(a_1) = v; c . a_1 needs src(a_1) = v
                for x in range(E.dim):
                    if E.tgt[x] == v:
                        sg = _sign(E.deg[x] * t)
                        for wp, c in E.table.get((x, w), {}).items():
                            _accum(col, rindex[((x,), wp)], sg * c)
                for x in range(E.dim):
                    if E.src[x] == v:
                        for wp, c in E.table.get((w, x), {}).items():
                            _accum(col, rindex[((x,), wp)], -c)
            else:
                T = key
                # a_1 . f(a_2 ... a_{s+1})
                for x in range(E.dim):
                    if E.tgt[x] == E.src[w]:
                        sg = _sign(E.deg[x] * t)
                        for wp, c in E.table.get((x, w), {}).items():
                            _accum(col, rindex[((x,) + T, wp)], sg * c)
                # contractions
                for a in range(s):
                    sg = _sign(a + 1)
                    for x, y, cf in self.fact.get(T[a], ()):
                        Tp = T[:a] + (x, y) + T[a + 1:]
                        _accum(col, rindex[(Tp, w)], sg * cf)
                # f(a_1 ... a_s) . a_{s+1}
                sg = _sign(s + 1)
                for x in range(E.dim):
                    if E.src[x] == E.tgt[w]:
                        for wp, c in E.table.get((w, x), {}).items():
                            _accum(col, rindex[(T + (x,), wp)], sg * c)
            cols.append(col)
        return cols

    def delta_rank(self, s, t):
        if s < 0 or self.dim(s, t) == 0 or self.dim(s + 1, t) == 0:
            return 0
        key = (s, t)
        got = self._rank.get(key)
        if got is None:
            got = rank_of_columns(self.delta_columns(s, t))
            self._rank[key] = got
        return got

    def hh_dim(self, i, t):
        s = i - t
        if s < 0:
            return 0
        d = self.dim(s, t)
        if d == 0:
            return 0
        return d - self.delta_rank(s, t) - self.delta_rank(s - 1, t)


def unnormalized_complex(E) -> UnnormalizedComplex:
    if not hasattr(E, "_unnormalized_complex"):
        E._unnormalized_complex = UnnormalizedComplex(E)
    return E._unnormalized_complex
