"""Sparse multivariate polynomials over Q, bounded-degree rewriting, and
truncated Laurent vectors.

A PolyRing fixes the variable names, a positive grading weight per variable
(the weighted degree used everywhere for truncation), and a separate list of
order weights defining the monomial order: order-weighted degree first, then
lexicographic on exponent tuples.  Order weights may be zero for auxiliary
coefficient variables; the grading weights of those are zero as well so that
degree bounds only see the main generators.

RelationSystem interprets each relation as the rewrite rule
lead -> (lead - relation/leadcoeff) under that order, and provides bounded
normal forms, an S-polynomial closure check, and counting of irreducible
monomials.
"""

from __future__ import annotations

import itertools

from .linalg import ZERO, ONE, rat, rat_str


class BoundExceededError(Exception):
    """A reduction or request escaped the configured degree window."""


class PolyRing:
    __slots__ = ("names", "weights", "order_weights", "index")

    def __init__(self, names, weights, order_weights=None):
        self.names = tuple(names)
        self.weights = tuple(weights)
        if len(self.weights) != len(self.names):
            raise ValueError("one grading weight per variable")
        if order_weights is None:
            order_weights = self.weights
        self.order_weights = tuple(order_weights)
        self.index = {n: i for i, n in enumerate(self.names)}

    def nvars(self):
        return len(self.names)

    def wdeg(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps))

    def order_key(self, exps):
        return (sum(w * e for w, e in zip(self.order_weights, exps)), exps)

    def zero(self):
        return MultiPoly(self, {})

    def const(self, c):
        c = rat(c)
        if not c:
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars(): c})

    def one(self):
        return self.const(1)

    def var(self, name, power=1):
        e = [0] * self.nvars()
        e[self.index[name]] = power
        return MultiPoly(self, {tuple(e): ONE})

    def monomial(self, exps, coeff=ONE):
        coeff = rat(coeff)
        if not coeff:
            return self.zero()
        return MultiPoly(self, {tuple(exps): coeff})

    def monomials_up_to(self, bound):
        """All exponent tuples of weighted degree <= bound (weights must be
        positive)."""
        if any(w <= 0 for w in self.weights):
            raise ValueError("enumeration needs positive weights")
        out = []

        def rec(i, left, acc):
            if i == self.nvars():
                out.append(tuple(acc))
                return
            w = self.weights[i]
            for e in range(left // w + 1):
                acc.append(e)
                rec(i + 1, left - w * e, acc)
                acc.pop()

        rec(0, bound, [])
        return out

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.weights == other.weights
                and self.order_weights == other.order_weights)

    def __repr__(self):
        return "PolyRing(%s)" % (", ".join(self.names))


def _as_coeff(c):
    return c if not isinstance(c, (int, str)) else rat(c)


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    def copy(self):
        return MultiPoly(self.ring, dict(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, str)):
            other = self.ring.const(other)
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("variable mismatch")

    def __add__(self, other):
        if isinstance(other, (int, str)) or not isinstance(other, MultiPoly):
            other = self.ring.const(other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, ZERO) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MultiPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, str)) or not isinstance(other, MultiPoly):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(_as_coeff(other))
        self._check(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, ZERO) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return MultiPoly(self.ring, t)

    def __rmul__(self, other):
        return self.scale(_as_coeff(other))

    def scale(self, c):
        c = rat(c) if isinstance(c, (int, str)) else c
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {e: c * x for e, x in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def wdeg(self):
        """Weighted degree (grading weights); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {self.ring.wdeg(e) for e in self.terms}
        return len(degs) <= 1

    def lead(self):
        """(exponent tuple, coefficient) of the order-leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no lead")
        e = max(self.terms, key=self.ring.order_key)
        return e, self.terms[e]

    def constant(self):
        return self.terms.get((0,) * self.ring.nvars(), ZERO)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), ZERO)

    def subs_values(self, values):
        """Evaluate at a full point (list of coefficients, one per variable)."""
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(values, e):
                for _ in range(k):
                    v = v * x
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=self.ring.order_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else "%s^%d" % (n, k)
                for n, k in zip(self.ring.names, e) if k)
            cs = rat_str(c)
            if mono:
                bits.append(mono if cs == "1" else ("-" + mono if cs == "-1"
                                                    else cs + "*" + mono))
            else:
                bits.append(cs)
        s = " + ".join(bits)
        return s.replace("+ -", "- ")

    __repr__ = __str__


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class RelationSystem:
    """Rewrite system: relations in a PolyRing, each used as lead -> tail.

    claimed_basis is a human-readable description of the expected irreducible
    monomials; is_claimed_basis_monomial, when given, is the matching
    predicate on exponent tuples.
    """

    def __init__(self, ring, relations, claimed_basis="", is_claimed_basis_monomial=None):
        self.ring = ring
        self.relations = list(relations)
        self.claimed_basis = claimed_basis
        self.is_claimed_basis_monomial = is_claimed_basis_monomial
        self.rules = []
        for r in self.relations:
            if not r:
                raise ValueError("zero relation")
            lead_e, lead_c = r.lead()
            tail = self.ring.monomial(lead_e, lead_c) - r  # lead_c*x^lead - r
            self.rules.append((lead_e, lead_c, tail))

    def reducible_term(self, p):
        best = None
        for e in p.terms:
            for lead_e, _, _ in self.rules:
                if _divides(lead_e, e):
                    if best is None or self.ring.order_key(e) > self.ring.order_key(best):
                        best = e
                    break
        return best

    def normal_form(self, p, degree_bound):
        """Reduce p until no lead monomial divides any term.

        Raises BoundExceededError if any term met along the way has weighted
        degree above degree_bound.
        """
        ring = self.ring
        p = p.copy()
        while True:
            if p and p.wdeg() > degree_bound:
                raise BoundExceededError(
                    "term of degree %d exceeds bound %d" % (p.wdeg(), degree_bound))
            e = self.reducible_term(p)
            if e is None:
                return p
            c = p.terms[e]
            for lead_e, lead_c, tail in self.rules:
                if _divides(lead_e, e):
                    shift = tuple(a - b for a, b in zip(e, lead_e))
                    p = p - ring.monomial(e, c)
                    p = p + ring.monomial(shift, c / lead_c) * tail
                    break

    def spoly(self, i, j):
        e1, c1, _ = self.rules[i]
        e2, c2, _ = self.rules[j]
        lcm = tuple(max(a, b) for a, b in zip(e1, e2))
        m1 = self.ring.monomial(tuple(a - b for a, b in zip(lcm, e1)), ONE / c1)
        m2 = self.ring.monomial(tuple(a - b for a, b in zip(lcm, e2)), ONE / c2)
        return m1 * self.relations[i] - m2 * self.relations[j], lcm

    def closure_check(self, degree_bound):
        """Bounded Buchberger confluence check.

        Returns a ClosureReport with verdict PASS iff every S-polynomial of
        every relation pair reduces to zero within the bound.
        """
        failures = []
        for i in range(len(self.rules)):
            for j in range(i + 1, len(self.rules)):
                s, lcm = self.spoly(i, j)
                if self.ring.wdeg(lcm) > degree_bound:
                    raise BoundExceededError(
                        "S-pair (%d,%d) lcm degree %d exceeds bound %d"
                        % (i, j, self.ring.wdeg(lcm), degree_bound))
                rem = self.normal_form(s, degree_bound)
                if rem:
                    failures.append((i, j, rem))
        return ClosureReport(not failures, failures)

    def is_irreducible(self, exps):
        return all(not _divides(lead_e, exps) for lead_e, _, _ in self.rules)

    def irreducible_monomials(self, degree_bound):
        return [e for e in self.ring.monomials_up_to(degree_bound)
                if self.is_irreducible(e)]

    def basis_count(self, degree_bound):
        """Number of irreducible monomials of weighted degree <= bound."""
        return len(self.irreducible_monomials(degree_bound))

    def to_json(self):
        return {
            "generators": [{"name": n, "degree": w}
                           for n, w in zip(self.ring.names, self.ring.weights)],
            "order_weights": list(self.ring.order_weights),
            "relations": [str(r) for r in self.relations],
            "claimed_basis": self.claimed_basis,
        }

    @classmethod
    def from_json(cls, obj):
        ring = PolyRing([g["name"] for g in obj["generators"]],
                        [g["degree"] for g in obj["generators"]],
                        obj.get("order_weights"))
        rels = [parse_poly(ring, s) for s in obj["relations"]]
        return cls(ring, rels, obj.get("claimed_basis", ""))


class ClosureReport:
    __slots__ = ("passed", "failures")

    def __init__(self, passed, failures):
        self.passed = passed
        self.failures = failures

    def to_json(self):
        return {
            "verdict": "PASS" if self.passed else "FAIL",
            "failures": [{"pair": [i, j], "remainder": str(rem)}
                         for i, j, rem in self.failures],
        }

    def __repr__(self):
        return "ClosureReport(%s)" % ("PASS" if self.passed else "FAIL")


# ---------------------------------------------------------------------------
# expression parser: +, -, *, ^, parentheses, integer/rational literals


def parse_poly(ring, text):
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take(kind=None):
        tok = peek()
        if tok is None or (kind and tok[0] != kind):
            raise ValueError("parse error at %r in %r" % (tok, text))
        pos[0] += 1
        return tok

    def atom():
        tok = peek()
        if tok is None:
            raise ValueError("unexpected end of %r" % text)
        if tok[0] == "num":
            take()
            return ring.const(tok[1])
        if tok[0] == "name":
            take()
            if tok[1] not in ring.index:
                raise ValueError("unknown generator %r" % tok[1])
            return ring.var(tok[1])
        if tok[0] == "(":
            take()
            e = expr()
            take(")")
            return e
        raise ValueError("parse error at %r in %r" % (tok, text))

    def power():
        base = atom()
        while peek() and peek()[0] == "^":
            take()
            tok = take("num")
            if tok[1].denominator != 1 or tok[1] < 0:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(tok[1])
        return base

    def factor():
        tok = peek()
        if tok and tok[0] == "-":
            take()
            return -factor()
        if tok and tok[0] == "+":
            take()
            return factor()
        return power()

    def term():
        p = factor()
        while peek() and peek()[0] in ("*", "/"):
            op = take()[0]
            q = factor()
            if op == "*":
                p = p * q
            else:
                c = q.constant()
                if len(q.terms) > (1 if c else 0) or not c:
                    raise ValueError("can only divide by a nonzero constant")
                p = p.scale(ONE / c)
        return p

    def expr():
        p = term()
        while peek() and peek()[0] in ("+", "-"):
            op = take()[0]
            q = term()
            p = p + q if op == "+" else p - q
        return p

    result = expr()
    if peek() is not None:
        raise ValueError("trailing input in %r" % text)
    return result


def _tokenize(text):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(("num", rat(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_{},'"):
                j += 1
            out.append(("name", text[i:j]))
            i = j
        elif ch in "+-*^()/":
            out.append((ch, ch))
            i += 1
        else:
            raise ValueError("bad character %r in %r" % (ch, text))
    return out


# ---------------------------------------------------------------------------
# truncated Laurent vectors on n branches


class WindowUnderflowError(ValueError):
    """A coefficient outside the trusted window was requested, or a window
    is too shallow for the requested computation."""


class LaurentVector:
    """Element of a direct sum of n Laurent series fields, known exactly on a
    window of exponents.

    window_low is a hard pole bound (there are no terms below it at all);
    window_high is the trusted bound: coefficients above it are unknown.
    window_high=None means the element is known entirely (a Laurent
    polynomial).  Products are branchwise and shrink the trusted bound so
    that no unknown tail can contaminate a reported coefficient.
    """

    __slots__ = ("branches", "window_low", "window_high", "coeffs")

    def __init__(self, branches, window_low, window_high, coeffs=None):
        self.branches = branches
        self.window_low = window_low
        self.window_high = window_high
        self.coeffs = {}
        if coeffs:
            for (b, e), c in coeffs.items():
                c = rat(c)
                if not c:
                    continue
                if not 0 <= b < branches:
                    raise ValueError("branch out of range")
                if e < window_low or (window_high is not None and e > window_high):
                    raise ValueError("exponent %d outside window" % e)
                self.coeffs[(b, e)] = c

    @classmethod
    def constant(cls, branches, value=1):
        v = cls(branches, 0, None)
        for b in range(branches):
            c = rat(value)
            if c:
                v.coeffs[(b, 0)] = c
        return v

    @classmethod
    def monomial(cls, branch, exponent, branches, coeff=1):
        v = cls(branches, min(exponent, 0), None)
        c = rat(coeff)
        if c:
            v.coeffs[(branch, exponent)] = c
        return v

    def get(self, branch, exponent):
        if exponent < self.window_low:
            return ZERO
        if self.window_high is not None and exponent > self.window_high:
            raise WindowUnderflowError(
                "exponent %d beyond trusted bound %d" % (exponent, self.window_high))
        return self.coeffs.get((branch, exponent), ZERO)

    def _match(self, other):
        if self.branches != other.branches:
            raise ValueError("branch count mismatch")

    def add(self, other):
        self._match(other)
        lo = min(self.window_low, other.window_low)
        his = [h for h in (self.window_high, other.window_high) if h is not None]
        hi = min(his) if his else None
        out = LaurentVector(self.branches, lo, hi)
        for (b, e), c in itertools.chain(self.coeffs.items(), other.coeffs.items()):
            if hi is not None and e > hi:
                continue
            s = out.coeffs.get((b, e), ZERO) + c
            if s:
                out.coeffs[(b, e)] = s
            else:
                out.coeffs.pop((b, e), None)
        return out

    def scale(self, c):
        c = rat(c)
        out = LaurentVector(self.branches, self.window_low, self.window_high)
        if c:
            out.coeffs = {k: c * v for k, v in self.coeffs.items()}
        return out

    def mul(self, other):
        """Branchwise product.  Trusted bound: an exponent e is kept only if
        every decomposition e = i + j with i, j above the pole bounds has
        both factors inside their trusted windows."""
        self._match(other)
        lo = self.window_low + other.window_low
        if self.window_high is None and other.window_high is None:
            hi = None
        elif self.window_high is None:
            hi = other.window_high + self.window_low
        elif other.window_high is None:
            hi = self.window_high + other.window_low
        else:
            hi = min(self.window_high + other.window_low,
                     other.window_high + self.window_low)
        out = LaurentVector(self.branches, lo, hi)
        for (b1, e1), c1 in self.coeffs.items():
            for (b2, e2), c2 in other.coeffs.items():
                if b1 != b2:
                    continue
                e = e1 + e2
                if hi is not None and e > hi:
                    continue
                s = out.coeffs.get((b1, e), ZERO) + c1 * c2
                if s:
                    out.coeffs[(b1, e)] = s
                else:
                    del out.coeffs[(b1, e)]
        return out

    def truncate(self, low, high):
        """Narrow to [low, high].  Raises if high is beyond the trusted bound;
        dropping known low-order terms tightens the pole bound instead."""
        if self.window_high is not None and high > self.window_high:
            raise WindowUnderflowError(
                "cannot widen trusted bound %s to %d" % (self.window_high, high))
        out = LaurentVector(self.branches, max(low, self.window_low), high)
        out.coeffs = {(b, e): c for (b, e), c in self.coeffs.items()
                      if low <= e <= high}
        return out

    def support(self):
        return sorted(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, LaurentVector) and self.branches == other.branches
                and self.coeffs == other.coeffs)

    def __repr__(self):
        hi = "inf" if self.window_high is None else str(self.window_high)
        return "LaurentVector(n=%d, window=[%d,%s], %d terms)" % (
            self.branches, self.window_low, hi, len(self.coeffs))
