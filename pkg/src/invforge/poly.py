"""Sparse exact polynomials in a0, a1, a2 over F_q.

Monomials are exponent triples (e0, e1, e2).  The term order is graded
reverse lexicographic with a0 < a1 < a2, realized by the sort key
(total degree, -e0, -e1): ties are broken so that the monomial with the
smaller a0 share is larger, then the smaller a1 share.  The weight
grading assigns wt(a_i) = i, so a monomial has weight e1 + 2*e2, reduced
mod q-1 where a residue is wanted.

Poly values are immutable once constructed (terms dicts are never
mutated after leaving a constructor), so all operations here are pure
and safe to run concurrently.
"""

from __future__ import annotations

import heapq

from .gf import FieldCtx

VAR_NAMES = ("a0", "a1", "a2")


def grevlex_key(m):
    """Sort key: larger key = larger monomial in grevlex with a0 < a1 < a2."""
    e0, e1, e2 = m
    return (e0 + e1 + e2, -e0, -e1)


def grevlex_cmp(m1, m2) -> int:
    """-1, 0 or 1 as m1 <, =, > m2 in grevlex."""
    k1, k2 = grevlex_key(m1), grevlex_key(m2)
    return (k1 > k2) - (k1 < k2)


def _heap_key(m):
    # Negated grevlex key: a min-heap of these pops the largest monomial.
    e0, e1, e2 = m
    return (-(e0 + e1 + e2), e0, e1)


def monomial_weight(m, ctx: FieldCtx) -> int:
    """Weight e1 + 2*e2 reduced into [0, q-1)."""
    return (m[1] + 2 * m[2]) % (ctx.q - 1)


def monomials_of_degree(d: int):
    """All degree-d monomials in descending grevlex order."""
    out = [(e0, e1, d - e0 - e1)
           for e0 in range(d + 1) for e1 in range(d - e0 + 1)]
    out.sort(key=grevlex_key, reverse=True)
    return out


class ExactDivisionError(ArithmeticError):
    """Division was not exact; carries the offending remainder."""

    def __init__(self, message, remainder):
        super().__init__(message)
        self.remainder = remainder


class Poly:
    """Sparse polynomial: dict mapping exponent triple -> nonzero coeff index."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: dict):
        self.ctx = ctx
        self.terms = terms

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {})

    @classmethod
    def constant(cls, ctx, c: int):
        return cls(ctx, {(0, 0, 0): c} if c else {})

    @classmethod
    def variable(cls, ctx, i: int):
        m = [0, 0, 0]
        m[i] = 1
        return cls(ctx, {tuple(m): 1})

    @classmethod
    def from_terms(cls, ctx, pairs):
        """Build from (monomial, coeff) pairs, combining repeats."""
        add = ctx._add
        terms = {}
        for m, c in pairs:
            if not c:
                continue
            prev = terms.get(m)
            s = c if prev is None else add[prev][c]
            if s:
                terms[m] = s
            elif prev is not None:
                del terms[m]
        return cls(ctx, terms)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree, or -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e0 + e1 + e2 for e0, e1, e2 in self.terms)

    def lead_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no lead monomial")
        return max(self.terms, key=grevlex_key)

    def lead_term(self):
        m = self.lead_monomial()
        return m, self.terms[m]

    def lead_coeff(self) -> int:
        return self.terms[self.lead_monomial()]

    def coeff(self, m) -> int:
        return self.terms.get(m, 0)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ctx), frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _check_ctx(self, other):
        if self.ctx is not other.ctx:
            raise ValueError("polynomials belong to different field contexts")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        self._check_ctx(other)
        add = self.ctx._add
        terms = dict(self.terms)
        for m, c in other.terms.items():
            prev = terms.get(m)
            if prev is None:
                terms[m] = c
            else:
                s = add[prev][c]
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Poly(self.ctx, terms)

    def __neg__(self):
        neg = self.ctx._neg
        return Poly(self.ctx, {m: neg[c] for m, c in self.terms.items()})

    def __sub__(self, other):
        self._check_ctx(other)
        add = self.ctx._add
        neg = self.ctx._neg
        terms = dict(self.terms)
        for m, c in other.terms.items():
            c = neg[c]
            prev = terms.get(m)
            if prev is None:
                terms[m] = c
            else:
                s = add[prev][c]
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Poly(self.ctx, terms)

    def __mul__(self, other):
        self._check_ctx(other)
        add = self.ctx._add
        mul = self.ctx._mul
        terms = {}
        # Iterate the smaller factor outermost.
        f, g = (self.terms, other.terms)
        if len(f) > len(g):
            f, g = g, f
        for (f0, f1, f2), cf in f.items():
            row = mul[cf]
            for (g0, g1, g2), cg in g.items():
                m = (f0 + g0, f1 + g1, f2 + g2)
                c = row[cg]
                prev = terms.get(m)
                if prev is None:
                    terms[m] = c
                else:
                    s = add[prev][c]
                    if s:
                        terms[m] = s
                    else:
                        del terms[m]
        return Poly(self.ctx, terms)

    def scale(self, c: int):
        if not c:
            return Poly(self.ctx, {})
        row = self.ctx._mul[c]
        return Poly(self.ctx, {m: row[k] for m, k in self.terms.items()})

    def mul_monomial(self, m, c: int = 1):
        """Multiply by c * a0^m0 * a1^m1 * a2^m2."""
        m0, m1, m2 = m
        if c == 1:
            return Poly(self.ctx, {(e0 + m0, e1 + m1, e2 + m2): k
                                   for (e0, e1, e2), k in self.terms.items()})
        row = self.ctx._mul[c]
        return Poly(self.ctx, {(e0 + m0, e1 + m1, e2 + m2): row[k]
                               for (e0, e1, e2), k in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        acc = Poly.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- substitution -----------------------------------------------------

    def compose(self, images):
        """Substitute a0, a1, a2 by the three given polynomials.

        Evaluated by nested Horner in a2, then a1, then a0, which keeps
        the work proportional to the degree rather than the term count
        of the substituted powers.
        """
        v0, v1, v2 = images
        ctx = self.ctx
        for v in images:
            if v.ctx is not ctx:
                raise ValueError("substitution values from a different field context")
        if not self.terms:
            return Poly(ctx, {})
        nested = {}
        for (e0, e1, e2), c in self.terms.items():
            nested.setdefault(e2, {}).setdefault(e1, {})[e0] = c

        def horner0(layer0):
            acc = Poly(ctx, {})
            for e0 in range(max(layer0), -1, -1):
                if acc.terms:
                    acc = acc * v0
                c = layer0.get(e0)
                if c:
                    acc = acc + Poly.constant(ctx, c)
            return acc

        def horner1(layer1):
            acc = Poly(ctx, {})
            for e1 in range(max(layer1), -1, -1):
                if acc.terms:
                    acc = acc * v1
                layer0 = layer1.get(e1)
                if layer0:
                    acc = acc + horner0(layer0)
            return acc

        acc = Poly(ctx, {})
        for e2 in range(max(nested), -1, -1):
            if acc.terms:
                acc = acc * v2
            layer1 = nested.get(e2)
            if layer1:
                acc = acc + horner1(layer1)
        return acc

    def substitute(self, var: int, value):
        """Formal substitution of one variable, re-expanded."""
        images = [Poly.variable(self.ctx, i) for i in range(3)]
        images[var] = value
        return self.compose(images)

    # -- weight grading -----------------------------------------------------

    def isobaric_weight(self):
        """Common weight mod q-1 of all terms, or None if mixed."""
        if not self.terms:
            return None
        qm1 = self.ctx.q - 1
        it = iter(self.terms)
        m = next(it)
        w = (m[1] + 2 * m[2]) % qm1
        for m in it:
            if (m[1] + 2 * m[2]) % qm1 != w:
                return None
        return w

    def parity_split(self):
        """(even, odd) parts by the parity of the integer weight e1 + 2*e2."""
        even, odd = {}, {}
        for m, c in self.terms.items():
            (odd if m[1] & 1 else even)[m] = c
        return Poly(self.ctx, even), Poly(self.ctx, odd)

    # -- serialization ------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]),
                      reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            if c != 1 or m == (0, 0, 0):
                factors.append(self.ctx.elem_str(c))
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(VAR_NAMES[i])
                elif e > 1:
                    factors.append(f"{VAR_NAMES[i]}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_json_terms(self):
        return [{"e0": m[0], "e1": m[1], "e2": m[2],
                 "coeff": list(self.ctx.coords(c))}
                for m, c in self.sorted_terms()]

    def __repr__(self):
        return f"Poly({self.to_text()})"


def gens(ctx: FieldCtx):
    """The variable polynomials (a0, a1, a2)."""
    return tuple(Poly.variable(ctx, i) for i in range(3))


def from_json_terms(ctx: FieldCtx, data) -> Poly:
    return Poly.from_terms(
        ctx, (((t["e0"], t["e1"], t["e2"]), ctx.from_coords(t["coeff"]))
              for t in data))


def from_text(ctx: FieldCtx, text: str) -> Poly:
    """Inverse of Poly.to_text."""
    text = text.strip()
    if text == "0":
        return Poly(ctx, {})
    pairs = []
    for chunk in text.split(" + "):
        coeff = 1
        m = [0, 0, 0]
        for factor in chunk.split("*"):
            factor = factor.strip()
            if factor.startswith("["):
                coeff = ctx.from_coords(
                    [int(v) for v in factor.strip("[]").split(",")])
            elif factor and factor[0].isdigit():
                coeff = int(factor)
                if not 0 <= coeff < ctx.q:
                    raise ValueError(f"coefficient out of range: {factor}")
            else:
                name, _, exp = factor.partition("^")
                i = VAR_NAMES.index(name)
                m[i] += int(exp) if exp else 1
        pairs.append((tuple(m), coeff))
    return Poly.from_terms(ctx, pairs)


def exact_divide(f: Poly, g: Poly) -> Poly:
    """Quotient f/g when g divides f exactly.

    Repeated cancellation of lead terms; raises ExactDivisionError (with
    the remainder attached) as soon as a lead-term step fails, or if a
    nonzero remainder survives.
    """
    f._check_ctx(g)
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    ctx = f.ctx
    gm = g.lead_monomial()
    gc_inv = ctx.inv(g.terms[gm])
    g0, g1, g2 = gm
    mul = ctx._mul
    add = ctx._add
    neg = ctx._neg
    gitems = list(g.terms.items())

    rem = dict(f.terms)
    quot = {}
    # Lazy max-heap of candidate lead monomials.
    heap = [_heap_key(m) + (m,) for m in rem]
    heapq.heapify(heap)
    heappush, heappop = heapq.heappush, heapq.heappop
    while heap:
        m = heappop(heap)[3]
        c = rem.get(m)
        if c is None:
            continue
        t = (m[0] - g0, m[1] - g1, m[2] - g2)
        if t[0] < 0 or t[1] < 0 or t[2] < 0:
            raise ExactDivisionError(
                f"lead monomial {m} not divisible by lead of divisor",
                Poly(ctx, rem))
        tc = mul[c][gc_inv]
        quot[t] = tc
        t0, t1, t2 = t
        row = mul[tc]
        for (h0, h1, h2), hc in gitems:
            mm = (t0 + h0, t1 + h1, t2 + h2)
            d = neg[row[hc]]
            prev = rem.get(mm)
            if prev is None:
                rem[mm] = d
                heappush(heap, _heap_key(mm) + (mm,))
            else:
                s = add[prev][d]
                if s:
                    rem[mm] = s
                else:
                    del rem[mm]
    if rem:
        raise ExactDivisionError("nonzero remainder", Poly(ctx, rem))
    return Poly(ctx, quot)
