"""Subduction and SAGBI-basis certification for small generator sets.

Subduction is the subalgebra analogue of polynomial division: while the
lead monomial of the remainder is a product of generator lead monomials,
subtract the matching scalar multiple of the corresponding generator
product.  A generating set is a SAGBI basis (up to a degree bound) when
every tete-a-tete witness - the normalized difference of two generator
products sharing a lead monomial - subducts to zero.

Lead-monomial matching solves a 3-equation nonnegative integer system by
bounded enumeration; the instance sizes (at most four generators) make
anything heavier pointless.  When several solutions exist the one whose
reversed exponent vector is lexicographically smallest wins, i.e. the
solution leaning on the earliest-listed generators.
"""

from __future__ import annotations

from .gf import FieldCtx
from .poly import Poly, grevlex_key


class Expression:
    """Formal polynomial in named generators: exponent vector -> coeff."""

    __slots__ = ("ctx", "names", "terms")

    def __init__(self, ctx: FieldCtx, names, terms=None):
        self.ctx = ctx
        self.names = tuple(names)
        self.terms = dict(terms) if terms else {}

    def is_zero(self) -> bool:
        return not self.terms

    def add_term(self, evec, c: int):
        if not c:
            return
        prev = self.terms.get(evec)
        s = c if prev is None else self.ctx.add(prev, c)
        if s:
            self.terms[evec] = s
        else:
            del self.terms[evec]

    def max_exponent(self, name: str) -> int:
        i = self.names.index(name)
        return max((e[i] for e in self.terms), default=0)

    def uses(self, name: str) -> bool:
        return self.max_exponent(name) > 0

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for evec, c in self.sorted_terms():
            factors = []
            if c != 1 or not any(evec):
                factors.append(self.ctx.elem_str(c))
            for name, e in zip(self.names, evec):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_json(self):
        return {"vars": list(self.names),
                "terms": [{"e": list(evec), "coeff": list(self.ctx.coords(c))}
                          for evec, c in self.sorted_terms()]}

    def __repr__(self):
        return f"Expression({self.to_text()})"


class GenSet:
    """Named nonzero generator polynomials with cached lead data.

    Generator products gens^e are memoized: each product is built from
    its neighbour with the first exponent lowered, so a whole subduction
    run pays one small multiplication per lattice point it visits.
    """

    def __init__(self, names, polys):
        if len(names) != len(polys):
            raise ValueError("names and polynomials differ in length")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        if not polys:
            raise ValueError("empty generator set")
        ctx = polys[0].ctx
        for f in polys:
            if f.ctx is not ctx:
                raise ValueError("generators from different field contexts")
            if f.is_zero():
                raise ValueError("zero polynomial in generator set")
        self.ctx = ctx
        self.names = tuple(names)
        self.polys = tuple(polys)
        self.lead_exponents = tuple(f.lead_monomial() for f in polys)
        self.lead_coeffs = tuple(f.lead_coeff() for f in polys)
        self.degrees = tuple(f.degree() for f in polys)
        self._prod_memo = {(0,) * len(polys): Poly.constant(ctx, 1)}

    def __len__(self):
        return len(self.polys)

    def product(self, evec) -> Poly:
        """The polynomial prod_i gens[i]^evec[i], memoized."""
        memo = self._prod_memo
        got = memo.get(evec)
        if got is not None:
            return got
        # Build bottom-up along the first nonzero coordinate.
        stack = []
        cur = evec
        while cur not in memo:
            stack.append(cur)
            i = next(j for j, e in enumerate(cur) if e)
            cur = cur[:i] + (cur[i] - 1,) + cur[i + 1:]
        for want in reversed(stack):
            i = next(j for j, e in enumerate(want) if e)
            below = want[:i] + (want[i] - 1,) + want[i + 1:]
            memo[want] = memo[below] * self.polys[i]
        return memo[evec]

    def eval_expression(self, expr: Expression) -> Poly:
        acc = Poly.zero(self.ctx)
        for evec, c in expr.terms.items():
            acc = acc + self.product(evec).scale(c)
        return acc

    def lead_product_monomial(self, evec):
        e0 = e1 = e2 = 0
        for (l0, l1, l2), e in zip(self.lead_exponents, evec):
            e0 += l0 * e
            e1 += l1 * e
            e2 += l2 * e
        return (e0, e1, e2)


def match_lead_exponents(target, lead_exponents):
    """All nonnegative integer solutions e of sum_i e_i * lead_i = target.

    Bounded enumeration: each exponent is capped by the componentwise
    quotient against what remains of the target.
    """
    n = len(lead_exponents)
    solutions = []
    evec = [0] * n

    def rec(i, rem):
        if i == n:
            if rem == (0, 0, 0):
                solutions.append(tuple(evec))
            return
        l0, l1, l2 = lead_exponents[i]
        cap = None
        for l, r in ((l0, rem[0]), (l1, rem[1]), (l2, rem[2])):
            if l:
                c = r // l
                cap = c if cap is None else min(cap, c)
        if cap is None:
            # Degree-zero lead cannot occur (generators are nonconstant),
            # but guard against pathological input.
            cap = 0
        for e in range(cap + 1):
            evec[i] = e
            rec(i + 1, (rem[0] - e * l0, rem[1] - e * l1, rem[2] - e * l2))
        evec[i] = 0

    rec(0, target)
    return solutions


def _pick_solution(solutions):
    # Prefer the solution concentrated on the earliest-listed generators.
    return min(solutions, key=lambda e: tuple(reversed(e)))


def subduct(f: Poly, gens: GenSet, trace=None):
    """Subduct f against gens.

    Returns (remainder, expression) with f = eval(expression) + remainder
    and no further lead-term reduction possible.  Each step strictly
    lowers the lead monomial, which guarantees termination.  When trace
    is a list, a (lead_monomial, evec, n_solutions) record is appended
    per step.
    """
    if f.ctx is not gens.ctx:
        raise ValueError("polynomial and generator contexts differ")
    ctx = f.ctx
    expr = Expression(ctx, gens.names)
    rem = f
    prev_key = None
    while rem.terms:
        lm, lc = rem.lead_term()
        key = grevlex_key(lm)
        if prev_key is not None and key >= prev_key:
            raise AssertionError("subduction lead monomial failed to decrease")
        prev_key = key
        sols = match_lead_exponents(lm, gens.lead_exponents)
        if not sols:
            break
        evec = _pick_solution(sols)
        if trace is not None:
            trace.append((lm, evec, len(sols)))
        prod = gens.product(evec)
        scalar = ctx.mul(lc, ctx.inv(prod.lead_coeff()))
        expr.add_term(evec, scalar)
        rem = rem - prod.scale(scalar)
    return rem, expr


class TeteATete:
    """Two disjoint generator products sharing a lead monomial."""

    __slots__ = ("u", "v", "witness")

    def __init__(self, u, v, witness):
        self.u = u
        self.v = v
        self.witness = witness

    def __repr__(self):
        return f"TeteATete(u={self.u}, v={self.v})"


def _exponent_vectors(degrees, bound):
    n = len(degrees)
    out = []
    evec = [0] * n

    def rec(i, budget):
        if i == n:
            out.append(tuple(evec))
            return
        d = degrees[i]
        for e in range(budget // d + 1):
            evec[i] = e
            rec(i + 1, budget - e * d)
        evec[i] = 0

    rec(0, bound)
    return out


def find_tete_a_tetes(gens: GenSet, degree_bound: int):
    """All unordered pairs (u, v) of nonzero, disjoint-support exponent
    vectors of polynomial degree <= degree_bound whose generator products
    share a lead monomial.  Witnesses are normalized to lead coefficient 1
    (or are zero when the two products coincide)."""
    if degree_bound < max(gens.degrees):
        raise ValueError("degree bound below the largest generator degree")
    ctx = gens.ctx
    by_lead = {}
    for evec in _exponent_vectors(gens.degrees, degree_bound):
        if not any(evec):
            continue
        by_lead.setdefault(gens.lead_product_monomial(evec), []).append(evec)
    found = []
    for lead, group in sorted(by_lead.items(), key=lambda t: grevlex_key(t[0])):
        if len(group) < 2:
            continue
        group.sort()
        for i, u in enumerate(group):
            for v in group[i + 1:]:
                if any(a and b for a, b in zip(u, v)):
                    continue
                pu = gens.product(u)
                pv = gens.product(v)
                c = ctx.div(pu.lead_coeff(), pv.lead_coeff())
                w = pu - pv.scale(c)
                if w.terms:
                    w = w.scale(ctx.inv(w.lead_coeff()))
                found.append(TeteATete(u, v, w))
    return found


class SagbiReport:
    """Outcome of certifying a generator set up to a degree bound."""

    def __init__(self, gens: GenSet, degree_bound: int, entries):
        self.names = gens.names
        self.degree_bound = degree_bound
        self.entries = entries  # dicts: u, v, steps, remainder, subducts_to_zero

    @property
    def certified(self) -> bool:
        return all(e["subducts_to_zero"] for e in self.entries)

    def to_json(self):
        return {
            "generators": list(self.names),
            "certified_up_to_degree": self.degree_bound,
            "certified": self.certified,
            "tete_a_tetes": [
                {"u": list(e["u"]), "v": list(e["v"]), "steps": e["steps"],
                 "subducts_to_zero": e["subducts_to_zero"],
                 "remainder": e["remainder"].to_text()}
                for e in self.entries],
        }

    def to_text(self) -> str:
        lines = [f"SAGBI certification of {{{', '.join(self.names)}}} "
                 f"up to degree {self.degree_bound}: "
                 f"{'PASS' if self.certified else 'FAIL'}"]
        for e in self.entries:
            status = "-> 0" if e["subducts_to_zero"] else \
                f"-> remainder {e['remainder'].to_text()}"
            lines.append(f"  tete-a-tete {e['u']} vs {e['v']}: "
                         f"{e['steps']} subduction steps {status}")
        if not self.entries:
            lines.append("  no tete-a-tetes up to the bound")
        return "\n".join(lines)


def certify_sagbi(gens: GenSet, degree_bound: int) -> SagbiReport:
    """Subduct every tete-a-tete witness up to the bound; all must hit 0."""
    entries = []
    for tt in find_tete_a_tetes(gens, degree_bound):
        if tt.witness.is_zero():
            entries.append({"u": tt.u, "v": tt.v, "steps": 0,
                            "remainder": tt.witness,
                            "subducts_to_zero": True})
            continue
        trace = []
        rem, _ = subduct(tt.witness, gens, trace=trace)
        entries.append({"u": tt.u, "v": tt.v, "steps": len(trace),
                        "remainder": rem,
                        "subducts_to_zero": rem.is_zero()})
    return SagbiReport(gens, degree_bound, entries)


class MembershipResult:
    """Subalgebra membership certificate (sound once gens is certified)."""

    __slots__ = ("member", "expression", "remainder")

    def __init__(self, member, expression, remainder):
        self.member = member
        self.expression = expression
        self.remainder = remainder


def membership(f: Poly, gens: GenSet) -> MembershipResult:
    rem, expr = subduct(f, gens)
    return MembershipResult(rem.is_zero(), expr, rem)
