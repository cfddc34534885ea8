"""GL2(F_q) elements and their induced action on the quadratic-form dual.

A 2x2 matrix acts on the span of Y^2, 2XY, X^2 by substitution in the
generic binary quadratic form a0*X^2 + 2*a1*X*Y + a2*Y^2, and on the
dual coordinates (a2, a1, a0) by the transposed coefficient transform.
The induced 3x3 matrix is always derived by formally expanding the
substituted form, never hand-coded; rows are the images of a2, a1, a0
in the coordinate basis (a2, a1, a0).

The convention is a right action on the dual: apply(compose(g, h), f)
equals apply(h, apply(g, f)), pinned by apply(sigma(c), a1) = a1 + c*a0.
"""

from __future__ import annotations

import itertools

from .gf import FieldCtx
from .poly import Poly

# Full-group enumeration is an oracle device; keep it desk-sized.
MAX_ENUM_Q = 9


def _det2(ctx, m):
    (a, b), (c, d) = m
    return ctx.sub(ctx.mul(a, d), ctx.mul(b, c))


def det3(ctx, m):
    s = 0
    for j0, j1, j2, sign in ((0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
                             (2, 1, 0, -1), (1, 0, 2, -1), (0, 2, 1, -1)):
        t = ctx.mul(ctx.mul(m[0][j0], m[1][j1]), m[2][j2])
        s = ctx.add(s, t if sign > 0 else ctx.neg(t))
    return s


def derive_induced(ctx: FieldCtx, m):
    """Induced 3x3 matrix of a nonsingular 2x2 matrix, by formal expansion.

    X = (0,1) and Y = (1,0) are mapped through m, the form
    a0*X'^2 + 2*a1*X'*Y' + a2*Y'^2 is expanded, and the new coefficients
    are read off the basis (Y^2, 2XY, X^2).
    """
    if _det2(ctx, m) == 0:
        raise ValueError("matrix is singular")
    (a, b), (c, d) = m
    mul, add = ctx.mul, ctx.add
    xp = (b, d)  # X' = b*Y + d*X, coords (Y, X)
    yp = (a, c)  # Y' = a*Y + c*X

    def quad(u, v):
        # Product of two linear forms in X, Y -> coords on (Y^2, XY, X^2).
        uy, ux = u
        vy, vx = v
        return (mul(uy, vy), add(mul(uy, vx), mul(ux, vy)), mul(ux, vx))

    xx = quad(xp, xp)
    xy = quad(xp, yp)
    yy = quad(yp, yp)
    two = ctx.from_int(2)
    half = ctx.inv(two)
    # Coefficient of Y^2 is the image of a2, of X^2 the image of a0; the
    # XY coefficient sits on the basis vector 2XY, hence the halving.
    row_a2 = (yy[0], mul(two, xy[0]), xx[0])
    row_a1 = (mul(half, yy[1]), xy[1], mul(half, xx[1]))
    row_a0 = (yy[2], mul(two, xy[2]), xx[2])
    return (row_a2, row_a1, row_a0)


class GroupElem:
    """A nonsingular 2x2 matrix with its cached induced 3x3 action."""

    __slots__ = ("ctx", "m", "induced")

    def __init__(self, ctx: FieldCtx, m):
        self.ctx = ctx
        self.m = (tuple(m[0]), tuple(m[1]))
        self.induced = derive_induced(ctx, self.m)

    def det(self) -> int:
        return _det2(self.ctx, self.m)

    def compose(self, other: "GroupElem") -> "GroupElem":
        """Matrix product self*other; acts as self first, then other."""
        if self.ctx is not other.ctx:
            raise ValueError("group elements from different field contexts")
        ctx = self.ctx
        (a, b), (c, d) = self.m
        (e, f), (g, h) = other.m
        mul, add = ctx.mul, ctx.add
        return GroupElem(ctx, (
            (add(mul(a, e), mul(b, g)), add(mul(a, f), mul(b, h))),
            (add(mul(c, e), mul(d, g)), add(mul(c, f), mul(d, h))),
        ))

    def inverse(self) -> "GroupElem":
        ctx = self.ctx
        (a, b), (c, d) = self.m
        di = ctx.inv(self.det())
        mul, neg = ctx.mul, ctx.neg
        return GroupElem(ctx, ((mul(d, di), neg(mul(b, di))),
                               (neg(mul(c, di)), mul(a, di))))

    def __eq__(self, other):
        if not isinstance(other, GroupElem):
            return NotImplemented
        return self.ctx is other.ctx and self.m == other.m

    def __hash__(self):
        return hash((id(self.ctx), self.m))

    def __repr__(self):
        e = self.ctx.elem_str
        (a, b), (c, d) = self.m
        return f"[[{e(a)},{e(b)}],[{e(c)},{e(d)}]]"


def identity(ctx: FieldCtx) -> GroupElem:
    return GroupElem(ctx, ((1, 0), (0, 1)))


def sigma(ctx: FieldCtx, c: int) -> GroupElem:
    """Unipotent element [[1, c], [0, 1]]."""
    return GroupElem(ctx, ((1, c), (0, 1)))


def rho(ctx: FieldCtx, w: int) -> GroupElem:
    """Diagonal element [[w, 0], [0, 1]], w a unit."""
    return GroupElem(ctx, ((w, 0), (0, 1)))


def tau(ctx: FieldCtx) -> GroupElem:
    """The rotation [[0, 1], [-1, 0]]."""
    return GroupElem(ctx, ((0, 1), (ctx.neg(1), 0)))


def apply(g: GroupElem, f: Poly) -> Poly:
    """Image of f under g: substitute each variable by its image form."""
    if g.ctx is not f.ctx:
        raise ValueError("group element and polynomial contexts differ")
    ctx = g.ctx
    rows = g.induced  # rows: images of a2, a1, a0 in coords (a2, a1, a0)

    def linear_form(row):
        return Poly.from_terms(ctx, (((0, 0, 1), row[0]),
                                     ((0, 1, 0), row[1]),
                                     ((1, 0, 0), row[2])))

    return f.compose((linear_form(rows[2]), linear_form(rows[1]),
                      linear_form(rows[0])))


def enumerate_P(ctx: FieldCtx):
    """The Sylow p-subgroup {sigma_c}, one element per c, field order."""
    return [sigma(ctx, c) for c in ctx.elements()]


def generators_SL2(ctx: FieldCtx):
    """P together with tau: q+1 elements generating SL2(F_q)."""
    return enumerate_P(ctx) + [tau(ctx)]


def enumerate_SL2(ctx: FieldCtx, max_q: int = MAX_ENUM_Q):
    """All q(q^2-1) elements of SL2(F_q), lexicographic in (a, b, c, d)."""
    if ctx.q > max_q:
        raise ValueError(
            f"full SL2 enumeration is gated to q <= {max_q} (got q={ctx.q})")
    out = []
    one = 1
    for a, b, c, d in itertools.product(ctx.elements(), repeat=4):
        if ctx.sub(ctx.mul(a, d), ctx.mul(b, c)) == one:
            out.append(GroupElem(ctx, ((a, b), (c, d))))
    return out


def assert_induced_displays(ctx: FieldCtx):
    """Check the derived induced matrices of sigma_c, rho_w, tau against
    their closed forms, for every parameter value."""
    two = ctx.from_int(2)
    for c in ctx.elements():
        c2 = ctx.mul(c, c)
        expect = ((1, ctx.mul(two, c), c2), (0, 1, c), (0, 0, 1))
        got = sigma(ctx, c).induced
        if got != expect:
            raise AssertionError(f"sigma({ctx.elem_str(c)}) induced matrix "
                                 f"{got} != {expect}")
    for w in ctx.units():
        expect = ((ctx.mul(w, w), 0, 0), (0, w, 0), (0, 0, 1))
        got = rho(ctx, w).induced
        if got != expect:
            raise AssertionError(f"rho({ctx.elem_str(w)}) induced matrix "
                                 f"{got} != {expect}")
    expect = ((0, 0, 1), (0, ctx.neg(1), 0), (1, 0, 0))
    got = tau(ctx).induced
    if got != expect:
        raise AssertionError(f"tau induced matrix {got} != {expect}")
