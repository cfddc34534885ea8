"""Construction and exact verification of the named invariants.

Everything is built as a literal orbit product over the unipotent group
{sigma_c}: beta from a1, gamma_k from a2 - k*a0 for every k in F_q.  On
top of those sit the discriminant Delta = a1^2 - a0*a2 and the three
full-group invariants

    Gamma = prod of gamma_k over nonresidues k,
    B     = beta * prod of gamma_k over residues k,
    J     = a0 * gamma_0.

build() asserts every stated degree, lead monomial and isobaric weight
and checks beta against its closed form a1^q - a0^(q-1)*a1; any failure
aborts with the offending identity.  The verify_* functions re-derive
the structural identities by exact polynomial arithmetic.
"""

from __future__ import annotations

from .gf import FieldCtx
from . import action
from .poly import Poly, exact_divide, gens
from .sagbi import Expression, GenSet, subduct


class IdentityError(ValueError):
    """An identity that the construction relies on failed to hold."""

    def __init__(self, identity, detail=None):
        super().__init__(f"identity failed: {identity}")
        self.identity = identity
        self.detail = detail


class InvariantSet:
    """The constructed invariants for one field context."""

    __slots__ = ("ctx", "a0", "a1", "a2", "delta", "beta", "gamma",
                 "Gamma", "B", "J", "phi")

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.a0, self.a1, self.a2 = gens(ctx)
        one = Poly.constant(ctx, 1)

        # Orbit products over sigma_c, c running through F_q in
        # enumeration order.
        beta = one
        for c in ctx.elements():
            beta = beta * action.apply(action.sigma(ctx, c), self.a1)
        self.beta = beta

        self.gamma = {}
        for k in ctx.elements():
            seed = self.a2 - self.a0.scale(k)
            g = one
            for c in ctx.elements():
                g = g * action.apply(action.sigma(ctx, c), seed)
            self.gamma[k] = g

        self.delta = self.a1 * self.a1 - self.a0 * self.a2

        Gamma = one
        for k in ctx.quadratic_nonresidues():
            Gamma = Gamma * self.gamma[k]
        self.Gamma = Gamma

        B = beta
        for k in ctx.quadratic_residues():
            B = B * self.gamma[k]
        self.B = B

        self.J = self.a0 * self.gamma[0]
        self.phi = None
        self._assert_shape()

    def _assert_shape(self):
        ctx = self.ctx
        q = ctx.q
        half = q * (q - 1) // 2
        checks = [
            ("deg Delta = 2", self.delta.degree() == 2),
            (f"deg beta = {q}", self.beta.degree() == q),
            (f"deg Gamma = {half}", self.Gamma.degree() == half),
            (f"deg B = {q + half}", self.B.degree() == q + half),
            (f"deg J = {q + 1}", self.J.degree() == q + 1),
            ("LM(Delta) = a1^2", self.delta.lead_monomial() == (0, 2, 0)),
            (f"LM(beta) = a1^{q}", self.beta.lead_monomial() == (0, q, 0)),
            (f"LM(J) = a0*a2^{q}", self.J.lead_monomial() == (1, 0, q)),
            (f"LM(Gamma) = a2^{half}",
             self.Gamma.lead_monomial() == (0, 0, half)),
            (f"LM(B) = a1^{q}*a2^{half}",
             self.B.lead_monomial() == (0, q, half)),
            ("Delta isobaric of weight 2",
             self.delta.isobaric_weight() == 2 % (q - 1)),
            ("beta isobaric of weight 1",
             self.beta.isobaric_weight() == 1 % (q - 1)),
            ("gamma_0 isobaric of weight 2",
             self.gamma[0].isobaric_weight() == 2 % (q - 1)),
        ]
        for k in self.ctx.elements():
            checks.append((f"deg gamma_{ctx.elem_str(k)} = {q}",
                           self.gamma[k].degree() == q))
        # Closed form of the a1 orbit product.
        closed = (self.a1 ** q) - (self.a0 ** (q - 1)) * self.a1
        checks.append((f"beta = a1^{q} - a0^{q - 1}*a1", self.beta == closed))
        for name, ok in checks:
            if not ok:
                raise IdentityError(name)

    # -- derived generator sets ------------------------------------------

    def p_genset(self) -> GenSet:
        return GenSet(("a0", "Delta", "beta", "gamma0"),
                      (self.a0, self.delta, self.beta, self.gamma[0]))

    def sl2_genset(self) -> GenSet:
        return GenSet(("Delta", "J", "Gamma", "B"),
                      (self.delta, self.J, self.Gamma, self.B))

    def sl2_hsop_genset(self) -> GenSet:
        return GenSet(("Delta", "J", "Gamma"),
                      (self.delta, self.J, self.Gamma))


def build(ctx: FieldCtx) -> InvariantSet:
    return InvariantSet(ctx)


# ----------------------------------------------------------------------
# Invariance
# ----------------------------------------------------------------------

def verify_p_invariance(inv: InvariantSet):
    """(invariant, generator, fixed) for {a0, Delta, beta, gamma0} under
    every sigma_c."""
    ctx = inv.ctx
    targets = [("a0", inv.a0), ("Delta", inv.delta), ("beta", inv.beta),
               ("gamma0", inv.gamma[0])]
    out = []
    for c in ctx.elements():
        g = action.sigma(ctx, c)
        label = f"sigma({ctx.elem_str(c)})"
        for name, f in targets:
            out.append((name, label, action.apply(g, f) == f))
    return out


def verify_sl2_invariance(inv: InvariantSet):
    """(invariant, generator, fixed) for {Delta, J, Gamma, B} under every
    sigma_c and under tau."""
    ctx = inv.ctx
    targets = [("Delta", inv.delta), ("J", inv.J), ("Gamma", inv.Gamma),
               ("B", inv.B)]
    generators = [(f"sigma({ctx.elem_str(c)})", action.sigma(ctx, c))
                  for c in ctx.elements()]
    generators.append(("tau", action.tau(ctx)))
    out = []
    for label, g in generators:
        for name, f in targets:
            out.append((name, label, action.apply(g, f) == f))
    return out


# ----------------------------------------------------------------------
# The unipotent-invariant relation
# ----------------------------------------------------------------------

def p_relation_residual(a0: Poly, beta: Poly, delta: Poly,
                        gamma0: Poly) -> Poly:
    """beta^2 - a0^q*gamma0 - Delta*(Delta^((q-1)/2) - a0^(q-1))^2."""
    q = a0.ctx.q
    half = delta ** ((q - 1) // 2)
    corr = half - a0 ** (q - 1)
    return beta * beta - (a0 ** q) * gamma0 - delta * corr * corr


def verify_p_relation(inv: InvariantSet) -> Poly:
    """Check the relation exactly, plus the vanishing of the right-hand
    side at a1 = 0 (the step that forces divisibility by beta^2).

    Returns the (zero) residual; raises IdentityError otherwise.
    """
    ctx = inv.ctx
    q = ctx.q
    zeta = (inv.a0 ** q) * inv.gamma[0] + \
        inv.delta * (inv.delta ** ((q - 1) // 2) - inv.a0 ** (q - 1)) ** 2
    zero = Poly.zero(ctx)
    if zeta.substitute(1, zero) != zero:
        raise IdentityError("zeta restricted to a1 = 0 vanishes",
                            zeta.substitute(1, zero))
    residual = inv.beta * inv.beta - zeta
    if not residual.is_zero():
        raise IdentityError(
            "beta^2 = a0^q*gamma0 + Delta*(Delta^((q-1)/2) - a0^(q-1))^2",
            residual)
    return residual


# ----------------------------------------------------------------------
# The full-group relation and its quotient
# ----------------------------------------------------------------------

def compute_phi(inv: InvariantSet, hsop_gens: GenSet | None = None) -> Expression:
    """Express (B^2 - Delta^q*Gamma^2)/J as a polynomial in Delta, J, Gamma.

    The difference must vanish modulo a0 and divide exactly by J; the
    quotient must subduct to zero remainder against {Delta, J, Gamma}.
    The resulting expression is stored on inv.phi and the reconstruction
    B^2 = Delta^q*Gamma^2 + J*Phi is re-checked by expansion.
    """
    ctx = inv.ctx
    q = ctx.q
    if hsop_gens is None:
        hsop_gens = inv.sl2_hsop_genset()
    rhs_lead = (inv.delta ** q) * inv.Gamma * inv.Gamma
    diff = inv.B * inv.B - rhs_lead
    zero = Poly.zero(ctx)
    if diff.substitute(0, zero) != zero:
        raise IdentityError("B^2 - Delta^q*Gamma^2 vanishes modulo a0",
                            diff.substitute(0, zero))
    quotient = exact_divide(diff, inv.J)
    rem, phi = subduct(quotient, hsop_gens)
    if not rem.is_zero():
        raise IdentityError(
            "(B^2 - Delta^q*Gamma^2)/J lies in F[Delta, J, Gamma]", rem)
    if rhs_lead + inv.J * hsop_gens.eval_expression(phi) != inv.B * inv.B:
        raise IdentityError("B^2 = Delta^q*Gamma^2 + J*Phi(Delta, J, Gamma)")
    inv.phi = phi
    return phi


# ----------------------------------------------------------------------
# Weight-parity decomposition
# ----------------------------------------------------------------------

def parity_decompose_invariant(f: Poly, inv: InvariantSet):
    """Split an SL2-invariant by weight parity and certify the pieces.

    Returns (f_even, f_odd, odd_quotient): both parts are checked
    invariant under sigma_c and tau, and the odd part is certified
    divisible by B (odd_quotient is None when f_odd is zero).
    """
    ctx = inv.ctx
    generators = action.generators_SL2(ctx)
    for g in generators:
        if action.apply(g, f) != f:
            raise ValueError("input polynomial is not SL2-invariant")
    f_even, f_odd = f.parity_split()
    for name, part in (("even", f_even), ("odd", f_odd)):
        for g in generators:
            if action.apply(g, part) != part:
                raise IdentityError(
                    f"{name}-weight part of an invariant is invariant", part)
    quotient = None
    if not f_odd.is_zero():
        quotient = exact_divide(f_odd, inv.B)
    return f_even, f_odd, quotient
