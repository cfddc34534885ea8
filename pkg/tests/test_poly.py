import random

import pytest

import invforge as iv
from invforge.poly import (ExactDivisionError, Poly, exact_divide, from_text,
                           from_json_terms, gens, grevlex_cmp, grevlex_key,
                           monomial_weight, monomials_of_degree)

from conftest import get_field, get_invariants, random_poly


# ----------------------------------------------------------------------
# grevlex order
# ----------------------------------------------------------------------

def test_grevlex_examples():
    assert grevlex_cmp((0, 2, 0), (1, 0, 1)) == 1      # a1^2 > a0*a2
    assert grevlex_cmp((0, 0, 1), (0, 1, 0)) == 1      # a2 > a1
    assert grevlex_cmp((0, 1, 0), (1, 0, 0)) == 1      # a1 > a0
    assert grevlex_cmp((0, 4, 0), (1, 0, 3)) == 1      # a1^4 > a0*a2^3
    assert grevlex_cmp((1, 1, 1), (1, 1, 1)) == 0


def test_grevlex_total_order_multiplicative():
    """m < m' implies m*u < m'*u, exhaustively over degree <= 6."""
    monos = [m for d in range(7) for m in monomials_of_degree(d)]
    keys = {m: grevlex_key(m) for m in monos}
    for m1 in monos:
        for m2 in monos:
            if keys[m1] >= keys[m2]:
                continue
            for u in monos:
                prod1 = (m1[0] + u[0], m1[1] + u[1], m1[2] + u[2])
                prod2 = (m2[0] + u[0], m2[1] + u[1], m2[2] + u[2])
                assert grevlex_key(prod1) < grevlex_key(prod2)


def test_lead_terms():
    ctx = get_field(3)
    a0, a1, a2 = gens(ctx)
    delta = a1 * a1 - a0 * a2
    assert delta.lead_term() == ((0, 2, 0), 1)
    inv = get_invariants(3)
    assert inv.J.lead_monomial() == (1, 0, 3)          # a0*a2^q
    assert inv.beta.lead_monomial() == (0, 3, 0)       # a1^q
    with pytest.raises(ValueError):
        Poly.zero(ctx).lead_monomial()


# ----------------------------------------------------------------------
# ring arithmetic
# ----------------------------------------------------------------------

def test_arithmetic_examples():
    ctx = get_field(3)
    a0, a1, a2 = gens(ctx)
    assert (a1 - a0) * (a1 + a0) == a1 * a1 - a0 * a0
    assert ((a1 + a0) ** 3) == a1 ** 3 + a0 ** 3       # Frobenius over F_3
    delta = a1 * a1 - a0 * a2
    assert delta ** 0 == Poly.constant(ctx, 1)
    assert delta.scale(0).is_zero()
    assert delta.scale(2) == delta + delta
    assert delta.mul_monomial((1, 0, 0), 2) == delta.scale(2) * a0
    assert delta.coeff((0, 2, 0)) == 1 and delta.coeff((5, 0, 0)) == 0
    with pytest.raises(ValueError):
        delta ** -1


def test_ring_axioms_exhaustive_coeffs_q3():
    """Associativity and distributivity over all coefficient choices on a
    fixed support, q=3."""
    ctx = get_field(3)
    support_a = ((0, 1, 0), (1, 0, 1))
    support_b = ((0, 0, 1), (2, 0, 0))
    support_c = ((0, 0, 0), (0, 2, 0))
    polys = lambda sup: [Poly.from_terms(ctx, zip(sup, (c1, c2)))
                         for c1 in range(3) for c2 in range(3)]
    for f in polys(support_a):
        for g in polys(support_b):
            for h in polys(support_c):
                assert (f * g) * h == f * (g * h)
                assert f * (g + h) == f * g + f * h
                assert f * g == g * f
                assert f + g == g + f


@pytest.mark.parametrize("p,n", [(5, 1), (7, 1), (3, 2)])
def test_ring_axioms_random(p, n):
    ctx = get_field(p, n)
    rng = random.Random(1000 + ctx.q)
    for _ in range(25):
        f = random_poly(ctx, rng)
        g = random_poly(ctx, rng)
        h = random_poly(ctx, rng)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f - f == Poly.zero(ctx)
        assert f + (-f) == Poly.zero(ctx)


@pytest.mark.parametrize("p,n", [(3, 1), (7, 1), (3, 2)])
def test_lead_term_multiplicative(p, n):
    ctx = get_field(p, n)
    rng = random.Random(2000 + ctx.q)
    for _ in range(30):
        f = random_poly(ctx, rng, nonzero=True)
        g = random_poly(ctx, rng, nonzero=True)
        mf, cf = f.lead_term()
        mg, cg = g.lead_term()
        expected = ((mf[0] + mg[0], mf[1] + mg[1], mf[2] + mg[2]),
                    ctx.mul(cf, cg))
        assert (f * g).lead_term() == expected


def test_ctx_mismatch_rejected():
    f = gens(get_field(3))[0]
    g = gens(get_field(5))[0]
    with pytest.raises(ValueError):
        f + g
    with pytest.raises(ValueError):
        f * g


# ----------------------------------------------------------------------
# exact division
# ----------------------------------------------------------------------

def test_exact_divide_examples():
    ctx = get_field(3)
    a0, a1, a2 = gens(ctx)
    assert exact_divide(a1 * a1 - a0 * a0, a1 - a0) == a1 + a0

    ctx7 = get_field(7)
    b0, b1, _ = gens(ctx7)
    with pytest.raises(ExactDivisionError) as err:
        exact_divide(b1 * b1 + b0 * b0, b1 - b0)
    assert err.value.remainder == (b0 * b0).scale(2)


def test_exact_divide_recovers_gamma0():
    # Rearranged unipotent relation: (beta^2 - Delta*(...)^2)/a0^q = gamma_0.
    inv = get_invariants(3)
    q = 3
    corr = inv.delta ** ((q - 1) // 2) - inv.a0 ** (q - 1)
    lhs = inv.beta * inv.beta - inv.delta * corr * corr
    assert exact_divide(lhs, inv.a0 ** q) == inv.gamma[0]


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2)])
def test_exact_divide_round_trip(p, n):
    ctx = get_field(p, n)
    rng = random.Random(3000 + ctx.q)
    for _ in range(20):
        f = random_poly(ctx, rng)
        g = random_poly(ctx, rng, nonzero=True)
        assert exact_divide(f * g, g) == f


def test_divide_by_zero_rejected():
    ctx = get_field(3)
    with pytest.raises(ZeroDivisionError):
        exact_divide(gens(ctx)[0], Poly.zero(ctx))


# ----------------------------------------------------------------------
# substitution
# ----------------------------------------------------------------------

def test_substitute_basics():
    ctx = get_field(3)
    a0, a1, a2 = gens(ctx)
    delta = a1 * a1 - a0 * a2
    assert delta.substitute(0, Poly.zero(ctx)) == a1 * a1
    assert delta.substitute(1, a1) == delta
    # The sigma_c image of a1 by hand.
    c = 2
    assert a1.substitute(1, a1 + a0.scale(c)) == a1 + a0.scale(c)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gamma0_at_a1_zero_closed_form(p):
    """gamma_0 restricted to a1 = 0 equals
    a2*((-a2)^((q-1)/2) - a0^((q-1)/2))^2."""
    inv = get_invariants(p)
    ctx = inv.ctx
    q = ctx.q
    restricted = inv.gamma[0].substitute(1, Poly.zero(ctx))
    half = (q - 1) // 2
    diff = (-inv.a2) ** half - inv.a0 ** half
    assert restricted == inv.a2 * diff * diff


@pytest.mark.parametrize("p,n", [(5, 1), (3, 2)])
def test_substitute_identity_random(p, n):
    ctx = get_field(p, n)
    rng = random.Random(4000 + ctx.q)
    a1 = gens(ctx)[1]
    for _ in range(10):
        f = random_poly(ctx, rng)
        assert f.substitute(1, a1) == f


# ----------------------------------------------------------------------
# weight grading
# ----------------------------------------------------------------------

def test_weights():
    ctx = get_field(3)
    a0, a1, a2 = gens(ctx)
    delta = a1 * a1 - a0 * a2
    assert delta.isobaric_weight() == 2 % (ctx.q - 1)
    inv = get_invariants(3)
    assert inv.beta.isobaric_weight() == 1
    assert (a1 + a2).isobaric_weight() is None
    even, odd = (a2 + a1).parity_split()
    assert even == a2 and odd == a1
    assert Poly.zero(ctx).isobaric_weight() is None


def test_weight_multiplicative_on_monomials():
    ctx = get_field(5)
    monos = [m for d in range(5) for m in monomials_of_degree(d)]
    for m1 in monos:
        for m2 in monos:
            prod = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            assert monomial_weight(prod, ctx) == \
                (monomial_weight(m1, ctx) + monomial_weight(m2, ctx)) \
                % (ctx.q - 1)


def test_parity_split_reassembles():
    ctx = get_field(3, 2)
    rng = random.Random(5000)
    for _ in range(10):
        f = random_poly(ctx, rng)
        even, odd = f.parity_split()
        assert even + odd == f
        assert all(m[1] % 2 == 0 for m in even.terms)
        assert all(m[1] % 2 == 1 for m in odd.terms)


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------

def test_text_round_trip_examples():
    inv = get_invariants(3)
    assert inv.beta.to_text() == "a1^3 + 2*a0^2*a1"
    assert from_text(inv.ctx, inv.beta.to_text()) == inv.beta
    assert Poly.zero(inv.ctx).to_text() == "0"
    assert from_text(inv.ctx, "0").is_zero()


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2)])
def test_serialization_round_trip_random(p, n):
    ctx = get_field(p, n)
    rng = random.Random(6000 + ctx.q)
    for _ in range(15):
        f = random_poly(ctx, rng)
        assert from_text(ctx, f.to_text()) == f
        assert from_json_terms(ctx, f.to_json_terms()) == f


def test_json_terms_descending_and_coordinate_coeffs():
    ctx = get_field(3, 2)
    x = ctx.from_coords((1, 2))
    f = Poly.from_terms(ctx, [((0, 0, 2), 1), ((1, 1, 0), x)])
    data = f.to_json_terms()
    assert data[0] == {"e0": 0, "e1": 0, "e2": 2, "coeff": [1, 0]}
    assert data[1] == {"e0": 1, "e1": 1, "e2": 0, "coeff": [1, 2]}
    keys = [grevlex_key((t["e0"], t["e1"], t["e2"])) for t in data]
    assert keys == sorted(keys, reverse=True)
