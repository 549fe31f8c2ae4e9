import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as strat

from g2kit.graded import (
    ContextMismatch,
    Derivation,
    GradedContext,
    GradedPoly,
    NotHomogeneous,
    gcommutator,
    transport_poly,
)


CTX = GradedContext(
    [("x", 0), ("y", 0), ("xi1", 1), ("xi2", 1), ("xi3", 1), ("P", 2)]
)


def make_ctx():
    return CTX


coefs = strat.integers(min_value=-4, max_value=4).map(Fraction)


@strat.composite
def monomials(draw):
    exps = {}
    for name in ("x", "y"):
        exps[name] = draw(strat.integers(min_value=0, max_value=2))
    for name in ("xi1", "xi2", "xi3"):
        exps[name] = draw(strat.integers(min_value=0, max_value=1))
    exps["P"] = draw(strat.integers(min_value=0, max_value=1))
    return CTX.key(exps)


@strat.composite
def polys(draw):
    terms = {}
    for _ in range(draw(strat.integers(min_value=0, max_value=4))):
        terms[draw(monomials())] = draw(coefs)
    return GradedPoly(CTX, {k: v for k, v in terms.items() if v})


def homogeneous_part(p, d):
    return p.degree_parts().get(d, CTX.zero())


@strat.composite
def homogeneous_polys(draw):
    p = draw(polys())
    parts = p.degree_parts()
    if not parts:
        return p
    return parts[draw(strat.sampled_from(sorted(parts)))]


def test_koszul_sign():
    a, b = CTX.var("xi1"), CTX.var("xi2")
    assert a * b == -(b * a)
    assert str(a * b) == "xi1*xi2"


def test_odd_square_is_zero():
    a = CTX.var("xi1")
    assert (a * a).is_zero()


def test_even_odd_commute():
    x, a, P = CTX.var("x"), CTX.var("xi1"), CTX.var("P")
    assert x * a == a * x
    assert P * a == a * P
    assert P * x == x * P


@given(homogeneous_polys(), homogeneous_polys())
@settings(max_examples=120, deadline=None)
def test_graded_commutativity(p, q):
    dp, dq = p.homogeneous_degree(), q.homogeneous_degree()
    if dp is None or dq is None:
        assert (p * q) == (q * p) * 1
        return
    sign = -1 if (dp * dq) % 2 else 1
    assert p * q == (q * p) * sign


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)


def random_homogeneous_derivation(rng, degree):
    comps = {}
    for name in CTX.names:
        want = degree + CTX.degree_of(name)
        if want < 0:
            continue
        p = CTX.zero()
        for _ in range(rng.randint(0, 2)):
            # build a random monomial of total degree `want`
            key = {"x": 0, "y": 0, "xi1": 0, "xi2": 0, "xi3": 0, "P": 0}
            left = want
            while left > 0:
                pick = rng.choice(["xi1", "xi2", "xi3", "P"])
                if pick == "P" and left >= 2:
                    key["P"] += 1
                    left -= 2
                elif pick != "P" and key[pick] == 0 and left >= 1:
                    key[pick] = 1
                    left -= 1
            key["x"] = rng.randint(0, 2)
            tup = CTX.key(key)
            if tup is not None:
                p = p + GradedPoly(CTX, {tup: Fraction(rng.choice([-2, -1, 1, 2]))})
        if p:
            comps[name] = p
    return Derivation(CTX, comps)


@given(homogeneous_polys(), homogeneous_polys(), strat.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_derivation_leibniz(p, q, seed):
    rng = random.Random(seed)
    D = random_homogeneous_derivation(rng, rng.choice([-1, 0, 1]))
    if D.is_zero():
        return
    d = D.degree()
    dp = p.homogeneous_degree()
    lhs = D.apply(p * q)
    sign = -1 if dp is not None and (d * dp) % 2 else 1
    rhs = D.apply(p) * q + (p * D.apply(q)) * sign
    if dp is None:
        rhs = D.apply(p) * q + p * D.apply(q)
    assert lhs == rhs


@pytest.mark.parametrize("seed", range(12))
def test_graded_jacobi_for_commutator(seed):
    rng = random.Random(seed)
    degs = [rng.choice([-1, 0, 1]) for _ in range(3)]
    D1, D2, D3 = (random_homogeneous_derivation(rng, d) for d in degs)
    if D1.is_zero() or D2.is_zero() or D3.is_zero():
        return
    a, b = degs[0], degs[1]
    lhs = gcommutator(D1, gcommutator(D2, D3))
    rhs = gcommutator(gcommutator(D1, D2), D3)
    sign = -1 if (a * b) % 2 else 1
    rhs = rhs + gcommutator(D2, gcommutator(D1, D3)).scale(sign)
    assert (lhs - rhs).is_zero()


@pytest.mark.parametrize("seed", range(8))
def test_graded_antisymmetry_for_commutator(seed):
    rng = random.Random(seed + 100)
    d1 = rng.choice([-1, 0, 1])
    d2 = rng.choice([-1, 0, 1])
    D1 = random_homogeneous_derivation(rng, d1)
    D2 = random_homogeneous_derivation(rng, d2)
    sign = -1 if (d1 * d2) % 2 else 1
    assert (gcommutator(D1, D2) + gcommutator(D2, D1).scale(sign)).is_zero()


def test_odd_self_commutator_is_twice_square():
    rng = random.Random(7)
    D = random_homogeneous_derivation(rng, 1)
    dd = gcommutator(D, D)
    for name in CTX.names:
        expected = (D.apply(D.component(name))) * 2
        assert dd.component(name) == expected


def test_partial_examples():
    a, b = CTX.var("xi1"), CTX.var("xi2")
    assert (a * b).partial("xi1") == b
    assert (a * b).partial("xi2") == -a
    x = CTX.var("x")
    assert (x * x).partial("x") == 2 * x
    D = Derivation(CTX, {"x": CTX.var("xi1")})
    f = x * x * x
    assert D.apply(f) == (3 * (x * x)) * CTX.var("xi1")


def test_apply_examples():
    # (d/dxi1)(xi1 xi2) = xi2 and (x d/dx)(x^2) = 2 x^2
    D = Derivation(CTX, {"xi1": CTX.one()})
    assert D.apply(CTX.var("xi1") * CTX.var("xi2")) == CTX.var("xi2")
    E = Derivation(CTX, {"x": CTX.var("x")})
    x = CTX.var("x")
    assert E.apply(x * x) == 2 * (x * x)


def test_commutator_examples():
    # [d/dx, x d/dx] = d/dx
    D = Derivation(CTX, {"x": CTX.one()})
    E = Derivation(CTX, {"x": CTX.var("x")})
    assert gcommutator(D, E) == D
    # [d/dxi, d/dxi] = 0 for a constant odd field
    F = Derivation(CTX, {"xi1": CTX.one()})
    assert gcommutator(F, F).is_zero()


def test_context_mismatch_raises():
    other = GradedContext([("x", 0)])
    with pytest.raises(ContextMismatch):
        CTX.var("x") + other.var("x")
    with pytest.raises(ContextMismatch):
        Derivation(CTX, {"x": CTX.one()}).apply(other.var("x"))


def test_non_homogeneous_commutator_raises():
    D = Derivation(CTX, {"x": CTX.one(), "xi1": CTX.var("xi2") * CTX.var("xi1")})
    with pytest.raises(NotHomogeneous):
        gcommutator(D, D)


def test_mixed_degree_poly_detect():
    p = CTX.var("x") + CTX.var("xi1")
    assert not p.is_homogeneous()
    with pytest.raises(NotHomogeneous):
        p.homogeneous_degree()


def test_transport_respects_names():
    small = GradedContext([("x", 0), ("xi1", 1)])
    big = GradedContext([("eta1", 1), ("x", 0), ("xi1", 1)])
    p = small.var("x") * small.var("xi1")
    q = transport_poly(p, big)
    assert q == big.var("x") * big.var("xi1")
    # round trip back is fine since eta1 is unused
    assert transport_poly(q, small) == p
    swapped = GradedContext([("xi1", 1), ("x", 0)])
    with pytest.raises(ContextMismatch):
        transport_poly(p, swapped)

def test_transport_missing_used_variable():
    small = GradedContext([("x", 0), ("xi1", 1)])
    target = GradedContext([("x", 0)])
    with pytest.raises(ContextMismatch):
        transport_poly(small.var("xi1"), target)
    # unused missing variables are fine
    assert transport_poly(small.var("x"), target) == target.var("x")


def test_evaluate():
    p = 3 * (CTX.var("x") * CTX.var("x")) - CTX.var("y")
    assert p.evaluate({"x": 2.0, "y": 1.0}) == 11.0
    with pytest.raises(ValueError):
        p.evaluate({"x": 2.0})
