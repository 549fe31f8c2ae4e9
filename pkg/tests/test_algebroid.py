import random

import pytest

from g2kit.algebroid import (
    CDOData,
    LieAlgebroidData,
    Section,
    build_Q,
    cdo_to_vf,
    check_homological,
    derived_anchor,
    derived_bracket,
    dual_cdo,
    frame_section,
    jacobi_leibniz_oracle,
    koszul_bracket,
    make_context,
    poisson_to_algebroid,
    sc_anchor,
    sc_bracket,
    schouten_jacobiator,
    section_to_vf,
    vf_to_cdo,
    vf_to_section,
)
from g2kit.catalog import sl2_algebroid, so3_poisson_bivector, tangent_line
from g2kit.graded import ShapeError, gcommutator, transport_poly

from conftest import lie_poisson_bivector, random_algebroid, random_poly, valid_algebroids


def test_build_Q_abelian_is_zero():
    A = LieAlgebroidData.from_constants(0, 2, {})
    assert build_Q(A).is_zero()
    assert check_homological(build_Q(A)).passed


def test_build_Q_tangent_matches_de_rham():
    A = tangent_line()
    Q = build_Q(A)
    # on functions Q acts like the exterior derivative: f -> f' xi
    f = A.x(0) * A.x(0)
    assert Q.apply(f) == 2 * A.x(0) * A.xi(0)
    assert Q.degree() == 1


def test_sl2_quadratic_terms_and_homological():
    A = sl2_algebroid()
    Q = build_Q(A)
    assert Q.degree() == 1
    # purely quadratic components, one per frame coordinate
    assert set(Q.components) == {"xi1", "xi2", "xi3"}
    assert check_homological(Q).passed


def test_homological_failure_is_located():
    bad = LieAlgebroidData.from_constants(
        0, 3, {(0, 1, 1): 3, (0, 2, 2): -2, (1, 2, 0): 1}
    )
    rep = check_homological(build_Q(bad))
    assert not rep.passed
    assert "coefficient" in rep.checks[0].details


def test_check_homological_rejects_wrong_degree():
    A = tangent_line()
    with pytest.raises(ShapeError):
        check_homological(section_to_vf(A, frame_section(A, 0)))


def test_derived_bracket_reproduces_constants_sl2():
    A = sl2_algebroid()
    Q = build_Q(A)
    h, e, f = (frame_section(A, i) for i in range(3))
    assert derived_bracket(A, Q, e, f).coefficients[0] == 1
    assert derived_bracket(A, Q, h, e).coefficients[1] == 2
    assert derived_bracket(A, Q, e, e).is_zero()


def test_derived_anchor_is_differentiation():
    A = tangent_line()
    Q = build_Q(A)
    sec = frame_section(A, 0)
    f = A.x(0) * A.x(0) * A.x(0)
    assert derived_anchor(A, Q, sec, f) == 3 * (A.x(0) * A.x(0))


@pytest.mark.parametrize("A", valid_algebroids())
def test_derived_roundtrip_on_valid_data(A):
    Q = build_Q(A)
    assert check_homological(Q).passed
    for i in range(A.rank):
        for j in range(A.rank):
            got = derived_bracket(A, Q, frame_section(A, i), frame_section(A, j))
            for k in range(A.rank):
                assert got.coefficients[k] == A.c[i][j][k]
    for i in range(A.rank):
        for a in range(A.base_dim):
            assert derived_anchor(A, Q, frame_section(A, i), A.x(a)) == A.rho[i][a]


def test_equivalence_on_random_instances(rng):
    agree = 0
    for _ in range(60):
        A = random_algebroid(rng)
        lhs = check_homological(build_Q(A)).passed
        rhs = jacobi_leibniz_oracle(A).passed
        assert lhs == rhs
        agree += 1
    assert agree == 60


def test_leibniz_rule_via_derived_brackets(rng):
    for A in (sl2_algebroid(), tangent_line(), so3_poisson_algebroid_fixture()):
        Q = build_Q(A)
        xs = [f"x{i + 1}" for i in range(A.base_dim)]
        for _ in range(5):
            a = Section(
                tuple(random_poly(A.ctx, rng, xs) if xs else A.ctx.const(rng.randint(-2, 2))
                      for _ in range(A.rank))
            )
            b = Section(
                tuple(random_poly(A.ctx, rng, xs) if xs else A.ctx.const(rng.randint(-2, 2))
                      for _ in range(A.rank))
            )
            f = random_poly(A.ctx, rng, xs) if xs else A.ctx.const(3)
            lhs = derived_bracket(A, Q, a, b.scale(f))
            anch = derived_anchor(A, Q, a, f) if xs else A.ctx.zero()
            rhs = derived_bracket(A, Q, a, b).scale(f)
            rhs = Section(
                tuple(rhs.coefficients[k] + anch * b.coefficients[k] for k in range(A.rank))
            )
            assert all(not c for c in (lhs - rhs).coefficients)


def so3_poisson_algebroid_fixture():
    pi, _ = so3_poisson_bivector()
    return poisson_to_algebroid(pi)


def test_derived_equals_classical_bracket(rng):
    A = so3_poisson_algebroid_fixture()
    Q = build_Q(A)
    xs = [f"x{i + 1}" for i in range(A.base_dim)]
    for _ in range(6):
        a = Section(tuple(random_poly(A.ctx, rng, xs) for _ in range(A.rank)))
        b = Section(tuple(random_poly(A.ctx, rng, xs) for _ in range(A.rank)))
        db = derived_bracket(A, Q, a, b)
        cb = sc_bracket(A, a, b)
        assert all(not c for c in (db - cb).coefficients)
        f = random_poly(A.ctx, rng, xs)
        assert derived_anchor(A, Q, a, f) == sc_anchor(A, a, f)


# -- identifications ----------------------------------------------------------


def test_section_to_vf_shape():
    A = sl2_algebroid()
    a = frame_section(A, 0)
    D = section_to_vf(A, a)
    assert D.degree() == -1
    assert vf_to_section(A, D) == a


def test_vf_to_section_rejects_bad_shape():
    A = tangent_line()
    with pytest.raises(ShapeError):
        vf_to_section(A, build_Q(A))


def test_cdo_roundtrip_and_duality(rng):
    A = LieAlgebroidData.from_constants(2, 2, {}, {(0, 0): 1, (1, 1): 1})
    x = A.x(0)
    Y = CDOData(
        ((x, A.ctx.const(2)), (A.x(1), x * x)),
        (A.ctx.one(), x),
    )
    assert dual_cdo(dual_cdo(Y)) == Y
    D = cdo_to_vf(A, Y)
    assert vf_to_cdo(A, D) == Y
    # constant-matrix dual is minus the transpose
    Yc = CDOData(
        ((A.ctx.const(1), A.ctx.const(2)), (A.ctx.const(3), A.ctx.const(4))),
        (A.ctx.zero(), A.ctx.zero()),
    )
    Yd = dual_cdo(Yc)
    assert Yd.matrix[0][1] == -3 and Yd.matrix[1][0] == -2


def test_dual_pairing_identity(rng):
    A = LieAlgebroidData.from_constants(2, 2, {}, {(0, 0): 1, (1, 1): 1})
    xs = ["x1", "x2"]
    for _ in range(5):
        Y = CDOData(
            tuple(
                tuple(random_poly(A.ctx, rng, xs) for _ in range(2)) for _ in range(2)
            ),
            tuple(random_poly(A.ctx, rng, xs) for _ in range(2)),
        )
        Yd = dual_cdo(Y)
        xi = Section(tuple(random_poly(A.ctx, rng, xs) for _ in range(2)))
        e = Section(tuple(random_poly(A.ctx, rng, xs) for _ in range(2)))
        pair = sum(
            (xi.coefficients[i] * e.coefficients[i] for i in range(2)), A.ctx.zero()
        )
        lhs = sum(
            (
                Yd.apply_to_section(A, xi).coefficients[i] * e.coefficients[i]
                + xi.coefficients[i] * Y.apply_to_section(A, e).coefficients[i]
                for i in range(2)
            ),
            A.ctx.zero(),
        )
        assert lhs == Y.symbol_applied(A, pair)


def test_cdo_acts_as_commutator(rng):
    # [cdo_to_vf(Y), section_to_vf(a)] = section_to_vf(Y a)
    A = sl2_algebroid()
    X0 = A.ctx.derivation({"xi2": A.xi(0)})
    Y = vf_to_cdo(A, X0)
    for i in range(3):
        a = frame_section(A, i)
        lhs = gcommutator(X0, section_to_vf(A, a))
        assert lhs == section_to_vf(A, Y.apply_to_section(A, a))
    B = LieAlgebroidData.from_constants(1, 2, {}, {(0, 0): 1})
    xs = ["x1"]
    for _ in range(5):
        Y = CDOData(
            tuple(tuple(random_poly(B.ctx, rng, xs) for _ in range(2)) for _ in range(2)),
            (random_poly(B.ctx, rng, xs),),
        )
        D = cdo_to_vf(B, Y)
        a = Section(tuple(random_poly(B.ctx, rng, xs) for _ in range(2)))
        assert gcommutator(D, section_to_vf(B, a)) == section_to_vf(
            B, Y.apply_to_section(B, a)
        )


# -- Poisson ------------------------------------------------------------------


def test_poisson_zero_gives_abelian():
    ctx = make_context(2, 2)
    z = ctx.zero()
    A = poisson_to_algebroid([[z, z], [z, z]])
    assert build_Q(A).is_zero()


def test_poisson_symplectic_passes():
    ctx = make_context(2, 2)
    one = ctx.one()
    z = ctx.zero()
    A = poisson_to_algebroid([[z, one], [-one, z]])
    assert check_homological(build_Q(A)).passed


def test_poisson_linear_so3_and_oracle_agreement():
    pi, ctx = so3_poisson_bivector()
    A = poisson_to_algebroid(pi)
    assert check_homological(build_Q(A)).passed
    assert schouten_jacobiator(pi, ctx) == []


def test_poisson_nonjacobi_fails_both_routes():
    ctx = make_context(3, 3)
    x1, x2 = ctx.var("x1"), ctx.var("x2")
    z = ctx.zero()
    pi = [[z, x1 * x1, z], [-x1 * x1, z, x2 * x2], [z, -x2 * x2, z]]
    A = poisson_to_algebroid(pi)
    assert not check_homological(build_Q(A)).passed
    assert schouten_jacobiator(pi, ctx) != []


def test_poisson_rejects_non_antisymmetric():
    ctx = make_context(2, 2)
    one = ctx.one()
    with pytest.raises(ShapeError):
        poisson_to_algebroid([[one, one], [one, one]])


def test_koszul_oracle_matches_derived_bracket(rng):
    # on sl2 Lie-Poisson data the cotangent bracket equals the Koszul bracket
    from g2kit.catalog import SL2_BRACKET

    ctx = make_context(3, 3)
    pi = lie_poisson_bivector(SL2_BRACKET, ctx)
    A = poisson_to_algebroid(pi)
    Q = build_Q(A)
    assert check_homological(Q).passed
    xs = ["x1", "x2", "x3"]
    for _ in range(5):
        alpha = [random_poly(ctx, rng, xs) for _ in range(3)]
        beta = [random_poly(ctx, rng, xs) for _ in range(3)]
        kb = koszul_bracket(pi, ctx, alpha, beta)
        a = Section(tuple(transport_poly(p, A.ctx) for p in alpha))
        b = Section(tuple(transport_poly(p, A.ctx) for p in beta))
        db = derived_bracket(A, Q, a, b)
        for k in range(3):
            assert db.coefficients[k] == transport_poly(kb[k], A.ctx)


def test_section_shape_validation():
    A = sl2_algebroid()
    with pytest.raises(ShapeError):
        section_to_vf(A, Section((A.ctx.one(),)))  # wrong rank
    B = tangent_line()
    with pytest.raises(ShapeError):
        section_to_vf(B, Section((B.xi(0),)))  # xi-dependent coefficient
