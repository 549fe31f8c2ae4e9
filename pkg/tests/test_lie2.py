import random
from fractions import Fraction

import pytest

from g2kit.algebroid import build_Q
from g2kit.catalog import (
    SL2_BRACKET,
    abelian_lie2,
    heis3_lie2,
    sl2_algebroid,
    sl2_lie2,
)
from g2kit.graded import gcommutator
from g2kit.lie2 import (
    StrictLie2Data,
    build_Qdelta_Qbr,
    check_ordinary_jacobi,
    check_qalgebra,
    from_crossed_module,
    h_semidirect_g,
    read_back_constants,
    to_crossed_module,
    validate_crossed_module,
    validate_lie2,
)

from conftest import perturb_lie2, random_lie2, valid_lie2s


def test_abelian_passes():
    assert validate_lie2(abelian_lie2()).passed


@pytest.mark.parametrize("L", valid_lie2s())
def test_catalog_lie2s_pass(L):
    assert validate_lie2(L).passed


def test_scaled_delta_still_passes():
    L = StrictLie2Data.from_tables(
        3, 3, SL2_BRACKET, SL2_BRACKET, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    )
    assert validate_lie2(L).passed


def test_non_derivation_act_fails():
    act = [[[Fraction(v) for v in inner] for inner in row] for row in SL2_BRACKET]
    act[0][0][0] += 1
    L = StrictLie2Data.from_tables(
        3, 3, SL2_BRACKET, act, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    )
    rep = validate_lie2(L)
    assert not rep.passed


def test_delta_squared_reported_vacuous():
    rep = validate_lie2(sl2_lie2())
    note = rep.check("delta_squared")
    assert note.passed and "vacuous" in note.details


# -- crossed module conversions ----------------------------------------------


def test_zero_delta_gives_abelian_h():
    L = StrictLie2Data.from_tables(2, 2)
    C = to_crossed_module(L)
    assert all(not v for row in C.bracket_h for inner in row for v in inner)
    assert validate_crossed_module(C).passed


def test_identity_delta_gives_equal_brackets():
    C = to_crossed_module(sl2_lie2())
    assert C.bracket_h == C.bracket_g
    assert validate_crossed_module(C).passed


@pytest.mark.parametrize("L", valid_lie2s())
def test_conversion_roundtrip(L):
    C = to_crossed_module(L)
    assert validate_crossed_module(C).passed
    back = from_crossed_module(C)
    assert back == L
    # and the other composition fixes crossed modules
    C2 = to_crossed_module(back)
    assert C2 == C


def test_from_crossed_module_validates():
    C = to_crossed_module(heis3_lie2())
    L = from_crossed_module(C)
    assert validate_lie2(L).passed


# -- encoding fields -----------------------------------------------------------


def test_qdelta_qbr_abelian_zero():
    qd, qb = build_Qdelta_Qbr(abelian_lie2())
    assert qd.is_zero() and qb.is_zero()


def test_qdelta_formula():
    L = sl2_lie2()
    qd, _ = build_Qdelta_Qbr(L)
    ctx = qd.ctx
    # Q_delta = -P^a D_ak d/deta^k with D the identity here
    for k in range(3):
        assert qd.component(f"eta{k + 1}") == -ctx.var(f"P{k + 1}")


def test_h_zero_matches_point_algebroid_field():
    L = StrictLie2Data.from_tables(0, 3, SL2_BRACKET, None, None)
    qd, qb = build_Qdelta_Qbr(L)
    assert qd.is_zero()
    QA = build_Q(sl2_algebroid())
    for k in range(3):
        assert QA.component(f"xi{k + 1}").terms == qb.component(f"eta{k + 1}").terms


@pytest.mark.parametrize("L", valid_lie2s())
def test_each_field_self_commutes_on_valid_data(L):
    qd, qb = build_Qdelta_Qbr(L)
    assert gcommutator(qd, qd).is_zero()
    assert gcommutator(qb, qb).is_zero()
    assert gcommutator(qd + qb, qd + qb).is_zero()


@pytest.mark.parametrize("L", valid_lie2s())
def test_read_back_constants(L):
    _, qb = build_Qdelta_Qbr(L)
    b, a = read_back_constants(L, qb)
    assert b == L.bracket_g
    assert a == L.act


def test_qalgebra_matches_validate_on_catalog_and_perturbations(rng):
    for L in valid_lie2s():
        assert check_qalgebra(L).passed == validate_lie2(L).passed == True
    checked = 0
    for _ in range(60):
        L = perturb_lie2(rng.choice(valid_lie2s()), rng)
        assert check_qalgebra(L).passed == validate_lie2(L).passed
        checked += 1
    for _ in range(30):
        L = random_lie2(rng)
        assert check_qalgebra(L).passed == validate_lie2(L).passed
        checked += 1
    assert checked == 90


def test_qalgebra_failure_locates_coefficient():
    act = [[[Fraction(v) for v in inner] for inner in row] for row in SL2_BRACKET]
    act[0][0][0] += 1
    L = StrictLie2Data.from_tables(
        3, 3, SL2_BRACKET, act, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    )
    rep = check_qalgebra(L)
    assert not rep.passed
    failing = [c for c in rep.checks if not c.passed]
    assert failing and any(c.details for c in failing)


# -- semidirect product ---------------------------------------------------------


def test_semidirect_reductions():
    L0 = StrictLie2Data.from_tables(0, 3, SL2_BRACKET, None, None)
    assert h_semidirect_g(L0) == L0.bracket_g
    Lh = StrictLie2Data.from_tables(2, 0)
    table = h_semidirect_g(Lh)
    assert all(not v for row in table for inner in row for v in inner)


@pytest.mark.parametrize("L", valid_lie2s())
def test_semidirect_jacobi(L):
    assert check_ordinary_jacobi(h_semidirect_g(L))
