import random

import numpy as np
import pytest

from g2kit.catalog import heis3_lie2, sl2_lie2
from g2kit.groups import (
    CROSSED_MODULES,
    GROUPS,
    GroupCrossedModule,
    MatrixGroupElement,
    TwoGroupElement,
    exp_to_group,
    group_axioms_report,
    la_group_bracket_check,
    la_group_inv,
    la_group_mul,
    la_twogroup_compatibility,
    twogroup_compose,
    twogroup_identity,
    twogroup_mul,
    twogroup_src,
    twogroup_tgt,
    twogroup_vert_unit,
    validate_group_crossed_module,
)
from g2kit.lie2 import h_semidirect_g


def test_exp_zero_is_identity():
    for tag in GROUPS:
        g = exp_to_group(np.zeros(GROUPS[tag].dim), tag)
        assert np.allclose(g.matrix, np.eye(GROUPS[tag].size))


def test_exp_nilpotent_single_entry():
    g = exp_to_group([1.5, 0.0, 0.0], "heis3")
    want = np.eye(3)
    want[0, 1] = 1.5
    assert np.array_equal(g.matrix, want)


def test_exp_sl2_diagonal_closed_form():
    g = exp_to_group([0.9, 0.0, 0.0], "sl2")
    assert np.allclose(g.matrix, np.diag([np.exp(0.9), np.exp(-0.9)]), atol=1e-12)


def test_exp_unknown_tag():
    with pytest.raises(KeyError):
        exp_to_group([0.0], "nope")


def test_log_inverts_exp():
    rng = random.Random(3)
    for tag in GROUPS:
        G = GROUPS[tag]
        for _ in range(10):
            coords = np.array([rng.uniform(-0.5, 0.5) for _ in range(G.dim)])
            assert np.allclose(G.log(G.exp(coords)), coords, atol=1e-9)


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        MatrixGroupElement(np.zeros((2, 2)), "sl2")


@pytest.mark.parametrize("name", sorted(CROSSED_MODULES))
def test_crossed_module_axioms(name):
    rep = validate_group_crossed_module(CROSSED_MODULES[name], samples=60, seed=1)
    assert rep.passed
    assert all(c.residual <= 1e-9 for c in rep.checks)


def test_trivial_action_on_nonabelian_fails_peiffer():
    bad = GroupCrossedModule("bad", GROUPS["sl2"], GROUPS["sl2"], "trivial")
    rep = validate_group_crossed_module(bad, samples=40, seed=1)
    assert not rep.check("peiffer").passed


@pytest.mark.parametrize("name", sorted(CROSSED_MODULES))
def test_group_axioms_within_tolerance(name):
    rep = group_axioms_report(CROSSED_MODULES[name], samples=100, seed=2)
    assert rep.passed
    assert all(c.residual <= 1e-9 for c in rep.checks)


def test_twogroup_mul_reduces_to_conjugation_formula():
    cm = CROSSED_MODULES["sl2"]
    rng = random.Random(5)
    for _ in range(10):
        a = TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))
        b = TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))
        m = twogroup_mul(cm, a, b)
        want = a.h.matrix @ a.g.matrix @ b.h.matrix @ np.linalg.inv(a.g.matrix)
        assert np.allclose(m.h.matrix, want, atol=1e-12)
        assert np.allclose(m.g.matrix, (a.g @ b.g).matrix, atol=1e-12)


def test_twogroup_mul_identity():
    cm = CROSSED_MODULES["heisenberg"]
    rng = random.Random(6)
    a = TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))
    m = twogroup_mul(cm, a, twogroup_identity(cm))
    assert np.allclose(m.h.matrix, a.h.matrix)
    assert np.allclose(m.g.matrix, a.g.matrix)


def test_pair_group_isomorphism_on_abelian():
    # with trivial phi, (h, g) -> (hg, g) carries the semidirect product to
    # the componentwise product
    cm = CROSSED_MODULES["tm"]
    rng = random.Random(7)
    for _ in range(10):
        a = TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))
        b = TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))
        m = twogroup_mul(cm, a, b)
        lhs = (m.h @ m.g).matrix
        rhs = ((a.h @ a.g) @ (b.h @ b.g)).matrix
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_vertical_composition_laws():
    cm = CROSSED_MODULES["heisenberg"]
    rng = random.Random(8)
    worst = 0.0
    for _ in range(40):
        b = TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))
        a = TwoGroupElement(cm.H.sample(rng), twogroup_tgt(cm, b))
        c_src = twogroup_src(cm, b)
        comp = twogroup_compose(cm, a, b)
        assert np.allclose(twogroup_src(cm, comp).matrix, c_src.matrix)
        assert np.allclose(
            twogroup_tgt(cm, comp).matrix, twogroup_tgt(cm, a).matrix, atol=1e-12
        )
        # unit law
        u = twogroup_vert_unit(cm, twogroup_tgt(cm, b))
        same = twogroup_compose(cm, u, b)
        assert np.allclose(same.h.matrix, b.h.matrix)
        # triple associativity
        z = TwoGroupElement(cm.H.sample(rng), twogroup_tgt(cm, a))
        lhs = twogroup_compose(cm, twogroup_compose(cm, z, a), b)
        rhs = twogroup_compose(cm, z, twogroup_compose(cm, a, b))
        worst = max(worst, float(np.max(np.abs(lhs.h.matrix - rhs.h.matrix))))
    assert worst <= 1e-10


def test_compose_rejects_mismatch():
    cm = CROSSED_MODULES["sl2"]
    rng = random.Random(9)
    a = TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))
    b = TwoGroupElement(cm.H.exp(np.array([0.4, 0.1, 0.0])), cm.G.sample(rng))
    if np.max(np.abs(twogroup_src(cm, a).matrix - twogroup_tgt(cm, b).matrix)) > 1e-6:
        with pytest.raises(ValueError):
            twogroup_compose(cm, a, b)


def test_st_of_product_are_products():
    cm = CROSSED_MODULES["sl2"]
    rng = random.Random(10)
    for _ in range(30):
        a = TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))
        b = TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))
        m = twogroup_mul(cm, a, b)
        assert np.allclose(
            twogroup_src(cm, m).matrix,
            (twogroup_src(cm, a) @ twogroup_src(cm, b)).matrix,
            atol=1e-9,
        )
        assert np.allclose(
            twogroup_tgt(cm, m).matrix,
            (twogroup_tgt(cm, a) @ twogroup_tgt(cm, b)).matrix,
            atol=1e-9,
        )


def test_la_group_unit_and_abelian_reduction():
    cm = CROSSED_MODULES["tm"]
    rng = random.Random(11)
    w = np.array([0.3])
    g = cm.G.sample(rng)
    uw, ug = la_group_mul(cm, (np.zeros(1), cm.G.identity()), (w, g))
    assert np.allclose(uw, w) and np.allclose(ug.matrix, g.matrix)
    w2 = np.array([-0.2])
    g2 = cm.G.sample(rng)
    sw, sg = la_group_mul(cm, (w, g), (w2, g2))
    assert np.allclose(sw, w + w2)  # trivial action: plain sum


@pytest.mark.parametrize("name", sorted(CROSSED_MODULES))
def test_la_twogroup_derivative_compat(name):
    rep = la_twogroup_compatibility(CROSSED_MODULES[name], samples=25, seed=3)
    assert rep.passed
    assert rep.checks[0].residual <= 1e-6


def test_la_group_bracket_matches_semidirect():
    rep = la_group_bracket_check(
        CROSSED_MODULES["sl2"], h_semidirect_g(sl2_lie2()), samples=15, seed=4
    )
    assert rep.passed
    rep = la_group_bracket_check(
        CROSSED_MODULES["heisenberg"], h_semidirect_g(heis3_lie2()), samples=15, seed=4
    )
    assert rep.passed
