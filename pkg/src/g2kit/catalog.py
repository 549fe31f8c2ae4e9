"""Named fixtures: Lie 2-algebras, algebroids, strict actions, and the
integration setups used by the CLI and the verification batteries."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebroid import (
    LieAlgebroidData,
    Section,
    frame_section,
    make_context,
    poisson_to_algebroid,
)
from .action import StrictActionData, example_gA
from .groups import CROSSED_MODULES
from .lie2 import StrictLie2Data

# [h, e] = 2e, [h, f] = -2f, [e, f] = h in the basis (h, e, f)
SL2_BRACKET = [
    [[0, 0, 0], [0, 2, 0], [0, 0, -2]],
    [[0, -2, 0], [0, 0, 0], [1, 0, 0]],
    [[0, 0, 2], [-1, 0, 0], [0, 0, 0]],
]

# [p, q] = z in the basis (p, q, z)
HEIS3_BRACKET = [
    [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
    [[0, 0, -1], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
]

_ID3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def abelian_lie2(dim_h=1, dim_g=1) -> StrictLie2Data:
    return StrictLie2Data.from_tables(dim_h, dim_g)


def sl2_lie2() -> StrictLie2Data:
    """h = g = sl(2), identity differential, adjoint action."""
    return StrictLie2Data.from_tables(3, 3, SL2_BRACKET, SL2_BRACKET, _ID3)


def heis3_lie2() -> StrictLie2Data:
    return StrictLie2Data.from_tables(3, 3, HEIS3_BRACKET, HEIS3_BRACKET, _ID3)


def sl2_algebroid() -> LieAlgebroidData:
    return LieAlgebroidData.from_constants(
        0, 3, {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1}
    )


def heis3_algebroid() -> LieAlgebroidData:
    return LieAlgebroidData.from_constants(0, 3, {(0, 1, 2): 1})


def tangent_line() -> LieAlgebroidData:
    """Rank-1 tangent algebroid over one coordinate."""
    return LieAlgebroidData.from_constants(1, 1, {}, {(0, 0): 1})


def sl2_on_r2() -> LieAlgebroidData:
    """Transformation algebroid of sl(2) on the plane (fundamental rep)."""
    ctx = make_context(2, 3)
    x1, x2 = ctx.var("x1"), ctx.var("x2")
    rho = {(0, 0): -x1, (0, 1): x2, (1, 0): -x2, (2, 1): -x1}
    return LieAlgebroidData.from_constants(
        2, 3, {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1}, rho, ctx=ctx
    )


def so3_poisson_bivector():
    ctx = make_context(3, 3)
    x1, x2, x3 = ctx.var("x1"), ctx.var("x2"), ctx.var("x3")
    z = ctx.zero()
    return [[z, x3, -x2], [-x3, z, x1], [x2, -x1, z]], ctx


def so3_poisson_algebroid() -> LieAlgebroidData:
    pi, _ = so3_poisson_bivector()
    return poisson_to_algebroid(pi)


# -- strict actions -----------------------------------------------------------


def action_zero_sl2() -> StrictActionData:
    A = sl2_algebroid()
    L = sl2_lie2()
    zero_sec = Section((A.ctx.zero(),) * 3)
    return StrictActionData(
        L, A, (zero_sec,) * 3, tuple(A.ctx.derivation({}) for _ in range(3))
    )


def action_ga_sl2() -> StrictActionData:
    A = sl2_algebroid()
    return example_gA(SL2_BRACKET, A, [frame_section(A, i) for i in range(3)])


def action_ga_heis3() -> StrictActionData:
    A = heis3_algebroid()
    return example_gA(HEIS3_BRACKET, A, [frame_section(A, i) for i in range(3)])


def action_ga_tm() -> StrictActionData:
    """The line translated along itself: g = R acting on TM for M = R."""
    A = tangent_line()
    return example_gA([[[0]]], A, [Section((A.ctx.one(),))])


def action_ga_sl2_r2() -> StrictActionData:
    A = sl2_on_r2()
    return example_gA(SL2_BRACKET, A, [frame_section(A, i) for i in range(3)])


def action_translation_deltazero() -> StrictActionData:
    """delta = 0 entry: h acts by a flat section, g by the base translation."""
    A = tangent_line()
    L = StrictLie2Data.from_tables(1, 1)
    mu_h = (Section((A.ctx.zero(),)),)
    mu_g = (A.ctx.derivation({"x1": A.ctx.one()}),)
    return StrictActionData(L, A, mu_h, mu_g)


def catalog_actions() -> dict:
    return {
        "zero-sl2": action_zero_sl2(),
        "ga-sl2": action_ga_sl2(),
        "ga-heis3": action_ga_heis3(),
        "ga-tm": action_ga_tm(),
        "ga-sl2-r2": action_ga_sl2_r2(),
        "translation-deltazero": action_translation_deltazero(),
    }


def adjoint_action_direct() -> StrictActionData:
    """The adjoint-type data assembled from constants, not via example_gA."""
    A = sl2_algebroid()
    L = sl2_lie2()
    mu_h = tuple(frame_section(A, i) for i in range(3))
    mu_g = []
    for i in range(3):
        comps = {}
        for m in range(3):
            acc = A.ctx.zero()
            for a in range(3):
                cim = A.c[i][a][m]
                if cim:
                    acc = acc - cim * A.xi(a)
            if acc:
                comps[f"xi{m + 1}"] = acc
        mu_g.append(A.ctx.derivation(comps))
    return StrictActionData(L, A, mu_h, tuple(mu_g))


def integration_setup(name: str):
    """Build a named integration setup.  Known names:

    tm         pair groupoid of the translated line
    tm-action  the same data presented on the action groupoid
    adjoint    sl(2) over a point, group-as-groupoid, directly assembled
    heisenberg nilpotent analogue of the adjoint entry
    ga-sl2     sl(2) over a point through the bracket-preserving-map builder
    """
    from .integrate import IntegrationSetup

    if name in ("tm", "tm-action"):
        S = action_ga_tm()
        return IntegrationSetup(
            name=name,
            S=S,
            cm=CROSSED_MODULES["tm"],
            gamma_tag="pair" if name == "tm" else "action",
            lie_orientation=+1,
        )
    if name == "adjoint":
        return IntegrationSetup(
            name=name,
            S=adjoint_action_direct(),
            cm=CROSSED_MODULES["sl2"],
            gamma_tag="group",
            lie_orientation=-1,
        )
    if name == "ga-sl2":
        return IntegrationSetup(
            name=name,
            S=action_ga_sl2(),
            cm=CROSSED_MODULES["sl2"],
            gamma_tag="group",
            lie_orientation=-1,
        )
    if name == "heisenberg":
        return IntegrationSetup(
            name=name,
            S=action_ga_heis3(),
            cm=CROSSED_MODULES["heisenberg"],
            gamma_tag="group",
            lie_orientation=-1,
        )
    raise KeyError(f"unknown integration setup {name!r}")


INTEGRATION_NAMES = ("tm", "adjoint", "heisenberg", "ga-sl2")
