import random
from fractions import Fraction

import pytest

from g2kit.algebroid import LieAlgebroidData, make_context
from g2kit.catalog import (
    HEIS3_BRACKET,
    SL2_BRACKET,
    abelian_lie2,
    heis3_algebroid,
    heis3_lie2,
    sl2_algebroid,
    sl2_lie2,
    sl2_on_r2,
    so3_poisson_algebroid,
    tangent_line,
)
from g2kit.lie2 import StrictLie2Data


def random_poly(ctx, rng, names, max_degree=2, density=0.5):
    """Sparse integer-coefficient polynomial in the given base variables."""
    p = ctx.zero()
    for _ in range(rng.randint(0, 2)):
        if rng.random() > density:
            continue
        term = ctx.const(rng.choice([-2, -1, 1, 2]))
        for _ in range(rng.randint(0, max_degree)):
            term = term * ctx.var(rng.choice(names))
        p = p + term
    return p


def random_algebroid(rng, max_n=3, max_r=4, max_degree=2) -> LieAlgebroidData:
    """Random structure data; usually not a Lie algebroid."""
    n = rng.randint(0, max_n)
    r = rng.randint(1, max_r)
    ctx = make_context(n, r)
    xs = [f"x{i + 1}" for i in range(n)]
    c_entries = {}
    for i in range(r):
        for j in range(i + 1, r):
            for k in range(r):
                if rng.random() < 0.3:
                    p = random_poly(ctx, rng, xs, max_degree) if n else ctx.const(
                        rng.choice([-2, -1, 1, 2])
                    )
                    if p:
                        c_entries[(i, j, k)] = p
    rho_entries = {}
    for i in range(r):
        for a in range(n):
            if rng.random() < 0.4:
                p = random_poly(ctx, rng, xs, max_degree)
                if p:
                    rho_entries[(i, a)] = p
    return LieAlgebroidData.from_constants(n, r, c_entries, rho_entries, ctx=ctx)


def lie_poisson_bivector(bracket, ctx):
    """pi_ij = c_ij^k x_k for a structure-constant table on n = dim vars."""
    n = len(bracket)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ctx.zero()
            for k in range(n):
                if bracket[i][j][k]:
                    acc = acc + ctx.var(f"x{k + 1}") * bracket[i][j][k]
            row.append(acc)
        out.append(row)
    return out


def valid_algebroids():
    """A spread of honest Lie algebroids for roundtrip tests."""
    out = [
        sl2_algebroid(),
        heis3_algebroid(),
        tangent_line(),
        sl2_on_r2(),
        so3_poisson_algebroid(),
        LieAlgebroidData.from_constants(0, 2, {}),  # abelian rank 2
        LieAlgebroidData.from_constants(2, 2, {}, {(0, 0): 1, (1, 1): 1}),
        LieAlgebroidData.from_constants(1, 2, {(0, 1, 1): 1}, {(0, 0): 1}),
    ]
    # constant-rho flat bundle: commuting anchor fields, zero bracket
    out.append(LieAlgebroidData.from_constants(3, 2, {}, {(0, 0): 2, (1, 2): -1}))
    return out


def random_lie2(rng, max_h=3, max_g=3) -> StrictLie2Data:
    dh = rng.randint(0, max_h)
    dg = rng.randint(1, max_g)
    b = [[[0] * dg for _ in range(dg)] for _ in range(dg)]
    for i in range(dg):
        for j in range(i + 1, dg):
            for k in range(dg):
                if rng.random() < 0.3:
                    v = rng.choice([-2, -1, 1, 2])
                    b[i][j][k] = v
                    b[j][i][k] = -v
    act = [[[0] * dh for _ in range(dh)] for _ in range(dg)]
    for i in range(dg):
        for a in range(dh):
            for c in range(dh):
                if rng.random() < 0.3:
                    act[i][a][c] = rng.choice([-2, -1, 1, 2])
    delta = [[0] * dg for _ in range(dh)]
    for a in range(dh):
        for i in range(dg):
            if rng.random() < 0.4:
                delta[a][i] = rng.choice([-1, 1])
    return StrictLie2Data.from_tables(dh, dg, b, act, delta)


def valid_lie2s():
    delta0_adjoint = StrictLie2Data.from_tables(
        3, 3, SL2_BRACKET, SL2_BRACKET, [[0] * 3 for _ in range(3)]
    )
    sl2_twice = StrictLie2Data.from_tables(
        3, 3, SL2_BRACKET, SL2_BRACKET, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    )
    return [
        abelian_lie2(),
        abelian_lie2(2, 3),
        sl2_lie2(),
        heis3_lie2(),
        sl2_twice,
        delta0_adjoint,
        StrictLie2Data.from_tables(0, 3, SL2_BRACKET, None, None),
        StrictLie2Data.from_tables(2, 0),
    ]


def perturb_lie2(L: StrictLie2Data, rng) -> StrictLie2Data:
    """Single structure-constant bump by +1 (antisymmetric for brackets)."""
    b = [[[Fraction(v) for v in inner] for inner in row] for row in L.bracket_g]
    act = [[[Fraction(v) for v in inner] for inner in row] for row in L.act]
    delta = [[Fraction(v) for v in row] for row in L.delta]
    choices = []
    if L.dim_g >= 2:
        choices.append("bracket")
    if L.dim_h and L.dim_g:
        choices.append("act")
        choices.append("delta")
    if not choices:
        choices = ["bracket"] if L.dim_g >= 2 else []
    if not choices:
        return L
    which = rng.choice(choices)
    if which == "bracket":
        i = rng.randrange(L.dim_g)
        j = rng.randrange(L.dim_g)
        while j == i:
            j = rng.randrange(L.dim_g)
        k = rng.randrange(L.dim_g)
        b[i][j][k] += 1
        b[j][i][k] -= 1
    elif which == "act":
        i = rng.randrange(L.dim_g)
        a = rng.randrange(L.dim_h)
        c = rng.randrange(L.dim_h)
        act[i][a][c] += 1
    else:
        a = rng.randrange(L.dim_h)
        i = rng.randrange(L.dim_g)
        delta[a][i] += 1
    return StrictLie2Data.from_tables(L.dim_h, L.dim_g, b, act, delta)


@pytest.fixture
def rng():
    return random.Random(20240811)
