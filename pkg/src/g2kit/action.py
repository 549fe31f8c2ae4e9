"""Strict actions of two-term DGLAs on degree-1 charts.

A StrictActionData carries a candidate morphism mu: h[1] (+) g -> chi(A[1])
as concrete data: one Section per h basis vector (degree -1 fields) and one
degree-0 field in the coordinate shape g_i d/dx_i + f_ab xi^a d/dxi_b per
g basis vector.

Three independent validators decide whether mu is a morphism of DGLAs:

  validate_action_dgla      the four defining equations, expanded exactly
  validate_action_classical the equivalent bundle-level conditions, using
                            only CDO and structure-function arithmetic
  check_double_q            square-zero and commutation of the assembled
                            fields on the product chart

All three must agree on every input, which is itself a tested property.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graded import (
    Derivation,
    GradedContext,
    ShapeError,
    gcommutator,
    transport_derivation,
)
from .algebroid import (
    CDOData,
    LieAlgebroidData,
    Section,
    base_names,
    build_Q,
    check_homological,
    sc_anchor,
    sc_bracket,
    section_to_vf,
    split_degree0_vf,
    vf_to_cdo,
    vf_to_section,
)
from .lie2 import StrictLie2Data, h_semidirect_g, build_Qdelta_Qbr, validate_lie2
from .report import Report


@dataclass(frozen=True)
class StrictActionData:
    """Candidate strict action: L, A, mu_h (sections), mu_g (degree-0 fields)."""

    L: StrictLie2Data
    A: LieAlgebroidData
    mu_h: tuple
    mu_g: tuple

    def __post_init__(self):
        object.__setattr__(self, "mu_h", tuple(self.mu_h))
        object.__setattr__(self, "mu_g", tuple(self.mu_g))
        if len(self.mu_h) != self.L.dim_h:
            raise ShapeError("mu_h must have one section per h basis vector")
        if len(self.mu_g) != self.L.dim_g:
            raise ShapeError("mu_g must have one field per g basis vector")
        for s in self.mu_h:
            if s.rank != self.A.rank:
                raise ShapeError("mu_h section rank mismatch")
        for d in self.mu_g:
            if d.ctx is not self.A.ctx:
                raise ShapeError("mu_g fields must live on the A[1] chart")
            split_degree0_vf(self.A, d)  # raises if not coordinate-shaped

    def mu_of_g(self, v):
        """mu on a g coordinate vector, as a degree-0 derivation."""
        out = Derivation(self.A.ctx, {})
        for i, c in enumerate(v):
            if c:
                out = out + self.mu_g[i].scale(c)
        return out

    def mu_of_h(self, w) -> Section:
        coeffs = [self.A.ctx.zero()] * self.A.rank
        for a, c in enumerate(w):
            if c:
                for k in range(self.A.rank):
                    coeffs[k] = coeffs[k] + self.mu_h[a].coefficients[k] * c
        return Section(tuple(coeffs))


def action_preconditions(S: StrictActionData) -> Report:
    rep = Report("action preconditions")
    rep.add("lie2_valid", "L is a strict Lie 2-algebra", validate_lie2(S.L).passed)
    rep.add(
        "algebroid_valid",
        "[Q_A, Q_A] = 0",
        check_homological(build_Q(S.A)).passed,
    )
    return rep


def _zero_or_detail(rep, name, law, D: Derivation):
    if D.is_zero():
        rep.add(name, law, True)
    else:
        bits = [f"{n}: {p}" for n, p in sorted(D.components.items())]
        rep.add(name, law, False, details="; ".join(bits[:3]))


def validate_action_dgla(S: StrictActionData) -> Report:
    """The four morphism equations, expanded on the A[1] chart."""
    rep = Report("strict action (DGLA equations)")
    A, L = S.A, S.L
    QA = build_Q(A)

    for a in range(L.dim_h):
        lhs = S.mu_of_g(L.delta[a])
        rhs = gcommutator(QA, section_to_vf(A, S.mu_h[a]))
        _zero_or_detail(
            rep, f"c_w{a + 1}", "mu(delta w) = [Q_A, mu(w)]", lhs - rhs
        )
    for i in range(L.dim_g):
        _zero_or_detail(
            rep,
            f"d_v{i + 1}",
            "[Q_A, mu(v)] = 0",
            gcommutator(QA, S.mu_g[i]),
        )
    for i in range(L.dim_g):
        for a in range(L.dim_h):
            lhs = S.mu_of_h(L.act[i][a])
            rhs = gcommutator(S.mu_g[i], section_to_vf(A, S.mu_h[a]))
            _zero_or_detail(
                rep,
                f"a_v{i + 1}w{a + 1}",
                "mu([v, w]) = [mu(v), mu(w)]",
                section_to_vf(A, lhs) - rhs,
            )
    for i in range(L.dim_g):
        for j in range(i + 1, L.dim_g):
            lhs = S.mu_of_g(L.bracket_g[i][j])
            rhs = gcommutator(S.mu_g[i], S.mu_g[j])
            _zero_or_detail(
                rep,
                f"b_v{i + 1}v{j + 1}",
                "mu([v1, v2]) = [mu(v1), mu(v2)]",
                lhs - rhs,
            )
    return rep


def _cdo_bracket(A: LieAlgebroidData, Y1: CDOData, Y2: CDOData) -> CDOData:
    """Commutator of CDOs computed on matrix/symbol data alone."""
    xs = base_names(A)
    r, n = A.rank, A.base_dim
    zero = A.ctx.zero()

    def sym_apply(sym, f):
        acc = zero
        for i, x in enumerate(xs):
            acc = acc + sym[i] * f.partial(x)
        return acc

    matrix = []
    for a in range(r):
        row = []
        for m in range(r):
            acc = sym_apply(Y1.symbol, Y2.matrix[a][m]) - sym_apply(
                Y2.symbol, Y1.matrix[a][m]
            )
            for b in range(r):
                acc = acc + Y2.matrix[a][b] * Y1.matrix[b][m]
                acc = acc - Y1.matrix[a][b] * Y2.matrix[b][m]
            row.append(acc)
        matrix.append(tuple(row))
    symbol = []
    for i in range(n):
        symbol.append(sym_apply(Y1.symbol, Y2.symbol[i]) - sym_apply(Y2.symbol, Y1.symbol[i]))
    return CDOData(tuple(matrix), tuple(symbol))


def _mu_w_cdo(S: StrictActionData, a: int) -> CDOData:
    """The CDO [mu(w_a), .]_A from structure functions and Leibniz terms."""
    A = S.A
    xs = base_names(A)
    m = S.mu_h[a].coefficients
    matrix = []
    for j in range(A.rank):
        row = []
        for k in range(A.rank):
            acc = A.ctx.zero()
            for i in range(A.rank):
                ck = A.c[i][j][k]
                if ck:
                    acc = acc + m[i] * ck
            for al, x in enumerate(xs):
                acc = acc - A.rho[j][al] * m[k].partial(x)
            row.append(acc)
        matrix.append(tuple(row))
    symbol = []
    for al in range(A.base_dim):
        acc = A.ctx.zero()
        for i in range(A.rank):
            acc = acc + m[i] * A.rho[i][al]
        symbol.append(acc)
    return CDOData(tuple(matrix), tuple(symbol))


def validate_action_classical(S: StrictActionData) -> Report:
    """Bundle-level characterization of a strict action.

    mu_g must act by infinitesimal algebroid automorphisms and form a Lie
    algebra morphism into CDO(A), with delta(w) acting as [mu(w), .]_A;
    mu_h must be an equivariant Lie algebra morphism h_delta -> Gamma(A).
    Only CDO arithmetic and the structure-function bracket are used here,
    so the route shares nothing with the graded-commutator validator.
    """
    rep = Report("strict action (classical conditions)")
    A, L = S.A, S.L
    xs = base_names(A)
    cdo_g = [vf_to_cdo(A, d) for d in S.mu_g]

    def section_zero(s: Section):
        return all(not c for c in s.coefficients)

    def cdo_zero(Y: CDOData):
        return all(not p for row in Y.matrix for p in row) and all(
            not p for p in Y.symbol
        )

    def cdo_sub(Y1, Y2):
        return CDOData(
            tuple(
                tuple(Y1.matrix[i][j] - Y2.matrix[i][j] for j in range(A.rank))
                for i in range(A.rank)
            ),
            tuple(Y1.symbol[i] - Y2.symbol[i] for i in range(A.base_dim)),
        )

    def cdo_scale_sum(coeffs, cdos):
        matrix = [[A.ctx.zero()] * A.rank for _ in range(A.rank)]
        symbol = [A.ctx.zero()] * A.base_dim
        for c, Y in zip(coeffs, cdos):
            if not c:
                continue
            for i in range(A.rank):
                for j in range(A.rank):
                    matrix[i][j] = matrix[i][j] + Y.matrix[i][j] * c
            for i in range(A.base_dim):
                symbol[i] = symbol[i] + Y.symbol[i] * c
        return CDOData(tuple(tuple(r) for r in matrix), tuple(symbol))

    # g -> CDO(A) is a Lie algebra morphism
    for i in range(L.dim_g):
        for j in range(i + 1, L.dim_g):
            want = cdo_scale_sum(L.bracket_g[i][j], cdo_g)
            got = _cdo_bracket(A, cdo_g[i], cdo_g[j])
            rep.add(
                f"g_morphism_v{i + 1}v{j + 1}",
                "CDO of mu[v1,v2] equals [CDO mu(v1), CDO mu(v2)]",
                cdo_zero(cdo_sub(want, got)),
            )

    # each mu(v) is an infinitesimal algebroid automorphism
    for i in range(L.dim_g):
        Y = cdo_g[i]
        ok = True
        for p in range(A.rank):
            for q in range(A.rank):
                lhs = Y.apply_to_section(A, sc_bracket(A, _frame(A, p), _frame(A, q)))
                rhs = sc_bracket(A, Y.apply_to_section(A, _frame(A, p)), _frame(A, q))
                rhs = rhs + sc_bracket(A, _frame(A, p), Y.apply_to_section(A, _frame(A, q)))
                if not section_zero(lhs - rhs):
                    ok = False
        rep.add(
            f"auto_bracket_v{i + 1}",
            "mu(v)[a,b]_A = [mu(v)a, b]_A + [a, mu(v)b]_A",
            ok,
        )
        ok = True
        for p in range(A.rank):
            ya = Y.apply_to_section(A, _frame(A, p))
            for al in range(A.base_dim):
                lhs = A.ctx.zero()
                for k in range(A.rank):
                    lhs = lhs + ya.coefficients[k] * A.rho[k][al]
                # [symbol, rho(e_p)] component on d/dx_al
                rhs = Y.symbol_applied(A, A.rho[p][al])
                for be, x2 in enumerate(xs):
                    rhs = rhs - A.rho[p][be] * Y.symbol[al].partial(x2)
                if lhs - rhs:
                    ok = False
        rep.add(
            f"auto_anchor_v{i + 1}",
            "rho(mu(v) a) = [symbol mu(v), rho(a)]",
            ok,
        )

    # delta(w) acts as [mu(w), .]_A
    for a in range(L.dim_h):
        want = cdo_scale_sum(L.delta[a], cdo_g)
        got = _mu_w_cdo(S, a)
        rep.add(
            f"delta_acts_w{a + 1}",
            "CDO of mu(delta w) equals [mu(w), .]_A",
            cdo_zero(cdo_sub(want, got)),
        )

    # mu_h is a Lie algebra morphism h_delta -> Gamma(A)
    for a in range(L.dim_h):
        for b in range(a + 1, L.dim_h):
            lhs = S.mu_of_h(S.L.h_delta_bracket(_unit(L.dim_h, a), _unit(L.dim_h, b)))
            rhs = sc_bracket(A, S.mu_h[a], S.mu_h[b])
            rep.add(
                f"h_morphism_w{a + 1}w{b + 1}",
                "mu[w1, w2]_delta = [mu(w1), mu(w2)]_A",
                section_zero(lhs - rhs),
            )

    # mu_h is equivariant for the g-actions on h and on Gamma(A)
    for i in range(L.dim_g):
        for a in range(L.dim_h):
            lhs = S.mu_of_h(L.act[i][a])
            rhs = cdo_g[i].apply_to_section(A, S.mu_h[a])
            rep.add(
                f"equivariance_v{i + 1}w{a + 1}",
                "mu([v, w]) = mu(v) . mu(w)",
                section_zero(lhs - rhs),
            )
    return rep


def _frame(A: LieAlgebroidData, i: int) -> Section:
    coeffs = [A.ctx.zero()] * A.rank
    coeffs[i] = A.ctx.one()
    return Section(tuple(coeffs))


def _unit(n: int, i: int):
    out = [Fraction(0)] * n
    out[i] = Fraction(1)
    return tuple(out)


# -- product chart ------------------------------------------------------------


def product_context(L: StrictLie2Data, A: LieAlgebroidData) -> GradedContext:
    """Chart for L[1] x A[1], ordered (eta, P, x, xi)."""
    variables = [(f"eta{i + 1}", 1) for i in range(L.dim_g)]
    variables += [(f"P{a + 1}", 2) for a in range(L.dim_h)]
    variables += [(n, A.ctx.degree_of(n)) for n in A.ctx.names]
    return GradedContext(variables)


def build_Qaction(S: StrictActionData, ctx: GradedContext | None = None) -> Derivation:
    """Q_action = eta^i mu(v_i) - P^a mu(w_a) on the product chart."""
    if ctx is None:
        ctx = product_context(S.L, S.A)
    out = Derivation(ctx, {})
    for i in range(S.L.dim_g):
        lifted = transport_derivation(S.mu_g[i], ctx)
        out = out + lifted.lmul(ctx.var(f"eta{i + 1}"))
    for a in range(S.L.dim_h):
        lifted = transport_derivation(section_to_vf(S.A, S.mu_h[a]), ctx)
        out = out - lifted.lmul(ctx.var(f"P{a + 1}"))
    return out


def check_double_q(S: StrictActionData) -> Report:
    """Verification on the product chart.

    The transformation structure is a compatible double object exactly when
    V := -Q_delta + Q_A and H := Q_br + Q_action each square to zero and
    commute with one another.  The headline cross-commutator decides the
    differential equations; the H square decides that mu preserves brackets.
    The combined verdict therefore agrees with validate_action_dgla.
    """
    rep = Report("double-structure commutation")
    ctx = product_context(S.L, S.A)
    q_delta, q_br = build_Qdelta_Qbr(S.L)
    q_delta = transport_derivation(q_delta, ctx)
    q_br = transport_derivation(q_br, ctx)
    QA = transport_derivation(build_Q(S.A), ctx)
    q_action = build_Qaction(S, ctx)

    V = (-q_delta) + QA
    H = q_br + q_action
    _zero_or_detail(
        rep,
        "cross_commutator",
        "[-Q_delta + Q_A, Q_br + Q_action] = 0",
        gcommutator(V, H),
    )
    _zero_or_detail(rep, "vertical_square", "[-Q_delta + Q_A, .] squares to zero", gcommutator(V, V))
    _zero_or_detail(rep, "horizontal_square", "[Q_br + Q_action, .] squares to zero", gcommutator(H, H))
    return rep


def q_total(S: StrictActionData) -> Derivation:
    """-Q_delta + Q_A + Q_br + Q_action on the product chart."""
    ctx = product_context(S.L, S.A)
    q_delta, q_br = build_Qdelta_Qbr(S.L)
    return (
        -transport_derivation(q_delta, ctx)
        + transport_derivation(build_Q(S.A), ctx)
        + transport_derivation(q_br, ctx)
        + build_Qaction(S, ctx)
    )


# -- induced fields on the total space ---------------------------------------


@dataclass(frozen=True)
class MuTilde:
    """Induced fields on the total space of A, in coordinates (x, u).

    h basis vectors map to constant vertical fields sum_b m^b(x) d/du_b;
    g basis vectors map to linear fields sum_i g_i(x) d/dx_i +
    sum_{a,b} u_a f_ab(x) d/du_b.  Stored as derivations on an auxiliary
    all-even chart so brackets stay exact.
    """

    ctx: GradedContext
    h_fields: tuple
    g_fields: tuple

    def field_of(self, w, v) -> Derivation:
        out = Derivation(self.ctx, {})
        for a, c in enumerate(w):
            if c:
                out = out + self.h_fields[a].scale(c)
        for i, c in enumerate(v):
            if c:
                out = out + self.g_fields[i].scale(c)
        return out


def total_space_context(A: LieAlgebroidData) -> GradedContext:
    variables = [(f"x{i + 1}", 0) for i in range(A.base_dim)]
    variables += [(f"u{i + 1}", 0) for i in range(A.rank)]
    return GradedContext(variables)


def build_mu_tilde(S: StrictActionData) -> MuTilde:
    A = S.A
    ctx = total_space_context(A)

    from .graded import transport_poly

    def lift(p):
        return transport_poly(p, ctx)

    h_fields = []
    for a in range(S.L.dim_h):
        comps = {}
        for b in range(A.rank):
            coeff = S.mu_h[a].coefficients[b]
            if coeff:
                comps[f"u{b + 1}"] = lift(coeff)
        h_fields.append(Derivation(ctx, comps))
    g_fields = []
    for i in range(S.L.dim_g):
        base, fiber = split_degree0_vf(A, S.mu_g[i])
        comps = {}
        for j in range(A.base_dim):
            if base[j]:
                comps[f"x{j + 1}"] = lift(base[j])
        for b in range(A.rank):
            acc = ctx.zero()
            for a in range(A.rank):
                if fiber[a][b]:
                    acc = acc + ctx.var(f"u{a + 1}") * lift(fiber[a][b])
            if acc:
                comps[f"u{b + 1}"] = acc
        g_fields.append(Derivation(ctx, comps))
    return MuTilde(ctx, tuple(h_fields), tuple(g_fields))


def check_mu_tilde_brackets(S: StrictActionData) -> Report:
    """Commutators of the induced fields against the semidirect bracket."""
    rep = Report("induced fields preserve brackets")
    mt = build_mu_tilde(S)
    dh, dg = S.L.dim_h, S.L.dim_g
    table = h_semidirect_g(S.L)
    n = dh + dg

    def basis_field(idx):
        w = [Fraction(0)] * dh
        v = [Fraction(0)] * dg
        if idx < dh:
            w[idx] = Fraction(1)
        else:
            v[idx - dh] = Fraction(1)
        return mt.field_of(w, v)

    fields = [basis_field(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            got = gcommutator(fields[i], fields[j])
            want = Derivation(mt.ctx, {})
            for k in range(n):
                if table[i][j][k]:
                    want = want + fields[k].scale(table[i][j][k])
            rep.add(
                f"bracket_{i}_{j}",
                "[mu~(a), mu~(b)] = mu~([a, b])",
                (got - want).is_zero(),
            )
    return rep


# -- the bracket-preserving-map example ---------------------------------------


def example_gA(bracket_g, A: LieAlgebroidData, eta) -> StrictActionData:
    """Action built from a bracket-preserving map eta of a Lie algebra into
    sections: L is the 2-algebra with identity differential and adjoint
    action, mu(w) = eta(w), mu(v) = [Q_A, eta(v)].

    eta is a list of Sections, one per basis vector; it must satisfy
    eta([v_i, v_j]) = [eta(v_i), eta(v_j)]_A, checked via derived brackets.
    """
    dg = len(bracket_g)
    L = StrictLie2Data.from_tables(
        dg,
        dg,
        bracket_g,
        bracket_g,
        [[1 if i == j else 0 for j in range(dg)] for i in range(dg)],
    )
    QA = build_Q(A)
    for i in range(dg):
        for j in range(dg):
            from .algebroid import derived_bracket

            got = derived_bracket(A, QA, eta[i], eta[j])
            want = Section(
                tuple(
                    sum(
                        (eta[k].coefficients[m] * L.bracket_g[i][j][k] for k in range(dg)),
                        A.ctx.zero(),
                    )
                    for m in range(A.rank)
                )
            )
            if not all(not c for c in (got - want).coefficients):
                raise ShapeError(
                    f"eta is not bracket-preserving at basis pair ({i}, {j})"
                )
    mu_g = [gcommutator(QA, section_to_vf(A, eta[i])) for i in range(dg)]
    return StrictActionData(L, A, tuple(eta), tuple(mu_g))
