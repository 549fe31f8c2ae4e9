"""Lie algebroids as structure-function data and as degree-1 charts with a
homological vector field.

A LieAlgebroidData fixes a trivialized algebroid over a single polynomial
chart: base coordinates x_1..x_n of degree 0, frame coordinates xi_1..xi_r
of degree 1, antisymmetric structure functions c[i][j][k] and anchor
components rho[i][a], all polynomials in x alone.  build_Q assembles the
degree +1 field

    Q = 1/2 xi^j xi^i c_ij^k d/dxi_k + rho_i^a xi^i d/dx_a

and check_homological expands [Q, Q] exactly.  The derived bracket
[[Q, a], b] and [[Q, a], f] recover the bracket and anchor; an independent
structure-function oracle (jacobi_leibniz_oracle) decides the same
condition without ever touching derivations, so the two routes can be
compared on random data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graded import (
    Derivation,
    GradedContext,
    GradedPoly,
    ShapeError,
    gcommutator,
)
from .report import Report


def make_context(n: int, r: int) -> GradedContext:
    """Chart for A[1]: x1..xn of degree 0 followed by xi1..xir of degree 1."""
    variables = [(f"x{i + 1}", 0) for i in range(n)]
    variables += [(f"xi{i + 1}", 1) for i in range(r)]
    return GradedContext(variables)


def base_names(ctx_or_data):
    ctx = getattr(ctx_or_data, "ctx", ctx_or_data)
    return [n for n in ctx.names if ctx.degree_of(n) == 0]


def frame_names(ctx_or_data):
    ctx = getattr(ctx_or_data, "ctx", ctx_or_data)
    return [n for n in ctx.names if ctx.degree_of(n) == 1]


class LieAlgebroidData:
    """Structure functions of a trivialized Lie algebroid on one chart.

    c[i][j][k] and rho[i][a] are GradedPoly in the base variables only.
    Antisymmetry c_ij^k = -c_ji^k is enforced at construction; the Jacobi
    and anchor conditions are what check_homological / the oracle decide.
    """

    def __init__(self, base_dim: int, rank: int, c, rho, ctx=None):
        self.base_dim = base_dim
        self.rank = rank
        self.ctx = ctx if ctx is not None else make_context(base_dim, rank)
        xs = base_names(self.ctx)
        if len(xs) != base_dim or len(frame_names(self.ctx)) != rank:
            raise ShapeError("context does not match base_dim/rank")
        self.c = c
        self.rho = rho
        if len(c) != rank or any(len(row) != rank for row in c):
            raise ShapeError("c must be rank x rank x rank")
        for row in c:
            for cell in row:
                if len(cell) != rank:
                    raise ShapeError("c must be rank x rank x rank")
        if len(rho) != rank or any(len(row) != base_dim for row in rho):
            raise ShapeError("rho must be rank x base_dim")
        for i in range(rank):
            for j in range(rank):
                for k in range(rank):
                    p = c[i][j][k]
                    if not p.uses_only(xs):
                        raise ShapeError("c entries must depend on x only")
                    if (p + c[j][i][k]):
                        raise ShapeError(f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")
        for i in range(rank):
            for a in range(base_dim):
                if not rho[i][a].uses_only(xs):
                    raise ShapeError("rho entries must depend on x only")

    @classmethod
    def from_constants(cls, base_dim, rank, c_entries=None, rho_entries=None, ctx=None):
        """Build from sparse {(i,j,k): value} and {(i,a): value} tables.

        Only i<j bracket entries need to be given; antisymmetry is filled in.
        Values may be rationals or GradedPoly; polynomials from an equally
        named chart are transported into this algebroid's context.
        """
        if ctx is None:
            ctx = make_context(base_dim, rank)

        def lift(v):
            if isinstance(v, GradedPoly):
                if v.ctx is ctx:
                    return v
                from .graded import transport_poly

                return transport_poly(v, ctx)
            return ctx.const(v)

        c = [[[ctx.zero() for _ in range(rank)] for _ in range(rank)] for _ in range(rank)]
        for (i, j, k), v in (c_entries or {}).items():
            p = lift(v)
            c[i][j][k] = c[i][j][k] + p
            c[j][i][k] = c[j][i][k] - p
        rho = [[ctx.zero() for _ in range(base_dim)] for _ in range(rank)]
        for (i, a), v in (rho_entries or {}).items():
            rho[i][a] = rho[i][a] + lift(v)
        return cls(base_dim, rank, c, rho, ctx)

    def x(self, a: int) -> GradedPoly:
        return self.ctx.var(f"x{a + 1}")

    def xi(self, i: int) -> GradedPoly:
        return self.ctx.var(f"xi{i + 1}")


@dataclass(frozen=True)
class Section:
    """Element of Gamma(A): r base-polynomial coefficients over the frame."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    @property
    def rank(self):
        return len(self.coefficients)

    def __add__(self, other):
        return Section(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        return Section(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def scale(self, value):
        return Section(tuple(a * value for a in self.coefficients))

    def is_zero(self):
        return all(not a for a in self.coefficients)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coefficients) + ")"


def frame_section(A: LieAlgebroidData, i: int) -> Section:
    coeffs = [A.ctx.zero()] * A.rank
    coeffs[i] = A.ctx.one()
    return Section(tuple(coeffs))


@dataclass(frozen=True)
class CDOData:
    """Covariant differential operator on the frame: Y(e_i) = sum_j M[i][j] e_j
    plus a symbol vector field sum_a symbol[a] d/dx_a."""

    matrix: tuple
    symbol: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))
        object.__setattr__(self, "symbol", tuple(self.symbol))

    @property
    def rank(self):
        return len(self.matrix)

    def apply_to_section(self, A: LieAlgebroidData, a: Section) -> Section:
        xs = base_names(A)
        out = []
        for m in range(A.rank):
            acc = A.ctx.zero()
            for i, x in enumerate(xs):
                acc = acc + self.symbol[i] * a.coefficients[m].partial(x)
            for al in range(A.rank):
                acc = acc + a.coefficients[al] * self.matrix[al][m]
            out.append(acc)
        return Section(tuple(out))

    def symbol_applied(self, A: LieAlgebroidData, f: GradedPoly) -> GradedPoly:
        xs = base_names(A)
        acc = A.ctx.zero()
        for i, x in enumerate(xs):
            acc = acc + self.symbol[i] * f.partial(x)
        return acc


def build_Q(A: LieAlgebroidData) -> Derivation:
    """Homological-candidate field of the structure data, degree +1."""
    ctx = A.ctx
    half = Fraction(1, 2)
    comps = {}
    for k in range(A.rank):
        acc = ctx.zero()
        for i in range(A.rank):
            for j in range(A.rank):
                ck = A.c[i][j][k]
                if ck:
                    acc = acc + (A.xi(j) * A.xi(i) * ck) * half
        if acc:
            comps[f"xi{k + 1}"] = acc
    for a in range(A.base_dim):
        acc = ctx.zero()
        for i in range(A.rank):
            ra = A.rho[i][a]
            if ra:
                acc = acc + ra * A.xi(i)
        if acc:
            comps[f"x{a + 1}"] = acc
    return Derivation(ctx, comps)


def check_homological(Q: Derivation) -> Report:
    """Expand [Q, Q] and report the offending coefficients if nonzero."""
    rep = Report("homological vector field")
    deg = Q.degree()
    if deg not in (None, 1):
        raise ShapeError(f"Q must be homogeneous of degree +1, got {deg}")
    square = gcommutator(Q, Q)
    if square.is_zero():
        rep.add("Q_squares_to_zero", "[Q, Q] = 0", True, residual=0.0)
        return rep
    bits = []
    for name, poly in sorted(square.components.items()):
        key = sorted(poly.terms)[0]
        mono = "*".join(
            f"{poly.ctx.names[i]}^{e}" if e > 1 else poly.ctx.names[i]
            for i, e in enumerate(key)
            if e
        )
        bits.append(f"[Q,Q]({name}) has coefficient {poly.terms[key]} on {mono or '1'}")
    rep.add("Q_squares_to_zero", "[Q, Q] = 0", False, details="; ".join(bits))
    return rep


def jacobi_leibniz_oracle(A: LieAlgebroidData) -> Report:
    """Structure-function Jacobi/anchor check, independent of derivations.

    Uses only polynomial products and partials of the c and rho entries:
      anchor:  sum_k c_ij^k rho_k^a = rho_i . d(rho_j^a) - rho_j . d(rho_i^a)
      jacobi:  cyclic sum of (c_jk^m c_im^l + rho_i(c_jk^l)) vanishes
    """
    ctx = A.ctx
    xs = base_names(A)

    def rho_apply(i, f):
        acc = ctx.zero()
        for a, x in enumerate(xs):
            acc = acc + A.rho[i][a] * f.partial(x)
        return acc

    rep = Report("structure-function oracle")
    ok_anchor = True
    bad = []
    for i in range(A.rank):
        for j in range(i + 1, A.rank):
            for a in range(A.base_dim):
                lhs = ctx.zero()
                for k in range(A.rank):
                    lhs = lhs + A.c[i][j][k] * A.rho[k][a]
                rhs = rho_apply(i, A.rho[j][a]) - rho_apply(j, A.rho[i][a])
                if lhs - rhs:
                    ok_anchor = False
                    bad.append(f"(i={i},j={j},a={a})")
    rep.add(
        "anchor_compatibility",
        "rho([e_i, e_j]) = [rho(e_i), rho(e_j)]",
        ok_anchor,
        details=None if ok_anchor else "violated at " + ", ".join(bad),
    )
    ok_jacobi = True
    bad = []
    for i in range(A.rank):
        for j in range(i + 1, A.rank):
            for k in range(j + 1, A.rank):
                for l in range(A.rank):
                    acc = ctx.zero()
                    for (p, q, s) in ((i, j, k), (j, k, i), (k, i, j)):
                        for m in range(A.rank):
                            acc = acc + A.c[q][s][m] * A.c[p][m][l]
                        acc = acc + rho_apply(p, A.c[q][s][l])
                    if acc:
                        ok_jacobi = False
                        bad.append(f"(i={i},j={j},k={k},l={l})")
    rep.add(
        "jacobi_with_leibniz",
        "cyclic [e_i,[e_j,e_k]] = 0 with anchor corrections",
        ok_jacobi,
        details=None if ok_jacobi else "violated at " + ", ".join(bad),
    )
    return rep


# -- identifications of Lemma-type degree -1 / degree 0 fields -------------


def section_to_vf(A: LieAlgebroidData, a: Section) -> Derivation:
    """Gamma(A) as degree -1 fields: a = (a^i) maps to a^i d/dxi_i."""
    if a.rank != A.rank:
        raise ShapeError("section rank mismatch")
    comps = {}
    for i, coeff in enumerate(a.coefficients):
        if coeff:
            if not coeff.uses_only(base_names(A)):
                raise ShapeError("section coefficients must depend on x only")
            comps[f"xi{i + 1}"] = coeff
    return Derivation(A.ctx, comps)


def vf_to_section(A: LieAlgebroidData, D: Derivation) -> Section:
    xs = base_names(A)
    for name, poly in D.components.items():
        if A.ctx.degree_of(name) != 1 or not poly.uses_only(xs):
            raise ShapeError("derivation is not of section shape f_a d/dxi_a")
    return Section(tuple(D.component(f"xi{i + 1}") for i in range(A.rank)))


def split_degree0_vf(A: LieAlgebroidData, D: Derivation):
    """Decompose a degree-0 field as g_i d/dx_i + f_ab xi^a d/dxi_b.

    Returns (base, fiber) where base[i] = g_i and fiber[a][b] = f_ab.
    Raises ShapeError if D is not of this coordinate shape.
    """
    xs = base_names(A)
    fr = frame_names(A)
    base = []
    for x in xs:
        g = D.component(x)
        if not g.uses_only(xs):
            raise ShapeError(f"component on {x} must depend on x only")
        base.append(g)
    fiber = [[A.ctx.zero() for _ in range(A.rank)] for _ in range(A.rank)]
    for b, xib in enumerate(fr):
        comp = D.component(xib)
        recon = A.ctx.zero()
        for a, xia in enumerate(fr):
            f = comp.coefficient_of_var(xia)
            if not f.uses_only(xs):
                raise ShapeError("fiber coefficients must depend on x only")
            fiber[a][b] = f
            recon = recon + f * A.ctx.var(xia)
        if comp - recon:
            raise ShapeError(f"component on {xib} is not linear in the frame")
    return base, fiber


def cdo_to_vf(A: LieAlgebroidData, Y: CDOData) -> Derivation:
    """Degree-0 field acting on functions like the dual of Y.

    Inverse of vf_to_cdo; the bridge between CDO(A) and chi_0(A[1]).
    """
    comps = {}
    for i, x in enumerate(base_names(A)):
        if Y.symbol[i]:
            comps[x] = Y.symbol[i]
    for b in range(A.rank):
        acc = A.ctx.zero()
        for a in range(A.rank):
            m = Y.matrix[a][b]
            if m:
                acc = acc - m * A.xi(a)
        if acc:
            comps[f"xi{b + 1}"] = acc
    return Derivation(A.ctx, comps)


def vf_to_cdo(A: LieAlgebroidData, D: Derivation) -> CDOData:
    """CDO on A with Y(a) = [D, a] under the section identification."""
    base, fiber = split_degree0_vf(A, D)
    matrix = [[-fiber[a][b] for b in range(A.rank)] for a in range(A.rank)]
    return CDOData(tuple(tuple(row) for row in matrix), tuple(base))


def dual_cdo(Y: CDOData) -> CDOData:
    """Dual operator on the dual frame: matrix -M^T, same symbol."""
    r = Y.rank
    matrix = [[-Y.matrix[j][i] for j in range(r)] for i in range(r)]
    return CDOData(tuple(tuple(row) for row in matrix), Y.symbol)


# -- derived bracket and anchor --------------------------------------------


def derived_bracket(A: LieAlgebroidData, Q: Derivation, a: Section, b: Section) -> Section:
    """[a, b]_A = [[Q, a], b] re-expressed as a section."""
    inner = gcommutator(Q, section_to_vf(A, a))
    outer = gcommutator(inner, section_to_vf(A, b))
    return vf_to_section(A, outer)

def derived_anchor(A: LieAlgebroidData, Q: Derivation, a: Section, f: GradedPoly) -> GradedPoly:
    """rho(a)(f) = [[Q, a], f], the commutator with f acting by multiplication."""
    if not f.uses_only(base_names(A)):
        raise ShapeError("anchor acts on base functions")
    inner = gcommutator(Q, section_to_vf(A, a))
    return inner.apply(f)


def sc_bracket(A: LieAlgebroidData, a: Section, b: Section) -> Section:
    """Classical-route bracket from structure functions and Leibniz terms.

    [a, b]^k = a^i b^j c_ij^k + rho(a)(b^k) - rho(b)(a^k).  Shares no code
    with the derived-bracket route.
    """
    ctx = A.ctx
    xs = base_names(A)

    def rho_of(s, f):
        acc = ctx.zero()
        for i in range(A.rank):
            for al, x in enumerate(xs):
                acc = acc + s.coefficients[i] * A.rho[i][al] * f.partial(x)
        return acc

    out = []
    for k in range(A.rank):
        acc = ctx.zero()
        for i in range(A.rank):
            for j in range(A.rank):
                ck = A.c[i][j][k]
                if ck:
                    acc = acc + a.coefficients[i] * b.coefficients[j] * ck
        acc = acc + rho_of(a, b.coefficients[k]) - rho_of(b, a.coefficients[k])
        out.append(acc)
    return Section(tuple(out))


def sc_anchor(A: LieAlgebroidData, a: Section, f: GradedPoly) -> GradedPoly:
    ctx = A.ctx
    acc = ctx.zero()
    for i in range(A.rank):
        for al, x in enumerate(base_names(A)):
            acc = acc + a.coefficients[i] * A.rho[i][al] * f.partial(x)
    return acc


# -- Poisson fixture generator ----------------------------------------------


def poisson_to_algebroid(pi) -> LieAlgebroidData:
    """Cotangent algebroid of a bivector on the frame {dx_i}.

    anchor rho(dx_i) = pi_ij d/dx_j and c_ij^k = d(pi_ij)/dx_k, so that the
    homological check succeeds exactly when pi satisfies the Jacobi identity.
    pi is an n x n antisymmetric array of degree-0 polynomials in a chart
    with n base variables (rank will equal n).
    """
    n = len(pi)
    ctx = make_context(n, n)
    zero = ctx.zero()

    def lift(p):
        if isinstance(p, GradedPoly):
            from .graded import transport_poly

            return transport_poly(p, ctx) if p.ctx is not ctx else p
        return ctx.const(p)

    P = [[lift(pi[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if P[i][j] + P[j][i]:
                raise ShapeError("pi must be antisymmetric")
    c = [[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)]
    rho = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rho[i][j] = P[i][j]
            for k in range(n):
                c[i][j][k] = P[i][j].partial(f"x{k + 1}")
    return LieAlgebroidData(n, n, c, rho, ctx)


def schouten_jacobiator(pi, ctx: GradedContext):
    """Components of the Schouten bracket obstruction [pi, pi].

    Returns the list of (i, j, k, polynomial) with i<j<k where the cyclic
    sum  pi_il d_l pi_jk + pi_jl d_l pi_ki + pi_kl d_l pi_ij  is nonzero.
    Direct multivector expansion; no derivations, no algebroids.
    """
    n = len(pi)
    xs = [f"x{i + 1}" for i in range(n)]
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc = ctx.zero()
                for (p, q, s) in ((i, j, k), (j, k, i), (k, i, j)):
                    for l in range(n):
                        acc = acc + pi[p][l] * pi[q][s].partial(xs[l])
                if acc:
                    bad.append((i, j, k, acc))
    return bad


def koszul_bracket(pi, ctx: GradedContext, alpha, beta):
    """Koszul bracket of one-forms for a bivector, by direct expansion.

    [alpha, beta] = L_{pi#alpha} beta - L_{pi#beta} alpha - d(pi(alpha, beta)),
    with all three terms expanded in coordinates.  Returns the coefficient
    list of the resulting one-form.
    """
    n = len(pi)
    xs = [f"x{i + 1}" for i in range(n)]

    def sharp(form):
        return [
            sum((form[i] * pi[i][j] for i in range(n)), ctx.zero()) for j in range(n)
        ]

    def lie_one_form(X, form):
        out = []
        for k in range(n):
            acc = ctx.zero()
            for j in range(n):
                acc = acc + X[j] * form[k].partial(xs[j])
                acc = acc + form[j] * X[j].partial(xs[k])
            out.append(acc)
        return out

    pab = ctx.zero()
    for i in range(n):
        for j in range(n):
            pab = pab + alpha[i] * beta[j] * pi[i][j]
    t1 = lie_one_form(sharp(alpha), beta)
    t2 = lie_one_form(sharp(beta), alpha)
    return [t1[k] - t2[k] - pab.partial(xs[k]) for k in range(n)]
