"""Exact graded-commutative polynomials and graded derivations.

Variables live in a :class:`GradedContext`, an ordered list of named
coordinates of degree 0, 1 or 2.  Degree-1 variables anticommute among
themselves and square to zero; degree-0 and degree-2 variables are central.
Coefficients are ``fractions.Fraction``, so every identity in this package
is decided by exact coefficient comparison, never by numerics.

A monomial is stored as a tuple of exponents aligned with the context's
variable order (degree-1 exponents are 0 or 1).  Reordering degree-1
variables during multiplication is accounted for by a Koszul sign absorbed
into the coefficient, which makes the stored form canonical and equality
exact.
"""

from __future__ import annotations

from fractions import Fraction


class ContextMismatch(ValueError):
    """Operands belong to different coordinate contexts."""


class NotHomogeneous(ValueError):
    """Operation requires a homogeneous polynomial or derivation."""


class ShapeError(ValueError):
    """Object does not have the required coordinate shape."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class GradedContext:
    """Ordered coordinate chart with variables of degree 0, 1 or 2."""

    def __init__(self, variables):
        names = []
        degrees = []
        for name, degree in variables:
            if degree not in (0, 1, 2):
                raise ValueError(f"variable {name}: degree must be 0, 1 or 2")
            if name in names:
                raise ValueError(f"duplicate variable name {name!r}")
            names.append(name)
            degrees.append(degree)
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.odd = tuple(i for i, d in enumerate(self.degrees) if d == 1)
        self._zero_key = (0,) * len(self.names)

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        inner = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"GradedContext({inner})"

    def degree_of(self, name: str) -> int:
        return self.degrees[self.index[name]]

    def monomial_degree(self, key) -> int:
        return sum(e * d for e, d in zip(key, self.degrees))

    def key(self, exps: dict) -> tuple:
        """Exponent tuple from a {name: exponent} mapping."""
        out = [0] * len(self.names)
        for name, e in exps.items():
            i = self.index[name]
            if e < 0:
                raise ValueError("negative exponent")
            if self.degrees[i] == 1 and e > 1:
                return None  # odd square is zero
            out[i] = e
        return tuple(out)

    def zero(self) -> "GradedPoly":
        return GradedPoly(self, {})

    def one(self) -> "GradedPoly":
        return self.const(1)

    def const(self, value) -> "GradedPoly":
        c = _as_fraction(value)
        if c == 0:
            return self.zero()
        return GradedPoly(self, {self._zero_key: c})

    def var(self, name: str) -> "GradedPoly":
        key = [0] * len(self.names)
        key[self.index[name]] = 1
        return GradedPoly(self, {tuple(key): Fraction(1)})

    def poly(self, terms: dict) -> "GradedPoly":
        """Build a polynomial from {exps-dict: coefficient} pairs."""
        acc = {}
        for exps, coef in terms.items():
            key = self.key(dict(exps)) if not isinstance(exps, tuple) else exps
            if key is None:
                continue
            c = _as_fraction(coef)
            if c:
                acc[key] = acc.get(key, Fraction(0)) + c
        return GradedPoly(self, {k: v for k, v in acc.items() if v})

    def derivation(self, components: dict) -> "Derivation":
        return Derivation(self, components)

    def _mul_keys(self, k1, k2):
        """Product of canonical monomials: (key, sign) or None if it vanishes."""
        sign = 1
        odd2 = [p for p in self.odd if k2[p]]
        if odd2:
            odd1 = [p for p in self.odd if k1[p]]
            for p in odd2:
                if k1[p]:
                    return None
                # move the new odd factor left past the odd factors of k1
                # that sit after position p
                crossings = sum(1 for q in odd1 if q > p)
                if crossings % 2:
                    sign = -sign
        return tuple(a + b for a, b in zip(k1, k2)), sign


class GradedPoly:
    """Polynomial over a GradedContext with exact rational coefficients.

    Immutable by convention: no method mutates ``terms`` after construction.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: GradedContext, terms: dict):
        self.ctx = ctx
        self.terms = {k: v for k, v in terms.items() if v}

    # -- basic structure -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ctx), frozenset(self.terms.items())))

    def _check(self, other):
        if self.ctx is not other.ctx:
            raise ContextMismatch("polynomials from different contexts")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GradedPoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.ctx, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = _as_fraction(other)
            if c == 0:
                return self.ctx.zero()
            return GradedPoly(self.ctx, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                hit = self.ctx._mul_keys(k1, k2)
                if hit is None:
                    continue
                key, sign = hit
                s = out.get(key, Fraction(0)) + sign * c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return GradedPoly(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            return self * other
        return NotImplemented

    # -- grading ----------------------------------------------------------

    def homogeneous_degree(self):
        """Degree if homogeneous, None for the zero polynomial.

        Raises NotHomogeneous when terms of different degrees are mixed.
        """
        degs = {self.ctx.monomial_degree(k) for k in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise NotHomogeneous(f"mixed degrees {sorted(degs)} in {self}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        try:
            self.homogeneous_degree()
        except NotHomogeneous:
            return False
        return True

    def degree_parts(self) -> dict:
        parts = {}
        for k, v in self.terms.items():
            d = self.ctx.monomial_degree(k)
            parts.setdefault(d, {})[k] = v
        return {d: GradedPoly(self.ctx, t) for d, t in parts.items()}

    # -- calculus ----------------------------------------------------------

    def partial(self, name: str) -> "GradedPoly":
        """Left partial derivative with respect to one variable."""
        i = self.ctx.index[name]
        odd = self.ctx.degrees[i] == 1
        out = {}
        for k, c in self.terms.items():
            e = k[i]
            if e == 0:
                continue
            new = list(k)
            if odd:
                new[i] = 0
                # sign from moving d/dxi past the odd factors before position i
                before = sum(1 for q in self.ctx.odd if q < i and k[q])
                coef = -c if before % 2 else c
            else:
                new[i] = e - 1
                coef = c * e
            key = tuple(new)
            s = out.get(key, Fraction(0)) + coef
            if s:
                out[key] = s
            else:
                del out[key]
        return GradedPoly(self.ctx, out)

    def uses_only(self, names) -> bool:
        allowed = {self.ctx.index[n] for n in names}
        for k in self.terms:
            for i, e in enumerate(k):
                if e and i not in allowed:
                    return False
        return True

    def coefficient_of_var(self, name: str) -> "GradedPoly":
        """For p = sum_a f_a * x_a, return f_name (terms linear in name)."""
        i = self.ctx.index[name]
        out = {}
        for k, c in self.terms.items():
            if k[i] != 1:
                continue
            new = list(k)
            new[i] = 0
            out[tuple(new)] = c
        return GradedPoly(self.ctx, out)

    def evaluate(self, values: dict):
        """Numeric evaluation; every variable occurring must be assigned."""
        total = 0
        for k, c in self.terms.items():
            term = float(c)
            for i, e in enumerate(k):
                if not e:
                    continue
                name = self.ctx.names[i]
                if name not in values:
                    raise ValueError(f"no value for variable {name!r}")
                term *= float(values[name]) ** e
            total += term
        return total

    # -- display -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            c = self.terms[k]
            factors = []
            for i, e in enumerate(k):
                if not e:
                    continue
                n = self.ctx.names[i]
                factors.append(n if e == 1 else f"{n}^{e}")
            mono = "*".join(factors)
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        out = " + ".join(bits)
        return out.replace("+ -", "- ")

    __repr__ = __str__


class Derivation:
    """Graded derivation D = sum_y f_y d/dy of the polynomial algebra.

    ``components`` maps a variable name to the coefficient polynomial f_y.
    The degree of d/dy is minus the degree of y, so a homogeneous D of
    degree d has deg(f_y) = d + deg(y) for every stored component.
    """

    __slots__ = ("ctx", "components")

    def __init__(self, ctx: GradedContext, components: dict):
        self.ctx = ctx
        comps = {}
        for name, poly in components.items():
            if name not in ctx.index:
                raise ValueError(f"unknown variable {name!r}")
            if poly.ctx is not ctx:
                raise ContextMismatch("component from a different context")
            if poly:
                comps[name] = poly
        self.components = comps

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.ctx is other.ctx and self.components == other.components

    def __hash__(self):
        return hash((id(self.ctx), frozenset(self.components.items())))

    def degree(self):
        """Common degree of all components; None for the zero derivation."""
        degs = set()
        for name, poly in self.components.items():
            d = poly.homogeneous_degree()
            degs.add(d - self.ctx.degree_of(name))
        if not degs:
            return None
        if len(degs) > 1:
            raise NotHomogeneous(f"derivation has mixed degrees {sorted(degs)}")
        return degs.pop()

    def component(self, name: str) -> GradedPoly:
        return self.components.get(name, self.ctx.zero())

    def apply(self, p: GradedPoly) -> GradedPoly:
        if p.ctx is not self.ctx:
            raise ContextMismatch("derivation applied across contexts")
        out = self.ctx.zero()
        for name, f in self.components.items():
            dp = p.partial(name)
            if dp:
                out = out + f * dp
        return out

    def __call__(self, p: GradedPoly) -> GradedPoly:
        return self.apply(p)

    def __add__(self, other):
        if other.ctx is not self.ctx:
            raise ContextMismatch("derivations from different contexts")
        out = dict(self.components)
        for name, poly in other.components.items():
            s = out.get(name, self.ctx.zero()) + poly
            if s:
                out[name] = s
            else:
                out.pop(name, None)
        return Derivation(self.ctx, out)

    def __neg__(self):
        return Derivation(self.ctx, {n: -p for n, p in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def lmul(self, poly: GradedPoly) -> "Derivation":
        """Left module action: (f*D)(p) = f * D(p)."""
        if poly.ctx is not self.ctx:
            raise ContextMismatch("coefficient from a different context")
        return Derivation(self.ctx, {n: poly * p for n, p in self.components.items()})

    def scale(self, value) -> "Derivation":
        c = _as_fraction(value)
        return Derivation(self.ctx, {n: p * c for n, p in self.components.items()})

    def __str__(self):
        if not self.components:
            return "0"
        bits = [f"({p})*d/d{n}" for n, p in sorted(self.components.items())]
        return " + ".join(bits)

    __repr__ = __str__


def gcommutator(d1: Derivation, d2: Derivation) -> Derivation:
    """Graded commutator [D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1.

    Computed on coordinate functions and extended as a derivation, which is
    exact for polynomial coefficients.  Both arguments must be homogeneous.
    """
    if d1.ctx is not d2.ctx:
        raise ContextMismatch("derivations from different contexts")
    ctx = d1.ctx
    if d1.is_zero() or d2.is_zero():
        return Derivation(ctx, {})
    a, b = d1.degree(), d2.degree()
    sign = -1 if (a * b) % 2 else 1
    comps = {}
    for name in ctx.names:
        first = d1.apply(d2.component(name)) if name in d2.components else ctx.zero()
        second = d2.apply(d1.component(name)) if name in d1.components else ctx.zero()
        val = first - second * sign
        if val:
            comps[name] = val
    return Derivation(ctx, comps)


def transport_poly(p: GradedPoly, target: GradedContext) -> GradedPoly:
    """Re-express p in a larger context containing its variables by name.

    The relative order of shared variables must agree between the two
    contexts, so no Koszul resigning is needed.
    """
    positions = []
    for name in p.ctx.names:
        if name not in target.index:
            positions.append(None)  # fine unless the variable is used
            continue
        if target.degree_of(name) != p.ctx.degree_of(name):
            raise ContextMismatch(f"variable {name!r} changes degree")
        positions.append(target.index[name])
    present = [q for q in positions if q is not None]
    if present != sorted(present):
        raise ContextMismatch("variable order differs between contexts")
    out = {}
    for k, c in p.terms.items():
        key = [0] * len(target)
        for i, e in enumerate(k):
            if e:
                if positions[i] is None:
                    name = p.ctx.names[i]
                    raise ContextMismatch(f"target context lacks variable {name!r}")
                key[positions[i]] = e
        out[tuple(key)] = c
    return GradedPoly(target, out)


def transport_derivation(d: Derivation, target: GradedContext) -> Derivation:
    return Derivation(
        target, {n: transport_poly(p, target) for n, p in d.components.items()}
    )
