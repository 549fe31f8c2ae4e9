"""Desk-scale matrix Lie groups, crossed modules of groups, and the two
group structures integrating a two-term DGLA: the 2-group H x G with the
semidirect multiplication and the LA-group h x G.

Everything here is floating point.  Algebraic identities are expected to
hold to about 1e-9 on elements generated by exponentials of bounded
algebra vectors; derivative checks use central differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm, logm

DET_FLOOR = 1e-10


@dataclass(frozen=True)
class MatrixGroupElement:
    matrix: np.ndarray
    group_tag: str

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        if abs(np.linalg.det(m)) <= DET_FLOOR:
            raise ValueError(f"singular matrix for group {self.group_tag}")

    def __matmul__(self, other: "MatrixGroupElement") -> "MatrixGroupElement":
        if self.group_tag != other.group_tag:
            raise ValueError("elements from different groups")
        return MatrixGroupElement(self.matrix @ other.matrix, self.group_tag)

    def inv(self) -> "MatrixGroupElement":
        return MatrixGroupElement(np.linalg.inv(self.matrix), self.group_tag)


class MatrixGroup:
    """A catalog matrix group with a fixed algebra basis.

    ``basis`` is a list of matrices spanning the Lie algebra; coordinates
    of algebra elements are taken with respect to it.  ``nilpotent`` marks
    groups whose exponential is an exact finite sum.
    """

    def __init__(self, tag, size, basis, nilpotent, coords_fn):
        self.tag = tag
        self.size = size
        self.basis = [np.asarray(b, dtype=float) for b in basis]
        self.dim = len(self.basis)
        self.nilpotent = nilpotent
        self._coords = coords_fn

    def identity(self) -> MatrixGroupElement:
        return MatrixGroupElement(np.eye(self.size), self.tag)

    def alg(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.dim,):
            raise ValueError(f"{self.tag}: expected {self.dim} algebra coordinates")
        out = np.zeros((self.size, self.size))
        for c, b in zip(coords, self.basis):
            out += c * b
        return out

    def coords(self, mat) -> np.ndarray:
        return np.asarray(self._coords(np.asarray(mat, dtype=float)), dtype=float)

    def exp(self, coords) -> MatrixGroupElement:
        X = self.alg(coords)
        if self.nilpotent:
            out = np.eye(self.size)
            term = np.eye(self.size)
            k = 1
            while True:
                term = term @ X / k
                if not term.any():
                    break
                out = out + term
                k += 1
                if k > self.size + 1:
                    break
            return MatrixGroupElement(out, self.tag)
        return MatrixGroupElement(expm(X), self.tag)

    def log(self, g: MatrixGroupElement) -> np.ndarray:
        if self.nilpotent:
            N = g.matrix - np.eye(self.size)
            out = np.zeros_like(N)
            term = np.eye(self.size)
            for k in range(1, self.size + 1):
                term = term @ N
                out = out + ((-1) ** (k + 1)) * term / k
            return self.coords(out)
        L = logm(g.matrix)
        return self.coords(np.real(L))

    def sample(self, rng, scale=0.4) -> MatrixGroupElement:
        coords = np.array([rng.uniform(-scale, scale) for _ in range(self.dim)])
        return self.exp(coords)


def _translation_coords(n):
    def coords(mat):
        return mat[:n, n]

    return coords


def translation_group(n: int, tag=None) -> MatrixGroup:
    """R^n as (n+1)x(n+1) translation matrices; nilpotent and exact."""
    tag = tag or f"translation{n}"
    basis = []
    for i in range(n):
        b = np.zeros((n + 1, n + 1))
        b[i, n] = 1.0
        basis.append(b)
    return MatrixGroup(tag, n + 1, basis, True, _translation_coords(n))


def heisenberg_group() -> MatrixGroup:
    """Upper unitriangular 3x3 group; basis (p, q, z) with [p, q] = z."""
    p = np.zeros((3, 3)); p[0, 1] = 1.0
    q = np.zeros((3, 3)); q[1, 2] = 1.0
    z = np.zeros((3, 3)); z[0, 2] = 1.0

    def coords(mat):
        return np.array([mat[0, 1], mat[1, 2], mat[0, 2]])

    return MatrixGroup("heis3", 3, [p, q, z], True, coords)


def sl2_group() -> MatrixGroup:
    """SL(2) near the identity; basis (h, e, f)."""
    h = np.array([[1.0, 0.0], [0.0, -1.0]])
    e = np.array([[0.0, 1.0], [0.0, 0.0]])
    f = np.array([[0.0, 0.0], [1.0, 0.0]])

    def coords(mat):
        return np.array([mat[0, 0], mat[0, 1], mat[1, 0]])

    return MatrixGroup("sl2", 2, [h, e, f], False, coords)


GROUPS = {}
for _g in (translation_group(1, "translation1"), translation_group(2, "translation2"),
           heisenberg_group(), sl2_group()):
    GROUPS[_g.tag] = _g


def exp_to_group(coords, tag: str) -> MatrixGroupElement:
    if tag not in GROUPS:
        raise KeyError(f"unknown group tag {tag!r}")
    return GROUPS[tag].exp(coords)


# -- crossed modules of groups -----------------------------------------------


@dataclass(frozen=True)
class GroupCrossedModule:
    """(G, H, t, phi): morphism t: H -> G and left G-action phi on H.

    ``conjugation`` entries have G = H, t the identity and phi(g)h = ghg^-1;
    ``trivial`` entries have abelian data with phi(g)h = h.
    """

    name: str
    G: MatrixGroup
    H: MatrixGroup
    kind: str  # "conjugation" or "trivial"

    def t(self, h: MatrixGroupElement) -> MatrixGroupElement:
        return MatrixGroupElement(h.matrix, self.G.tag)

    def phi(self, g: MatrixGroupElement, h: MatrixGroupElement) -> MatrixGroupElement:
        if self.kind == "trivial":
            return h
        return MatrixGroupElement(
            g.matrix @ h.matrix @ np.linalg.inv(g.matrix), self.H.tag
        )

    def act_on_h(self, g: MatrixGroupElement, w) -> np.ndarray:
        """Integrated G-action on the algebra h, in coordinates."""
        if self.kind == "trivial":
            return np.asarray(w, dtype=float)
        W = self.H.alg(w)
        return self.H.coords(g.matrix @ W @ np.linalg.inv(g.matrix))


CROSSED_MODULES = {
    "tm": GroupCrossedModule("tm", GROUPS["translation1"], GROUPS["translation1"], "trivial"),
    "abelian-r2": GroupCrossedModule(
        "abelian-r2", GROUPS["translation2"], GROUPS["translation2"], "trivial"
    ),
    "heisenberg": GroupCrossedModule("heisenberg", GROUPS["heis3"], GROUPS["heis3"], "conjugation"),
    "sl2": GroupCrossedModule("sl2", GROUPS["sl2"], GROUPS["sl2"], "conjugation"),
}


# -- 2-group and LA-group operations -----------------------------------------


@dataclass(frozen=True)
class TwoGroupElement:
    h: MatrixGroupElement
    g: MatrixGroupElement


def twogroup_identity(cm: GroupCrossedModule) -> TwoGroupElement:
    return TwoGroupElement(cm.H.identity(), cm.G.identity())


def twogroup_mul(cm: GroupCrossedModule, a: TwoGroupElement, b: TwoGroupElement) -> TwoGroupElement:
    """(h1, g1) (h2, g2) = (h1 phi(g1)(h2), g1 g2)."""
    return TwoGroupElement(a.h @ cm.phi(a.g, b.h), a.g @ b.g)


def twogroup_inv(cm: GroupCrossedModule, a: TwoGroupElement) -> TwoGroupElement:
    ginv = a.g.inv()
    return TwoGroupElement(cm.phi(ginv, a.h.inv()), ginv)


def twogroup_src(cm: GroupCrossedModule, a: TwoGroupElement) -> MatrixGroupElement:
    return a.g


def twogroup_tgt(cm: GroupCrossedModule, a: TwoGroupElement) -> MatrixGroupElement:
    return cm.t(a.h) @ a.g


def twogroup_compose(cm: GroupCrossedModule, a: TwoGroupElement, b: TwoGroupElement,
                     tol=1e-9) -> TwoGroupElement:
    """Vertical composition a o b, defined when src(a) = tgt(b)."""
    if np.max(np.abs(twogroup_src(cm, a).matrix - twogroup_tgt(cm, b).matrix)) > tol:
        raise ValueError("not composable: src(a) != tgt(b)")
    return TwoGroupElement(a.h @ b.h, b.g)


def twogroup_vert_unit(cm: GroupCrossedModule, g: MatrixGroupElement) -> TwoGroupElement:
    return TwoGroupElement(cm.H.identity(), g)


def la_group_mul(cm: GroupCrossedModule, p, q):
    """(w1, g1)(w2, g2) = (w1 + g1 w2, g1 g2) on h x G."""
    w1, g1 = p
    w2, g2 = q
    return (np.asarray(w1, dtype=float) + cm.act_on_h(g1, w2), g1 @ g2)


def la_group_inv(cm: GroupCrossedModule, p):
    w, g = p
    ginv = g.inv()
    return (-cm.act_on_h(ginv, w), ginv)


def validate_group_crossed_module(cm: GroupCrossedModule, samples=50, seed=0, tol=1e-9):
    """Peiffer and equivariance on exp-generated elements."""
    from .report import Report
    import random

    rng = random.Random(seed)
    rep = Report(f"group crossed module '{cm.name}'")
    worst_p = 0.0
    worst_e = 0.0
    for _ in range(samples):
        g = cm.G.sample(rng)
        h = cm.H.sample(rng)
        h2 = cm.H.sample(rng)
        lhs = cm.phi(cm.t(h), h2).matrix
        rhs = h.matrix @ h2.matrix @ np.linalg.inv(h.matrix)
        worst_p = max(worst_p, float(np.max(np.abs(lhs - rhs))))
        lhs2 = cm.t(cm.phi(g, h)).matrix
        rhs2 = g.matrix @ cm.t(h).matrix @ np.linalg.inv(g.matrix)
        worst_e = max(worst_e, float(np.max(np.abs(lhs2 - rhs2))))
    rep.add("peiffer", "phi(t(h)) h' = h h' h^-1", worst_p <= tol, residual=worst_p)
    rep.add("equivariance", "t(phi(g) h) = g t(h) g^-1", worst_e <= tol, residual=worst_e)
    return rep


def group_axioms_report(cm: GroupCrossedModule, samples=100, seed=0, tol=1e-9):
    """Associativity, unit and inverse for both integrated multiplications."""
    from .report import Report
    import random

    rng = random.Random(seed)
    rep = Report(f"group laws '{cm.name}'")

    def sample2():
        return TwoGroupElement(cm.H.sample(rng), cm.G.sample(rng))

    def samplela():
        w = np.array([rng.uniform(-0.4, 0.4) for _ in range(cm.H.dim)])
        return (w, cm.G.sample(rng))

    ident = twogroup_identity(cm)
    worst = {"assoc2": 0.0, "unit2": 0.0, "inv2": 0.0,
             "assocla": 0.0, "unitla": 0.0, "invla": 0.0,
             "st_morphism": 0.0}
    for _ in range(samples):
        a, b, c = sample2(), sample2(), sample2()
        lhs = twogroup_mul(cm, twogroup_mul(cm, a, b), c)
        rhs = twogroup_mul(cm, a, twogroup_mul(cm, b, c))
        worst["assoc2"] = max(
            worst["assoc2"],
            float(np.max(np.abs(lhs.h.matrix - rhs.h.matrix))),
            float(np.max(np.abs(lhs.g.matrix - rhs.g.matrix))),
        )
        u = twogroup_mul(cm, a, ident)
        worst["unit2"] = max(worst["unit2"], float(np.max(np.abs(u.h.matrix - a.h.matrix))))
        i = twogroup_mul(cm, a, twogroup_inv(cm, a))
        worst["inv2"] = max(
            worst["inv2"],
            float(np.max(np.abs(i.h.matrix - np.eye(cm.H.size)))),
            float(np.max(np.abs(i.g.matrix - np.eye(cm.G.size)))),
        )
        # src/tgt are group morphisms for the 2-group multiplication
        m = twogroup_mul(cm, a, b)
        worst["st_morphism"] = max(
            worst["st_morphism"],
            float(np.max(np.abs(twogroup_src(cm, m).matrix
                                - (twogroup_src(cm, a) @ twogroup_src(cm, b)).matrix))),
            float(np.max(np.abs(twogroup_tgt(cm, m).matrix
                                - (twogroup_tgt(cm, a) @ twogroup_tgt(cm, b)).matrix))),
        )
        p, q, r = samplela(), samplela(), samplela()
        lw, lg = la_group_mul(cm, la_group_mul(cm, p, q), r)
        rw, rg = la_group_mul(cm, p, la_group_mul(cm, q, r))
        worst["assocla"] = max(
            worst["assocla"],
            float(np.max(np.abs(lw - rw))),
            float(np.max(np.abs(lg.matrix - rg.matrix))),
        )
        uw, ug = la_group_mul(cm, (np.zeros(cm.H.dim), cm.G.identity()), p)
        worst["unitla"] = max(worst["unitla"], float(np.max(np.abs(uw - p[0]))))
        iw, ig = la_group_mul(cm, p, la_group_inv(cm, p))
        worst["invla"] = max(
            worst["invla"],
            float(np.max(np.abs(iw))),
            float(np.max(np.abs(ig.matrix - np.eye(cm.G.size)))),
        )
    rep.add("twogroup_assoc", "(ab)c = a(bc)", worst["assoc2"] <= tol, residual=worst["assoc2"])
    rep.add("twogroup_unit", "a e = a", worst["unit2"] <= tol, residual=worst["unit2"])
    rep.add("twogroup_inverse", "a a^-1 = e", worst["inv2"] <= tol, residual=worst["inv2"])
    rep.add("twogroup_st_morphism", "s, t are morphisms", worst["st_morphism"] <= tol,
            residual=worst["st_morphism"])
    rep.add("lagroup_assoc", "(pq)r = p(qr)", worst["assocla"] <= tol, residual=worst["assocla"])
    rep.add("lagroup_unit", "(0, e) p = p", worst["unitla"] <= tol, residual=worst["unitla"])
    rep.add("lagroup_inverse", "p p^-1 = (0, e)", worst["invla"] <= tol, residual=worst["invla"])
    return rep


def la_twogroup_compatibility(cm: GroupCrossedModule, samples=20, seed=0,
                              step=1e-4, tol=1e-6):
    """d/dt of the 2-group H-part along exp-paths matches la_group_mul."""
    from .report import Report
    import random

    rng = random.Random(seed)
    rep = Report(f"2-group vs LA-group '{cm.name}'")
    worst = 0.0
    for _ in range(samples):
        w1 = np.array([rng.uniform(-0.5, 0.5) for _ in range(cm.H.dim)])
        w2 = np.array([rng.uniform(-0.5, 0.5) for _ in range(cm.H.dim)])
        g1 = cm.G.sample(rng)
        g2 = cm.G.sample(rng)

        def hpart(t):
            a = TwoGroupElement(cm.H.exp(t * w1), g1)
            b = TwoGroupElement(cm.H.exp(t * w2), g2)
            return twogroup_mul(cm, a, b).h.matrix

        dh = (hpart(step) - hpart(-step)) / (2 * step)
        want = cm.H.alg(w1) + cm.H.alg(cm.act_on_h(g1, w2))
        worst = max(worst, float(np.max(np.abs(dh - want))))
    rep.add(
        "derivative_matches",
        "d/dt (2-group H-part) = LA-group h-part",
        worst <= tol,
        residual=worst,
    )
    return rep


def la_group_bracket_check(cm: GroupCrossedModule, table, samples=20, seed=0,
                           step=1e-3, tol=1e-5):
    """Second derivative of LA-group commutators against a bracket table.

    ``table`` is the semidirect structure-constant table on h (+) g with
    basis (w_1..w_dh, v_1..v_dg), entries convertible to float.
    """
    from .report import Report
    import random

    rng = random.Random(seed)
    rep = Report(f"LA-group bracket '{cm.name}'")
    dh, dg = cm.H.dim, cm.G.dim
    n = dh + dg
    worst = 0.0

    def elem(t, w, v):
        return (t * np.asarray(w), cm.G.exp(t * np.asarray(v)))

    def coords(p):
        w, g = p
        return np.concatenate([w, cm.G.log(g)])

    for _ in range(samples):
        wa = np.array([rng.uniform(-0.6, 0.6) for _ in range(dh)])
        va = np.array([rng.uniform(-0.6, 0.6) for _ in range(dg)])
        wb = np.array([rng.uniform(-0.6, 0.6) for _ in range(dh)])
        vb = np.array([rng.uniform(-0.6, 0.6) for _ in range(dg)])

        def commutator(t, s):
            p = elem(t, wa, va)
            q = elem(s, wb, vb)
            pq = la_group_mul(cm, p, q)
            pqp = la_group_mul(cm, pq, la_group_inv(cm, p))
            return la_group_mul(cm, pqp, la_group_inv(cm, q))

        # mixed second derivative of the commutator coordinates
        dd = (
            coords(commutator(step, step))
            - coords(commutator(step, -step))
            - coords(commutator(-step, step))
            + coords(commutator(-step, -step))
        ) / (4 * step * step)
        a_coords = np.concatenate([wa, va])
        b_coords = np.concatenate([wb, vb])
        want = np.zeros(n)
        for i in range(n):
            for j in range(n):
                cij = a_coords[i] * b_coords[j]
                if not cij:
                    continue
                for k in range(n):
                    want[k] += cij * float(table[i][j][k])
        worst = max(worst, float(np.max(np.abs(dd - want))))
    rep.add(
        "bracket_matches",
        "d2/dtds of group commutator = semidirect bracket",
        worst <= tol,
        residual=worst,
    )
    return rep
