"""The codiagonal 2-groupoid of an integrated action.

Objects are base points, 1-arrows are pairs (g, gamma), 2-arrows are
triples (h, g, gamma).  Source and target of a 2-arrow are

    src(h, g, gamma) = (g, gamma)
    tgt(h, g, gamma) = (t(h) g, Phi(phi(g^-1)(h^-1), 1, gamma))

so the 2-arrows form the action groupoid of an H-action on the 1-arrows.
The vertical product composes the H-parts and keeps the 1-arrow at the
source end; the published formula (h h', g', gamma gamma') leaves the
pairing of arguments ambiguous, so the convention (which argument comes
first) is selected by an automated calibration against the groupoid
axioms and recorded in every report.

The horizontal product is

    (h1, g1, gamma1) . (h2, g2, gamma2)
        = (h1 phi(g1)(h2), g1 g2, Phi(1, g2^-1, gamma1) o gamma2)

over base-composable arguments, with the 1-arrow version obtained by
dropping the H slot.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .groups import MatrixGroupElement
from .integrate import IntegrationSetup
from .report import Report


@dataclass(frozen=True)
class OneArrow:
    g: MatrixGroupElement
    gamma: object


@dataclass(frozen=True)
class TwoArrow:
    h: MatrixGroupElement
    g: MatrixGroupElement
    gamma: object


# composition order conventions for the vertical product:
#   "second_first": a . b defined when src(a) = tgt(b); b happens first
#   "first_first":  a . b defined when tgt(a) = src(b); a happens first
VERT_CONVENTIONS = ("second_first", "first_first")


class TwoGroupoid:
    """Operations of the codiagonal 2-groupoid over one catalog setup."""

    def __init__(self, setup: IntegrationSetup, vert_convention=None, tol=1e-8):
        self.st = setup
        self.cm = setup.cm
        self.tol = tol
        self.calibration = {}
        if vert_convention is None:
            vert_convention = self.calibrate()
        self.vert_convention = vert_convention

    # -- sources and targets -------------------------------------------------

    def src(self, a: TwoArrow) -> OneArrow:
        return OneArrow(a.g, a.gamma)

    def tgt(self, a: TwoArrow) -> OneArrow:
        cm, st = self.cm, self.st
        ginv = a.g.inv()
        hmoved = cm.phi(ginv, a.h.inv())
        return OneArrow(
            cm.t(a.h) @ a.g,
            st.phi(hmoved, cm.G.identity(), a.gamma),
        )

    def src0(self, o: OneArrow) -> np.ndarray:
        return self.st.gamma_s(o.gamma)

    def tgt0(self, o: OneArrow) -> np.ndarray:
        return self.st.psi_base(o.g, self.st.gamma_t(o.gamma))

    def one_residual(self, o1: OneArrow, o2: OneArrow) -> float:
        return float(
            max(
                np.max(np.abs(o1.g.matrix - o2.g.matrix)),
                self.st.gamma_residual(o1.gamma, o2.gamma),
            )
        )

    def two_residual(self, a: TwoArrow, b: TwoArrow) -> float:
        return float(
            max(
                np.max(np.abs(a.h.matrix - b.h.matrix)),
                np.max(np.abs(a.g.matrix - b.g.matrix)),
                self.st.gamma_residual(a.gamma, b.gamma),
            )
        )

    # -- vertical structure ----------------------------------------------------

    def vert_unit(self, o: OneArrow) -> TwoArrow:
        return TwoArrow(self.cm.H.identity(), o.g, o.gamma)

    def vert_composable(self, a: TwoArrow, b: TwoArrow) -> bool:
        if self.vert_convention == "second_first":
            return self.one_residual(self.src(a), self.tgt(b)) <= self.tol
        return self.one_residual(self.tgt(a), self.src(b)) <= self.tol

    def vert(self, a: TwoArrow, b: TwoArrow) -> TwoArrow:
        """Vertical product: compose the H parts, keep the source-end 1-arrow."""
        if not self.vert_composable(a, b):
            raise ValueError("2-arrows not vertically composable")
        if self.vert_convention == "second_first":
            return TwoArrow(a.h @ b.h, b.g, b.gamma)
        return TwoArrow(b.h @ a.h, a.g, a.gamma)

    def vert_inv(self, a: TwoArrow) -> TwoArrow:
        t = self.tgt(a)
        return TwoArrow(a.h.inv(), t.g, t.gamma)

    def random_two_arrow(self, rng) -> TwoArrow:
        return TwoArrow(
            self.st.sample_h(rng), self.st.sample_g(rng), self.st.gamma_sample(rng)
        )

    def h_star(self, h: MatrixGroupElement, o: OneArrow) -> OneArrow:
        """The H-action on 1-arrows whose action groupoid the 2-arrows form."""
        return self.tgt(TwoArrow(h, o.g, o.gamma))

    def vert_partner(self, rng, b: TwoArrow) -> TwoArrow:
        """A two-arrow a such that vert(a, b) is defined."""
        h = self.st.sample_h(rng)
        if self.vert_convention == "second_first":
            t = self.tgt(b)
            return TwoArrow(h, t.g, t.gamma)
        # need tgt(a) = src(b): take a based at h^-1 * src(b)
        base = self.h_star(h.inv(), self.src(b))
        return TwoArrow(h, base.g, base.gamma)

    # -- horizontal structure ----------------------------------------------------

    def horiz1(self, o1: OneArrow, o2: OneArrow) -> OneArrow:
        if abs_residual(self.src0(o1), self.tgt0(o2)) > self.tol:
            raise ValueError("1-arrows not base-composable")
        st, cm = self.st, self.cm
        moved = st.phi(cm.H.identity(), o2.g.inv(), o1.gamma)
        return OneArrow(o1.g @ o2.g, st.gamma_compose(moved, o2.gamma))

    def horiz(self, a1: TwoArrow, a2: TwoArrow) -> TwoArrow:
        if abs_residual(self.src0(self.src(a1)), self.tgt0(self.src(a2))) > self.tol:
            raise ValueError("2-arrows not base-composable")
        st, cm = self.st, self.cm
        moved = st.phi(cm.H.identity(), a2.g.inv(), a1.gamma)
        return TwoArrow(
            a1.h @ cm.phi(a1.g, a2.h),
            a1.g @ a2.g,
            st.gamma_compose(moved, a2.gamma),
        )

    def horiz_partner(self, rng, a2: TwoArrow) -> TwoArrow:
        """A two-arrow a1 with src0(a1) = tgt0(a2)."""
        st = self.st
        base = self.tgt0(self.src(a2))
        if st.gamma_tag == "group":
            gamma1 = st.gamma_sample(rng)
        elif st.gamma_tag == "pair":
            gamma1 = (st.sample_x(rng), base)
        else:
            gamma1 = (rng.uniform(-1.0, 1.0), base)
        return TwoArrow(st.sample_h(rng), st.sample_g(rng), gamma1)

    # -- calibration ---------------------------------------------------------------

    def calibrate(self, samples=12, seed=0) -> str:
        """Select the vertical composition order.

        Runs unit, associativity and source/target compatibility under both
        readings; adopts the one that passes, preferring the reading that
        matches the global composition convention (source of the first
        argument equals target of the second) when both pass.
        """
        outcomes = {}
        for conv in VERT_CONVENTIONS:
            self.vert_convention = conv
            try:
                worst = self._vert_axioms_residual(samples, seed)
            except (ValueError, NotImplementedError):
                worst = float("inf")
            outcomes[conv] = worst
        self.calibration = {k: (v if v != float("inf") else None) for k, v in outcomes.items()}
        good = [c for c in VERT_CONVENTIONS if outcomes[c] <= self.tol]
        if not good:
            raise ValueError(f"no vertical convention satisfies the axioms: {outcomes}")
        chosen = "second_first" if "second_first" in good else good[0]
        self.vert_convention = chosen
        return chosen

    def _vert_axioms_residual(self, samples, seed) -> float:
        rng = random.Random(seed)
        worst = 0.0
        for _ in range(samples):
            c = self.random_two_arrow(rng)
            b = self.vert_partner(rng, c)
            a = self.vert_partner(rng, b)
            ab_c = self.vert(self.vert(a, b), c)
            a_bc = self.vert(a, self.vert(b, c))
            worst = max(worst, self.two_residual(ab_c, a_bc))
            # units on both sides
            if self.vert_convention == "second_first":
                u_src = self.vert_unit(self.src(c))
                u_tgt = self.vert_unit(self.tgt(c))
                worst = max(worst, self.two_residual(self.vert(u_tgt, c), c))
                worst = max(worst, self.two_residual(self.vert(c, u_src), c))
            else:
                u_src = self.vert_unit(self.src(c))
                u_tgt = self.vert_unit(self.tgt(c))
                worst = max(worst, self.two_residual(self.vert(u_src, c), c))
                worst = max(worst, self.two_residual(self.vert(c, u_tgt), c))
            # source/target compatibility of the product
            m = self.vert(a, b)
            if self.vert_convention == "second_first":
                worst = max(worst, self.one_residual(self.src(m), self.src(b)))
                worst = max(worst, self.one_residual(self.tgt(m), self.tgt(a)))
            else:
                worst = max(worst, self.one_residual(self.src(m), self.src(a)))
                worst = max(worst, self.one_residual(self.tgt(m), self.tgt(b)))
        return worst


def abs_residual(x, y) -> float:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(x - y)))


def verify_two_groupoid(setup: IntegrationSetup, samples=100, seed=0, tol=1e-9) -> Report:
    """Full axiom battery for the codiagonal 2-groupoid of a setup."""
    tg = TwoGroupoid(setup)
    rng = random.Random(seed)
    rep = Report(f"codiagonal 2-groupoid '{setup.name}'")
    rep.meta["vertical_convention"] = tg.vert_convention
    rep.meta["calibration_residuals"] = {
        k: (v if v is None else float(v)) for k, v in tg.calibration.items()
    }
    rep.meta["samples"] = samples
    rep.meta["seed"] = seed

    worst = {
        "vert_assoc": 0.0,
        "vert_unit": 0.0,
        "vert_inverse": 0.0,
        "vert_st": 0.0,
        "identity_two_arrow": 0.0,
        "horiz1_assoc": 0.0,
        "horiz1_unit": 0.0,
        "horiz_assoc": 0.0,
        "horiz_st": 0.0,
        "horiz_on_units": 0.0,
        "interchange": 0.0,
    }

    second_first = tg.vert_convention == "second_first"
    for _ in range(samples):
        # vertical axioms
        c = tg.random_two_arrow(rng)
        b = tg.vert_partner(rng, c)
        a = tg.vert_partner(rng, b)
        worst["vert_assoc"] = max(
            worst["vert_assoc"],
            tg.two_residual(tg.vert(tg.vert(a, b), c), tg.vert(a, tg.vert(b, c))),
        )
        u_src, u_tgt = tg.vert_unit(tg.src(c)), tg.vert_unit(tg.tgt(c))
        if second_first:
            left_unit, right_unit = u_tgt, u_src
        else:
            left_unit, right_unit = u_src, u_tgt
        worst["vert_unit"] = max(
            worst["vert_unit"],
            tg.two_residual(tg.vert(left_unit, c), c),
            tg.two_residual(tg.vert(c, right_unit), c),
        )
        inv = tg.vert_inv(c)
        if second_first:
            prods = (tg.vert(c, inv), u_tgt), (tg.vert(inv, c), u_src)
        else:
            prods = (tg.vert(c, inv), u_src), (tg.vert(inv, c), u_tgt)
        worst["vert_inverse"] = max(
            worst["vert_inverse"],
            tg.two_residual(*prods[0]),
            tg.two_residual(*prods[1]),
        )
        m = tg.vert(a, b)
        if second_first:
            st_pairs = ((tg.src(m), tg.src(b)), (tg.tgt(m), tg.tgt(a)))
        else:
            st_pairs = ((tg.src(m), tg.src(a)), (tg.tgt(m), tg.tgt(b)))
        worst["vert_st"] = max(
            worst["vert_st"],
            tg.one_residual(*st_pairs[0]),
            tg.one_residual(*st_pairs[1]),
        )
        # the identity 2-arrow at (g, gamma) is (e, g, gamma)
        o = tg.src(c)
        u = tg.vert_unit(o)
        worst["identity_two_arrow"] = max(
            worst["identity_two_arrow"],
            tg.one_residual(tg.src(u), o),
            tg.one_residual(tg.tgt(u), o),
        )

        # horizontal axioms on 1-arrows
        o3 = tg.src(tg.random_two_arrow(rng))
        o2 = tg.src(tg.horiz_partner(rng, TwoArrow(tg.cm.H.identity(), o3.g, o3.gamma)))
        o1 = tg.src(
            tg.horiz_partner(rng, TwoArrow(tg.cm.H.identity(), o2.g, o2.gamma))
        )
        lhs = tg.horiz1(tg.horiz1(o1, o2), o3)
        rhs = tg.horiz1(o1, tg.horiz1(o2, o3))
        worst["horiz1_assoc"] = max(worst["horiz1_assoc"], tg.one_residual(lhs, rhs))
        unit_right = OneArrow(tg.cm.G.identity(), setup.gamma_unit(tg.src0(o3)))
        unit_left = OneArrow(tg.cm.G.identity(), setup.gamma_unit(tg.tgt0(o3)))
        worst["horiz1_unit"] = max(
            worst["horiz1_unit"],
            tg.one_residual(tg.horiz1(o3, unit_right), o3),
            tg.one_residual(tg.horiz1(unit_left, o3), o3),
        )

        # horizontal product of 2-arrows, functoriality, interchange
        a2p = tg.random_two_arrow(rng)
        a1p = tg.horiz_partner(rng, a2p)
        a2 = tg.vert_partner(rng, a2p)
        a1 = tg.vert_partner(rng, a1p)
        b2 = a2p
        b1 = a1p
        b0 = tg.horiz_partner(rng, b1)
        lhs2 = tg.horiz(tg.horiz(b0, b1), b2)
        rhs2 = tg.horiz(b0, tg.horiz(b1, b2))
        worst["horiz_assoc"] = max(worst["horiz_assoc"], tg.two_residual(lhs2, rhs2))
        mh = tg.horiz(a1p, a2p)
        worst["horiz_st"] = max(
            worst["horiz_st"],
            tg.one_residual(tg.src(mh), tg.horiz1(tg.src(a1p), tg.src(a2p))),
            tg.one_residual(tg.tgt(mh), tg.horiz1(tg.tgt(a1p), tg.tgt(a2p))),
        )
        # horiz on identity 2-arrows covers horiz1
        u1 = tg.vert_unit(tg.src(a1p))
        u2 = tg.vert_unit(tg.src(a2p))
        hu = tg.horiz(u1, u2)
        worst["horiz_on_units"] = max(
            worst["horiz_on_units"],
            tg.two_residual(hu, tg.vert_unit(tg.horiz1(tg.src(a1p), tg.src(a2p)))),
        )
        # interchange: (a1 . a2) vert (a1p . a2p) = (a1 vert a1p) . (a2 vert a2p)
        lhs3 = tg.vert(tg.horiz(a1, a2), tg.horiz(a1p, a2p))
        rhs3 = tg.horiz(tg.vert(a1, a1p), tg.vert(a2, a2p))
        worst["interchange"] = max(worst["interchange"], tg.two_residual(lhs3, rhs3))

    laws = {
        "vert_assoc": "(a . b) . c = a . (b . c) vertically",
        "vert_unit": "unit 2-arrows are neutral",
        "vert_inverse": "every 2-arrow has a vertical inverse",
        "vert_st": "src/tgt of a vertical product match its factors",
        "identity_two_arrow": "identity 2-arrow at (g, gamma) is (e, g, gamma)",
        "horiz1_assoc": "1-arrow horizontal composition is associative",
        "horiz1_unit": "(e, unit) is neutral for 1-arrow composition",
        "horiz_assoc": "2-arrow horizontal composition is associative",
        "horiz_st": "horizontal composition is functorial on src/tgt",
        "horiz_on_units": "horizontal product of unit 2-arrows is a unit",
        "interchange": "(a1 # a2) . (a1' # a2') = (a1 . a1') # (a2 . a2')",
    }
    for name, law in laws.items():
        rep.add(name, law, worst[name] <= tol, residual=worst[name])
    return rep
