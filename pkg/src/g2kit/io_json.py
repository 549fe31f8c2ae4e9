"""JSON encodings for polynomials, algebroids, 2-algebras, crossed modules
and action bundles.  Rationals travel as "p/q" strings; polynomials as
{"monomials": [{"exps": {"x1": 2, "xi1": 1}, "coef": "3/2"}]}.

One file is one bundle: cross-references are embedded, never paths.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebroid import LieAlgebroidData, Section, make_context
from .action import StrictActionData
from .graded import GradedContext, GradedPoly, ShapeError
from .lie2 import CrossedModuleData, StrictLie2Data

SCHEMA = "g2kit/1"


class ParseError(ValueError):
    """Malformed input file; carries a human-readable location."""


def _rat(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"rational must be a string or integer, got {text!r}")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None
    return value


def _rat_str(value: Fraction) -> str:
    return str(value)


def poly_to_json(p: GradedPoly) -> dict:
    monomials = []
    for key in sorted(p.terms):
        exps = {
            p.ctx.names[i]: e for i, e in enumerate(key) if e
        }
        monomials.append({"exps": exps, "coef": _rat_str(p.terms[key])})
    return {"monomials": monomials}


def poly_from_json(data: dict, ctx: GradedContext, where="poly") -> GradedPoly:
    if not isinstance(data, dict) or "monomials" not in data:
        raise ParseError(f"{where}: expected an object with 'monomials'")
    out = ctx.zero()
    for k, mono in enumerate(data["monomials"]):
        exps = mono.get("exps", {})
        for name in exps:
            if name not in ctx.index:
                raise ParseError(f"{where}.monomials[{k}]: unknown variable {name!r}")
        coef = _rat(mono.get("coef", "0"))
        key = ctx.key({n: int(e) for n, e in exps.items()})
        if key is None:
            continue
        out = out + GradedPoly(ctx, {key: coef})
    return out


def algebroid_to_json(A: LieAlgebroidData) -> dict:
    c_entries = []
    for i in range(A.rank):
        for j in range(i + 1, A.rank):
            for k in range(A.rank):
                if A.c[i][j][k]:
                    c_entries.append(
                        {"i": i, "j": j, "k": k, "poly": poly_to_json(A.c[i][j][k])}
                    )
    rho_entries = []
    for i in range(A.rank):
        for a in range(A.base_dim):
            if A.rho[i][a]:
                rho_entries.append(
                    {"i": i, "alpha": a, "poly": poly_to_json(A.rho[i][a])}
                )
    return {
        "schema": SCHEMA,
        "kind": "algebroid",
        "base_dim": A.base_dim,
        "rank": A.rank,
        "c": c_entries,
        "rho": rho_entries,
    }


def algebroid_from_json(data: dict) -> LieAlgebroidData:
    try:
        n = int(data["base_dim"])
        r = int(data["rank"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("algebroid: base_dim and rank must be integers") from None
    ctx = make_context(n, r)
    c_entries = {}
    for idx, entry in enumerate(data.get("c", [])):
        i, j, k = int(entry["i"]), int(entry["j"]), int(entry["k"])
        if not (0 <= i < r and 0 <= j < r and 0 <= k < r):
            raise ParseError(f"algebroid.c[{idx}]: index out of range")
        if i >= j:
            raise ParseError(f"algebroid.c[{idx}]: store only i < j entries")
        poly = poly_from_json(entry["poly"], ctx, where=f"algebroid.c[{idx}]")
        c_entries[(i, j, k)] = c_entries.get((i, j, k), ctx.zero()) + poly
    rho_entries = {}
    for idx, entry in enumerate(data.get("rho", [])):
        i, a = int(entry["i"]), int(entry["alpha"])
        if not (0 <= i < r and 0 <= a < n):
            raise ParseError(f"algebroid.rho[{idx}]: index out of range")
        poly = poly_from_json(entry["poly"], ctx, where=f"algebroid.rho[{idx}]")
        rho_entries[(i, a)] = rho_entries.get((i, a), ctx.zero()) + poly
    try:
        return LieAlgebroidData.from_constants(n, r, c_entries, rho_entries, ctx=ctx)
    except ShapeError as exc:
        raise ParseError(f"algebroid: {exc}") from None


def lie2_to_json(L: StrictLie2Data) -> dict:
    bracket = [
        [i, j, k, _rat_str(L.bracket_g[i][j][k])]
        for i in range(L.dim_g)
        for j in range(L.dim_g)
        for k in range(L.dim_g)
        if L.bracket_g[i][j][k]
    ]
    act = [
        [i, a, b, _rat_str(L.act[i][a][b])]
        for i in range(L.dim_g)
        for a in range(L.dim_h)
        for b in range(L.dim_h)
        if L.act[i][a][b]
    ]
    delta = [
        [a, i, _rat_str(L.delta[a][i])]
        for a in range(L.dim_h)
        for i in range(L.dim_g)
        if L.delta[a][i]
    ]
    return {
        "schema": SCHEMA,
        "kind": "lie2",
        "dim_h": L.dim_h,
        "dim_g": L.dim_g,
        "bracket_g": bracket,
        "act": act,
        "delta": delta,
    }


def lie2_from_json(data: dict) -> StrictLie2Data:
    try:
        dh = int(data["dim_h"])
        dg = int(data["dim_g"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("lie2: dim_h and dim_g must be integers") from None
    bracket = [[[Fraction(0)] * dg for _ in range(dg)] for _ in range(dg)]
    for idx, row in enumerate(data.get("bracket_g", [])):
        i, j, k, v = row
        if not (0 <= i < dg and 0 <= j < dg and 0 <= k < dg):
            raise ParseError(f"lie2.bracket_g[{idx}]: index out of range")
        bracket[i][j][k] = _rat(v)
    act = [[[Fraction(0)] * dh for _ in range(dh)] for _ in range(dg)]
    for idx, row in enumerate(data.get("act", [])):
        i, a, b, v = row
        if not (0 <= i < dg and 0 <= a < dh and 0 <= b < dh):
            raise ParseError(f"lie2.act[{idx}]: index out of range")
        act[i][a][b] = _rat(v)
    delta = [[Fraction(0)] * dg for _ in range(dh)]
    for idx, row in enumerate(data.get("delta", [])):
        a, i, v = row
        if not (0 <= a < dh and 0 <= i < dg):
            raise ParseError(f"lie2.delta[{idx}]: index out of range")
        delta[a][i] = _rat(v)
    return StrictLie2Data.from_tables(dh, dg, bracket, act, delta)


def crossed_module_to_json(C: CrossedModuleData) -> dict:
    data = lie2_to_json(StrictLie2Data(C.dim_h, C.dim_g, C.bracket_g, C.alpha, C.delta))
    bracket_h = [
        [a, b, k, _rat_str(C.bracket_h[a][b][k])]
        for a in range(C.dim_h)
        for b in range(C.dim_h)
        for k in range(C.dim_h)
        if C.bracket_h[a][b][k]
    ]
    return {
        "schema": SCHEMA,
        "kind": "crossed_module",
        "dim_h": C.dim_h,
        "dim_g": C.dim_g,
        "bracket_h": bracket_h,
        "bracket_g": data["bracket_g"],
        "alpha": data["act"],
        "delta": data["delta"],
    }


def crossed_module_from_json(data: dict) -> CrossedModuleData:
    dh = int(data["dim_h"])
    dg = int(data["dim_g"])
    as_lie2 = lie2_from_json(
        {
            "dim_h": dh,
            "dim_g": dg,
            "bracket_g": data.get("bracket_g", []),
            "act": data.get("alpha", []),
            "delta": data.get("delta", []),
        }
    )
    bracket_h = [[[Fraction(0)] * dh for _ in range(dh)] for _ in range(dh)]
    for idx, row in enumerate(data.get("bracket_h", [])):
        a, b, k, v = row
        if not (0 <= a < dh and 0 <= b < dh and 0 <= k < dh):
            raise ParseError(f"crossed_module.bracket_h[{idx}]: index out of range")
        bracket_h[a][b][k] = _rat(v)
    return CrossedModuleData(
        dh,
        dg,
        tuple(tuple(tuple(r) for r in row) for row in bracket_h),
        as_lie2.bracket_g,
        as_lie2.delta,
        as_lie2.act,
    )


def action_to_json(S: StrictActionData) -> dict:
    from .algebroid import split_degree0_vf

    mu_h = [
        [poly_to_json(c) for c in sec.coefficients] for sec in S.mu_h
    ]
    mu_g = []
    for d in S.mu_g:
        base, fiber = split_degree0_vf(S.A, d)
        mu_g.append(
            {
                "base": [poly_to_json(p) for p in base],
                "fiber": [[poly_to_json(p) for p in row] for row in fiber],
            }
        )
    return {
        "schema": SCHEMA,
        "kind": "action",
        "lie2": lie2_to_json(S.L),
        "algebroid": algebroid_to_json(S.A),
        "mu_h": mu_h,
        "mu_g": mu_g,
    }


def action_from_json(data: dict) -> StrictActionData:
    if "lie2" not in data or "algebroid" not in data:
        raise ParseError("action: bundle must embed 'lie2' and 'algebroid'")
    L = lie2_from_json(data["lie2"])
    A = algebroid_from_json(data["algebroid"])
    mu_h = []
    for a, sec in enumerate(data.get("mu_h", [])):
        if len(sec) != A.rank:
            raise ParseError(f"action.mu_h[{a}]: expected {A.rank} coefficients")
        mu_h.append(
            Section(
                tuple(
                    poly_from_json(c, A.ctx, where=f"action.mu_h[{a}][{k}]")
                    for k, c in enumerate(sec)
                )
            )
        )
    mu_g = []
    for i, entry in enumerate(data.get("mu_g", [])):
        base = entry.get("base", [])
        fiber = entry.get("fiber", [])
        if len(base) != A.base_dim or len(fiber) != A.rank:
            raise ParseError(f"action.mu_g[{i}]: base/fiber shapes do not match")
        comps = {}
        for j, p in enumerate(base):
            poly = poly_from_json(p, A.ctx, where=f"action.mu_g[{i}].base[{j}]")
            if poly:
                comps[f"x{j + 1}"] = poly
        for b in range(A.rank):
            acc = A.ctx.zero()
            for a2 in range(A.rank):
                poly = poly_from_json(
                    fiber[a2][b], A.ctx, where=f"action.mu_g[{i}].fiber[{a2}][{b}]"
                )
                if poly:
                    acc = acc + poly * A.ctx.var(f"xi{a2 + 1}")
            if acc:
                comps[f"xi{b + 1}"] = acc
        mu_g.append(A.ctx.derivation(comps))
    try:
        return StrictActionData(L, A, tuple(mu_h), tuple(mu_g))
    except ShapeError as exc:
        raise ParseError(f"action: {exc}") from None


_PARSERS = {
    "lie2": lie2_from_json,
    "algebroid": algebroid_from_json,
    "crossed_module": crossed_module_from_json,
    "action": action_from_json,
}


def parse_bundle(path, expect_kind=None):
    """Load and shape-validate a JSON bundle; returns (kind, object)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from None
    kind = data.get("kind")
    if kind not in _PARSERS:
        raise ParseError(f"{path}: unknown or missing kind {kind!r}")
    if expect_kind is not None and kind != expect_kind:
        raise ParseError(f"{path}: expected a {expect_kind!r} bundle, found {kind!r}")
    return kind, _PARSERS[kind](data)
