"""
Completion of a Khovanov-reduced model by its higher layer.

The cube at x = 1 only produces entries with dh = 1, so the reduced model
carries just the Lee layer L.  The remaining entries have dh = 1 + 2m
(m >= 1) and dg >= -3.  Writing D = L + E, the condition D o D = 0 is a
system of quadratic equations in the entries of E.  A rational point is
found by eliminating linear equations exactly and assigning random values
to variables of the nonlinear ones.  A sample is accepted when D has
1-dimensional homology and its dg = -3 part has 1-dimensional homology
sitting at g = 0 (so the curve vanishes at alpha = 2).  Several
independent samples must give the same curve.
"""

import hashlib
import random
from fractions import Fraction

from .bifiltered import SemiBifilteredComplex, homology_dimension
from .linalg import rank_of_rows
from .phi import phi_curve


class CompletionError(RuntimeError):
    pass


def seed_for(key):
    return int.from_bytes(hashlib.sha256(repr(key).encode()).digest()[:8], "big")


def horizontal_homology(c):
    """Dimensions of the homology of the dg = -3 part, by g."""
    n = len(c)
    hor = [{j: v for j, v in row.items() if c.g[j] - c.g[i] == -3} for i, row in enumerate(c.out)]
    by_g = {}
    for i in range(n):
        by_g.setdefault(c.g[i], []).append(i)
    dims = {}
    for g, gens in by_g.items():
        r_out = rank_of_rows([hor[i] for i in gens])
        into = by_g.get(g + 3, [])
        r_in = rank_of_rows([{j: v for j, v in hor[i].items() if c.g[j] == g} for i in into])
        d = len(gens) - r_out - r_in
        if d:
            dims[g] = d
    return dims


# Polynomials in the unknown entries are dicts {monomial: coeff}, where a
# monomial is a sorted tuple of variable indices (length <= 2 here).

def _pmul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(sorted(m1 + m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _padd(a, b, scale=1):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _subst(poly, var, expr):
    """Replace ``var`` by the polynomial ``expr``."""
    if not any(var in m for m in poly):
        return poly
    out = {}
    for m, c in poly.items():
        k = m.count(var)
        rest = {tuple(x for x in m if x != var): c}
        for _ in range(k):
            rest = _pmul(rest, expr)
        out = _padd(out, rest)
    return out


def _degree(poly):
    return max((len(m) for m in poly), default=0)


def unknown_entries(model):
    """Positions allowed in the completion: dh = 1 + 2m >= 3, dg >= -3."""
    n = len(model)
    g, h = model.g, model.h
    return [(i, j) for i in range(n) for j in range(n)
            if h[j] - h[i] >= 3 and (h[j] - h[i]) % 2 == 1 and g[j] - g[i] >= -3]


def _equations(model, unknowns):
    n = len(model)
    rows = [dict() for _ in range(n)]
    for i, row in enumerate(model.out):
        if any(model.h[j] - model.h[i] != 1 for j in row):
            raise CompletionError("model has entries outside the Lee layer")
        for j, v in row.items():
            rows[i][j] = {(): Fraction(v)}
    for k, (i, j) in enumerate(unknowns):
        rows[i][j] = {(k,): Fraction(1)}
    eqs = []
    for i in range(n):
        acc = {}
        for j, a in rows[i].items():
            for k, b in rows[j].items():
                acc[k] = _padd(acc.get(k, {}), _pmul(a, b))
        eqs.extend(p for p in acc.values() if p)
    return eqs


def _solve_point(eqs, nvars, rng, spread):
    """
    Find a rational point of the system by exact elimination of linear
    equations and random assignment of variables in nonlinear ones.
    Returns the values or None on a contradiction.
    """
    values = {}
    eqs = [dict(e) for e in eqs]

    def assign(var, expr):
        nonlocal eqs
        for v in list(values):
            values[v] = _subst(values[v], var, expr)
        values[var] = expr
        eqs = [e for e in (_subst(e, var, expr) for e in eqs) if e]

    def draw():
        r = 0
        while not r:
            r = rng.randint(-spread, spread)
        return Fraction(r)

    while eqs:
        if any(list(e) == [()] for e in eqs):
            return None
        lin = [e for e in eqs if _degree(e) <= 1]
        if lin:
            e = min(lin, key=lambda p: (len(p), sorted(p)))
            var = min(m[0] for m in e if m)
            c = e[(var,)]
            expr = {m: -v / c for m, v in e.items() if m != (var,)}
            assign(var, expr)
            continue
        pool = sorted({x for e in eqs if _degree(e) > 1 for m in e for x in m})
        var = rng.choice(pool)
        assign(var, {(): Fraction(0)} if rng.random() < 0.2 else {(): draw()})
    out = []
    for k in range(nvars):
        if k not in values:
            values[k] = {(): draw()} if rng.random() < 0.5 else {}
            for v in list(values):
                values[v] = _subst(values[v], k, values[k])
    for k in range(nvars):
        e = values[k]
        if any(m for m in e):
            raise CompletionError("unresolved variable in completion")
        out.append(e.get((), Fraction(0)))
    return out


def _sample(model, rng, spread, unknowns=None, eqs=None):
    if unknowns is None:
        unknowns = unknown_entries(model)
        eqs = _equations(model, unknowns)
    vals = _solve_point(eqs, len(unknowns), rng, spread)
    if vals is None:
        return None
    out = [dict(row) for row in model.out]
    for (i, j), v in zip(unknowns, vals):
        if v:
            out[i][j] = v.numerator if v.denominator == 1 else v
    return SemiBifilteredComplex.from_indexed(
        list(zip(model.g, model.h)), out, (-3, 1), model.ids)


def accept(c):
    if not c.d_squared_is_zero():
        return False
    if homology_dimension(c) != 1:
        return False
    return horizontal_homology(c) == {0: 1}


def complete(model, key, samples=3, tries=60, spread=7):
    """
    Return (completed complex, curve).  Raises CompletionError when no
    admissible completion is found or when samples disagree.
    """
    rng = random.Random(seed_for(key))
    unknowns = unknown_entries(model)
    eqs = _equations(model, unknowns)
    found = []
    attempts = 0
    while len(found) < samples and attempts < tries:
        attempts += 1
        c = _sample(model, rng, spread, unknowns, eqs)
        if c is not None and accept(c):
            found.append(c)
    if not found:
        raise CompletionError("no admissible completion after %d samples" % tries)
    curves = [phi_curve(c) for c in found]
    if any(cv != curves[0] for cv in curves[1:]):
        raise CompletionError("completions disagree: %s" % curves)
    return found[0], curves[0]
