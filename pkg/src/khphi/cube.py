"""
Cube of resolutions over a deformed Frobenius system, with x set to 1.

Reduced complexes quotient the basepoint circle by X = lam x, where lam is
a rational root of lam^2 = a1 lam + a2, so each generator is a labelling of
the non-basepoint circles.  An x^k term of an edge map shifts the bigrade
by (dg, dh) = (-3 + 2k, 1).
"""

from collections import Counter

from .bifiltered import (ComplexError, Eliminator, SemiBifilteredComplex,
                         cancel_matching, reduce)
from .frobenius import DEFAULT, ONE, X, FrobeniusError, FrobeniusSystem


class CubeError(ComplexError):
    pass


def _circles(crossings, labels, v, bp):
    """Map each edge label to a circle index; the basepoint circle is 0."""
    parent = {e: e for e in labels}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i, (a, b, c, d) in enumerate(crossings):
        if v >> i & 1:
            union(a, d)
            union(b, c)
        else:
            union(a, b)
            union(c, d)
    idx = {find(bp): 0}
    comp = {}
    for e in labels:
        r = find(e)
        if r not in idx:
            idx[r] = len(idx)
        comp[e] = idx[r]
    return comp, len(idx)


def _vertex_data(diagram):
    crossings = [c.edges for c in diagram.crossings]
    labels = sorted({e for c in crossings for e in c})
    bp = diagram.basepoint if labels else None
    data = []
    for v in range(1 << len(crossings)):
        if labels:
            comp, n = _circles(crossings, labels, v, bp)
            reps = {}
            for e in labels:
                reps.setdefault(comp[e], e)
        else:
            comp, n, reps = {}, 1, {0: None}
        data.append((comp, n, reps))
    return crossings, data


def build_cube(diagram, sys=DEFAULT, reduced=True, check=True):
    """
    Build the cube complex.

    Reduced: basepoint circle quotiented as above, q normalized so the
    unknot sits at q = 0.  Unreduced: every circle labelled, with the
    usual q = #1 - #X + |v| + n_plus - 2 n_minus.
    """
    sys.check_axioms()
    lam = sys.basepoint_root
    if reduced and lam is None:
        raise FrobeniusError("system %s has no rational basepoint root" % sys)
    crossings, data = _vertex_data(diagram)
    n = len(crossings)
    first = 1 if reduced else 0
    shift_q = diagram.n_plus - 2 * diagram.n_minus
    offsets, grades = [], []
    for v, (comp, nc, _) in enumerate(data):
        offsets.append(len(grades))
        r = nc - first
        ones = bin(v).count("1")
        h = ones - diagram.n_minus
        for mask in range(1 << r):
            xs = bin(mask).count("1")
            q = (r - xs) - xs + ones + shift_q
            grades.append((q - 3 * h, h))
    out = [dict() for _ in grades]

    def bit(circle):
        return 1 << (circle - first)

    def label(mask, circle):
        if reduced and circle == 0:
            return ONE
        return X if mask & bit(circle) else ONE

    def place(terms, mask_rest, targets):
        """Turn ((labels), k, c) terms into {target mask: (k, c)}."""
        res = {}
        for labs, k, c in terms:
            m = mask_rest
            for t, l in zip(targets, labs):
                if reduced and t == 0:
                    if l == X:
                        c = c * lam
                        k += 1
                elif l == X:
                    m |= bit(t)
            if not c:
                continue
            prev = res.get(m)
            if prev is not None:
                if prev[0] != k:
                    raise CubeError("inhomogeneous edge map")
                c = prev[1] + c
            res[m] = (k, c)
        return res

    for v in range(1 << n):
        comp, nc, reps = data[v]
        for i in range(n):
            if v >> i & 1:
                continue
            w = v | 1 << i
            comp2, nc2, _ = data[w]
            sign = -1 if bin(v & ((1 << i) - 1)).count("1") % 2 else 1
            a, b, c, d = crossings[i]
            s1, s2 = comp[a], comp[c]
            # circle correspondence for untouched circles
            moved = [(j, comp2[reps[j]]) for j in range(first, nc) if j != s1 and j != s2]
            if s1 != s2:
                targets = (comp2[a],)
                kind = "merge"
            else:
                targets = (comp2[a], comp2[b])
                kind = "split"
            src0, dst0 = offsets[v], offsets[w]
            for mask in range(1 << (nc - first)):
                rest = 0
                for j, j2 in moved:
                    if mask & bit(j):
                        rest |= bit(j2)
                if kind == "merge":
                    terms = [((l,), k, cf) for l, k, cf in sys.mult(label(mask, s1), label(mask, s2))]
                else:
                    terms = sys.comult(label(mask, s1))
                row = out[src0 + mask]
                g0, h0 = grades[src0 + mask]
                for m2, (k, cf) in place(terms, rest, targets).items():
                    tgt = dst0 + m2
                    gt, ht = grades[tgt]
                    if gt - g0 != -3 + 2 * k or ht - h0 != 1:
                        raise CubeError("grading mismatch on cube edge")
                    val = row.get(tgt, 0) + sign * cf
                    if val:
                        row[tgt] = val
                    else:
                        row.pop(tgt, None)
    for row in out:
        for t, val in row.items():
            if val.denominator == 1:
                row[t] = val.numerator
    cx = SemiBifilteredComplex.from_indexed(grades, out, (-3, 1))
    if check and not cx.d_squared_is_zero():
        raise CubeError("d o d != 0 on the cube complex")
    return cx


def build_ckhpm(diagram, sys=DEFAULT, check=True):
    """Reduced deformed cube complex with bigrades (g, h)."""
    return build_cube(diagram, sys, reduced=True, check=check)


def khovanov_model(diagram, sys=DEFAULT, check=True):
    """
    Cube complex with its Khovanov layer (dg, dh) = (-3, 1) cancelled.

    The generators left are a basis of reduced Khovanov homology and the
    remaining differential is the induced deformation.
    """
    cx = build_ckhpm(diagram, sys, check=check)
    model, _ = reduce(cx, (-3, 1))
    if check and not model.d_squared_is_zero():
        raise CubeError("d o d != 0 after reduction")
    return model


def kh_table(model):
    """Counter of (h, q) ranks from a Khovanov-reduced model."""
    return Counter((h, g + 3 * h) for g, h in zip(model.g, model.h))


def khovanov_homology(diagram):
    """Reduced rational Khovanov homology as a Counter {(h, q): rank}."""
    return kh_table(khovanov_model(diagram, DEFAULT))


def specialize_lee(diagram):
    """Unreduced cube complex for X^2 = 1; filtered by q = g + 3h."""
    return build_cube(diagram, FrobeniusSystem(0, 1), reduced=False)


def lee_survivors(diagram):
    """
    q-gradings of the two generators left after cancelling entries in
    increasing order of their q-shift, which keeps every step filtered.
    """
    cx = specialize_lee(diagram)
    q = [g + 3 * h for g, h in zip(cx.g, cx.h)]
    elim = Eliminator(cx.out)
    shift = 0
    while any(elim.out.values()):
        cancel_matching(elim, lambda a, b: q[b] - q[a] == shift)
        rest = [q[b] - q[a] for a, row in elim.out.items() for b in row]
        if rest and min(rest) < shift:
            raise CubeError("filtration dropped during Lee reduction")
        shift = min(rest) if rest else shift
    alive = elim.alive()
    if len(alive) != 2:
        raise CubeError("Lee homology has rank %d, expected 2" % len(alive))
    return sorted(q[i] for i in alive)


def s_via_lee(diagram):
    lo, hi = lee_survivors(diagram)
    if hi - lo != 2:
        raise CubeError("Lee survivors at q = %d, %d are not adjacent" % (lo, hi))
    return lo + 1
