"""Random filtered complexes with 1-dimensional homology, and a dense oracle for m."""

from fractions import Fraction

import sympy

from khphi.bifiltered import SemiBifilteredComplex
from khphi.phi import level


def _nonzero(rng, spread=3):
    v = 0
    while not v:
        v = rng.randint(-spread, spread)
    return v


def random_complex(rng, max_dim=12):
    """
    A survivor plus cancelling pairs, conjugated by a random unipotent
    change of basis that respects both filtrations and the parity, so the
    result is still (-3, 1)-bounded with d o d = 0.
    """
    npairs = rng.randint(0, (max_dim - 1) // 2)
    grades = []
    h0 = rng.randint(-3, 3)
    grades.append((h0 + 2 * rng.randint(-3, 3), h0))
    pairs = []
    for _ in range(npairs):
        h = rng.randint(-4, 4)
        g = h + 2 * rng.randint(-3, 3)
        dh = rng.choice([1, 1, 1, 3])
        dg = rng.choice([-3, -3, -1, 1, 3])
        grades.append((g, h))
        grades.append((g + dg, h + dh))
        pairs.append((len(grades) - 2, len(grades) - 1))
    n = len(grades)
    d0 = sympy.zeros(n, n)
    for a, b in pairs:
        d0[b, a] = _nonzero(rng)
    p = sympy.eye(n)
    for i in range(n):
        for j in range(n):
            gi, hi = grades[i]
            gj, hj = grades[j]
            if i == j or gj < gi or hj < hi or (hj - hi) % 2:
                continue
            if (gj, hj) == (gi, hi) and j < i:
                continue
            if rng.random() < 0.5:
                p[j, i] = rng.randint(-2, 2)
    d = p * d0 * p.inv()
    out = [{j: Fraction(int(d[j, i].p), int(d[j, i].q)) for j in range(n) if d[j, i] != 0}
           for i in range(n)]
    out = [{j: (v.numerator if v.denominator == 1 else v) for j, v in row.items()} for row in out]
    return SemiBifilteredComplex.from_indexed(grades, out, (-3, 1), ["e%d" % i for i in range(n)])


def dense(c):
    n = len(c)
    return sympy.Matrix(n, n, lambda r, k: c.out[k].get(r, 0))


def oracle_homology_dimension(c):
    return len(c) - 2 * dense(c).rank()


def oracle_m(c, alpha):
    """Largest level t whose filtration piece contains a homologically essential cycle."""
    d = dense(c)
    n = len(c)
    image_rank = d.rank()
    lev = [level(g, h, alpha) for g, h in zip(c.g, c.h)]
    best = None
    for t in sorted(set(lev)):
        inside = [i for i in range(n) if lev[i] >= t]
        sub = d.extract(list(range(n)), inside)
        cycles = []
        for v in sub.nullspace():
            full = sympy.zeros(n, 1)
            for k, i in enumerate(inside):
                full[i] = v[k]
            cycles.append(full)
        if not cycles:
            continue
        stacked = d.row_join(sympy.Matrix.hstack(*cycles))
        if stacked.rank() > image_rank:
            best = t
    return best
