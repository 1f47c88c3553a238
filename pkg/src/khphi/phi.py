"""
The invariant m(C) of collapsed filtrations and the piecewise-linear
curve alpha -> M(C, alpha) on [0, 2].

For a generator e with bigrade (g, h) the level at alpha is
L_e(alpha) = alpha g + (2 - alpha) h = 2h + alpha (g - h).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .bifiltered import homology_dimension
from .linalg import fmt, frac, rank_of_rows


class PhiError(ValueError):
    pass


def level(g, h, alpha):
    return alpha * g + (2 - alpha) * h


class PiecewiseLinearFunction:
    """Continuous PL function on [0, 2] given by exact breakpoints."""

    def __init__(self, points):
        pts = sorted((frac(a), frac(v)) for a, v in points)
        if not pts:
            raise PhiError("no breakpoints")
        for (a0, _), (a1, _) in zip(pts, pts[1:]):
            if a0 == a1:
                raise PhiError("repeated breakpoint at %s" % a0)
        self.points = _merge_collinear(pts)

    @classmethod
    def zero(cls):
        return cls([(0, 0), (2, 0)])

    @classmethod
    def from_slopes(cls, start, pieces):
        """Build from a start value at alpha=0 and (end alpha, slope) pieces."""
        pts = [(Fraction(0), frac(start))]
        for end, slope in pieces:
            a0, v0 = pts[-1]
            end = frac(end)
            pts.append((end, v0 + frac(slope) * (end - a0)))
        return cls(pts)

    def __call__(self, alpha):
        alpha = frac(alpha)
        pts = self.points
        if alpha < pts[0][0] or alpha > pts[-1][0]:
            raise PhiError("alpha %s outside the domain" % alpha)
        for (a0, v0), (a1, v1) in zip(pts, pts[1:]):
            if a0 <= alpha <= a1:
                return v0 + (v1 - v0) * (alpha - a0) / (a1 - a0)
        return pts[0][1]

    def __eq__(self, other):
        return isinstance(other, PiecewiseLinearFunction) and self.points == other.points

    def __repr__(self):
        return "PL[%s]" % ", ".join("(%s,%s)" % (fmt(a), fmt(v)) for a, v in self.points)

    def _combine(self, other, op):
        alphas = sorted({a for a, _ in self.points} | {a for a, _ in other.points})
        return PiecewiseLinearFunction([(a, op(self(a), other(a))) for a in alphas])

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __neg__(self):
        return PiecewiseLinearFunction([(a, -v) for a, v in self.points])

    def scale(self, c):
        c = frac(c)
        return PiecewiseLinearFunction([(a, c * v) for a, v in self.points])

    def segments(self):
        """List of (a0, a1, slope, intercept at 0)."""
        out = []
        for (a0, v0), (a1, v1) in zip(self.points, self.points[1:]):
            m = (v1 - v0) / (a1 - a0)
            out.append((a0, a1, m, v0 - m * a0))
        return out

    def slopes(self):
        return [m for _, _, m, _ in self.segments()]

    def to_list(self):
        return [[fmt(a), fmt(v)] for a, v in self.points]


def _merge_collinear(pts):
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        (a0, v0), (a1, v1), (a2, v2) = out[-1], pts[i], pts[i + 1]
        if (v1 - v0) * (a2 - a1) != (v2 - v1) * (a1 - a0):
            out.append(pts[i])
    if len(pts) > 1:
        out.append(pts[-1])
    return out


def _require_one(c):
    dim = homology_dimension(c)
    if dim != 1:
        raise PhiError("homology has dimension %d, expected 1" % dim)


class _Levels:
    """Cached rank data for the threshold tests of one complex."""

    def __init__(self, c):
        self.c = c
        self.cols = [dict(row) for row in c.out]
        self.rank_d = rank_of_rows(self.cols)

    def has_generator(self, members):
        """True when span(members) holds a cycle that is not a boundary."""
        inside = set(members)
        z = len(inside) - rank_of_rows([self.cols[i] for i in inside])
        outside = [{j: v for j, v in col.items() if j not in inside} for col in self.cols]
        b = self.rank_d - rank_of_rows(outside)
        return z > b


def _m_value(lv, alpha):
    c = lv.c
    lev = [level(g, h, alpha) for g, h in zip(c.g, c.h)]
    ts = sorted(set(lev))
    # the predicate is monotone in t and true at the lowest level
    lo, hi = 0, len(ts) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        t = ts[mid]
        if lv.has_generator([i for i, x in enumerate(lev) if x >= t]):
            lo = mid
        else:
            hi = mid - 1
    return ts[lo]


def m_invariant(c, alpha):
    """
    Top level t of the alpha-collapsed filtration such that span{e :
    L_e(alpha) >= t} contains a cycle generating homology.
    """
    alpha = frac(alpha)
    if not 0 <= alpha <= 2:
        raise PhiError("alpha must lie in [0, 2]")
    _require_one(c)
    return _m_value(_Levels(c), alpha)


def _candidates(lines):
    cands = {Fraction(0), Fraction(2)}
    lines = sorted(lines)
    for i, (g1, h1) in enumerate(lines):
        for g2, h2 in lines[i + 1:]:
            s1, s2 = g1 - h1, g2 - h2
            if s1 == s2:
                continue
            a = Fraction(2 * (h2 - h1), s1 - s2)
            if 0 < a < 2:
                cands.add(a)
    return sorted(cands)


def phi_curve(c):
    """Exact PL curve alpha -> m(C^alpha) on [0, 2]."""
    _require_one(c)
    lv = _Levels(c)
    lines = set(zip(c.g, c.h))
    cands = _candidates(lines)
    pieces = []
    for a0, a1 in zip(cands, cands[1:]):
        mid = (a0 + a1) / 2
        val = _m_value(lv, mid)
        hit = [(g, h) for g, h in lines if level(g, h, mid) == val]
        if len(hit) != 1:
            raise PhiError("no unique support line at alpha=%s" % mid)
        pieces.append((a0, a1, hit[0]))
    pts = []
    for idx, (a0, a1, (g, h)) in enumerate(pieces):
        v0 = level(g, h, a0)
        if idx and pts[-1][1] != v0:
            raise PhiError("curve is discontinuous at alpha=%s" % a0)
        if idx == 0:
            pts.append((a0, v0))
        pts.append((a1, level(g, h, a1)))
    return PiecewiseLinearFunction(pts)


def endpoint_slopes(phi):
    sl = phi.slopes()
    return sl[0], -sl[-1]


def jump_list(phi):
    """(alpha, change of slope) at each interior breakpoint."""
    sl = phi.slopes()
    return [(phi.points[i + 1][0], sl[i + 1] - sl[i]) for i in range(len(sl) - 1)]


def i_n(phi, n):
    """Slope jump at 8n/(8n+2) divided by 8n+2; 0 when there is no jump."""
    if n < 1:
        raise PhiError("n must be positive")
    alpha = Fraction(8 * n, 8 * n + 2)
    jump = dict(jump_list(phi)).get(alpha, Fraction(0))
    val = jump / (8 * n + 2)
    if val.denominator != 1:
        raise PhiError("i_%d = %s is not an integer" % (n, val))
    return int(val)


def slice_bounds(phi):
    """
    Lower bounds for the slice genus from |phi| <= 2 g4 Lambda, taken
    separately over [0, 1] and [1, 2].  The ratio is monotone on each
    linear piece, so breakpoints, alpha = 1 and the endpoint limits
    |s|/2 and |t|/2 suffice.
    """
    s, t = endpoint_slopes(phi)
    left, right = abs(s) / Fraction(2), abs(t) / Fraction(2)
    alphas = {a for a, _ in phi.points if 0 < a < 2} | {Fraction(1)}
    for a in alphas:
        lam = 1 - abs(a - 1)
        r = abs(phi(a)) / (2 * lam)
        if a <= 1:
            left = max(left, r)
        if a >= 1:
            right = max(right, r)
    return left, right


def slice_lower_bound(phi):
    return max(slice_bounds(phi))


def constraint_check(phi, kh):
    """
    Each linear piece extended to alpha = 0 and alpha = 1 gives (l0, l1);
    Kh must be nonzero at h = l0/2 and delta = q - 2h = l1, with l0 and l1
    even.  Also (1 - alpha) times each slope jump must be an even integer.
    """
    support = {(h, q - 2 * h) for (h, q), r in kh.items() if r}
    segs = []
    ok = True
    for a0, a1, m, b in phi.segments():
        l0, l1 = b, b + m
        even = (l0.denominator == 1 and l1.denominator == 1
                and l0.numerator % 2 == 0 and l1.numerator % 2 == 0)
        present = even and (l0 / 2, l1) in support
        segs.append({"from": fmt(a0), "to": fmt(a1), "l0": fmt(l0), "l1": fmt(l1),
                     "even": even, "present": present})
        ok = ok and even and present
    jumps = []
    for a, dj in jump_list(phi):
        w = (1 - a) * dj
        good = w.denominator == 1 and w.numerator % 2 == 0
        jumps.append({"alpha": fmt(a), "jump": fmt(dj), "weighted": fmt(w), "even": good})
        ok = ok and good
    return {"pass": ok, "segments": segs, "jumps": jumps}


def crossing_change_monotonicity_check(phi_minus, phi_plus):
    alphas = {a for a, _ in phi_minus.points} | {a for a, _ in phi_plus.points}
    return all(phi_minus(a) <= phi_plus(a) for a in alphas)


def _dec(q, digits=6):
    q = Fraction(q)
    return "%.*f" % (digits, q.numerator / q.denominator)


@dataclass
class InvariantReport:
    knot: str
    phi: PiecewiseLinearFunction
    s: int
    t: int
    s_lee: int = None
    jumps: list = field(default_factory=list)
    i_values: dict = field(default_factory=dict)
    slice_bound: Fraction = Fraction(0)
    slice_bound_left: Fraction = Fraction(0)
    slice_bound_right: Fraction = Fraction(0)
    constraint: dict = field(default_factory=dict)
    kh: dict = field(default_factory=dict)
    frobenius: str = "0,1"
    model_dim: int = 0
    alpha_value: tuple = None

    def to_dict(self):
        d = {
            "knot": self.knot,
            "frobenius": self.frobenius,
            "phi": {
                "breakpoints": [{"alpha": fmt(a), "value": fmt(v),
                                 "alpha_decimal": _dec(a), "value_decimal": _dec(v)}
                                for a, v in self.phi.points],
            },
            "s": self.s,
            "t": self.t,
            "s_lee": self.s_lee,
            "jumps": [{"alpha": fmt(a), "jump": fmt(j)} for a, j in self.jumps],
            "i_n": {str(k): v for k, v in sorted(self.i_values.items())},
            "slice_lower_bound": fmt(self.slice_bound),
            "slice_bound_0_1": fmt(self.slice_bound_left),
            "slice_bound_1_2": fmt(self.slice_bound_right),
            "constraint_check": self.constraint,
            "khovanov": [{"h": h, "q": q, "rank": r} for (h, q), r in sorted(self.kh.items())],
            "model_dim": self.model_dim,
        }
        if self.alpha_value is not None:
            a, v = self.alpha_value
            d["alpha"] = {"alpha": fmt(a), "value": fmt(v), "value_decimal": _dec(v)}
        return d
