"""
Closed-form curves: the pretzel family P(-2n, a, b) and the conjectured
torus knot values.
"""

from fractions import Fraction
from math import gcd

from .phi import PiecewiseLinearFunction


class ReferenceError(ValueError):
    pass


def pretzel_phi(n, a, b):
    """
    Curve of P(-2n, a, b) for a, b odd with 0 < 2n < a <= b:

        (a+b) alpha                   on [0, 8n/(8n+2)]
        8n + (a+b-8n-2) alpha         on [8n/(8n+2), 1]
        (a+b-2)(2-alpha)              on [1, 2]
    """
    if n < 1 or a % 2 == 0 or b % 2 == 0 or not (0 < 2 * n < a <= b):
        raise ReferenceError("need n >= 1 and odd a, b with 0 < 2n < a <= b")
    c = Fraction(8 * n, 8 * n + 2)
    return PiecewiseLinearFunction([(0, 0), (c, (a + b) * c), (1, a + b - 2), (2, 0)])


def torus_base(n):
    """
    Conjectured curve of T(n, n+1): initial slope n(n-1) and slope jumps
    -4-6k at alpha = (2+2k)/(2+3k) for 0 <= k < n with k = n mod 2.
    The data is read as the complete list of jumps except possibly one at
    alpha = 1, which is added if needed to make the curve vanish at 2.
    """
    if n < 1:
        raise ReferenceError("n must be positive")
    jumps = {}
    for k in range(n % 2, n, 2):
        jumps[Fraction(2 + 2 * k, 2 + 3 * k)] = Fraction(-4 - 6 * k)
    slope = Fraction(n * (n - 1))
    pts = [(Fraction(0), Fraction(0))]
    for a in sorted(jumps):
        a0, v0 = pts[-1]
        pts.append((a, v0 + slope * (a - a0)))
        slope += jumps[a]
    a0, v0 = pts[-1]
    end = v0 + slope * (2 - a0)
    if end:
        # close with a jump at 1
        if a0 > 1:
            raise ReferenceError("base case for n=%d does not close up" % n)
        if a0 < 1:
            pts.append((Fraction(1), v0 + slope * (1 - a0)))
        pts.append((Fraction(2), Fraction(0)))
    else:
        pts.append((Fraction(2), end))
    return PiecewiseLinearFunction(pts)


def torus_phi_conjectured(p, q):
    """
    Conjectured curve of T(p, q) from the base cases and the recurrence
    Phi(T(p, q+p)) = Phi(T(p, q)) + Phi(T(p, p+1)).
    """
    if p == 0 or q == 0 or gcd(abs(p), abs(q)) != 1:
        raise ReferenceError("p and q must be nonzero and coprime")
    if (p < 0) != (q < 0):
        return -torus_phi_conjectured(abs(p), abs(q))
    p, q = abs(p), abs(q)
    if p > q:
        p, q = q, p
    if p == 1:
        return PiecewiseLinearFunction.zero()
    m, r = divmod(q, p)
    return torus_base(p).scale(m) + torus_phi_conjectured(r, p)
