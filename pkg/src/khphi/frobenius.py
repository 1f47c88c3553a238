"""
One-variable deformed Frobenius systems.

An element of A = Q[x]<1, X> is a dict mapping (label, k) to a Fraction,
meaning coeff * x^k * label, with label 0 for 1 and 1 for X.  Tensor
powers use tuples of labels.  Multiplication:

    X*X = a1 x X + a2 x^2 1

and comultiplication

    D(1) = 1(x)X + X(x)1 - a1 x 1(x)1,   D(X) = X(x)X + a2 x^2 1(x)1.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

ONE, X = 0, 1


class FrobeniusError(ValueError):
    pass


def _add(acc, key, v):
    v = acc.get(key, 0) + v
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _rational_root(a1, a2):
    # rational root of t^2 - a1 t - a2
    disc = a1 * a1 + 4 * a2
    if disc < 0:
        return None
    num, den = disc.numerator, disc.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    r = Fraction(rn, rd)
    # prefer the nonnegative root; (0,1) gives 1, (0,0) gives 0
    return (a1 + r) / 2


@dataclass(frozen=True)
class FrobeniusSystem:
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "a1", Fraction(self.a1))
        object.__setattr__(self, "a2", Fraction(self.a2))

    def __str__(self):
        return "%s,%s" % (self.a1, self.a2)

    @classmethod
    def parse(cls, text):
        try:
            a, b = text.split(",")
            return cls(Fraction(a.strip()), Fraction(b.strip()))
        except ValueError:
            raise FrobeniusError("expected 'a1,a2', got %r" % text)

    @property
    def basepoint_root(self):
        """
        Scalar lam with lam^2 = a1 lam + a2, used to send the basepoint X
        to lam x.  None when no rational root exists.
        """
        return _rational_root(self.a1, self.a2)

    # structure maps on basis labels; results are lists of (labels, k, coeff)

    def mult(self, l1, l2):
        if l1 == ONE:
            return [(l2, 0, Fraction(1))]
        if l2 == ONE:
            return [(l1, 0, Fraction(1))]
        out = []
        if self.a1:
            out.append((X, 1, self.a1))
        if self.a2:
            out.append((ONE, 2, self.a2))
        return out

    def comult(self, l):
        if l == ONE:
            out = [((ONE, X), 0, Fraction(1)), ((X, ONE), 0, Fraction(1))]
            if self.a1:
                out.append(((ONE, ONE), 1, -self.a1))
            return out
        out = [((X, X), 0, Fraction(1))]
        if self.a2:
            out.append(((ONE, ONE), 2, self.a2))
        return out

    def counit(self, l):
        return Fraction(1) if l == X else Fraction(0)

    # extensions to general elements

    def _mult_el(self, u, v):
        out = {}
        for (l1, k1), c1 in u.items():
            for (l2, k2), c2 in v.items():
                for l, k, c in self.mult(l1, l2):
                    _add(out, (l, k1 + k2 + k), c1 * c2 * c)
        return out

    def _apply(self, el, pos, width, fn):
        """Apply a map on factor ``pos`` of a tensor element of ``width``."""
        out = {}
        for (labels, k), c in el.items():
            for new, dk, dc in fn(labels[pos]):
                lab = labels[:pos] + tuple(new) + labels[pos + 1:]
                _add(out, (lab, k + dk), c * dc)
        return out

    def _mult_at(self, el, pos):
        out = {}
        for (labels, k), c in el.items():
            for l, dk, dc in self.mult(labels[pos], labels[pos + 1]):
                lab = labels[:pos] + (l,) + labels[pos + 2:]
                _add(out, (lab, k + dk), c * dc)
        return out

    def check_axioms(self):
        """
        Verify associativity, commutativity, coassociativity,
        cocommutativity, counit and the Frobenius relation on all basis
        elements.  Raises FrobeniusError on failure.
        """
        def comult(l):
            return [(pair, k, c) for pair, k, c in self.comult(l)]

        basis = (ONE, X)
        for a in basis:
            for b in basis:
                ab = self._mult_el({(a, 0): 1}, {(b, 0): 1})
                ba = self._mult_el({(b, 0): 1}, {(a, 0): 1})
                if ab != ba:
                    raise FrobeniusError("multiplication not commutative")
                for c in basis:
                    left = self._mult_el(ab, {(c, 0): 1})
                    bc = self._mult_el({(b, 0): 1}, {(c, 0): 1})
                    right = self._mult_el({(a, 0): 1}, bc)
                    if left != right:
                        raise FrobeniusError("multiplication not associative")
        for a in basis:
            d = {(pair, k): c for pair, k, c in comult(a)}
            swapped = {((p[1], p[0]), k): c for (p, k), c in d.items()}
            if d != swapped:
                raise FrobeniusError("comultiplication not cocommutative")
            left = self._apply(d, 0, 2, comult)
            right = self._apply(d, 1, 2, comult)
            if left != right:
                raise FrobeniusError("comultiplication not coassociative")
            # counit: (eps (x) id) D = id
            back = {}
            for (p, k), c in d.items():
                e = self.counit(p[0])
                if e:
                    _add(back, (p[1], k), c * e)
            if back != {(a, 0): Fraction(1)}:
                raise FrobeniusError("counit axiom fails")
        for a in basis:
            for b in basis:
                # D(m(a,b)) = (m (x) id)(a (x) D(b))
                left = {}
                for (l, k), c in self._mult_el({(a, 0): 1}, {(b, 0): 1}).items():
                    for pair, dk, dc in comult(l):
                        _add(left, (pair, k + dk), c * dc)
                t = {((a,) + pair, k): c for pair, k, c in comult(b)}
                right = self._mult_at(t, 0)
                if left != right:
                    raise FrobeniusError("Frobenius relation fails")
        return True


DEFAULT = FrobeniusSystem()
UNDEFORMED = FrobeniusSystem(0, 0)
