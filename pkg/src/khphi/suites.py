"""Verification suites run by `khphi verify`."""

from fractions import Fraction
from functools import lru_cache

from .bifiltered import certify_bounded, homology_dimension, tensor
from .cube import build_ckhpm, khovanov_homology, s_via_lee
from .frobenius import DEFAULT, UNDEFORMED, FrobeniusSystem
from .knot import UNKNOT, connected_sum, from_specifier, mirror, parse_pd
from .phi import (constraint_check, crossing_change_monotonicity_check,
                  endpoint_slopes, i_n, jump_list, phi_curve)
from .pipeline import knot_model
from .reference import pretzel_phi, torus_phi_conjectured

TORUS = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)]


@lru_cache(maxsize=None)
def computed(spec):
    """(kh, completed model, phi) for a specifier, memoized per process."""
    return knot_model(from_specifier(spec))


def _phi(spec):
    return computed(spec)[2]


def suite_pretzel(long=False):
    res = []
    cases = [(1, 3, 5), (1, 3, 7)] + ([(2, 5, 7)] if long else [])
    for n, a, b in cases:
        spec = "pretzel:%d,%d,%d" % (-2 * n, a, b)
        got, want = _phi(spec), pretzel_phi(n, a, b)
        res.append(("P(%d,%d,%d) curve" % (-2 * n, a, b), got == want, "%r" % got))
    phi = _phi("pretzel:-2,3,7")
    res.append(("i_1(P(-2,3,7)) = -1", i_n(phi, 1) == -1, ""))
    res.append(("i_2(P(-2,3,7)) = 0", i_n(phi, 2) == 0, ""))
    s, t = endpoint_slopes(phi)
    res.append(("P(-2,3,7) s=10 t=8", (s, t) == (10, 8), "s=%s t=%s" % (s, t)))
    return res


def suite_torus(long=False):
    res = []
    for p, q in TORUS:
        got, want = _phi("torus:%d,%d" % (p, q)), torus_phi_conjectured(p, q)
        res.append(("T(%d,%d) matches conjecture" % (p, q), got == want,
                    "computed %r predicted %r" % (got, want)))
    return res


def suite_axioms(long=False):
    res = []
    for sysobj in (DEFAULT, UNDEFORMED, FrobeniusSystem(1, 2)):
        try:
            ok = sysobj.check_axioms()
        except ValueError:
            ok = False
        res.append(("Frobenius axioms for (%s)" % sysobj, ok, ""))
    for spec in ("torus:2,3", "torus:3,4", "pretzel:-2,3,5"):
        d = from_specifier(spec)
        cube = build_ckhpm(d, check=False)
        res.append(("d^2 = 0 on cube of %s" % spec, cube.d_squared_is_zero(), ""))
        res.append(("cube of %s is (-3,1)-bounded" % spec, certify_bounded(cube, -3, 1), ""))
        kh, model, phi = computed(spec)
        res.append(("homology of %s model is 1-dimensional" % spec, homology_dimension(model) == 1, ""))
        res.append(("model dim of %s equals Kh rank" % spec, len(model) == sum(kh.values()), ""))
        res.append(("%s: phi(0) = phi(2) = 0" % spec, phi(0) == 0 and phi(2) == 0, ""))
        even = all(((1 - a) * j).denominator == 1 and ((1 - a) * j).numerator % 2 == 0
                   for a, j in jump_list(phi))
        res.append(("%s: weighted jumps are even" % spec, even, ""))
    return res


def suite_invariance(long=False):
    res = []
    pairs = [("pretzel:-2,3,5", "torus:3,5"), ("torus:2,3", "torus:3,2")]
    for a, b in pairs:
        res.append(("%s vs %s" % (a, b), _phi(a) == _phi(b), ""))
    tref = parse_pd("X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)")
    res.append(("trefoil PD vs mirror:torus:2,3",
                knot_model(tref)[2] == _phi("mirror:torus:2,3"), ""))
    kinked = parse_pd("X(1,4,2,5);X(3,6,4,1);X(5,2,6,7);X(7,8,8,3)")
    res.append(("trefoil with a kink", knot_model(kinked)[2] == knot_model(tref)[2], ""))
    base = khovanov_homology(tref)
    same = all(khovanov_homology(tref.with_basepoint(e)) == base for e in range(1, 7))
    res.append(("Kh independent of basepoint", same, ""))
    for spec in ("torus:2,3", "torus:3,4", "pretzel:-2,3,5"):
        res.append(("mirror antisymmetry %s" % spec,
                    _phi("mirror:" + spec) == -_phi(spec), ""))
    t = from_specifier("torus:2,3")
    direct = knot_model(connected_sum(t, t))[2]
    model = computed("torus:2,3")[1]
    via_tensor = phi_curve(tensor(model, model))
    res.append(("T(2,3)#T(2,3) direct = 2 phi", direct == _phi("torus:2,3").scale(2), ""))
    res.append(("T(2,3)#T(2,3) via tensor = 2 phi", via_tensor == _phi("torus:2,3").scale(2), ""))
    for spec in ("unknot", "torus:2,3", "mirror:torus:2,3", "torus:2,5", "torus:3,4", "pretzel:-2,3,5"):
        s = endpoint_slopes(_phi(spec))[0]
        res.append(("slope at 0 equals Lee s for %s" % spec,
                    s == s_via_lee(from_specifier(spec)), "s=%s" % s))
    return res


def suite_bounds(long=False):
    res = []
    for p, q in TORUS:
        spec = "torus:%d,%d" % (p, q)
        phi = _phi(spec)
        g4 = Fraction((p - 1) * (q - 1), 2)
        ok = all(abs(v) <= 2 * g4 * (1 - abs(a - 1)) for a, v in phi.points)
        res.append(("slice bound for T(%d,%d), g4=%s" % (p, q, g4), ok, ""))
    for spec in ("unknot", "torus:2,3", "torus:3,4", "torus:3,5", "pretzel:-2,3,7"):
        kh, _, phi = computed(spec)
        res.append(("homology constraint for %s" % spec, constraint_check(phi, kh)["pass"], ""))
    minus, zero, plus = _phi("mirror:torus:2,3"), _phi("unknot"), _phi("torus:2,3")
    res.append(("crossing change: mirror trefoil <= unknot",
                crossing_change_monotonicity_check(minus, zero), ""))
    res.append(("crossing change: unknot <= trefoil",
                crossing_change_monotonicity_check(zero, plus), ""))
    return res


SUITES = {
    "pretzel": suite_pretzel,
    "torus-conjecture": suite_torus,
    "axioms": suite_axioms,
    "invariance": suite_invariance,
    "bounds": suite_bounds,
}


def run_suite(name, long=False):
    return SUITES[name](long=long)
