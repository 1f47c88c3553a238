"""Knot -> report pipeline with structural checks and an on-disk cache."""

import hashlib
import json
import os
from fractions import Fraction

from . import __version__
from .bifiltered import certify_bounded, homology_dimension
from .completion import CompletionError, complete
from .cube import CubeError, build_ckhpm, kh_table, khovanov_model, s_via_lee
from .frobenius import DEFAULT
from .linalg import fmt, frac
from .phi import (InvariantReport, PhiError, constraint_check, endpoint_slopes,
                  i_n, jump_list, m_invariant, slice_bounds)

CACHE_FORMAT = 1


class CheckError(RuntimeError):
    """A structural property that must hold for every knot failed."""


def structural_checks(model, kh):
    """Hard checks on a Khovanov-reduced model; raises CheckError."""
    if homology_dimension(model) != 1:
        raise CheckError("homology of the deformed complex is not 1-dimensional")
    if len(model) != sum(kh.values()):
        raise CheckError("model dimension differs from the Khovanov rank")
    if not certify_bounded(model, -3, 1):
        raise CheckError("model is not (-3, 1)-bounded")


def knot_model(diagram, sys=DEFAULT):
    """(Khovanov table, completed model, curve) for a diagram."""
    model = khovanov_model(diagram, sys)
    kh = kh_table(model)
    structural_checks(model, kh)
    completed, phi = complete(model, (diagram.canonical_key(), str(sys)))
    structural_checks(completed, kh)
    return kh, completed, phi


def i_indices(phi):
    ns = {1, 2}
    for a, _ in jump_list(phi):
        if 0 < a < 1:
            n = a / (4 * (1 - a))
            if n.denominator == 1:
                ns.add(int(n))
    return sorted(ns)


def build_report(diagram, name, sys=DEFAULT, alpha=None, lee=True):
    kh, completed, phi = knot_model(diagram, sys)
    s, t = endpoint_slopes(phi)
    if s.denominator != 1 or t.denominator != 1:
        raise PhiError("endpoint slopes are not integers")
    s_lee = s_via_lee(diagram) if lee else None
    if s_lee is not None and s_lee != s:
        raise CheckError("slope at 0 is %s but the Lee complex gives s = %d" % (s, s_lee))
    left, right = slice_bounds(phi)
    rep = InvariantReport(
        knot=name, phi=phi, s=int(s), t=int(t), s_lee=s_lee,
        jumps=jump_list(phi),
        i_values={n: i_n(phi, n) for n in i_indices(phi)},
        slice_bound=max(left, right), slice_bound_left=left, slice_bound_right=right,
        constraint=constraint_check(phi, kh), kh=dict(kh),
        frobenius=str(sys), model_dim=len(completed))
    if alpha is not None:
        alpha = frac(alpha)
        v = phi(alpha)
        if m_invariant(completed, alpha) != v:
            raise PhiError("pointwise value at %s disagrees with the curve" % alpha)
        rep.alpha_value = (alpha, v)
    return rep


def cache_key(diagram, sys, alpha, lee):
    payload = json.dumps({
        "pd": [list(t) for t in diagram.canonical_key()],
        "frobenius": str(sys),
        "alpha": None if alpha is None else fmt(frac(alpha)),
        "lee": bool(lee),
        "format": CACHE_FORMAT,
        "version": __version__,
    }, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def report_dict(diagram, name, sys=DEFAULT, alpha=None, lee=True, cache_dir=None):
    """Report as a plain dict, served from the cache when possible."""
    path = None
    if cache_dir:
        path = os.path.join(cache_dir, cache_key(diagram, sys, alpha, lee) + ".json")
        if os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            data["knot"] = name
            return data
    data = build_report(diagram, name, sys, alpha, lee).to_dict()
    if path:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = path + ".tmp%d" % os.getpid()
        with open(tmp, "w") as fh:
            json.dump(data, fh, sort_keys=True)
        os.replace(tmp, path)
    return data


def render(data):
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def breakpoints_of(data):
    return [(Fraction(b["alpha"]), Fraction(b["value"])) for b in data["phi"]["breakpoints"]]


COMPUTATION_ERRORS = (CubeError, CompletionError, PhiError, CheckError)
