import pytest

from khphi.bifiltered import SemiBifilteredComplex, certify_bounded, homology_dimension
from khphi.completion import (CompletionError, accept, complete, horizontal_homology,
                              seed_for, unknown_entries)
from khphi.cube import khovanov_model
from khphi.knot import pretzel, torus_knot
from khphi.phi import phi_curve
from khphi.reference import pretzel_phi


def test_seed_is_deterministic():
    assert seed_for(("k", "0,1")) == seed_for(("k", "0,1"))
    assert seed_for(("k", "0,1")) != seed_for(("k", "1,2"))


def test_staircase_is_admissible(staircase):
    assert horizontal_homology(staircase) == {0: 1}
    assert accept(staircase)


def test_unknown_entries_respect_bounds():
    m = khovanov_model(pretzel(-2, 3, 5))
    for i, j in unknown_entries(m):
        dh = m.h[j] - m.h[i]
        assert dh >= 3 and dh % 2 == 1
        assert m.g[j] - m.g[i] >= -3


def test_trefoil_completion():
    m = khovanov_model(torus_knot(2, 3))
    c, phi = complete(m, "t23")
    assert accept(c)
    assert phi.points == [(0, 0), (1, 2), (2, 0)]


def test_pretzel_completion():
    m = khovanov_model(pretzel(-2, 3, 5))
    c, phi = complete(m, "p235")
    assert c.d_squared_is_zero()
    assert certify_bounded(c, -3, 1)
    assert homology_dimension(c) == 1
    assert phi == pretzel_phi(1, 3, 5) == phi_curve(c)
    # the added entries all sit in the dh = 3, dg = -3 layer
    added = {(c.g[j] - c.g[i], c.h[j] - c.h[i]) for i, j, _ in c.entries()} - \
            {(m.g[j] - m.g[i], m.h[j] - m.h[i]) for i, j, _ in m.entries()}
    assert added == {(-3, 3)}
    # deterministic for a fixed key
    assert complete(m, "p235")[0] == c


def test_no_admissible_completion():
    two = SemiBifilteredComplex([("x", 0, 0), ("y", 2, 0)])
    with pytest.raises(CompletionError):
        complete(two, "two", tries=5)


def test_rejects_model_with_higher_layer(staircase):
    with pytest.raises(CompletionError):
        complete(staircase, "s")
