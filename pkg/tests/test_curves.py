import random
from fractions import Fraction as F

import pytest

from gammacurves.curves import (
    CurveError, PLCurve, PLFunction, fresh_abscissas, graph_curve,
    zero_section,
)


def random_pl_function(rng, period=4, max_breaks=8, denom=8, spread=6):
    n = rng.randrange(2, max_breaks + 1)
    slots = rng.sample(range(1, denom * int(period)), n)
    pts = [(F(s, denom), F(rng.randrange(-spread, spread + 1), 4)) for s in slots]
    f = PLFunction(pts, period)
    # reject flat or repeated-slope adjacencies, simplest to retry
    sl = [s for _, s in f.slopes()]
    if any(s == 0 for s in sl) or any(a == b for a, b in zip(sl, sl[1:] + sl[:1])):
        return random_pl_function(rng, period, max_breaks, denom, spread)
    return f


def test_zero_section_primitive_is_brane_constant():
    z = zero_section(4, F(7, 3))
    assert z.primitive((F(1, 2), F(0))) == F(7, 3)
    assert z.primitive((F(3), F(0))) == F(7, 3)
    assert z.translate_brane(F(1)).primitive((F(3), F(0))) == F(7, 3) + 1


def test_graph_curve_primitive_matches_function():
    f = PLFunction([(0, 0), (1, 1), (2, F(1, 4)), (3, F(3, 4))], 4)
    c = graph_curve(f)
    assert c.signed_area() == 0
    for q in (F(0), F(1, 2), F(1), F(5, 2), F(7, 2)):
        s = f.slope_at(q + F(1, 1000)) if any(q == b for b, _ in f.breakpoints) \
            else f.slope_at(q)
        assert c.primitive((q, s)) == f.value(q)


def test_graph_curve_random_primitives():
    rng = random.Random(3)
    for _ in range(20):
        f = random_pl_function(rng)
        c = graph_curve(f)
        assert c.signed_area() == 0
        for qb, vb in f.breakpoints:
            s = f.slope_at(qb)
            assert c.primitive((qb, s)) == vb


def test_curve_validation_errors():
    with pytest.raises(CurveError, match="exact"):
        PLCurve([(0, 1)], 4)  # constant p=1 has area 4
    # exact but with an X-crossing at (1,1)
    with pytest.raises(CurveError, match="embedded"):
        PLCurve([(0, 0), (2, 2), (0, 2), (2, 0)], 4)


def test_negate_is_involution_and_flips_primitive():
    f = PLFunction([(0, 0), (1, 1), (2, F(1, 4)), (3, F(3, 4))], 4)
    c = graph_curve(f)
    n = c.negate()
    assert n.negate().same_geometry(c)
    assert n.negate().brane_constant == c.brane_constant
    pt = (F(1, 2), f.slope_at(F(1, 2)))
    assert n.primitive((pt[0], -pt[1])) == -c.primitive(pt)


def test_shear_shifts_primitive_by_minus_g():
    rng = random.Random(5)
    for _ in range(10):
        f = random_pl_function(rng)
        c = graph_curve(f)
        betas = fresh_abscissas([c], 2, c.period)
        g = PLFunction([(betas[0], 0), (betas[1], F(1, 8))], c.period)
        sheared = c.shear(g)
        assert sheared.signed_area() == 0
        # shearing gr(df) by g gives gr(d(f+g)) with primitive f + g
        assert sheared.same_geometry(graph_curve(f + g))
        for qb, vb in f.breakpoints:
            s = f.slope_at(qb)
            new_pt = (qb, s + g.slope_at(qb))
            assert sheared.primitive(new_pt) == vb + g.value(qb)
            assert graph_curve(f + g).primitive(new_pt) == vb + g.value(qb)


def test_point_location_and_distance():
    z = zero_section(4)
    assert z.contains_point((F(17, 5), F(0)))
    assert not z.contains_point((F(1), F(1, 10)))
    assert z.dist2_to((F(1), F(1, 10))) == F(1, 100)
    # cylinder wrap: q = -1/2 is q = 7/2
    assert z.dist2_to((F(-1, 2), F(1, 2))) == F(1, 4)


def test_fresh_abscissas_avoid_structure():
    f = PLFunction([(0, 0), (1, 1), (2, F(1, 4)), (3, F(3, 4))], 4)
    c = graph_curve(f)
    qs = fresh_abscissas([c], 4, 4)
    verts = {v[0] % 4 for v in c.vertices}
    assert all(q not in verts for q in qs)
    assert len(set(qs)) == 4
