"""Exact piecewise-linear Lagrangian curves in the annulus T*S^1.

A curve is a closed embedded PL loop winding once around the base circle,
stored by its vertices in universal-cover coordinates (q may decrease along
tongues; the loop closes at q0 + period).  Exactness (vanishing signed
area) makes the primitive of p dq a well-defined function on the curve,
pinned by an additive brane constant at vertex 0.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

Point = Tuple[Fraction, Fraction]


class CurveError(ValueError):
    pass


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _collinear(a: Point, b: Point, c: Point) -> bool:
    return cross(_sub(b, a), _sub(c, a)) == 0


def segment_intersection(a0, a1, b0, b1):
    """Proper interior crossing of two segments, or a degeneracy flag.

    Returns (kind, data): ("cross", (pt, t, u)) for a transversal interior
    crossing, ("touch", None) when they meet at an endpoint or tangentially,
    ("overlap", None) for collinear overlap, ("none", None) otherwise.
    """
    da, db = _sub(a1, a0), _sub(b1, b0)
    denom = cross(da, db)
    w = _sub(b0, a0)
    if denom == 0:
        if cross(w, da) != 0:
            return ("none", None)
        axis = 0 if da[0] != 0 else 1
        if da[axis] == 0:
            return ("none", None)
        ta = sorted([a0[axis], a1[axis]])
        tb = sorted([b0[axis], b1[axis]])
        lo, hi = max(ta[0], tb[0]), min(ta[1], tb[1])
        if lo < hi:
            return ("overlap", None)
        if lo == hi:
            return ("touch", None)
        return ("none", None)
    t = cross(w, db) / denom
    u = cross(w, da) / denom
    if 0 < t < 1 and 0 < u < 1:
        pt = (a0[0] + t * da[0], a0[1] + t * da[1])
        return ("cross", (pt, t, u))
    if 0 <= t <= 1 and 0 <= u <= 1:
        return ("touch", None)
    return ("none", None)


def point_on_segment(pt: Point, a: Point, b: Point) -> Optional[Fraction]:
    """Parameter t in [0,1] if pt lies on segment ab, else None."""
    d = _sub(b, a)
    w = _sub(pt, a)
    if cross(d, w) != 0:
        return None
    axis = 0 if d[0] != 0 else 1
    if d[axis] == 0:
        return Fraction(0) if pt == a else None
    t = w[axis] / d[axis]
    return t if 0 <= t <= 1 else None


def point_segment_dist2(pt: Point, a: Point, b: Point) -> Fraction:
    d = _sub(b, a)
    w = _sub(pt, a)
    dd = d[0] * d[0] + d[1] * d[1]
    if dd == 0:
        return w[0] * w[0] + w[1] * w[1]
    t = (w[0] * d[0] + w[1] * d[1]) / dd
    t = max(Fraction(0), min(Fraction(1), t))
    e = (w[0] - t * d[0], w[1] - t * d[1])
    return e[0] * e[0] + e[1] * e[1]


class PLFunction:
    """Continuous piecewise-linear function on the circle R/(period Z)."""

    def __init__(self, breakpoints: Sequence[Tuple[Fraction, Fraction]], period):
        self.period = _fr(period)
        pts = sorted((_fr(q) % self.period, _fr(v)) for q, v in breakpoints)
        if len({q for q, _ in pts}) != len(pts):
            raise CurveError("duplicate breakpoints")
        if not pts:
            raise CurveError("need at least one breakpoint")
        self.breakpoints = tuple(pts)

    def _pairs(self):
        pts = self.breakpoints
        for i, (q, v) in enumerate(pts):
            if i + 1 < len(pts):
                q2, v2 = pts[i + 1]
            else:
                q2, v2 = pts[0][0] + self.period, pts[0][1]
            yield (q, v, q2, v2)

    def slopes(self):
        """[(start abscissa, slope)] of each linear piece, cyclic order."""
        return [(q, (v2 - v) / (q2 - q)) for q, v, q2, v2 in self._pairs()]

    def slope_at(self, q) -> Fraction:
        """Slope of the piece containing q (right-continuous at breaks)."""
        qm = _fr(q) % self.period
        sl = self.slopes()
        cur = sl[-1][1]
        for qs, s in sl:
            if qs <= qm:
                cur = s
            else:
                break
        return cur

    def value(self, q) -> Fraction:
        qm = _fr(q) % self.period
        for qa, va, qb, vb in self._pairs():
            if qa <= qm <= qb:
                return va + (vb - va) * (qm - qa) / (qb - qa)
        # qm below the first breakpoint: wrap piece from the last one
        qa, va = self.breakpoints[-1]
        qa -= self.period
        qb, vb = self.breakpoints[0]
        return va + (vb - va) * (qm - qa) / (qb - qa)

    def osc(self) -> Fraction:
        vals = [v for _, v in self.breakpoints]
        return max(vals) - min(vals)

    def __add__(self, other):
        qs = sorted({q for q, _ in self.breakpoints}
                    | {q for q, _ in other.breakpoints})
        return PLFunction([(q, self.value(q) + other.value(q)) for q in qs],
                          self.period)

    def __neg__(self):
        return PLFunction([(q, -v) for q, v in self.breakpoints], self.period)

    def __sub__(self, other):
        return self + (-other)


class PLCurve:
    """Closed embedded winding-1 exact PL curve with a chosen primitive."""

    def __init__(self, vertices: Iterable[Point], period, brane_constant=0,
                 check_embedding=True):
        self.period = _fr(period)
        if self.period <= 0:
            raise CurveError("period must be positive")
        self.brane_constant = _fr(brane_constant)
        verts = [(_fr(q), _fr(p)) for q, p in vertices]
        if not verts:
            raise CurveError("curve needs at least one vertex")
        verts = self._merge_collinear(verts)
        shift = verts[0][0] % self.period - verts[0][0]
        self.vertices = tuple((q + shift, p) for q, p in verts)
        self._validate(check_embedding)
        self._cum = self._prefix_integrals()

    def _merge_collinear(self, verts):
        out = list(verts)
        changed = True
        while changed and len(out) > 1:
            changed = False
            n = len(out)
            for i in range(n):
                a = out[i - 1] if i > 0 else (out[-1][0] - self.period, out[-1][1])
                b = out[i]
                c = out[i + 1] if i + 1 < n else (out[0][0] + self.period, out[0][1])
                if a == b or _collinear(a, b, c):
                    del out[i]
                    changed = True
                    break
        return out

    def segments(self):
        """Directed cover segments, closing at (q0 + period, p0)."""
        vs = list(self.vertices)
        vs.append((vs[0][0] + self.period, vs[0][1]))
        return [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    def _shift_range(self, sa, sb):
        qa = sorted([sa[0][0], sa[1][0]])
        qb = sorted([sb[0][0], sb[1][0]])
        lo = (qa[0] - qb[1]) / self.period
        hi = (qa[1] - qb[0]) / self.period
        return range(math.ceil(lo), math.floor(hi) + 1)

    def _validate(self, check_embedding):
        segs = self.segments()
        for a, b in segs:
            if a == b:
                raise CurveError("zero-length segment")
        if self.signed_area() != 0:
            raise CurveError(f"curve is not exact: signed area {self.signed_area()}")
        if not check_embedding:
            return
        n = len(segs)
        for i in range(n):
            a0, a1 = segs[i]
            for j in range(i, n):
                b0, b1 = segs[j]
                for k in self._shift_range(segs[i], segs[j]):
                    if i == j and k == 0:
                        continue
                    off = k * self.period
                    kind, _ = segment_intersection(
                        a0, a1, (b0[0] + off, b0[1]), (b1[0] + off, b1[1]))
                    if kind == "none":
                        continue
                    adjacent = (
                        (k == 0 and j == i + 1)
                        or (k == -1 and i == 0 and j == n - 1)
                        or (n == 1 and abs(k) == 1))
                    if kind == "touch" and adjacent:
                        continue
                    raise CurveError(
                        f"curve is not embedded: segments {i} and {j} "
                        f"(period shift {k}) {kind}")

    # -- geometry --------------------------------------------------------------

    def signed_area(self) -> Fraction:
        """Total integral of p dq over one period."""
        return sum(((a[1] + b[1]) * (b[0] - a[0])) / 2 for a, b in self.segments())

    def _prefix_integrals(self):
        cum = [Fraction(0)]
        for a, b in self.segments():
            cum.append(cum[-1] + (a[1] + b[1]) * (b[0] - a[0]) / 2)
        return cum

    def locate(self, point: Point):
        """(segment index, t, cover point) for a point on the curve."""
        q, p = _fr(point[0]), _fr(point[1])
        for i, (a, b) in enumerate(self.segments()):
            lo, hi = min(a[0], b[0]), max(a[0], b[0])
            for k in range(math.ceil((lo - q) / self.period),
                           math.floor((hi - q) / self.period) + 1):
                cand = (q + k * self.period, p)
                t = point_on_segment(cand, a, b)
                if t is not None:
                    return (i, t, cand)
        return None

    def contains_point(self, point: Point) -> bool:
        return self.locate(point) is not None

    def primitive(self, point: Point) -> Fraction:
        """Value of the primitive f_L at a point on the curve."""
        loc = self.locate(point)
        if loc is None:
            raise CurveError(f"point {point} not on curve")
        i, t, cand = loc
        a, _ = self.segments()[i]
        partial = (a[1] + cand[1]) * (cand[0] - a[0]) / 2
        return self.brane_constant + self._cum[i] + partial

    def dist2_to(self, point: Point) -> Fraction:
        """Squared cylinder distance from a point to the curve."""
        q, p = _fr(point[0]), _fr(point[1])
        best = None
        for a, b in self.segments():
            for k in (-1, 0, 1):
                d2 = point_segment_dist2((q + k * self.period, p), a, b)
                if best is None or d2 < best:
                    best = d2
        return best

    def p_range(self):
        ps = [p for _, p in self.vertices]
        return min(ps), max(ps)

    # -- operations ------------------------------------------------------------

    def translate_brane(self, c) -> "PLCurve":
        return PLCurve(self.vertices, self.period,
                       self.brane_constant + _fr(c), check_embedding=False)

    def negate(self) -> "PLCurve":
        """The antisymplectic image (q,p) -> (q,-p) with negated primitive."""
        return PLCurve([(q, -p) for q, p in self.vertices], self.period,
                       -self.brane_constant, check_embedding=False)

    def shear(self, g: PLFunction) -> "PLCurve":
        """Fiberwise push (q,p) -> (q, p + g'(q)); the primitive gains g.

        This is the time-1 flow of H(q,p) = -g(q), so the induced primitive
        is f_L + g.  The push is a fiber-preserving homeomorphism of the
        annulus, so the image stays embedded; it inserts vertical jumps at
        the breakpoints of g, which therefore must avoid this curve's
        vertices and vertical segments.
        """
        if g.period != self.period:
            raise CurveError("shear period mismatch")
        breaks = [q for q, _ in g.breakpoints]
        forbidden = {q % self.period for q, _ in self.vertices}
        for a, b in self.segments():
            if a[0] == b[0]:
                forbidden.add(a[0] % self.period)
        for beta in breaks:
            if beta % self.period in forbidden:
                raise CurveError(f"shear breakpoint {beta} hits the curve's skeleton")

        verts = []
        for a, b in self.segments():
            if a[0] == b[0]:
                s = g.slope_at(a[0])
                verts.append((a[0], a[1] + s))
                verts.append((b[0], b[1] + s))
                continue
            lo, hi = min(a[0], b[0]), max(a[0], b[0])
            cuts = []
            for beta in breaks:
                k0 = math.ceil((lo - beta) / self.period)
                k1 = math.floor((hi - beta) / self.period)
                for k in range(k0, k1 + 1):
                    c = beta + k * self.period
                    if lo < c < hi:
                        cuts.append(c)
            cuts.sort(reverse=(a[0] > b[0]))
            d = _sub(b, a)
            pts = [a] + [(c, a[1] + (c - a[0]) / d[0] * d[1]) for c in cuts] + [b]
            for u, v in zip(pts, pts[1:]):
                s = g.slope_at((u[0] + v[0]) / 2)
                verts.append((u[0], u[1] + s))
                verts.append((v[0], v[1] + s))
        out = PLCurve(verts, self.period, 0, check_embedding=False)
        ref = self._reference_point(breaks)
        s = g.slope_at(ref[0])
        new_ref = (ref[0], ref[1] + s)
        want = self.primitive(ref) + g.value(ref[0])
        have = out.primitive(new_ref)
        return PLCurve(out.vertices, out.period, want - have,
                       check_embedding=False)

    def _reference_point(self, avoid_qs):
        """Interior point of a non-vertical segment off the given abscissas."""
        for a, b in self.segments():
            if a[0] == b[0]:
                continue
            for num, den in ((1, 2), (1, 4), (3, 4), (1, 8), (3, 8), (5, 8),
                             (7, 8), (1, 16), (5, 16)):
                t = Fraction(num, den)
                q = a[0] + t * (b[0] - a[0])
                if all((q - beta) % self.period != 0 for beta in avoid_qs):
                    return (q, a[1] + t * (b[1] - a[1]))
        raise CurveError("no reference point clear of shear breakpoints")

    def canonical_vertices(self):
        """Vertex cycle rotated/lifted to a canonical representative."""
        n = len(self.vertices)
        best = None
        for r in range(n):
            rot = list(self.vertices[r:]) + [
                (q + self.period, p) for q, p in self.vertices[:r]]
            shift = rot[0][0] % self.period - rot[0][0]
            rot = tuple((q + shift, p) for q, p in rot)
            if best is None or rot < best:
                best = rot
        return best

    def same_geometry(self, other: "PLCurve") -> bool:
        return (self.period == other.period
                and self.canonical_vertices() == other.canonical_vertices())

    def __repr__(self):
        return (f"PLCurve({len(self.vertices)} vertices, period {self.period}, "
                f"brane {self.brane_constant})")


def zero_section(period=4, brane_constant=0) -> PLCurve:
    return PLCurve([(Fraction(0), Fraction(0))], period, brane_constant)


def graph_curve(f: PLFunction) -> PLCurve:
    """The graph of df as a PL curve, with primitive equal to f.

    PL f has piecewise-constant derivative, so the graph is a chain of
    horizontal segments joined by vertical jumps at the breakpoints.
    """
    sl = f.slopes()
    if all(s == sl[0][1] for _, s in sl):
        # linear and periodic means constant
        q0 = f.breakpoints[0][0]
        return PLCurve([(q0, Fraction(0))], f.period, f.breakpoints[0][1])
    verts = []
    n = len(sl)
    for i in range(n):
        q = sl[i][0]
        prev, cur = sl[i - 1][1], sl[i][1]
        if prev != cur:
            verts.append((q, prev))
        verts.append((q, cur))
    curve = PLCurve(verts, f.period, 0)
    q0 = curve.vertices[0][0]
    have = curve.primitive(curve.vertices[0])
    return PLCurve(curve.vertices, f.period, f.value(q0) - have,
                   check_embedding=False)


def fresh_abscissas(curves, count, period, start=1, denominator=257):
    """Deterministic abscissas avoiding vertices and verticals mod period."""
    period = _fr(period)
    forbidden = set()
    for c in curves:
        for q, _ in c.vertices:
            forbidden.add(q % period)
        for a, b in c.segments():
            if a[0] == b[0]:
                forbidden.add(a[0] % period)
    out = []
    denom = denominator
    i = start
    while len(out) < count:
        q = period * Fraction(i % denom, denom)
        if q not in forbidden and q not in out:
            out.append(q)
        i += 2
        if i > start + 4 * denom:
            denom *= 2
            i = start
    return out
