"""Exact arrangements of two PL strands on the annulus.

Builds the planar subdivision induced by a transverse pair (curve/curve or
curve/fiber), traces its faces through a rotation system, and extracts the
bigon faces ("lunes"): disk faces bounded by exactly one arc of each strand
with two distinct crossing corners.  These faces drive the combinatorial
Floer differential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Optional, Tuple

from .curves import PLCurve, Point, cross, segment_intersection

Q_EPS = None  # no tolerances anywhere: everything is exact


class NonTransverseError(ValueError):
    """The two strands touch, overlap, or meet a vertex."""


@dataclass
class Crossing:
    point: Point                       # canonical cylinder representative
    index: int
    pos: dict = field(default_factory=dict)       # strand -> (seg, t, cover pt)
    tangent: dict = field(default_factory=dict)   # strand -> direction vector


@dataclass
class Lune:
    corners: Tuple[int, int]           # crossing indices
    polygon: List[Point]               # closed CCW cover polygon
    area: Fraction


class _Strand:
    def __init__(self, sid: int, points: List[Point], closed: bool, period):
        self.sid = sid
        self.points = points
        self.closed = closed
        self.period = period

    def segments(self):
        return [(self.points[i], self.points[i + 1])
                for i in range(len(self.points) - 1)]


def _strand_of_curve(sid: int, curve: PLCurve) -> _Strand:
    pts = list(curve.vertices)
    pts.append((pts[0][0] + curve.period, pts[0][1]))
    return _Strand(sid, pts, True, curve.period)


def _strand_of_fiber(sid: int, x: Fraction, lo: Fraction, hi: Fraction,
                     period) -> _Strand:
    return _Strand(sid, [(x, lo), (x, hi)], False, period)


def _shift_range(sa, sb, period):
    qa = sorted([sa[0][0], sa[1][0]])
    qb = sorted([sb[0][0], sb[1][0]])
    lo = (qa[0] - qb[1]) / period
    hi = (qa[1] - qb[0]) / period
    return range(math.ceil(lo), math.floor(hi) + 1)


def _find_crossings(A: _Strand, B: _Strand, period) -> List[Crossing]:
    crossings: List[Crossing] = []
    seen = set()
    for i, (a0, a1) in enumerate(A.segments()):
        da = (a1[0] - a0[0], a1[1] - a0[1])
        for j, (b0, b1) in enumerate(B.segments()):
            db = (b1[0] - b0[0], b1[1] - b0[1])
            for k in _shift_range((a0, a1), (b0, b1), period):
                off = k * period
                kind, data = segment_intersection(
                    a0, a1, (b0[0] + off, b0[1]), (b1[0] + off, b1[1]))
                if kind == "none":
                    continue
                if kind != "cross":
                    raise NonTransverseError(
                        f"non-transverse pair: strand segments {i} and {j} "
                        f"(shift {k}) {kind}")
                pt, t, u = data
                key = (pt[0] % period, pt[1])
                if key in seen:
                    raise NonTransverseError(
                        f"degenerate multiple crossing at {key}")
                seen.add(key)
                c = Crossing(point=key, index=len(crossings))
                c.pos[A.sid] = (i, t, pt)
                c.pos[B.sid] = (j, u, (pt[0] - off, pt[1]))
                c.tangent[A.sid] = da
                c.tangent[B.sid] = db
                crossings.append(c)
    return crossings


class _Arc:
    __slots__ = ("strand", "points", "tail_key", "head_key")

    def __init__(self, strand, points):
        self.strand = strand
        self.points = points

    def dq(self):
        return self.points[-1][0] - self.points[0][0]


def _split_closed(strand: _Strand, events, period) -> List[_Arc]:
    """Arcs of a closed strand between consecutive crossings."""
    assert events
    order = sorted(events, key=lambda e: (e[0], e[1]))
    segs = strand.segments()
    n = len(segs)
    arcs = []
    for r in range(len(order)):
        i1, t1, p1 = order[r]
        if r + 1 < len(order):
            i2, t2, p2 = order[r + 1]
            lift = Fraction(0)
        else:
            i2, t2, p2 = order[0]
            lift = period
        pts = [p1]
        if (i1, t1) < (i2, t2) if r + 1 < len(order) else False:
            pass
        if r + 1 < len(order) and i1 == i2:
            pts.append(p2)
        else:
            # walk to the end of segment i1, across vertices, into segment i2
            cur = i1
            off = Fraction(0)
            while True:
                end = segs[cur][1]
                pts.append((end[0] + off, end[1]))
                cur += 1
                if cur == n:
                    cur = 0
                    off += period
                if cur == i2 and off == lift:
                    break
            pts.append((p2[0] + lift, p2[1]))
        arcs.append(_Arc(strand, pts))
    return arcs


def _split_open(strand: _Strand, events) -> List[_Arc]:
    """Arcs of an open strand, including the two endpoint stubs."""
    order = sorted(events, key=lambda e: (e[0], e[1]))
    pts0 = strand.points[0]
    pts1 = strand.points[-1]
    arcs = []
    prev = pts0
    for (_, _, p) in order:
        arcs.append(_Arc(strand, [prev, p]))
        prev = p
    arcs.append(_Arc(strand, [prev, pts1]))
    return arcs


def _dir_cmp(u, v):
    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1
    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross(u, v)
    if c == 0:
        raise NonTransverseError("coincident directions at a crossing")
    return -1 if c > 0 else 1


@dataclass
class _HalfEdge:
    arc: _Arc
    forward: bool
    index: int
    tail: tuple = None
    head: tuple = None
    twin: int = -1
    next: int = -1

    def pts(self):
        return self.arc.points if self.forward else self.arc.points[::-1]

    def out_dir(self):
        p = self.pts()
        return (p[1][0] - p[0][0], p[1][1] - p[0][1])

    def dq(self):
        return self.arc.dq() if self.forward else -self.arc.dq()


@dataclass
class Face:
    halfedges: List[int]
    dq: Fraction

    @property
    def is_disk(self):
        return self.dq == 0


class Arrangement:
    """Subdivision of the annulus by two transverse strands."""

    def __init__(self, curve1: PLCurve, other, period=None,
                 fiber: Optional[Fraction] = None):
        self.period = curve1.period
        A = _strand_of_curve(0, curve1)
        if fiber is None:
            if other.period != curve1.period:
                raise NonTransverseError("period mismatch")
            B = _strand_of_curve(1, other)
        else:
            lo = min(p for _, p in curve1.vertices) - 1
            hi = max(p for _, p in curve1.vertices) + 1
            B = _strand_of_fiber(1, Fraction(fiber) % self.period, lo, hi,
                                 self.period)
        self.strands = (A, B)
        self.crossings = _find_crossings(A, B, self.period)
        self._build()

    def _build(self):
        A, B = self.strands
        ev = {0: [], 1: []}
        for c in self.crossings:
            for sid in (0, 1):
                i, t, pt = c.pos[sid]
                ev[sid].append((i, t, pt))
        arcs: List[_Arc] = []
        if self.crossings:
            arcs += _split_closed(A, ev[0], self.period)
            arcs += (_split_closed(B, ev[1], self.period) if B.closed
                     else _split_open(B, ev[1]))
        else:
            raise NonTransverseError("strands are disjoint")

        def key_of(p):
            return (p[0] % self.period, p[1])

        self.halfedges: List[_HalfEdge] = []
        for arc in arcs:
            i = len(self.halfedges)
            h1 = _HalfEdge(arc, True, i)
            h2 = _HalfEdge(arc, False, i + 1)
            h1.twin, h2.twin = i + 1, i
            h1.tail, h1.head = key_of(arc.points[0]), key_of(arc.points[-1])
            h2.tail, h2.head = h1.head, h1.tail
            self.halfedges += [h1, h2]

        outgoing: Dict[tuple, List[int]] = {}
        for h in self.halfedges:
            outgoing.setdefault(h.tail, []).append(h.index)
        for node, idxs in outgoing.items():
            idxs.sort(key=cmp_to_key(
                lambda a, b: _dir_cmp(self.halfedges[a].out_dir(),
                                      self.halfedges[b].out_dir())))
        for h in self.halfedges:
            ring = outgoing[h.head]
            pos = ring.index(h.twin)
            h.next = ring[(pos - 1) % len(ring)]

        self.faces: List[Face] = []
        seen = [False] * len(self.halfedges)
        for start in range(len(self.halfedges)):
            if seen[start]:
                continue
            orbit = []
            cur = start
            while not seen[cur]:
                seen[cur] = True
                orbit.append(cur)
                cur = self.halfedges[cur].next
            dq = sum(self.halfedges[i].dq() for i in orbit)
            self.faces.append(Face(orbit, dq))

    def lunes(self) -> List[Lune]:
        out = []
        for face in self.faces:
            if not face.is_disk or len(face.halfedges) != 2:
                continue
            h1, h2 = (self.halfedges[i] for i in face.halfedges)
            if h1.arc.strand.sid == h2.arc.strand.sid:
                continue
            if h1.tail == h2.tail:
                continue
            p1, p2 = h1.pts(), h2.pts()
            lift = p1[-1][0] - p2[0][0]
            assert p1[-1][1] == p2[0][1]
            poly = list(p1) + [(q + lift, p) for q, p in p2[1:]]
            assert poly[0][1] == poly[-1][1]
            poly[-1] = poly[0]
            area = _shoelace(poly)
            if area <= 0:
                raise NonTransverseError("degenerate lune with non-positive area")
            ca = self._crossing_at(h1.tail)
            cb = self._crossing_at(h1.head)
            out.append(Lune((ca.index, cb.index), poly, area))
        return out

    def _crossing_at(self, key):
        for c in self.crossings:
            if c.point == key:
                return c
        raise KeyError(key)


def _shoelace(poly) -> Fraction:
    s = Fraction(0)
    for (x0, y0), (x1, y1) in zip(poly, poly[1:]):
        s += x0 * y1 - x1 * y0
    return s / 2
