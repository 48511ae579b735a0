"""Filtered complexes of transverse curve pairs via lune counting.

Generators are the crossings, filtered by the difference of primitives
f_{L1} - f_{L2}; the differential counts (mod 2) the bigon faces of the
arrangement, directed from the higher-action corner to the lower.  The
resulting complex is certified per instance: d*d = 0 and the cohomology of
H*(S^1) for curve pairs (a single class for curve/fiber pairs); pairs
failing certification are refused rather than silently accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .arrangement import Arrangement, Lune, NonTransverseError
from .barcode import (Barcode, ComplexValidationError, FilteredComplex,
                      Generator, c_minus, c_plus, decompose, gamma_of)
from .curves import PLCurve, PLFunction, Point, cross, fresh_abscissas


class CurveClassError(ValueError):
    """The lune-face surrogate is not certified for this pair."""


@dataclass(frozen=True)
class IntersectionPoint:
    location: Point          # canonical cylinder representative
    action: Fraction         # f_{L1}(x) - f_{L2}(x)
    degree: int              # 0 at min-type crossings, 1 at max-type


@dataclass
class PairData:
    points: List[IntersectionPoint]
    complex: FilteredComplex
    lunes: List[Lune]
    arrangement: Arrangement


def _degree(t1, t2, fiber: bool) -> int:
    c = cross(t1, t2)
    if fiber:
        return 0 if c > 0 else 1
    return 0 if c < 0 else 1


def _crossing_points(arr: Arrangement, l1: PLCurve,
                     l2: Optional[PLCurve]) -> List[IntersectionPoint]:
    pts = []
    for c in arr.crossings:
        f1 = l1.primitive(c.point)
        f2 = l2.primitive(c.point) if l2 is not None else Fraction(0)
        deg = _degree(c.tangent[0], c.tangent[1], fiber=l2 is None)
        pts.append(IntersectionPoint(c.point, f1 - f2, deg))
    return pts


def intersect(l1: PLCurve, l2: PLCurve) -> List[IntersectionPoint]:
    """All transversal crossings with exact actions and degrees.

    Raises NonTransverseError on shared vertices, tangencies or overlaps.
    """
    arr = Arrangement(l1, l2)
    pts = _crossing_points(arr, l1, l2)
    return sorted(pts, key=lambda p: (p.action, p.location))


def _pair_data(l1: PLCurve, l2: Optional[PLCurve],
               fiber: Optional[Fraction] = None) -> PairData:
    arr = Arrangement(l1, l2 if fiber is None else None, fiber=fiber)
    raw = _crossing_points(arr, l1, l2)
    order = sorted(range(len(raw)), key=lambda i: (raw[i].action, raw[i].location))
    pos = {old: new for new, old in enumerate(order)}
    pts = [raw[i] for i in order]
    gens = [Generator(f"x{k}", p.action, p.degree) for k, p in enumerate(pts)]
    boundary = [0] * len(gens)
    lunes = arr.lunes()
    for lune in lunes:
        i, j = (pos[c] for c in lune.corners)
        if pts[i].action == pts[j].action:
            raise CurveClassError(
                "pair outside supported class: lune with equal corner actions")
        src, dst = (i, j) if pts[i].action > pts[j].action else (j, i)
        boundary[src] ^= 1 << dst
    try:
        fc = FilteredComplex(gens, boundary)
    except ComplexValidationError as e:
        raise CurveClassError(f"pair outside supported class: {e}") from e
    _certify_cohomology(fc, fiber_pair=fiber is not None)
    return PairData(pts, fc, lunes, arr)


def _rank(masks) -> int:
    basis = []
    for m in masks:
        for b in basis:
            m = min(m, m ^ b)
        if m:
            basis.append(m)
            basis.sort(reverse=True)
    return len(basis)


def _cohomology_dims(fc: FilteredComplex) -> dict:
    gens = fc.generators
    degs = sorted({g.degree for g in gens})
    dims = {}
    for d in degs:
        cols = [fc.boundary[j] for j, g in enumerate(gens) if g.degree == d]
        z = len(cols) - _rank(cols)
        into = [m for j, m in enumerate(fc.boundary)
                if m and gens[(m & -m).bit_length() - 1].degree == d]
        dims[d] = z - _rank(into)
    return {d: v for d, v in dims.items() if v}


def _certify_cohomology(fc: FilteredComplex, fiber_pair: bool):
    dims = _cohomology_dims(fc)
    if fiber_pair:
        if sum(dims.values()) != 1:
            raise CurveClassError(
                f"pair outside supported class: fiber cohomology ranks {dims}")
        return
    if dims != {0: 1, 1: 1}:
        raise CurveClassError(
            f"pair outside supported class: cohomology ranks {dims} "
            "(expected rank 1 in degrees 0 and 1)")


def complex_of_pair(l1: PLCurve, l2: PLCurve) -> FilteredComplex:
    """Certified filtered complex of a transverse curve pair."""
    return _pair_data(l1, l2).complex


def pair_data(l1: PLCurve, l2: PLCurve) -> PairData:
    return _pair_data(l1, l2)


def barcode_of_pair(l1: PLCurve, l2: PLCurve) -> Barcode:
    return decompose(complex_of_pair(l1, l2))


def c_pm_pair(l1: PLCurve, l2: PLCurve) -> Tuple[Fraction, Fraction]:
    """(c_minus, c_plus) of the pair, from the two infinite bars."""
    bc = barcode_of_pair(l1, l2)
    return (c_minus(bc), c_plus(bc))


def gamma_pair(l1: PLCurve, l2: PLCurve) -> Fraction:
    """The spectral distance gamma = c_plus - c_minus of the pair."""
    if l1.same_geometry(l2):
        return Fraction(0)
    return gamma_of(barcode_of_pair(l1, l2))


def c_pair(l1: PLCurve, l2: PLCurve) -> Fraction:
    """The brane metric c = max(c_plus, 0) - min(c_minus, 0)."""
    lo, hi = c_pm_pair(l1, l2)
    return max(hi, Fraction(0)) - min(lo, Fraction(0))


def gamma_bounds(l1: PLCurve, l2: PLCurve, slack: Fraction,
                 max_attempts: int = 12) -> Tuple[Fraction, Fraction]:
    """Exact rational interval containing gamma(l1, l2).

    Transverse pairs give a degenerate interval.  Pairs sharing segments
    are resolved by shearing l2 with a tiny two-breakpoint function g; the
    spectral bound gamma(shear(l2), l2) <= osc(g) turns the resolved value
    into the certified interval [gamma' - osc g, gamma' + osc g].
    """
    if l1.same_geometry(l2):
        return (Fraction(0), Fraction(0))
    try:
        g = gamma_pair(l1, l2)
        return (g, g)
    except (NonTransverseError, CurveClassError):
        pass
    slack = Fraction(slack)
    if slack <= 0:
        raise ValueError("slack must be positive")
    h = slack
    start = 3
    for _ in range(max_attempts):
        betas = fresh_abscissas([l1, l2], 2, l1.period, start=start)
        g = PLFunction([(betas[0], Fraction(0)), (betas[1], h)], l1.period)
        try:
            resolved = l2.shear(g)
            val = gamma_pair(l1, resolved)
            lo = val - h
            return (max(lo, Fraction(0)), val + h)
        except (NonTransverseError, CurveClassError):
            h = h / 4
            start += 8
    raise CurveClassError("could not resolve the pair within the slack budget")


# ---------------------------------------------------------------- fibers

def barcode_vs_fiber(l: PLCurve, x) -> Barcode:
    """Barcode of the curve against the vertical fiber {q = x}."""
    try:
        data = _pair_data(l, None, fiber=Fraction(x))
    except NonTransverseError as e:
        raise NonTransverseError(f"non-transverse fiber q={x}: {e}") from e
    return decompose(data.complex)


def fiber_spectral(l: PLCurve, x) -> Fraction:
    """The selector value c(1_x, L): birth of the lowest infinite bar."""
    return c_minus(barcode_vs_fiber(l, x))


def is_pseudograph(l: PLCurve, sample_xs) -> bool:
    """True iff every sampled fiber barcode is one single infinite bar."""
    for x in sample_xs:
        bc = barcode_vs_fiber(l, x)
        if len(bc) != 1 or bc.bars[0].death != float("inf"):
            return False
    return True
