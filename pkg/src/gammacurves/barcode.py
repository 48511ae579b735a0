"""Persistence modules on the real line with exact rational endpoints.

Barcodes are multisets of graded half-open bars [birth, death[.  Filtered
cochain complexes over the two-element field decompose uniquely into such
bars; spectral invariants c-, c+ and the gamma distance are read off the
infinite bars, and barcodes are compared with the exact bottleneck distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

NEG_INF = float("-inf")
POS_INF = float("inf")


class ComplexValidationError(ValueError):
    """A filtered complex violates d*d = 0 or the action filtration."""


class IllPosedError(ValueError):
    """Spectral invariants are not well defined for this barcode."""


def _is_finite(x) -> bool:
    return isinstance(x, Fraction) or isinstance(x, int)


@dataclass(frozen=True)
class Bar:
    """Interval module k_[birth, death[ placed in a single degree.

    birth is a Fraction or -inf, death a Fraction or +inf; empty bars
    (birth >= death) are forbidden.
    """

    birth: object
    death: object
    degree: int

    def __post_init__(self):
        if not (self.birth < self.death):
            raise ValueError(f"empty bar [{self.birth}, {self.death}[")

    @property
    def finite(self) -> bool:
        return _is_finite(self.birth) and _is_finite(self.death)

    @property
    def length(self):
        return self.death - self.birth

    def _key(self):
        return (self.degree, float(self.birth), float(self.death),
                str(self.birth), str(self.death))


class Barcode:
    """Finite multiset of bars; equality is order-insensitive."""

    def __init__(self, bars: Iterable[Bar]):
        self.bars = tuple(sorted(bars, key=Bar._key))

    def __eq__(self, other):
        return isinstance(other, Barcode) and self.bars == other.bars

    def __hash__(self):
        return hash(self.bars)

    def __len__(self):
        return len(self.bars)

    def __iter__(self):
        return iter(self.bars)

    def __repr__(self):
        inner = ", ".join(
            f"[{b.birth}, {b.death}[ deg {b.degree}" for b in self.bars)
        return f"Barcode({inner})"

    def infinite_bars(self) -> list:
        return [b for b in self.bars if b.death == POS_INF]

    def finite_bars(self) -> list:
        return [b for b in self.bars if b.finite]


@dataclass(frozen=True)
class Generator:
    id: str
    action: Fraction
    degree: int


class FilteredComplex:
    """Finite complex over F2 whose differential strictly decreases action.

    boundary[j] is the set of row indices appearing in d(generator j),
    encoded as an int bitmask.  The differential must shift degree by the
    same +1 or -1 across the whole complex (curve complexes lower degree,
    the cohomological convention raises it; decomposition treats both).
    """

    def __init__(self, generators: Sequence[Generator], boundary: Sequence[int]):
        self.generators = tuple(generators)
        self.boundary = tuple(boundary)
        if len(self.boundary) != len(self.generators):
            raise ComplexValidationError("boundary/generator length mismatch")
        self._validate()

    def __len__(self):
        return len(self.generators)

    def _validate(self):
        gens = self.generators
        shift = None
        for j, mask in enumerate(self.boundary):
            sq = 0
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                m &= m - 1
                if not gens[i].action < gens[j].action:
                    raise ComplexValidationError(
                        f"filtration does not decrease: d({gens[j].id}) hits "
                        f"{gens[i].id} with action {gens[i].action} >= {gens[j].action}")
                d = gens[i].degree - gens[j].degree
                if d not in (-1, 1):
                    raise ComplexValidationError(
                        f"degree shift {d} from {gens[j].id} to {gens[i].id}")
                if shift is None:
                    shift = d
                elif shift != d:
                    raise ComplexValidationError(
                        f"inconsistent degree shift at {gens[j].id}")
                sq ^= self.boundary[i]
            if sq:
                i = (sq & -sq).bit_length() - 1
                raise ComplexValidationError(
                    f"d*d != 0: d^2({gens[j].id}) contains {gens[i].id}")

    def actions(self) -> list:
        return sorted({g.action for g in self.generators})


def decompose(complex: FilteredComplex) -> Barcode:
    """Unique interval decomposition of the filtered complex.

    Standard column reduction in action order: when the reduced boundary of
    a generator x has pivot y (its latest entry), the class born at y dies
    at x and contributes the bar [action(y), action(x)[ in degree(y).
    Zero-length pairs contribute nothing.  Unpaired cycles give infinite
    bars born at their own action.
    """
    gens = complex.generators
    n = len(gens)
    order = sorted(range(n), key=lambda i: (gens[i].action, i))
    rank = {idx: r for r, idx in enumerate(order)}

    # columns re-expressed over row ranks so the pivot is the top set bit
    def remask(mask: int) -> int:
        out = 0
        while mask:
            i = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            out |= 1 << rank[i]
        return out

    reduced = {}        # pivot rank -> reduced column mask
    pivot_pair = {}     # pivot rank -> column index
    killed = set()      # generators that are pivots
    killers = set()
    for idx in order:
        col = remask(complex.boundary[idx])
        while col:
            p = col.bit_length() - 1
            if p not in reduced:
                break
            col ^= reduced[p]
        if col:
            p = col.bit_length() - 1
            reduced[p] = col
            pivot_pair[p] = idx
            killed.add(order[p])
            killers.add(idx)

    bars = []
    for p, j in pivot_pair.items():
        y, x = gens[order[p]], gens[j]
        if y.action != x.action:
            bars.append(Bar(y.action, x.action, y.degree))
    for i, g in enumerate(gens):
        if i not in killed and i not in killers:
            bars.append(Bar(g.action, POS_INF, g.degree))
    return Barcode(bars)


def rank_function(barcode: Barcode, a, b, degree: int) -> int:
    """Number of bars of the given degree with birth <= a and death > b."""
    if not a <= b:
        raise ValueError("rank_function requires a <= b")
    return sum(1 for bar in barcode
               if bar.degree == degree and bar.birth <= a and bar.death > b)


def _unique_infinite(barcode: Barcode, want_min: bool) -> Bar:
    inf = barcode.infinite_bars()
    if not inf:
        raise IllPosedError("ill-posed spectral invariant: no infinite bar")
    target = min(b.degree for b in inf) if want_min else max(b.degree for b in inf)
    picks = [b for b in inf if b.degree == target]
    if len(picks) != 1:
        raise IllPosedError(
            f"ill-posed spectral invariant: {len(picks)} infinite bars in "
            f"extreme degree {target}")
    return picks[0]


def c_minus(barcode: Barcode):
    """Birth of the unique infinite bar of minimal degree."""
    return _unique_infinite(barcode, want_min=True).birth


def c_plus(barcode: Barcode):
    """Birth of the unique infinite bar of maximal degree."""
    return _unique_infinite(barcode, want_min=False).birth


def gamma_of(barcode: Barcode):
    """The spectral gap c_plus - c_minus (nonnegative for curve pairs)."""
    return c_plus(barcode) - c_minus(barcode)


def shift(barcode: Barcode, c: Fraction) -> Barcode:
    """Translate every finite endpoint by c (the T_c action on barcodes)."""
    c = Fraction(c)
    out = []
    for b in barcode:
        birth = b.birth + c if _is_finite(b.birth) else b.birth
        death = b.death + c if _is_finite(b.death) else b.death
        out.append(Bar(birth, death, b.degree))
    return Barcode(out)


def _match_cost(b1: Bar, b2: Bar):
    if b1.degree != b2.degree:
        return POS_INF
    inf1 = not _is_finite(b1.death)
    inf2 = not _is_finite(b2.death)
    if inf1 != inf2 or (not _is_finite(b1.birth)) != (not _is_finite(b2.birth)):
        return POS_INF
    cost = abs(b1.birth - b2.birth) if _is_finite(b1.birth) else Fraction(0)
    if not inf1:
        cost = max(cost, abs(b1.death - b2.death))
    return cost


def _perfect_matching(adj: list, n_right: int) -> bool:
    match_r = [-1] * n_right

    def augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_r[v] == -1 or augment(match_r[v], seen):
                match_r[v] = u
                return True
        return False

    for u in range(len(adj)):
        if not augment(u, set()):
            return False
    return True


def _feasible(delta, bars1, bars2) -> bool:
    inf1 = [b for b in bars1 if not b.finite]
    inf2 = [b for b in bars2 if not b.finite]
    degs = {b.degree for b in inf1} | {b.degree for b in inf2}
    for d in degs:
        l = [b for b in inf1 if b.degree == d]
        r = [b for b in inf2 if b.degree == d]
        if len(l) != len(r):
            return False
        adj = [[j for j, b2 in enumerate(r) if _match_cost(b1, b2) <= delta]
               for b1 in l]
        if not _perfect_matching(adj, len(r)):
            return False
    fin1 = [b for b in bars1 if b.finite]
    fin2 = [b for b in bars2 if b.finite]
    n1, n2 = len(fin1), len(fin2)
    # right side: fin2 then one diagonal slot per left bar
    adj = []
    for i, b1 in enumerate(fin1):
        row = [j for j, b2 in enumerate(fin2) if _match_cost(b1, b2) <= delta]
        if b1.length <= 2 * delta:
            row.append(n2 + i)
        adj.append(row)
    # diagonal slots for right bars: match their own bar if short, any left slot
    for j, b2 in enumerate(fin2):
        row = [j] if b2.length <= 2 * delta else []
        row.extend(range(n2, n2 + n1))
        adj.append(row)
    return _perfect_matching(adj, n1 + n2)


def bottleneck(b1: Barcode, b2: Barcode):
    """Exact bottleneck distance between two finite barcodes.

    Degree-preserving partial matchings; unmatched bars pay half their
    length; infinite bars must match infinite bars of equal degree, and the
    distance is +inf when the infinite-bar degree counts differ.
    """
    for d in {b.degree for b in b1.infinite_bars()} | {b.degree for b in b2.infinite_bars()}:
        if (sum(1 for b in b1.infinite_bars() if b.degree == d)
                != sum(1 for b in b2.infinite_bars() if b.degree == d)):
            return POS_INF
    candidates = {Fraction(0)}
    for x in b1:
        for y in b2:
            c = _match_cost(x, y)
            if c != POS_INF:
                candidates.add(Fraction(c))
    for b in list(b1.finite_bars()) + list(b2.finite_bars()):
        candidates.add(Fraction(b.length, 2))
    ordered = sorted(candidates)
    lo, hi = 0, len(ordered) - 1
    if not _feasible(ordered[hi], b1.bars, b2.bars):
        return POS_INF
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(ordered[mid], b1.bars, b2.bars):
            hi = mid
        else:
            lo = mid + 1
    return ordered[lo]
