"""Independent brute-force oracles used to pin expected values.

Everything here recomputes answers from first principles (Gaussian
elimination on sublevel complexes, union-find persistence on the circle,
exhaustive matchings) without touching the reduction code under test.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from gammacurves.barcode import Bar, Barcode, FilteredComplex, Generator, POS_INF


def _rank_of_masks(masks):
    """Rank over F2 of the span of the given bitmask vectors."""
    basis = []
    for m in masks:
        for b in basis:
            m = min(m, m ^ b)
        if m:
            basis.append(m)
            basis.sort(reverse=True)
    return len(basis)


def _reduce_against(basis, m):
    for b in basis:
        m = min(m, m ^ b)
    return m


def _nullspace_dim(cols, n_rows):
    """dim ker of the F2 matrix whose columns are the given bitmasks."""
    return len(cols) - _rank_of_masks(cols)


def oracle_rank(fc: FilteredComplex, a, b, degree: int) -> int:
    """Rank of H^deg(action <= a) -> H^deg(action <= b), a <= b, by elimination.

    rank = dim Z_d(a) - dim(Z_d(a) /\\ B_d(b)) where Z is the cycle space of
    degree-d columns and B the boundary subspace landing in degree-d rows.
    """
    assert a <= b
    gens = fc.generators
    d_cols_a = [fc.boundary[j] for j, g in enumerate(gens)
                if g.degree == degree and g.action <= a]
    z_dim = _nullspace_dim(d_cols_a, len(gens))
    # basis of Z_d(a): vectors in the span of degree-d generators <= a with d = 0
    idxs = [j for j, g in enumerate(gens) if g.degree == degree and g.action <= a]
    # solve for nullspace explicitly: columns indexed over idxs
    aug = []
    for c, j in enumerate(idxs):
        aug.append((fc.boundary[j], 1 << c))
    basis = []
    null_vecs = []
    for m, tag in aug:
        for bm, bt in basis:
            if m > (m ^ bm):
                m, tag = m ^ bm, tag ^ bt
        if m:
            basis.append((m, tag))
            basis.sort(key=lambda p: -p[0])
        else:
            null_vecs.append(tag)
    # express nullspace vectors as masks over generator indices
    zbasis = []
    for tag in null_vecs:
        v = 0
        t = tag
        while t:
            c = (t & -t).bit_length() - 1
            t &= t - 1
            v |= 1 << idxs[c]
        zbasis.append(v)
    assert len(zbasis) == z_dim
    bnd = [fc.boundary[j] for j, g in enumerate(gens)
           if g.action <= b and fc.boundary[j]
           and gens[(fc.boundary[j] & -fc.boundary[j]).bit_length() - 1].degree == degree]
    dim_b = _rank_of_masks(bnd)
    dim_sum = _rank_of_masks(zbasis + bnd)
    dim_int = z_dim + dim_b - dim_sum
    return z_dim - dim_int


def oracle_barcode_from_ranks(fc: FilteredComplex) -> Barcode:
    """Reconstruct the whole barcode from the rank oracle alone."""
    thresholds = fc.actions()
    k = len(thresholds)
    degrees = sorted({g.degree for g in fc.generators})
    bars = []
    for d in degrees:
        def r(i, j):
            if i < 0:
                return 0
            return oracle_rank(fc, thresholds[i], thresholds[j], d)
        for i in range(k):
            for j in range(i, k):
                # bars born exactly between t_{i-1} and t_i, dying in (t_j, t_{j+1}]
                mult = r(i, j) - r(i - 1, j)
                if j + 1 < k:
                    mult -= r(i, j + 1) - r(i - 1, j + 1)
                    death = thresholds[j + 1]
                else:
                    death = POS_INF
                    # infinite multiplicity handled below
                if j + 1 < k:
                    for _ in range(mult):
                        bars.append(Bar(thresholds[i], death, d))
            mult_inf = r(i, k - 1) - r(i - 1, k - 1)
            for _ in range(mult_inf):
                bars.append(Bar(thresholds[i], POS_INF, d))
    return Barcode(bars)


def oracle_morse_circle(values) -> Barcode:
    """Sublevel persistence of a PL circle function via union-find.

    values: critical values in cyclic order, alternating min, max, min, ...
    starting with a minimum.  Completely independent of the reduction code.
    """
    values = [Fraction(v) for v in values]
    n = len(values)
    assert n % 2 == 0
    for i in range(0, n, 2):
        assert values[i] < values[(i + 1) % n] and values[i] < values[i - 1]
    verts = [(values[i], 0, i) for i in range(n)]
    edges = [(max(values[i], values[(i + 1) % n]), 1, i) for i in range(n)]
    parent = list(range(n))
    birth = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    bars = []
    for val, dim, i in sorted(verts + edges):
        if dim == 0:
            birth[i] = val
        else:
            a, b = find(i), find((i + 1) % n)
            if a == b:
                bars.append(Bar(val, POS_INF, 1))
            else:
                ba, bb = birth[a], birth[b]
                young, old = (a, b) if (ba, a) > (bb, b) else (b, a)
                if birth[young] != val:
                    bars.append(Bar(birth[young], val, 0))
                parent[young] = old
    roots = {find(i) for i in range(0, n, 2)}
    for r in roots:
        bars.append(Bar(birth[r], POS_INF, 0))
    return Barcode(bars)


def oracle_bottleneck_small(b1: Barcode, b2: Barcode):
    """Exhaustive bottleneck distance for small barcodes."""
    from gammacurves.barcode import _match_cost

    bars1, bars2 = list(b1.bars), list(b2.bars)
    inf1 = [b for b in bars1 if not b.finite]
    inf2 = [b for b in bars2 if not b.finite]
    for d in {b.degree for b in inf1} | {b.degree for b in inf2}:
        if (len([b for b in inf1 if b.degree == d])
                != len([b for b in inf2 if b.degree == d])):
            return POS_INF
    best = [POS_INF]

    def half(b):
        return Fraction(b.length, 2) if b.finite else POS_INF

    def rec(i, used, cur):
        if cur >= best[0]:
            return
        if i == len(bars1):
            cost = cur
            for j, b in enumerate(bars2):
                if j not in used:
                    cost = max(cost, half(b))
                    if cost >= best[0]:
                        return
            best[0] = cost
            return
        b = bars1[i]
        if b.finite:
            rec(i + 1, used, max(cur, half(b)))
        for j, c in enumerate(bars2):
            if j in used:
                continue
            m = _match_cost(b, c)
            if m is POS_INF or m == POS_INF:
                continue
            rec(i + 1, used | {j}, max(cur, Fraction(m)))

    rec(0, frozenset(), Fraction(0))
    return best[0]


def realize_barcode(bars, direction=1, prefix="g") -> FilteredComplex:
    """A minimal filtered complex realizing the given bars.

    direction is the degree shift of the differential: the killer of a bar
    in degree d sits in degree d - direction.
    """
    gens = []
    boundary = []
    for k, bar in enumerate(bars):
        iy = len(gens)
        gens.append(Generator(f"{prefix}{k}b", Fraction(bar.birth), bar.degree))
        boundary.append(0)
        if bar.finite:
            gens.append(Generator(f"{prefix}{k}d", Fraction(bar.death),
                                  bar.degree - direction))
            boundary.append(1 << iy)
    return FilteredComplex(gens, boundary)


def scramble_complex(fc: FilteredComplex, rng) -> FilteredComplex:
    """Filtration-preserving change of basis plus generator permutation."""
    n = len(fc.generators)
    cols = list(fc.boundary)
    gens = list(fc.generators)
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        gi, gj = gens[i], gens[j]
        if gi.degree == gj.degree and gi.action < gj.action:
            # basis change x_j -> x_j + x_i: add column i into column j,
            # and every row hit of j must also flow into i's row usages:
            cols[j] ^= cols[i]
            for c in range(n):
                if cols[c] >> j & 1:
                    cols[c] ^= 1 << i
    perm = list(range(n))
    rng.shuffle(perm)
    inv = [0] * n
    for new, old in enumerate(perm):
        inv[old] = new
    new_gens = [gens[old] for old in perm]
    new_cols = [0] * n
    for new, old in enumerate(perm):
        m, out = cols[old], 0
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            out |= 1 << inv[i]
        new_cols[new] = out
    return FilteredComplex(new_gens, new_cols)
