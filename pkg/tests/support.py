"""Random generators shared by the homological-algebra and acceptance tests.

Everything here carries its own ground truth: complexes are built so that
d.d = 0 holds by construction, and filtered complexes come with their exact
total homology rank (they are scrambled sums of dots and arrows).
"""

from __future__ import annotations

import random

from khcover.homalg import ChainComplex, ChainMap, FilteredComplex, mapping_cone
from khcover.linalg import MatF2, MatZ


def mat_from_cols(nrows: int, cols: list[int]) -> MatF2:
    rows = [0] * nrows
    for j, v in enumerate(cols):
        while v:
            low = v & -v
            rows[low.bit_length() - 1] |= 1 << j
            v ^= low
    return MatF2(nrows, len(cols), rows)


def rand_complex(rng: random.Random, dims: list[int]) -> ChainComplex:
    """Random complex: columns of each differential lie in the previous kernel."""
    diffs = []
    for k in range(len(dims) - 1):
        nr, nc = dims[k], dims[k + 1]
        if k == 0:
            diffs.append(MatF2(nr, nc, [rng.getrandbits(nc) for _ in range(nr)]))
            continue
        ker = diffs[-1].kernel_basis()
        cols = []
        for _ in range(nc):
            v = 0
            for b in ker:
                if rng.getrandbits(1):
                    v ^= b
            cols.append(v)
        diffs.append(mat_from_cols(nr, cols))
    return ChainComplex(tuple(dims), tuple(diffs))


def rand_chain_map(rng: random.Random, a: ChainComplex, b: ChainComplex) -> ChainMap:
    """Uniform sample from the space of chain maps a -> b.

    The commuting constraints are linear in the entries of the per-degree
    matrices, so the solution space is the kernel of one big F2 system.
    """
    offsets = []
    tot = 0
    for k in range(a.length):
        offsets.append(tot)
        tot += b.dims[k] * a.dims[k]
    rows = []
    for k in range(a.length - 1):
        for i in range(b.dims[k]):
            for j in range(a.dims[k + 1]):
                row = 0
                for t in range(b.dims[k + 1]):
                    if b.diffs[k].entry(i, t):
                        row ^= 1 << (offsets[k + 1] + t * a.dims[k + 1] + j)
                for s in range(a.dims[k]):
                    if a.diffs[k].entry(s, j):
                        row ^= 1 << (offsets[k] + i * a.dims[k] + s)
                rows.append(row)
    ker = MatF2(len(rows), tot, rows).kernel_basis()
    v = 0
    for b_ in ker:
        if rng.getrandbits(1):
            v ^= b_
    mats = []
    for k in range(a.length):
        m = MatF2.zero(b.dims[k], a.dims[k])
        for i in range(b.dims[k]):
            for j in range(a.dims[k]):
                if v >> (offsets[k] + i * a.dims[k] + j) & 1:
                    m.set_entry(i, j, 1)
        mats.append(m)
    return ChainMap(a, b, tuple(mats))


def unrolled_triangle(rng: random.Random):
    """A triple-cone instance built from one random map g: X -> Y.

    Returns (f1, f2, f3, h1, h2, a4) with A1 = X, A2 = Y, A3 = Cone(g),
    A4 = X[1], f2 the inclusion, f3 the projection, H1 x = (x, 0) and
    H2 = 0.  Then f3 H1 + H2 f1 is the identity of X[1], a quasi-isomorphism,
    so this family always satisfies the detection hypothesis.
    """
    la = rng.randint(2, 3)
    x = rand_complex(rng, [rng.randint(1, 3) for _ in range(la)])
    y = rand_complex(rng, [rng.randint(1, 3) for _ in range(la)])
    g = rand_chain_map(rng, x, y)
    a3 = mapping_cone(g).underlying
    n = a3.length
    xp = x.padded(n)
    yp = y.padded(n)
    f1 = ChainMap(xp, yp, g.mats + tuple(
        MatF2.zero(yp.dims[k], xp.dims[k]) for k in range(la, n)))
    inc = []
    for k in range(n):
        m = MatF2.zero(a3.dims[k], yp.dims[k])
        off = x.dim_at(k - 1)
        for i in range(yp.dims[k]):
            m.set_entry(off + i, i, 1)
        inc.append(m)
    f2 = ChainMap(yp, a3, tuple(inc))
    a4 = x.shifted(1).padded(n)
    proj = []
    for k in range(n):
        m = MatF2.zero(a4.dims[k], a3.dims[k])
        for i in range(a4.dims[k]):
            m.set_entry(i, i, 1)
        proj.append(m)
    f3 = ChainMap(a3, a4, tuple(proj))
    h1 = []
    for k in range(n):
        m = MatF2.zero(a3.dim_at(k + 1), xp.dims[k])
        for i in range(xp.dims[k]):
            m.set_entry(i, i, 1)
        h1.append(m)
    h2 = tuple(MatF2.zero(a4.dim_at(k + 1), yp.dims[k]) for k in range(n))
    return f1, f2, f3, tuple(h1), h2, a4


def rand_filtered_complex(
    rng: random.Random, max_levels: int = 4, max_dim: int = 14
) -> tuple[FilteredComplex, int]:
    """Random filtered complex with known homology.

    Start from a disjoint sum of dots and arrows (so the homology rank is
    dim - 2 * arrows), then conjugate by a random filtration-respecting
    unipotent change of basis.  The scrambled differential mixes
    level-preserving parts with jumps of every size, which exercises all
    the pages.
    """
    n_levels = rng.randint(1, max_levels)
    n = rng.randint(1, max_dim)
    levels = sorted(rng.randrange(n_levels) for _ in range(n))
    level_dims = tuple(levels.count(p) for p in range(n_levels))

    order = list(range(n))
    rng.shuffle(order)
    rows = [0] * n
    arrows = 0
    i = 0
    while i + 1 < len(order):
        if rng.random() < 0.6:
            u, v = order[i], order[i + 1]
            src, dst = (u, v) if levels[u] <= levels[v] else (v, u)
            rows[dst] |= 1 << src
            arrows += 1
            i += 2
        else:
            i += 1
    d0 = MatF2(n, n, rows)

    # Unipotent, strictly lower triangular in basis order; the level list is
    # sorted, so these mix only into the same or higher levels.
    s_rows = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(i):
            if rng.random() < 0.3:
                s_rows[i] |= 1 << j
    s = MatF2(n, n, s_rows)
    r = s + MatF2.identity(n)
    s_inv = MatF2.identity(n)
    power = MatF2.identity(n)
    while not power.is_zero():
        power = power @ r
        s_inv = s_inv + power
    d = s @ d0 @ s_inv
    return FilteredComplex(level_dims, d), n - 2 * arrows


def rand_negdef(rng: random.Random, b: int, span: int = 2,
                max_det: int = 24) -> MatZ:
    """-A A^t for a random full-rank integer A; always negative definite."""
    while True:
        a = [[rng.randint(-span, span) for _ in range(b)] for _ in range(b)]
        m = MatZ(a)
        if m.det() != 0 and m.det() ** 2 <= max_det:
            at = m.transpose()
            prod = m @ at
            return MatZ([[-v for v in row] for row in prod.rows])
