"""Chain complexes over F2: filtrations, spectral pages, mapping cones.

A FilteredComplex is one total differential on a level-graded space, with
no block allowed to lower the level.  Pages are computed straight from the
textbook subspaces

    Z_r^p = {x in F_p : D x in F_{p+r}},
    E_r^p = Z_r^p / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1}),

with F_p the span of levels >= p; every page rank reduces to kernel and
rank computations on packed F2 matrices.  Complexes flattened from
resolution cubes have a strictly level-raising differential, so their E^1
is the chain level and E^2 already equals E^infinity; the engine does not
assume that and handles arbitrary level-respecting differentials.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisFails, NotAComplex, NotChainMap, NotCubeShaped
from .linalg import MatF2, homology_rank, rank_f2

__all__ = [
    "ChainComplex",
    "ChainMap",
    "ConeComplex",
    "FilteredComplex",
    "PageTable",
    "flatten_cube",
    "spectral_pages",
    "mapping_cone",
    "iterated_cone",
    "induced_map_rank",
    "total_induced_rank",
]


@dataclass(frozen=True)
class ChainComplex:
    """Finite complex; diffs[k] maps degree k+1 into degree k."""

    dims: tuple[int, ...]
    diffs: tuple[MatF2, ...]

    def __post_init__(self):
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise ValueError("need one differential per adjacent pair")
        for k, d in enumerate(self.diffs):
            if (d.nrows, d.ncols) != (self.dims[k], self.dims[k + 1]):
                raise ValueError("differential %d has the wrong shape" % k)
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k] @ self.diffs[k + 1]).is_zero():
                raise NotAComplex("d.d != 0 at degree %d" % (k + 1))

    @property
    def length(self) -> int:
        return len(self.dims)

    def dim_at(self, k: int) -> int:
        return self.dims[k] if 0 <= k < self.length else 0

    def diff_out(self, k: int) -> MatF2:
        """The differential leaving degree k (into k - 1)."""
        if 1 <= k < self.length:
            return self.diffs[k - 1]
        return MatF2.zero(0, self.dim_at(k))

    def diff_in(self, k: int) -> MatF2:
        if 0 <= k < self.length - 1:
            return self.diffs[k]
        return MatF2.zero(self.dim_at(k), 0)

    def padded(self, length: int) -> "ChainComplex":
        """Extend with zero groups up to the requested length."""
        if length <= self.length:
            return self
        dims = self.dims + (0,) * (length - self.length)
        diffs = list(self.diffs)
        for k in range(max(self.length - 1, 0), length - 1):
            diffs.append(MatF2.zero(dims[k], dims[k + 1]))
        return ChainComplex(dims, tuple(diffs))

    def shifted(self, s: int) -> "ChainComplex":
        """Same complex with every degree raised by s >= 0."""
        if s == 0:
            return self
        dims = (0,) * s + self.dims
        lead = tuple(MatF2.zero(dims[k], dims[k + 1]) for k in range(s))
        return ChainComplex(dims, lead + self.diffs)

    def homology_ranks(self) -> list[int]:
        return [
            homology_rank(self.diff_in(k), self.diff_out(k))
            for k in range(self.length)
        ]

    def total_homology_rank(self) -> int:
        return sum(self.homology_ranks())


@dataclass(frozen=True)
class ChainMap:
    """Degree-zero map of equal-length complexes; mats[k] acts on degree k."""

    source: ChainComplex
    target: ChainComplex
    mats: tuple[MatF2, ...]

    def __post_init__(self):
        if self.source.length != self.target.length:
            raise NotChainMap("pad the complexes to a common length first")
        if len(self.mats) != self.source.length:
            raise NotChainMap("need one matrix per degree")
        for k, f in enumerate(self.mats):
            want = (self.target.dims[k], self.source.dims[k])
            if (f.nrows, f.ncols) != want:
                raise NotChainMap("degree %d matrix has the wrong shape" % k)
        for k in range(self.source.length - 1):
            lhs = self.target.diffs[k] @ self.mats[k + 1]
            rhs = self.mats[k] @ self.source.diffs[k]
            if lhs != rhs:
                raise NotChainMap("does not commute with d at degree %d" % (k + 1))


def induced_map_rank(f: ChainMap, k: int) -> int:
    """Rank of the map induced by f on degree-k homology."""
    cycles = f.source.diff_out(k).kernel_basis()
    mapped = [f.mats[k].apply(z) for z in cycles]
    boundaries = f.target.diff_in(k).transpose().rows
    base = MatF2(len(boundaries), f.target.dims[k], boundaries)
    both = MatF2(len(mapped), f.target.dims[k], mapped).stack_rows(base)
    return rank_f2(both) - rank_f2(base)


def total_induced_rank(f: ChainMap) -> int:
    return sum(induced_map_rank(f, k) for k in range(f.source.length))


@dataclass(frozen=True)
class ConeComplex:
    """A cone with its underlying complex and per-degree summand dims."""

    underlying: ChainComplex
    summands: tuple[tuple[int, ...], ...]

    def homology_ranks(self) -> list[int]:
        return self.underlying.homology_ranks()

    def total_homology_rank(self) -> int:
        return self.underlying.total_homology_rank()


def _scatter(dst: list[int], mat: MatF2, row0: int, col0: int) -> None:
    for i, r in enumerate(mat.rows):
        dst[row0 + i] ^= r << col0


def mapping_cone(f: ChainMap) -> ConeComplex:
    """Cone_k = A_{k-1} (+) B_k with differential [[dA, 0], [f, dB]]."""
    a, b = f.source, f.target
    length = a.length + 1
    bp = b.padded(length)
    dims = tuple(a.dim_at(k - 1) + bp.dim_at(k) for k in range(length))
    diffs = []
    for k in range(length - 1):
        a_src, a_dst = a.dim_at(k), a.dim_at(k - 1)
        rows = [0] * dims[k]
        if a_dst and a_src:
            _scatter(rows, a.diffs[k - 1], 0, 0)
        if a_src:
            _scatter(rows, f.mats[k], a_dst, 0)
        if bp.dim_at(k + 1):
            _scatter(rows, bp.diffs[k], a_dst, a_src)
        diffs.append(MatF2(dims[k], dims[k + 1], rows))
    cx = ChainComplex(dims, tuple(diffs))
    summands = tuple((a.dim_at(k - 1), bp.dim_at(k)) for k in range(length))
    return ConeComplex(cx, summands)


def _is_homotopy(h_mats, src: ChainComplex, dst: ChainComplex, composite) -> bool:
    """Check dH + Hd = composite for a degree +1 map H: src_k -> dst_{k+1}."""
    if len(h_mats) != src.length:
        return False
    for k, h in enumerate(h_mats):
        if (h.nrows, h.ncols) != (dst.dim_at(k + 1), src.dims[k]):
            return False
    for k in range(src.length):
        acc = MatF2.zero(dst.dims[k], src.dims[k])
        if k + 1 < dst.length:
            acc = acc + dst.diffs[k] @ h_mats[k]
        if k >= 1:
            acc = acc + h_mats[k - 1] @ src.diffs[k - 1]
        if acc != composite[k]:
            return False
    return True


def iterated_cone(
    f1: ChainMap,
    f2: ChainMap,
    f3: ChainMap,
    h1: tuple[MatF2, ...],
    h2: tuple[MatF2, ...],
) -> ConeComplex:
    """Triple cone on A1[2] (+) A2[1] (+) A3.

    f1: A1 -> A2, f2: A2 -> A3, f3: A3 -> A4, and h1, h2 are degree +1
    maps with dH + Hd = f2 f1 and f3 f2 respectively.  The first homotopy
    is exactly what makes the lower-triangular differential

        [[d1, 0, 0], [f1, d2, 0], [h1, f2, d3]]

    square to zero; both hypotheses are checked and their failure raises
    HypothesisFails.  f3 never enters the differential.
    """
    a1, a2, a3 = f1.source, f2.source, f3.source
    if f1.target != a2:
        raise NotChainMap("f1 must land in the source of f2")
    if f2.target != a3:
        raise NotChainMap("f2 must land in the source of f3")
    comp21 = tuple(f2.mats[k] @ f1.mats[k] for k in range(a1.length))
    if not _is_homotopy(h1, a1, a3, comp21):
        raise HypothesisFails("h1 is not a null-homotopy of f2 f1")
    comp32 = tuple(f3.mats[k] @ f2.mats[k] for k in range(a2.length))
    if not _is_homotopy(h2, a2, f3.target, comp32):
        raise HypothesisFails("h2 is not a null-homotopy of f3 f2")

    length = a3.length + 2

    def dim1(k: int) -> int:
        return a1.dim_at(k - 2)

    def dim2(k: int) -> int:
        return a2.dim_at(k - 1)

    dims = tuple(dim1(k) + dim2(k) + a3.dim_at(k) for k in range(length))
    diffs = []
    for k in range(length - 1):
        rows = [0] * dims[k]
        c1, c2 = dim1(k + 1), dim2(k + 1)
        r1, r2 = dim1(k), dim2(k)
        if c1:
            if r1:
                _scatter(rows, a1.diffs[k - 2], 0, 0)
            _scatter(rows, f1.mats[k - 1], r1, 0)
            _scatter(rows, h1[k - 1], r1 + r2, 0)
        if c2:
            if r2:
                _scatter(rows, a2.diffs[k - 1], r1, c1)
            _scatter(rows, f2.mats[k], r1 + r2, c1)
        if a3.dim_at(k + 1):
            _scatter(rows, a3.diffs[k], r1 + r2, c1 + c2)
        diffs.append(MatF2(dims[k], dims[k + 1], rows))
    cx = ChainComplex(dims, tuple(diffs))
    summands = tuple((dim1(k), dim2(k), a3.dim_at(k)) for k in range(length))
    return ConeComplex(cx, summands)


# ---------------------------------------------------------------------------
# Filtered complexes and spectral pages


@dataclass(frozen=True)
class FilteredComplex:
    """Level-graded space with one total differential that never lowers level.

    Basis vectors are grouped by level: the first level_dims[0] indices
    carry level 0, the next level_dims[1] carry level 1, and so on.  d is
    the total differential on the whole space.
    """

    level_dims: tuple[int, ...]
    d: MatF2

    def __post_init__(self):
        n = sum(self.level_dims)
        if (self.d.nrows, self.d.ncols) != (n, n):
            raise ValueError("differential must be square of the total dim")
        if not (self.d @ self.d).is_zero():
            raise NotAComplex("total differential does not square to zero")
        # Entry (i, j) means basis j hits basis i, so level(i) >= level(j).
        lv = self.levels()
        for i in range(n):
            row = self.d.rows[i]
            while row:
                low = row & -row
                j = low.bit_length() - 1
                if lv[i] < lv[j]:
                    raise ValueError("differential lowers the filtration")
                row ^= low

    def levels(self) -> list[int]:
        out: list[int] = []
        for p, dim in enumerate(self.level_dims):
            out.extend([p] * dim)
        return out

    @property
    def n_levels(self) -> int:
        return len(self.level_dims)

    @property
    def dim(self) -> int:
        return sum(self.level_dims)

    def total_homology_rank(self) -> int:
        return self.dim - 2 * rank_f2(self.d)


@dataclass(frozen=True)
class PageTable:
    """pages[r-1] holds the page-r ranks by level; entries repeat once stable."""

    pages: tuple[tuple[int, ...], ...]
    stable_page: int
    total_homology_rank: int

    def page(self, r: int) -> tuple[int, ...]:
        if r < 1:
            raise ValueError("pages start at r = 1")
        return self.pages[min(r, len(self.pages)) - 1]

    def to_json_dict(self) -> dict:
        return {
            "pages": [
                {"r": r + 1, "ranks_by_level": list(p)}
                for r, p in enumerate(self.pages)
            ],
            "stable_page": self.stable_page,
            "total_homology_rank": self.total_homology_rank,
        }


def flatten_cube(cx) -> FilteredComplex:
    """Regrade a cube complex by total weight; level p = resolution weight.

    Accepts the bigraded output of the cube assembler.  The filtration has
    one level per weight 0 .. n_crossings, and the total differential is
    strictly level-raising.
    """
    ell = cx.n_crossings
    level_dims = []
    offsets: dict[tuple[int, int], int] = {}
    total = 0
    for w in range(ell + 1):
        at_w = 0
        for (ww, n), dim in sorted(cx.dims.items()):
            if ww == w:
                offsets[(w, n)] = total + at_w
                at_w += dim
        level_dims.append(at_w)
        total += at_w
    rows = [0] * total
    for (w, n), mat in cx.blocks.items():
        if (w, n) not in offsets or (w + 1, n) not in offsets:
            raise NotCubeShaped("block at (%d, %d) does not join weights" % (w, n))
        if mat.nrows != cx.dims[(w + 1, n)] or mat.ncols != cx.dims[(w, n)]:
            raise NotCubeShaped("block at (%d, %d) has the wrong shape" % (w, n))
        _scatter(rows, mat, offsets[(w + 1, n)], offsets[(w, n)])
    return FilteredComplex(tuple(level_dims), MatF2(total, total, rows))


def _z_basis(fc: FilteredComplex, levels: list[int], p: int, r: int) -> list[int]:
    """Packed global vectors spanning Z_r^p = F_p meet D^{-1} F_{p+r}."""
    cols = [i for i, lv in enumerate(levels) if lv >= p]
    sub = []
    for i, lv in enumerate(levels):
        if lv >= p + r:
            continue
        row = fc.d.rows[i]
        acc = 0
        for out_j, j in enumerate(cols):
            if row >> j & 1:
                acc |= 1 << out_j
        sub.append(acc)
    kernel = MatF2(len(sub), len(cols), sub).kernel_basis()
    out = []
    for v in kernel:
        g = 0
        while v:
            low = v & -v
            g |= 1 << cols[low.bit_length() - 1]
            v ^= low
        out.append(g)
    return out


def spectral_pages(fc: FilteredComplex, r_max: int | None = None) -> PageTable:
    """Page ranks E_r^p for r = 1 .. r_max (default: one past the last level).

    Pages are constant for r >= n_levels + 1, so the default always reaches
    the stable page; stable_page reports where the table first settles.
    """
    levels = fc.levels()
    n_lv = fc.n_levels
    stop = n_lv + 1
    if r_max is None:
        r_max = stop
    r_max = max(r_max, 1)
    pages = []
    for r in range(1, max(r_max, stop) + 1):
        ranks = []
        for p in range(n_lv):
            z = _z_basis(fc, levels, p, r)
            prev = _z_basis(fc, levels, p + 1, r - 1)
            prev += [fc.d.apply(v) for v in _z_basis(fc, levels, p - r + 1, r - 1)]
            border = MatF2(len(prev), fc.dim, prev)
            ranks.append(len(z) - rank_f2(border))
        pages.append(tuple(ranks))
    stable = 1
    for r in range(len(pages), 0, -1):
        if pages[r - 1] != pages[-1]:
            stable = r + 1
            break
    return PageTable(tuple(pages[:r_max]), stable, fc.total_homology_rank())
