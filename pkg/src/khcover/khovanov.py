"""Cube of resolutions and its homology over the two-element field.

Each resolution state carries the exterior algebra on its circle classes;
cube edges carry merge/split maps.  Merging circles A and B into C is the
quotient algebra map [A], [B] -> [C] (a monomial containing both dies on
[C]^2 = 0).  Splitting C into A and B lifts a monomial along C -> A and
wedges with ([A] + [B]).  The reduced theory is the quotient by monomials
containing the marked circle, computed on quotient representatives.

Gradings of a k-fold monomial at state I with c circles:

    m = n_plus - w(I)
    n = c - 2k + w(I) - 2*n_plus + n_minus     (reduced: one lower)

The quantum grading is constant along every edge map (the +w term absorbs
the circle change), so the complex splits by n and the differential has
bidegree (-1, 0).  These are the unique affine-in-(w, n_plus, n_minus)
gradings under which the graded Euler characteristic of the homology is
invariant of the diagram for the unknot (both kink diagrams give q + 1/q)
and mirroring negates both gradings rank-for-rank.  The state-sum oracle
in this module is normalised to the same calibration, so homology and
state sum are independent computations of one polynomial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .conventions import CONVENTIONS_VERSION, REDUCED_QUANTUM_SHIFT
from .diagram import LinkDiagram, crossing_signs, resolve
from .errors import BudgetExceeded, NoMark, NotSuccessor
from .linalg import MatF2, homology_rank

__all__ = [
    "Laurent",
    "LOOP",
    "VertexSpace",
    "BigradedComplex",
    "KhTable",
    "vertex_space",
    "edge_map",
    "assemble",
    "homology",
    "graded_euler",
    "kauffman_oracle",
    "determinant_specialization",
    "mark_invariance_check",
    "face_commutativity_check",
]

DEFAULT_BUDGET_MB = 512


class Laurent:
    """Integer Laurent polynomial in one variable q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.coeffs = {d: c for d, c in (coeffs or {}).items() if c}

    @classmethod
    def term(cls, coeff: int = 1, power: int = 0) -> "Laurent":
        return cls({power: coeff})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return Laurent(out)

    def __sub__(self, other: "Laurent") -> "Laurent":
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) - c
        return Laurent(out)

    def __neg__(self) -> "Laurent":
        return Laurent({d: -c for d, c in self.coeffs.items()})

    def __mul__(self, other: "Laurent") -> "Laurent":
        out: dict[int, int] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return Laurent(out)

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            raise ValueError("negative power")
        out = Laurent.term(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Laurent) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return "Laurent(%r)" % (self.coeffs,)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d]
            mag = abs(c)
            if d == 0:
                body = str(mag)
            elif d == 1:
                body = "q" if mag == 1 else "%d*q" % mag
            else:
                body = "q^%d" % d if mag == 1 else "%d*q^%d" % (mag, d)
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def eval_at_i(self) -> tuple[int, int]:
        """Exact value at q = sqrt(-1), as a Gaussian integer (re, im)."""
        re = im = 0
        for d, c in self.coeffs.items():
            r = d % 4
            if r == 0:
                re += c
            elif r == 1:
                im += c
            elif r == 2:
                re -= c
            else:
                im -= c
        return re, im


LOOP = Laurent({1: 1, -1: 1})


def determinant_specialization(euler: Laurent) -> int:
    """|value at q = i| of a reduced graded Euler characteristic.

    The value is a Gaussian-integer unit times the link determinant, so its
    absolute value is an exact integer.
    """
    re, im = euler.eval_at_i()
    norm = re * re + im * im
    root = math.isqrt(norm)
    if root * root != norm:
        raise ValueError("specialization is not a unit multiple of an integer")
    return root


# ---------------------------------------------------------------------------
# Vertex spaces and edge maps


@dataclass(frozen=True)
class VertexSpace:
    """Exterior-algebra basis at one resolution state.

    circles are arc sets (crossing-free loops get synthetic negative
    labels); masks list the basis monomials as circle-index bitmasks in
    increasing order.  In the reduced theory masks containing the marked
    circle are omitted (quotient representatives).
    """

    state: tuple[int, ...]
    circles: tuple[frozenset[int], ...]
    reduced: bool
    marked: int | None
    masks: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.masks)


def _circles_at(diagram: LinkDiagram, state: tuple[int, ...]):
    out = list(resolve(diagram, state)) if diagram.crossings else []
    for i in range(diagram.free_loops):
        out.append(frozenset({-(i + 1)}))
    return tuple(out)


def _marked_index(diagram: LinkDiagram, circles) -> int:
    if diagram.mark is None:
        if not diagram.crossings and diagram.free_loops == 1:
            return len(circles) - 1
        raise NoMark("reduced theory needs a marked arc")
    for i, c in enumerate(circles):
        if diagram.mark in c:
            return i
    raise NoMark("marked arc %d not found in resolution" % diagram.mark)


def vertex_space(
    diagram: LinkDiagram, state: tuple[int, ...], reduced: bool = False
) -> VertexSpace:
    circles = _circles_at(diagram, state)
    marked = _marked_index(diagram, circles) if reduced else None
    if reduced:
        masks = tuple(
            m for m in range(1 << len(circles)) if not m >> marked & 1
        )
    else:
        masks = tuple(range(1 << len(circles)))
    return VertexSpace(tuple(state), circles, reduced, marked, masks)


def _successor_position(state, nxt) -> int:
    if len(state) != len(nxt):
        raise NotSuccessor("states have different lengths")
    diff = [t for t in range(len(state)) if state[t] != nxt[t]]
    if len(diff) != 1 or state[diff[0]] != 0:
        raise NotSuccessor("%r -> %r is not a cube edge" % (state, nxt))
    return diff[0]


def _edge_targets(src: VertexSpace, dst: VertexSpace):
    """Map each source basis mask to its (0, 1 or 2) target masks."""
    dst_index = {c: j for j, c in enumerate(dst.circles)}
    matched: dict[int, int] = {}
    src_un = []
    for i, c in enumerate(src.circles):
        if c in dst_index:
            matched[i] = dst_index[c]
        else:
            src_un.append(i)
    dst_un = [j for j in range(len(dst.circles)) if j not in set(matched.values())]

    def relocate(mask: int) -> int:
        out = 0
        m = mask
        while m:
            low = m & -m
            out |= 1 << matched[low.bit_length() - 1]
            m ^= low
        return out

    images: dict[int, tuple[int, ...]] = {}
    if len(src_un) == 2:
        i1, i2 = src_un
        (j0,) = dst_un
        for mask in src.masks:
            b1, b2 = mask >> i1 & 1, mask >> i2 & 1
            if b1 and b2:
                images[mask] = ()
                continue
            rest = relocate(mask & ~(1 << i1) & ~(1 << i2))
            images[mask] = (rest | ((b1 | b2) << j0),)
    else:
        (i0,) = src_un
        j1, j2 = dst_un
        for mask in src.masks:
            rest = relocate(mask & ~(1 << i0))
            if mask >> i0 & 1:
                images[mask] = (rest | 1 << j1 | 1 << j2,)
            else:
                images[mask] = (rest | 1 << j1, rest | 1 << j2)
    if src.reduced:
        mu = dst.marked
        images = {
            m: tuple(t for t in ts if not t >> mu & 1)
            for m, ts in images.items()
        }
    return images


def edge_map(
    diagram: LinkDiagram,
    state: tuple[int, ...],
    nxt: tuple[int, ...],
    reduced: bool = False,
) -> MatF2:
    """Matrix of the cube edge map, columns over the source basis."""
    _successor_position(state, nxt)
    src = vertex_space(diagram, state, reduced)
    dst = vertex_space(diagram, nxt, reduced)
    images = _edge_targets(src, dst)
    col_of = {m: j for j, m in enumerate(src.masks)}
    row_of = {m: i for i, m in enumerate(dst.masks)}
    rows = [0] * dst.dim
    for mask, targets in images.items():
        for t in targets:
            rows[row_of[t]] |= 1 << col_of[mask]
    return MatF2(dst.dim, src.dim, rows)


# ---------------------------------------------------------------------------
# The assembled complex


@dataclass(frozen=True)
class BigradedComplex:
    """Chain groups indexed by (cube weight w, quantum grading n).

    blocks[(w, n)] maps the (w, n) group into (w + 1, n); missing keys are
    zero.  The quantum grading is preserved by the differential; the
    published homological grading is m = n_plus - w.
    """

    reduced: bool
    n_crossings: int
    n_plus: int
    n_minus: int
    dims: dict[tuple[int, int], int]
    blocks: dict[tuple[int, int], MatF2]
    basis: dict[tuple[int, int], tuple[tuple[tuple[int, ...], int], ...]]

    def block(self, w: int, n: int) -> MatF2:
        got = self.blocks.get((w, n))
        if got is not None:
            return got
        return MatF2.zero(self.dims.get((w + 1, n), 0),
                          self.dims.get((w, n), 0))


@dataclass(frozen=True)
class KhTable:
    """Homology ranks per published bigrading (m, n)."""

    ranks: dict[tuple[int, int], int]
    reduced: bool

    @property
    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def to_json_dict(self) -> dict:
        return {
            "gradings": [[m, n, r] for (m, n), r in sorted(self.ranks.items())],
            "total_rank": self.total_rank,
            "euler_poly": str(graded_euler(self)),
            "reduced": self.reduced,
            "conventions_version": CONVENTIONS_VERSION,
        }


def _quantum(
    c: int, mask: int, w: int, n_plus: int, n_minus: int, reduced: bool
) -> int:
    k = bin(mask).count("1")
    n = c - 2 * k + w - 2 * n_plus + n_minus
    return n + REDUCED_QUANTUM_SHIFT if reduced else n


def assemble(
    diagram: LinkDiagram,
    reduced: bool = False,
    budget_mb: int = DEFAULT_BUDGET_MB,
) -> BigradedComplex:
    """Build the whole cube complex, checking d.d = 0 block by block."""
    ell = diagram.n_crossings
    n_plus, n_minus = crossing_signs(diagram)
    if ell > 24:
        raise BudgetExceeded("2^%d resolution states" % ell)

    spaces: dict[tuple[int, ...], VertexSpace] = {}
    for state in itertools.product((0, 1), repeat=ell):
        spaces[state] = vertex_space(diagram, state, reduced)

    dims: dict[tuple[int, int], int] = {}
    index: dict[tuple[tuple[int, ...], int], tuple[tuple[int, int], int]] = {}
    for state in sorted(spaces):
        sp = spaces[state]
        w = sum(state)
        c = len(sp.circles)
        for mask in sp.masks:
            key = (w, _quantum(c, mask, w, n_plus, n_minus, reduced))
            pos = dims.get(key, 0)
            dims[key] = pos + 1
            index[(state, mask)] = (key, pos)

    est = 0
    for (w, n), d_src in dims.items():
        d_tgt = dims.get((w + 1, n), 0)
        est += d_tgt * (28 + d_src // 8)
    if est > budget_mb * (1 << 20):
        raise BudgetExceeded(
            "estimated %d MB exceeds the %d MB budget" % (est >> 20, budget_mb)
        )

    rows: dict[tuple[int, int], list[int]] = {
        key: [0] * dims.get((key[0] + 1, key[1]), 0) for key in dims
    }
    for state, sp in spaces.items():
        for t in range(ell):
            if state[t]:
                continue
            nxt = state[:t] + (1,) + state[t + 1:]
            images = _edge_targets(sp, spaces[nxt])
            for mask, targets in images.items():
                key, col = index[(state, mask)]
                block = rows[key]
                for tgt in targets:
                    tkey, trow = index[(nxt, tgt)]
                    assert tkey == (key[0] + 1, key[1])
                    block[trow] ^= 1 << col

    blocks = {
        key: MatF2(len(r), dims[key], r) for key, r in rows.items() if any(r)
    }

    cx = BigradedComplex(
        reduced=reduced,
        n_crossings=ell,
        n_plus=n_plus,
        n_minus=n_minus,
        dims=dims,
        blocks=blocks,
        basis=_basis_table(index),
    )
    for (w, n) in blocks:
        nxt = cx.block(w + 1, n) @ cx.block(w, n)
        if not nxt.is_zero():
            raise AssertionError("differential does not square to zero")
    return cx


def _basis_table(index):
    table: dict[tuple[int, int], list] = {}
    for (state, mask), (key, pos) in index.items():
        table.setdefault(key, []).append((pos, (state, mask)))
    return {
        key: tuple(sm for _, sm in sorted(entries))
        for key, entries in table.items()
    }


def homology(cx: BigradedComplex) -> KhTable:
    ranks: dict[tuple[int, int], int] = {}
    for (w, n), dim in cx.dims.items():
        d_out = cx.block(w, n)
        d_in = cx.block(w - 1, n)
        h = homology_rank(d_in, d_out)
        if h:
            ranks[(cx.n_plus - w, n)] = h
    return KhTable(ranks=ranks, reduced=cx.reduced)


def graded_euler(table: KhTable) -> Laurent:
    out: dict[int, int] = {}
    for (m, n), r in table.ranks.items():
        out[n] = out.get(n, 0) + (r if m % 2 == 0 else -r)
    return Laurent(out)


def kauffman_oracle(diagram: LinkDiagram, reduced: bool = False) -> Laurent:
    """State-sum evaluation of the graded Euler characteristic.

    Independent of all chain-level code: walks the 2^ell states, counts
    circles, and sums signed powers of (q + 1/q) with the writhe
    normalisation that gives the unknot q + 1/q (reduced: 1).
    """
    ell = diagram.n_crossings
    if ell > 20:
        raise BudgetExceeded("state sum over 2^%d states" % ell)
    n_plus, n_minus = crossing_signs(diagram)
    total = Laurent()
    for state in itertools.product((0, 1), repeat=ell):
        w = sum(state)
        c = len(_circles_at(diagram, state))
        term = Laurent.term(1 if w % 2 == 0 else -1, w) * (
            LOOP ** (c - 1 if reduced else c)
        )
        total = total + term
    sign = 1 if n_plus % 2 == 0 else -1
    shift = -2 * n_plus + n_minus
    if reduced:
        shift += REDUCED_QUANTUM_SHIFT + 1
    return Laurent.term(sign, shift) * total


def mark_invariance_check(diagram: LinkDiagram) -> bool:
    """Reduced homology computed from two different marks must agree."""
    arcs = diagram.arcs
    if len(arcs) < 2:
        return True
    t1 = homology(assemble(diagram.with_mark(arcs[0]), reduced=True))
    t2 = homology(assemble(diagram.with_mark(arcs[-1]), reduced=True))
    return t1.ranks == t2.ranks


def face_commutativity_check(diagram: LinkDiagram, reduced: bool = False) -> bool:
    """Both composites around every 2-face of the cube are equal matrices."""
    ell = diagram.n_crossings
    if reduced and diagram.mark is None and diagram.crossings:
        diagram = diagram.with_mark(1)
    for state in itertools.product((0, 1), repeat=ell):
        zeros = [t for t in range(ell) if state[t] == 0]
        for t1, t2 in itertools.combinations(zeros, 2):
            s1 = state[:t1] + (1,) + state[t1 + 1:]
            s2 = state[:t2] + (1,) + state[t2 + 1:]
            s12 = s1[:t2] + (1,) + s1[t2 + 1:]
            via1 = edge_map(diagram, s1, s12, reduced) @ edge_map(
                diagram, state, s1, reduced)
            via2 = edge_map(diagram, s2, s12, reduced) @ edge_map(
                diagram, state, s2, reduced)
            if via1 != via2:
                return False
    return True
