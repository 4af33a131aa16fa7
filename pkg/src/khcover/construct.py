"""Diagram builders: braid closures, twist networks, medial diagrams.

The two-terminal network builders realize a positive rational p/q as the
resistance of a planar series-parallel multigraph; merging the terminals
and taking the medial yields a reduced alternating diagram whose
determinant is p.  Pretzel and Montesinos diagrams come from chaining
several such networks before closing up, torus and polyhedral diagrams
from braid closures or an explicit plane graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import LinkDiagram, _rectify_under, parse_pd
from .errors import MalformedCode

__all__ = [
    "PlaneGraph",
    "braid_closure",
    "medial_diagram",
    "rational_diagram",
    "montesinos_diagram",
    "prism_graph",
]


@dataclass
class PlaneGraph:
    """Plane multigraph given by its rotation system.

    edges[i] = (u, v); rot[w] lists the edge ends (edge index, end 0 or 1)
    counterclockwise around w.  Each end appears exactly once.
    """

    edges: list[tuple[int, int]]
    rot: dict[int, list[tuple[int, int]]]

    def spanning_tree_count(self) -> int:
        from .goeritz import BlackGraph, det_matrix_tree

        n = {v: i for i, v in enumerate(sorted(self.rot))}
        es = tuple(
            (min(n[u], n[v]), max(n[u], n[v]), i)
            for i, (u, v) in enumerate(self.edges)
        )
        return det_matrix_tree(BlackGraph(len(n), es))


def medial_diagram(
    graph: PlaneGraph, name: str | None = None, marked: bool = False
) -> LinkDiagram:
    """Alternating diagram whose crossings are the edges of the graph.

    Each corner of the rotation system becomes an arc; at the crossing of
    edge (u, v) the quadrants facing u and v are the class-A pair, so the
    graph itself is the black Tait graph of the output.
    """
    corner: dict[tuple[int, int], int] = {}
    for w in sorted(graph.rot):
        for i in range(len(graph.rot[w])):
            corner[(w, i)] = len(corner) + 1
    place: dict[tuple[int, int], tuple[int, int]] = {}
    for w, ends in graph.rot.items():
        for i, end in enumerate(ends):
            place[end] = (w, i)
    tuples = []
    for e in range(len(graph.edges)):
        u, iu = place[(e, 0)]
        v, iv = place[(e, 1)]
        du, dv = len(graph.rot[u]), len(graph.rot[v])
        tuples.append(
            [
                corner[(u, iu)],
                corner[(u, (iu - 1) % du)],
                corner[(v, iv)],
                corner[(v, (iv - 1) % dv)],
            ]
        )
    parts = ["X[%d,%d,%d,%d]" % tuple(t) for t in _rectify_under(tuples)]
    if marked:
        parts.append("mark=1")
    return parse_pd(";".join(parts), name=name)


# -- two-terminal networks ---------------------------------------------------
#
# A network is a PlaneGraph plus terminals s (west) and t (east) on the
# outer face.  Rotation lists at s run CCW south to north, at t north to
# south, so compositions are pure concatenations.


@dataclass
class _Net:
    graph: PlaneGraph
    s: int
    t: int


def _fresh(net_id: list[int]) -> int:
    net_id[0] += 1
    return net_id[0]


def _unit(ids: list[int]) -> _Net:
    s, t = _fresh(ids), _fresh(ids)
    return _Net(PlaneGraph([(s, t)], {s: [(0, 0)], t: [(0, 1)]}), s, t)


def _merge(a: PlaneGraph, b: PlaneGraph) -> tuple[PlaneGraph, int]:
    """Disjoint union; returns the edge index offset of b."""
    off = len(a.edges)
    edges = a.edges + b.edges
    rot = {w: list(ends) for w, ends in a.rot.items()}
    for w, ends in b.rot.items():
        assert w not in rot
        rot[w] = [(e + off, end) for e, end in ends]
    return PlaneGraph(edges, rot), off


def _series(a: _Net, b: _Net) -> _Net:
    g, _ = _merge(a.graph, b.graph)
    g.rot[a.t] = g.rot[a.t] + g.rot.pop(b.s)
    g.edges = [
        (a.t if x == b.s else x, a.t if y == b.s else y) for x, y in g.edges
    ]
    return _Net(g, a.s, b.t)


def _parallel(a: _Net, b: _Net) -> _Net:
    # a on top, b below; both terminal pairs merge
    g, _ = _merge(a.graph, b.graph)
    g.rot[a.s] = g.rot.pop(b.s) + g.rot[a.s]
    g.rot[a.t] = g.rot[a.t] + g.rot.pop(b.t)
    repl = {b.s: a.s, b.t: a.t}
    g.edges = [(repl.get(x, x), repl.get(y, y)) for x, y in g.edges]
    return _Net(g, a.s, a.t)


def _chain(n: int, ids: list[int]) -> _Net:
    net = _unit(ids)
    for _ in range(n - 1):
        net = _series(net, _unit(ids))
    return net


def _bundle(n: int, ids: list[int]) -> _Net:
    net = _unit(ids)
    for _ in range(n - 1):
        net = _parallel(net, _unit(ids))
    return net


def _net_from_fraction(value: Fraction, ids: list[int]) -> _Net:
    """Network with resistance d1 + 1/(d2 + 1/(...)) = value.

    Odd continued-fraction levels are series chains, even levels parallel
    bundles; a leading zero digit (value < 1) just skips the first chain.
    """
    if value <= 0:
        raise MalformedCode("twist fraction must be positive")
    digits = []
    p, q = value.numerator, value.denominator
    while q:
        digits.append(p // q)
        p, q = q, p - (p // q) * q
    net: _Net | None = None
    for j in range(len(digits) - 1, -1, -1):
        d = digits[j]
        if j % 2 == 0:
            part = _chain(d, ids) if d else None
            if net is not None and part is not None:
                net = _series(part, net)
            elif part is not None:
                net = part
        else:
            part = _bundle(d, ids)
            net = part if net is None else _parallel(part, net)
    assert net is not None
    return net


def _close(net: _Net) -> PlaneGraph:
    """Merge the two terminals around the outer face."""
    g = net.graph
    if net.t == net.s:
        return g
    g.rot[net.s] = g.rot[net.t] + g.rot[net.s]
    del g.rot[net.t]
    g.edges = [
        (net.s if x == net.t else x, net.s if y == net.t else y)
        for x, y in g.edges
    ]
    return g


def rational_diagram(
    fraction: Fraction, name: str | None = None, marked: bool = False
) -> LinkDiagram:
    """Reduced alternating diagram of the two-bridge link of the fraction.

    The determinant is fraction.numerator; a fraction > 1 keeps the
    diagram reduced.
    """
    ids = [0]
    return medial_diagram(_close(_net_from_fraction(fraction, ids)), name, marked)


def montesinos_diagram(
    fractions: list[Fraction], name: str | None = None, marked: bool = False
) -> LinkDiagram:
    """Closure of a west-to-east chain of twist networks.

    With fractions 1/q1 .. 1/qk this is the (q1, .., qk) pretzel; the
    determinant is |prod(alpha_i) * sum(beta_i/alpha_i)| for beta/alpha
    the fractions.
    """
    ids = [0]
    nets = [_net_from_fraction(f, ids) for f in fractions]
    net = nets[0]
    for other in nets[1:]:
        net = _series(net, other)
    return medial_diagram(_close(net), name, marked)


def pretzel_diagram(
    entries: list[int], name: str | None = None, marked: bool = False
) -> LinkDiagram:
    """Pretzel link: vertical twist regions side by side, closed up.

    entries[i] is the signed crossing count of region i; mixed signs give
    non-alternating diagrams.  Regions of size zero are not supported.
    """
    if not entries or any(e == 0 for e in entries):
        raise MalformedCode("pretzel entries must be nonzero")
    ids = [0]

    def fresh() -> int:
        ids[0] += 1
        return ids[0]

    tuples: list[list[int]] = []
    tops, bottoms = [], []
    for c in entries:
        tl, tr = fresh(), fresh()
        a, b = tl, tr
        for _ in range(abs(c)):
            na, nb = fresh(), fresh()
            if c > 0:
                tuples.append([b, a, na, nb])
            else:
                tuples.append([a, na, nb, b])
            a, b = na, nb
        tops.append((tl, tr))
        bottoms.append((a, b))
    uf: dict[int, int] = {}

    def find(x: int) -> int:
        while uf.setdefault(x, x) != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            uf[max(rx, ry)] = min(rx, ry)

    k = len(entries)
    for i in range(k):
        union(tops[i][1], tops[(i + 1) % k][0])
        union(bottoms[i][1], bottoms[(i + 1) % k][0])
    relabel: dict[int, int] = {}
    merged = []
    for t in tuples:
        labs = []
        for a in t:
            r = find(a)
            if r not in relabel:
                relabel[r] = len(relabel) + 1
            labs.append(relabel[r])
        merged.append(labs)
    parts = ["X[%d,%d,%d,%d]" % tuple(t) for t in _rectify_under(merged)]
    if marked:
        parts.append("mark=1")
    return parse_pd(";".join(parts), name=name)


def prism_graph() -> PlaneGraph:
    """Triangular prism: outer triangle 0 1 2, inner 3 4 5, three rungs."""
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    rot = {
        0: [(0, 0), (6, 0), (2, 1)],
        1: [(1, 0), (7, 0), (0, 1)],
        2: [(2, 0), (8, 0), (1, 1)],
        3: [(6, 1), (3, 0), (5, 1)],
        4: [(4, 0), (3, 1), (7, 1)],
        5: [(5, 0), (4, 1), (8, 1)],
    }
    return PlaneGraph(edges, rot)


def braid_closure(
    word: list[int],
    n_strands: int | None = None,
    name: str | None = None,
    marked: bool = False,
) -> LinkDiagram:
    """Closure of a braid word; letter +i or -i is the i-th generator.

    Position 0 of each crossing is the incoming under-strand, so the
    positive generator on strands (i, i+1) reads X[a', a, b, b'] with a, a'
    the incoming and b, b' the outgoing labels.
    """
    if not all(isinstance(w, int) and w != 0 for w in word):
        raise MalformedCode("braid letters must be nonzero integers")
    width = max((abs(w) for w in word), default=0) + 1
    n = n_strands if n_strands is not None else width
    if n < width:
        raise MalformedCode("braid word needs %d strands" % width)
    cur = list(range(1, n + 1))
    nxt = n + 1
    raw: list[tuple[int, int, int, int]] = []
    for w in word:
        i = abs(w)
        a, a2 = cur[i - 1], cur[i]
        b, b2 = nxt, nxt + 1
        nxt += 2
        if w > 0:
            raw.append((a2, a, b, b2))
        else:
            raw.append((a, b, b2, a2))
        cur[i - 1], cur[i] = b, b2
    merged = {cur[p]: p + 1 for p in range(n)}
    used = sorted({merged.get(a, a) for t in raw for a in t})
    relabel = {a: i + 1 for i, a in enumerate(used)}
    parts = [
        "X[%d,%d,%d,%d]" % tuple(relabel[merged.get(a, a)] for a in t)
        for t in raw
    ]
    loops = sum(
        1 for p in range(n) if cur[p] == p + 1 and (p + 1) not in relabel
    )
    if loops:
        parts.append("O%d" % loops)
    if marked and relabel:
        parts.append("mark=1")
    return parse_pd(";".join(parts), name=name)
