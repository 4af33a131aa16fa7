"""Checkerboard surfaces: black graphs, determinants and circuit lattices.

The faces of a connected diagram admit a unique two-coloring in which the
colors alternate around every crossing; class A (the quadrants clockwise
from the incoming under-strand) is anchored to the color named by
GOERITZ_BLACK.  For alternating diagrams the black faces form a Tait graph
whose spanning trees count the determinant, and the fundamental circuits of
a spanning tree carry a negative definite intersection form.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .conventions import GOERITZ_BLACK
from .diagram import LinkDiagram, faces, resolve_crossing
from .errors import Disconnected, DisconnectedResolution, IndefiniteForm, NotAlternating
from .linalg import MatZ

__all__ = [
    "BlackGraph",
    "GoeritzLattice",
    "is_alternating",
    "checkerboard",
    "black_graph",
    "det_matrix_tree",
    "goeritz_determinant",
    "build_lattice",
    "det_additivity_check",
]


def is_alternating(diagram: LinkDiagram) -> bool:
    """True when every arc leaves an over-position and enters an under-position."""
    parity: dict[int, list[int]] = {}
    for x in diagram.crossings:
        for p, a in enumerate(x.arcs):
            parity.setdefault(a, []).append(p % 2)
    return all(pair[0] != pair[1] for pair in parity.values())


def _face_index(fs) -> dict[tuple[int, int], int]:
    return {corner: i for i, f in enumerate(fs) for corner in f}


def checkerboard(diagram: LinkDiagram) -> tuple[str, ...]:
    """Color of each face, indexed as in faces().

    Adjacent quadrants around a crossing get opposite colors; the face
    containing quadrant 0 of crossing 0 is black exactly when GOERITZ_BLACK
    is "A".  A bare unknot has two faces, colored black then white.
    """
    fs = faces(diagram)
    if not diagram.crossings:
        return ("black", "white")
    face_of = _face_index(fs)
    adj: dict[int, set[int]] = {i: set() for i in range(len(fs))}
    for k in range(diagram.n_crossings):
        for p in range(4):
            u = face_of[(k, p)]
            v = face_of[(k, (p + 1) % 4)]
            adj[u].add(v)
            adj[v].add(u)
    color: dict[int, str] = {}
    start = face_of[(0, 0)]
    color[start] = "black" if GOERITZ_BLACK == "A" else "white"
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in color:
                # connected shadows are checkerboard-colorable
                assert color[v] != color[u]
            else:
                color[v] = "white" if color[u] == "black" else "black"
                stack.append(v)
    return tuple(color[i] for i in range(len(fs)))


@dataclass(frozen=True)
class BlackGraph:
    """Tait graph on the black faces.

    Edges are (u, v, crossing) with u <= v; a kink contributes a self-loop.
    faces[i] is the face index behind vertex i.
    """

    n_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    faces: tuple[int, ...] = ()

    def is_connected(self) -> bool:
        if self.n_vertices <= 1:
            return True
        adj: dict[int, set[int]] = {i: set() for i in range(self.n_vertices)}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n_vertices


def black_graph(diagram: LinkDiagram) -> BlackGraph:
    """Black Tait graph of an alternating diagram: one edge per crossing."""
    if not is_alternating(diagram):
        raise NotAlternating("diagram is not alternating")
    colors = checkerboard(diagram)
    fs = faces(diagram)
    face_of = _face_index(fs)
    black = [i for i, c in enumerate(colors) if c == "black"]
    vid = {f: i for i, f in enumerate(black)}
    edges = []
    for k in range(diagram.n_crossings):
        corners = [
            face_of[(k, p)]
            for p in range(4)
            if colors[face_of[(k, p)]] == "black"
        ]
        assert len(corners) == 2
        u, v = sorted(vid[f] for f in corners)
        edges.append((u, v, k))
    return BlackGraph(len(black), tuple(edges), tuple(black))


def det_matrix_tree(graph: BlackGraph) -> int:
    """Spanning trees of the black graph, via the Laplacian cofactor.

    Self-loops never appear in a tree and are ignored.  A single vertex has
    the empty tree; a disconnected graph has none.
    """
    n = graph.n_vertices
    lap = [[0] * n for _ in range(n)]
    for u, v, _ in graph.edges:
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return MatZ([row[1:] for row in lap[1:]]).det()


def goeritz_determinant(diagram: LinkDiagram) -> int:
    """|det| of the reduced Goeritz form on the white faces.

    Each crossing contributes eta * (e_u - e_v)(e_u - e_v)^T where u, v are
    its two white corners and eta is +1 exactly when those corners are the
    class-A pair.  The form has zero row sums, so any principal cofactor
    computes the determinant; works for arbitrary connected diagrams.
    """
    colors = checkerboard(diagram)
    if not diagram.crossings:
        return 1
    fs = faces(diagram)
    face_of = _face_index(fs)
    whites = [i for i, c in enumerate(colors) if c == "white"]
    widx = {f: i for i, f in enumerate(whites)}
    n = len(whites)
    g = [[0] * n for _ in range(n)]
    for k in range(diagram.n_crossings):
        a_white = colors[face_of[(k, 0)]] == "white"
        eta = 1 if a_white else -1
        pair = (0, 2) if a_white else (1, 3)
        u = widx[face_of[(k, pair[0])]]
        v = widx[face_of[(k, pair[1])]]
        if u == v:
            continue
        g[u][v] -= eta
        g[v][u] -= eta
        g[u][u] += eta
        g[v][v] += eta
    return abs(MatZ([row[1:] for row in g[1:]]).det())


@dataclass(frozen=True)
class GoeritzLattice:
    """Circuit lattice of a black graph.

    tree and extra list edge indices into graph.edges; the fundamental
    circuit of extra[i] is basis vector i, and q is the negative definite
    Gram matrix of circuits, counted with orientation.
    """

    graph: BlackGraph
    tree: tuple[int, ...]
    extra: tuple[int, ...]
    q: MatZ

    @property
    def b(self) -> int:
        return len(self.extra)

    def det(self) -> int:
        return abs(self.q.det())

    def to_json_dict(self) -> dict:
        return {
            "n_black": self.graph.n_vertices,
            "edges": [list(e) for e in self.graph.edges],
            "tree": list(self.tree),
            "extra": list(self.extra),
            "q": [list(row) for row in self.q.rows],
            "det": self.det(),
        }

    def to_csv(self) -> str:
        return "\n".join(
            ",".join(str(e) for e in row) for row in self.q.rows
        )


def build_lattice(graph: BlackGraph, tree_seed: int = 0) -> GoeritzLattice:
    """Intersection form of the fundamental circuits of a spanning tree.

    The tree is grown breadth-first from vertex 0; tree_seed shuffles the
    edge scan order, changing the tree but not the congruence class of q.
    Circuit i traverses extra edge i from u to v and returns along the
    tree, so q[i][j] = -<circuit_i, circuit_j>; a self-loop gives a length
    one circuit with q[i][i] = -1.
    """
    if not graph.is_connected():
        raise Disconnected("black graph is not connected")
    order = list(range(len(graph.edges)))
    if tree_seed:
        random.Random(tree_seed).shuffle(order)
    incident: dict[int, list[tuple[int, int]]] = {
        i: [] for i in range(graph.n_vertices)
    }
    for e in order:
        u, v, _ = graph.edges[e]
        if u == v:
            continue
        incident[u].append((e, v))
        incident[v].append((e, u))
    # parent[v] = (parent vertex, edge index, +1 if the edge is stored
    # parent -> v, else -1)
    parent: dict[int, tuple[int, int, int]] = {}
    in_tree: set[int] = set()
    queue = deque([0])
    seen = {0}
    while queue:
        u = queue.popleft()
        for e, v in incident[u]:
            if v not in seen:
                seen.add(v)
                eu, _, _ = graph.edges[e]
                parent[v] = (u, e, 1 if eu == u else -1)
                in_tree.add(e)
                queue.append(v)

    def path_to_root(v: int) -> list[tuple[int, int, int]]:
        out = []
        while v != 0:
            u, e, sign = parent[v]
            out.append((v, e, sign))
            v = u
        return out

    tree = tuple(sorted(in_tree))
    extra = tuple(e for e in range(len(graph.edges)) if e not in in_tree)
    circuits = []
    for e in extra:
        u, v, _ = graph.edges[e]
        vec = [0] * len(graph.edges)
        vec[e] = 1
        if u != v:
            up, vp = path_to_root(u), path_to_root(v)
            while up and vp and up[-1] == vp[-1]:
                up.pop()
                vp.pop()
            # close up the circuit: v back to u through the tree
            for _, te, sign in vp:
                vec[te] -= sign
            for _, te, sign in up:
                vec[te] += sign
        circuits.append(vec)
    b = len(extra)
    q = [
        [-sum(ci[t] * cj[t] for t in range(len(graph.edges))) for cj in circuits]
        for ci in circuits
    ]
    qmat = MatZ(q)
    for m in range(1, b + 1):
        minor = MatZ([[-q[i][j] for j in range(m)] for i in range(m)]).det()
        if minor <= 0:
            raise IndefiniteForm("circuit form is not negative definite")
    return GoeritzLattice(graph, tree, extra, qmat)


def det_additivity_check(diagram: LinkDiagram, k: int) -> bool:
    """Whether det(D) = det(D0) + det(D1) at crossing k.

    Both smoothings must stay connected; a split resolution raises
    DisconnectedResolution.  Smoothing preserves the alternating property,
    so the three determinants are all spanning tree counts.
    """
    total = det_matrix_tree(black_graph(diagram))
    child_dets = []
    for side in (0, 1):
        child = resolve_crossing(diagram, k, side)
        if not child.is_connected():
            raise DisconnectedResolution(
                "smoothing %d of crossing %d splits the diagram" % (side, k)
            )
        child_dets.append(det_matrix_tree(black_graph(child)))
    return total == child_dets[0] + child_dets[1]
