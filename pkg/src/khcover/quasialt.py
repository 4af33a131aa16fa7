"""Quasi-alternating certificates by determinant-additive resolution.

A certificate is a binary tree.  At each internal node some crossing of the
node's diagram is resolved both ways, the child determinants are nonzero and
sum to the parent determinant, and every branch bottoms out in an unknot.
The search works on a single projection, so failure to find a tree says
nothing about the link; only a found certificate is an answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    LinkDiagram,
    _sew,
    _UnionFind,
    faces,
    parse_pd,
    resolve_crossing,
)
from .errors import BudgetExceeded, Disconnected, KhcoverError
from .goeritz import goeritz_determinant, is_alternating

__all__ = [
    "QACertificate",
    "Unknown",
    "simplify",
    "qa_certify",
    "validate_certificate",
]


def _pass_through(uf: _UnionFind, x) -> None:
    # Deleting a crossing and letting both strands run straight through
    # glues the two diagonal position pairs.
    uf.union(x[0], x[2])
    uf.union(x[1], x[3])


def _r1_step(diagram: LinkDiagram) -> LinkDiagram | None:
    """Remove one kink, or return None if there is none."""
    for k, x in enumerate(diagram.crossings):
        if any(x[i] == x[(i + 1) % 4] for i in range(4)):
            uf = _UnionFind()
            _pass_through(uf, x)
            return _sew(diagram, frozenset([k]), uf)
    return None


def _r2_step(diagram: LinkDiagram) -> LinkDiagram | None:
    """Remove one poke pair, or return None if there is none.

    A two-corner face between distinct crossings is removable exactly when
    each of its two boundary arcs sits at equal-parity positions on both
    ends, i.e. one strand runs over the other twice.  Opposite parity is a
    clasp and stays.

    Removing a poke can split the diagram; split diagrams have no face
    list, so they are left alone rather than searched piecewise.
    """
    if not diagram.is_connected():
        return None
    for face in faces(diagram):
        if len(face) != 2:
            continue
        (k, i), (l, j) = face
        if k == l:
            continue
        xk, xl = diagram.crossings[k], diagram.crossings[l]
        a, b = xk[i], xk[(i + 1) % 4]
        if a == b or {a, b} != {xl[j], xl[(j + 1) % 4]}:
            continue
        qa = j if xl[j] == a else (j + 1) % 4
        if (i - qa) % 2:
            continue
        uf = _UnionFind()
        _pass_through(uf, xk)
        _pass_through(uf, xl)
        return _sew(diagram, frozenset([k, l]), uf)
    return None


def simplify(diagram: LinkDiagram) -> LinkDiagram:
    """Greedy kink and poke removal until neither move applies.

    Both moves preserve the link and only ever delete crossings, so the
    output has at most as many crossings as the input.
    """
    while diagram.n_crossings:
        out = _r1_step(diagram)
        if out is None:
            out = _r2_step(diagram)
        if out is None:
            break
        diagram = out
    return diagram


@dataclass(frozen=True)
class QACertificate:
    """One node of a quasi-alternating proof tree.

    code holds the node's diagram (already simplified), det its
    determinant.  Internal nodes name the resolved crossing and carry both
    child certificates in smoothing order; leaves are unknots and leave
    both fields None.
    """

    code: str
    det: int
    crossing: int | None = None
    children: tuple["QACertificate", "QACertificate"] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def to_json_dict(self) -> dict:
        out: dict = {"code": self.code, "det": self.det}
        if self.children is not None:
            out["crossing"] = self.crossing
            out["children"] = [c.to_json_dict() for c in self.children]
        return out

    def render(self) -> str:
        """Indented proof tree, one node per line."""
        lines: list[str] = []

        def walk(node: "QACertificate", depth: int, tag: str) -> None:
            pad = "  " * depth
            if node.is_leaf:
                lines.append("%s%sdet %d  unknot  %s" % (pad, tag, node.det, node.code))
                return
            lines.append(
                "%s%sdet %d  resolve crossing %d  %s"
                % (pad, tag, node.det, node.crossing, node.code)
            )
            walk(node.children[0], depth + 1, "0: ")
            walk(node.children[1], depth + 1, "1: ")

        walk(self, 0, "")
        return "\n".join(lines)


@dataclass(frozen=True)
class Unknown:
    """Inconclusive search result.  Never evidence against the link."""

    reason: str
    explored: int


def _memo_key(diagram: LinkDiagram):
    return tuple(x.arcs for x in diagram.crossings), diagram.free_loops


def _search(diagram: LinkDiagram, memo: dict, state: list[int]):
    base = simplify(diagram)
    key = _memo_key(base)
    if key in memo:
        return memo[key]
    if state[0] >= state[1]:
        raise BudgetExceeded("search budget of %d nodes exhausted" % state[1])
    state[0] += 1
    memo[key] = cert = _node(base, memo, state)
    return cert


def _node(base: LinkDiagram, memo: dict, state: list[int]):
    if base.n_crossings == 0:
        if base.n_components == 1:
            return QACertificate(base.to_code(), 1)
        return None
    if not base.is_connected():
        return None
    det = goeritz_determinant(base)
    if det == 0:
        return None
    if det == 1:
        # Connected alternating determinant-one diagrams depict the unknot;
        # any other determinant-one node stays unproven.
        if is_alternating(base):
            return QACertificate(base.to_code(), 1)
        return None
    candidates = []
    for k in range(base.n_crossings):
        c0 = resolve_crossing(base, k, 0)
        c1 = resolve_crossing(base, k, 1)
        if not (c0.is_connected() and c1.is_connected()):
            continue
        d0 = goeritz_determinant(c0)
        d1 = goeritz_determinant(c1)
        if d0 == 0 or d1 == 0 or d0 + d1 != det:
            continue
        candidates.append((abs(d0 - d1), k, c0, c1))
    candidates.sort(key=lambda t: t[:2])
    for _, k, c0, c1 in candidates:
        left = _search(c0, memo, state)
        if left is None:
            continue
        right = _search(c1, memo, state)
        if right is None:
            continue
        return QACertificate(base.to_code(), det, k, (left, right))
    return None


def qa_certify(diagram: LinkDiagram, budget: int = 100000):
    """Search for a quasi-alternating certificate of the given projection.

    Nodes are simplified before anything else, then either accepted as
    unknots, or split at a crossing whose two smoothings are connected with
    nonzero determinants adding up to the node's.  Crossings are tried by
    ascending determinant imbalance, falling back to every admissible
    crossing before giving up on a node.  Repeated sub-diagrams are shared
    through a memo table, and budget caps the number of distinct nodes
    examined.

    Returns a QACertificate, re-validated from scratch before it is handed
    out, or an Unknown describing why the search stopped.
    """
    if not diagram.is_connected():
        raise Disconnected("quasi-alternating search needs a connected diagram")
    state = [0, budget]
    memo: dict = {}
    try:
        cert = _search(diagram, memo, state)
    except BudgetExceeded:
        return Unknown("budget of %d nodes exhausted" % budget, state[0])
    if cert is None:
        return Unknown(
            "no determinant-additive resolution tree in this projection",
            state[0],
        )
    if not validate_certificate(cert):
        raise KhcoverError("certificate failed re-validation")
    return cert


def validate_certificate(cert: QACertificate) -> bool:
    """Recheck a certificate node by node with fresh determinants.

    Leaves must be crossingless single circles or connected alternating
    diagrams of determinant one.  Internal nodes must resolve their chosen
    crossing into two connected diagrams whose recomputed determinants are
    nonzero, sum to the node's determinant, and match the children.
    """
    d = parse_pd(cert.code)
    if cert.is_leaf:
        if cert.det != 1:
            return False
        if d.n_crossings == 0:
            return d.n_components == 1
        return d.is_connected() and is_alternating(d) and goeritz_determinant(d) == 1
    if cert.crossing is None or not d.is_connected():
        return False
    if not 0 <= cert.crossing < d.n_crossings:
        return False
    if goeritz_determinant(d) != cert.det:
        return False
    for side in (0, 1):
        child = resolve_crossing(d, cert.crossing, side)
        if not child.is_connected():
            return False
        if goeritz_determinant(child) != cert.children[side].det:
            return False
        if not validate_certificate(cert.children[side]):
            return False
    return cert.children[0].det + cert.children[1].det == cert.det
