"""Planar diagram codes for link diagrams.

A diagram is a list of crossings ``X[a,b,c,d]`` plus an optional count of
crossing-free unknot components.  The four arcs of a crossing are listed
counterclockwise starting from the incoming under-strand, so position 0 is
the under-strand entering the crossing and position 2 is it leaving.  Arc
labels are positive integers; each label occurs exactly twice overall.

Orientations are recovered at parse time: the under-strand convention
forces a direction on every component that passes under somewhere, and any
all-over component is oriented away from the first occurrence of its
smallest arc.  The counterclockwise quadrant order is a rotation system,
so planarity is checked with Euler's formula rather than assumed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    BadArcCount,
    Disconnected,
    LengthMismatch,
    MalformedCode,
    NonPlanar,
)

__all__ = [
    "Crossing",
    "LinkDiagram",
    "parse_pd",
    "crossing_signs",
    "resolve",
    "resolve_crossing",
    "circle_count",
    "mirror",
    "faces",
    "reverse_components",
]

_TOKEN_RE = re.compile(
    r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]"
    r"|O(\d+)"
    r"|mark\s*=\s*(\d+)"
    r"|name\s*=\s*([A-Za-z0-9_.\-]+)"
)


@dataclass(frozen=True)
class Crossing:
    """One crossing; arcs counterclockwise from the incoming under-strand."""

    arcs: tuple[int, int, int, int]

    def __getitem__(self, i: int) -> int:
        return self.arcs[i]

    def rotated(self, k: int) -> "Crossing":
        a = self.arcs
        return Crossing((a[k % 4], a[(k + 1) % 4], a[(k + 2) % 4], a[(k + 3) % 4]))


@dataclass(frozen=True)
class LinkDiagram:
    """Immutable parsed diagram.

    crossings      tuple of Crossing
    free_loops     number of crossing-free unknot components
    mark           marked arc (for reduced theories) or None
    name           optional label carried through outputs
    arc_heads      arc -> (crossing, position) where the arc points into
    arc_tails      arc -> (crossing, position) where the arc leaves from
    over_in        per crossing, the position (1 or 3) of the incoming
                   over-strand arc
    components     tuple of components, each a tuple of arcs in traversal
                   order
    """

    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    mark: int | None = None
    name: str | None = None
    arc_heads: dict = field(default_factory=dict, compare=False, repr=False)
    arc_tails: dict = field(default_factory=dict, compare=False, repr=False)
    over_in: tuple[int, ...] = field(default=(), compare=False, repr=False)
    components: tuple[tuple[int, ...], ...] = field(
        default=(), compare=False, repr=False
    )

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> list[int]:
        seen = set()
        for x in self.crossings:
            seen.update(x.arcs)
        return sorted(seen)

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    def to_code(self) -> str:
        parts = [
            "X[%d,%d,%d,%d]" % x.arcs for x in self.crossings
        ]
        if self.free_loops:
            parts.append("O%d" % self.free_loops)
        if self.mark is not None:
            parts.append("mark=%d" % self.mark)
        return ";".join(parts) if parts else "O0"

    def with_mark(self, mark: int | None) -> "LinkDiagram":
        code = ";".join("X[%d,%d,%d,%d]" % x.arcs for x in self.crossings)
        if self.free_loops:
            code = (code + ";" if code else "") + "O%d" % self.free_loops
        if mark is not None:
            code = (code + ";" if code else "") + "mark=%d" % mark
        return parse_pd(code, name=self.name)

    def is_connected(self) -> bool:
        """Connectivity of the underlying 4-valent graph.

        Crossing-free loops are separate components, except that a bare
        unknot (no crossings, one loop) counts as connected.
        """
        if not self.crossings:
            return self.free_loops == 1
        if self.free_loops:
            return False
        adj: dict[int, set[int]] = {}
        occ: dict[int, list[int]] = {}
        for k, x in enumerate(self.crossings):
            for a in x.arcs:
                occ.setdefault(a, []).append(k)
        for ks in occ.values():
            i, j = ks
            adj.setdefault(i, set()).add(j)
            adj.setdefault(j, set()).add(i)
        seen = {0}
        stack = [0]
        while stack:
            k = stack.pop()
            for nb in adj.get(k, ()):
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.crossings)


def parse_pd(text: str, name: str | None = None) -> LinkDiagram:
    """Parse a planar diagram code.

    Grammar: semicolon-separated ``X[a,b,c,d]`` items, optional ``O<k>``
    for k crossing-free unknots, optional ``mark=<arc>``.  Whitespace is
    free; lines starting with ``#`` are comments.
    """
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    body = " ".join(lines)
    crossings: list[Crossing] = []
    free_loops = 0
    mark: int | None = None
    consumed = []
    for item in body.split(";"):
        item = item.strip()
        if not item:
            continue
        m = _TOKEN_RE.fullmatch(item)
        if not m:
            raise MalformedCode("cannot parse item %r" % item)
        if m.group(1) is not None:
            arcs = tuple(int(m.group(i)) for i in range(1, 5))
            if any(a <= 0 for a in arcs):
                raise MalformedCode("arc labels must be positive: %r" % item)
            crossings.append(Crossing(arcs))
        elif m.group(5) is not None:
            free_loops += int(m.group(5))
        elif m.group(6) is not None:
            if mark is not None:
                raise MalformedCode("duplicate mark")
            mark = int(m.group(6))
        else:
            if name is None:
                name = m.group(7)
        consumed.append(item)
    if not consumed:
        raise MalformedCode("empty code")

    # arc labels are exactly 1..2*crossings, each appearing twice
    occ: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(crossings):
        for p, a in enumerate(x.arcs):
            occ.setdefault(a, []).append((k, p))
    for a in range(1, 2 * len(crossings) + 1):
        if len(occ.get(a, ())) != 2:
            raise BadArcCount(
                "arc %d appears %d times (want 2)" % (a, len(occ.get(a, ())))
            )
    for a in occ:
        if a > 2 * len(crossings):
            raise BadArcCount("arc %d exceeds 2*crossings" % a)
    # A mark names an arc; free loops have none, so a mark needs crossings.
    if mark is not None and mark not in occ:
        raise MalformedCode("mark=%d is not an arc of the diagram" % mark)

    heads, tails, over_in, components = _orient(crossings, occ)
    diagram = LinkDiagram(
        crossings=tuple(crossings),
        free_loops=free_loops,
        mark=mark,
        name=name,
        arc_heads=heads,
        arc_tails=tails,
        over_in=tuple(over_in),
        components=tuple(components),
    )
    _check_planar(diagram)
    return diagram


def _trace_component(crossings, occ, start, start_head):
    """Follow the strand from `start` assuming it points into start_head.

    Returns a list of (arc, head) pairs for the whole component.  The
    strand enters a crossing at (k, p) and leaves at (k, p+2); the arc it
    leaves on has its tail there and its head at that arc's other
    occurrence.
    """
    out = []
    seen = set()
    arc, head = start, start_head
    while True:
        out.append((arc, head))
        seen.add(arc)
        k, p = head
        q = (p + 2) % 4
        nxt = crossings[k][q]
        o1, o2 = occ[nxt]
        nxt_head = o2 if o1 == (k, q) else o1
        if nxt == start:
            if nxt_head != start_head:
                raise MalformedCode(
                    "strand through arc %d does not close up" % start
                )
            return out
        if nxt in seen:
            raise MalformedCode("strand revisits arc %d" % nxt)
        arc, head = nxt, nxt_head


def _direction_valid(occ, trace):
    """Check the under-strand convention against a directed trace."""
    head_of = dict(trace)
    for arc, _ in trace:
        for o in occ[arc]:
            if o[1] == 0 and head_of[arc] != o:
                return False
            if o[1] == 2 and head_of[arc] == o:
                return False
    return True


def _orient(crossings, occ):
    """Assign directions to arcs and trace components.

    Returns (heads, tails, over_in, components).  heads[a] / tails[a] are
    (crossing, position) pairs; over_in[k] is 1 or 3.
    """
    heads: dict[int, tuple[int, int]] = {}
    tails: dict[int, tuple[int, int]] = {}
    components: list[tuple[int, ...]] = []

    remaining = set(occ)
    while remaining:
        start = min(remaining)
        o1, o2 = occ[start]
        trace = None
        for cand in (o1, o2):
            try:
                t = _trace_component(crossings, occ, start, cand)
            except MalformedCode:
                continue
            if _direction_valid(occ, t):
                trace = t
                break
        if trace is None:
            raise MalformedCode(
                "no consistent orientation for the component through arc %d"
                % start
            )
        comp = []
        for arc, head in trace:
            heads[arc] = head
            a1, a2 = occ[arc]
            tails[arc] = a2 if head == a1 else a1
            comp.append(arc)
            remaining.discard(arc)
        components.append(tuple(comp))

    # read off the over-strand direction at each crossing
    over_in = []
    for k, x in enumerate(crossings):
        assert heads[x[0]] == (k, 0) and tails[x[2]] == (k, 2)
        in1 = heads[x[1]] == (k, 1)
        in3 = heads[x[3]] == (k, 3)
        if in1 == in3:
            raise MalformedCode(
                "crossing %d: over-strand has %s incoming arcs"
                % (k, "two" if in1 else "no")
            )
        over_in.append(1 if in1 else 3)
    return heads, tails, over_in, components


def _check_planar(diagram: LinkDiagram) -> None:
    """Euler characteristic test of the rotation system, per graph component."""
    if not diagram.crossings:
        return
    comp_of = _graph_components(diagram)
    n_faces: dict[int, int] = {}
    for face in _face_orbits(diagram):
        k = face[0][0]
        c = comp_of[k]
        n_faces[c] = n_faces.get(c, 0) + 1
    counts: dict[int, int] = {}
    for c in comp_of.values():
        counts[c] = counts.get(c, 0) + 1
    for c, v in counts.items():
        e = 2 * v
        f = n_faces.get(c, 0)
        if v - e + f != 2:
            raise NonPlanar(
                "rotation system has genus %d" % ((2 - (v - e + f)) // 2)
            )


def _graph_components(diagram: LinkDiagram) -> dict[int, int]:
    occ: dict[int, list[int]] = {}
    for k, x in enumerate(diagram.crossings):
        for a in x.arcs:
            occ.setdefault(a, []).append(k)
    adj: dict[int, set[int]] = {k: set() for k in range(diagram.n_crossings)}
    for ks in occ.values():
        i, j = ks
        adj[i].add(j)
        adj[j].add(i)
    comp = {}
    cid = 0
    for k in range(diagram.n_crossings):
        if k in comp:
            continue
        stack = [k]
        comp[k] = cid
        while stack:
            t = stack.pop()
            for nb in adj[t]:
                if nb not in comp:
                    comp[nb] = cid
                    stack.append(nb)
        cid += 1
    return comp


def faces(diagram: LinkDiagram) -> list[tuple[tuple[int, int], ...]]:
    """Faces of the embedded 4-valent graph.

    Each face is a tuple of corners (crossing k, quadrant j), where
    quadrant j sits between the arcs at positions j and j+1 (mod 4) of
    crossing k.  One face is one orbit of the turn-by-one walk on the
    rotation system; every quadrant belongs to exactly one face.

    Only connected diagrams have a well-defined face list (a split code
    does not say how its pieces nest).  The bare unknot gets two empty
    faces, inside and outside.
    """
    if not diagram.crossings:
        if diagram.free_loops == 1:
            return [(), ()]
        raise Disconnected("face structure of split loops is not determined")
    if not diagram.is_connected():
        raise Disconnected("faces of a split diagram depend on the embedding")
    return _face_orbits(diagram)


def _face_orbits(diagram: LinkDiagram) -> list[tuple[tuple[int, int], ...]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(diagram.crossings):
        for p, a in enumerate(x.arcs):
            occ.setdefault(a, []).append((k, p))

    # dart = (crossing, position) read as "leave the crossing along the arc
    # in this position".  Crossing the arc lands at its other occurrence
    # (k', p'); turning one step in the rotation gives the next dart
    # (k', p'+1).  The corner swept at k' lies between p' and p'+1.
    def step(dart):
        k, p = dart
        arc = diagram.crossings[k][p]
        o1, o2 = occ[arc]
        k2, p2 = o2 if (k, p) == o1 else o1
        return (k2, (p2 + 1) % 4)

    remaining = {
        (k, p) for k in range(diagram.n_crossings) for p in range(4)
    }
    out = []
    while remaining:
        start = min(remaining)
        corners = []
        d = start
        while True:
            remaining.discard(d)
            d = step(d)
            corners.append((d[0], (d[1] - 1) % 4))
            if d == start:
                break
        out.append(tuple(corners))
    return out


def crossing_signs(diagram: LinkDiagram) -> tuple[int, int]:
    """(n_plus, n_minus) with respect to the recovered orientation.

    A crossing is positive when the incoming over-strand sits at position 1
    (the arc counterclockwise-next after the incoming under-strand).  Under
    this convention the standard code X[1,4,2,5];X[3,6,4,1];X[5,2,6,3] is
    the right-handed trefoil with signs (3, 0).
    """
    n_plus = sum(1 for p in diagram.over_in if p == 1)
    return n_plus, len(diagram.over_in) - n_plus


def _smooth_pairs(state_bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
    # 0-smoothing joins quadrant positions (0,1) and (2,3);
    # 1-smoothing joins (0,3) and (1,2).
    if state_bit == 0:
        return (0, 1), (2, 3)
    return (0, 3), (1, 2)


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = p = self.parent.setdefault(p, p)
            x, p = p, self.parent.setdefault(p, p)
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def resolve(diagram: LinkDiagram, state: tuple[int, ...]) -> list[frozenset[int]]:
    """Circles of the complete resolution at the given 0/1 state.

    Returns the partition of arcs into circles, each a frozenset, sorted by
    smallest arc.  Crossing-free loops are not included (they carry no
    arcs); callers add diagram.free_loops extra circles.
    """
    if len(state) != diagram.n_crossings:
        raise LengthMismatch(
            "state length %d != %d crossings" % (len(state), diagram.n_crossings)
        )
    if any(s not in (0, 1) for s in state):
        raise LengthMismatch("state entries must be 0 or 1")
    uf = _UnionFind()
    for x, s in zip(diagram.crossings, state):
        for p, q in _smooth_pairs(s):
            uf.union(x[p], x[q])
    groups: dict[int, set[int]] = {}
    for x in diagram.crossings:
        for a in x.arcs:
            groups.setdefault(uf.find(a), set()).add(a)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def circle_count(diagram: LinkDiagram, state: tuple[int, ...]) -> int:
    """Number of circles of the resolution, including crossing-free loops."""
    if not diagram.crossings:
        if state:
            raise LengthMismatch("state must be empty for a crossingless diagram")
        return diagram.free_loops
    return len(resolve(diagram, state)) + diagram.free_loops


def _rectify_under(tuples: list[list[int]]) -> list[list[int]]:
    """Rotate crossing tuples by 2 where the under strand runs backwards.

    Input tuples are CCW quadrant lists whose 0-2 diagonal is the under
    strand, with no promise that position 0 is the incoming end.  Walking
    every strand fixes a direction per circle; crossings whose under strand
    is entered at position 2 get rotated so the code convention holds.
    Rotation by 2 changes neither the quadrant classes nor the smoothings.
    """
    occ: dict[int, list[tuple[int, int]]] = {}
    for i, labs in enumerate(tuples):
        for p, a in enumerate(labs):
            occ.setdefault(a, []).append((i, p))
    rotate: set[int] = set()
    seen: set[int] = set()
    for a0 in sorted(occ):
        if a0 in seen:
            continue
        place = occ[a0][0]
        arc = a0
        while True:
            seen.add(arc)
            i, p = place
            if p == 2:
                rotate.add(i)
            nxt = (i, (p + 2) % 4)
            arc = tuples[i][nxt[1]]
            first, second = occ[arc]
            place = second if first == nxt else first
            if arc == a0 and place == occ[a0][0]:
                break
    return [
        list(t[2:]) + list(t[:2]) if i in rotate else list(t)
        for i, t in enumerate(tuples)
    ]


def resolve_crossing(diagram: LinkDiagram, k: int, side: int) -> LinkDiagram:
    """Replace crossing k by one of its two smoothings.

    The result is a diagram with one crossing fewer.  Arcs merged by the
    smoothing get a single fresh label; a merged class that touches no other
    crossing closes up into a crossing-free loop.  The mark survives if its
    arc class still appears at some crossing, otherwise it is dropped.
    """
    if not 0 <= k < diagram.n_crossings:
        raise MalformedCode("no crossing with index %d" % k)
    if side not in (0, 1):
        raise MalformedCode("side must be 0 or 1")
    x = diagram.crossings[k]
    uf = _UnionFind()
    for p, q in _smooth_pairs(side):
        uf.union(x[p], x[q])
    return _sew(diagram, frozenset([k]), uf)


def _sew(diagram: LinkDiagram, drop: frozenset[int], uf: "_UnionFind") -> LinkDiagram:
    """Rebuild a diagram after deleting some crossings and gluing arc ends.

    uf holds the arc identifications caused by the deletion.  Merged classes
    that no longer touch a crossing close up into free loops; the mark
    survives if its class still appears somewhere.
    """
    rest = [c for i, c in enumerate(diagram.crossings) if i not in drop]
    relabel: dict[int, int] = {}
    tuples: list[list[int]] = []
    for c in rest:
        labs = []
        for a in c.arcs:
            r = uf.find(a)
            if r not in relabel:
                relabel[r] = len(relabel) + 1
            labs.append(relabel[r])
        tuples.append(labs)
    # Joining two strand ends may reverse part of a strand, so the old
    # under-in positions can point the wrong way.
    parts = ["X[%d,%d,%d,%d]" % tuple(t) for t in _rectify_under(tuples)]
    loops = diagram.free_loops
    gone = {a for i in drop for a in diagram.crossings[i].arcs}
    for r in {uf.find(a) for a in gone}:
        if r not in relabel:
            loops += 1
    if loops:
        parts.append("O%d" % loops)
    if diagram.mark is not None:
        new_mark = relabel.get(uf.find(diagram.mark))
        if new_mark is not None:
            parts.append("mark=%d" % new_mark)
    return parse_pd(";".join(parts), name=diagram.name)


def mirror(diagram: LinkDiagram) -> LinkDiagram:
    """Swap over- and under-strands at every crossing.

    The quadrants are relabelled so position 0 is again the incoming
    under-strand: the old over-strand had its head at position 1 or 3, and
    that position becomes the new position 0.
    """
    parts = []
    for k, x in enumerate(diagram.crossings):
        p = diagram.over_in[k]
        parts.append("X[%d,%d,%d,%d]" % x.rotated(p).arcs)
    if diagram.free_loops:
        parts.append("O%d" % diagram.free_loops)
    if diagram.mark is not None:
        parts.append("mark=%d" % diagram.mark)
    out = parse_pd(";".join(parts), name=diagram.name)
    return out


def reverse_components(
    diagram: LinkDiagram, indices: tuple[int, ...]
) -> LinkDiagram:
    """Reverse the orientation of the chosen components (0-based indices).

    Crossings whose under-strand reverses are rotated by two positions so
    position 0 stays the incoming under-strand; smoothings are unaffected
    by that rotation.  Reversing every component leaves all crossing signs
    unchanged; reversing a proper subset can change them.
    """
    idx = set(indices)
    rev_arcs: set[int] = set()
    for i in idx:
        if not 0 <= i < len(diagram.components):
            raise MalformedCode("no component with index %d" % i)
        rev_arcs.update(diagram.components[i])
    rot = [2 if x[0] in rev_arcs else 0 for x in diagram.crossings]
    new_cross = tuple(
        x.rotated(r) if r else x for x, r in zip(diagram.crossings, rot)
    )

    def tr(place: tuple[int, int]) -> tuple[int, int]:
        k, p = place
        return (k, (p - rot[k]) % 4)

    heads: dict[int, tuple[int, int]] = {}
    tails: dict[int, tuple[int, int]] = {}
    for a in diagram.arc_heads:
        h, t = tr(diagram.arc_heads[a]), tr(diagram.arc_tails[a])
        if a in rev_arcs:
            h, t = t, h
        heads[a], tails[a] = h, t
    over_in = tuple(
        1 if heads[x[1]] == (k, 1) else 3 for k, x in enumerate(new_cross)
    )
    comps = tuple(
        tuple(reversed(c)) if i in idx else c
        for i, c in enumerate(diagram.components)
    )
    return LinkDiagram(
        crossings=new_cross,
        free_loops=diagram.free_loops,
        mark=diagram.mark,
        name=diagram.name,
        arc_heads=heads,
        arc_tails=tails,
        over_in=over_in,
        components=comps,
    )
