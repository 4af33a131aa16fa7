"""Correction terms of a negative-definite form.

Characteristic covectors K (those with K_i = Q_ii mod 2) fall into
|det Q| classes under K -> K + 2Qv.  Each class carries

    d = (max K^2 + b) / 4,

where K^2 = K Q^{-1} K^t is the induced square on covectors.  Everything
is exact rational arithmetic; no floats.
"""

from __future__ import annotations

import math

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import IndefiniteForm
from .linalg import MatZ, smith_normal_form

__all__ = [
    "CharClass",
    "DTable",
    "enumerate_classes",
    "max_square",
    "d_table",
    "spinc_labels",
]


def _minor_det(rows: list[list[int]], skip_i: int, skip_j: int) -> int:
    sub = [
        [v for j, v in enumerate(row) if j != skip_j]
        for i, row in enumerate(rows)
        if i != skip_i
    ]
    return MatZ(sub).det()


def _adjugate(m: MatZ) -> MatZ:
    n = m.nrows
    if n == 0:
        return MatZ([])
    # adj[i][j] is the (j,i) cofactor
    out = [
        [(-1) ** (i + j) * _minor_det(m.rows, j, i) for j in range(n)]
        for i in range(n)
    ]
    return MatZ(out)


def _check_negative_definite(q: MatZ) -> None:
    if q.nrows != q.ncols:
        raise IndefiniteForm("form must be square")
    if q.rows != q.transpose().rows:
        raise IndefiniteForm("form must be symmetric")
    neg = [[-v for v in row] for row in q.rows]
    for k in range(1, q.nrows + 1):
        if MatZ([row[:k] for row in neg[:k]]).det() <= 0:
            raise IndefiniteForm("form is not negative definite")


@dataclass(frozen=True)
class CharClass:
    """One equivalence class of characteristic covectors."""

    representative: tuple[int, ...]
    label: tuple[int, ...]
    max_square: Fraction
    d: Fraction


@dataclass(frozen=True)
class DTable:
    classes: tuple[CharClass, ...]
    b: int
    det: int
    factors: tuple[int, ...]

    def d_values(self) -> list[Fraction]:
        return [c.d for c in self.classes]

    def by_label(self) -> dict[tuple[int, ...], CharClass]:
        return {c.label: c for c in self.classes}

    def to_json_dict(self) -> dict:
        return {
            "b": self.b,
            "det": self.det,
            "factors": list(self.factors),
            "classes": [
                {
                    "label": list(c.label),
                    "representative": list(c.representative),
                    "max_square": str(c.max_square),
                    "d": str(c.d),
                }
                for c in self.classes
            ],
        }

    def to_csv(self) -> str:
        width = max(2, len(self.factors))
        head = ",".join("label_%s" % "ijklmn"[i] for i in range(width))
        lines = [head + ",d"]
        for c in self.classes:
            coords = (0,) * (width - len(c.label)) + c.label
            lines.append(
                ",".join(str(x) for x in coords) + "," + str(c.d)
            )
        return "\n".join(lines) + "\n"


def _square(q: MatZ, adj: MatZ, det: int, k: tuple[int, ...]) -> Fraction:
    b = q.nrows
    num = 0
    for i in range(b):
        for j in range(b):
            num += k[i] * adj.rows[i][j] * k[j]
    return Fraction(num, det)


def _maximize(q: MatZ, adj: MatZ, det: int, k0: tuple[int, ...]):
    """Max of K^2 over K = k0 + 2Qv, with the lex-largest maximizer.

    In v the square is K0^2 + 4 g(v) with g(v) = K0.v + vQv, concave since
    Q is negative definite.  Writing v* = -Q^{-1}K0/2 for the real argmax
    and rounding it to vbar, every integer maximizer vhat obeys
    g(vhat) >= g(vbar), i.e. -(x Q x) <= delta for x = vhat - v* and
    delta = -(vbar - v*) Q (vbar - v*).  An ellipsoid -xQx <= delta has
    coordinate extent |x_i| <= sqrt(delta * (-Q^{-1})_ii), so the search
    reduces to an explicit finite box around v*, all in exact rationals.
    """
    b = q.nrows
    if b == 0:
        return Fraction(0), ()

    def g(v) -> int:
        lin = sum(k0[i] * v[i] for i in range(b))
        quad = sum(
            v[i] * q.rows[i][j] * v[j] for i in range(b) for j in range(b)
        )
        return lin + quad

    def covector(v) -> tuple[int, ...]:
        return tuple(
            k0[j] + 2 * sum(q.rows[i][j] * v[i] for i in range(b))
            for j in range(b)
        )

    star = [
        Fraction(-sum(adj.rows[i][j] * k0[j] for j in range(b)), 2 * det)
        for i in range(b)
    ]
    vbar = tuple(round(x) for x in star)
    off = [vbar[i] - star[i] for i in range(b)]
    delta = -sum(
        off[i] * q.rows[i][j] * off[j] for i in range(b) for j in range(b)
    )
    assert delta >= 0
    ranges = []
    for i in range(b):
        extent = delta * Fraction(-adj.rows[i][i], det)
        s = math.isqrt(math.floor(extent)) + 1
        lo = math.floor(star[i]) - s
        hi = math.ceil(star[i]) + s
        ranges.append(range(lo, hi + 1))
    best = None
    best_k = None
    for v in product(*ranges):
        val = g(v)
        if best is None or val > best:
            best, best_k = val, covector(v)
        elif val == best:
            kv = covector(v)
            if kv > best_k:
                best_k = kv
    base = _square(q, adj, det, k0)
    return base + 4 * best, best_k


def max_square(q: MatZ, cls) -> Fraction:
    """Exact maximum of K Q^{-1} K^t over the class of the given covector."""
    _check_negative_definite(q)
    k0 = tuple(cls.representative) if isinstance(cls, CharClass) else tuple(cls)
    if len(k0) != q.nrows:
        raise IndefiniteForm("covector length does not match the form")
    adj = _adjugate(q)
    det = q.det()
    value, _ = _maximize(q, adj, det, k0)
    return value


def enumerate_classes(q: MatZ, threads: int = 1) -> list[CharClass]:
    """All |det Q| characteristic classes, spin class labeled by the origin."""
    _check_negative_definite(q)
    b = q.nrows
    if b == 0:
        return [CharClass((), (), Fraction(0), Fraction(0))]
    u, s, _ = smith_normal_form(q)
    uinv = _adjugate(u)
    if u.det() == -1:
        uinv = MatZ([[-v for v in row] for row in uinv.rows])
    diag = [abs(s.rows[i][i]) for i in range(b)]
    qdiag = [q.rows[i][i] for i in range(b)]
    adj = _adjugate(q)
    det = q.det()

    def raw_label(w: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(
            sum(uinv.rows[i][j] * w[j] for j in range(b)) % diag[i]
            for i in range(b)
        )

    starts = []
    for r in product(*(range(d) for d in diag)):
        w = tuple(sum(u.rows[i][j] * r[j] for j in range(b)) for i in range(b))
        k0 = tuple(qdiag[i] + 2 * w[i] for i in range(b))
        # conjugate class: -K = qdiag + 2(-qdiag - w)
        wconj = tuple(-qdiag[i] - w[i] for i in range(b))
        starts.append((tuple(r), raw_label(wconj), k0))
    assert len({r for r, _, _ in starts}) == abs(det)

    job = lambda k0: _maximize(q, adj, det, k0)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            maxed = list(pool.map(job, [k0 for _, _, k0 in starts]))
    else:
        maxed = [job(k0) for _, _, k0 in starts]
    entries = [
        (r, conj, rep, sq)
        for (r, conj, _), (sq, rep) in zip(starts, maxed)
    ]

    d_of = {r: (sq + b) / 4 for r, _, _, sq in entries}
    spin = [r for r, conj, _, _ in entries if conj == r]
    origin = max(spin, key=lambda r: (d_of[r], tuple(-x for x in r)))
    keep = [i for i in range(b) if diag[i] > 1]
    out = []
    for r, _, rep, sq in entries:
        label = tuple((r[i] - origin[i]) % diag[i] for i in keep)
        out.append(CharClass(rep, label, Fraction(sq), d_of[r]))
    out.sort(key=lambda c: c.label)
    return out


def d_table(q: MatZ, threads: int = 1) -> DTable:
    classes = enumerate_classes(q, threads=threads)
    b = q.nrows
    factors: tuple[int, ...] = ()
    if b:
        _, s, _ = smith_normal_form(q)
        factors = tuple(
            abs(s.rows[i][i]) for i in range(b) if abs(s.rows[i][i]) > 1
        )
    return DTable(
        classes=tuple(classes),
        b=b,
        det=abs(q.det()) if b else 1,
        factors=factors,
    )


def spinc_labels(q: MatZ) -> dict[tuple[int, ...], CharClass]:
    """Bijection coker(Q) -> classes; the spin class sits at the origin."""
    table = d_table(q)
    labels = table.by_label()
    assert len(labels) == table.det
    return labels
