"""Arrow tables for the offset-run quivers.

Each case describes the arrows incident to the next vertex (j, r+s) of an
offset column run, as coefficient expressions in the step functions and
the local flags.  Negative-s vertices are handled by the mirror rule:
evaluate the positive-s table on the row-reflected configuration with the
two step functions exchanged, then reflect the rows back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .gridseeds import gv
from .heights import HeightFunction, bullet, d_flag, p_step, q_step
from .hl import GhlSpec


@dataclass
class CaseEnv:
    """Evaluation context for one arrow table."""

    spec: GhlSpec
    xi: HeightFunction
    j: int
    s: int
    r: int
    mirrored: bool = False

    def __post_init__(self):
        self.n = self.xi.n
        self.i1 = self.spec.idx[0]
        prof = self.spec.profile()
        sign = -1 if self.mirrored else 1
        self._t = {p: sign * prof(p) for p in prof.t}
        self.jb = bullet(self.xi, self.j)
        self.i1b = bullet(self.xi, self.i1)

    def t(self, p: int) -> int:
        return self._t.get(p, 0)

    def d(self, p: int) -> int:
        return d_flag(self.xi, p) if 1 <= p <= self.n else 0

    def P(self, x: int, tv: int) -> int:
        # the reflected run is evaluated on the negated profile, which
        # already carries the printed p<->q exchange
        return p_step(x, tv)

    def Q(self, x: int, tv: int) -> int:
        return q_step(x, tv)

    @property
    def X(self) -> Optional[int]:
        for x in range(self.j - 1, self.i1 - 1, -1):
            if self.xi(x) == self.xi(x + 1) + 1:
                return x
        return None


def delta(a, b) -> int:
    return 1 if a == b else 0


Arrow = tuple  # (node, row_offset, direction, mult)


def _case_1(e: CaseEnv) -> list[Arrow]:
    i1, d = e.i1, e.d
    return [
        (i1, -1, "in", 1),
        (i1 + 1, 0, "in", 1 - d(i1)),
        (i1, 1, "in", 1),
        (i1 - 1, 0, "out", 1),
        (i1 + 1, 0, "out", d(i1)),
        (i1 + 1, -1, "out", 1 - d(i1)),
        (i1 + 1, 1, "out", 1 - d(i1)),
    ]


def _case_2(e: CaseEnv) -> list[Arrow]:
    i1, t = e.i1, e.t(e.i1)
    return [
        (i1 - 1, t - 1, "in", 1),
        (i1 + 1, t, "in", 1),
        (i1, t + 1, "in", 1),
        (i1 - 1, t, "out", 1),
        (i1 + 1, t + 1, "out", 1),
        (i1, t - 1, "out", 1),
    ]


def _case_3_last(e: CaseEnv) -> list[Arrow]:
    i1, d, t = e.i1, e.d, e.t(e.i1)
    return [
        (i1, -1, "in", 1),
        (i1 + 1, 0, "in", 1 - d(i1)),
        (i1 + 1, 1, "in", d(i1)),
        (i1, t + 1, "in", 1),
        (i1 + 1, -1, "out", 1 - d(i1)),
        (i1 + 1, 0, "out", d(i1)),
        (i1, 1, "out", 1),
    ]


def _case_3_mid(e: CaseEnv) -> list[Arrow]:
    i1, s, t = e.i1, e.s, e.t(e.i1)
    return [
        (i1 - 1, s - 1, "in", 1),
        (i1 + 1, s, "in", 1),
        (i1, t + 1, "in", 1),
        (i1, s - 1, "out", 1),
        (i1, s + 1, "out", 1),
    ]


def _case_4(e: CaseEnv) -> list[Arrow]:
    j, jb, i1, d, P, Q = e.j, e.jb, e.i1, e.d, e.P, e.Q
    common = (1 - delta(e.i1b, jb) - delta(i1, jb)) * d(jb - 1)
    a1 = common * P(0, e.t(jb)) + delta(i1, jb)
    a2 = common * Q(0, e.t(jb)) + delta(i1, jb)
    return [
        (j, -1, "in", d(j - 1)),
        (j - 1, 0, "in", 1),
        (j + 1, 0, "in", 1 - d(j)),
        (j, 1, "in", d(j - 1)),
        (jb, -1, "out", a1),
        (jb, 1, "out", a2),
        (max(i1 - 1, jb - 1), 0, "out", 1 - delta(i1, jb)),
        (j + 1, -1, "out", 1 - d(j)),
        (j + 1, 1, "out", 1 - d(j)),
        (j + 1, 0, "out", d(j)),
    ]


def _case_5(e: CaseEnv) -> list[Arrow]:
    j, jb, i1, d, P, Q = e.j, e.jb, e.i1, e.d, e.P, e.Q
    common = 1 - delta(e.i1b, jb) - delta(i1, jb)
    a = common * d(jb - 1) * P(0, e.t(jb)) + delta(i1, jb)
    b = common * Q(0, e.t(jb))
    return [
        (j, -1, "in", d(j - 1)),
        (j - 1, 0, "in", 1),
        (j + 1, 0, "in", 1 - d(j)),
        (j + 1, 1, "in", d(j)),
        (j, e.t(j) + 1, "in", d(j - 1)),
        (max(i1, jb), -1, "out", a),
        (jb - 1, 0, "out", b),
        (j + 1, -1, "out", 1 - d(j)),
        (j + 1, 0, "out", d(j)),
        (j, 1, "out", 1),
    ]


def _case_6(e: CaseEnv) -> list[Arrow]:
    j, jb, s, d, P, Q = e.j, e.jb, e.s, e.d, e.P, e.Q
    a = d(j - 1) * Q(e.t(j - 1), s) * (1 - delta(1, s))
    b = d(j - 1) * Q(e.t(j - 1), s) * delta(1, s)
    c = d(j - 1) * P(e.t(j - 1), s - 1) + (1 - d(j - 1))
    return [
        (j - 2, s - 1, "in", b),
        (j - 1, s - 1, "in", a),
        (j - 1, s, "in", c),
        (j + 1, s, "in", 1),
        (j, e.t(j) + 1, "in", d(j - 1)),
        (j, s - 1, "out", 1),
        (j, s + 1, "out", 1),
        (jb, s, "out", delta(s, e.t(jb))),
    ]


def _case_7(e: CaseEnv) -> list[Arrow]:
    j, jb, i1, s, d, P, Q = e.j, e.jb, e.i1, e.s, e.d, e.P, e.Q
    a = d(j - 1) * Q(e.t(j - 1), s) * (1 - delta(1, s))
    b = d(j - 1) * Q(e.t(j - 1), s) * delta(1, s)
    c = d(j - 1) * P(e.t(j - 1), s - 1) + (1 - d(j - 1))
    dd = (1 - delta(i1, jb) - delta(e.i1b, jb)) * P(e.t(jb), s) * d(jb - 1) + delta(i1, jb)
    return [
        (j - 2, s - 1, "in", b),
        (j - 1, s - 1, "in", a),
        (j - 1, s, "in", c),
        (j + 1, s, "in", 1),
        (j, s + 1, "in", d(j - 1)),
        (j, s - 1, "out", 1),
        (j + 1, s + 1, "out", 1),
        (jb, s, "out", (1 - delta(e.i1b, jb)) * Q(e.t(jb), s)),
        (i1 - 1, s, "out", delta(e.i1b, jb)),
        (jb, s + 1, "out", dd),
    ]


def _case_8(e: CaseEnv) -> list[Arrow]:
    j, jb, i1, d, P, Q = e.j, e.jb, e.i1, e.d, e.P, e.Q
    bkt = delta(i1, jb) + (1 - delta(e.i1b, jb) - delta(i1, jb)) * d(jb - 1)
    tb = e.t(jb)
    return [
        (jb, tb - 1, "in", bkt * Q(-1, tb)),
        (jb, -1, "in", bkt * P(0, tb)),
        (max(i1 - 1, jb - 1), 0, "in", 1 - delta(i1, jb)),
        (j - 1, 0, "out", 1),
        (j + 1, 0, "in", d(j)),
        (j + 1, -1, "in", 1 - d(j)),
        (jb, 1, "in", bkt * Q(0, tb)),
        (j + 1, 1, "in", 1 - d(j)),
        (jb, tb + 1, "in", bkt * P(1, tb)),
        (j, -1, "out", d(j - 1) * P(0, e.t(j - 1))),
        (j, 1, "out", d(j - 1) * Q(0, e.t(j - 1))),
        (j + 1, 0, "out", 1 - d(j)),
    ]


def _case_9(e: CaseEnv) -> list[Arrow]:
    j, i1, d, P, Q = e.j, e.i1, e.d, e.P, e.Q
    X = e.X
    tj = e.t(j)
    if X is None:
        dX1 = 0
        dXi1 = 0
        tX, tY = 0, 0
    else:
        dX1 = d(X - 1)
        dXi1 = delta(i1, X)
        tX = e.t(X)
        tY = e.t(X - 1)
    arrows = [
        (j - 1, 0, "in", 1),
        (j, 2, "in", (1 - d(j - 1)) + d(j - 1) * P(2, e.t(j - 1))),
        (j - 1, 1, "out", (1 - d(j - 1)) * P(1, e.t(j - 1))),
        (j + 1, 1, "out", 1),
        (
            j - 1,
            2,
            "out",
            d(j - 1) * P(2, e.t(j - 1))
            + (1 - d(j - 1))
            * ((1 - d(i1)) * delta(j - 1, i1) + (1 - delta(j - 1, i1)) * d(j - 2) * Q(1, e.t(j - 1))),
        ),
        (i1 - 1, 1, "out", d(j - 1) * delta(e.i1b, bullet(e.xi, j - 1)) * delta(tj, 1)),
    ]
    if X is not None:
        arrows += [
            (X, -1, "out", (1 - dXi1) * dX1 * P(0, tX) + dXi1),
            (X - 1, 0, "out", (1 - dXi1) * dX1 * Q(0, tY)),
            (
                X,
                1,
                "out",
                dX1 * d(j - 1) * (delta(1, tX) + P(2, tX) * delta(1, tj))
                + d(j - 1) * (1 - dXi1) * (1 - dX1) * delta(1, tj),
            ),
            (
                X,
                2,
                "out",
                (1 - dXi1) * dX1 * d(j - 1) * delta(1, tj) * Q(1, tX)
                + dXi1 * d(j - 1) * delta(1, tj),
            ),
        ]
    return arrows


def _case_10(e: CaseEnv) -> list[Arrow]:
    j, i1, s, d, P, Q = e.j, e.i1, e.s, e.d, e.P, e.Q
    X = e.X
    tj = e.t(j)
    tj1 = e.t(j - 1)
    arrows = [
        (j, s - 1, "in", 1),
        (j, s + 1, "in", (1 - d(j - 1)) + d(j - 1) * P(s + 1, tj1)),
        (j - 1, s, "out", (1 - d(j - 1)) * Q(tj1, s)),
        (j + 1, s, "out", 1),
        (
            j - 1,
            s + 1,
            "out",
            d(j - 1) * (1 - delta(s, tj))
            + (1 - d(j - 1))
            * ((1 - d(i1)) * delta(j - 1, i1) + (1 - delta(j - 1, i1)) * d(j - 2) * P(tj1, s)),
        ),
        (i1 - 1, tj, "out", d(j - 1) * delta(e.i1b, bullet(e.xi, j - 1)) * delta(tj, s)),
    ]
    if X is not None:
        dX1 = d(X - 1)
        dXi1 = delta(i1, X)
        tX = e.t(X)
        tY = e.t(X - 1)
        arrows += [
            (
                X,
                min(tX, tj1),
                "out",
                (1 - d(j - 1)) * d(j - 2) * P(1, tj1) * P(tj1, s - 1)
                + d(j - 1) * dX1 * P(min(tX, tj1), s) * P(1, tX),
            ),
            (X, -1, "out", (1 - dXi1) * dX1 * P(0, tX) + dXi1),
            (X - 1, 0, "out", (1 - dXi1) * dX1 * Q(0, tY)),
            (
                X,
                tj + 1,
                "out",
                (1 - dXi1) * dX1 * d(j - 1) * delta(s, tj) * P(tX, tj)
                + dXi1 * d(j - 1) * delta(s, tj),
            ),
            (X, tj, "out", d(j - 1) * (1 - dXi1) * (1 - dX1) * delta(s, tj)),
        ]
    return arrows


def case_table(case_id: int, e: CaseEnv) -> list[Arrow]:
    """Dispatch by case number (1..10)."""
    fns = {
        1: _case_1,
        2: _case_2,
        3: _case_3_mid,
        4: _case_4,
        5: _case_5,
        6: _case_6,
        7: _case_7,
        8: _case_8,
        9: _case_9,
        10: _case_10,
    }
    return fns[case_id](e)


def classify_vertex(e: CaseEnv) -> tuple[int, str]:
    """(case id, variant) for the configuration in e.

    The slope at j picks the case family; within an up column the t/s
    relation picks the position.  The mirror only reflects rows, so
    classification always sees nonnegative t and s.
    """
    j, s = e.j, e.s
    up = e.xi(j) == e.xi(j + 1) - 1
    t = e.t(j)
    if j == e.i1:
        if t == 0:
            return 1, "" if up else "reversed"
        if s == t:
            return 2, ""
        if s == 0:
            return 3, "last"
        return 3, ""
    if up:
        if t == 0:
            return 4, ""
        if s == 0:
            return 5, ""
        if s == t:
            return 7, ""
        return 6, ""
    if s == 0:
        return 8, ""
    if s == 1:
        return 9, ""
    return 10, ""


def expected_arrows(
    spec: GhlSpec, xi: HeightFunction, j: int, s: int, r: int, ell: int
) -> tuple[int, dict[tuple[str, str], int]]:
    """(case id, expected incident arrows of (j, r+s)) as
    {(vertex label, 'in'|'out'): mult}, vertices clipped to the grid."""
    mirrored = s < 0 or (s == 0 and spec.profile().get(j, 0) is not None and spec.profile()(j) < 0)
    e = CaseEnv(spec, xi, j, abs(s), r, mirrored=mirrored)
    case_id, variant = classify_vertex(e)
    if case_id == 3 and variant == "last":
        raw = _case_3_last(e)
    else:
        raw = case_table(case_id, e)
    if variant == "reversed":
        raw = [(node, off, ("out" if dr == "in" else "in"), m) for node, off, dr, m in raw]
    sign = -1 if mirrored else 1
    out: dict[tuple[str, str], int] = {}
    for node, off, direction, mult in raw:
        if mult <= 0:
            continue
        row = r + sign * off
        if not (1 <= node <= xi.n and 1 <= row <= ell + 1):
            continue
        key = (gv(node, row), direction)
        out[key] = out.get(key, 0) + mult
    return case_id, out
