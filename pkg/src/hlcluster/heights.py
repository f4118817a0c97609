"""Height functions on A_n Dynkin nodes and their derived combinatorics.

A height function takes integer values with unit steps between adjacent
nodes and is extended by xi(0) = xi(2), xi(n+1) = xi(n-1).  Everything
downstream (diamond/bullet indices, the omega monomials, t-profiles,
canonical height functions for staircase monomials) lives here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ymon import ONE, YMonomial, yvar


@dataclass(frozen=True)
class HeightFunction:
    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("height function needs at least one node")
        for i in range(1, len(self.values)):
            if abs(self.values[i] - self.values[i - 1]) != 1:
                raise ValueError(f"|xi({i + 1})-xi({i})| != 1 in {self.values}")

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        """xi(i) for i in [0, n+1], using the boundary extension.

        For n = 1 both phantom neighbors sit one step below the single
        value; this keeps the extension identities and gives the
        single-node quiver a definite orientation.
        """
        n = self.n
        if n == 1 and i in (0, 2):
            return self.values[0] - 1
        if i == 0:
            return self(2)
        if i == n + 1:
            return self(n - 1)
        if not 1 <= i <= n:
            raise ValueError(f"node {i} outside [0,{n + 1}]")
        return self.values[i - 1]

    def check_node(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise ValueError(f"node {j} outside [1,{self.n}]")

    def to_json(self) -> list[int]:
        return list(self.values)

    @staticmethod
    def from_json(data) -> "HeightFunction":
        return HeightFunction(tuple(int(v) for v in data))

    @staticmethod
    def parse(text: str) -> "HeightFunction":
        return HeightFunction(tuple(int(v) for v in text.split(",")))

    def __repr__(self):
        return f"HeightFunction{self.values}"


def all_height_functions(n: int, anchor: int = -1) -> list[HeightFunction]:
    """All 2^(n-1) height functions on n nodes with xi(1) = anchor."""
    out = []
    for mask in range(1 << max(n - 1, 0)):
        vals = [anchor]
        for b in range(n - 1):
            vals.append(vals[-1] + (1 if (mask >> b) & 1 else -1))
        out.append(HeightFunction(tuple(vals)))
    return out


# -- diamond / bullet / d -------------------------------------------------


def diamond(xi: HeightFunction, i: int) -> int:
    """Minimal witness index at or after i, with the boundary conventions.

    For i <= n-2: the least x in [i, n-2] with xi(x) = xi(x+2), or n-1
    if none exists.  By convention diamond(n-1) = n-1 and diamond(n) = n.
    """
    xi.check_node(i)
    n = xi.n
    if i >= n - 1:
        return i
    for x in range(i, n - 1):
        if xi(x) == xi(x + 2):
            return x
    return n - 1


def bullet(xi: HeightFunction, j: int) -> int:
    """Maximal x < j with diamond(x) = x, or 0 when j <= diamond(1)."""
    xi.check_node(j)
    one_d = diamond(xi, 1)
    if j <= one_d:
        return 0
    for x in range(j - 1, one_d - 1, -1):
        if diamond(xi, x) == x:
            return x
    return 0


def derived(xi: HeightFunction, j: int) -> tuple[int, int, int]:
    """(diamond(j), bullet(j), d_j) with d_j = 1 iff diamond(j) = j."""
    dj = diamond(xi, j)
    return dj, bullet(xi, j), 1 if dj == j else 0


def d_flag(xi: HeightFunction, j: int) -> int:
    return 1 if diamond(xi, j) == j else 0


def hat(xi: HeightFunction, j: int, i1: int) -> int:
    """The corrected reference index used by the truncated-product formulas.

    Equals i1 when bullet(j) = j-1 = i1, or when j > i1 and
    bullet(j) = bullet(i1); otherwise the largest x in [i1, j-1] with
    xi(x-1) = xi(x+1).
    """
    if i1 > j:
        raise ValueError(f"need i1 <= j, got i1={i1}, j={j}")
    jb = bullet(xi, j)
    if jb == j - 1 == i1:
        return i1
    if j > i1 and jb == bullet(xi, i1):
        return i1
    for x in range(j - 1, i1 - 1, -1):
        if xi(x - 1) == xi(x + 1):
            return x
    raise ValueError(f"no hat index for j={j}, i1={i1} on {xi}")


# -- omega monomials ------------------------------------------------------


def omega(xi: HeightFunction, i: int, j: int) -> YMonomial:
    """Staircase monomial over [i, j]: endpoints plus interior extrema.

    Interior indices are exactly the l with i < l < j and
    xi(l-1) = xi(l+1); the spectral values follow the slope into each
    index (slope out of the first one).
    """
    xi.check_node(i)
    xi.check_node(j)
    if i >= j:
        raise ValueError(f"need i < j, got {i} >= {j}")
    nodes = [i] + [l for l in range(i + 1, j) if xi(l - 1) == xi(l + 1)] + [j]
    out = ONE
    for pos, v in enumerate(nodes):
        if pos == 0:
            a = xi(v) - 1 if xi(v) == xi(v + 1) - 1 else xi(v) + 1
        else:
            a = xi(v) + 1 if xi(v) == xi(v - 1) + 1 else xi(v) - 1
        out = out * yvar(v, a)
    return out


# -- t-profiles -----------------------------------------------------------


@dataclass(frozen=True)
class TProfile:
    """Per-column mutation depths derived from factor offsets.

    t(i_1) = r_1, t(i_m) = r_{m-1} + r_m, and interior columns between
    i_{m-1} and i_m inherit r_{m-1} + r_m.
    """

    idx: tuple[int, ...]
    rs: tuple[int, ...]
    t: dict[int, int]

    def __call__(self, p: int) -> int:
        if p not in self.t:
            raise KeyError(f"column {p} outside profile range [{self.idx[0]},{self.idx[-1]}]")
        return self.t[p]

    def get(self, p: int, default: int | None = None):
        return self.t.get(p, default)


def t_profile(idx, rs) -> TProfile:
    idx = tuple(idx)
    rs = tuple(rs)
    if len(idx) != len(rs) or not idx:
        raise ValueError("idx and rs must be nonempty and of equal length")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError(f"column indices must strictly increase: {idx}")
    t = {idx[0]: rs[0]}
    for m in range(1, len(idx)):
        v = rs[m - 1] + rs[m]
        for p in range(idx[m - 1] + 1, idx[m] + 1):
            t[p] = v
    return TProfile(idx, rs, t)


# -- step functions -------------------------------------------------------


def p_step(x: int, t: int) -> int:
    """1 iff t >= x."""
    return 1 if t >= x else 0


def q_step(x: int, t: int) -> int:
    """1 iff t <= x."""
    return 1 if t <= x else 0


def step(kind: str, x: int, t: int) -> int:
    if kind == "p":
        return p_step(x, t)
    if kind == "q":
        return q_step(x, t)
    raise ValueError(f"step kind must be 'p' or 'q', got {kind!r}")


# -- canonical height function for a staircase monomial -------------------


def validate_staircase(idx, as_) -> None:
    """Check the three staircase conditions (raises on the first violation)."""
    idx = tuple(idx)
    as_ = tuple(as_)
    if len(idx) != len(as_) or not idx:
        raise ValueError("idx and as_ must be nonempty and of equal length")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError(f"node indices must strictly increase: {idx}")
    k = len(idx)
    for j in range(1, k):
        gap = abs(as_[j] - as_[j - 1])
        if gap != idx[j] - idx[j - 1] + 2:
            raise ValueError(
                f"spectral gap |{as_[j]}-{as_[j - 1]}| != {idx[j]}-{idx[j - 1]}+2 at position {j + 1}"
            )
    for j in range(1, k - 1):
        if (as_[j] - as_[j - 1]) * (as_[j + 1] - as_[j]) >= 0:
            raise ValueError(f"spectral differences fail to alternate at position {j + 1}")


def build_from_hlr(idx, as_) -> tuple[HeightFunction, int]:
    """Canonical height function realizing a staircase monomial.

    The function runs strictly monotonically between consecutive nodes of
    idx (direction given by the sign of the a-differences), turns at each
    interior node, anchors xi(i_1) one step off a_1, finishes with the
    minimal alternating tail after i_k, and continues the first run
    linearly to the left of i_1.  n = i_k + 2 is the smallest admissible
    rank.
    """
    validate_staircase(idx, as_)
    idx = tuple(idx)
    as_ = tuple(as_)
    k = len(idx)
    n = idx[-1] + 2

    # slope of the run leaving i_1 (ascending by convention for k = 1)
    up_first = True if k == 1 else as_[0] < as_[1]
    xi_vals = [0] * (n + 1)  # 1-based scratch
    xi_vals[idx[0]] = as_[0] + 1 if up_first else as_[0] - 1

    pos, up = idx[0], up_first
    for m in range(1, k):
        for x in range(pos + 1, idx[m] + 1):
            xi_vals[x] = xi_vals[x - 1] + (1 if up else -1)
        pos, up = idx[m], not up
    # tail: turn at i_k, then turn once more (i_k becomes a diamond witness)
    for x, direction in ((pos + 1, up), (pos + 2, not up)):
        xi_vals[x] = xi_vals[x - 1] + (1 if direction else -1)
    # left of i_1: continue the first run's slope linearly
    for x in range(idx[0] - 1, 0, -1):
        xi_vals[x] = xi_vals[x + 1] - (1 if up_first else -1)

    return HeightFunction(tuple(xi_vals[1:])), n
