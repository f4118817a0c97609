"""Validators and closed-form constructors for the staircase monomial
families and their offset generalization.

A staircase monomial is a product of distinct Y-variables with strictly
increasing nodes, alternating spectral differences, and gaps matching the
node gaps plus two.  Lifting each variable to a length-r string gives the
uniform family; per-factor offsets give the generalized family, built
from offset strings subject to the local-extremum zero rules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .heights import (
    HeightFunction,
    TProfile,
    bullet,
    d_flag,
    diamond,
    hat,
    omega,
    p_step,
    q_step,
    t_profile,
    validate_staircase,
)
from .ymon import ONE, YMonomial, kr_monomial, lift_r, shifted_kr, yvar


class SpecError(ValueError):
    """A generalized-family spec violates one of its defining clauses."""


class CaseGuardError(ValueError):
    """No closed-form case guard matches (carries the guard table)."""


def validate_hl(m: YMonomial) -> bool:
    """True iff m is a staircase monomial (all three conditions)."""
    if m.is_identity() or not m.is_dominant():
        return False
    fs = sorted(m.exponents.items())
    if any(c != 1 for _, c in fs):
        return False
    idx = tuple(i for (i, _), _ in fs)
    as_ = tuple(s for (_, s), _ in fs)
    if len(set(idx)) != len(idx):
        return False
    try:
        validate_staircase(idx, as_)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class GhlSpec:
    """Generalized-family spec: nodes, anchors, base length, offsets.

    Raises SpecError naming the violated clause.
    """

    idx: tuple[int, ...]
    as_: tuple[int, ...]
    r: int
    rs: tuple[int, ...]

    def __post_init__(self):
        idx, as_, rs, r = self.idx, self.as_, self.rs, self.r
        k = len(idx)
        if not (k >= 1 and len(as_) == k and len(rs) == k):
            raise SpecError("idx, as_, rs must have equal positive length")
        if r < 1:
            raise SpecError("base length r must be >= 1")
        try:
            validate_staircase(idx, as_)
        except ValueError as exc:
            raise SpecError(f"staircase conditions: {exc}") from exc
        for j, rj in enumerate(rs):
            if rj < -r:
                raise SpecError(f"offset r_{j + 1} = {rj} below -r")
        if k >= 2 and as_[0] > as_[1] and rs[0] != 0:
            raise SpecError("first offset must vanish when the anchors start descending")
        for j in range(1, k - 1):
            if as_[j - 1] < as_[j] > as_[j + 1] and rs[j] != 0:
                raise SpecError(f"offset r_{j + 1} must vanish at the interior peak")
        if k >= 2 and as_[-2] < as_[-1] and rs[-1] != 0:
            raise SpecError("last offset must vanish when the anchors end ascending")

    @property
    def k(self) -> int:
        return len(self.idx)

    def factor(self, t: int) -> YMonomial:
        """The t-th offset string (1-based)."""
        return shifted_kr(self.idx[t - 1], self.as_[t - 1], self.r, self.rs[t - 1])

    def profile(self) -> TProfile:
        return t_profile(self.idx, self.rs)

    def skeleton(self) -> YMonomial:
        out = ONE
        for i, a in zip(self.idx, self.as_):
            out = out * yvar(i, a)
        return out

    def to_json(self) -> dict:
        return {"idx": list(self.idx), "as": list(self.as_), "r": self.r, "rs": list(self.rs)}

    @staticmethod
    def from_json(data) -> "GhlSpec":
        return GhlSpec(tuple(data["idx"]), tuple(data["as"]), data["r"], tuple(data["rs"]))


def ghl_monomial(spec: GhlSpec) -> YMonomial:
    out = ONE
    for t in range(1, spec.k + 1):
        out = out * spec.factor(t)
    return out


def omega_tilde(spec: GhlSpec, t: int) -> YMonomial:
    """Product of the first t offset strings; t = 0 gives the identity."""
    if not 0 <= t <= spec.k:
        raise ValueError(f"t = {t} outside [0,{spec.k}]")
    out = ONE
    for u in range(1, t + 1):
        out = out * spec.factor(u)
    return out


def omega_tilde_upto(spec: GhlSpec, j: int) -> YMonomial:
    """Product of the offset strings with node <= j (identity when j < i_1)."""
    out = ONE
    for t in range(1, spec.k + 1):
        if spec.idx[t - 1] <= j:
            out = out * spec.factor(t)
    return out


def closed_x_alpha(xi: HeightFunction, i: int, j: int, r: int) -> YMonomial:
    """Closed form of the tracked label after mutating i..j in the band seed.

    Single-string case when j = diamond(i); otherwise the lifted staircase
    over [i, jbar], where jbar steps past j or back to bullet(j)+1
    according to whether j is a witness node.
    """
    if not 1 <= i <= j <= xi.n:
        raise ValueError(f"need 1 <= i <= j <= n, got {i},{j}")
    if r < 1:
        raise ValueError("r must be >= 1")
    if j == diamond(xi, i):
        a = xi(i) + 1 if xi(i) == xi(i + 1) + 1 else xi(i) - 1
        return kr_monomial(i, a, r)
    jbar = (j + 1) * (1 - d_flag(xi, j)) + (bullet(xi, j) + 1) * d_flag(xi, j)
    return lift_r(omega(xi, i, jbar), r)


def frozen_and_initial_labels(xi: HeightFunction, i: int, r: int) -> tuple[YMonomial, YMonomial, YMonomial]:
    """(f'_i, x_i, f''_i): the three band labels at node i for base length r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    xi.check_node(i)
    return (
        kr_monomial(i, xi(i) + 1, r - 1),
        kr_monomial(i, xi(i + 1), r),
        kr_monomial(i, xi(i) - 1, r + 1),
    )


# -- the per-vertex closed forms of the offset runs -------------------------


def _bullet_plus_one(xi: HeightFunction, j: int, i1: int) -> int:
    """bullet(j)+1, with the substitution -> i1 when bullet(j) = bullet(i1)."""
    jb = bullet(xi, j)
    if jb == bullet(xi, i1):
        return i1
    return jb + 1


def _hat_cut(xi: HeightFunction, j: int, i1: int) -> int:
    """hat(j), falling back to j-1 when no interior extremum exists.

    The fallback only matters when all product factors below j also sit
    below every candidate cut, where both readings agree.
    """
    try:
        return hat(xi, j, i1)
    except ValueError:
        return j - 1


def closed_x_bracket(spec: GhlSpec, xi: HeightFunction, j: int, s: int) -> YMonomial:
    """Predicted label at grid vertex (j, r+s) along the offset run.

    Dispatches on the slope at j, the sign of s, and the local flags,
    exactly one case per admissible vertex; CaseGuardError otherwise.
    """
    r = spec.r
    n = xi.n
    i1 = spec.idx[0]
    ik = spec.idx[-1]
    prof = spec.profile()

    def t_of(p: int) -> int:
        v = prof.get(p)
        if v is None:
            raise CaseGuardError(f"column {p} outside the t-profile")
        return v

    def kr_guarded(node: int, a: int, k: int) -> YMonomial:
        # factors at phantom nodes collapse to the identity
        if not 1 <= node <= n or k <= 0:
            return ONE
        return kr_monomial(node, a, k)

    def skr_guarded(node: int, a: int, rr: int, off: int) -> YMonomial:
        if not 1 <= node <= n:
            return ONE
        return shifted_kr(node, a, rr, off)

    up = xi(j) == xi(j + 1) - 1
    down = xi(j) == xi(j + 1) + 1
    jb = bullet(xi, j)
    i1b = bullet(xi, i1)
    d_j = d_flag(xi, j)

    if up and i1 <= j <= ik:
        t_j = t_of(j)
        if s == 0:
            b1 = _bullet_plus_one(xi, j, i1)
            if t_j == 0 and d_j == 1:
                return omega_tilde_upto(spec, b1)
            if d_j == 0:
                return omega_tilde_upto(spec, b1) * kr_guarded(j + 1, xi(j + 1) + 1, r)
            if t_j > 0 and d_j == 1:
                return omega_tilde_upto(spec, b1) * skr_guarded(j + 1, xi(j + 1) + 1, r, 1)
            if t_j < 0 and d_j == 1:
                return omega_tilde_upto(spec, b1) * skr_guarded(j + 1, xi(j + 1) + 1, r, -1)
            raise CaseGuardError(f"rising slope, s=0: no branch for t_j={t_j}, d_j={d_j}")
        if 0 < s <= t_j:
            mid_node = _bullet_plus_one(xi, j, i1)
            t_mid = t_of(mid_node)
            mid = kr_guarded(mid_node, xi(mid_node + 1) - 2 * (t_mid + 1), t_mid - s + 1)
            right = skr_guarded(j + 1, xi(j + 1) + 1, r, s)
            if i1b == jb:
                left = skr_guarded(i1 - 1, xi(i1 - 1) + 1, r, s - 1)
                return left * mid * right
            if i1 == jb:
                return skr_guarded(i1, xi(i1) + 1, r, s) * mid * right
            if i1 < jb and d_flag(xi, jb - 1) == 0:
                return (
                    omega_tilde_upto(spec, _hat_cut(xi, jb, i1))
                    * skr_guarded(jb, xi(jb) - 1, r, s - 1)
                    * mid
                    * right
                )
            if i1 < jb and d_flag(xi, jb - 1) == 1:
                head = omega_tilde_upto(spec, _hat_cut(xi, jb, i1)) ** q_step(t_of(jb), s)
                return head * skr_guarded(jb, xi(jb) + 1, r, s) * mid * right
            raise CaseGuardError(f"rising slope, 0<s<=t_j: no branch for j_bullet={jb}")
        if t_j <= s < 0:
            mid = kr_guarded(j, xi(j + 1) + 2 * (r + t_j), s - t_j + 1)
            right = skr_guarded(j + 1, xi(j + 1) + 1, r, t_j - 1)
            if i1b == jb:
                left = skr_guarded(i1 - 1, xi(i1 - 1) + 1, r, t_j)
                return left * mid * right
            if i1 == jb:
                return skr_guarded(jb, xi(jb) + 1, r, t_j - 1) * mid * right
            if i1 < jb and d_flag(xi, jb - 1) == 0:
                return (
                    omega_tilde_upto(spec, _hat_cut(xi, jb, i1))
                    * skr_guarded(jb, xi(jb) - 1, r, t_j)
                    * mid
                    * right
                )
            if i1 < jb and d_flag(xi, jb - 1) == 1:
                head = omega_tilde_upto(spec, _hat_cut(xi, jb, i1)) ** p_step(t_of(jb), s)
                return head * skr_guarded(jb, xi(jb) + 1, r, t_j - 1) * mid * right
            raise CaseGuardError(f"rising slope, t_j<=s<0: no branch for j_bullet={jb}")
        raise CaseGuardError(f"rising slope: s={s} outside [min(t_j,0), max(t_j,0)]")

    if down and i1 <= j <= ik + 1:
        if s == 0:
            if j == ik + 1:
                # appended boundary column: the full product is already
                # assembled and the fresh column-j string rides along
                return ghl_monomial(spec) * skr_guarded(j, xi(j) + 1, r, 0)
            b1 = _bullet_plus_one(xi, j, i1)
            if d_j == 1:
                return omega_tilde_upto(spec, b1)
            return omega_tilde_upto(spec, b1) * kr_guarded(j + 1, xi(j + 1) - 1, r)
        d_prev = d_flag(xi, j - 1) if j >= 2 else 0
        if d_prev == 0:
            return omega_tilde_upto(spec, _hat_cut(xi, j, i1)) * skr_guarded(j, xi(j) - 1, r, s)
        t_prev = t_of(j - 1) if j - 1 >= i1 else 0
        head = omega_tilde_upto(spec, _hat_cut(xi, j, i1))
        if s > 0:
            if p_step(s + 1, t_prev):
                return head * skr_guarded(j, xi(j) + 1, r, s + 1)
            return head
        if q_step(s - 1, t_prev):
            return head * skr_guarded(j, xi(j) + 1, r, s - 1)
        return head

    raise CaseGuardError(
        f"no case for j={j}, s={s}: slope {'-1' if up else '+1' if down else '0'}, "
        f"range [{i1},{ik}]"
    )


# -- symbolic exchange-relation instances ------------------------------------


@dataclass(frozen=True)
class RelationInstance:
    """One exchange relation: lhs product = side_a product + side_b product.

    Entries are symbol tuples: ("x", i), ("fp", i), ("fpp", i) for initial
    labels, ("xa", i, j) for the variable reached by mutating i..j, and
    ("one",) for the unit.  A subtracted form uses sign -1 on side_b.
    """

    kind: str
    lhs: tuple
    side_a: tuple
    side_b: tuple
    sign_b: int = 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "lhs": [list(t) for t in self.lhs],
            "side_a": [list(t) for t in self.side_a],
            "side_b": [list(t) for t in self.side_b],
            "sign_b": self.sign_b,
        }


def _pow(sym: tuple, e: int) -> list[tuple]:
    return [sym] * e


def exchange_predictions(xi: HeightFunction, i: int, j: int, r: int | None = None) -> list[RelationInstance]:
    """Exchange relations predicted at (i, j): the first-step relation
    (j = i), the general step (i < j), and the subtracted recursion when
    both j and j+1 are witness nodes."""
    n = xi.n
    out = []
    d = lambda m: d_flag(xi, m)

    def x(m):
        return ("one",) if not 1 <= m <= n else ("x", m)

    def f_pair(m, e=1):
        if not 1 <= m <= n or e == 0:
            return []
        return _pow(("fp", m), e) + _pow(("fpp", m), e)

    if i == j:
        side_a = f_pair(i) + _pow(x(i + 1), 1 - d(i))
        side_b = [x(i - 1)] + f_pair(i + 1, 1 - d(i)) + _pow(x(i + 1), d(i))
        out.append(RelationInstance("first-step", (x(i), ("xa", i, i)), tuple(side_a), tuple(side_b)))
        return out

    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i <= j <= n, got {i},{j}")

    jb = bullet(xi, j)
    ib = bullet(xi, i)
    side_a = [("xa", i, j - 1)] + f_pair(j, d(j - 1)) + _pow(x(j + 1), 1 - d(j))
    inner = []
    if i == jb:
        inner += f_pair(i)
    if ib == jb:
        inner += [x(i - 1)]
    if not (ib == jb or i == jb):
        inner += f_pair(jb, d(jb - 1)) + [("xa", i, jb - 1) if jb - 1 >= i else x(jb - 1)]
    side_b = f_pair(j + 1, 1 - d(j)) + _pow(x(j + 1), d(j)) + inner
    out.append(RelationInstance("step", (x(j), ("xa", i, j)), tuple(side_a), tuple(side_b)))

    if j < n and d(j) == 1 and d(j + 1) == 1:
        # subtracted recursion at (i, j+1), four shapes by bullet(j)
        lhs = (("xa", i, j + 1),)
        side_a = (("xa", i, j), ("xa", j + 1, j + 1))
        if jb == ib:
            side_b = (x(i - 1), x(j + 2))
        elif jb == i:
            side_b = tuple(f_pair(i) + [x(j + 2)])
        elif jb > i and d(jb - 1) == 1:
            side_b = tuple([("xa", i, jb - 1)] + f_pair(jb) + [x(j + 2)])
        else:
            side_b = (("xa", i, jb - 1), x(j + 2))
        out.append(RelationInstance("subtracted", lhs, side_a, side_b, sign_b=-1))
    return out
