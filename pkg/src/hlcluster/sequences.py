"""Builders for the band quiver, the grid mutation sequences, and the
local-seed extraction.

The band quiver Q_xi has one mutable A_n row flanked by two frozen rows.
The grid sequences (the row sweep, the per-column cleanups, the offset
column runs) drive a tracked grid seed into a state whose middle rows
reproduce the band seed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .gridseeds import TrackedSeed, gv, parse_gv, run
from .heights import HeightFunction, TProfile, d_flag, t_profile
from .quiver import IcedQuiver


def fp(i: int) -> str:
    return f"{i}'"


def fpp(i: int) -> str:
    return f"{i}''"


# -- the band quiver ------------------------------------------------------


def build_q_xi(xi: HeightFunction) -> IcedQuiver:
    """Band quiver: mutable path 1..n, frozen rows 1'..n' and 1''..n''.

    Arrow blocks follow the slope at each edge; the blocks overlap on the
    path arrows, so claims are unioned with a consistency check.
    """
    n = xi.n
    vertices = [fp(i) for i in range(1, n + 1)]
    vertices += [str(i) for i in range(1, n + 1)]
    vertices += [fpp(i) for i in range(1, n + 1)]
    frozen = [fp(i) for i in range(1, n + 1)] + [fpp(i) for i in range(1, n + 1)]

    claims: dict[tuple[str, str], int] = {}

    def claim(u: str, v: str, mult: int) -> None:
        if mult == 0:
            return
        if claims.get((v, u)):
            raise AssertionError(f"contradictory arrow claims between {u} and {v}")
        claims[(u, v)] = 1

    def block(j: int, base: list[tuple[str, str, int]], up: bool) -> None:
        for u, v, m in base:
            if up:
                claim(u, v, m)
            else:
                claim(v, u, m)

    for j in range(1, n):
        d = d_flag(xi, j)
        base = [(fp(j), str(j), 1)]
        if j >= 2:
            base.append((str(j), str(j - 1), 1))
        base += [
            (str(j), str(j + 1), d),
            (str(j), fp(j + 1), 1 - d),
            (str(j), fpp(j + 1), 1 - d),
            (str(j + 1), str(j), 1 - d),
            (fpp(j), str(j), 1),
        ]
        block(j, base, up=xi(j) == xi(j + 1) - 1)

    base_n = [(fp(n), str(n), 1), (fpp(n), str(n), 1)]
    if n >= 2:
        base_n.append((str(n), str(n - 1), 1))
    block(n, base_n, up=xi(n - 1) == xi(n) + 1)

    return IcedQuiver.from_arrows(vertices, frozen, [(u, v, m) for (u, v), m in claims.items()])


def q_xi_prefix(xi: HeightFunction, i: int, j: int) -> IcedQuiver:
    """Band quiver mutated along i, i+1, ..., j (unchanged when j < i)."""
    q = build_q_xi(xi)
    return q.mutate_seq(str(v) for v in range(i, j + 1))


# -- ell policy and the row sweep -----------------------------------------


def ell_policy(n: int, r: int, max_abs_offset: int = 0) -> int:
    """Default grid depth; HLCLUSTER_ELL_POLICY overrides."""
    env = os.environ.get("HLCLUSTER_ELL_POLICY")
    if env:
        return int(env)
    return r + n + max_abs_offset + 2


def _slice(k: int, family: int, n: int, cols_up_to: int | None = None) -> list[str]:
    """s_{k,family}: row k, odd (family 1) or even (family 2) columns."""
    start = 1 if family == 1 else 2
    hi = n if cols_up_to is None else min(n, cols_up_to)
    return [gv(i, k) for i in range(start, hi + 1, 2)]


def _sweep_parity_target(xi: HeightFunction, r: int) -> int:
    """Required parity of the sweep depth p."""
    n = xi.n
    if xi(n - 1) > xi(n):
        return n % 2 if r % 2 == 1 else (n - 1) % 2
    return n % 2 if r % 2 == 0 else (n - 1) % 2


def sweep_depth(xi: HeightFunction, r: int, ell: int) -> int:
    """Largest admissible p <= ell with the required parity.

    The sweep touches rows 1..p, so p must stay below the frozen row;
    within that bound we take the deepest parity-correct truncation.
    """
    target = _sweep_parity_target(xi, r)
    return ell if ell % 2 == target else ell - 1


def seq_S(xi: HeightFunction, r: int, n: int, ell: int, p: int | None = None) -> list[str]:
    """Row sweep: rows of the triangular display, truncated at depth p.

    Display row m is the concatenation s_{m,2}, s_{m-1,1}, s_{m-2,2}, ...
    down to index 1, each slice in increasing column order.
    """
    if p is None:
        p = sweep_depth(xi, r, ell)
    if p > ell:
        raise ValueError(f"sweep depth {p} exceeds mutable rows [1,{ell}]")
    out = []
    for m in range(1, p + 1):
        for j in range(m):
            family = 2 if j % 2 == 0 else 1
            out.extend(_slice(m - j, family, n))
    return out


def zero_flag_nodes(xi: HeightFunction) -> list[int]:
    return [j for j in range(1, xi.n + 1) if d_flag(xi, j) == 0]


def seq_S_t(xi: HeightFunction, r: int, t: int, ell: int) -> list[str]:
    """Cleanup sequence for the t-th node with d = 0 (1-based t).

    Two step-2 row families clipped to columns [1, j_t]: for even j_t the
    even-column family on rows of parity r+1 then the odd-column family
    on rows of parity r; families swap for odd j_t.
    """
    nodes = zero_flag_nodes(xi)
    if not 1 <= t <= len(nodes):
        raise ValueError(f"t={t} outside [1,{len(nodes)}]")
    j_t = nodes[t - 1]
    first_family = 2 if j_t % 2 == 0 else 1
    out = []
    for family, parity in ((first_family, (r + 1) % 2), (3 - first_family, r % 2)):
        for k in range(1, ell + 1):
            if k % 2 == parity:
                out.extend(_slice(k, family, xi.n, cols_up_to=j_t))
    return out


# -- post-sweep normalization ----------------------------------------------


def _matches_cleanup_pattern(seed: TrackedSeed, u: int, v: int, n: int, ell: int) -> bool:
    """Incident arrows exactly: in from (u,v-1),(u,v+1); out to (u-1,v),(u+1,v)."""
    expected = {}
    for k in (v - 1, v + 1):
        if 1 <= k <= ell + 1:
            expected[(gv(u, k), "in")] = 1
    for i in (u - 1, u + 1):
        if 1 <= i <= n:
            expected[(gv(i, v), "out")] = 1
    actual = {(w, d): m for w, m, d in seed.quiver.arrows_at(gv(u, v))}
    return actual == expected


def normalize_cleanup(seed: TrackedSeed, r: int, n: int, ell: int) -> TrackedSeed:
    """Repeatedly mutate pattern vertices in rows [1,r-2] u [r+2,ell].

    Scan order is row-major (top-to-bottom, left-to-right); bounded by a
    generous iteration cap, exceeded only on non-termination.
    """
    rows = [v for v in range(1, ell + 1) if v <= r - 2 or v >= r + 2]
    cap = (n * ell + 1) ** 2
    steps = 0
    while True:
        hit = None
        for v in rows:
            for u in range(1, n + 1):
                if _matches_cleanup_pattern(seed, u, v, n, ell):
                    hit = gv(u, v)
                    break
            if hit:
                break
        if hit is None:
            return seed
        seed = run(seed, [hit])
        steps += 1
        if steps > cap:
            raise RuntimeError(f"cleanup normalization did not terminate within {cap} steps")


@dataclass
class PipelineInfo:
    """Log-slice boundaries of the sweep / cleanup / normalization phases."""

    sweep_end: int
    cleanup_end: int
    normalize_end: int


def to_Sm_prime(seed: TrackedSeed, xi: HeightFunction, r: int) -> tuple[TrackedSeed, PipelineInfo]:
    """Run the full pipeline: row sweep, cleanups in descending order,
    then the local normalization; returns the prepared seed."""
    n = seed.cartan.n
    ell = max(k for _, k in (parse_gv(v) for v in seed.quiver.vertices)) - 1
    seed = run(seed, seq_S(xi, r, n, ell))
    sweep_end = len(seed.log)
    for t in range(len(zero_flag_nodes(xi)), 0, -1):
        seed = run(seed, seq_S_t(xi, r, t, ell))
    cleanup_end = len(seed.log)
    seed = normalize_cleanup(seed, r, n, ell)
    return seed, PipelineInfo(sweep_end, cleanup_end, len(seed.log))


def extract_local(seed: TrackedSeed, r: int) -> TrackedSeed:
    """Freeze rows r-1, r+1 and restrict to rows r-1..r+1, relabeled to
    the band quiver's vertex names (i', i, i'')."""
    n = seed.cartan.n
    ell = max(k for _, k in (parse_gv(v) for v in seed.quiver.vertices)) - 1
    rows = [k for k in (r - 1, r, r + 1) if 1 <= k <= ell + 1]
    keep = [gv(i, k) for k in rows for i in range(1, n + 1)]
    freeze = [gv(i, k) for k in (r - 1, r + 1) if 1 <= k <= ell + 1 for i in range(1, n + 1)]
    sub = seed.quiver.freeze_restrict(freeze, keep)
    mapping = {gv(i, r): str(i) for i in range(1, n + 1)}
    mapping.update({gv(i, r - 1): fp(i) for i in range(1, n + 1)})
    mapping.update({gv(i, r + 1): fpp(i) for i in range(1, n + 1)})
    labels = {mapping[v]: seed.labels[v] for v in keep}
    return TrackedSeed(sub.relabel(mapping), labels, seed.cartan)


# -- offset column runs ------------------------------------------------------


def s_column(xi: HeightFunction, u: int, t_u: int, r: int) -> list[str]:
    """Single-column run: direction set by the slope at u and sign of t_u."""
    if xi(u) == xi(u + 1) - 1:
        if t_u >= 0:
            ks = range(r + t_u, r - 1, -1)
        else:
            ks = range(r + t_u, r + 1)
    elif xi(u) == xi(u + 1) + 1:
        if t_u >= 0:
            ks = range(r, r + t_u + 1)
        else:
            ks = range(r, r + t_u - 1, -1)
    else:
        raise ValueError(f"degenerate slope at {u}")
    return [gv(u, k) for k in ks]


def seq_S_prime(
    xi: HeightFunction, idx, as_, rs, r: int, n: int | None = None
) -> tuple[list[str], TProfile]:
    """Concatenated column runs over [i_1, i_k], plus the boundary tail.

    The tail column i_k+1 is appended exactly when i_k < n, the last two
    anchors descend, and the last offset is nonzero; it ascends in rows
    for positive offset and descends for negative.
    """
    idx = tuple(idx)
    as_ = tuple(as_)
    rs = tuple(rs)
    if n is None:
        n = xi.n
    if any(r + rj < 1 for rj in rs):
        raise ValueError("offset run needs every string length r+r_j >= 1")
    prof = t_profile(idx, rs)
    out = []
    for u in range(idx[0], idx[-1] + 1):
        out.extend(s_column(xi, u, prof(u), r))
    # boundary tail: the final column run overshoots by a fresh string that
    # the appended column unwinds; descent into i_k is forced when the
    # last offset is nonzero, so the guard reduces to i_k < n, r_k != 0
    if has_boundary_tail(idx, rs, n):
        col = idx[-1] + 1
        if rs[-1] > 0:
            tail = [gv(col, k2) for k2 in range(r, r + rs[-1] + 1)]
        else:
            tail = [gv(col, k2) for k2 in range(r, r + rs[-1] - 1, -1)]
        out.extend(tail)
    if len(set(out)) != len(out):
        raise AssertionError("offset run visits a vertex twice")
    return out, prof


def has_boundary_tail(idx, rs, n: int) -> bool:
    return idx[-1] < n and rs[-1] != 0


def final_vertex(idx, rs, r: int, n: int) -> str:
    """Where the target label lands: the tail end, or (i_k, r)."""
    if has_boundary_tail(idx, rs, n):
        return gv(idx[-1] + 1, r + rs[-1])
    return gv(idx[-1], r)


def q_prefix(
    seed_prepared: TrackedSeed,
    sprime: list[str],
    j: int,
    s: int,
    r: int,
) -> IcedQuiver:
    """Quiver after the strict prefix of the offset run before (j, r+s)."""
    target = gv(j, r + s)
    if target not in sprime:
        raise ValueError(f"vertex {target} not visited by the offset run")
    prefix = sprime[: sprime.index(target)]
    return seed_prepared.quiver.mutate_seq(prefix)
