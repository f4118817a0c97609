"""Dominance-tracked seeds on the KR grid.

The initial seed places Kirillov-Reshetikhin strings on an n x (ell+1)
grid (bottom row frozen).  Mutation multiplies the labels along in- and
out-arrows, picks the dominance-maximal side, and divides by the old
label; every exchange is recorded.  Exchange records can be checked
against the T-system pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .quiver import FrozenVertexError, IcedQuiver
from .ymon import (
    EQUAL,
    GREATER,
    LESS,
    ONE,
    CartanData,
    YMonomial,
    compare_dominance,
    kr_monomial,
)


def gv(i: int, k: int) -> str:
    """Grid vertex label for column i, row k."""
    return f"{i},{k}"


def parse_gv(label: str) -> tuple[int, int]:
    i, k = label.split(",")
    return int(i), int(k)


class IncomparableExchangeError(RuntimeError):
    """The two exchange products are dominance-incomparable.

    Outside the proven mutation sequences this can genuinely occur; the
    failed record is attached for reproduction.
    """

    def __init__(self, record: "ExchangeRecord"):
        self.record = record
        super().__init__(
            f"incomparable exchange at {record.vertex}: "
            f"in={record.p_in.text()} out={record.p_out.text()}"
        )


@dataclass(frozen=True)
class ExchangeRecord:
    vertex: str
    old: YMonomial
    p_in: YMonomial
    p_out: YMonomial
    chosen: str  # "in" | "out" | "tie"
    new: YMonomial

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "old": self.old.to_json(),
            "p_in": self.p_in.to_json(),
            "p_out": self.p_out.to_json(),
            "chosen": self.chosen,
            "new": self.new.to_json(),
        }

    @staticmethod
    def from_json(data: dict) -> "ExchangeRecord":
        return ExchangeRecord(
            data["vertex"],
            YMonomial.from_json(data["old"]),
            YMonomial.from_json(data["p_in"]),
            YMonomial.from_json(data["p_out"]),
            data["chosen"],
            YMonomial.from_json(data["new"]),
        )


@dataclass
class TrackedSeed:
    quiver: IcedQuiver
    labels: dict[str, YMonomial]
    cartan: CartanData
    log: list[ExchangeRecord] = field(default_factory=list)

    def label(self, v: str) -> YMonomial:
        return self.labels[v]

    def copy(self) -> "TrackedSeed":
        return TrackedSeed(self.quiver, dict(self.labels), self.cartan, list(self.log))

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "labels": {v: m.to_json() for v, m in sorted(self.labels.items())},
            "log": [r.to_json() for r in self.log],
        }

    @staticmethod
    def from_json(data: dict, cartan: CartanData) -> "TrackedSeed":
        return TrackedSeed(
            IcedQuiver.from_json(data["quiver"]),
            {v: YMonomial.from_json(m) for v, m in data["labels"].items()},
            cartan,
            [ExchangeRecord.from_json(r) for r in data.get("log", [])],
        )


def xi_parity_base(i: int) -> int:
    """-1 for odd nodes, 0 for even nodes (the spectral parity anchor)."""
    return -1 if i % 2 == 1 else 0


def initial_kr_label(i: int, r: int) -> YMonomial:
    """Grid label at (i, r): the length-r string ending at the parity anchor."""
    return kr_monomial(i, xi_parity_base(i) - 2 * r + 2, r)


def initial_seed(n: int, ell: int) -> TrackedSeed:
    """KR grid seed on columns [1,n], rows [1,ell+1]; bottom row frozen.

    Arrows: odd columns point diagonally down, even columns sideways
    within mutable rows, every column points one row up.
    """
    if n < 1 or ell < 1:
        raise ValueError(f"need n, ell >= 1, got n={n}, ell={ell}")
    vertices = [gv(i, k) for k in range(1, ell + 2) for i in range(1, n + 1)]
    frozen = [gv(i, ell + 1) for i in range(1, n + 1)]
    arrows = []
    for i in range(1, n + 1):
        for k in range(1, ell + 2):
            if i % 2 == 1 and k <= ell:
                for j in (i - 1, i + 1):
                    if 1 <= j <= n:
                        arrows.append((gv(i, k), gv(j, k + 1), 1))
            if i % 2 == 0 and k <= ell:
                for j in (i - 1, i + 1):
                    if 1 <= j <= n:
                        arrows.append((gv(i, k), gv(j, k), 1))
            if k >= 2:
                arrows.append((gv(i, k), gv(i, k - 1), 1))
    # same-row arrows are emitted once per even endpoint; dedup handles the
    # odd<->even double emission implicitly because odd columns never emit
    # same-row arrows.
    quiver = IcedQuiver.from_arrows(vertices, frozen, arrows)
    labels = {gv(i, k): initial_kr_label(i, k) for i in range(1, n + 1) for k in range(1, ell + 2)}
    return TrackedSeed(quiver, labels, CartanData(n))


def exchange_products(seed: TrackedSeed, v: str) -> tuple[YMonomial, YMonomial]:
    p_in, p_out = ONE, ONE
    for u, mult, direction in seed.quiver.arrows_at(v):
        term = seed.labels[u] ** mult
        if direction == "in":
            p_in = p_in * term
        else:
            p_out = p_out * term
    return p_in, p_out


def mutate_tracked(seed: TrackedSeed, v: str) -> tuple[TrackedSeed, ExchangeRecord]:
    """Mutate at v, replacing its label by max(P_in, P_out) / old.

    The maximum is taken in the dominance order; incomparable product
    pairs abort with the offending record attached.
    """
    if seed.quiver.is_frozen(v):
        raise FrozenVertexError(f"cannot mutate frozen vertex {v!r}")
    old = seed.labels[v]
    p_in, p_out = exchange_products(seed, v)
    cmp = compare_dominance(p_in, p_out, seed.cartan)
    if cmp.relation == GREATER:
        chosen, top = "in", p_in
    elif cmp.relation == LESS:
        chosen, top = "out", p_out
    elif cmp.relation == EQUAL:
        chosen, top = "tie", p_in
    else:
        bad = ExchangeRecord(v, old, p_in, p_out, "incomparable", ONE)
        raise IncomparableExchangeError(bad)
    new = top / old
    if not new.is_dominant() and not new.is_identity():
        bad = ExchangeRecord(v, old, p_in, p_out, chosen, new)
        raise IncomparableExchangeError(bad)
    record = ExchangeRecord(v, old, p_in, p_out, chosen, new)
    out = TrackedSeed(seed.quiver.mutate(v), dict(seed.labels), seed.cartan, seed.log + [record])
    out.labels[v] = new
    return out, record


def run(seed: TrackedSeed, seq: Iterable[str]) -> TrackedSeed:
    for v in seq:
        seed, _ = mutate_tracked(seed, v)
    return seed


# -- T-system pattern -----------------------------------------------------


def _kr_shape(m: YMonomial) -> Optional[tuple[int, int, int]]:
    """(i, a, k) if m = Y[i,a] Y[i,a+2] ... Y[i,a+2k-2], else None."""
    if m.is_identity():
        return None
    sup = m.support()
    nodes = {i for i, _ in sup}
    if len(nodes) != 1:
        return None
    i = nodes.pop()
    shifts = sorted(s for _, s in sup)
    if any(m.exponent(i, s) != 1 for s in shifts):
        return None
    if any(b - a != 2 for a, b in zip(shifts, shifts[1:])):
        return None
    return i, shifts[0], len(shifts)


def t_system_conform(record: ExchangeRecord, cartan: CartanData) -> bool:
    """Check that an exchange record instantiates the T-system pattern.

    After canceling the greatest common dominant cofactor of
    {old*new, P_in, P_out}: old and new must be equal-length KR strings
    at one node differing by a shift of 2, the max side the (k+1, k-1)
    string pair, and the other side the product of the length-k neighbor
    strings.
    """
    prod = record.old * record.new
    g = prod.gcd(record.p_in).gcd(record.p_out)
    old_r, new_r = record.old, record.new
    # split the cofactor between old and new greedily (old first)
    g_old = record.old.gcd(g)
    old_r = record.old / g_old
    new_r = record.new / (g / g_old)
    if not (old_r.is_dominant() or old_r.is_identity()):
        return False
    if not (new_r.is_dominant() or new_r.is_identity()):
        return False
    so, sn = _kr_shape(old_r), _kr_shape(new_r)
    if so is None or sn is None:
        return False
    if so[0] != sn[0] or so[2] != sn[2]:
        return False
    i, k = so[0], so[2]
    if abs(so[1] - sn[1]) != 2:
        return False
    a = min(so[1], sn[1])
    low = record.p_in if record.chosen in ("in", "tie") else record.p_out
    other = record.p_out if record.chosen in ("in", "tie") else record.p_in
    top = (low / g)
    if top != (old_r * new_r):
        return False
    expected_other = ONE
    for j in cartan.neighbors(i):
        expected_other = expected_other * kr_monomial(j, a + 1, k)
    return (other / g) == expected_other
