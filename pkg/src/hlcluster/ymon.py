"""Exact monomial algebra on the Y-lattice.

Monomials are finite integer-exponent vectors over variables Y[i,s]
(node i of an A_n diagram, integer spectral shift s).  The module also
implements the A-sublattice generators, the dominance partial order on
monomials, and the Kirillov-Reshetikhin string constructors used
throughout the rest of the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional


@dataclass(frozen=True)
class CartanData:
    """Type A_n Cartan matrix: c_ii = 2, c_ij = -1 iff |i-j| = 1."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"rank must be >= 1, got {self.n}")

    def entry(self, i: int, j: int) -> int:
        self.check_node(i)
        self.check_node(j)
        if i == j:
            return 2
        return -1 if abs(i - j) == 1 else 0

    def neighbors(self, i: int) -> list[int]:
        self.check_node(i)
        return [j for j in (i - 1, i + 1) if 1 <= j <= self.n]

    def check_node(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise ValueError(f"node {i} outside [1,{self.n}]")


class YMonomial:
    """Immutable Laurent monomial in the Y[i,s]; zero exponents never stored."""

    __slots__ = ("_e", "_hash")

    def __init__(self, exponents: Mapping[tuple[int, int], int] | None = None):
        e = {}
        if exponents:
            for (i, s), c in exponents.items():
                if c:
                    e[(int(i), int(s))] = int(c)
        object.__setattr__(self, "_e", e)
        object.__setattr__(self, "_hash", None)

    # -- basic structure ------------------------------------------------

    @property
    def exponents(self) -> dict[tuple[int, int], int]:
        return dict(self._e)

    def exponent(self, i: int, s: int) -> int:
        return self._e.get((i, s), 0)

    def support(self) -> list[tuple[int, int]]:
        return sorted(self._e)

    def is_identity(self) -> bool:
        return not self._e

    def is_dominant(self) -> bool:
        return all(c > 0 for c in self._e.values())

    def degree(self) -> int:
        return sum(self._e.values())

    def __bool__(self) -> bool:
        return bool(self._e)

    def __eq__(self, other) -> bool:
        return isinstance(other, YMonomial) and self._e == other._e

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._e.items()))
            object.__setattr__(self, "_hash", h)
        return h

    # -- arithmetic -----------------------------------------------------

    def __mul__(self, other: "YMonomial") -> "YMonomial":
        if not isinstance(other, YMonomial):
            return NotImplemented
        e = dict(self._e)
        for k, c in other._e.items():
            nc = e.get(k, 0) + c
            if nc:
                e[k] = nc
            else:
                e.pop(k, None)
        m = YMonomial.__new__(YMonomial)
        object.__setattr__(m, "_e", e)
        object.__setattr__(m, "_hash", None)
        return m

    def __truediv__(self, other: "YMonomial") -> "YMonomial":
        return self * other.inverse()

    def inverse(self) -> "YMonomial":
        return YMonomial({k: -c for k, c in self._e.items()})

    def __pow__(self, k: int) -> "YMonomial":
        if k == 0:
            return YMonomial()
        return YMonomial({v: c * k for v, c in self._e.items()})

    def shifted(self, c: int) -> "YMonomial":
        """Shift every spectral index by c."""
        return YMonomial({(i, s + c): e for (i, s), e in self._e.items()})

    def divides(self, other: "YMonomial") -> bool:
        """True iff other/self has all nonnegative exponents."""
        return all(other.exponent(i, s) >= c for (i, s), c in self._e.items())

    def gcd(self, other: "YMonomial") -> "YMonomial":
        """Componentwise min; meaningful for dominant monomials."""
        e = {}
        for k, c in self._e.items():
            d = min(c, other._e.get(k, 0))
            if d:
                e[k] = d
        return YMonomial(e)

    # -- canonical text / JSON forms -------------------------------------

    def __repr__(self) -> str:
        return f"YMonomial({self.text()})"

    def text(self) -> str:
        if not self._e:
            return "1"
        parts = []
        for (i, s) in sorted(self._e):
            c = self._e[(i, s)]
            parts.append(f"Y[{i},{s}]" + (f"^{c}" if c != 1 else ""))
        return " * ".join(parts)

    def to_json(self) -> list[list[int]]:
        return [[i, s, self._e[(i, s)]] for (i, s) in sorted(self._e)]

    @staticmethod
    def from_json(data: Iterable[Iterable[int]]) -> "YMonomial":
        return YMonomial({(i, s): c for i, s, c in data})

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @staticmethod
    def loads(text: str) -> "YMonomial":
        return YMonomial.from_json(json.loads(text))


ONE = YMonomial()


def yvar(i: int, s: int) -> YMonomial:
    return YMonomial({(i, s): 1})


def a_inverse(i: int, s: int, cartan: CartanData) -> YMonomial:
    """A[i,s]^-1 = Y[i,s-1]^-1 Y[i,s+1]^-1 * prod_{j: c_ji = -1} Y[j,s]."""
    cartan.check_node(i)
    e = {(i, s - 1): -1, (i, s + 1): -1}
    for j in cartan.neighbors(i):
        e[(j, s)] = 1
    return YMonomial(e)


def a_var(i: int, s: int, cartan: CartanData) -> YMonomial:
    return a_inverse(i, s, cartan).inverse()


def kr_monomial(i: int, s: int, k: int) -> YMonomial:
    """Step-2 string Y[i,s] Y[i,s+2] ... Y[i,s+2k-2].

    k = 0 is allowed and yields the identity (the zero-length string);
    negative lengths are rejected.
    """
    if k < 0:
        raise ValueError(f"string length must be >= 0, got {k}")
    return YMonomial({(i, s + 2 * t): 1 for t in range(k)})


def lift_r(m: YMonomial, r: int) -> YMonomial:
    """Replace each factor Y[i,a]^e by the length-r string starting at a.

    Multiplicative in m; requires m dominant and r >= 1.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if not m.is_dominant():
        raise ValueError(f"lift of non-dominant monomial {m.text()}")
    out = ONE
    for (i, a), e in m.exponents.items():
        out = out * kr_monomial(i, a, r) ** e
    return out


def shifted_kr(i: int, a: int, r: int, rj: int) -> YMonomial:
    """Offset string: length r+rj, anchored at a (rj <= 0) or a-2rj (rj >= 0).

    Both branches agree at rj = 0.  rj = -r gives the empty string;
    rj < -r is rejected.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if rj < -r:
        raise ValueError(f"offset {rj} below -r = {-r}")
    if rj <= 0:
        return kr_monomial(i, a, r + rj)
    return kr_monomial(i, a - 2 * rj, r + rj)


# -- dominance order ----------------------------------------------------


GREATER = "greater"
LESS = "less"
EQUAL = "equal"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class DomOrdering:
    """Outcome of a dominance comparison.

    When comparable, ``certificate`` maps (i,s) to the exponent of A[i,s]
    in m1/m2; all entries share one sign and multiply back to the quotient.
    """

    relation: str
    certificate: Optional[dict[tuple[int, int], int]] = None

    def __repr__(self):
        if self.certificate:
            cert = " ".join(f"A[{i},{s}]^{c}" for (i, s), c in sorted(self.certificate.items()))
            return f"DomOrdering({self.relation}: {cert})"
        return f"DomOrdering({self.relation})"


def a_decompose(q: YMonomial, cartan: CartanData) -> Optional[dict[tuple[int, int], int]]:
    """Write q as an integer combination of the A[i,s], if one exists.

    The A-vectors are triangular in the spectral index: the exponent of
    Y[i,t-1] in any decomposition supported on shifts >= t is exactly the
    A[i,t]-coefficient.  Peeling shifts in increasing order therefore
    recovers the unique solution whenever it exists.
    """
    if q.is_identity():
        return {}
    sup = q.support()
    lo = min(s for _, s in sup)
    hi = max(s for _, s in sup)
    residual = q.exponents
    coeffs: dict[tuple[int, int], int] = {}

    def sub_a(i: int, s: int, c: int) -> None:
        # residual -= c * A[i,s]   (A[i,s] = Y[i,s-1] Y[i,s+1] / prod nbrs)
        for key, delta in (((i, s - 1), -c), ((i, s + 1), -c)):
            nc = residual.get(key, 0) + delta
            if nc:
                residual[key] = nc
            else:
                residual.pop(key, None)
        for j in cartan.neighbors(i):
            nc = residual.get((j, s), 0) + c
            if nc:
                residual[(j, s)] = nc
            else:
                residual.pop((j, s), None)

    # any solution is supported on shifts in [lo+1, hi-1]
    for t in range(lo + 1, hi):
        for i in range(1, cartan.n + 1):
            c = residual.get((i, t - 1), 0)
            if c:
                coeffs[(i, t)] = c
                sub_a(i, t, c)
    return coeffs if not residual else None


def compare_dominance(m1: YMonomial, m2: YMonomial, cartan: CartanData) -> DomOrdering:
    """Compare m1, m2 in the dominance order.

    m2 <= m1 iff m1/m2 is a product of the A[i,s] with nonnegative
    exponents.  Returns Equal / Greater / Less / Incomparable, with the
    A-exponent certificate when comparable.
    """
    if m1 == m2:
        return DomOrdering(EQUAL, {})
    coeffs = a_decompose(m1 / m2, cartan)
    if coeffs is None:
        return DomOrdering(INCOMPARABLE)
    if all(c > 0 for c in coeffs.values()):
        return DomOrdering(GREATER, coeffs)
    if all(c < 0 for c in coeffs.values()):
        return DomOrdering(LESS, coeffs)
    return DomOrdering(INCOMPARABLE)


def shift_equivalent(m1: YMonomial, m2: YMonomial, even_only: bool = True) -> Optional[int]:
    """Return c with m2 = m1 shifted by s -> s+c, if such a shift exists.

    Spectral parity is preserved by every construction here, so by default
    only even shifts are admitted; figure-level fixtures may relax that.
    """
    if m1.is_identity() and m2.is_identity():
        return 0
    if m1.is_identity() != m2.is_identity():
        return None
    if len(m1._e) != len(m2._e):
        return None
    c = min(s for _, s in m2.support()) - min(s for _, s in m1.support())
    if even_only and c % 2 != 0:
        return None
    return c if m1.shifted(c) == m2 else None
