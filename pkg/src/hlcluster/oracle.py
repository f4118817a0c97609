"""Exact Laurent-polynomial engine over the band seed's initial variables.

This is the independent brute-force oracle: cluster variables are held as
exact multivariate Laurent polynomials over the 3n generators
(f'_1..f'_n, x_1..x_n, f''_1..f''_n), mutated by the exchange relation
with exact division.  Any inexact division is a hard failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .heights import HeightFunction
from .quiver import IcedQuiver
from .sequences import build_q_xi, fp, fpp


class InexactDivisionError(ArithmeticError):
    pass


class ClosureCapError(RuntimeError):
    pass


class LaurentPoly:
    """Sparse Laurent polynomial: exponent tuples -> nonzero int coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @staticmethod
    def zero(nvars: int) -> "LaurentPoly":
        return LaurentPoly(nvars)

    @staticmethod
    def one(nvars: int) -> "LaurentPoly":
        return LaurentPoly(nvars, {(0,) * nvars: 1})

    @staticmethod
    def generator(nvars: int, idx: int) -> "LaurentPoly":
        e = [0] * nvars
        e[idx] = 1
        return LaurentPoly(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            nc = terms.get(e, 0) + c
            if nc:
                terms[e] = nc
            else:
                del terms[e]
        return LaurentPoly(self.nvars, terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + other.negate()

    def negate(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = terms.get(e, 0) + c1 * c2
                if nc:
                    terms[e] = nc
                else:
                    del terms[e]
        return LaurentPoly(self.nvars, terms)

    def monomial_shift(self) -> tuple[int, ...]:
        """Componentwise minimum exponent (the monomial content)."""
        if not self.terms:
            raise ValueError("zero polynomial has no content")
        cols = zip(*self.terms)
        return tuple(min(col) for col in cols)

    def _poly_part(self) -> tuple["LaurentPoly", tuple[int, ...]]:
        shift = self.monomial_shift()
        if all(v == 0 for v in shift):
            return self, shift
        terms = {tuple(a - b for a, b in zip(e, shift)): c for e, c in self.terms.items()}
        return LaurentPoly(self.nvars, terms), shift

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises InexactDivisionError otherwise.

        Both operands are normalized to true polynomials with no monomial
        content; the quotient of those is again a true polynomial, found
        by graded-lex leading-term elimination.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        np_, ns = self._poly_part()
        dp, ds = other._poly_part()

        def order_key(e):
            return (sum(e), e)

        lead_d = max(dp.terms, key=order_key)
        cd = dp.terms[lead_d]
        r = dict(np_.terms)
        q: dict[tuple[int, ...], int] = {}
        while r:
            lead_r = max(r, key=order_key)
            cr = r[lead_r]
            t = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(v < 0 for v in t) or cr % cd:
                raise InexactDivisionError("quotient is not a Laurent polynomial")
            coef = cr // cd
            q[t] = coef
            for e, c in dp.terms.items():
                key = tuple(a + b for a, b in zip(e, t))
                nc = r.get(key, 0) - coef * c
                if nc:
                    r[key] = nc
                else:
                    r.pop(key, None)
        net = tuple(a - b for a, b in zip(ns, ds))
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, net)): c for e, c in q.items()})

    def has_monomial_denominator(self) -> bool:
        """True iff negative exponents are confined to the monomial content."""
        poly, _ = self._poly_part()
        return all(min(col) == 0 for col in zip(*poly.terms)) if poly.terms else True

    def canonical(self) -> tuple:
        return tuple(sorted(self.terms.items()))

    def text(self, names: list[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            factors = [
                f"{names[i]}^{v}" if v != 1 else names[i]
                for i, v in enumerate(e)
                if v
            ]
            mono = "*".join(factors) if factors else "1"
            parts.append((c, mono))
        out = ""
        for c, mono in parts:
            sign = "+" if c > 0 else "-"
            mag = abs(c)
            coef = "" if mag == 1 and mono != "1" else str(mag)
            piece = coef + ("*" if coef and mono != "1" else "") + (mono if mono != "1" or not coef else "")
            out += (f" {sign} " if out else ("-" if sign == "-" else "")) + piece
        return out


def var_names(n: int) -> list[str]:
    return [fp(i) for i in range(1, n + 1)] + [str(i) for i in range(1, n + 1)] + [
        fpp(i) for i in range(1, n + 1)
    ]


def var_index(n: int, label: str) -> int:
    return var_names(n).index(label)


@dataclass
class LaurentSeed:
    n: int
    quiver: IcedQuiver
    labels: dict[str, LaurentPoly]

    def copy(self) -> "LaurentSeed":
        return LaurentSeed(self.n, self.quiver, dict(self.labels))


def init_oracle(xi: HeightFunction) -> LaurentSeed:
    n = xi.n
    quiver = build_q_xi(xi)
    labels = {
        name: LaurentPoly.generator(3 * n, i) for i, name in enumerate(var_names(n))
    }
    return LaurentSeed(n, quiver, labels)


def mutate_oracle(seed: LaurentSeed, k: str) -> LaurentSeed:
    """Exchange at k: new label = (in-product + out-product) / old label."""
    if seed.quiver.is_frozen(k):
        raise ValueError(f"cannot mutate frozen vertex {k!r}")
    p_in = LaurentPoly.one(3 * seed.n)
    p_out = LaurentPoly.one(3 * seed.n)
    for u, mult, direction in seed.quiver.arrows_at(k):
        term = seed.labels[u]
        for _ in range(mult):
            if direction == "in":
                p_in = p_in * term
            else:
                p_out = p_out * term
    new = (p_in + p_out).divide_exact(seed.labels[k])
    out = seed.copy()
    out.labels = dict(seed.labels)
    out.labels[k] = new
    out.quiver = seed.quiver.mutate(k)
    return out


def mutate_oracle_seq(seed: LaurentSeed, seq: Iterable[str]) -> LaurentSeed:
    for k in seq:
        seed = mutate_oracle(seed, k)
    return seed


def x_alpha(xi: HeightFunction, i: int, j: int) -> LaurentPoly:
    """Cluster variable from the initial seed by mutating i, i+1, ..., j."""
    if j < i:
        return LaurentPoly.generator(3 * xi.n, var_index(xi.n, str(i)))
    seed = mutate_oracle_seq(init_oracle(xi), (str(v) for v in range(i, j + 1)))
    return seed.labels[str(j)]


def closure(xi: HeightFunction, cap: int = 10_000) -> set[LaurentPoly]:
    """All non-frozen cluster variables reachable by mutation (BFS)."""
    n = xi.n
    start = init_oracle(xi)
    mutable = [str(i) for i in range(1, n + 1)]

    def key(seed):
        return frozenset(seed.labels[v].canonical() for v in mutable)

    seen = {key(start)}
    variables = {start.labels[v] for v in mutable}
    frontier = [start]
    visited = 1
    while frontier:
        nxt = []
        for seed in frontier:
            for v in mutable:
                child = mutate_oracle(seed, v)
                k = key(child)
                if k in seen:
                    continue
                seen.add(k)
                visited += 1
                if visited > cap:
                    raise ClosureCapError(f"closure exceeded cap {cap}")
                variables.update(child.labels[u] for u in mutable)
                nxt.append(child)
        frontier = nxt
    return variables


def verify_identity(lhs: list[LaurentPoly], rhs: list[list[LaurentPoly]]) -> bool:
    """Exact check: product(lhs) == sum of products over rhs."""
    if not lhs:
        raise ValueError("empty left side")
    nvars = lhs[0].nvars
    left = LaurentPoly.one(nvars)
    for f in lhs:
        left = left * f
    right = LaurentPoly.zero(nvars)
    for product in rhs:
        term = LaurentPoly.one(nvars)
        for f in product:
            term = term * f
        right = right + term
    return left == right
