"""Iced quivers and matrix mutation.

A quiver is a skew-symmetric integer arrow matrix over an ordered set of
opaque string labels, with a frozen-vertex mask.  Arrows between two
frozen vertices are suppressed, 2-cycles never arise by the sign
convention, and mutation returns a new value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


class FrozenVertexError(ValueError):
    pass


class ClosureError(ValueError):
    """freeze_restrict precondition violated; carries the offending arrow."""

    def __init__(self, arrow: tuple[str, str, int]):
        self.arrow = arrow
        super().__init__(f"arrow {arrow[0]} -> {arrow[1]} (x{arrow[2]}) crosses the kept set")


@dataclass(frozen=True)
class IcedQuiver:
    vertices: tuple[str, ...]
    frozen: frozenset[str]
    # signed entries, both (u,v): m and (v,u): -m stored; zeros absent
    b: dict[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        idx = set(self.vertices)
        if len(idx) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        if not self.frozen <= idx:
            raise ValueError(f"frozen vertices {self.frozen - idx} not in quiver")

    @staticmethod
    def from_arrows(vertices, frozen, arrows) -> "IcedQuiver":
        """Build from a list of (source, target, multiplicity)."""
        q = IcedQuiver(tuple(vertices), frozenset(frozen))
        b = q.b
        for u, v, m in arrows:
            if u == v:
                raise ValueError(f"loop at {u}")
            b[(u, v)] = b.get((u, v), 0) + m
            b[(v, u)] = b.get((v, u), 0) - m
        for k in [k for k, m in b.items() if m == 0]:
            del b[k]
        q._validate_entries()
        return q

    def _validate_entries(self) -> None:
        for (u, v), m in self.b.items():
            if u not in set(self.vertices) or v not in set(self.vertices):
                raise ValueError(f"arrow endpoint {u}->{v} not a vertex")
            if m and u in self.frozen and v in self.frozen:
                raise ValueError(f"arrow between frozen vertices {u}, {v}")

    # -- access ----------------------------------------------------------

    def entry(self, u: str, v: str) -> int:
        return self.b.get((u, v), 0)

    def is_frozen(self, v: str) -> bool:
        return v in self.frozen

    def has_vertex(self, v: str) -> bool:
        return v in set(self.vertices)

    def arrows(self) -> list[tuple[str, str, int]]:
        """All arrows (u, v, mult) with mult > 0, in vertex order."""
        order = {v: i for i, v in enumerate(self.vertices)}
        out = [(u, v, m) for (u, v), m in self.b.items() if m > 0]
        out.sort(key=lambda a: (order[a[0]], order[a[1]]))
        return out

    def arrows_at(self, v: str) -> list[tuple[str, int, str]]:
        """Incident arrows of v as (neighbor, multiplicity, 'in'|'out')."""
        if not self.has_vertex(v):
            raise ValueError(f"vertex {v!r} not in quiver")
        order = {u: i for i, u in enumerate(self.vertices)}
        out = []
        for u in self.vertices:
            m = self.entry(u, v)
            if m > 0:
                out.append((u, m, "in"))
            elif m < 0:
                out.append((u, -m, "out"))
        out.sort(key=lambda a: order[a[0]])
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IcedQuiver)
            and self.vertices == other.vertices
            and self.frozen == other.frozen
            and self.b == other.b
        )

    def same_arrows(self, other: "IcedQuiver") -> bool:
        """Equality of arrow sets, ignoring vertex order."""
        return set(self.vertices) == set(other.vertices) and self.b == other.b

    # -- mutation ----------------------------------------------------------

    def mutate(self, k: str) -> "IcedQuiver":
        if not self.has_vertex(k):
            raise ValueError(f"vertex {k!r} not in quiver")
        if k in self.frozen:
            raise FrozenVertexError(f"cannot mutate frozen vertex {k!r}")
        nbrs = [u for u in self.vertices if self.entry(u, k)]
        nb = dict(self.b)

        def put(u, v, val):
            if val:
                nb[(u, v)] = val
            else:
                nb.pop((u, v), None)

        for u in nbrs:
            for v in nbrs:
                if u == v:
                    continue
                buk, bkv = self.entry(u, k), self.entry(k, v)
                prod = buk * bkv
                if prod > 0:
                    sgn = 1 if buk > 0 else -1
                    put(u, v, nb.get((u, v), 0) + sgn * prod)
        for u in nbrs:
            put(u, k, -self.entry(u, k))
            put(k, u, -self.entry(k, u))
        # frozen-frozen entries are dropped, not recorded
        for u in nbrs:
            if u in self.frozen:
                for v in nbrs:
                    if v in self.frozen:
                        nb.pop((u, v), None)
        return IcedQuiver(self.vertices, self.frozen, nb)

    def mutate_seq(self, seq) -> "IcedQuiver":
        q = self
        for k in seq:
            q = q.mutate(k)
        return q

    # -- freezing / restriction -------------------------------------------

    def freeze_restrict(self, freeze_set, keep) -> "IcedQuiver":
        """Full subquiver on keep, with freeze_set newly frozen.

        Requires that no arrow connects a kept mutable vertex with a
        dropped one (the seed-subpattern condition).
        """
        keep = list(keep)
        keep_set = set(keep)
        freeze_set = set(freeze_set)
        if not keep_set <= set(self.vertices):
            raise ValueError("keep contains unknown vertices")
        new_frozen = (self.frozen | freeze_set) & keep_set
        for (u, v), m in self.b.items():
            if m <= 0:
                continue
            for a, other in ((u, v), (v, u)):
                if a in keep_set and a not in new_frozen and other not in keep_set:
                    raise ClosureError((u, v, m))
        nb = {}
        for (u, v), m in self.b.items():
            if u in keep_set and v in keep_set and m:
                if u in new_frozen and v in new_frozen:
                    continue
                nb[(u, v)] = m
        return IcedQuiver(tuple(v for v in self.vertices if v in keep_set), frozenset(new_frozen), nb)

    def relabel(self, mapping: dict[str, str]) -> "IcedQuiver":
        verts = tuple(mapping.get(v, v) for v in self.vertices)
        frozen = frozenset(mapping.get(v, v) for v in self.frozen)
        nb = {(mapping.get(u, u), mapping.get(v, v)): m for (u, v), m in self.b.items()}
        return IcedQuiver(verts, frozen, nb)

    # -- encoding ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "frozen": sorted(self.frozen, key=self.vertices.index),
            "arrows": [[u, v, m] for u, v, m in self.arrows()],
        }

    @staticmethod
    def from_json(data: dict) -> "IcedQuiver":
        return IcedQuiver.from_arrows(data["vertices"], data["frozen"], data["arrows"])

    def encode(self, format: str = "json") -> str:
        if format == "json":
            return json.dumps(self.to_json(), separators=(",", ":"))
        if format == "dot":
            lines = ["digraph quiver {"]
            for v in self.vertices:
                shape = "box" if v in self.frozen else "ellipse"
                lines.append(f'  "{v}" [shape={shape}];')
            for u, v, m in self.arrows():
                label = f' [label="{m}"]' if m > 1 else ""
                lines.append(f'  "{u}" -> "{v}"{label};')
            lines.append("}")
            return "\n".join(lines)
        raise ValueError(f"unknown format {format!r}")

    @staticmethod
    def decode(text: str) -> "IcedQuiver":
        return IcedQuiver.from_json(json.loads(text))

    def __repr__(self):
        return f"IcedQuiver({len(self.vertices)} vertices, {len(self.arrows())} arrows)"
