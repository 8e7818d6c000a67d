"""Oriented planar-diagram (PD) codes.

A crossing ``X[a, b, c, d]`` lists the four edge labels counterclockwise,
starting from the incoming under-edge ``a``; ``c`` is the outgoing
under-edge and ``b``, ``d`` are the two halves of the over-strand.  Edges
are numbered ``1..2n`` for ``n`` crossings.

Every crossing also carries a sign: ``+1`` when the over-strand runs from
``d`` to ``b`` and ``-1`` when it runs from ``b`` to ``d``.  Signs are derived
from the edge numbering at parse time and carried explicitly afterwards, so
diagrams produced by Reidemeister moves never depend on numbering tricks.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    EdgeCountMismatch,
    MalformedToken,
    NonContiguousNumbering,
    NonPlanar,
    PDError,
    UnknownEdge,
)

Dart = tuple[int, int]  # (crossing index, position 0..3)

_X_TOKEN = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")
_SEPARATORS = re.compile(r"[\s,]*")


@dataclass(frozen=True)
class Crossing:
    under_in: int
    over_a: int
    under_out: int
    over_b: int

    def __iter__(self):
        return iter((self.under_in, self.over_a, self.under_out, self.over_b))


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class KnotDiagram:
    """An immutable, validated, oriented PD diagram."""

    def __init__(self, crossings: Iterable[Sequence[int]], signs: Sequence[int] | None = None):
        xs = []
        for x in crossings:
            x = tuple(int(e) for e in x)
            if len(x) != 4:
                raise MalformedToken(f"crossing {x} does not have four entries")
            xs.append(x)
        self.crossings: tuple[tuple[int, int, int, int], ...] = tuple(xs)
        self._validate_labels()
        self._occ = self._occurrences()
        if signs is None:
            signs = self._derive_signs()
        else:
            signs = tuple(int(s) for s in signs)
            if len(signs) != len(self.crossings) or any(s not in (1, -1) for s in signs):
                raise PDError("one sign of +1/-1 is required per crossing")
        self.signs: tuple[int, ...] = tuple(signs)
        self._check_orientation()
        self._check_planar()

    # construction helpers

    def _validate_labels(self) -> None:
        counts: dict[int, int] = {}
        for x in self.crossings:
            for e in x:
                counts[e] = counts.get(e, 0) + 1
        bad = sorted(e for e, k in counts.items() if k != 2)
        if bad:
            raise EdgeCountMismatch(
                "edges must occur exactly twice; offenders: "
                + ", ".join(f"{e} (x{counts[e]})" for e in bad)
            )
        n = len(self.crossings)
        if sorted(counts) != list(range(1, 2 * n + 1)):
            raise NonContiguousNumbering(
                f"edge labels must be exactly 1..{2 * n}, got {sorted(counts)}"
            )
        if n == 0:
            raise PDError("a diagram needs at least one crossing")

    def _occurrences(self) -> dict[int, list[Dart]]:
        occ: dict[int, list[Dart]] = {}
        for i, x in enumerate(self.crossings):
            for p, e in enumerate(x):
                occ.setdefault(e, []).append((i, p))
        return occ

    def _other_end(self, dart: Dart) -> Dart:
        i, p = dart
        a, b = self._occ[self.crossings[i][p]]
        return b if a == dart else a

    def _walk(self, start: Dart) -> list[Dart]:
        """Incoming darts met while following a strand from incoming dart ``start``."""
        out = []
        dart = start
        while True:
            out.append(dart)
            i, p = dart
            dart = self._other_end((i, (p + 2) % 4))
            if dart == start:
                return out
            if len(out) > 4 * len(self.crossings):
                raise NonPlanar("strand walk does not close up")

    def _derive_signs(self) -> tuple[int, ...]:
        incoming: set[Dart] = set()
        seen_edges: set[int] = set()
        n = len(self.crossings)
        starts = [(i, 0) for i in range(n)]
        for start in starts:
            if start in incoming:
                continue
            walk = self._walk(start)
            incoming.update(walk)
            seen_edges.update(self.crossings[i][p] for i, p in walk)
        # components that never pass under: orient by the numbering
        for e in sorted(self._occ):
            if e in seen_edges:
                continue
            cycle = self._walk(self._occ[e][0])
            edges = {self.crossings[i][p] for i, p in cycle}
            nxt = e + 1 if e + 1 in edges else min(edges)
            candidates = [
                d for d in self._occ[e]
                if self.crossings[d[0]][(d[1] + 2) % 4] == nxt
            ]
            candidates.sort(key=lambda d: (d[1] != 3, d))
            walk = self._walk(candidates[0] if candidates else self._occ[e][0])
            incoming.update(walk)
            seen_edges.update(self.crossings[i][p] for i, p in walk)
        signs = []
        for i in range(n):
            if (i, 3) in incoming and (i, 1) not in incoming:
                signs.append(1)
            elif (i, 1) in incoming and (i, 3) not in incoming:
                signs.append(-1)
            else:
                raise NonPlanar(f"over-strand at crossing {i} is not consistently oriented")
            if (i, 0) not in incoming or (i, 2) in incoming:
                raise NonPlanar(f"under-strand at crossing {i} is not consistently oriented")
        return tuple(signs)

    def _check_orientation(self) -> None:
        for e, darts in self._occ.items():
            if sum(self.is_incoming(d) for d in darts) != 1:
                raise PDError(f"edge {e} is not oriented consistently with the crossing signs")

    def _check_planar(self) -> None:
        n = len(self.crossings)
        uf = _UnionFind()
        for i in range(n):
            uf.find(i)
        for (i, _), (j, _) in self._occ.values():
            uf.union(i, j)
        pieces = len({uf.find(i) for i in range(n)})
        # face orbits are counted per piece, each piece being a planar map
        if n - 2 * n + len(self.faces) != 2 * pieces:
            raise NonPlanar(
                f"Euler characteristic check failed: V={n}, E={2 * n}, F={len(self.faces)}, "
                f"pieces={pieces}"
            )

    # orientation

    def is_incoming(self, dart: Dart) -> bool:
        i, p = dart
        if p == 0:
            return True
        if p == 2:
            return False
        return (p == 3) == (self.signs[i] == 1)

    @cached_property
    def head(self) -> dict[int, Dart]:
        """Edge -> the dart where it enters a crossing."""
        return {e: next(d for d in occ if self.is_incoming(d)) for e, occ in self._occ.items()}

    @cached_property
    def tail(self) -> dict[int, Dart]:
        """Edge -> the dart where it leaves a crossing."""
        return {e: next(d for d in occ if not self.is_incoming(d)) for e, occ in self._occ.items()}

    @cached_property
    def successor(self) -> dict[int, int]:
        out = {}
        for e, (i, p) in self.head.items():
            out[e] = self.crossings[i][(p + 2) % 4]
        return out

    def other_end(self, dart: Dart) -> Dart:
        return self._other_end(dart)

    # structure

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings)

    @cached_property
    def components(self) -> list[tuple[int, ...]]:
        """Oriented edge cycles, each rotated to start at its smallest edge."""
        seen: set[int] = set()
        comps = []
        for e in sorted(self._occ):
            if e in seen:
                continue
            cycle = [e]
            nxt = self.successor[e]
            while nxt != e:
                cycle.append(nxt)
                nxt = self.successor[nxt]
            seen.update(cycle)
            comps.append(tuple(cycle))
        return comps

    @cached_property
    def passages(self) -> list[list[Dart]]:
        """Per component, the incoming darts in the order the strand meets them."""
        out = []
        for comp in self.components:
            out.append([self.head[e] for e in comp])
        return out

    @cached_property
    def _arc_data(self) -> tuple[list[tuple[int, ...]], dict[int, int]]:
        uf = _UnionFind()
        for e in self._occ:
            uf.find(e)
        for _, b, _, d in self.crossings:
            uf.union(b, d)
        groups: dict[int, list[int]] = {}
        for e in sorted(self._occ):
            groups.setdefault(uf.find(e), []).append(e)
        arcs = sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])
        index = {e: k for k, arc in enumerate(arcs) for e in arc}
        return arcs, index

    @property
    def arcs(self) -> list[tuple[int, ...]]:
        """Arcs as sorted edge tuples; the ArcId of an arc is its list index."""
        return self._arc_data[0]

    def arcs_of(self) -> list[int]:
        return list(range(len(self.arcs)))

    def arc_at(self, edge: int) -> int:
        try:
            return self._arc_data[1][edge]
        except KeyError:
            raise UnknownEdge(edge) from None

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def roles(self) -> list[tuple[int, int, int]]:
        """Per crossing ``(source, over, target)`` arcs for the coloring rule.

        The target receives ``m * source + (1 - m) * over``.  The source is the
        under-arc on the right of the oriented over-arc: the incoming one at a
        positive crossing and the outgoing one at a negative crossing.
        """
        out = []
        for (a, b, c, _), s in zip(self.crossings, self.signs):
            src, dst = (a, c) if s > 0 else (c, a)
            out.append((self.arc_at(src), self.arc_at(b), self.arc_at(dst)))
        return out

    def is_alternating(self) -> bool:
        for walk in self.passages:
            kinds = [p % 2 for _, p in walk]
            if any(kinds[k] == kinds[k - 1] for k in range(len(kinds))) and len(kinds) > 1:
                return False
        return True

    def every_component_goes_under(self) -> bool:
        return all(any(p == 0 for _, p in walk) for walk in self.passages)

    def writhe(self) -> int:
        return sum(self.signs)

    # faces

    def next_face_dart(self, dart: Dart) -> Dart:
        j, q = self._other_end(dart)
        return (j, (q - 1) % 4)

    @cached_property
    def faces(self) -> list[list[Dart]]:
        """Faces as cycles of departing darts, each traversed with the face on the left."""
        seen: set[Dart] = set()
        out = []
        for i in range(len(self.crossings)):
            for p in range(4):
                if (i, p) in seen:
                    continue
                face = []
                d = (i, p)
                while d not in seen:
                    seen.add(d)
                    face.append(d)
                    d = self.next_face_dart(d)
                out.append(face)
        return out

    def side(self, dart: Dart) -> tuple[int, bool]:
        """``(edge, forward)`` for a departing dart; forward if it follows the orientation."""
        i, p = dart
        return self.crossings[i][p], not self.is_incoming(dart)

    # serialization

    def to_pd_string(self) -> str:
        return " ".join("X[{},{},{},{}]".format(*x) for x in self.crossings)

    def to_json(self) -> dict:
        return {
            "pd": [list(x) for x in self.crossings],
            "signs": list(self.signs),
            "crossings": len(self.crossings),
            "arcs": [list(a) for a in self.arcs],
            "components": [list(c) for c in self.components],
            "alternating": self.is_alternating(),
        }

    def switch(self, *indices: int) -> KnotDiagram:
        """Exchange over and under at the given crossings, keeping the projection."""
        xs = list(self.crossings)
        signs = list(self.signs)
        for i in indices:
            a, b, c, d = xs[i]
            # the new incoming under-edge is the old incoming over-edge
            xs[i] = (d, a, b, c) if signs[i] > 0 else (b, c, d, a)
            signs[i] = -signs[i]
        return KnotDiagram(xs, signs)

    def mirror(self) -> KnotDiagram:
        """Switch every crossing."""
        return self.switch(*range(len(self.crossings)))

    def relabel(self, mapping: dict[int, int]) -> KnotDiagram:
        return KnotDiagram(
            [tuple(mapping[e] for e in x) for x in self.crossings], self.signs
        )

    def __eq__(self, other):
        if not isinstance(other, KnotDiagram):
            return NotImplemented
        return self.crossings == other.crossings and self.signs == other.signs

    def __hash__(self):
        return hash((self.crossings, self.signs))

    def __repr__(self):
        return f"KnotDiagram({self.to_pd_string()!r})"


def parse_pd(text: str | Sequence) -> KnotDiagram:
    """Parse ``X[a,b,c,d]`` tuples, a JSON list of 4-tuples, or ``{"pd": [...]}``."""
    if not isinstance(text, str):
        return _from_data(text)
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MalformedToken(f"invalid JSON PD code: {exc}") from None
        return _from_data(data)
    if stripped.startswith("PD[") and stripped.endswith("]"):
        stripped = stripped[3:-1]
    crossings = []
    pos = 0
    while True:
        sep = _SEPARATORS.match(stripped, pos)
        pos = sep.end()
        if pos >= len(stripped):
            break
        tok = _X_TOKEN.match(stripped, pos)
        if tok is None:
            snippet = stripped[pos:pos + 20]
            raise MalformedToken(f"unexpected input at offset {pos}: {snippet!r}")
        crossings.append(tuple(int(g) for g in tok.groups()))
        pos = tok.end()
    return KnotDiagram(crossings)


def _from_data(data) -> KnotDiagram:
    signs = None
    if isinstance(data, dict):
        if "pd" not in data:
            raise MalformedToken("JSON object needs a 'pd' key")
        signs = data.get("signs")
        data = data["pd"]
        if isinstance(data, str):
            d = parse_pd(data)
            return d if signs is None else KnotDiagram(d.crossings, signs)
    if not isinstance(data, (list, tuple)):
        raise MalformedToken("PD data must be a list of 4-tuples")
    for x in data:
        if not isinstance(x, (list, tuple)) or len(x) != 4 or not all(
            isinstance(e, int) and not isinstance(e, bool) for e in x
        ):
            raise MalformedToken(f"bad crossing entry {x!r}")
    return KnotDiagram(data, signs)


def arcs_of(diagram: KnotDiagram) -> list[int]:
    return diagram.arcs_of()


def arc_at(diagram: KnotDiagram, edge: int) -> int:
    return diagram.arc_at(edge)


def components(diagram: KnotDiagram) -> list[tuple[int, ...]]:
    return diagram.components


def is_alternating(diagram: KnotDiagram) -> bool:
    return diagram.is_alternating()
