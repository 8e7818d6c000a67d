"""Reidemeister moves on PD diagrams, colored transport, and color-reducing search.

Moves are applied to a raw copy of the crossing table, with fresh labels
for new edges, and the result is renumbered consecutively along each
component.  Colors are transported by fixing every edge outside the move
neighbourhood and solving the crossing conditions for the rest.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field

from .coloring import Coloring, ColoringParams, validate_coloring
from .diagram import KnotDiagram, PDError
from .errors import InapplicableSite, InvalidParameters

KINDS = ("R1+", "R1-", "R2+", "R2-", "R3")
SEARCH_KINDS = ("R1-", "R2+", "R2-", "R3")


@dataclass(frozen=True, order=True)
class MoveSite:
    """Where and how to apply a move.

    ``location`` depends on the kind: ``(crossing,)`` for R1-, ``(edge,)`` for
    R1+, the darts of the bigon or triangle face for R2-/R3, and the two face
    darts ``(i1, p1, i2, p2)`` for R2+.  ``variant`` picks the kink type for
    R1+ (0..3) and which strand goes over for R2+ (0: the first).
    """

    kind: str
    location: tuple[int, ...]
    variant: int = 0

    def to_json(self) -> dict:
        return {"kind": self.kind, "location": list(self.location), "variant": self.variant}

    @classmethod
    def from_json(cls, data: dict) -> MoveSite:
        return cls(data["kind"], tuple(data["location"]), data.get("variant", 0))


# raw diagrams


def _is_incoming(p: int, sign: int) -> bool:
    if p == 0:
        return True
    if p == 2:
        return False
    return (p == 3) == (sign == 1)


def _finish(xs: list[list[int]], signs: list[int]) -> tuple[KnotDiagram, dict[int, int]]:
    """Renumber a raw crossing table consecutively along components."""
    if not xs:
        raise InapplicableSite("the move would leave no crossings")
    occ: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(xs):
        for p, e in enumerate(x):
            occ.setdefault(e, []).append((i, p))
    succ = {}
    for e, darts in occ.items():
        if len(darts) != 2:
            raise InapplicableSite(f"edge {e} would occur {len(darts)} times")
        heads = [d for d in darts if _is_incoming(d[1], signs[d[0]])]
        if len(heads) != 1:
            raise InapplicableSite(f"edge {e} would not be consistently oriented")
        i, p = heads[0]
        succ[e] = xs[i][(p + 2) % 4]
    mapping: dict[int, int] = {}
    nxt = 1
    for e in sorted(occ):
        cur = e
        while cur not in mapping:
            mapping[cur] = nxt
            nxt += 1
            cur = succ[cur]
    try:
        d = KnotDiagram([tuple(mapping[e] for e in x) for x in xs], signs)
    except PDError as exc:
        raise InapplicableSite(f"the move produced an invalid diagram: {exc}") from None
    return d, mapping


@dataclass
class _Raw:
    xs: list[list[int]]
    signs: list[int]
    known: dict[int, int]  # raw label -> old edge whose color it keeps


def _fresh(diagram: KnotDiagram):
    return itertools.count(diagram.edge_count + 1)


def _remove(diagram: KnotDiagram, drop: set[int], merges: list[tuple[int, int]]) -> _Raw:
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for a, b in merges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    xs, signs = [], []
    for i, (x, s) in enumerate(zip(diagram.crossings, diagram.signs)):
        if i not in drop:
            xs.append([find(e) for e in x])
            signs.append(s)
    counts: dict[int, int] = {}
    for x in xs:
        for e in x:
            counts[e] = counts.get(e, 0) + 1
    if any(counts.get(find(a), 0) == 0 for a, _ in merges):
        raise InapplicableSite("a component would lose all its crossings")
    return _Raw(xs, signs, {e: e for e in counts})


# site enumeration


def _over_at(dart: tuple[int, int]) -> bool:
    return dart[1] % 2 == 1


def _r1_minus_sites(diagram: KnotDiagram) -> list[MoveSite]:
    return [MoveSite("R1-", (f[0][0],)) for f in diagram.faces if len(f) == 1]


def _r2_minus_sites(diagram: KnotDiagram) -> list[MoveSite]:
    out = []
    for face in diagram.faces:
        if len(face) != 2:
            continue
        d1, d2 = face
        if d1[0] == d2[0]:
            continue
        e1, e2 = d1, d2
        o1 = _over_at(e1) and _over_at(diagram.other_end(e1))
        u1 = not _over_at(e1) and not _over_at(diagram.other_end(e1))
        o2 = _over_at(e2) and _over_at(diagram.other_end(e2))
        u2 = not _over_at(e2) and not _over_at(diagram.other_end(e2))
        if (o1 and u2) or (u1 and o2):
            out.append(MoveSite("R2-", tuple(x for d in sorted(face) for x in d)))
    return out


def _triangle(diagram: KnotDiagram, face) -> list[tuple[tuple[int, int], tuple[int, int]]] | None:
    """Inner edges of a triangle face as (start dart, end dart) pairs, or None."""
    if len(face) != 3 or len({d[0] for d in face}) != 3:
        return None
    return [(d, diagram.other_end(d)) for d in face]


def _r3_sites(diagram: KnotDiagram) -> list[MoveSite]:
    out = []
    for face in diagram.faces:
        tri = _triangle(diagram, face)
        if tri is None:
            continue
        mixed = [_over_at(a) != _over_at(b) for a, b in tri]
        if all(mixed):
            continue  # cyclic triangle, not a Reidemeister III configuration
        out.append(MoveSite("R3", tuple(x for d in face for x in d)))
    return out


def _r1_plus_sites(diagram: KnotDiagram) -> list[MoveSite]:
    return [
        MoveSite("R1+", (e,), v) for e in range(1, diagram.edge_count + 1) for v in range(4)
    ]


def _r2_plus_sites(diagram: KnotDiagram) -> list[MoveSite]:
    out = []
    for face in diagram.faces:
        for a, b in itertools.combinations(face, 2):
            if diagram.crossings[a[0]][a[1]] == diagram.crossings[b[0]][b[1]]:
                continue
            for v in (0, 1):
                out.append(MoveSite("R2+", a + b, v))
    return out


_SITE_FINDERS = {
    "R1-": _r1_minus_sites,
    "R1+": _r1_plus_sites,
    "R2-": _r2_minus_sites,
    "R2+": _r2_plus_sites,
    "R3": _r3_sites,
}


def enumerate_sites(diagram: KnotDiagram, kinds=KINDS) -> list[MoveSite]:
    """Candidate sites of the requested kinds.

    R1- sites are monogon faces and R2- sites are bigon faces whose edges run
    over at both ends and under at both ends.  An R1- or R2- site that would
    delete a whole component is still listed; applying it raises
    InapplicableSite because crossingless components have no PD code.
    """
    out = []
    for k in kinds:
        if k not in _SITE_FINDERS:
            raise InvalidParameters(f"unknown move kind {k!r}")
        out.extend(_SITE_FINDERS[k](diagram))
    # a lone kink bounds two monogons, which name the same site
    return list(dict.fromkeys(out))


# applying moves


def _raw_r1_minus(diagram: KnotDiagram, site: MoveSite) -> _Raw:
    (i,) = site.location
    x = diagram.crossings[i]
    loop = [p for p in range(4) if x[p] == x[(p + 1) % 4]]
    if not loop:
        raise InapplicableSite(f"crossing {i} has no monogon")
    p = loop[0]
    u, v = x[(p + 2) % 4], x[(p + 3) % 4]
    if u == v:
        raise InapplicableSite("removing the kink would leave a crossingless component")
    return _remove(diagram, {i}, [(u, v)])


def _raw_r2_minus(diagram: KnotDiagram, site: MoveSite) -> _Raw:
    i1, p1, i2, p2 = site.location
    face = next((f for f in diagram.faces if sorted(f) == sorted([(i1, p1), (i2, p2)])), None)
    if face is None or i1 == i2:
        raise InapplicableSite("not a bigon face")
    merges = []
    overs = 0
    for d in face:
        a, b = d, diagram.other_end(d)
        if _over_at(a) != _over_at(b):
            raise InapplicableSite("bigon is alternating")
        overs += _over_at(a)
        ca = diagram.crossings[a[0]][(a[1] + 2) % 4]
        cb = diagram.crossings[b[0]][(b[1] + 2) % 4]
        merges.append((ca, cb))
    if overs != 1:
        raise InapplicableSite("bigon needs one over edge and one under edge")
    return _remove(diagram, {i1, i2}, merges)


def _raw_r3(diagram: KnotDiagram, site: MoveSite) -> _Raw:
    loc = site.location
    darts = [(loc[k], loc[k + 1]) for k in range(0, 6, 2)]
    face = next((f for f in diagram.faces if sorted(f) == sorted(darts)), None)
    tri = _triangle(diagram, face) if face is not None else None
    if tri is None or all(_over_at(a) != _over_at(b) for a, b in tri):
        raise InapplicableSite("not a Reidemeister III triangle")
    old = diagram.crossings
    xs = [list(x) for x in old]
    inner = set()
    for (X, p), (Y, q) in tri:
        e = old[X][p]
        inner.add(e)
        in_edge = old[X][(p + 2) % 4]
        out_edge = old[Y][(q + 2) % 4]
        xs[X][(p + 2) % 4] = e
        xs[X][p] = out_edge
        xs[Y][q] = in_edge
        xs[Y][(q + 2) % 4] = e
    known = {e: e for e in range(1, diagram.edge_count + 1) if e not in inner}
    return _Raw(xs, list(diagram.signs), known)


# kink templates: (labels in PD order, sign) given incoming e1, loop l, outgoing e2
_KINKS = (
    (("e1", "l", "l", "e2"), -1),
    (("e1", "e2", "l", "l"), 1),
    (("l", "e1", "e2", "l"), -1),
    (("l", "l", "e2", "e1"), 1),
)


def _raw_r1_plus(diagram: KnotDiagram, site: MoveSite) -> _Raw:
    (e,) = site.location
    if not 1 <= e <= diagram.edge_count or site.variant not in range(4):
        raise InapplicableSite(f"no edge {e} or bad variant {site.variant}")
    fresh = _fresh(diagram)
    e1, l, e2 = next(fresh), next(fresh), next(fresh)
    xs = [list(x) for x in diagram.crossings]
    ti, tp = diagram.tail[e]
    hi, hp = diagram.head[e]
    xs[ti][tp] = e1
    xs[hi][hp] = e2
    names = {"e1": e1, "l": l, "e2": e2}
    template, sign = _KINKS[site.variant]
    xs.append([names[k] for k in template])
    known = {x: x for x in range(1, diagram.edge_count + 1) if x != e}
    known[e1] = e
    known[e2] = e
    return _Raw(xs, list(diagram.signs) + [sign], known)


_CCW = ("E", "N", "W", "S")


def _raw_r2_plus(diagram: KnotDiagram, site: MoveSite) -> _Raw:
    i1, p1, i2, p2 = site.location
    d1, d2 = (i1, p1), (i2, p2)
    if not any(d1 in f and d2 in f for f in diagram.faces) or site.variant not in (0, 1):
        raise InapplicableSite("darts do not share a face")
    e, fwd1 = diagram.side(d1)
    f, fwd2 = diagram.side(d2)
    if e == f:
        raise InapplicableSite("both sides belong to the same edge")
    fresh = _fresh(diagram)
    e1, em, e2, f1, fm, f2 = (next(fresh) for _ in range(6))
    # f runs along y = 0 with the face above it; e runs along y = 2 with the
    # face below it and pushes a finger down across f at x = -1 (L) and x = 1 (R)
    e_left = fwd1  # e heads towards -x when the dart follows its orientation
    f_right = fwd2
    L = {"N": e2 if e_left else e1, "S": em, "W": f1 if f_right else f2, "E": fm}
    R = {"N": e1 if e_left else e2, "S": em, "W": fm, "E": f2 if f_right else f1}
    e_in = {"L": "S" if e_left else "N", "R": "N" if e_left else "S"}
    f_in = {"L": "W" if f_right else "E", "R": "W" if f_right else "E"}
    e_over = site.variant == 0
    new, signs = [], []
    for name, half in (("L", L), ("R", R)):
        under_in = f_in[name] if e_over else e_in[name]
        over_in = e_in[name] if e_over else f_in[name]
        k = _CCW.index(under_in)
        order = _CCW[k:] + _CCW[:k]
        new.append([half[c] for c in order])
        signs.append(1 if order.index(over_in) == 3 else -1)
    xs = [list(x) for x in diagram.crossings]
    for edge, first, last in ((e, e1, e2), (f, f1, f2)):
        ti, tp = diagram.tail[edge]
        hi, hp = diagram.head[edge]
        xs[ti][tp] = first
        xs[hi][hp] = last
    known = {x: x for x in range(1, diagram.edge_count + 1) if x not in (e, f)}
    known.update({e1: e, e2: e, f1: f, f2: f})
    return _Raw(xs + new, list(diagram.signs) + signs, known)


_APPLY = {
    "R1-": _raw_r1_minus,
    "R1+": _raw_r1_plus,
    "R2-": _raw_r2_minus,
    "R2+": _raw_r2_plus,
    "R3": _raw_r3,
}


def _raw(diagram: KnotDiagram, site: MoveSite) -> _Raw:
    try:
        fn = _APPLY[site.kind]
    except KeyError:
        raise InapplicableSite(f"unknown move kind {site.kind!r}") from None
    try:
        return fn(diagram, site)
    except (IndexError, ValueError, KeyError) as exc:
        if isinstance(exc, InapplicableSite):
            raise
        raise InapplicableSite(f"{site} does not fit this diagram") from None


def apply_move(diagram: KnotDiagram, site: MoveSite) -> KnotDiagram:
    raw = _raw(diagram, site)
    return _finish(raw.xs, raw.signs)[0]


def _solve_colors(raw: _Raw, colors: dict[int, int], params: ColoringParams) -> dict[int, int]:
    p, m = params.n, params.m
    m_inv = pow(m, -1, p)
    k_inv = pow(1 - m, -1, p)
    roles = []
    for (a, b, c, d), s in zip(raw.xs, raw.signs):
        src, dst = (a, c) if s > 0 else (c, a)
        roles.append((src, b, d, dst))
    changed = True
    while changed:
        changed = False
        for src, b, d, dst in roles:
            if b in colors and d not in colors:
                colors[d] = colors[b]
                changed = True
            elif d in colors and b not in colors:
                colors[b] = colors[d]
                changed = True
            over = colors.get(b)
            s_col, t_col = colors.get(src), colors.get(dst)
            if over is not None and s_col is not None and t_col is None:
                colors[dst] = (m * s_col + (1 - m) * over) % p
                changed = True
            elif over is not None and t_col is not None and s_col is None:
                colors[src] = (t_col - (1 - m) * over) * m_inv % p
                changed = True
            elif over is None and s_col is not None and t_col is not None:
                colors[b] = (t_col - m * s_col) * k_inv % p
                changed = True
    for src, b, d, dst in roles:
        if any(x not in colors for x in (src, b, d, dst)):
            raise InapplicableSite("colors inside the move are not determined")
        if colors[b] != colors[d] or (m * colors[src] + (1 - m) * colors[b] - colors[dst]) % p:
            raise InapplicableSite("coloring is inconsistent after the move")
    return colors


def apply_colored(
    diagram: KnotDiagram, coloring: Coloring, site: MoveSite
) -> tuple[KnotDiagram, Coloring]:
    """Apply a move and carry the coloring along.

    Colors outside the neighbourhood stay; new or changed arcs get the unique
    colors the crossing conditions force.
    """
    params = coloring.params
    if params.n == 0:
        raise InvalidParameters("transport is implemented for colorings mod p")
    raw = _raw(diagram, site)
    vals = coloring.values
    colors = {new: vals[diagram.arc_at(old)] for new, old in raw.known.items()}
    colors = _solve_colors(raw, colors, params)
    new_diagram, mapping = _finish(raw.xs, raw.signs)
    arc_colors = [0] * new_diagram.arc_count
    for raw_label, label in mapping.items():
        arc_colors[new_diagram.arc_at(label)] = colors[raw_label]
    return new_diagram, Coloring(params, tuple(arc_colors))


def transport(diagram: KnotDiagram, coloring: Coloring, site: MoveSite) -> Coloring:
    return apply_colored(diagram, coloring, site)[1]


def replay(diagram: KnotDiagram, coloring: Coloring | None, trace) -> tuple[KnotDiagram, Coloring | None]:
    for site in trace:
        if not isinstance(site, MoveSite):
            site = MoveSite.from_json(site)
        if coloring is None:
            diagram = apply_move(diagram, site)
        else:
            diagram, coloring = apply_colored(diagram, coloring, site)
    return diagram, coloring


# canonical forms


def _labelings(diagram: KnotDiagram):
    """Traversal relabelings, one per choice of starting edge in each piece."""
    succ = diagram.successor
    comps = diagram.components
    comp_of = {e: k for k, c in enumerate(comps) for e in c}
    # strands meeting at each crossing, to walk from one component to the next
    for start in range(1, diagram.edge_count + 1):
        mapping: dict[int, int] = {}
        queue = [start]
        nxt = 1
        qi = 0
        while qi < len(queue):
            e0 = queue[qi]
            qi += 1
            if e0 in mapping:
                continue
            cur = e0
            while cur not in mapping:
                mapping[cur] = nxt
                nxt += 1
                cur = succ[cur]
            # enqueue the incoming edge of every other strand met, in label order
            walk = sorted((v, e) for e, v in mapping.items() if comp_of[e] == comp_of[e0])
            for _, e in walk:
                i, p = diagram.head[e]
                x = diagram.crossings[i]
                for q in (p + 1, p + 3):
                    dart = (i, q % 4)
                    if diagram.is_incoming(dart) and x[q % 4] not in mapping:
                        queue.append(x[q % 4])
        yield start, mapping


def canonical_form(diagram: KnotDiagram) -> tuple:
    """Hashable key equal for diagrams that differ only by PD relabeling.

    Knots are encoded by their passage sequence (crossing order of first
    visit, position, sign) from the best starting edge.  Other diagrams are
    relabeled by traversal from every starting edge, piece by piece, and the
    smallest serializations are kept.  Mirror images and reversed
    orientations stay distinct.
    """
    if len(diagram.components) == 1:
        return _knot_key(diagram, None, None)
    return _canonical(diagram, None)


def _knot_key(diagram: KnotDiagram, edge_colors, p) -> tuple:
    """Smallest passage-sequence key over rotations of the single component.

    Only rotations starting at a passage with the smallest (position, sign)
    signature are tried, which is a relabeling-invariant choice.  With
    ``p`` the colors are normalised by the affine map sending the first
    edge's color to 0 and the next different color to 1.
    """
    comp = diagram.components[0]
    n = len(comp)
    signs = diagram.signs
    heads = [diagram.head[e] for e in comp]
    sigs = [pp * 2 + (signs[i] > 0) for i, pp in heads]
    low = min(sigs)
    cols = [edge_colors[e] for e in comp] if edge_colors is not None else None
    best = None
    for k in range(n):
        if sigs[k] != low:
            continue
        first: dict[int, int] = {}
        seq = []
        for j in range(k, k + n):
            i, pp = heads[j % n]
            idx = first.setdefault(i, len(first))
            seq.append(idx * 8 + sigs[j % n])
        if cols is not None:
            rot = cols[k:] + cols[:k]
            if p:
                c0 = rot[0]
                c1 = next((c for c in rot if c != c0), None)
                if c1 is not None:
                    lam = pow(c1 - c0, -1, p)
                    rot = [(c - c0) * lam % p for c in rot]
                else:
                    rot = [0] * n
            seq.extend(rot)
        key = tuple(seq)
        if best is None or key < best:
            best = key
    return (n, best)


def _canonical(diagram: KnotDiagram, edge_colors) -> tuple:
    best: dict[frozenset, tuple] = {}
    for _, mapping in _labelings(diagram):
        piece = frozenset(mapping)
        sub = _keyed_piece(diagram, mapping, piece, edge_colors)
        if piece not in best or sub < best[piece]:
            best[piece] = sub
    return tuple(sorted(best.values()))


def _keyed_piece(diagram, mapping, piece, edge_colors):
    rows = []
    for x, s in zip(diagram.crossings, diagram.signs):
        if x[0] in piece:
            rows.append((tuple(mapping[e] for e in x), s))
    rows.sort()
    key = (len(rows), tuple(rows))
    if edge_colors is not None:
        inv = sorted((v, e) for e, v in mapping.items())
        key = key + (tuple(edge_colors[e] for _, e in inv),)
    return key


def colored_canonical_form(diagram: KnotDiagram, coloring: Coloring, up_to_affine: bool = True) -> tuple:
    """Canonical key of a colored diagram.

    With ``up_to_affine`` (knots only) colorings that differ by an affine map
    of the colors share a key.
    """
    vals = coloring.values
    edge_colors = {e: vals[diagram.arc_at(e)] for e in range(1, diagram.edge_count + 1)}
    if len(diagram.components) == 1:
        return _knot_key(diagram, edge_colors, coloring.params.n if up_to_affine else None)
    return _canonical(diagram, edge_colors)


# search


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 12
    max_crossings: int = 14
    max_states: int = 200_000
    time_limit: float = 240.0

    def __post_init__(self):
        if min(self.max_depth, self.max_crossings, self.max_states) <= 0 or self.time_limit <= 0:
            raise InvalidParameters("budget fields must be positive")

    @classmethod
    def parse(cls, spec: str | None) -> SearchBudget:
        """``"depth=12,crossings=14,states=200000,time=240"``; missing keys keep defaults."""
        if not spec:
            return cls()
        names = {"depth": "max_depth", "crossings": "max_crossings", "states": "max_states", "time": "time_limit"}
        kwargs = {}
        for part in spec.split(","):
            if not part.strip():
                continue
            k, _, v = part.partition("=")
            k = k.strip()
            if k not in names or not v:
                raise InvalidParameters(f"bad budget entry {part!r}")
            kwargs[names[k]] = float(v) if k == "time" else int(v)
        return cls(**kwargs)


@dataclass
class SearchResult:
    best_diagram: KnotDiagram
    best_coloring: Coloring
    colors_used: int
    move_trace: list[MoveSite]
    states: int
    exhausted: bool
    short_circuited: bool = False
    reached_target: bool = False
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "colors_used": self.colors_used,
            "crossings": self.best_diagram.crossing_count,
            "pd": self.best_diagram.to_pd_string(),
            "coloring": self.best_coloring.to_json()["arcs"],
            "move_trace": [s.to_json() for s in self.move_trace],
            "states": self.states,
            "budget_exhausted": self.exhausted,
            "short_circuited": self.short_circuited,
            "reached_target": self.reached_target,
        }


def _multiplicities(coloring: Coloring) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for v in coloring.values:
        counts[v] = counts.get(v, 0) + 1
    return tuple(sorted(counts.values()))


def _priority(diagram: KnotDiagram, coloring: Coloring) -> tuple:
    """Fewer colors first, then a rarer least-used color, then smaller diagrams.

    A color held by a single arc is one move away from disappearing, so the
    size of the rarest color class steers the search better than the full
    multiplicity profile.
    """
    return (coloring.color_count, _multiplicities(coloring)[0], diagram.crossing_count)


def minimize_colors(
    diagram: KnotDiagram,
    coloring: Coloring,
    budget: SearchBudget | None = None,
    target: int | None = None,
    kinds=SEARCH_KINDS,
) -> SearchResult:
    """Best-first search over colored diagrams for fewer distinct colors.

    States are ordered by (colors used, arcs carrying the rarest color,
    crossings) and deduplicated by their colored canonical form up to affine
    maps.  The search stops early once ``target`` colors are reached; when
    ``target`` is None it defaults to the combined lower bound.
    """
    from .bounds import combined_lower_bound

    if coloring.is_trivial:
        raise InvalidParameters("minimize_colors needs a nontrivial coloring")
    budget = budget or SearchBudget()
    t0 = time.monotonic()
    p, m = coloring.params.n, coloring.params.m
    if target is None:
        try:
            target = combined_lower_bound(diagram, p, m).best_lower
        except InvalidParameters:
            target = 3
    start_colors = coloring.color_count
    if start_colors <= target:
        return SearchResult(diagram, coloring, start_colors, [], 1, False, True, True)

    tie = itertools.count()
    seen = {colored_canonical_form(diagram, coloring)}
    # each entry: priority, tiebreak, depth, diagram, coloring, trace
    heap = [(_priority(diagram, coloring), next(tie), 0, diagram, coloring, ())]
    best = (start_colors, diagram.crossing_count, diagram, coloring, ())
    exhausted = False
    while heap:
        if len(seen) >= budget.max_states or time.monotonic() - t0 > budget.time_limit:
            exhausted = True
            break
        _, _, depth, d, c, trace = heapq.heappop(heap)
        if depth >= budget.max_depth:
            continue
        for site in enumerate_sites(d, kinds):
            if site.kind in ("R1+", "R2+") and d.crossing_count + (1 if site.kind == "R1+" else 2) > budget.max_crossings:
                continue
            try:
                nd, nc = apply_colored(d, c, site)
            except InapplicableSite:
                continue
            if nc.is_trivial:
                continue
            key = colored_canonical_form(nd, nc)
            if key in seen:
                continue
            seen.add(key)
            new_trace = trace + (site,)
            k = nc.color_count
            if (k, nd.crossing_count) < best[:2]:
                best = (k, nd.crossing_count, nd, nc, new_trace)
                if k <= target:
                    return SearchResult(
                        nd, nc, k, list(new_trace), len(seen), False, False, True,
                        time.monotonic() - t0,
                    )
            heapq.heappush(heap, (_priority(nd, nc), next(tie), depth + 1, nd, nc, new_trace))
    k, _, bd, bc, btrace = best
    return SearchResult(
        bd, bc, k, list(btrace), len(seen), exhausted, False, k <= target, time.monotonic() - t0
    )
