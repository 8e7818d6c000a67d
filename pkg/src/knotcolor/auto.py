"""The affine group ``Aff(p) = {x -> lam x + mu}`` acting on (p, m)-colorings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .coloring import Coloring, ColoringParams, enumerate_colorings
from .diagram import KnotDiagram
from .errors import InvalidParameters
from .linalg import _require_prime


@dataclass(frozen=True)
class AffineMap:
    lam: int
    mu: int
    p: int

    def __post_init__(self):
        lam, mu = self.lam % self.p, self.mu % self.p
        if lam == 0:
            raise InvalidParameters("lambda must be a unit mod p")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    def __call__(self, x: int) -> int:
        return (self.lam * x + self.mu) % self.p

    def compose(self, other: AffineMap) -> AffineMap:
        """``self o other``."""
        return AffineMap(self.lam * other.lam, self.lam * other.mu + self.mu, self.p)

    def inverse(self) -> AffineMap:
        inv = pow(self.lam, -1, self.p)
        return AffineMap(inv, -inv * self.mu, self.p)

    @property
    def is_identity(self) -> bool:
        return self.lam == 1 and self.mu == 0

    @classmethod
    def identity(cls, p: int) -> AffineMap:
        return cls(1, 0, p)


def all_maps(p: int) -> Iterator[AffineMap]:
    _require_prime(p)
    for lam in range(1, p):
        for mu in range(p):
            yield AffineMap(lam, mu, p)


def group_order(p: int) -> int:
    return p * (p - 1)


def apply(f: AffineMap, coloring: Coloring) -> Coloring:
    if coloring.params.n != f.p:
        raise InvalidParameters(f"map is mod {f.p} but the coloring is mod {coloring.params.n}")
    return Coloring(coloring.params, tuple(f(v) for v in coloring.values))


def orbit(coloring: Coloring) -> set[Coloring]:
    p = coloring.params.n
    return {apply(f, coloring) for f in all_maps(p)}


def stabilizer(coloring: Coloring) -> list[AffineMap]:
    return [f for f in all_maps(coloring.params.n) if apply(f, coloring) == coloring]


def orbit_classes(colorings: Iterable[Coloring], nontrivial_only: bool = True) -> list[list[Coloring]]:
    """Partition colorings into orbits, in order of first appearance."""
    pool = [c for c in colorings if not (nontrivial_only and c.is_trivial)]
    index = {c: i for i, c in enumerate(pool)}
    assigned: set[Coloring] = set()
    classes = []
    for c in pool:
        if c in assigned:
            continue
        orb = orbit(c)
        members = sorted((x for x in orb if x in index), key=index.__getitem__)
        assigned.update(orb)
        classes.append(members)
    return classes


@dataclass(frozen=True)
class OrbitReport:
    p: int
    m: int
    class_count: int
    class_sizes: tuple[int, ...]
    colors_used_per_class: tuple[int, ...]
    free: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "class_count": self.class_count,
            "class_sizes": list(self.class_sizes),
            "colors_used_per_class": list(self.colors_used_per_class),
            "free": self.free,
            "group_order": group_order(self.p),
        }


def orbit_report(diagram: KnotDiagram, p: int, m: int, budget: int | None = None) -> OrbitReport:
    params = ColoringParams(p, m)
    kwargs = {} if budget is None else {"budget": budget}
    classes = orbit_classes(enumerate_colorings(diagram, params, **kwargs))
    sizes = tuple(len(c) for c in classes)
    colors = tuple(c[0].color_count for c in classes)
    # orbit-stabilizer: every stabilizer is trivial iff every orbit has full size
    free = all(s == group_order(p) for s in sizes)
    return OrbitReport(p, m, len(classes), sizes, colors, free)


def verify_free_action(diagram: KnotDiagram, p: int, m: int, exhaustive: bool = False) -> bool:
    """No non-identity map fixes a nontrivial coloring.

    By default this uses orbit sizes (orbit-stabilizer).  With ``exhaustive``
    every map is applied to every coloring, which is quadratic in ``p^2``.
    """
    if not exhaustive:
        return orbit_report(diagram, p, m).free
    params = ColoringParams(p, m)
    maps = [f for f in all_maps(p) if not f.is_identity]
    for c in enumerate_colorings(diagram, params):
        if c.is_trivial:
            continue
        if any(apply(f, c) == c for f in maps):
            return False
    return True


def trivial_stabilizer_order(p: int) -> int:
    """Maps fixing a constant coloring ``c``: ``lam c + mu = c`` has ``p - 1`` solutions."""
    return p - 1
