"""Lower bounds and obstructions for the minimum number of colors."""

from __future__ import annotations

from dataclasses import dataclass, field

from .alexander import m_determinant
from .coloring import Coloring
from .diagram import KnotDiagram
from .errors import InvalidM, InvalidParameters, MOutOfRange
from .linalg import _require_prime


def _floor_log(base: int, x: int) -> int:
    """Largest ``e`` with ``base**e <= x``, in exact integer arithmetic."""
    e, power = 0, base
    while power <= x:
        e += 1
        power *= base
    return e


def _M(m: int) -> int:
    return max(abs(m), abs(m - 1))


@dataclass(frozen=True)
class LogBound:
    p: int
    m: int
    M: int
    bound: int
    alternate_m: int
    alternate_M: int
    alternate_bound: int | None

    @property
    def best(self) -> int:
        if self.alternate_bound is None:
            return self.bound
        return max(self.bound, self.alternate_bound)

    @property
    def best_is_alternate(self) -> bool:
        return self.alternate_bound is not None and self.alternate_bound > self.bound


def log_lower_bound(p: int, m: int) -> LogBound:
    """``2 + floor(log_M p)`` with ``M = max(|m|, |m - 1|)``.

    The bound depends on the integer chosen for ``m``, so it is also computed
    for the neighbouring representative ``m - p`` (or ``m + p`` when ``m <= 0``).
    """
    M = _M(m)
    if M <= 1:
        raise InvalidM(f"m = {m} gives M = {M}; the bound needs M >= 2")
    alt = m - p if m > 0 else m + p
    alt_M = _M(alt)
    alt_bound = 2 + _floor_log(alt_M, p) if alt_M >= 2 else None
    return LogBound(p, m, M, 2 + _floor_log(M, p), alt, alt_M, alt_bound)


@dataclass(frozen=True)
class NeedsFour:
    needs_four: bool
    conditions: dict[str, bool]

    @property
    def blocking_conditions(self) -> list[str]:
        return [k for k, v in self.conditions.items() if v]

    def __bool__(self):
        return self.needs_four


def needs_four(p: int, m: int) -> NeedsFour:
    """Whether three colors are impossible: none of ``m = 2``, ``m^2 - m + 1 = 0``,
    ``2m - 1 = 0`` holds modulo ``p``."""
    _require_prime(p)
    conds = {
        "m == 2": (m - 2) % p == 0,
        "m^2 - m + 1 == 0": (m * m - m + 1) % p == 0,
        "2m - 1 == 0": (2 * m - 1) % p == 0,
    }
    return NeedsFour(not any(conds.values()), conds)


def minbyhand_check(p: int, m: int) -> bool:
    """``2 < m < 2m - 1 < m^2 - m + 1 < p`` over the integers."""
    return m > 2 and p > m * m - m + 1


def sharper_than_log(p: int, m: int) -> bool:
    return minbyhand_check(p, m) and m * m > p


@dataclass(frozen=True)
class ObstructionSet:
    p: int
    m: int
    S: tuple[int, ...]
    case: int

    @property
    def case_description(self) -> str:
        return "1 < m < p/2" if self.case == 1 else "(p+1)/2 <= m < p"


def obstruction_set(p: int, m: int) -> ObstructionSet:
    """Colors that cannot carry a nontrivial coloring on their own.

    ``m`` is first reduced modulo ``p``.  Case 1 (``1 < m < p/2``): all
    ``0 <= a`` with ``a m < p``.  Case 2 (``(p+1)/2 <= m < p``): all ``0 <= a``
    with ``a (p + 1 - m) < p``.
    """
    _require_prime(p)
    r = m % p
    if 1 < r and 2 * r < p:
        return ObstructionSet(p, r, tuple(a for a in range(p) if a * r < p), 1)
    if 2 * r >= p + 1 and r < p:
        step = p + 1 - r
        return ObstructionSet(p, r, tuple(a for a in range(p) if a * step < p), 2)
    raise MOutOfRange(f"m = {m} (= {r} mod {p}) is outside both ranges of the obstruction")


def affine_image(S, lam: int, mu: int, p: int) -> frozenset[int]:
    return frozenset((lam * s + mu) % p for s in S)


def obstructed_color_sets(p: int, m: int) -> list[frozenset[int]]:
    """Distinct images ``lam * S + mu`` over the affine group, sorted."""
    S = obstruction_set(p, m).S
    images = {affine_image(S, lam, mu, p) for lam in range(1, p) for mu in range(p)}
    return sorted(images, key=lambda s: (len(s), sorted(s)))


def is_obstructed(colors, p: int, m: int) -> bool:
    cs = frozenset(c % p for c in colors)
    return any(cs <= img for img in obstructed_color_sets(p, m))


@dataclass(frozen=True)
class SufficientSetReport:
    colors_used: tuple[int, ...]
    under_colors: tuple[int, ...]
    removable: tuple[int, ...]


def sufficient_set_reduction(diagram: KnotDiagram, coloring: Coloring) -> SufficientSetReport:
    """Colors never met on an under-arc of a polychromatic crossing.

    Each such color could be dropped from the palette in principle.
    """
    if coloring.is_trivial:
        raise InvalidParameters("a nontrivial coloring is required")
    _, vanishes = m_determinant(diagram, coloring.params.m, with_flag=True)
    if vanishes:
        raise InvalidParameters("the Alexander polynomial vanishes; not supported")
    vals = coloring.values
    under = set()
    for src, over, dst in diagram.roles:
        if vals[src] != vals[over]:
            under.add(vals[src])
            under.add(vals[dst])
    used = sorted(set(vals))
    return SufficientSetReport(tuple(used), tuple(sorted(under)), tuple(c for c in used if c not in under))


@dataclass(frozen=True)
class BoundReport:
    p: int
    m: int
    min3: int
    needs_four: bool
    needs_four_conditions: dict[str, bool]
    log_bound: int | None
    log_bound_alternate: int | None
    log_applicable: bool
    M_used: int
    m_determinant: int
    best_lower: int
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "min3": self.min3,
            "needs_four": self.needs_four,
            "needs_four_conditions": self.needs_four_conditions,
            "log_bound": self.log_bound,
            "log_bound_alternate": self.log_bound_alternate,
            "log_applicable": self.log_applicable,
            "M_used": self.M_used,
            "m_determinant": self.m_determinant,
            "best_lower": self.best_lower,
            "notes": list(self.notes),
        }


def combined_lower_bound(
    diagram: KnotDiagram, p: int, m: int, all_representatives: bool = False
) -> BoundReport:
    """max(3, 4 when three colors are impossible, the logarithmic bound when it applies).

    The logarithmic bound uses the literal ``m`` unless ``all_representatives``
    is set.  It is skipped when ``m = 2 mod p`` and ``Δ⁰(m) = 0``.
    """
    _require_prime(p)
    det, vanishes = m_determinant(diagram, m, with_flag=True)
    if vanishes:
        raise InvalidParameters("the Alexander polynomial vanishes; bounds are not supported")
    if det % p:
        raise InvalidParameters(f"{p} does not divide the {m}-determinant {det}: no nontrivial colorings")
    notes = []
    nf = needs_four(p, m)
    lb = log_lower_bound(p, m)
    applicable = not ((m - 2) % p == 0 and det == 0)
    if not applicable:
        notes.append("logarithmic bound not applicable: m = 2 mod p and the m-determinant is 0")
    best = 3
    if nf.needs_four:
        best = 4
    log_value = None
    if applicable:
        log_value = lb.best if all_representatives else lb.bound
        best = max(best, log_value)
    M_used = lb.alternate_M if (all_representatives and lb.best_is_alternate) else lb.M
    return BoundReport(
        p=p,
        m=m,
        min3=3,
        needs_four=nf.needs_four,
        needs_four_conditions=nf.conditions,
        log_bound=lb.bound if applicable else None,
        log_bound_alternate=lb.alternate_bound if applicable else None,
        log_applicable=applicable,
        M_used=M_used,
        m_determinant=det,
        best_lower=best,
        notes=notes,
    )
