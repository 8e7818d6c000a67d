"""Alexander matrix, reduced Alexander polynomial and m-determinants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diagram import KnotDiagram
from .errors import DegenerateDiagram, InvalidParameters
from .laurent import ONE, LaurentPoly, T
from .linalg import det_int, det_poly, evaluate, minor

_ONE_MINUS_T = ONE - T


@dataclass(frozen=True)
class AlexanderResult:
    alexander: LaurentPoly
    reduced: LaurentPoly
    by_minor_consistent: bool
    vanishes: bool

    def to_json(self) -> dict:
        return {
            "alexander": self.alexander.to_json(),
            "reduced": self.reduced.to_json(),
            "by_minor_consistent": self.by_minor_consistent,
            "vanishes": self.vanishes,
        }


def alexander_matrix(diagram: KnotDiagram) -> list[list[LaurentPoly]]:
    """Crossings x arcs matrix with ``T``, ``1 - T`` and ``-1`` at source, over and target."""
    n = diagram.crossing_count
    if diagram.arc_count != n:
        raise DegenerateDiagram(
            f"{diagram.arc_count} arcs for {n} crossings; every component must pass under"
        )
    zero = LaurentPoly()
    M = [[zero] * n for _ in range(n)]
    for row, (src, over, dst) in zip(M, diagram.roles):
        row[src] = row[src] + T
        row[over] = row[over] + _ONE_MINUS_T
        row[dst] = row[dst] - 1
    return M


@lru_cache(maxsize=512)
def _alexander(diagram: KnotDiagram, check_minors: bool) -> AlexanderResult:
    M = alexander_matrix(diagram)
    n = len(M)
    poly = det_poly(minor(M, n - 1, n - 1))
    consistent = True
    if check_minors:
        for i in range(n):
            for j in range(n):
                if (i, j) != (n - 1, n - 1) and not det_poly(minor(M, i, j)).equal_mod_units(poly):
                    consistent = False
                    break
            if not consistent:
                break
    return AlexanderResult(poly, poly.reduced(), consistent, poly.is_zero())


def alexander_polynomial(diagram: KnotDiagram, check_minors: bool = True) -> AlexanderResult:
    """First-minor determinant of the Alexander matrix (last row and column removed).

    With ``check_minors`` every other first minor is computed as well and
    compared modulo units; disagreement flags an inconsistent diagram.
    """
    return _alexander(diagram, check_minors)


def reduced_alexander(diagram: KnotDiagram) -> LaurentPoly:
    return _alexander(diagram, False).reduced


def m_determinant(diagram: KnotDiagram, m: int, with_flag: bool = False):
    """``Δ⁰(m)``.  Returns 0 for a vanishing polynomial; ``with_flag`` also returns that flag."""
    res = _alexander(diagram, False)
    value = res.reduced(m)
    return (value, res.vanishes) if with_flag else value


def minor_determinant_at(diagram: KnotDiagram, m: int, row: int = -1, col: int = -1) -> int:
    """Determinant of an integer first minor of the Alexander matrix evaluated at ``T = m``."""
    M = evaluate(alexander_matrix(diagram), m)
    n = len(M)
    return det_int(minor(M, row % n, col % n))


def integer_roots(diagram: KnotDiagram, lo: int = -100, hi: int = 100) -> list[int]:
    if len(diagram.components) != 1:
        raise InvalidParameters("integer_roots expects a knot (one component)")
    poly = reduced_alexander(diagram)
    return [m for m in range(lo, hi + 1) if poly(m) == 0]
