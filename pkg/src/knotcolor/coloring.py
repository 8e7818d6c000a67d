"""(n, m)-colorings of diagrams by the linear Alexander quandle ``a * b = m a + (1 - m) b``."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Iterator, Sequence

from .diagram import KnotDiagram
from .errors import DegenerateDiagram, InvalidParameters, NotPrime, TooManySolutions
from .linalg import is_prime, kernel_basis_int, nullspace_mod_p

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class ColoringParams:
    n: int
    m: int

    def __post_init__(self):
        n, m = self.n, self.m
        if n < 0:
            raise InvalidParameters(f"modulus must be nonnegative, got {n}")
        if n == 0:
            if m in (0, 1):
                raise InvalidParameters(f"m = {m} makes the integral coloring rule degenerate")
            return
        if gcd(n, m) != 1 or gcd(n, m - 1) != 1:
            raise InvalidParameters(
                f"(n, m) = ({n}, {m}) needs gcd(n, m) = gcd(n, m - 1) = 1"
            )
        if not is_prime(n):
            # rings Z_n with n composite would need linear algebra over non-fields
            raise NotPrime(f"modulus {n} is not prime; composite moduli are not supported")

    def op(self, a: int, b: int) -> int:
        """``a * b``: the color that the target arc receives."""
        c = self.m * a + (1 - self.m) * b
        return c % self.n if self.n else c


@dataclass(frozen=True)
class Coloring:
    """Colors indexed by ArcId: ``values[k]`` is the color of arc ``k``."""

    params: ColoringParams
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if self.params.n:
            vals = tuple(v % self.params.n for v in vals)
        object.__setattr__(self, "values", vals)

    @property
    def is_trivial(self) -> bool:
        return len(set(self.values)) <= 1

    @property
    def colors(self) -> frozenset[int]:
        return frozenset(self.values)

    @property
    def color_count(self) -> int:
        return len(set(self.values))

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.values))

    def to_json(self) -> dict:
        return {
            "n": self.params.n,
            "m": self.params.m,
            "arcs": {str(k): v for k, v in enumerate(self.values)},
        }


@dataclass(frozen=True)
class ColoringCensus:
    total: int
    trivial: int
    nontrivial: int
    dimension: int
    color_usage_histogram: dict[int, int] | None = field(default=None, compare=False)

    @property
    def min_nontrivial_colors(self) -> int | None:
        if not self.color_usage_histogram:
            return None
        used = [k for k in self.color_usage_histogram if k > 1]
        return min(used) if used else None

    def to_json(self) -> dict:
        hist = self.color_usage_histogram
        return {
            "total": self.total,
            "trivial": self.trivial,
            "nontrivial": self.nontrivial,
            "dimension": self.dimension,
            "color_usage_histogram": None if hist is None else {str(k): v for k, v in sorted(hist.items())},
        }


@dataclass(frozen=True)
class Validation:
    ok: bool
    crossing: int | None = None

    def __bool__(self):
        return self.ok


def coloring_matrix_mod(diagram: KnotDiagram, params: ColoringParams) -> list[list[int]]:
    """Integer matrix, one row per crossing: ``m``, ``1 - m`` and ``-1`` at source, over and target.

    Entries are left unreduced; callers reduce modulo ``n`` as needed.
    """
    n = diagram.crossing_count
    if diagram.arc_count != n:
        raise DegenerateDiagram(
            f"{diagram.arc_count} arcs for {n} crossings; every component must pass under"
        )
    m = params.m
    M = [[0] * n for _ in range(n)]
    for row, (src, over, dst) in zip(M, diagram.roles):
        row[src] += m
        row[over] += 1 - m
        row[dst] -= 1
    return M


def _require_modular(params: ColoringParams) -> int:
    if params.n == 0:
        raise InvalidParameters("enumeration needs a prime modulus, not n = 0")
    return params.n


def solution_basis(diagram: KnotDiagram, params: ColoringParams) -> list[list[int]]:
    p = _require_modular(params)
    M = coloring_matrix_mod(diagram, params)
    return nullspace_mod_p(M, p, diagram.arc_count)


def enumerate_colorings(
    diagram: KnotDiagram, params: ColoringParams, budget: int = DEFAULT_BUDGET
) -> Iterator[Coloring]:
    """Every coloring, in lexicographic order of nullspace coordinates."""
    p = _require_modular(params)
    basis = solution_basis(diagram, params)
    d = len(basis)
    if p**d > budget:
        raise TooManySolutions(f"{p}^{d} colorings exceed the budget of {budget}")
    k = diagram.arc_count

    def gen():
        for coeffs in product(range(p), repeat=d):
            vals = [0] * k
            for c, v in zip(coeffs, basis):
                if c:
                    for i, x in enumerate(v):
                        vals[i] += c * x
            yield Coloring(params, tuple(vals))

    return gen()


def nontrivial_colorings(diagram, params, budget: int = DEFAULT_BUDGET) -> Iterator[Coloring]:
    return (c for c in enumerate_colorings(diagram, params, budget) if not c.is_trivial)


def count_colorings(
    diagram: KnotDiagram, params: ColoringParams, budget: int = DEFAULT_BUDGET
) -> ColoringCensus:
    p = _require_modular(params)
    d = len(solution_basis(diagram, params))
    total = p**d
    hist = None
    if total <= budget:
        hist = dict(sorted(Counter(c.color_count for c in enumerate_colorings(diagram, params, budget)).items()))
    return ColoringCensus(total, p, total - p, d, hist)


@dataclass(frozen=True)
class IntegralColorings:
    basis: list[list[int]]
    rank: int
    example: Coloring | None

    @property
    def has_nontrivial(self) -> bool:
        return self.rank >= 2


def integral_colorings(diagram: KnotDiagram, m: int) -> IntegralColorings:
    """Integer kernel of the coloring matrix and, if one exists, a nontrivial coloring.

    The example is shifted to have minimum 0 and divided by the gcd of its
    values, which keeps it a solution since constants lie in the kernel.
    """
    params = ColoringParams(0, m)
    basis = kernel_basis_int(coloring_matrix_mod(diagram, params))
    example = None
    for v in basis:
        if len(set(v)) > 1:
            lo = min(v)
            shifted = [x - lo for x in v]
            g = 0
            for x in shifted:
                g = gcd(g, x)
            example = Coloring(params, tuple(x // g for x in shifted))
            break
    return IntegralColorings(basis, len(basis), example)


def validate_coloring(diagram: KnotDiagram, coloring: Coloring) -> Validation:
    vals = coloring.values
    if len(vals) != diagram.arc_count:
        return Validation(False, None)
    params = coloring.params
    for i, (src, over, dst) in enumerate(diagram.roles):
        lhs = params.op(vals[src], vals[over])
        rhs = vals[dst] % params.n if params.n else vals[dst]
        if lhs != rhs:
            return Validation(False, i)
    return Validation(True, None)


def modular_wrap_check(diagram: KnotDiagram, coloring: Coloring) -> bool:
    """True iff some crossing condition holds only modulo ``p``, not over the integers."""
    m = coloring.params.m
    vals = coloring.values
    return any(
        m * vals[src] + (1 - m) * vals[over] != vals[dst] for src, over, dst in diagram.roles
    )


def polychromatic_crossings(diagram: KnotDiagram, coloring: Coloring) -> list[int]:
    vals = coloring.values
    return [i for i, (src, over, _) in enumerate(diagram.roles) if vals[src] != vals[over]]


@dataclass(frozen=True)
class KHReport:
    admits_injective: bool
    injective: int
    nontrivial: int
    arcs: int
    alternating: bool

    def to_json(self) -> dict:
        return {
            "admits_injective": self.admits_injective,
            "witnesses": {"injective": self.injective, "nontrivial": self.nontrivial},
            "arcs": self.arcs,
            "alternating": self.alternating,
        }


def kh_check(diagram: KnotDiagram, params: ColoringParams, budget: int = DEFAULT_BUDGET) -> KHReport:
    """Look for nontrivial colorings giving distinct arcs distinct colors."""
    k = diagram.arc_count
    census = count_colorings(diagram, params, budget=0)
    injective = 0
    if k <= params.n:
        injective = sum(
            1 for c in nontrivial_colorings(diagram, params, budget) if c.color_count == k
        )
    return KHReport(injective > 0, injective, census.nontrivial, k, diagram.is_alternating())


def brute_force_colorings(diagram: KnotDiagram, params: ColoringParams) -> list[tuple[int, ...]]:
    """All assignments in ``Z_n^arcs`` satisfying every crossing; a test oracle."""
    n = _require_modular(params)
    roles = diagram.roles
    out = []
    for vals in product(range(n), repeat=diagram.arc_count):
        if all(params.op(vals[s], vals[o]) == vals[t] for s, o, t in roles):
            out.append(vals)
    return out


def coloring_from_values(diagram: KnotDiagram, params: ColoringParams, values: Sequence[int]) -> Coloring:
    c = Coloring(params, tuple(values))
    check = validate_coloring(diagram, c)
    if not check:
        raise InvalidParameters(f"not a valid coloring (crossing {check.crossing} fails)")
    return c
