"""Rectangular simplices: vertices, facet height forms, degree-one generators.

A rectangular simplex with parameters ``lambdas = (l_1, ..., l_n)`` has the
vertices ``e_{n+1}`` and ``l_i e_i + e_{n+1}``. Its affine semigroup is
generated by the lattice points of the simplex placed at degree one (last
coordinate 1). Heights above the coordinate facets are plain coordinates;
the height above the skew facet spanned by the ``l_i e_i + e_{n+1}`` is

    L*z_{n+1} - sum_i (L/l_i)*z_i,    L = lcm(l_1, ..., l_n).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

from .lattice import LatticePoint, LinearForm, lcm_all, unit_vector

#: Facet identifier of the skew facet; coordinate facets are identified by
#: their 1-based axis index.
SKEW = "skew"

FacetId = int | str

DEFAULT_GENERATOR_LIMIT = 5_000_000


class ResourceLimitExceeded(RuntimeError):
    """A computation was refused because it would exceed a configured guard."""


@dataclass(frozen=True)
class RectSimplex:
    """A rectangular simplex together with its facet forms.

    Immutable and shareable; the degree-one generator list is materialized on
    first access and cached, guarded by ``generator_limit``.
    """

    lambdas: tuple[int, ...]
    L: int
    vertices: tuple[LatticePoint, ...]
    facet_forms: tuple[LinearForm, ...]
    generator_limit: int = DEFAULT_GENERATOR_LIMIT

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def skew_form(self) -> LinearForm:
        return self.facet_forms[-1]

    @cached_property
    def generators(self) -> tuple[LatticePoint, ...]:
        """All degree-one points of the saturation, lexicographically sorted."""
        coords = _enumerate_degree_one(self.lambdas, self.L, self.generator_limit)
        return tuple(LatticePoint(c) for c in coords)


def make_skew_form(lambdas: Sequence[int]) -> LinearForm:
    """The skew-facet height form for the given parameters."""
    _validate_lambdas(lambdas)
    L = lcm_all(lambdas)
    return LinearForm(tuple(-(L // l) for l in lambdas) + (L,))


def make_simplex(
    lambdas: Sequence[int], generator_limit: int = DEFAULT_GENERATOR_LIMIT
) -> RectSimplex:
    """Build the rectangular simplex for ``lambdas``.

    Raises ValueError unless all parameters are positive integers.
    """
    _validate_lambdas(lambdas)
    lams = tuple(lambdas)
    n = len(lams)
    dim = n + 1
    L = lcm_all(lams)
    vertices = [unit_vector(dim, dim)]
    for i, l in enumerate(lams, start=1):
        vertices.append(l * unit_vector(dim, i) + unit_vector(dim, dim))
    forms = [
        LinearForm(tuple(1 if j == i else 0 for j in range(dim))) for i in range(n)
    ]
    forms.append(make_skew_form(lams))
    return RectSimplex(lams, L, tuple(vertices), tuple(forms), generator_limit)


def height(simplex: RectSimplex, facet: FacetId, point: LatticePoint) -> int:
    """Lattice height of ``point`` above the given facet."""
    if facet == SKEW:
        return simplex.skew_form(point)
    if isinstance(facet, int) and not isinstance(facet, bool) and 1 <= facet <= simplex.n:
        return simplex.facet_forms[facet - 1](point)
    raise ValueError(f"unknown facet id {facet!r} (expect 1..{simplex.n} or {SKEW!r})")


def degree_one_generators(simplex: RectSimplex) -> tuple[LatticePoint, ...]:
    """The degree-one generators of the simplex's semigroup (cached)."""
    return simplex.generators


def _validate_lambdas(lambdas: Sequence[int]) -> None:
    if len(lambdas) < 1:
        raise ValueError("need at least one simplex parameter")
    for l in lambdas:
        if not isinstance(l, int) or isinstance(l, bool) or l < 1:
            raise ValueError(f"simplex parameters must be positive integers, got {l!r}")


def _enumerate_degree_one(
    lambdas: tuple[int, ...], L: int, limit: int
) -> list[tuple[int, ...]]:
    # Nonnegative z with sum (L/l_i) z_i <= L, emitted in lexicographic order.
    weights = [L // l for l in lambdas]
    n = len(lambdas)
    out: list[tuple[int, ...]] = []

    def descend(prefix: list[int], budget: int) -> None:
        i = len(prefix)
        if i == n:
            if len(out) >= limit:
                raise ResourceLimitExceeded(
                    f"degree-one generator count of simplex {lambdas} exceeds "
                    f"the configured limit {limit}"
                )
            out.append(tuple(prefix) + (1,))
            return
        w = weights[i]
        for v in range(budget // w + 1):
            prefix.append(v)
            descend(prefix, budget - v * w)
            prefix.pop()

    descend([], L)
    return out
