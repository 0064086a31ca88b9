"""Facet lifts: push holes away from a chosen coordinate facet.

One lift step replaces parameter ``l_i`` by ``l_i + ell`` where ``ell`` is
the lcm of the other parameters. The associated point map adds the value of
an integer linear form (the *shift*) to coordinate ``i``; it preserves the
skew height and every other coordinate height, maps the semigroup into the
lifted semigroup, and strictly increases the height of holes above facet
``i``. Iterating over all coordinate facets therefore drives holes
arbitrarily deep while the skew-height lower bound of the base good triple
is preserved.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Sequence
from dataclasses import dataclass

from .certificate import Certificate, CertificateClaims, LiftRecord
from .lattice import LatticePoint, LinearForm, lcm_all, unit_vector
from .simplex import RectSimplex, make_simplex, make_skew_form
from .triples import GoodTriple, certify, family, witness_hole


@dataclass(frozen=True)
class LiftStep:
    """One application of the lift to facet ``facet_index``."""

    facet_index: int
    ell: int
    lambda_before: tuple[int, ...]
    lambda_after: tuple[int, ...]
    shift_form: LinearForm


def lift_lambda(lambdas: Sequence[int], facet_index: int) -> LiftStep:
    """The lift step raising ``lambdas[facet_index - 1]`` by the lcm of the rest."""
    lams = tuple(lambdas)
    n = len(lams)
    if n < 2:
        raise ValueError("lifting needs at least two parameters")
    for l in lams:
        if not isinstance(l, int) or isinstance(l, bool) or l < 1:
            raise ValueError(f"parameters must be positive integers, got {l!r}")
    if not isinstance(facet_index, int) or not 1 <= facet_index <= n:
        raise ValueError(f"facet index must be in 1..{n}, got {facet_index!r}")
    others = [l for j, l in enumerate(lams, start=1) if j != facet_index]
    ell = lcm_all(others)
    after = tuple(
        l + ell if j == facet_index else l for j, l in enumerate(lams, start=1)
    )
    coeffs = [0] * (n + 1)
    for j, l in enumerate(lams, start=1):
        if j != facet_index:
            coeffs[j - 1] = -(ell // l)
    coeffs[n] = ell
    step = LiftStep(
        facet_index=facet_index,
        ell=ell,
        lambda_before=lams,
        lambda_after=after,
        shift_form=LinearForm(coeffs),
    )
    # the lifted facet keeps its skew weight: L/l_i == L'/l'_i
    L = lcm_all(lams)
    L_after = lcm_all(after)
    assert L // lams[facet_index - 1] == L_after // after[facet_index - 1]
    return step


def shift(step: LiftStep, point: LatticePoint) -> int:
    """The integer added to the lifted coordinate; nonnegative on the cone."""
    return step.shift_form(point)


def lift_point(step: LiftStep, point: LatticePoint) -> LatticePoint:
    """Map a point into the lifted simplex's ambient lattice."""
    amount = step.shift_form(point)
    return point + amount * unit_vector(len(point), step.facet_index)


def unlift_point(step: LiftStep, point: LatticePoint) -> LatticePoint:
    """Inverse of :func:`lift_point`; the shift ignores the lifted coordinate."""
    amount = step.shift_form(point)
    return point - amount * unit_vector(len(point), step.facet_index)


@dataclass(frozen=True)
class LiftTrace:
    """A chained sequence of lift steps."""

    steps: tuple[LiftStep, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for prev, cur in zip(self.steps, self.steps[1:]):
            if prev.lambda_after != cur.lambda_before:
                raise ValueError(
                    f"lift steps do not chain: {prev.lambda_after} then {cur.lambda_before}"
                )

    @property
    def initial_lambdas(self) -> tuple[int, ...] | None:
        return self.steps[0].lambda_before if self.steps else None

    @property
    def final_lambdas(self) -> tuple[int, ...] | None:
        return self.steps[-1].lambda_after if self.steps else None

    def push(self, point: LatticePoint) -> LatticePoint:
        for step in self.steps:
            point = lift_point(step, point)
        return point

    def pull(self, point: LatticePoint) -> LatticePoint:
        for step in reversed(self.steps):
            point = unlift_point(step, point)
        return point

    def lifts_per_facet(self, n: int) -> tuple[int, ...]:
        counts = [0] * n
        for step in self.steps:
            counts[step.facet_index - 1] += 1
        return tuple(counts)


def deep_hole_construction(k: int) -> tuple[LiftTrace, RectSimplex, Certificate]:
    """Build a 3-simplex whose semigroup is not normal and whose holes all sit
    at height >= k above every facet, with a verifiable certificate.

    Starts from the family triple with the smallest odd lambda1 >= max(5, k-2)
    (so the skew bound lambda1 + 2 reaches k), then lifts each coordinate facet
    max(0, k-1) times: boundary-freeness gives coordinate heights >= 1 and each
    lift adds at least 1 to the lifted facet's height of every hole.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError(f"k must be a nonnegative integer, got {k!r}")
    lambda1 = max(5, k - 2)
    if lambda1 % 2 == 0:
        lambda1 += 1
    triple = family(lambda1)
    base_cert = certify(triple)

    steps: list[LiftStep] = []
    current = triple.lambdas
    per_facet = max(0, k - 1)
    for facet_index in (1, 2, 3):
        for _ in range(per_facet):
            step = lift_lambda(current, facet_index)
            steps.append(step)
            current = step.lambda_after
    trace = LiftTrace(tuple(steps))

    hole = witness_hole(triple)
    image = hole
    base_height = make_skew_form(triple.lambdas)(hole)
    for step in steps:
        image = lift_point(step, image)
        # every stage preserves the skew height of the transported hole
        assert make_skew_form(step.lambda_after)(image) == base_height

    certificate = dataclasses.replace(
        base_cert,
        lift_trace=tuple(
            LiftRecord(
                facet_index=s.facet_index,
                ell=s.ell,
                lambda_before=s.lambda_before,
                lambda_after=s.lambda_after,
            )
            for s in steps
        ),
        final_lambdas=current,
        transported_hole=image,
        claims=CertificateClaims(
            not_normal=True,
            min_skew_height=triple.lambda1 + 2,
            min_coordinate_heights=tuple(1 + c for c in trace.lifts_per_facet(3)),
        ),
    )
    return trace, make_simplex(current), certificate
