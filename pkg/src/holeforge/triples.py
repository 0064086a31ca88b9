"""Good triples: the predicate, the explicit family, ladders, certification.

A *good triple* is a sorted triple of pairwise coprime positive integers
(l1, l2, l3) with l2*l3 - 2*l1*l3 + l1*l2 = 2 (equivalently: the ladder
step vector gains skew height exactly 2) and l1 + 2 < l2. For such
parameters the simplex's semigroup is not normal, yet every hole sits at
skew height at least l1 + 2: the ladder points reach every smaller height
inside the reduced box, which per-height uniqueness turns into a lower
bound for holes.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .certificate import (
    BOUNDARY_SCAN_DEGREE,
    Certificate,
    CertificateClaims,
    LadderEntry,
)
from .lattice import LatticePoint, ladder_step, lcm_all


class CertificationError(Exception):
    """A certification clause failed; ``clause`` names which one."""

    def __init__(self, clause: str, detail: str):
        super().__init__(f"{clause}: {detail}")
        self.clause = clause
        self.detail = detail


def is_good_triple(lambdas: Sequence[int]) -> tuple[bool, str | None]:
    """Check the good-triple conditions; on failure name the failing one.

    The input must be three positive integers sorted ascending (anything
    else raises ValueError rather than returning False).
    """
    if len(lambdas) != 3:
        raise ValueError(f"expected exactly three parameters, got {len(lambdas)}")
    l1, l2, l3 = lambdas
    for l in (l1, l2, l3):
        if not isinstance(l, int) or isinstance(l, bool) or l < 1:
            raise ValueError(f"parameters must be positive integers, got {l!r}")
    if not l1 <= l2 <= l3:
        raise ValueError(f"parameters must be sorted ascending, got {tuple(lambdas)}")
    if math.gcd(l1, l2) != 1 or math.gcd(l1, l3) != 1 or math.gcd(l2, l3) != 1:
        return False, "condition 1: parameters are not pairwise coprime"
    if l2 * l3 - 2 * l1 * l3 + l1 * l2 != 2:
        return False, "condition 2: ladder step does not have skew height 2"
    if not l1 + 2 < l2:
        return False, "condition 3: lambda1 + 2 < lambda2 fails"
    return True, None


@dataclass(frozen=True)
class GoodTriple:
    """A validated good triple; construction rejects anything else."""

    lambdas: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        ok, reason = is_good_triple(self.lambdas)
        if not ok:
            raise ValueError(f"not a good triple: {reason}")
        # conditions 1 and 2 force the outer parameters odd
        assert self.lambda1 % 2 == 1 and self.lambda3 % 2 == 1

    @property
    def lambda1(self) -> int:
        return self.lambdas[0]

    @property
    def lambda2(self) -> int:
        return self.lambdas[1]

    @property
    def lambda3(self) -> int:
        return self.lambdas[2]

    @property
    def delta(self) -> LatticePoint:
        return ladder_step(3)

    @property
    def ladder_base(self) -> LatticePoint:
        """The unique reduced semigroup point of skew height 1,
        ((l1-1)/2, 1, (l3-1)/2, 1)."""
        return LatticePoint(
            ((self.lambda1 - 1) // 2, 1, (self.lambda3 - 1) // 2, 1)
        )


def family(lambda1: int) -> GoodTriple:
    """The good triple (l1, 2*l1 - 1, 2*l1^2 - l1 - 2) for odd l1 >= 5."""
    if not isinstance(lambda1, int) or isinstance(lambda1, bool):
        raise ValueError(f"lambda1 must be an integer, got {lambda1!r}")
    if lambda1 < 5 or lambda1 % 2 == 0:
        raise ValueError(f"lambda1 must be an odd integer >= 5, got {lambda1}")
    return GoodTriple((lambda1, 2 * lambda1 - 1, 2 * lambda1 * lambda1 - lambda1 - 2))


def search_good_triples(max_lambda3: int) -> list[GoodTriple]:
    """All good triples with l3 <= max_lambda3, sorted.

    Condition 2 pins l3 = (l1*l2 - 2)/(2*l1 - l2) once l1 and l2 are fixed,
    and forces l1 + 2 < l2 < 2*l1, so scanning (l1, l2) is exhaustive.
    """
    if not isinstance(max_lambda3, int):
        raise ValueError(f"bound must be an integer, got {max_lambda3!r}")
    found = []
    for l1 in range(1, max_lambda3 + 1):
        for l2 in range(l1 + 3, 2 * l1):
            num = l1 * l2 - 2
            den = 2 * l1 - l2
            if num % den != 0:
                continue
            l3 = num // den
            if not l2 <= l3 <= max_lambda3:
                continue
            ok, _ = is_good_triple((l1, l2, l3))
            if ok:
                found.append(GoodTriple((l1, l2, l3)))
    return sorted(found, key=lambda t: t.lambdas)


def witness_hole(triple: GoodTriple) -> LatticePoint:
    """The degree-2 hole (l1-1, l1+2, (l3-l1)/2 - 1, 2) at skew height l1+2."""
    l1, _, l3 = triple.lambdas
    return LatticePoint((l1 - 1, l1 + 2, (l3 - l1) // 2 - 1, 2))


@dataclass(frozen=True)
class Ladder:
    """Semigroup points covering every skew height 1..lambda1+1 in the reduced
    box, each carrying a generator witness."""

    lambdas: tuple[int, int, int]
    entries: tuple[LadderEntry, ...]


def build_ladder(triple: GoodTriple) -> Ladder:
    """Build the ladder from the base point p and the step vector:
    p + k*step covers the odd heights, 2p + k*step the even ones.

    Every entry's witness is re-verified arithmetically; a failure here is an
    internal arithmetic bug, not a user error.
    """
    lams = triple.lambdas
    l1 = triple.lambda1
    p = triple.ladder_base
    step = triple.delta
    skew = _skew_form_weights(lams)
    entries: list[LadderEntry] = []
    for k in range((l1 - 1) // 2 + 1):
        odd = p + k * step
        entries.append(LadderEntry(point=odd, skew_height=1 + 2 * k, witness=(odd,)))
        even = 2 * p + k * step
        entries.append(LadderEntry(point=even, skew_height=2 + 2 * k, witness=(p, odd)))
    entries.sort(key=lambda e: e.skew_height)
    heights = [e.skew_height for e in entries]
    assert heights == list(range(1, l1 + 2))
    for entry in entries:
        assert _skew_value(skew, entry.point.coords) == entry.skew_height
        assert all(0 <= c < l for c, l in zip(entry.point.coords, lams))
        assert sum(entry.witness, LatticePoint((0, 0, 0, 0))) == entry.point
        assert len(entry.witness) == entry.point.degree
        for witness_point in entry.witness:
            assert _is_generator(skew, witness_point)
    return Ladder(lambdas=lams, entries=tuple(entries))


def certify(triple: GoodTriple) -> Certificate:
    """Produce the full non-normality certificate for a good triple.

    Re-checks every clause while assembling it and raises
    :class:`CertificationError` naming the first clause that fails.
    """
    lams = triple.lambdas
    l1 = triple.lambda1
    ok, reason = is_good_triple(lams)
    if not ok:
        raise CertificationError("good-triple", reason)
    skew = _skew_form_weights(lams)
    if _skew_value(skew, triple.delta.coords) != 2:
        raise CertificationError("good-triple", "ladder step does not gain skew height 2")

    try:
        ladder = build_ladder(triple)
    except AssertionError as exc:
        raise CertificationError("ladder", f"ladder construction failed: {exc}") from exc
    for entry in ladder.entries:
        if sum(entry.witness, LatticePoint((0, 0, 0, 0))) != entry.point:
            raise CertificationError("ladder", f"witness does not sum to {entry.point!r}")
        if not all(_is_generator(skew, wp) for wp in entry.witness):
            raise CertificationError("ladder", f"non-generator witness for {entry.point!r}")

    hole = witness_hole(triple)
    if any(c < 0 for c in hole.coords):
        raise CertificationError("non-normality", f"witness hole {hole!r} leaves the cone")
    hole_height = _skew_value(skew, hole.coords)
    if hole_height != l1 + 2:
        raise CertificationError(
            "non-normality", f"witness hole has skew height {hole_height}, need {l1 + 2}"
        )
    pair = _scan_pair_decomposition(lams, hole)
    if pair is not None:
        raise CertificationError(
            "non-normality", f"witness hole decomposes as {pair[0]!r} + {pair[1]!r}"
        )

    boundary = _scan_boundary_degree2(lams)
    if boundary:
        raise CertificationError("boundary", f"boundary holes found: {boundary[:3]!r}")

    return Certificate(
        base_lambdas=lams,
        pairwise_coprime=True,
        delta_skew_height=2,
        gap_condition=True,
        ladder=ladder.entries,
        hole=hole,
        hole_skew_height=hole_height,
        boundary_scan_degree=BOUNDARY_SCAN_DEGREE,
        boundary_holes_found=0,
        lift_trace=(),
        final_lambdas=lams,
        transported_hole=hole,
        claims=CertificateClaims(
            not_normal=True,
            min_skew_height=l1 + 2,
            min_coordinate_heights=(1, 1, 1),
        ),
    )


# ---------------------------------------------------------------------------
# arithmetic helpers (producer side)


def _skew_form_weights(lams: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    L = lcm_all(lams)
    return L, tuple(L // l for l in lams)


def _skew_value(skew: tuple[int, tuple[int, ...]], coords) -> int:
    L, weights = skew
    return L * coords[-1] - sum(w * c for w, c in zip(weights, coords))


def _is_generator(skew: tuple[int, tuple[int, ...]], point: LatticePoint) -> bool:
    coords = point.coords
    if coords[-1] != 1 or any(c < 0 for c in coords[:-1]):
        return False
    return _skew_value(skew, coords) >= 0


def _scan_pair_decomposition(lams, z: LatticePoint):
    """First generator pair summing to the degree-2 point z, or None.

    Scans the first summand's leading coordinates exhaustively and solves the
    trailing one by interval intersection, which keeps the scan complete
    without enumerating the full generator list.
    """
    L, w = _skew_form_weights(lams)
    z1, z2, z3, _ = z.coords
    budget = w[0] * z1 + w[1] * z2 + w[2] * z3
    for a in range(min(z1, L // w[0]) + 1):
        if w[0] * a > L:
            break
        for b in range(min(z2, (L - w[0] * a) // w[1]) + 1):
            part = w[0] * a + w[1] * b
            # complement must also satisfy its skew bound: budget - part - w3*c <= L
            lo = max(-(-(budget - L - part) // w[2]), 0)
            hi = min((L - part) // w[2], z3)
            if lo <= hi:
                first = LatticePoint((a, b, lo, 1))
                return first, z - first
    return None


def _scan_boundary_degree2(lams) -> list[LatticePoint]:
    """Degree-2 cone points on a facet with no generator-pair decomposition.

    Degree-1 cone points are generators by construction, so degree 2 is the
    lowest degree a boundary hole could have.
    """
    L, w = _skew_form_weights(lams)
    bad: list[LatticePoint] = []

    def coordinate_facet_split(a: int, b: int, wj: int, wk: int) -> bool:
        lo1 = max(a - L // wj, 0)
        hi1 = min(a, L // wj)

        def ok(a1: int) -> bool:
            room_first = (L - wj * a1) // wk
            room_second = (L - wj * (a - a1)) // wk
            if room_first < 0 or room_second < 0:
                return False
            return max(b - room_second, 0) <= min(b, room_first)

        if ok(hi1) or ok(lo1):
            return True
        return any(ok(a1) for a1 in range(lo1, hi1 + 1))

    for i, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        wj, wk = w[j], w[k]
        for a in range(2 * L // wj + 1):
            for b in range((2 * L - wj * a) // wk + 1):
                if not coordinate_facet_split(a, b, wj, wk):
                    coords = [0, 0, 0, 2]
                    coords[j] = a
                    coords[k] = b
                    bad.append(LatticePoint(coords))

    # skew facet: a skew-height-zero point only decomposes into
    # skew-height-zero generators
    flat_gens = []
    for a in range(L // w[0] + 1):
        for b in range((L - w[0] * a) // w[1] + 1):
            rest = L - w[0] * a - w[1] * b
            if rest % w[2] == 0:
                flat_gens.append((a, b, rest // w[2], 1))
    flat_set = set(flat_gens)
    for a in range(2 * L // w[0] + 1):
        for b in range((2 * L - w[0] * a) // w[1] + 1):
            rest = 2 * L - w[0] * a - w[1] * b
            if rest % w[2] == 0:
                z = (a, b, rest // w[2], 2)
                if not any(
                    tuple(x - y for x, y in zip(z, g)) in flat_set for g in flat_gens
                ):
                    bad.append(LatticePoint(z))
    return sorted(bad, key=lambda p: p.coords)
