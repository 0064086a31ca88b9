"""Membership, reduction, and hole search for rectangular-simplex semigroups.

``SemigroupOracle`` answers whether a point is generated by the degree-one
generators (producing an explicit witness), reduces points into the box
below the coordinate facets, and enumerates holes of the saturation. A
deliberately dumb ``naive_member`` is kept as an independent cross-check.

An oracle memoizes decompositions internally and is not meant to be shared
between threads; create one oracle per worker over the shared immutable
:class:`~holeforge.simplex.RectSimplex`.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .lattice import LatticePoint, bezout_coefficients
from .simplex import SKEW, FacetId, RectSimplex, ResourceLimitExceeded

NAIVE_MAX_DEGREE = 5
NAIVE_MAX_GENERATORS = 500

#: Multiset of degree-one generators summing to a queried point. The zero
#: point has the empty witness.
MembershipWitness = tuple[LatticePoint, ...]

_MISS = object()


@dataclass(frozen=True, eq=True)
class HoleRecord:
    """A hole (saturation point outside the semigroup) with its facet heights."""

    point: LatticePoint
    skew_height: int
    coordinate_heights: tuple[int, ...]
    reduced: bool

    @property
    def heights(self) -> dict[FacetId, int]:
        out: dict[FacetId, int] = {i + 1: h for i, h in enumerate(self.coordinate_heights)}
        out[SKEW] = self.skew_height
        return out


class SemigroupOracle:
    def __init__(self, simplex: RectSimplex):
        self.simplex = simplex
        self._skew_coeffs = simplex.skew_form.coeffs
        self._memo: dict[tuple[int, ...], tuple[int, ...] | None] = {}
        self._gens_desc: list[tuple[int, ...]] | None = None
        self._gen_skews: list[int] | None = None
        self._facet_tables: dict[FacetId, tuple[list, list, dict]] = {}

    # ------------------------------------------------------------------
    # basic predicates

    def _skew(self, coords: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self._skew_coeffs, coords))

    def _check_point(self, z: LatticePoint) -> LatticePoint:
        if not isinstance(z, LatticePoint):
            z = LatticePoint(z)
        if len(z) != self.simplex.n + 1:
            raise ValueError(
                f"point has {len(z)} coordinates, simplex needs {self.simplex.n + 1}"
            )
        return z

    def in_saturation(self, z: LatticePoint) -> bool:
        """Whether z lies in the cone: all coordinates >= 0 and skew height >= 0."""
        z = self._check_point(z)
        if any(c < 0 for c in z.coords):
            return False
        return self._skew(z.coords) >= 0

    # ------------------------------------------------------------------
    # membership

    def member(self, z: LatticePoint) -> MembershipWitness | None:
        """A witness decomposition of z into degree-one generators, or None.

        Deterministic: generators are tried in descending lexicographic order
        and the first complete decomposition wins.
        """
        z = self._check_point(z)
        if not self.in_saturation(z):
            return None
        zc = z.coords
        d = zc[-1]
        if d == 0:
            return ()  # in the cone with degree 0 means the origin
        if d == 1:
            return (LatticePoint(zc),)  # degree-one cone points are generators
        self._ensure_generators()
        if not self._search(zc, self._skew(zc)):
            return None
        parts: list[LatticePoint] = []
        cur = zc
        while cur[-1] > 1:
            g = self._memo[cur]
            assert g is not None
            parts.append(LatticePoint(g))
            cur = tuple(a - b for a, b in zip(cur, g))
        parts.append(LatticePoint(cur))
        return tuple(parts)

    def _ensure_generators(self) -> None:
        if self._gens_desc is None:
            gens = sorted((g.coords for g in self.simplex.generators), reverse=True)
            self._gens_desc = gens
            self._gen_skews = [self._skew(g) for g in gens]

    def _search(self, zc: tuple[int, ...], skew: int) -> bool:
        # zc must be in the cone. Degree-one cone points are generators, so
        # the recursion can stop one level early.
        if zc[-1] == 1:
            return True
        hit = self._memo.get(zc, _MISS)
        if hit is not _MISS:
            return hit is not None
        found = None
        for g, gs in zip(self._gens_desc, self._gen_skews):
            child_skew = skew - gs
            if child_skew < 0:
                continue
            child = tuple(a - b for a, b in zip(zc, g))
            if min(child) < 0:
                continue
            if self._search(child, child_skew):
                found = g
                break
        self._memo[zc] = found
        return found is not None

    def naive_member(
        self,
        z: LatticePoint,
        *,
        max_degree: int = NAIVE_MAX_DEGREE,
        max_generators: int = NAIVE_MAX_GENERATORS,
    ) -> bool:
        """Exhaustive multiset search over generators; reference oracle only.

        Guarded because the search is exponential in the degree; the guards
        can be widened explicitly by callers that know what they are doing.
        """
        z = self._check_point(z)
        gens = self.simplex.generators
        if len(gens) > max_generators:
            raise ResourceLimitExceeded(
                f"naive membership is limited to {max_generators} generators, "
                f"simplex has {len(gens)}"
            )
        if z.degree > max_degree:
            raise ResourceLimitExceeded(
                f"naive membership is limited to degree {max_degree}, point has {z.degree}"
            )
        if z.degree < 0 or any(c < 0 for c in z.coords):
            return False
        gens_asc = sorted(g.coords for g in gens)
        index_of = {g: i for i, g in enumerate(gens_asc)}

        def search(zz: tuple[int, ...], start: int) -> bool:
            d = zz[-1]
            if d == 0:
                return not any(zz)
            if d == 1:
                i = index_of.get(zz)
                return i is not None and i >= start
            for j in range(start, len(gens_asc)):
                g = gens_asc[j]
                child = tuple(a - b for a, b in zip(zz, g))
                if min(child) < 0:
                    continue
                if search(child, j):
                    return True
            return False

        return search(z.coords, 0)

    # ------------------------------------------------------------------
    # reduction and per-height candidates

    def reduce(self, z: LatticePoint) -> LatticePoint:
        """Subtract integer multiples of the coordinate vertices until every
        coordinate height lands in [0, lambda_i); the skew height is unchanged.

        Defined on all integer vectors (floor division also handles negative
        coordinates); it maps the saturation into itself.
        """
        z = self._check_point(z)
        coords = list(z.coords)
        for i, l in enumerate(self.simplex.lambdas):
            c = coords[i] // l
            coords[i] -= c * l
            coords[-1] -= c
        return LatticePoint(coords)

    def _require_pairwise_coprime(self) -> None:
        lams = self.simplex.lambdas
        for i in range(len(lams)):
            for j in range(i + 1, len(lams)):
                if math.gcd(lams[i], lams[j]) != 1:
                    raise ValueError(
                        f"simplex parameters must be pairwise coprime; "
                        f"gcd({lams[i]}, {lams[j]}) > 1"
                    )

    def unique_reduced_element(self, skew_height: int) -> LatticePoint:
        """The unique point with the given positive skew height and all
        coordinate heights inside [0, lambda_i).

        Requires pairwise coprime parameters; then the kernel of the skew form
        is spanned by the coordinate vertices, making the reduced representative
        unique per height.
        """
        self._require_pairwise_coprime()
        if not isinstance(skew_height, int) or isinstance(skew_height, bool) or skew_height < 1:
            raise ValueError(f"skew height must be a positive integer, got {skew_height!r}")
        g, coeffs = bezout_coefficients(self._skew_coeffs)
        # pairwise coprime parameters make the skew coefficients coprime overall
        assert g == 1, f"skew form coefficients have gcd {g}"
        coords = [c * skew_height for c in coeffs]
        for i, l in enumerate(self.simplex.lambdas):
            c = coords[i] // l  # floor division, also for negative coordinates
            coords[i] -= c * l
            coords[-1] -= c
        point = LatticePoint(coords)
        assert self._skew(point.coords) == skew_height
        return point

    # ------------------------------------------------------------------
    # hole search

    def enumerate_holes(self, max_skew_height: int | None = None) -> list[HoleRecord]:
        """All reduced holes with skew height up to the bound, sorted by height.

        The result is complete only for reduced representatives up to
        ``max_skew_height`` (default: L, one full degree); any hole of the
        semigroup reduces to one of these by subtracting coordinate vertices.
        """
        if max_skew_height is None:
            max_skew_height = self.simplex.L
        if not isinstance(max_skew_height, int) or max_skew_height < 1:
            raise ValueError(f"max skew height must be >= 1, got {max_skew_height!r}")
        records = []
        n = self.simplex.n
        for h in range(1, max_skew_height + 1):
            candidate = self.unique_reduced_element(h)
            if self.member(candidate) is None:
                records.append(
                    HoleRecord(
                        point=candidate,
                        skew_height=h,
                        coordinate_heights=candidate.coords[:n],
                        reduced=True,
                    )
                )
        return records

    def boundary_hole_scan(self, max_degree: int) -> list[LatticePoint]:
        """All holes of degree <= max_degree lying on some facet.

        Expected to be empty in dimension three, where all facets carry
        normal two-dimensional semigroups.
        """
        if not isinstance(max_degree, int) or max_degree < 1:
            raise ValueError(f"max degree must be >= 1, got {max_degree!r}")
        found: set[tuple[int, ...]] = set()
        facets: list[FacetId] = [i + 1 for i in range(self.simplex.n)] + [SKEW]
        for facet in facets:
            gens, skews, memo = self._facet_table(facet)
            for d in range(2, max_degree + 1):
                # degree-one cone points are generators, so only d >= 2 can fail
                for zc in self._facet_slice(facet, d):
                    if zc in found:
                        continue
                    if not self._search_restricted(zc, self._skew(zc), gens, skews, memo):
                        found.add(zc)
        return [LatticePoint(c) for c in sorted(found)]

    def _facet_table(self, facet: FacetId):
        table = self._facet_tables.get(facet)
        if table is None:
            self._ensure_generators()
            if facet == SKEW:
                gens = [g for g, s in zip(self._gens_desc, self._gen_skews) if s == 0]
            else:
                gens = [g for g in self._gens_desc if g[facet - 1] == 0]
            skews = [self._skew(g) for g in gens]
            table = (gens, skews, {})
            self._facet_tables[facet] = table
        return table

    def _search_restricted(self, zc, skew, gens, skews, memo) -> bool:
        # Same shape as _search; all summands of a facet point lie on that
        # facet, so the restricted generator list is complete for it.
        if zc[-1] == 1:
            return True
        hit = memo.get(zc, _MISS)
        if hit is not _MISS:
            return hit
        found = False
        for g, gs in zip(gens, skews):
            child_skew = skew - gs
            if child_skew < 0:
                continue
            child = tuple(a - b for a, b in zip(zc, g))
            if min(child) < 0:
                continue
            if self._search_restricted(child, child_skew, gens, skews, memo):
                found = True
                break
        memo[zc] = found
        return found

    def _facet_slice(self, facet: FacetId, degree: int):
        """Cone points of the given degree on the given facet."""
        lams = self.simplex.lambdas
        n = self.simplex.n
        L = self.simplex.L
        weights = [L // l for l in lams]
        budget = degree * L
        if facet == SKEW:
            # all coordinates free except the last, which must consume the
            # budget exactly (skew height zero)
            def descend_exact(prefix: list[int], rest: int):
                i = len(prefix)
                if i == n - 1:
                    if rest % weights[i] == 0:
                        yield tuple(prefix) + (rest // weights[i], degree)
                    return
                w = weights[i]
                for v in range(rest // w + 1):
                    prefix.append(v)
                    yield from descend_exact(prefix, rest - v * w)
                    prefix.pop()

            yield from descend_exact([], budget)
            return

        fixed = facet - 1

        def descend(prefix: list[int], rest: int):
            i = len(prefix)
            if i == n:
                yield tuple(prefix) + (degree,)
                return
            if i == fixed:
                prefix.append(0)
                yield from descend(prefix, rest)
                prefix.pop()
                return
            w = weights[i]
            for v in range(rest // w + 1):
                prefix.append(v)
                yield from descend(prefix, rest - v * w)
                prefix.pop()

        yield from descend([], budget)
