"""Serializable non-normality certificates and their independent verifier.

A certificate records, for a rectangular 3-simplex reached from a good
triple by zero or more facet lifts:

* the good-triple conditions of the base parameters,
* a ladder of in-semigroup points covering every skew height 1..lambda_1+1
  inside the reduced box, each with an explicit generator witness,
* a witness hole of degree two at skew height lambda_1+2 together with the
  claim that no generator pair sums to it,
* the boundary scan result (no holes of degree <= 2 on any facet),
* the lift trace and the transported witness hole,
* the claimed minimum heights of holes above every facet.

The verifier re-derives every clause from scratch using only exact integer
arithmetic and bounded exhaustive scans. It shares nothing with the code
that produces certificates except the primitives in
:mod:`holeforge.lattice`; in particular it never runs the memoized
membership search.

Integers are serialized as decimal strings so certificates survive tools
that truncate at 64 bits. Emission is canonical (sorted keys, no
whitespace) and therefore byte-stable.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

from .lattice import LatticePoint, ladder_step

KIND = "rectangular-simplex-hole-depth-certificate"
SCHEMA_VERSION = 1
FILE_EXTENSION = ".holecert.json"

#: Degree bound of the boundary scan recorded in every certificate.
BOUNDARY_SCAN_DEGREE = 2

_INT_RE = re.compile(r"-?(0|[1-9][0-9]*)\Z")


class CertificateParseError(ValueError):
    """Input is not a well-formed certificate (distinct from rejection)."""


@dataclass(frozen=True)
class LadderEntry:
    point: LatticePoint
    skew_height: int
    witness: tuple[LatticePoint, ...]


@dataclass(frozen=True)
class LiftRecord:
    facet_index: int
    ell: int
    lambda_before: tuple[int, ...]
    lambda_after: tuple[int, ...]


@dataclass(frozen=True)
class CertificateClaims:
    not_normal: bool
    min_skew_height: int
    min_coordinate_heights: tuple[int, ...]


@dataclass(frozen=True)
class Certificate:
    base_lambdas: tuple[int, ...]
    pairwise_coprime: bool
    delta_skew_height: int
    gap_condition: bool
    ladder: tuple[LadderEntry, ...]
    hole: LatticePoint
    hole_skew_height: int
    boundary_scan_degree: int
    boundary_holes_found: int
    lift_trace: tuple[LiftRecord, ...]
    final_lambdas: tuple[int, ...]
    transported_hole: LatticePoint
    claims: CertificateClaims
    schema_version: int = SCHEMA_VERSION
    kind: str = KIND


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    clause: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


# ---------------------------------------------------------------------------
# serialization


def _point_to_json(p: LatticePoint) -> list[str]:
    return [str(c) for c in p]


def _lambdas_to_json(lams: tuple[int, ...]) -> list[str]:
    return [str(l) for l in lams]


def emit(cert: Certificate) -> bytes:
    """Canonical byte serialization: sorted keys, integers as decimal strings."""
    doc = {
        "schema_version": str(cert.schema_version),
        "kind": cert.kind,
        "lambdas": _lambdas_to_json(cert.final_lambdas),
        "good_triple": {
            "lambdas": _lambdas_to_json(cert.base_lambdas),
            "pairwise_coprime": cert.pairwise_coprime,
            "delta_skew_height": str(cert.delta_skew_height),
            "gap_condition": cert.gap_condition,
        },
        "ladder": [
            {
                "point": _point_to_json(e.point),
                "skew_height": str(e.skew_height),
                "witness": [_point_to_json(w) for w in e.witness],
            }
            for e in cert.ladder
        ],
        "non_normality": {
            "hole": _point_to_json(cert.hole),
            "skew_height": str(cert.hole_skew_height),
        },
        "boundary_scan": {
            "max_degree": str(cert.boundary_scan_degree),
            "holes_found": str(cert.boundary_holes_found),
        },
        "lift_trace": [
            {
                "facet": str(r.facet_index),
                "ell": str(r.ell),
                "lambda_before": _lambdas_to_json(r.lambda_before),
                "lambda_after": _lambdas_to_json(r.lambda_after),
            }
            for r in cert.lift_trace
        ],
        "transported_hole": _point_to_json(cert.transported_hole),
        "claims": {
            "not_normal": cert.claims.not_normal,
            "min_skew_height": str(cert.claims.min_skew_height),
            "min_coordinate_heights": [
                str(h) for h in cert.claims.min_coordinate_heights
            ],
        },
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("ascii")


# ---------------------------------------------------------------------------
# parsing (strict; shape errors raise CertificateParseError)


def _need(obj: dict, keys: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise CertificateParseError(f"{where}: expected an object")
    if set(obj) != keys:
        missing = keys - set(obj)
        extra = set(obj) - keys
        raise CertificateParseError(
            f"{where}: wrong keys (missing {sorted(missing)}, unexpected {sorted(extra)})"
        )


def _as_int(value, where: str) -> int:
    if not isinstance(value, str) or not _INT_RE.match(value):
        raise CertificateParseError(f"{where}: expected a decimal integer string, got {value!r}")
    return int(value)


def _as_bool(value, where: str) -> bool:
    if not isinstance(value, bool):
        raise CertificateParseError(f"{where}: expected a boolean, got {value!r}")
    return value


def _as_int_list(value, where: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not value:
        raise CertificateParseError(f"{where}: expected a non-empty array")
    return tuple(_as_int(v, where) for v in value)


def _as_point(value, where: str) -> LatticePoint:
    coords = _as_int_list(value, where)
    if len(coords) < 2:
        raise CertificateParseError(f"{where}: a point needs at least 2 coordinates")
    return LatticePoint(coords)


def parse(data: bytes | str) -> Certificate:
    """Parse certificate bytes; raises CertificateParseError if malformed."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CertificateParseError(f"not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CertificateParseError(f"not valid JSON: {exc}") from None
    _need(
        doc,
        {
            "schema_version",
            "kind",
            "lambdas",
            "good_triple",
            "ladder",
            "non_normality",
            "boundary_scan",
            "lift_trace",
            "transported_hole",
            "claims",
        },
        "certificate",
    )
    if not isinstance(doc["kind"], str):
        raise CertificateParseError("kind: expected a string")
    gt = doc["good_triple"]
    _need(gt, {"lambdas", "pairwise_coprime", "delta_skew_height", "gap_condition"}, "good_triple")
    if not isinstance(doc["ladder"], list):
        raise CertificateParseError("ladder: expected an array")
    ladder = []
    for i, entry in enumerate(doc["ladder"]):
        where = f"ladder[{i}]"
        _need(entry, {"point", "skew_height", "witness"}, where)
        if not isinstance(entry["witness"], list):
            raise CertificateParseError(f"{where}.witness: expected an array")
        ladder.append(
            LadderEntry(
                point=_as_point(entry["point"], f"{where}.point"),
                skew_height=_as_int(entry["skew_height"], f"{where}.skew_height"),
                witness=tuple(
                    _as_point(w, f"{where}.witness[{j}]")
                    for j, w in enumerate(entry["witness"])
                ),
            )
        )
    nn = doc["non_normality"]
    _need(nn, {"hole", "skew_height"}, "non_normality")
    bs = doc["boundary_scan"]
    _need(bs, {"max_degree", "holes_found"}, "boundary_scan")
    if not isinstance(doc["lift_trace"], list):
        raise CertificateParseError("lift_trace: expected an array")
    trace = []
    for i, rec in enumerate(doc["lift_trace"]):
        where = f"lift_trace[{i}]"
        _need(rec, {"facet", "ell", "lambda_before", "lambda_after"}, where)
        trace.append(
            LiftRecord(
                facet_index=_as_int(rec["facet"], f"{where}.facet"),
                ell=_as_int(rec["ell"], f"{where}.ell"),
                lambda_before=_as_int_list(rec["lambda_before"], f"{where}.lambda_before"),
                lambda_after=_as_int_list(rec["lambda_after"], f"{where}.lambda_after"),
            )
        )
    cl = doc["claims"]
    _need(cl, {"not_normal", "min_skew_height", "min_coordinate_heights"}, "claims")
    return Certificate(
        base_lambdas=_as_int_list(gt["lambdas"], "good_triple.lambdas"),
        pairwise_coprime=_as_bool(gt["pairwise_coprime"], "good_triple.pairwise_coprime"),
        delta_skew_height=_as_int(gt["delta_skew_height"], "good_triple.delta_skew_height"),
        gap_condition=_as_bool(gt["gap_condition"], "good_triple.gap_condition"),
        ladder=tuple(ladder),
        hole=_as_point(nn["hole"], "non_normality.hole"),
        hole_skew_height=_as_int(nn["skew_height"], "non_normality.skew_height"),
        boundary_scan_degree=_as_int(bs["max_degree"], "boundary_scan.max_degree"),
        boundary_holes_found=_as_int(bs["holes_found"], "boundary_scan.holes_found"),
        lift_trace=tuple(trace),
        final_lambdas=_as_int_list(doc["lambdas"], "lambdas"),
        transported_hole=_as_point(doc["transported_hole"], "transported_hole"),
        claims=CertificateClaims(
            not_normal=_as_bool(cl["not_normal"], "claims.not_normal"),
            min_skew_height=_as_int(cl["min_skew_height"], "claims.min_skew_height"),
            min_coordinate_heights=_as_int_list(
                cl["min_coordinate_heights"], "claims.min_coordinate_heights"
            ),
        ),
        schema_version=_as_int(doc["schema_version"], "schema_version"),
        kind=doc["kind"],
    )


# ---------------------------------------------------------------------------
# verification (independent re-derivation of every clause)


def _skew_weights(lams: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    L = math.lcm(*lams)
    return L, tuple(L // l for l in lams)


def _skew_value(L: int, weights: tuple[int, ...], coords) -> int:
    return L * coords[-1] - sum(w * c for w, c in zip(weights, coords))


def _is_generator(L: int, weights: tuple[int, ...], point: LatticePoint) -> bool:
    coords = point.coords
    if coords[-1] != 1 or any(c < 0 for c in coords[:-1]):
        return False
    return _skew_value(L, weights, coords) >= 0


def _find_pair_decomposition(lams, z: LatticePoint):
    """A pair of generators summing to the degree-2 point z, or None.

    Exhausts the first two coordinates of one summand and solves the third
    by an exact interval intersection, so the scan is complete.
    """
    L, w = _skew_weights(lams)
    z1, z2, z3, _ = z.coords
    total = w[0] * z1 + w[1] * z2 + w[2] * z3  # = 2L - skew(z)
    for a in range(min(z1, L // w[0]) + 1):
        for b in range(min(z2, L // w[1]) + 1):
            part = w[0] * a + w[1] * b
            if part > L:
                break
            # need w[2]*c in [total - L - part, L - part] and 0 <= c <= z3
            lo = -(-(total - L - part) // w[2])  # ceil
            hi = (L - part) // w[2]
            lo = max(lo, 0)
            hi = min(hi, z3)
            if lo <= hi:
                g = LatticePoint((a, b, lo, 1))
                return g, z - g
    return None


def _boundary_deg2_holes(lams) -> list[LatticePoint]:
    """Degree-2 cone points on some facet with no generator-pair decomposition.

    Degree-1 cone points are generators by definition, so degree 2 is the
    first degree at which a boundary hole could appear.
    """
    L, w = _skew_weights(lams)
    bad: list[LatticePoint] = []

    def splits_at(a: int, b: int, a1: int, wj: int, wk: int) -> bool:
        cap1 = (L - wj * a1) // wk
        cap2 = (L - wj * (a - a1)) // wk
        if cap1 < 0 or cap2 < 0:
            return False
        return max(b - cap2, 0) <= min(b, cap1)

    def splits_on_plane(a: int, b: int, wj: int, wk: int) -> bool:
        # point (a, b) at degree 2 in the 2-parameter cone wj*x + wk*y <= L per
        # summand; the extreme splits almost always work, the full scan is the
        # complete fallback
        hi = min(a, L // wj)
        lo = max(a - L // wj, 0)
        if splits_at(a, b, hi, wj, wk) or splits_at(a, b, lo, wj, wk):
            return True
        return any(splits_at(a, b, a1, wj, wk) for a1 in range(lo, hi + 1))

    for i, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        wj, wk = w[j], w[k]
        a = 0
        while wj * a <= 2 * L:
            bmax = (2 * L - wj * a) // wk
            for b in range(bmax + 1):
                if not splits_on_plane(a, b, wj, wk):
                    coords = [0, 0, 0, 2]
                    coords[j] = a
                    coords[k] = b
                    bad.append(LatticePoint(coords))
            a += 1

    # skew facet: summands of a skew-height-zero point all have height zero
    on_skew_deg1 = []
    a = 0
    while w[0] * a <= L:
        b = 0
        while w[0] * a + w[1] * b <= L:
            rest = L - w[0] * a - w[1] * b
            if rest % w[2] == 0:
                on_skew_deg1.append((a, b, rest // w[2], 1))
            b += 1
        a += 1
    skew_set = set(on_skew_deg1)
    a = 0
    while w[0] * a <= 2 * L:
        b = 0
        while w[0] * a + w[1] * b <= 2 * L:
            rest = 2 * L - w[0] * a - w[1] * b
            if rest % w[2] == 0:
                z = (a, b, rest // w[2], 2)
                if not any(
                    tuple(x - y for x, y in zip(z, g)) in skew_set for g in on_skew_deg1
                ):
                    bad.append(LatticePoint(z))
            b += 1
        a += 1
    return sorted(bad, key=lambda p: p.coords)


def verify(data: bytes | str) -> Verdict:
    """Re-check every clause of a serialized certificate.

    Returns an accepted verdict only if all clauses hold; otherwise a
    rejection naming the first failing clause. Malformed input raises
    :class:`CertificateParseError` instead of returning a verdict.
    """
    cert = parse(data)

    def reject(clause: str, detail: str) -> Verdict:
        return Verdict(False, clause, detail)

    if cert.schema_version != SCHEMA_VERSION:
        return reject("schema", f"unsupported schema version {cert.schema_version}")
    if cert.kind != KIND:
        return reject("schema", f"unknown certificate kind {cert.kind!r}")

    # dimension: the boundary argument (2-dimensional facets are normal)
    # is only available for 3-simplices
    if len(cert.base_lambdas) != 3 or len(cert.final_lambdas) != 3:
        return reject("dimension", "only 3-dimensional certificates are supported")
    for p in (cert.hole, cert.transported_hole):
        if len(p) != 4:
            return reject("dimension", f"point {p!r} does not have 4 coordinates")

    # good-triple conditions, re-derived from the base parameters
    l1, l2, l3 = cert.base_lambdas
    if not (0 < l1 <= l2 <= l3):
        return reject("good-triple", "base parameters are not sorted positive integers")
    coprime = (
        math.gcd(l1, l2) == 1 and math.gcd(l1, l3) == 1 and math.gcd(l2, l3) == 1
    )
    if not coprime or not cert.pairwise_coprime:
        return reject("good-triple", "parameters are not pairwise coprime")
    L, w = _skew_weights(cert.base_lambdas)
    delta = ladder_step(3)
    delta_height = _skew_value(L, w, delta.coords)
    if delta_height != 2 or cert.delta_skew_height != delta_height:
        return reject("good-triple", f"ladder step has skew height {delta_height}, need 2")
    if not (l1 + 2 < l2) or not cert.gap_condition:
        return reject("good-triple", "gap condition lambda1 + 2 < lambda2 fails")

    # ladder: every skew height 1..lambda1+1 hit by an in-box point with a
    # checkable generator witness
    heights_seen = set()
    for entry in cert.ladder:
        if len(entry.point) != 4:
            return reject("ladder", f"point {entry.point!r} does not have 4 coordinates")
        h = _skew_value(L, w, entry.point.coords)
        if h != entry.skew_height:
            return reject(
                "ladder",
                f"recorded skew height {entry.skew_height} of {entry.point!r} is {h}",
            )
        for c, lam in zip(entry.point.coords, cert.base_lambdas):
            if not 0 <= c < lam:
                return reject("ladder", f"{entry.point!r} is outside the reduced box")
        if len(entry.witness) != entry.point.degree:
            return reject("ladder", f"witness size mismatch for {entry.point!r}")
        total = None
        for witness_point in entry.witness:
            if len(witness_point) != 4 or not _is_generator(L, w, witness_point):
                return reject("ladder", f"{witness_point!r} is not a generator")
            total = witness_point if total is None else total + witness_point
        if total != entry.point:
            return reject("ladder", f"witness does not sum to {entry.point!r}")
        heights_seen.add(h)
    if heights_seen != set(range(1, l1 + 2)):
        return reject(
            "ladder",
            f"skew heights {sorted(heights_seen)} do not cover 1..{l1 + 1}",
        )

    # non-normality witness: a saturation point of degree 2 at height
    # lambda1+2 with no generator-pair decomposition
    hole = cert.hole
    if any(c < 0 for c in hole.coords) or hole.degree != 2:
        return reject("non-normality", f"{hole!r} is not a degree-2 cone point")
    hole_height = _skew_value(L, w, hole.coords)
    if hole_height < 0:
        return reject("non-normality", f"{hole!r} is not in the saturation")
    if hole_height != cert.hole_skew_height or hole_height != l1 + 2:
        return reject(
            "non-normality",
            f"hole skew height is {hole_height}, recorded {cert.hole_skew_height}, "
            f"need lambda1 + 2 = {l1 + 2}",
        )
    pair = _find_pair_decomposition(cert.base_lambdas, hole)
    if pair is not None:
        return reject(
            "non-normality",
            f"{hole!r} decomposes as {pair[0]!r} + {pair[1]!r}",
        )

    # boundary scan: re-run; no boundary holes up to degree 2
    if cert.boundary_scan_degree != BOUNDARY_SCAN_DEGREE:
        return reject(
            "boundary",
            f"boundary scan degree must be {BOUNDARY_SCAN_DEGREE}, "
            f"got {cert.boundary_scan_degree}",
        )
    boundary = _boundary_deg2_holes(cert.base_lambdas)
    if boundary or cert.boundary_holes_found != 0:
        return reject(
            "boundary",
            f"boundary holes found: {boundary[:3]!r} (recorded {cert.boundary_holes_found})",
        )

    # lift trace: each step raises one parameter by the lcm of the others
    # and keeps the skew weight of the lifted facet unchanged
    current = cert.base_lambdas
    lifts_per_facet = [0, 0, 0]
    for rec in cert.lift_trace:
        i = rec.facet_index
        if not 1 <= i <= 3:
            return reject("lift-trace", f"facet index {i} out of range")
        if rec.lambda_before != current:
            return reject(
                "lift-trace",
                f"step starts at {rec.lambda_before}, expected {current}",
            )
        others = [l for j, l in enumerate(current, start=1) if j != i]
        ell = math.lcm(*others)
        if rec.ell != ell:
            return reject("lift-trace", f"step ell is {rec.ell}, expected {ell}")
        expected_after = tuple(
            l + ell if j == i else l for j, l in enumerate(current, start=1)
        )
        if rec.lambda_after != expected_after:
            return reject(
                "lift-trace",
                f"step ends at {rec.lambda_after}, expected {expected_after}",
            )
        L_before, _ = _skew_weights(current)
        L_after, _ = _skew_weights(expected_after)
        if L_before // current[i - 1] != L_after // expected_after[i - 1]:
            return reject("lift-trace", "lifted facet changes its skew weight")
        lifts_per_facet[i - 1] += 1
        current = expected_after
    if cert.final_lambdas != current:
        return reject(
            "lift-trace",
            f"final parameters {cert.final_lambdas} do not match trace end {current}",
        )

    # transported hole: recompute the image of the witness hole through the
    # chain; the skew height must be preserved at every stage
    image = hole
    stage = cert.base_lambdas
    for rec in cert.lift_trace:
        ell = rec.ell
        i = rec.facet_index
        shift = ell * image.degree - sum(
            (ell // stage[j]) * image[j] for j in range(3) if j != i - 1
        )
        if shift < 0:
            return reject("transported-hole", "lift shift is negative on the hole")
        coords = list(image.coords)
        coords[i - 1] += shift
        image = LatticePoint(coords)
        stage = rec.lambda_after
        Ls, ws = _skew_weights(stage)
        if _skew_value(Ls, ws, image.coords) != hole_height:
            return reject("transported-hole", "skew height not preserved along the chain")
    if image != cert.transported_hole:
        return reject(
            "transported-hole",
            f"recorded image {cert.transported_hole!r} differs from recomputed {image!r}",
        )

    # claims must equal exactly what the clauses above derive
    claims = cert.claims
    if not claims.not_normal:
        return reject("claims", "certificate must claim non-normality")
    if claims.min_skew_height != l1 + 2:
        return reject(
            "claims",
            f"minimum skew height claim {claims.min_skew_height} != lambda1 + 2 = {l1 + 2}",
        )
    expected_minima = tuple(1 + c for c in lifts_per_facet)
    if claims.min_coordinate_heights != expected_minima:
        return reject(
            "claims",
            f"coordinate height claims {claims.min_coordinate_heights} "
            f"!= derived {expected_minima}",
        )
    for idx, minimum in enumerate(claims.min_coordinate_heights):
        if cert.transported_hole[idx] < minimum:
            return reject(
                "claims",
                f"transported hole violates the claimed minimum on facet {idx + 1}",
            )
    return Verdict(True)
