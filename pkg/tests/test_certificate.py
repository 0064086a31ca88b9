import dataclasses
import json
import random

import pytest

from holeforge.certificate import (
    Certificate,
    CertificateParseError,
    emit,
    parse,
    verify,
)
from holeforge.lattice import LatticePoint
from holeforge.lifting import deep_hole_construction
from holeforge.triples import GoodTriple, certify, family, search_good_triples


@pytest.fixture(scope="module")
def cert_5_9_43():
    return certify(family(5))


def test_emit_is_canonical_and_stable(cert_5_9_43):
    first = emit(cert_5_9_43)
    second = emit(certify(family(5)))
    assert first == second
    assert first.endswith(b"\n")
    doc = json.loads(first)
    assert doc["claims"]["min_skew_height"] == "7"
    assert doc["good_triple"]["lambdas"] == ["5", "9", "43"]
    assert doc["non_normality"]["hole"] == ["4", "7", "18", "2"]


def test_round_trip(cert_5_9_43):
    assert parse(emit(cert_5_9_43)) == cert_5_9_43


def test_large_integers_survive_the_round_trip():
    cert = deep_hole_construction(30)[2]
    assert max(cert.final_lambdas) > 2**63
    parsed = parse(emit(cert))
    assert parsed == cert
    assert verify(emit(cert)).accepted


def test_verify_accepts_valid(cert_5_9_43):
    verdict = verify(emit(cert_5_9_43))
    assert verdict.accepted and bool(verdict)


def test_verify_rejects_wrong_minimum_claim(cert_5_9_43):
    # claiming one more than the ladder supports must be caught
    bad = dataclasses.replace(
        cert_5_9_43,
        claims=dataclasses.replace(cert_5_9_43.claims, min_skew_height=8),
    )
    verdict = verify(emit(bad))
    assert not verdict.accepted
    assert verdict.clause == "claims"


def test_verify_rejects_corrupted_ladder_witness(cert_5_9_43):
    entries = list(cert_5_9_43.ladder)
    witness = tuple(
        LatticePoint((w[0] + 1,) + tuple(w)[1:]) for w in entries[1].witness
    )
    entries[1] = dataclasses.replace(entries[1], witness=witness)
    bad = dataclasses.replace(cert_5_9_43, ladder=tuple(entries))
    verdict = verify(emit(bad))
    assert not verdict.accepted
    assert verdict.clause == "ladder"


def test_verify_rejects_decomposable_hole(cert_5_9_43):
    # a semigroup member at the right height is not a hole
    bad = dataclasses.replace(
        cert_5_9_43,
        hole=LatticePoint((2, 6, 40, 2)),
        hole_skew_height=7,
        transported_hole=LatticePoint((2, 6, 40, 2)),
    )
    verdict = verify(emit(bad))
    assert not verdict.accepted
    assert verdict.clause == "non-normality"


def test_verify_rejects_non_good_base(cert_5_9_43):
    bad = dataclasses.replace(cert_5_9_43, base_lambdas=(5, 9, 44), final_lambdas=(5, 9, 44))
    verdict = verify(emit(bad))
    assert not verdict.accepted
    assert verdict.clause == "good-triple"


def test_verify_rejects_unsupported_schema(cert_5_9_43):
    bad = dataclasses.replace(cert_5_9_43, schema_version=2)
    verdict = verify(emit(bad))
    assert not verdict.accepted
    assert verdict.clause == "schema"


def test_verify_rejects_broken_lift_chain():
    cert = deep_hole_construction(2)[2]
    records = list(cert.lift_trace)
    records[1] = dataclasses.replace(records[1], ell=records[1].ell + 1)
    bad = dataclasses.replace(cert, lift_trace=tuple(records))
    verdict = verify(emit(bad))
    assert not verdict.accepted
    assert verdict.clause == "lift-trace"


def test_verify_rejects_wrong_transported_hole():
    cert = deep_hole_construction(2)[2]
    moved = cert.transported_hole + LatticePoint((1, 0, 0, 0))
    bad = dataclasses.replace(cert, transported_hole=moved)
    verdict = verify(emit(bad))
    assert not verdict.accepted
    assert verdict.clause == "transported-hole"


def test_parse_errors_are_distinct_from_rejection():
    with pytest.raises(CertificateParseError):
        parse(b"not json")
    with pytest.raises(CertificateParseError):
        parse(b"{}")
    with pytest.raises(CertificateParseError):
        verify(b'{"schema_version":"1"}')


def test_parse_rejects_non_canonical_integers(cert_5_9_43):
    doc = json.loads(emit(cert_5_9_43))
    doc["claims"]["min_skew_height"] = "07"
    with pytest.raises(CertificateParseError):
        parse(json.dumps(doc))
    doc["claims"]["min_skew_height"] = 7
    with pytest.raises(CertificateParseError):
        parse(json.dumps(doc))


def _mutate_leaf(doc, rng):
    """Pick a random leaf value and change it; returns the mutated tree."""
    doc = json.loads(json.dumps(doc))
    paths = []

    def walk(node, path):
        if isinstance(node, dict):
            for key, value in node.items():
                walk(value, path + [key])
        elif isinstance(node, list):
            for i, value in enumerate(node):
                walk(value, path + [i])
        else:
            paths.append(path)

    walk(doc, [])
    path = rng.choice(paths)
    parent = doc
    for key in path[:-1]:
        parent = parent[key]
    old = parent[path[-1]]
    if isinstance(old, bool):
        parent[path[-1]] = not old
    else:
        delta = rng.choice([-3, -2, -1, 1, 2, 3])
        try:
            parent[path[-1]] = str(int(old) + delta)
        except ValueError:
            parent[path[-1]] = old + "x"
    return doc, path


@pytest.mark.parametrize("seed", [1, 2])
def test_random_single_field_mutations_are_rejected(cert_5_9_43, seed):
    data = emit(cert_5_9_43)
    original = json.loads(data)
    rng = random.Random(seed)
    for _ in range(50):
        mutated, path = _mutate_leaf(original, rng)
        assert mutated != original, path
        blob = json.dumps(mutated, sort_keys=True, separators=(",", ":")).encode()
        try:
            verdict = verify(blob)
        except CertificateParseError:
            continue
        assert not verdict.accepted, f"mutation at {path} was accepted"


@pytest.mark.parametrize(
    "triple", search_good_triples(200), ids=lambda t: "-".join(map(str, t.lambdas))
)
def test_every_small_good_triple_round_trips(triple):
    verdict = verify(emit(certify(triple)))
    assert verdict.accepted, verdict


def test_verify_accepts_lifted_certificates():
    for k in (0, 1, 2, 4):
        cert = deep_hole_construction(k)[2]
        assert verify(emit(cert)).accepted
