import random

import pytest

from holeforge.certificate import verify, emit
from holeforge.lattice import LatticePoint
from holeforge.lifting import (
    LiftTrace,
    deep_hole_construction,
    lift_lambda,
    lift_point,
    shift,
    unlift_point,
)
from holeforge.oracle import SemigroupOracle
from holeforge.simplex import SKEW, height, make_simplex, make_skew_form


def test_lift_lambda_examples():
    step = lift_lambda((5, 9, 43), 1)
    assert step.ell == 387
    assert step.lambda_after == (392, 9, 43)
    step2 = lift_lambda((5, 9, 43), 2)
    assert step2.ell == 215
    assert step2.lambda_after == (5, 224, 43)
    step3 = lift_lambda((1, 1), 1)
    assert step3.ell == 1
    assert step3.lambda_after == (2, 1)


def test_lift_lambda_rejects_bad_index():
    with pytest.raises(ValueError):
        lift_lambda((5, 9, 43), 0)
    with pytest.raises(ValueError):
        lift_lambda((5, 9, 43), 4)
    with pytest.raises(ValueError):
        lift_lambda((5,), 1)


def test_shift_on_witness_hole():
    step = lift_lambda((5, 9, 43), 1)
    assert shift(step, LatticePoint((4, 7, 18, 2))) == 311


def test_shift_vanishes_on_other_vertices():
    lams = (5, 9, 43)
    simplex = make_simplex(lams)
    for i in (1, 2, 3):
        step = lift_lambda(lams, i)
        for j in (1, 2, 3):
            if j != i:
                assert shift(step, simplex.vertices[j]) == 0
        assert shift(step, simplex.vertices[0]) == step.ell


def test_lift_point_example():
    step = lift_lambda((5, 9, 43), 1)
    q = LatticePoint((4, 7, 18, 2))
    image = lift_point(step, q)
    assert image == LatticePoint((315, 7, 18, 2))
    lifted = make_simplex(step.lambda_after)
    assert lifted.L == 151704
    assert height(lifted, SKEW, image) == 7


def test_lift_point_fixes_origin_and_moves_apex():
    step = lift_lambda((5, 9, 43), 1)
    zero = LatticePoint((0, 0, 0, 0))
    assert lift_point(step, zero) == zero
    apex = LatticePoint((0, 0, 0, 1))
    assert lift_point(step, apex) == LatticePoint((387, 0, 0, 1))


def test_unlift_point_inverts():
    step = lift_lambda((5, 9, 43), 1)
    assert unlift_point(step, LatticePoint((315, 7, 18, 2))) == LatticePoint((4, 7, 18, 2))
    rng = random.Random(19)
    for _ in range(100):
        z = LatticePoint(tuple(rng.randint(-40, 40) for _ in range(4)))
        assert unlift_point(step, lift_point(step, z)) == z
        assert lift_point(step, unlift_point(step, z)) == z


@pytest.mark.parametrize("facet", [1, 2, 3])
def test_lift_preserves_all_other_heights(facet):
    lams = (5, 9, 43)
    before = make_simplex(lams)
    step = lift_lambda(lams, facet)
    after = make_simplex(step.lambda_after)
    rng = random.Random(41)
    for _ in range(100):
        z = LatticePoint(tuple(rng.randint(-30, 30) for _ in range(4)))
        image = lift_point(step, z)
        assert height(after, SKEW, image) == height(before, SKEW, z)
        for j in (1, 2, 3):
            if j != facet:
                assert height(after, j, image) == height(before, j, z)


def test_skew_identity_between_stages():
    # skew height after = skew height before + weight * shift
    lams = (5, 9, 43)
    before = make_simplex(lams)
    for facet in (1, 2, 3):
        step = lift_lambda(lams, facet)
        after_form = make_skew_form(step.lambda_after)
        weight = before.L // lams[facet - 1]
        rng = random.Random(43 + facet)
        for _ in range(60):
            z = LatticePoint(tuple(rng.randint(-30, 30) for _ in range(4)))
            assert after_form(z) == before.skew_form(z) + weight * shift(step, z)


def test_lift_maps_semigroup_into_lifted_semigroup():
    lams = (5, 9, 43)
    step = lift_lambda(lams, 1)
    base = SemigroupOracle(make_simplex(lams))
    lifted = SemigroupOracle(make_simplex(step.lambda_after))
    gens = base.simplex.generators
    rng = random.Random(47)
    for _ in range(30):
        total = rng.choice(gens)
        for _ in range(rng.randint(0, 2)):
            total = total + rng.choice(gens)
        assert lifted.member(lift_point(step, total)) is not None


def test_hole_transport_between_5_9_43_and_lift():
    # every low hole of the lifted semigroup pulls back to a hole of the base
    lams = (5, 9, 43)
    step = lift_lambda(lams, 1)
    base = SemigroupOracle(make_simplex(lams))
    lifted = SemigroupOracle(make_simplex(step.lambda_after))
    records = lifted.enumerate_holes(7)
    assert [(r.skew_height, tuple(r.point)) for r in records] == [(7, (315, 7, 18, 2))]
    for rec in records:
        back = unlift_point(step, rec.point)
        assert base.in_saturation(back)
        assert base.member(back) is None
    # and the known base hole lifts onto the found hole
    assert lift_point(step, LatticePoint((4, 7, 18, 2))) == records[0].point


def test_lift_strictly_increases_hole_height():
    lams = (5, 9, 43)
    base = SemigroupOracle(make_simplex(lams))
    for facet in (1, 2, 3):
        step = lift_lambda(lams, facet)
        for rec in base.enumerate_holes(base.simplex.L):
            image = lift_point(step, rec.point)
            assert image[facet - 1] > rec.point[facet - 1]
            assert shift(step, rec.point) >= 1


def test_lift_trace_chaining_is_validated():
    s1 = lift_lambda((5, 9, 43), 1)
    s2 = lift_lambda((5, 9, 43), 2)
    with pytest.raises(ValueError):
        LiftTrace((s1, s2))
    chained = LiftTrace((s1, lift_lambda(s1.lambda_after, 2)))
    assert chained.initial_lambdas == (5, 9, 43)
    assert chained.final_lambdas == (392, 9 + 392 * 43, 43)
    assert chained.lifts_per_facet(3) == (1, 1, 0)


def test_deep_hole_construction_k0():
    trace, simplex, cert = deep_hole_construction(0)
    assert cert.base_lambdas == (5, 9, 43)
    assert trace.steps == ()
    assert cert.final_lambdas == (5, 9, 43)
    assert cert.claims.min_skew_height == 7
    assert cert.claims.min_coordinate_heights == (1, 1, 1)
    assert verify(emit(cert)).accepted


def test_deep_hole_construction_k1_no_lifts():
    trace, simplex, cert = deep_hole_construction(1)
    assert trace.steps == ()
    assert cert.final_lambdas == (5, 9, 43)
    assert verify(emit(cert)).accepted


def test_deep_hole_construction_k3():
    trace, simplex, cert = deep_hole_construction(3)
    assert len(trace.steps) == 6
    assert [s.facet_index for s in trace.steps] == [1, 1, 2, 2, 3, 3]
    assert cert.final_lambdas == (779, 67003, 104390717)
    assert simplex.lambdas == (779, 67003, 104390717)
    assert cert.transported_hole == LatticePoint((626, 52115, 43698440, 2))
    assert cert.claims.min_coordinate_heights == (3, 3, 3)
    # transported hole keeps its skew height at every stage of the chain
    image = LatticePoint((4, 7, 18, 2))
    for step in trace.steps:
        image = lift_point(step, image)
        assert make_skew_form(step.lambda_after)(image) == 7
    assert image == cert.transported_hole
    assert verify(emit(cert)).accepted


def test_deep_hole_construction_base_selection():
    assert deep_hole_construction(7)[2].base_lambdas == (5, 9, 43)
    assert deep_hole_construction(8)[2].base_lambdas == (7, 13, 89)
    assert deep_hole_construction(9)[2].base_lambdas == (7, 13, 89)
    assert deep_hole_construction(10)[2].base_lambdas == (9, 17, 151)


def test_deep_hole_construction_rejects_negative():
    with pytest.raises(ValueError):
        deep_hole_construction(-1)
