import random
from fractions import Fraction

import pytest

from bbktesting.BulkBoundary import (BoundaryCondition, BoundaryConditionException, BoundaryViolation,
                                     BulkBoundarySystem, boundary_defect, check_isotropic, check_lagrangian,
                                     check_restored_cyclicity, impose, random_compact_field, splitting,
                                     strict_pullback_model_check, validate_boundary_condition)
from bbktesting.GradedLinalg import cohomology_dimensions
from bbktesting.IntervalModel import OpenSet

BOUNDARY_CELL = OpenSet([0], True)


def test_boundary_defect_of_linear_fields(toplmech):
    """p(1 - t) against q(1 - t) leaves -<p, q> at the boundary"""
    sys = toplmech.system()
    first = {("p", (0, 0)): Fraction(1), ("p", (1, 0)): Fraction(-1)}
    second = {("q", (0, 0)): Fraction(1), ("q", (1, 0)): Fraction(-1)}
    assert boundary_defect(sys, first, second) == (-1, -1)


def test_boundary_defect_on_random_fields(toplmech, bf_sl2):
    rng = random.Random(3)
    for descriptor in (toplmech, bf_sl2):
        sys = descriptor.system()
        for _ in range(5):
            lhs, rhs = boundary_defect(sys, random_compact_field(sys, rng), random_compact_field(sys, rng))
            assert lhs == rhs


def test_boundary_defect_needs_far_end_vanishing(toplmech):
    sys = toplmech.system()
    with pytest.raises(ValueError):
        boundary_defect(sys, {("p", (0, 0)): Fraction(1)}, {})


def test_bulk_is_isotropic(toplmech):
    assert check_isotropic(toplmech.system()) == (True, None)


def test_rho_takes_boundary_values(toplmech):
    rho = toplmech.system().rho(BOUNDARY_CELL)
    assert rho.column((0, ("p", (0, 0)))) == {"p": 1}
    assert rho.column((0, ("p", (1, 0)))) == {}
    assert rho.column((0, ("q", (0, 1)))) == {}


def test_lagrangian_on_every_open(toplmech):
    sys = toplmech.system()
    for open_set in sys.mesh.opens(punctured=True):
        assert check_lagrangian(sys, open_set) == (True, None), open_set


def test_vanishing_pairing_is_not_lagrangian(toplmech):
    sys = BulkBoundarySystem(toplmech.boundary, toplmech.mesh(), 2, pairing_scale=0)
    result, witness = check_lagrangian(sys, OpenSet([2]))
    assert not result
    assert witness["open"] == "{2}"


def test_registered_conditions_are_valid(toplmech, bf_sl2):
    for descriptor in (toplmech, bf_sl2):
        for condition in descriptor.conditions:
            assert validate_boundary_condition(descriptor.boundary, condition) == (True, {})


@pytest.mark.parametrize("lagrangian,complement,violation", [
    ([{"e": 1}, {"e*": 1}], [{"f": 1}, {"f*": 1}], BoundaryViolation.ISOTROPY),
    ([{"e": 1}, {"f": 1}], [{"e*": 1}, {"f*": 1}], BoundaryViolation.BRACKET_CLOSURE),
    ([{"e*": 1}, {"f*": 1}, {"h*": 1}], [], BoundaryViolation.COMPLEMENT),
])
def test_invalid_conditions_are_rejected(bf_sl2, lagrangian, complement, violation):
    condition = BoundaryCondition("control", lagrangian, complement)
    result, violations = validate_boundary_condition(bf_sl2.boundary, condition)
    assert not result
    assert violation in violations
    with pytest.raises(BoundaryConditionException):
        impose(bf_sl2.system(), condition, BOUNDARY_CELL)


def test_every_line_of_the_plane_is_lagrangian(toplmech):
    slopes = [Fraction(n, 2) for n in range(-4, 5)]
    lines = [({"p": 1, "q": s}, {"q": 1}) for s in slopes] + [({"q": 1}, {"p": 1})]
    for line, complement in lines:
        condition = BoundaryCondition("line", [line], [complement])
        assert validate_boundary_condition(toplmech.boundary, condition) == (True, {})


def test_conditioned_fields_have_the_cohomology_of_the_condition(toplmech):
    sys = toplmech.system()
    conditioned = impose(sys, toplmech.condition("q-line"), BOUNDARY_CELL)
    assert conditioned.space.dim(0) == 5
    assert conditioned.space.dim(1) == 4
    assert cohomology_dimensions(conditioned.complex()) == {0: 1, 1: 0}


def test_restored_cyclicity(toplmech, bf_sl2):
    for descriptor in (toplmech, bf_sl2):
        sys = descriptor.system()
        assert check_restored_cyclicity(sys, descriptor.condition()) == (True, None)


def test_splitting(toplmech, bf_sl2):
    for descriptor in (toplmech, bf_sl2):
        sys = descriptor.system()
        assert splitting(sys, descriptor.condition()).verify() == (True, None)


def test_splitting_checks_the_annihilator(bf_sl2):
    """P for the B condition does not vanish on the fields satisfying the A condition"""
    split = splitting(bf_sl2.system(), bf_sl2.condition("B"))
    split.condition = bf_sl2.condition("A")
    result, witness = split.verify()
    assert not result
    assert "annihilate" in witness["reason"]


def test_strict_pullback(toplmech):
    sys = toplmech.system()
    condition = toplmech.condition("q-line")
    for open_set in sys.mesh.opens(punctured=True):
        assert strict_pullback_model_check(sys, condition, open_set) == (True, None), open_set


def test_strict_pullback_for_sl2(bf_sl2):
    sys = bf_sl2.system()
    for name in ("B", "A"):
        for open_set in sys.mesh.opens():
            assert strict_pullback_model_check(sys, bf_sl2.condition(name), open_set) == (True, None), open_set


def test_strict_pullback_needs_every_boundary_value(bf_sl2):
    """Without the constant e field on the boundary cell rho misses e"""
    sys = bf_sl2.system()
    result, witness = strict_pullback_model_check(sys, bf_sl2.condition("B"), BOUNDARY_CELL,
                                                  omitted=[(0, ("e", (0, 0)))])
    assert not result
    assert witness["reason"] == "rho is not surjective"
    assert witness["degree"] == -1


def test_missing_condition_raises(toplmech):
    sys = BulkBoundarySystem(toplmech.boundary, toplmech.mesh(), 2)
    with pytest.raises(BoundaryConditionException):
        sys.conditioned(BOUNDARY_CELL)
