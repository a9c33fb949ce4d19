import pytest

from bbktesting.Examples import (LocalFunctionalComplex, bf_pushforward_compare, closed_form, jx_span,
                                 lie_cohomology, list_examples, o_gB_halfplane, run_example, system_example)
from bbktesting.LInfinity import LieAlgebra, abelian, sl2


def test_whitehead_lemmas_for_sl2():
    assert lie_cohomology(sl2()) == {0: 1, 1: 0, 2: 0, 3: 1}
    assert lie_cohomology(sl2(), weight=1) == {0: 0, 1: 0, 2: 0, 3: 0}


def test_coefficients_carry_the_adjoint_action():
    """aff(1) has no adjoint invariants and no outer derivations, while its coadjoint module has an invariant"""
    aff = LieAlgebra(["x", "y"], {("x", "y"): {"y": 1}}, name="aff1")
    assert lie_cohomology(aff, weight=1) == {0: 0, 1: 0, 2: 0}


def test_kunneth_for_sl2_plus_sl2():
    dims = lie_cohomology(sl2().direct_sum(sl2()))
    assert {degree: dim for degree, dim in dims.items() if dim} == {0: 1, 3: 2, 6: 1}


def test_lie_cohomology_needs_jacobi():
    broken = LieAlgebra(["a", "b", "c"], {("a", "b"): {"a": 1}, ("b", "c"): {"b": 1}})
    with pytest.raises(ValueError):
        lie_cohomology(broken)


def test_unknown_variant():
    with pytest.raises(ValueError):
        LocalFunctionalComplex(sl2(), "C", 1)


def test_a_variant_at_weight_zero_is_acyclic():
    assert LocalFunctionalComplex(sl2(), "A", 0).cohomology() == {}


def test_halfplane_weight_one_for_sl2():
    """Only the quotient of g by its invariants survives, in degree -1"""
    result = o_gB_halfplane(sl2(), 1)
    weight_one = result["weights"][1]
    assert result["weight_preserved"]
    assert weight_one["dimension"] == 3
    assert weight_one["cohomology"] == {-1: 3}
    assert weight_one["agrees"]
    assert closed_form(sl2(), 1) == {-1: 3}


def test_halfplane_closed_form_for_abelian():
    result = o_gB_halfplane(abelian(), 2)
    assert all(entry["agrees"] for entry in result["weights"].values())


def test_jx_classes_span_weight_one():
    result = jx_span(sl2(), [{"e": 1}, {"f": 1}, {"h": 1}])
    assert result == {"closed": True, "independent": True, "spans": True, "rank": 3}


def test_dependent_jx_classes():
    result = jx_span(sl2(), [{"e": 1}, {"e": 2}])
    assert result["closed"]
    assert not result["independent"]
    assert result["rank"] == 1


def test_pushforward_comparison_for_abelian_bf():
    result, dims = bf_pushforward_compare(abelian(), 2)
    assert result, dims
    assert dims["{}"]["bulk"] == {0: 1}


def test_pushforward_comparison_for_sl2_bf():
    result, dims = bf_pushforward_compare(sl2(), 2)
    assert result, dims
    assert dims["{}"]["bulk"] == {0: 1}


def test_system_examples(toplmech, bf_abelian):
    for descriptor in (toplmech, bf_abelian):
        report = system_example(descriptor)
        assert report["module_axioms"], report["witness"]
        assert report["comparison"], report["witness"]
        assert report["oracle_agrees"]
        assert report["passed"]


def test_example_registry():
    names = [name for name, _ in list_examples()]
    assert names == ["bf-pushforward-abelian", "bf1d-abelian", "bf1d-sl2", "bf2d-sl2-weight1", "toplmech"]
    with pytest.raises(KeyError):
        run_example("bf3d")


def test_run_halfplane_example():
    report = run_example("bf2d-sl2-weight1")
    assert report["passed"]
    assert report["weight_1_dimension"] == 3
    assert report["example"] == "bf2d-sl2-weight1"
