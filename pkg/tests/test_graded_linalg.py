from fractions import Fraction

import pytest

from bbktesting.GradedLinalg import (ChainMapException, CochainComplex, GradedMap, NotAComplexException,
                                     check_chain_map, cohomology, cohomology_dimensions, cone, dual, is_acyclic,
                                     is_quasi_iso, kernel_complex, shift, solve_linear, tensor)


def interval():
    """a -> b, the cochains of an edge relative to nothing"""
    return CochainComplex.from_columns([("a", 0), ("b", 1)], {"a": {"b": 1}, "b": {}})


def point():
    return CochainComplex([("x", 0)])


def test_cohomology_of_acyclic_complex():
    """d a = b leaves no cohomology"""
    assert cohomology_dimensions(interval()) == {0: 0, 1: 0}
    assert is_acyclic(interval())


def test_differential_must_square_to_zero():
    """A differential with d o d != 0 is rejected"""
    with pytest.raises(NotAComplexException):
        CochainComplex.from_columns([("a", 0), ("b", 1), ("c", 2)], {"a": {"b": 1}, "b": {"c": 1}, "c": {}})


def test_shift_moves_degrees_and_signs_differential():
    """V[1] puts degree k in degree k - 1 and negates d"""
    shifted = shift(interval(), 1)
    assert shifted.degree_of("a") == -1
    assert shifted.degree_of("b") == 0
    assert shifted.d.column("a") == {"b": -1}
    assert shift(interval(), 2).d.column("a") == {"b": 1}


def test_cone_of_identity_is_acyclic():
    """The identity is a quasi-isomorphism"""
    assert is_quasi_iso(GradedMap.identity(point())) == (True, None)


def test_zero_map_is_not_quasi_iso():
    """Cone of the zero map on a point has cohomology in degree -1"""
    result, degree = is_quasi_iso(GradedMap.zero(point(), point()))
    assert not result
    assert degree == -1


def test_cone_labels_and_differential():
    """Cone(f) = X[1] + Y with d(x, y) = (-dx, f x + dy)"""
    f = GradedMap.identity(interval())
    c = cone(f)
    assert c.degree_of(("src", "a")) == -1
    assert c.degree_of(("tgt", "a")) == 0
    assert c.d.column(("src", "a")) == {("src", "b"): -1, ("tgt", "a"): 1}
    assert is_acyclic(c)


def test_non_chain_map_is_rejected():
    """A map not commuting with d is reported"""
    f = GradedMap.from_columns(interval(), interval(), 0, {"a": {"a": 1}})
    with pytest.raises(ChainMapException):
        check_chain_map(f)


def test_dual_negates_degrees():
    """The dual of a -> b has b* in degree -1 mapping to a* in degree 0"""
    d = dual(interval())
    assert d.degree_of("a") == 0
    assert d.degree_of("b") == -1
    assert d.d.column("b") == {"a": 1}
    assert is_acyclic(d)


def test_dual_sign_follows_the_degree_of_phi():
    """(d phi)(x) = -(-1)^|phi| phi(dx): an even phi picks up a minus sign, an odd one does not"""
    even = dual(CochainComplex.from_columns([("u", -1), ("v", 0)], {"u": {"v": 3}, "v": {}}))
    assert even.degree_of("v") == 0
    assert even.d.column("v") == {"u": -3}
    odd = dual(CochainComplex.from_columns([("u", 0), ("v", 1)], {"u": {"v": 3}, "v": {}}))
    assert odd.d.column("v") == {"u": 3}


def test_tensor_of_acyclic_is_acyclic():
    """Kunneth: an acyclic factor gives an acyclic product"""
    product = tensor(interval(), interval())
    product.check_square_zero()
    assert is_acyclic(product)
    assert cohomology_dimensions(tensor(point(), point())) == {0: 1}


def test_kernel_complex():
    """Kernel of a chain map as a complex, with its inclusion"""
    source = CochainComplex.from_columns([("a", 0), ("a2", 0), ("b", 1)],
                                         {"a": {"b": 1}, "a2": {"b": 1}, "b": {}})
    f = GradedMap.from_columns(source, point(), 0, {"a": {"x": 1}, "a2": {"x": 1}})
    check_chain_map(f)
    kernel, inclusion = kernel_complex(f)
    assert kernel.dim(0) == 1
    assert kernel.dim(1) == 1
    check_chain_map(inclusion)
    assert f.compose(inclusion).is_zero()
    assert cohomology_dimensions(kernel) == {0: 1, 1: 1}


def test_cohomology_representatives():
    """Representatives are cocycles which are not boundaries"""
    c = CochainComplex.from_columns([("a", 0), ("b", 1), ("c", 1)], {"a": {"b": 1}, "b": {}, "c": {}})
    result = cohomology(c)
    assert result[0] == (0, [])
    assert result[1] == (1, [{"c": 1}])


def test_solve_linear():
    """x + y = 2, x - y = 0 has the solution x = y = 1; adding x + y = 3 makes it inconsistent"""
    entries = {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1}
    assert solve_linear(entries, (2, 2), {0: 2}) == {0: Fraction(1), 1: Fraction(1)}
    entries.update({(2, 0): 1, (2, 1): 1})
    assert solve_linear(entries, (3, 2), {0: 2, 2: 3}) is None
    assert solve_linear({(0, 0): 2, (0, 1): 2}, (1, 2), {0: 4}) == {0: Fraction(2)}
