# Copyright (C) 2018 British Broadcasting Corporation
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Polynomial de Rham forms on an interval [0, delta] and the finite site of cells used for opens.

A form is (p(t), q(t) dt). Compact support near the far end is modelled by p(delta) = 0, forms whose pullback
to t = 0 vanishes by p(0) = 0. The 1-form part carries no endpoint condition.
"""

from enum import Enum
from fractions import Fraction
from itertools import combinations

from sympy import Poly, QQ, Rational, Symbol, sympify

from . import Config as CONFIG
from .BBKUtils import BBKUtils, BudgetException, PreconditionException
from .GradedLinalg import CochainComplex

T = Symbol("t")


def _rational(value):
    value = BBKUtils.parse_rational(value) if isinstance(value, str) else Fraction(value)
    return Rational(value.numerator, value.denominator)


def as_poly(value):
    """Polynomial in t over QQ from a Poly, an expression, a number or an ascending coefficient list"""
    if isinstance(value, Poly):
        return Poly(value.as_expr(), T, domain=QQ)
    if isinstance(value, (list, tuple)):
        return Poly(sum((_rational(c) * T ** j for j, c in enumerate(value)), Rational(0)), T, domain=QQ)
    if isinstance(value, (int, Fraction, str)):
        return Poly(_rational(value), T, domain=QQ)
    return Poly(sympify(value), T, domain=QQ)


def poly_degree(poly):
    return -1 if poly.is_zero else poly.degree()


def poly_value(poly, point):
    return BBKUtils.to_fraction(poly.eval(_rational(point)))


def poly_coefficients(poly):
    """Ascending rational coefficients"""
    if poly.is_zero:
        return []
    return [BBKUtils.to_fraction(c) for c in reversed(poly.all_coeffs())]


class SupportFlag(Enum):
    FREE = "free"
    VANISHING_AT_DELTA = "vanishing_at_delta"
    VANISHING_AT_ZERO = "vanishing_at_zero"


class PolyForm(object):
    """Form p(t) + q(t) dt on [0, delta] with deg p <= cap and deg q <= cap - 1"""

    def __init__(self, zero_form=0, one_form=0, delta=1, cap=None):
        self.delta = BBKUtils.parse_rational(delta) if isinstance(delta, str) else Fraction(delta)
        if self.delta <= 0:
            raise ValueError("Interval length must be positive, got {}".format(self.delta))
        self.cap = CONFIG.POLY_DEGREE_CAP if cap is None else int(cap)
        self.p = as_poly(zero_form)
        self.q = as_poly(one_form)
        if poly_degree(self.p) > self.cap or poly_degree(self.q) > self.cap - 1:
            raise BudgetException("Form ({}, {} dt) leaves the polynomial-degree cap {}"
                                  .format(self.p.as_expr(), self.q.as_expr(), self.cap))

    def _like(self, zero_form, one_form, cap=None):
        return PolyForm(zero_form, one_form, self.delta, self.cap if cap is None else cap)

    @property
    def form_degree(self):
        """0 or 1 for homogeneous forms, None for zero or mixed forms"""
        if self.p.is_zero and not self.q.is_zero:
            return 1
        if self.q.is_zero and not self.p.is_zero:
            return 0
        return None

    def is_zero(self):
        return self.p.is_zero and self.q.is_zero

    def __eq__(self, other):
        return (isinstance(other, PolyForm) and self.delta == other.delta
                and self.p == other.p and self.q == other.q)

    def __hash__(self):
        return hash((self.delta, tuple(poly_coefficients(self.p)), tuple(poly_coefficients(self.q))))

    def __add__(self, other):
        self._check_interval(other)
        return self._like(self.p + other.p, self.q + other.q, max(self.cap, other.cap))

    def __neg__(self):
        return self._like(-self.p, -self.q)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, scalar):
        return self._like(self.p * _rational(scalar), self.q * _rational(scalar))

    def __repr__(self):
        return "PolyForm({}, ({}) dt, delta={})".format(self.p.as_expr(), self.q.as_expr(), self.delta)

    def _check_interval(self, other):
        if self.delta != other.delta:
            raise ValueError("Forms live on intervals of different length")

    def d(self):
        return self._like(0, self.p.diff(T))

    def wedge(self, other):
        self._check_interval(other)
        return self._like(self.p * other.p, self.p * other.q + self.q * other.p)

    def integrate(self):
        """Exact integral over [0, delta] of a 1-form"""
        if not self.p.is_zero:
            raise ValueError("Only 1-forms can be integrated, got a 0-form part {}".format(self.p.as_expr()))
        antiderivative = self.q.integrate()
        return poly_value(antiderivative, self.delta) - poly_value(antiderivative, 0)

    def eval0(self):
        return poly_value(self.p, 0)

    def value_at(self, point):
        return poly_value(self.p, point)

    def flags(self):
        # only the 0-form part is tested at either end; the 1-form part is unconstrained
        flags = {SupportFlag.FREE}
        if self.value_at(self.delta) == 0:
            flags.add(SupportFlag.VANISHING_AT_DELTA)
        if self.eval0() == 0:
            flags.add(SupportFlag.VANISHING_AT_ZERO)
        return flags

    def has_flag(self, flag):
        return flag in self.flags()

    def homotopy_K(self):
        """K(p, q dt) = (-int_t^delta q(s) ds, 0), so that dK + Kd = id on forms vanishing at delta"""
        if not self.has_flag(SupportFlag.VANISHING_AT_DELTA):
            raise ValueError("Contracting homotopy needs a form vanishing at delta, got {!r}".format(self))
        antiderivative = self.q.integrate()
        return self._like(antiderivative - poly_value(antiderivative, self.delta), 0)

    def homotopy_K0(self):
        """K0(p, q dt) = (int_0^t q(s) ds, 0), so that dK0 + K0d = id on forms vanishing at zero"""
        if not self.has_flag(SupportFlag.VANISHING_AT_ZERO):
            raise ValueError("Contracting homotopy needs a form vanishing at zero, got {!r}".format(self))
        antiderivative = self.q.integrate()
        return self._like(antiderivative - poly_value(antiderivative, 0), 0)

    def to_json(self):
        return {
            "delta": BBKUtils.format_rational(self.delta),
            "cap": self.cap,
            "zero_form": [BBKUtils.format_rational(c) for c in poly_coefficients(self.p)],
            "one_form": [BBKUtils.format_rational(c) for c in poly_coefficients(self.q)]
        }

    @classmethod
    def from_json(cls, data):
        return cls(data.get("zero_form", []), data.get("one_form", []), data["delta"], data.get("cap"))


def integrate_product(first, second):
    """Integral of the top-degree part of first ^ second, without applying any polynomial-degree cap"""
    first._check_interval(second)
    product = first.p * second.q + first.q * second.p
    if product.is_zero:
        return Fraction(0)
    antiderivative = product.integrate()
    return poly_value(antiderivative, first.delta) - poly_value(antiderivative, 0)


def cutoff(delta, exponent=None, cap=None):
    """chi(t) = (1 - t/delta)^k, equal to 1 at t = 0 and 0 at t = delta"""
    exponent = CONFIG.CUTOFF_EXPONENT if exponent is None else exponent
    delta = Fraction(delta)
    chi = PolyForm((1 - T / _rational(delta)) ** exponent, 0, delta, max(exponent, cap or 0, 1))
    validate_cutoff(chi)
    return chi


def validate_cutoff(chi):
    if chi.eval0() != 1 or chi.value_at(chi.delta) != 0:
        raise ValueError("Cutoff must equal 1 at t = 0 and 0 at t = delta, got {!r}".format(chi))


class IntervalModel(object):
    """
    Monomial basis of the capped polynomial forms on [0, length].
    Labels are (j, 0) for t^j and (j, 1) for t^j dt, with polynomial degree j and j + 1.
    """

    def __init__(self, length=1, cap=None):
        self.length = BBKUtils.parse_rational(length) if isinstance(length, str) else Fraction(length)
        if self.length <= 0:
            raise ValueError("Interval length must be positive")
        self.cap = CONFIG.POLY_DEGREE_CAP if cap is None else int(cap)
        if self.cap < 1:
            raise ValueError("Polynomial-degree cap must be at least 1")

    def basis(self):
        return [((j, 0), 0) for j in range(self.cap + 1)] + [((j, 1), 1) for j in range(self.cap)]

    def degree(self, label):
        return label[1]

    def pdeg(self, label):
        return label[0] + label[1]

    def form(self, label):
        j, degree = label
        if degree == 0:
            return PolyForm(T ** j, 0, self.length, self.cap)
        return PolyForm(0, T ** j, self.length, self.cap)

    def differential(self, label):
        j, degree = label
        if degree == 0 and j > 0:
            return {(j - 1, 1): Fraction(j)}
        return {}

    def multiply(self, first, second):
        degree = first[1] + second[1]
        if degree > 1:
            return {}
        power = first[0] + second[0]
        if power + degree > self.cap:
            raise BudgetException("Product of {} and {} leaves the polynomial-degree cap {}"
                                  .format(first, second, self.cap))
        return {(power, degree): Fraction(1)}

    def pair(self, first, second):
        """Integral of the product of two monomial forms over the whole interval"""
        if first[1] + second[1] != 1:
            return Fraction(0)
        power = first[0] + second[0]
        return self.length ** (power + 1) / (power + 1)

    def value_at_zero(self, label):
        return Fraction(1) if label == (0, 0) else Fraction(0)

    def value_at_end(self, label):
        return self.length ** label[0] if label[1] == 0 else Fraction(0)

    def coordinates(self, form):
        """Express a PolyForm on this interval in the monomial basis"""
        if form.delta != self.length:
            raise ValueError("Form lives on an interval of length {}, expected {}".format(form.delta, self.length))
        vector = {(j, 0): c for j, c in enumerate(poly_coefficients(form.p)) if c}
        vector.update({(j, 1): c for j, c in enumerate(poly_coefficients(form.q)) if c})
        for label in vector:
            if self.pdeg(label) > self.cap:
                raise BudgetException("Form {!r} leaves the polynomial-degree cap {}".format(form, self.cap))
        return vector

    def complex(self):
        return CochainComplex.from_columns(self.basis(), {label: self.differential(label)
                                                          for label, _ in self.basis()})

    def compact_forms(self, both_ends=False):
        """
        Basis of the forms vanishing at the far end (and at 0 as well when both_ends is set).
        Returns (name, form degree, PolyForm) triples.
        """
        h = _rational(self.length)
        forms = []
        if both_ends:
            for j in range(self.cap - 1):
                forms.append((("c", j, 0), 0, PolyForm(T * (T - h) * T ** j, 0, self.length, self.cap)))
        else:
            for j in range(self.cap):
                forms.append((("c", j, 0), 0, PolyForm((T - h) * T ** j, 0, self.length, self.cap)))
        for j in range(self.cap):
            forms.append((("c", j, 1), 1, PolyForm(0, T ** j, self.length, self.cap)))
        return forms


class TensorModel(object):
    """Product of two interval models with a total polynomial-degree cap; labels are (x label, y label)"""

    def __init__(self, x_model, y_model, cap=None):
        self.x = x_model
        self.y = y_model
        self.cap = min(x_model.cap, y_model.cap) if cap is None else int(cap)

    def basis(self):
        return [((a, b), da + db) for a, da in self.x.basis() for b, db in self.y.basis()
                if self.x.pdeg(a) + self.y.pdeg(b) <= self.cap]

    def degree(self, label):
        return self.x.degree(label[0]) + self.y.degree(label[1])

    def pdeg(self, label):
        return self.x.pdeg(label[0]) + self.y.pdeg(label[1])

    def differential(self, label):
        a, b = label
        result = {(u, b): c for u, c in self.x.differential(a).items()}
        sign = -1 if self.x.degree(a) % 2 else 1
        for v, c in self.y.differential(b).items():
            BBKUtils.add_into(result, {(a, v): sign * c})
        return result

    def multiply(self, first, second):
        if self.pdeg(first) + self.pdeg(second) > self.cap:
            raise BudgetException("Product of {} and {} leaves the polynomial-degree cap {}"
                                  .format(first, second, self.cap))
        (a, b), (c, d) = first, second
        sign = -1 if self.y.degree(b) % 2 and self.x.degree(c) % 2 else 1
        result = {}
        for u, cu in self.x.multiply(a, c).items():
            for v, cv in self.y.multiply(b, d).items():
                BBKUtils.add_into(result, {(u, v): sign * cu * cv})
        return result

    def pair(self, first, second):
        raise PreconditionException("The product model carries no integration pairing")

    def pullback_y0(self, label):
        """Restriction to y = 0 as a vector of the x model"""
        a, b = label
        value = self.y.value_at_zero(b)
        return {a: value} if value else {}


class OpenSet(object):
    """Union of mesh cells, optionally together with the boundary point at the left end of cell 0"""

    def __init__(self, cells, boundary=False):
        self.cells = frozenset(cells)
        self.boundary = bool(boundary)
        if self.boundary and 0 not in self.cells:
            raise ValueError("Only an open containing cell 0 can contain the boundary point")

    def _key(self):
        return (len(self.cells), tuple(sorted(self.cells)), self.boundary)

    def __eq__(self, other):
        return isinstance(other, OpenSet) and self.cells == other.cells and self.boundary == other.boundary

    def __hash__(self):
        return hash((self.cells, self.boundary))

    def __lt__(self, other):
        return self._key() < other._key()

    def __repr__(self):
        return "{" + ",".join(str(c) for c in sorted(self.cells)) + "}" + ("+b" if self.boundary else "")

    def issubset(self, other):
        return self.cells <= other.cells and (other.boundary or not self.boundary)

    def is_disjoint(self, other):
        return not (self.cells & other.cells)

    def union(self, other):
        return OpenSet(self.cells | other.cells, self.boundary or other.boundary)

    def intersection(self, other):
        return OpenSet(self.cells & other.cells, self.boundary and other.boundary)

    def points(self):
        """Cells of the open, plus the marker "b" when it contains the boundary point"""
        return set(self.cells) | ({"b"} if self.boundary else set())

    def is_empty(self):
        return not self.cells


class CellMesh(object):
    """Ordered breakpoints 0 = t_0 < ... < t_m = delta cutting [0, delta] into open cells"""

    def __init__(self, breakpoints):
        self.breakpoints = [BBKUtils.parse_rational(b) if isinstance(b, str) else Fraction(b) for b in breakpoints]
        if len(self.breakpoints) < 2 or self.breakpoints[0] != 0:
            raise ValueError("A mesh needs at least two breakpoints starting at 0")
        for left, right in zip(self.breakpoints, self.breakpoints[1:]):
            if right <= left:
                raise ValueError("Mesh breakpoints must be strictly increasing")

    @classmethod
    def uniform(cls, cells, delta=1):
        delta = Fraction(delta)
        return cls([delta * i / cells for i in range(cells + 1)])

    @property
    def delta(self):
        return self.breakpoints[-1]

    @property
    def cells(self):
        return list(range(len(self.breakpoints) - 1))

    def cell_length(self, cell):
        return self.breakpoints[cell + 1] - self.breakpoints[cell]

    def whole(self):
        return OpenSet(self.cells, True)

    def opens(self, punctured=False, empty=False):
        """Every union of cells, with cell 0 carrying the boundary point (and without it too when punctured)"""
        result = [OpenSet((), False)] if empty else []
        for size in range(1, len(self.cells) + 1):
            for cells in combinations(self.cells, size):
                if 0 in cells:
                    result.append(OpenSet(cells, True))
                    if punctured:
                        result.append(OpenSet(cells, False))
                else:
                    result.append(OpenSet(cells, False))
        return sorted(result)

    def to_json(self):
        return [BBKUtils.format_rational(b) for b in self.breakpoints]
