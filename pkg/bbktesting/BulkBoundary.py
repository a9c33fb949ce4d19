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
Bulk-boundary systems: fields of the form (boundary fields) x (forms on the normal interval), the boundary value
map rho, Lagrangian boundary conditions and the fields satisfying them.
"""

from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement

from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from . import Config as CONFIG
from .BBKUtils import BBKUtils
from .GradedLinalg import (ChainMapException, CochainComplex, GradedMap, GradedVectorSpace, check_chain_map,
                           cohomology_dimensions, cone, direct_sum, dual, is_acyclic, is_quasi_iso, kernel_complex,
                           matrix_rank, restrict_complex, shift, sparse_matrix, to_scalar)
from .IntervalModel import CellMesh, IntervalModel, OpenSet, cutoff, integrate_product, validate_cutoff
from .LInfinity import (CyclicLInfinity, DirectSumAlgebra, SubAlgebra, TensorAlgebra, check_cyclic,
                        check_jacobi)


class BoundaryViolation(Enum):
    ISOTROPY = "isotropy"
    BRACKET_CLOSURE = "bracket-closure"
    COMPLEMENT = "complement"


class BoundaryConditionException(Exception):
    """A boundary condition was imposed without passing validation"""
    pass


def _degree_of_vector(alg, vector):
    degrees = {alg.degree(label) for label in vector}
    if len(degrees) != 1:
        raise ValueError("Boundary condition vector {} is not homogeneous".format(BBKUtils.format_vector(vector)))
    return degrees.pop()


def homogeneous_parts(alg, vector):
    parts = {}
    for label, coeff in vector.items():
        parts.setdefault(alg.degree(label), {})[label] = coeff
    return parts


def _span_rank(labels, vectors):
    row = {label: i for i, label in enumerate(labels)}
    entries = {}
    for col, vector in enumerate(vectors):
        for label, coeff in vector.items():
            entries[(row[label], col)] = coeff
    return matrix_rank(sparse_matrix(entries, (len(labels), len(vectors))))


class BoundaryTheory(object):
    """Boundary algebra with a degree 0 symplectic pairing"""

    def __init__(self, algebra, name=None):
        self.algebra = algebra
        self.name = name or algebra.name

    def check_nondegenerate(self):
        alg = self.algebra
        space = alg.space
        for k in space.degrees():
            rows, cols = space.labels_in(k), space.labels_in(-k - alg.pairing_degree)
            if len(rows) != len(cols):
                return False, {"degree": k, "reason": "no dual partner of the same dimension"}
            entries = {(i, j): alg.pair(a, b) for i, a in enumerate(rows) for j, b in enumerate(cols)}
            if matrix_rank(sparse_matrix(entries, (len(rows), len(cols)))) != len(rows):
                return False, {"degree": k, "reason": "pairing is degenerate"}
        return True, None

    def validate(self, arity_budget=None):
        if self.algebra.pairing_degree != 0:
            return False, {"reason": "boundary pairing has degree {}".format(self.algebra.pairing_degree)}
        for check in (self.check_nondegenerate, lambda: check_jacobi(self.algebra, arity_budget),
                      lambda: check_cyclic(self.algebra, arity_budget, include_differential=True)):
            result, witness = check()
            if not result:
                return False, witness
        return True, None


class BoundaryCondition(object):
    """Isotropic subspace L of the boundary fields and an isotropic complement L', both given by spanning vectors"""

    def __init__(self, name, lagrangian, complement):
        self.name = name
        self.lagrangian = [{label: Fraction(c) for label, c in v.items() if c} for v in lagrangian]
        self.complement = [{label: Fraction(c) for label, c in v.items() if c} for v in complement]

    def lagrangian_algebra(self, alg, arity_budget=None):
        """L on labels ("L", i) with the brackets it inherits from the boundary algebra"""
        budget = CONFIG.ARITY_BUDGET if arity_budget is None else arity_budget
        basis = [(("L", i), _degree_of_vector(alg, v)) for i, v in enumerate(self.lagrangian)]
        decomposition = _Decomposition(alg, self)

        def restricted(inputs):
            image = alg.apply_bracket([self.lagrangian[i] for i in inputs])
            lagrangian_part, complement_part = decomposition.split(image)
            if complement_part:
                raise BoundaryConditionException("L is not closed under l{} at {}".format(len(inputs), list(inputs)))
            return {("L", j): c for j, c in lagrangian_part.items()}

        differential = {("L", i): restricted((i,)) for i in range(len(self.lagrangian))}
        brackets = {}
        for k in alg.arities():
            if k > budget:
                continue
            entries = {}
            for inputs in combinations_with_replacement(range(len(self.lagrangian)), k):
                image = restricted(inputs)
                if image:
                    entries[tuple(("L", i) for i in inputs)] = image
            brackets[k] = entries
        return CyclicLInfinity(GradedVectorSpace(basis), differential, brackets,
                               name="{}:{}".format(alg.name, self.name))

    def lagrangian_complex(self, alg):
        """L as a complex on labels ("L", i) with the induced differential"""
        return self.lagrangian_algebra(alg).complex()

    def inclusion(self, alg):
        """The inclusion of L into the boundary fields, as a map of complexes"""
        return GradedMap.from_columns(self.lagrangian_complex(alg), alg.complex(), 0,
                                      {("L", i): v for i, v in enumerate(self.lagrangian)})

    def to_json(self):
        return {
            "name": self.name,
            "lagrangian": [BBKUtils.format_vector(v) for v in self.lagrangian],
            "complement": [BBKUtils.format_vector(v) for v in self.complement]
        }


class _Decomposition(object):
    """Coordinates of boundary vectors in the basis L + L'"""

    def __init__(self, alg, condition):
        self.alg = alg
        self.condition = condition
        self._inverse = {}
        vectors = [("L", i, v) for i, v in enumerate(condition.lagrangian)]
        vectors += [("C", i, v) for i, v in enumerate(condition.complement)]
        for k in alg.space.degrees():
            labels = alg.space.labels_in(k)
            chosen = [(kind, i, v) for kind, i, v in vectors if _degree_of_vector(alg, v) == k]
            if len(chosen) != len(labels):
                raise BoundaryConditionException("L + L' does not match the boundary fields in degree {}".format(k))
            row = {label: n for n, label in enumerate(labels)}
            entries = {(row[label], col): c for col, (_, _, v) in enumerate(chosen) for label, c in v.items()}
            try:
                inverse = sparse_matrix(entries, (len(labels), len(labels))).to_dense().inv()
            except DMNonInvertibleMatrixError:
                raise BoundaryConditionException("L + L' is not the whole boundary in degree {}".format(k))
            self._inverse[k] = (labels, chosen, inverse.to_dod())

    def split(self, vector):
        """({i: L coordinate}, {i: L' coordinate})"""
        lagrangian, complement = {}, {}
        for label, coeff in vector.items():
            labels, chosen, inverse = self._inverse[self.alg.degree(label)]
            col = labels.index(label)
            for row, values in inverse.items():
                value = values.get(col)
                if value:
                    kind, i, _ = chosen[row]
                    target = lagrangian if kind == "L" else complement
                    BBKUtils.add_into(target, {i: coeff * to_scalar(value)})
        return lagrangian, complement


def _in_span(labels, span, vector, span_rank):
    return _span_rank(labels, span + [vector]) == span_rank


def validate_boundary_condition(boundary, condition, arity_budget=None):
    """
    Checks isotropy of L, closure of L under every boundary bracket and the supplied isotropic complement L'.
    Returns (True, {}) or (False, {BoundaryViolation: detail}) with every violated requirement listed.
    """
    alg = boundary.algebra if isinstance(boundary, BoundaryTheory) else boundary
    budget = CONFIG.ARITY_BUDGET if arity_budget is None else arity_budget
    violations = {}
    lagrangian, complement = condition.lagrangian, condition.complement
    for v in lagrangian + complement:
        _degree_of_vector(alg, v)

    for first, second in combinations_with_replacement(range(len(lagrangian)), 2):
        value = alg.pair_vectors(lagrangian[first], lagrangian[second])
        if value:
            violations[BoundaryViolation.ISOTROPY] = "<L{}, L{}> = {}".format(first, second,
                                                                          BBKUtils.format_rational(value))
            break

    labels = list(alg.labels)
    span_rank = _span_rank(labels, lagrangian)
    for k in alg.orders():
        if k > budget:
            continue
        for inputs in combinations_with_replacement(range(len(lagrangian)), k):
            image = alg.apply_bracket([lagrangian[i] for i in inputs])
            if image and not _in_span(labels, lagrangian, image, span_rank):
                violations[BoundaryViolation.BRACKET_CLOSURE] = "l{} of L{} leaves L".format(k, list(inputs))
                break
        if BoundaryViolation.BRACKET_CLOSURE in violations:
            break

    if not complement and len(lagrangian) < len(labels):
        violations[BoundaryViolation.COMPLEMENT] = "no complement L' supplied"
    else:
        for first, second in combinations_with_replacement(range(len(complement)), 2):
            value = alg.pair_vectors(complement[first], complement[second])
            if value:
                violations[BoundaryViolation.COMPLEMENT] = "L' is not isotropic at <L'{}, L'{}>".format(first, second)
                break
        if BoundaryViolation.COMPLEMENT not in violations:
            try:
                _Decomposition(alg, condition)
            except BoundaryConditionException as e:
                violations[BoundaryViolation.COMPLEMENT] = str(e)
    return not violations, violations


class BulkBoundarySystem(object):
    """
    Boundary theory on a mesh of the normal interval [0, delta].
    The fields on an open are the direct sum over its cells of (boundary fields) x (capped forms on the cell).
    """

    def __init__(self, boundary, mesh=None, cap=None, condition=None, pairing_scale=1, name=""):
        self.boundary = boundary if isinstance(boundary, BoundaryTheory) else BoundaryTheory(boundary)
        self.algebra = self.boundary.algebra
        self.mesh = mesh or CellMesh(BBKUtils.mesh_breakpoints())
        self.cap = CONFIG.POLY_DEGREE_CAP if cap is None else cap
        self.condition = condition
        self.pairing_scale = pairing_scale
        self.name = name or self.boundary.name
        self._cache = {}

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def with_condition(self, condition):
        return BulkBoundarySystem(self.boundary, self.mesh, self.cap, condition, self.pairing_scale, self.name)

    @property
    def bulk(self):
        """The fields on the whole interval as a single cell"""
        return self._cached("bulk", lambda: TensorAlgebra(self.algebra, IntervalModel(self.mesh.delta, self.cap),
                                                          self.pairing_scale))

    def cell_algebra(self, cell):
        return self._cached(("cell", cell), lambda: TensorAlgebra(
            self.algebra, IntervalModel(self.mesh.cell_length(cell), self.cap), self.pairing_scale))

    def fields(self, open_set):
        return self._cached(("fields", open_set), lambda: DirectSumAlgebra(
            [(cell, self.cell_algebra(cell)) for cell in sorted(open_set.cells)], has_boundary=True,
            name="E{!r}".format(open_set)))

    def boundary_space(self, open_set):
        if open_set.boundary:
            return self.algebra.complex()
        return CochainComplex([])

    def rho(self, open_set):
        """Boundary value at t = 0 of the fields on cell 0, when the open contains the boundary point"""
        def build():
            fields = self.fields(open_set)
            target = self.boundary_space(open_set)
            columns = {}
            if open_set.boundary:
                model = self.cell_algebra(0).model
                for label in fields.labels:
                    cell, (a, w) = label
                    value = model.value_at_zero(w) if cell == 0 else 0
                    if value:
                        columns[label] = {a: value}
            return GradedMap.from_columns(fields.complex(), target, 0, columns)
        return self._cached(("rho", open_set), build)

    def _condition(self, condition):
        condition = condition or self.condition
        if condition is None:
            raise BoundaryConditionException("No boundary condition configured for {}".format(self.name))
        return condition

    def quotient_complex(self, condition=None):
        """C = E_boundary / L on labels ("C", i) of the complement vectors"""
        condition = self._condition(condition)

        def build():
            decomposition = _Decomposition(self.algebra, condition)
            basis = [(("C", i), _degree_of_vector(self.algebra, v)) for i, v in enumerate(condition.complement)]
            columns = {}
            for i, v in enumerate(condition.complement):
                image = {}
                for label, coeff in v.items():
                    BBKUtils.add_into(image, self.algebra.ell1(label), coeff)
                columns[("C", i)] = {("C", j): c for j, c in decomposition.split(image)[1].items()}
            return CochainComplex.from_columns(basis, columns)
        return self._cached(("quotient", condition.name), build)

    def complement_projection(self, condition=None):
        condition = self._condition(condition)

        def build():
            decomposition = _Decomposition(self.algebra, condition)
            target = self.quotient_complex(condition)
            columns = {a: {("C", i): c for i, c in decomposition.split({a: 1})[1].items()}
                       for a in self.algebra.labels}
            return GradedMap.from_columns(self.algebra.complex(), target, 0, columns)
        return self._cached(("projection", condition.name), build)

    def condition_map(self, open_set, condition=None, rho=None):
        """P o rho on the fields of an open, with target C (or zero away from the boundary)"""
        rho = rho or self.rho(open_set)
        if not open_set.boundary:
            return GradedMap.zero(rho.source, CochainComplex([]))
        return self.complement_projection(condition).compose(rho)

    def conditioned(self, open_set, condition=None):
        """E_L on an open: the kernel of P o rho with the inherited brackets and pairing"""
        condition = self._condition(condition)

        def build():
            complex_, inclusion = kernel_complex(self.condition_map(open_set, condition))
            return SubAlgebra(self.fields(open_set), complex_, inclusion, has_boundary=False,
                              name="E_{}{!r}".format(condition.name, open_set))
        return self._cached(("conditioned", condition.name, open_set), build)

    def compact_fields(self, open_set):
        """
        Compactly supported fields: forms vanishing at both ends of every cell, except the left end of cell 0
        when the open contains the boundary point.
        Returns (complex, {label: (cell, boundary label, form degree, PolyForm)}).
        """
        def build():
            basis = []
            forms = {}
            for cell in sorted(open_set.cells):
                model = self.cell_algebra(cell).model
                both_ends = not (cell == 0 and open_set.boundary)
                for a, da in self.algebra.space.basis:
                    for name, fdeg, form in model.compact_forms(both_ends):
                        label = (cell, a, name)
                        basis.append((label, da + fdeg))
                        forms[label] = (cell, a, fdeg, form)
            columns = {}
            for label, (cell, a, fdeg, form) in forms.items():
                image = {(cell, b, label[2]): c for b, c in self.algebra.ell1(a).items()}
                if fdeg == 0:
                    sign = -1 if self.algebra.degree(a) % 2 else 1
                    derivative = form.d()
                    for (j, _), c in self.cell_algebra(cell).model.coordinates(derivative).items():
                        BBKUtils.add_into(image, {(cell, a, ("c", j, 1)): sign * c})
                columns[label] = image
            return CochainComplex.from_columns(basis, columns), forms
        return self._cached(("compact", open_set), build)

    def compact_pairing(self, open_set, field_label, compact_label):
        """h(f, f') between a field basis element and a compactly supported basis element"""
        _, forms = self.compact_fields(open_set)
        cell, (a, w) = field_label
        other_cell, b, fdeg, form = forms[compact_label]
        if cell != other_cell:
            return Fraction(0)
        value = self.algebra.pair(a, b)
        if not value:
            return Fraction(0)
        model = self.cell_algebra(cell).model
        sign = -1 if model.degree(w) % 2 and self.algebra.degree(b) % 2 else 1
        return self.pairing_scale * sign * value * integrate_product(model.form(w), form)

    def compact_kernels(self, open_set):
        """The compactly supported basis of compact_fields written as field vectors on the open"""
        _, forms = self.compact_fields(open_set)
        kernels = []
        for _, (cell, a, _, form) in sorted(forms.items(), key=lambda item: repr(item[0])):
            model = self.cell_algebra(cell).model
            kernels.append({(cell, (a, w)): c for w, c in model.coordinates(form).items()})
        return kernels


def build_bulk(boundary, length=1, cap=None, mesh=None, pairing_scale=1):
    return BulkBoundarySystem(boundary, mesh or CellMesh([0, length]), cap, pairing_scale=pairing_scale)


def _check_far_end(alg, vector):
    values = {}
    for (a, w), coeff in vector.items():
        BBKUtils.add_into(values, {a: coeff * alg.model.value_at_end(w)})
    if values:
        raise ValueError("Field does not vanish at the far end of the interval")


def boundary_defect(sys, first, second):
    """
    (LHS, RHS) of <l1 e1, e2> + (-1)^|e1| <e1, l1 e2> = orientation * <rho e1, rho e2>_boundary
    for fields of the single-cell bulk vanishing at the far end.
    """
    alg = sys.bulk
    _check_far_end(alg, first)
    _check_far_end(alg, second)
    lhs = Fraction(0)
    l1_second = alg.apply_bracket([second])
    for degree, part in homogeneous_parts(alg, first).items():
        sign = -1 if degree % 2 else 1
        lhs += alg.pair_vectors(alg.apply_bracket([part]), second) + sign * alg.pair_vectors(part, l1_second)
    rho_first, rho_second = {}, {}
    for vector, rho in ((first, rho_first), (second, rho_second)):
        for (a, w), coeff in vector.items():
            BBKUtils.add_into(rho, {a: coeff * alg.model.value_at_zero(w)})
    rhs = CONFIG.BOUNDARY_ORIENTATION * sys.algebra.pair_vectors(rho_first, rho_second)
    return lhs, rhs


def compact_bulk_basis(sys):
    """Spanning set of the single-cell bulk fields vanishing at the far end, as vectors"""
    alg = sys.bulk
    vectors = []
    for a in sys.algebra.labels:
        for _, _, form in alg.model.compact_forms(both_ends=False):
            vectors.append({(a, w): c for w, c in alg.model.coordinates(form).items()})
    return vectors


def random_compact_field(sys, rng):
    field = {}
    for vector in compact_bulk_basis(sys):
        BBKUtils.add_into(field, vector, BBKUtils.random_rational(rng))
    return field


def check_isotropic(sys, arity_budget=None):
    """The boundary defect identity on a spanning set of compactly supported fields, and cyclicity of l_k, k >= 2"""
    basis = compact_bulk_basis(sys)
    for i, first in enumerate(basis):
        for j, second in enumerate(basis):
            lhs, rhs = boundary_defect(sys, first, second)
            if lhs != rhs:
                return False, {"fields": [i, j], "lhs": BBKUtils.format_rational(lhs),
                               "rhs": BBKUtils.format_rational(rhs)}
    return check_cyclic(sys.bulk, arity_budget, include_differential=False)


def check_lagrangian(sys, open_set):
    """
    Psi(f, g)(f') = h(f, f') - <g, rho f'> from Cone(rho) to the dual of the compactly supported fields is a
    quasi-isomorphism. On a lone boundary cell both sides must be acyclic.
    """
    rho = sys.rho(open_set)
    source = cone(rho)
    compact, forms = sys.compact_fields(open_set)
    target = dual(compact)
    columns = {}
    for label in sys.fields(open_set).labels:
        columns[("src", label)] = {c: value for c in compact.labels
                                   for value in [sys.compact_pairing(open_set, label, c)] if value}
    for g in sys.boundary_space(open_set).labels:
        image = {}
        for c, (cell, b, fdeg, form) in forms.items():
            if cell == 0 and open_set.boundary and fdeg == 0:
                value = sys.algebra.pair(g, b) * form.eval0()
                if value:
                    image[c] = -value
        columns[("tgt", g)] = image
    psi = GradedMap.from_columns(source, target, 0, columns)
    try:
        check_chain_map(psi)
    except ChainMapException as e:
        return False, {"open": repr(open_set), "reason": str(e)}
    result, degree = is_quasi_iso(psi)
    if not result:
        return False, {"open": repr(open_set), "degree": degree}
    if open_set.boundary and len(open_set.cells) == 1:
        if not is_acyclic(source) or not is_acyclic(target):
            return False, {"open": repr(open_set), "reason": "boundary cell complexes are not acyclic"}
    return True, None


def impose(sys, condition, open_set, arity_budget=None):
    """E_L on an open, after validating the condition"""
    result, violations = validate_boundary_condition(sys.boundary, condition, arity_budget)
    if not result:
        raise BoundaryConditionException("Condition {} is invalid: {}".format(
            condition.name, ", ".join(v.value for v in violations)))
    return sys.conditioned(open_set, condition)


def conditioned_compact_fields(sys, condition):
    """Spanning set of E_L on the boundary cell vanishing at the far end, as vectors of the cell fields"""
    model = sys.cell_algebra(0).model
    vectors = []
    for _, _, form in model.compact_forms(both_ends=False):
        coordinates = model.coordinates(form)
        if form.eval0():
            sources = condition.lagrangian
        else:
            sources = [{a: 1} for a in sys.algebra.labels]
        for source in sources:
            vectors.append({(0, (a, w)): ca * cw for a, ca in source.items() for w, cw in coordinates.items()})
    return vectors


def check_restored_cyclicity(sys, condition, arity_budget=None):
    """On E_L the arity 1 cyclicity holds again against every conditioned field, as do the higher identities"""
    open_set = OpenSet([0], True)
    conditioned = sys.conditioned(open_set, condition)
    fields = sys.fields(open_set)
    for i, first in enumerate(conditioned_compact_fields(sys, condition)):
        conditioned.coordinates(first)
        parts = homogeneous_parts(fields, first)
        for label in conditioned.labels:
            second = conditioned.vector(label)
            l1_second = fields.apply_bracket([second])
            lhs = Fraction(0)
            for degree, part in parts.items():
                sign = -1 if degree % 2 else 1
                lhs += (fields.pair_vectors(fields.apply_bracket([part]), second)
                        + sign * fields.pair_vectors(part, l1_second))
            if lhs:
                return False, {"field": i, "against": str(label), "residual": BBKUtils.format_rational(lhs)}
    return check_cyclic(conditioned, arity_budget, include_differential=False)


class Splitting(object):
    """
    E = E_L + C on the boundary cell: P = (L' coordinates) o rho and I(c) = chi * c, with chi(0) = 1, chi(delta) = 0.
    """

    def __init__(self, sys, condition=None, chi=None):
        self.sys = sys
        self.condition = sys._condition(condition)
        self.open_set = OpenSet([0], True)
        model = sys.cell_algebra(0).model
        self.chi = chi or cutoff(model.length, CONFIG.CUTOFF_EXPONENT, sys.cap)
        validate_cutoff(self.chi)
        self.fields = sys.fields(self.open_set).complex()
        self.quotient = sys.quotient_complex(self.condition)
        self.P = sys.condition_map(self.open_set, self.condition)
        chi_coordinates = model.coordinates(self.chi)
        columns = {}
        for i, v in enumerate(self.condition.complement):
            image = {}
            for a, ca in v.items():
                for w, cw in chi_coordinates.items():
                    BBKUtils.add_into(image, {(0, (a, w)): ca * cw})
            columns[("C", i)] = image
        self.I = GradedMap.from_columns(self.quotient, self.fields, 0, columns)

    def verify(self):
        identity_C = GradedMap.identity(self.quotient)
        if not self.P.compose(self.I).equals(identity_C):
            return False, {"reason": "P o I is not the identity"}
        identity_E = GradedMap.identity(self.fields)
        complement = identity_E.sub(self.I.compose(self.P))
        if not complement.compose(complement).equals(complement):
            return False, {"reason": "id - I o P is not idempotent"}
        if not self.P.compose(complement).is_zero():
            return False, {"reason": "id - I o P does not land in E_L"}
        model = self.sys.cell_algebra(0).model
        for label in self.quotient.labels:
            values = {}
            for (_, (a, w)), c in self.I.column(label).items():
                BBKUtils.add_into(values, {a: c * model.value_at_end(w)})
            if values:
                return False, {"reason": "I({}) does not vanish at the far end".format(label)}
        conditioned = self.sys.conditioned(self.open_set, self.condition)
        inclusion = conditioned.inclusion
        if not self.P.compose(inclusion).is_zero():
            return False, {"reason": "the image of the dual of P does not annihilate E_L"}
        for k in self.fields.degrees():
            # the annihilator of E_L in (E^v)^-k has dimension dim E^k - dim E_L^k
            if self.fields.dim(k) - inclusion.rank(k) != self.P.rank(k):
                return False, {"reason": "the image of the dual of P is not the annihilator of E_L in degree {}"
                               .format(-k)}
        return True, None


def splitting(sys, condition=None, chi=None):
    return Splitting(sys, condition, chi)


def strict_pullback_model_check(sys, condition, open_set, omitted=()):
    """
    rho is degreewise surjective and E_L is quasi-isomorphic to the homotopy pullback
    (E + L -> E_boundary)[-1] built from rho and the inclusion of L.
    """
    condition = sys._condition(condition)
    if not open_set.boundary:
        return True, None
    full = sys.fields(open_set).complex()
    omitted = set(omitted)
    fields = restrict_complex(full, [label for label in full.labels if label not in omitted]) if omitted else full
    full_rho = sys.rho(open_set)
    boundary = sys.boundary_space(open_set)
    rho = GradedMap.from_columns(fields, boundary, 0, {label: full_rho.column(label) for label in fields.labels})
    for k in boundary.degrees():
        if rho.rank(k) != boundary.dim(k):
            return False, {"open": repr(open_set), "degree": k, "reason": "rho is not surjective"}

    lagrangian = condition.lagrangian_complex(sys.algebra)
    total = direct_sum(fields, lagrangian)
    columns = {(0, label): rho.column(label) for label in fields.labels}
    for i, v in enumerate(condition.lagrangian):
        columns[(1, ("L", i))] = {a: -c for a, c in v.items()}
    pi = GradedMap.from_columns(total, boundary, 0, columns)
    pullback = shift(cone(pi), -1)

    kernel, inclusion = kernel_complex(sys.condition_map(open_set, condition, rho))
    decomposition = _Decomposition(sys.algebra, condition)
    columns = {}
    for label in kernel.labels:
        vector = inclusion.column(label)
        image = {("src", (0, e)): c for e, c in vector.items()}
        lagrangian_part, _ = decomposition.split(rho.apply(vector))
        for i, c in lagrangian_part.items():
            image[("src", (1, ("L", i)))] = c
        columns[label] = image
    comparison = GradedMap.from_columns(kernel, pullback, 0, columns)
    try:
        check_chain_map(comparison)
    except ChainMapException as e:
        return False, {"open": repr(open_set), "reason": str(e)}
    result, degree = is_quasi_iso(comparison)
    if not result:
        return False, {"open": repr(open_set), "degree": degree,
                       "kernel": cohomology_dimensions(kernel), "pullback": cohomology_dimensions(pullback)}
    return True, None
