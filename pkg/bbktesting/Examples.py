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
Worked computations: Lie algebra cohomology with symmetric coefficients, the local functional complexes of BF
theory on the half-plane, the boundary functional J_x, the boundary pushforward comparison and the registry of
named examples run from the command line.
"""

from fractions import Fraction

from . import Config as CONFIG
from .BBKUtils import BBKUtils
from .Descriptors import load_registered
from .GradedLinalg import (ChainMapException, CochainComplex, GradedMap, check_chain_map, cohomology_dimensions,
                           cone, is_quasi_iso, kernel_complex, matrix_rank, shift, sparse_matrix)
from .IntervalModel import CellMesh, IntervalModel, OpenSet, TensorModel, integrate_product
from .LInfinity import CyclicLInfinity, DirectSumAlgebra, SubAlgebra, TensorAlgebra, abelian, ce_chains, sl2
from .Observables import (AMFactorization, FactorizationAssignment, ConditionedFields, ObservableComplex,
                          am_compare, symmetric_power_dimension, symmetric_power_total)


def _coefficient_labels(g):
    return {g.dual_label(a) for a in g.labels}


def coefficient_cochains(g, weights, k=0):
    """
    C(g, Sym^w(g[k])) for w in 'weights', as functionals on g[1] + g^v[-k] with the coadjoint brackets.
    Functionals on g^v are polynomials in g, so the coefficients carry the adjoint action.
    A word's weight is its number of coefficient letters; its CE degree is its degree plus w * k.
    """
    weights = set(weights)
    coefficients = _coefficient_labels(g)

    def word_filter(word):
        return sum(1 for x in word if x in coefficients) in weights

    algebra = g.semidirect_dual(k, pairing=False)
    return ObservableComplex(algebra, max(g.dim + max(weights), 1), word_filter,
                             name="C({}, Sym{})".format(g.name, sorted(weights)))


def word_weight(g, word):
    coefficients = _coefficient_labels(g)
    return sum(1 for x in word if x in coefficients)


def lie_cohomology(g, weight=0, k=0):
    """{CE degree: dim H^degree(g, Sym^weight(g[k]))} for degrees 0..dim g, with g in the adjoint representation"""
    result, witness = g.check_jacobi()
    if not result:
        raise ValueError("{} fails the Jacobi identity: {}".format(g.name, witness))
    dims = cohomology_dimensions(coefficient_cochains(g, [weight], k).complex)
    return {degree: dims.get(degree - weight * k, 0) for degree in range(g.dim + 1)}


def invariants_dimension(g, weight):
    """dim Sym^weight(g)^g, the kernel of the action on degree 0 cochains"""
    complex_ = coefficient_cochains(g, [weight]).complex
    return complex_.dim(0) - complex_.differential_rank(0)


def _relabel(complex_, tag, labels):
    keep = set(labels)
    basis = [((tag, label), degree) for label, degree in complex_.basis if label in keep]
    columns = {(tag, label): {(tag, y): c for y, c in complex_.d.column(label).items()} for label, _ in basis}
    return CochainComplex.from_columns(basis, columns, check=False)


class LocalFunctionalComplex(object):
    """
    Two-term total complex of local functionals on the half-plane at a fixed B-weight:
    X = C_red(g, Sym^w(g))[2] mapping to Y, with Y = Sym^w(g) in degree -2 for variant B and
    Y = C_red(g)[2] at weight 0 for variant A. The total complex is Cone(X -> Y)[-1].
    """

    def __init__(self, g, variant="B", weight=1):
        if variant not in ("A", "B"):
            raise ValueError("Unknown variant {!r}".format(variant))
        self.g = g
        self.variant = variant
        self.weight = weight
        if variant == "B" and weight < 1:
            # constant functionals are quotiented out and B-weight 0 carries nothing else
            self.x = self.y = CochainComplex([])
        else:
            cochains = coefficient_cochains(g, [weight]).complex
            reduced = [word for word in cochains.labels if word]
            self.x = shift(_relabel(cochains, "X", reduced), 2)
            if variant == "B":
                self.y = CochainComplex([(("Y", word), -2) for word in reduced if cochains.degree_of(word) == 0])
            elif weight == 0:
                self.y = shift(_relabel(cochains, "Y", reduced), 2)
            else:
                self.y = CochainComplex([])
        columns = {label: ({("Y", label[1]): 1} if ("Y", label[1]) in self.y else {}) for label in self.x.labels}
        self.connecting = GradedMap.from_columns(self.x, self.y, 0, columns)
        self.total = shift(cone(self.connecting), -1)

    def cohomology(self):
        return {k: dim for k, dim in cohomology_dimensions(self.total).items() if dim}

    def dimension(self):
        return sum(self.cohomology().values())


def local_functional_complex(g, variant="B", weight=1):
    return LocalFunctionalComplex(g, variant, weight)


def closed_form(g, weight):
    """H^{>=1}(g, Sym^w g) in degree j - 2 and Sym^w(g) / invariants in degree -1"""
    result = {}
    for j, dim in lie_cohomology(g, weight).items():
        if j >= 1 and dim:
            result[j - 2] = dim
    quotient = symmetric_power_total(g.dim, 0, weight) - invariants_dimension(g, weight)
    if quotient:
        result[-1] = result.get(-1, 0) + quotient
    return result


def o_gB_halfplane(g, weight_cap=None):
    """B-variant cohomology per B-weight 1..W with the closed-form cross-check and the weight-grading check"""
    weight_cap = CONFIG.WEIGHT_CAP if weight_cap is None else weight_cap
    weights = {}
    for weight in range(1, weight_cap + 1):
        complex_ = LocalFunctionalComplex(g, "B", weight)
        direct = complex_.cohomology()
        expected = closed_form(g, weight)
        weights[weight] = {
            "cohomology": direct,
            "closed_form": expected,
            "dimension": sum(direct.values()),
            "agrees": direct == expected
        }
    combined = coefficient_cochains(g, range(1, weight_cap + 1)).complex
    preserved = all(word_weight(g, target) == word_weight(g, word)
                    for word in combined.labels for target in combined.d.column(word))
    return {"algebra": g.name, "weights": weights, "weight_preserved": preserved}


def jx_functional(g, x):
    """J_x as a vector of the weight-1 B-variant total complex, and whether it is closed"""
    total = LocalFunctionalComplex(g, "B", 1).total
    vector = {("tgt", ("Y", (g.dual_label(a),))): Fraction(c) for a, c in x.items() if c}
    return vector, not total.d.apply(vector)


def jx_span(g, xs):
    """Closedness of each J_x, their independence in cohomology and whether they span it"""
    complex_ = LocalFunctionalComplex(g, "B", 1)
    total = complex_.total
    labels = total.labels_in(-1)
    row = {label: i for i, label in enumerate(labels)}
    boundaries = [total.d.column(label) for label in total.labels_in(-2)]
    functionals = []
    closed = True
    for x in xs:
        vector, is_closed = jx_functional(g, x)
        closed = closed and is_closed
        functionals.append(vector)

    def rank(vectors):
        entries = {(row[label], col): c for col, vector in enumerate(vectors) for label, c in vector.items()}
        return matrix_rank(sparse_matrix(entries, (len(labels), len(vectors))))

    gain = rank(boundaries + functionals) - rank(boundaries)
    return {
        "closed": closed,
        "independent": gain == len(xs),
        "spans": gain == complex_.dimension(),
        "rank": gain
    }


class PushforwardComparison(object):
    """
    BF theory on strips (boundary cell) x [0, 1) with A vanishing at y = 0, against the boundary factorization
    algebra Sym(Omega_c (x) g[1]) on the boundary mesh. Theta(w (x) a)(e) = (-1)^|w (x) a| int w ^ i*(B_a).
    """

    def __init__(self, g, truncation=None, mesh=None, cap=1, boundary_cap=2):
        self.g = g
        self.truncation = CONFIG.WEISS_SYM_TRUNCATION if truncation is None else truncation
        self.mesh = mesh or CellMesh.uniform(2)
        self.cap = cap
        self.boundary_cap = boundary_cap
        self.algebra = g.semidirect_dual(0, pairing=False)
        self.connection_labels = list(g.labels)
        self.normal = IntervalModel(1, cap)
        self._cache = {}

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def strip_algebra(self, cell):
        return self._cached(("strip", cell), lambda: TensorAlgebra(
            self.algebra, TensorModel(IntervalModel(self.mesh.cell_length(cell), self.cap), self.normal, self.cap)))

    def conditioned(self, open_set):
        def build():
            fields = DirectSumAlgebra([(cell, self.strip_algebra(cell)) for cell in sorted(open_set.cells)],
                                      has_boundary=False, name="E{!r}".format(open_set))
            basis = []
            columns = {}
            for cell in sorted(open_set.cells):
                x_model = self.strip_algebra(cell).model.x
                for a in self.connection_labels:
                    sign = -1 if self.algebra.degree(a) % 2 else 1
                    for u, du in x_model.basis():
                        label = (cell, (a, u))
                        basis.append((label, self.algebra.degree(a) + du))
                        columns[label] = {(cell, (a, v)): sign * c for v, c in x_model.differential(u).items()}
            boundary_values = CochainComplex.from_columns(basis, columns)
            pullback_columns = {}
            for label in fields.labels:
                cell, (b, (u, v)) = label
                value = self.normal.value_at_zero(v)
                if b in self.connection_labels and value:
                    pullback_columns[label] = {(cell, (b, u)): value}
            pullback = GradedMap.from_columns(fields.complex(), boundary_values, 0, pullback_columns)
            complex_, inclusion = kernel_complex(pullback)
            return SubAlgebra(fields, complex_, inclusion, name="E_B{!r}".format(open_set))
        return self._cached(("conditioned", open_set), build)

    def bulk_observables(self, open_set):
        return self._cached(("bulk", open_set), lambda: ObservableComplex(self.conditioned(open_set),
                                                                          self.truncation))

    def compact_forms(self, open_set):
        forms = {}
        for cell in sorted(open_set.cells):
            model = IntervalModel(self.mesh.cell_length(cell), self.boundary_cap)
            for name, fdeg, form in model.compact_forms(both_ends=True):
                forms[(cell, name)] = (fdeg, form, model)
        return forms

    def boundary_algebra(self, open_set):
        def build():
            forms = self.compact_forms(open_set)
            basis = []
            differential = {}
            for (cell, name), (fdeg, form, model) in forms.items():
                for a in self.connection_labels:
                    basis.append(((cell, name, a), fdeg - 1))
                    if fdeg == 0:
                        image = {}
                        for (j, _), c in model.coordinates(form.d()).items():
                            BBKUtils.add_into(image, {(cell, ("c", j, 1), a): c})
                        differential[(cell, name, a)] = image
            return CyclicLInfinity(basis, differential, name="F{!r}".format(open_set))
        return self._cached(("boundary", open_set), build)

    def boundary_observables(self, open_set):
        return self._cached(("boundary_obs", open_set),
                            lambda: ce_chains(self.boundary_algebra(open_set), self.truncation))

    def theta(self, open_set, letter):
        """Theta of one boundary letter as a weight-1 functional on the conditioned fields"""
        cell, name, a = letter
        fdeg, form, _ = self.compact_forms(open_set)[(cell, name)]
        sign = -1 if (fdeg - 1) % 2 else 1
        conditioned = self.conditioned(open_set)
        x_model = self.strip_algebra(cell).model.x
        b = self.g.dual_label(a)
        result = {}
        for label in conditioned.labels:
            value = Fraction(0)
            for (field_cell, (c, (u, v))), coeff in conditioned.vector(label).items():
                if field_cell != cell or c != b:
                    continue
                boundary_value = self.normal.value_at_zero(v)
                if boundary_value:
                    value += coeff * boundary_value * integrate_product(form, x_model.form(u))
            if value:
                result[(label,)] = sign * value
        return result

    def comparison(self, open_set):
        """Phi: the multiplicative extension of Theta from boundary words to bulk observables"""
        source = self.boundary_observables(open_set)
        target = self.bulk_observables(open_set)
        letters = {}
        columns = {}
        for word in source.labels:
            image = target.unit()
            for letter in word:
                if letter not in letters:
                    letters[letter] = self.theta(open_set, letter)
                image = target.product(image, letters[letter])
            columns[word] = image
        return GradedMap.from_columns(source, target.complex, 0, columns)

    def compare(self, open_set):
        phi = self.comparison(open_set)
        try:
            check_chain_map(phi)
        except ChainMapException as e:
            return False, {"open": repr(open_set), "reason": str(e)}
        result, degree = is_quasi_iso(phi)
        if not result:
            return False, {"open": repr(open_set), "degree": degree}
        return True, None

    def opens(self):
        return [OpenSet((), False)] + [OpenSet(cells.cells, False) for cells in self.mesh.opens()]


def bf_pushforward_compare(g, truncation=None, mesh=None, cap=1, boundary_cap=2):
    """Phi is a quasi-isomorphism on every open of the boundary mesh, the empty open included"""
    comparison = PushforwardComparison(g, truncation, mesh, cap, boundary_cap)
    dimensions = {}
    for open_set in comparison.opens():
        result, witness = comparison.compare(open_set)
        if not result:
            return False, witness
        dimensions[repr(open_set)] = {
            "boundary": cohomology_dimensions(comparison.boundary_observables(open_set)),
            "bulk": cohomology_dimensions(comparison.bulk_observables(open_set).complex)
        }
    return True, dimensions


def constants_oracle(candidate, open_set, weight):
    """Sym^weight of the dual of the constant fields, for constant fields without differential"""
    algebra = candidate.fields.algebra(open_set)
    if algebra.has_differential():
        return None
    return symmetric_power_dimension([-algebra.degree(label) for label in algebra.labels], weight)


def system_example(descriptor, truncation=None):
    """Observables of a registered system on every open of the factorization mesh, compared with F_{A,M}"""
    truncation = CONFIG.WEISS_SYM_TRUNCATION if truncation is None else truncation
    sys = descriptor.system(mesh=CellMesh(BBKUtils.mesh_breakpoints(CONFIG.FACTORIZATION_MESH_BREAKPOINTS)),
                            cap=CONFIG.WEISS_POLY_DEGREE_CAP)
    candidate = AMFactorization.from_system(sys, truncation=truncation)
    axioms, axiom_witness = candidate.verify()
    assignment = FactorizationAssignment(ConditionedFields(sys), truncation)
    opens = {}
    oracle_agrees = True
    for open_set in sys.mesh.opens():
        observables = assignment.observables(open_set)
        entry = {"cohomology": cohomology_dimensions(observables.complex)}
        if observables.preserves_weight():
            by_weight = observables.cohomology_by_weight()
            entry["by_weight"] = by_weight
            oracle = {weight: constants_oracle(candidate, open_set, weight) for weight in by_weight}
            if None not in oracle.values():
                entry["oracle"] = oracle
                oracle_agrees = oracle_agrees and all(
                    {k: v for k, v in by_weight[w].items() if v} == oracle[w] for w in by_weight)
        opens[repr(open_set)] = entry
    compared, witness = am_compare(sys, candidate)
    return {
        "passed": axioms and compared and oracle_agrees,
        "module_axioms": axioms,
        "comparison": compared,
        "oracle_agrees": oracle_agrees,
        "opens": opens,
        "witness": axiom_witness or witness
    }


def halfplane_example(truncation=None, weight_cap=None):
    g = sl2()
    halfplane = o_gB_halfplane(g, weight_cap or 1)
    span = jx_span(g, [{"e": 1}, {"f": 1}, {"h": 1}])
    weight_one = halfplane["weights"][1]
    return {
        "passed": (weight_one["dimension"] == 3 and weight_one["agrees"] and halfplane["weight_preserved"]
                   and span["closed"] and span["spans"]),
        "weight_1_dimension": weight_one["dimension"],
        "halfplane": halfplane,
        "jx": span
    }


def pushforward_example(truncation=None, weight_cap=None):
    result, detail = bf_pushforward_compare(abelian(), truncation)
    return {"passed": result, "detail": detail}


EXAMPLES = {
    "toplmech": ("Topological mechanics with L = span{q}: observables against F_{O(V),O(L)}", "toplmech"),
    "bf1d-abelian": ("Abelian BF on the half-line with the B condition against F_{A,M}", "bf1d-abelian"),
    "bf1d-sl2": ("sl2 BF on the half-line with the B condition against F_{A,M}", "bf1d-sl2"),
    "bf2d-sl2-weight1": ("Local functionals of sl2 BF on the half-plane in B-weight 1 and the J_x classes",
                         halfplane_example),
    "bf-pushforward-abelian": ("Boundary pushforward of abelian BF observables against Sym(Omega_c (x) g[1])",
                               pushforward_example)
}


def list_examples():
    return [(name, description) for name, (description, _) in sorted(EXAMPLES.items())]


def run_example(name, truncation=None, weight_cap=None):
    if name not in EXAMPLES:
        raise KeyError("Unknown example {!r}".format(name))
    description, runner = EXAMPLES[name]
    if isinstance(runner, str):
        report = system_example(load_registered(runner), truncation)
    else:
        report = runner(truncation, weight_cap)
    report["example"] = name
    report["description"] = description
    return report
