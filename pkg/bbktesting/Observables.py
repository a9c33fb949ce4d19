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
Classical observables on the opens of a cell mesh.

Observables on U are the Sym-truncated functionals on the conditioned fields, in the basis dual to sorted words of
field labels, with the Chevalley-Eilenberg differential. Extension maps are pulled back along restriction of
fields. Kernel-presented observables are polynomials in generators O_phi(e) = <phi, e> and carry the degree +1
bracket {O_phi, O_psi} = <phi, psi>.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import comb

from sympy import Poly, symbols
from sympy.polys.monomials import itermonomials

from . import Config as CONFIG
from .BBKUtils import BBKUtils, PreconditionException
from .GradedLinalg import (ChainMapException, GradedMap, check_chain_map, cohomology_dimensions, dual, is_quasi_iso,
                           matrix_rank, pivot_columns, restrict_complex, solve_linear, sparse_matrix)
from .LInfinity import DirectSumAlgebra, ce_chains


class ObservableComplex(object):
    """Sym^{<= T} of the dual of the fields with the CE differential; vectors are {word: Fraction}"""

    def __init__(self, algebra, truncation=None, word_filter=None, name=""):
        self.algebra = algebra
        self.truncation = CONFIG.SYM_TRUNCATION if truncation is None else truncation
        self.name = name or algebra.name
        self.complex = dual(ce_chains(algebra, self.truncation, word_filter))

    @property
    def words(self):
        return self.complex.labels

    def __contains__(self, word):
        return word in self.complex

    def degree(self, word):
        return self.complex.degree_of(word)

    @staticmethod
    def weight(word):
        return len(word)

    def unit(self):
        return {(): Fraction(1)}

    def letter(self, label):
        return {(label,): Fraction(1)}

    def differential(self, vector):
        return self.complex.d.apply(vector)

    def _letter_degree(self, word):
        return sum(self.algebra.degree(x) for x in word)

    def product(self, first, second):
        """Graded commutative product of functionals, dropping words beyond the truncation"""
        result = {}
        for u, cu in first.items():
            du = self._letter_degree(u)
            for v, cv in second.items():
                if len(u) + len(v) > self.truncation:
                    continue
                sign, word = self.algebra._sort(list(u) + list(v))
                if not sign or word not in self.complex:
                    continue
                multiplicity = 1
                for x in set(word):
                    multiplicity *= comb(word.count(x), u.count(x))
                if du % 2 and self._letter_degree(v) % 2:
                    sign = -sign
                BBKUtils.add_into(result, {word: sign * multiplicity * cu * cv})
        return result

    def preserves_weight(self):
        return all(len(word) == len(target) for word in self.words
                   for target in self.complex.d.column(word))

    def weight_complex(self, weight):
        return restrict_complex(self.complex, [word for word in self.words if len(word) == weight])

    def cohomology_by_weight(self):
        """{weight: {degree: dim H}} for complexes whose differential preserves the Sym weight"""
        if not self.preserves_weight():
            raise ValueError("The differential of {} does not preserve the Sym weight".format(self.name))
        return {weight: cohomology_dimensions(self.weight_complex(weight))
                for weight in sorted({len(word) for word in self.words})}


def pullback(source, target, letter_map):
    """
    The map source -> target of observables induced by a degree 0 map of fields, letter_map from the target's fields
    to the source's fields, through Sym of letter_map.
    """
    columns = {word: {} for word in source.words}
    for word in target.words:
        images = [list(letter_map.column(x).items()) for x in word]
        for terms in product(*images):
            coeff = Fraction(1)
            for _, c in terms:
                coeff *= c
            sign, image_word = source.algebra._sort([label for label, _ in terms])
            if not sign or image_word not in source:
                continue
            BBKUtils.add_into(columns[image_word], {word: sign * coeff})
    return GradedMap.from_columns(source.complex, target.complex, 0, columns)


def support(word):
    return frozenset(label[0] for label in word)


class ConditionedFields(object):
    """E_L on each open of a bulk-boundary system"""

    def __init__(self, sys, condition=None):
        self.sys = sys
        self.condition = condition or sys.condition
        self._restrictions = {}

    def algebra(self, open_set):
        return self.sys.conditioned(open_set, self.condition)

    def restriction(self, larger, smaller):
        key = (larger, smaller)
        if key not in self._restrictions:
            source, target = self.algebra(larger), self.algebra(smaller)
            columns = {}
            for label in source.labels:
                vector = {x: c for x, c in source.vector(label).items() if x[0] in smaller.cells}
                columns[label] = target.coordinates(vector)
            self._restrictions[key] = GradedMap.from_columns(source.complex(), target.complex(), 0, columns)
        return self._restrictions[key]


class ConstantFields(object):
    """Constant fields: the boundary algebra on each cell, replaced by L on the boundary cell"""

    def __init__(self, boundary_algebra, lagrangian_algebra, inclusion):
        self.boundary_algebra = boundary_algebra
        self.lagrangian_algebra = lagrangian_algebra
        self.inclusion = inclusion
        self._algebras = {}
        self._restrictions = {}

    def _part(self, open_set, cell):
        return self.lagrangian_algebra if cell == 0 and open_set.boundary else self.boundary_algebra

    def algebra(self, open_set):
        if open_set not in self._algebras:
            self._algebras[open_set] = DirectSumAlgebra(
                [(cell, self._part(open_set, cell)) for cell in sorted(open_set.cells)], has_boundary=False,
                name="S{!r}".format(open_set))
        return self._algebras[open_set]

    def restriction(self, larger, smaller):
        key = (larger, smaller)
        if key not in self._restrictions:
            source, target = self.algebra(larger), self.algebra(smaller)
            columns = {}
            for label in source.labels:
                cell, inner = label
                if cell not in smaller.cells:
                    continue
                if self._part(larger, cell) is self._part(smaller, cell):
                    columns[label] = {label: Fraction(1)}
                else:
                    columns[label] = {(cell, a): c for a, c in self.inclusion.column(inner).items()}
            self._restrictions[key] = GradedMap.from_columns(source.complex(), target.complex(), 0, columns)
        return self._restrictions[key]


class FactorizationAssignment(object):
    """Observables on every open of a mesh with the extension maps between them"""

    def __init__(self, fields, truncation=None, name=""):
        self.fields = fields
        self.truncation = CONFIG.SYM_TRUNCATION if truncation is None else truncation
        self.name = name
        self._observables = {}
        self._extensions = {}

    def observables(self, open_set):
        if open_set not in self._observables:
            self._observables[open_set] = ObservableComplex(self.fields.algebra(open_set), self.truncation)
        return self._observables[open_set]

    def extension(self, smaller, larger):
        if not smaller.issubset(larger):
            raise ValueError("{!r} is not contained in {!r}".format(smaller, larger))
        key = (smaller, larger)
        if key not in self._extensions:
            self._extensions[key] = pullback(self.observables(smaller), self.observables(larger),
                                             self.fields.restriction(larger, smaller))
        return self._extensions[key]

    def structure_map(self, inputs, larger):
        """Extend each (open, observable) input to the larger open and multiply; the opens must be disjoint"""
        for i, (first, _) in enumerate(inputs):
            if not first.issubset(larger):
                raise ValueError("{!r} is not contained in {!r}".format(first, larger))
            for second, _ in inputs[i + 1:]:
                if not first.is_disjoint(second):
                    raise ValueError("Opens {!r} and {!r} are not disjoint".format(first, second))
        target = self.observables(larger)
        result = target.unit()
        for open_set, observable in inputs:
            result = target.product(result, self.extension(open_set, larger).apply(observable))
        return result


def check_prefactorization(assignment, opens):
    """Extension maps between the given opens are chain maps and compose along every U < V < W"""
    for smaller in opens:
        for larger in opens:
            if not smaller.issubset(larger):
                continue
            extension = assignment.extension(smaller, larger)
            try:
                check_chain_map(extension)
            except ChainMapException as e:
                return False, {"smaller": repr(smaller), "larger": repr(larger), "reason": str(e)}
            for middle in opens:
                if smaller.issubset(middle) and middle.issubset(larger):
                    composed = assignment.extension(middle, larger).compose(assignment.extension(smaller, middle))
                    if not composed.equals(extension):
                        return False, {"reason": "extensions do not compose",
                                       "opens": [repr(smaller), repr(middle), repr(larger)]}
    return True, None


def obs_complex(sys, open_set, truncation=None, condition=None):
    return ObservableComplex(sys.conditioned(open_set, condition), truncation).complex


def is_weiss(larger, cover, truncation):
    """Every set of at most 'truncation' points of the open lies in one member of the cover"""
    points = sorted(larger.points(), key=str)
    for size in range(1, truncation + 1):
        for chosen in combinations(points, size):
            if not any(set(chosen) <= member.points() for member in cover):
                return False
    return True


def weiss_covers(mesh, larger, truncation, punctured=False):
    """Every Weiss cover of an open by opens of the mesh"""
    candidates = [open_set for open_set in mesh.opens(punctured=punctured) if open_set.issubset(larger)]
    for size in range(1, len(candidates) + 1):
        for cover in combinations(candidates, size):
            if is_weiss(larger, cover, truncation):
                yield list(cover)


def _intersection(cover, simplex):
    result = cover[simplex[0]]
    for i in simplex[1:]:
        result = result.intersection(cover[i])
    return result


def weiss_cech_check(assignment, larger, cover):
    """
    The augmented Cech complex  ... -> sum F(U_i n U_j) -> sum F(U_i) -> F(V)  is exact.
    Extension maps preserve the cell support of a word, so exactness is checked block by block on
    (support, degree) with exact ranks.
    """
    for member in cover:
        if not member.issubset(larger):
            raise ValueError("Cover member {!r} is not contained in {!r}".format(member, larger))
    if not is_weiss(larger, cover, assignment.truncation):
        raise PreconditionException("Cover {} of {!r} is not Weiss at level {}".format(
            cover, larger, assignment.truncation))
    top = assignment.observables(larger)
    simplices = [simplex for size in range(1, len(cover) + 1) for simplex in combinations(range(len(cover)), size)]
    opens = {simplex: _intersection(cover, simplex) for simplex in simplices}
    grouped = {}

    def blocks(simplex):
        if simplex not in grouped:
            observables = top if simplex is None else assignment.observables(opens[simplex])
            groups = {}
            for word in observables.words:
                groups.setdefault((support(word), observables.degree(word)), []).append(word)
            grouped[simplex] = groups
        return grouped[simplex]

    for cells, degree in sorted(blocks(None), key=lambda key: (sorted(key[0]), key[1])):
        def chain(simplex):
            return blocks(simplex).get((cells, degree), [])

        levels = [[(None, word) for word in chain(None)]]
        for size in range(1, len(cover) + 1):
            levels.append([(simplex, word) for simplex in simplices if len(simplex) == size
                           for word in chain(simplex)])
        ranks = [0]
        for p in range(1, len(levels)):
            rows = {entry: i for i, entry in enumerate(levels[p - 1])}
            entries = {}
            for col, (simplex, word) in enumerate(levels[p]):
                faces = [(1, None)] if len(simplex) == 1 else \
                    [((-1) ** j, simplex[:j] + simplex[j + 1:]) for j in range(len(simplex))]
                for sign, face in faces:
                    face_open = larger if face is None else opens[face]
                    image = assignment.extension(opens[simplex], face_open).column(word)
                    for target_word, c in image.items():
                        row = rows[(face, target_word)]
                        entries[(row, col)] = entries.get((row, col), 0) + sign * c
            ranks.append(matrix_rank(sparse_matrix(entries, (len(levels[p - 1]), len(levels[p])))))
        ranks.append(0)
        for p, level in enumerate(levels):
            if len(level) != ranks[p] + ranks[p + 1]:
                return False, {"open": repr(larger), "cover": [repr(member) for member in cover],
                               "support": sorted(cells), "degree": degree, "cech_level": p - 1}
    return True, None


def symmetric_power_dimension(degrees, weight):
    """
    {total degree: dim} of Sym^weight of a graded space with basis elements of the given degrees.
    Even letters are counted by monomials, odd letters by subsets.
    """
    even = [d for d in degrees if d % 2 == 0]
    odd = [d for d in degrees if d % 2]
    variables = symbols("y0:{}".format(len(even))) if even else ()
    result = {}
    for j in range(min(weight, len(odd)) + 1):
        m = weight - j
        if variables:
            even_parts = [sum(e * d for e, d in zip(Poly(monomial, *variables).monoms()[0], even))
                          for monomial in itermonomials(list(variables), m, m)]
        else:
            even_parts = [0] if m == 0 else []
        for chosen in combinations(odd, j):
            for part in even_parts:
                total = part + sum(chosen)
                result[total] = result.get(total, 0) + 1
    return result


def symmetric_power_total(even, odd, weight):
    total = 0
    for j in range(min(weight, odd) + 1):
        m = weight - j
        monomials = comb(even + m - 1, m) if even else int(m == 0)
        total += monomials * comb(odd, j)
    return total


class KernelPool(object):
    """Kernels phi (homogeneous fields) indexing the generators O_phi"""

    def __init__(self, fields, observables=None):
        self.fields = fields
        self.observables = observables
        self.kernels = []
        self.degrees = []
        self._expansions = {}
        self._differentials = {}

    def add(self, kernel):
        kernel = {label: Fraction(c) for label, c in kernel.items() if c}
        if not kernel:
            raise ValueError("Kernel must be nonzero")
        degrees = {self.fields.degree(label) for label in kernel}
        if len(degrees) != 1:
            raise ValueError("Kernel {} is not homogeneous".format(BBKUtils.format_vector(kernel)))
        for i, existing in enumerate(self.kernels):
            if existing == kernel:
                return i
        self.kernels.append(kernel)
        self.degrees.append(degrees.pop() + self.fields.pairing_degree)
        return len(self.kernels) - 1

    def generator(self, kernel, coeff=1):
        if not any(kernel.values()):
            return KernelObservable(self)
        return KernelObservable(self, {(self.add(kernel),): Fraction(coeff)})

    def pairing(self, first, second):
        return self.fields.pair_vectors(self.kernels[first], self.kernels[second])

    def differential(self, index):
        """
        d O_phi = -O_{l1 phi} plus the terms <phi, l_k(e, ..., e)> / k! of the higher brackets.
        The bracket terms are solved for as a polynomial in the generators of the pool, which therefore needs an
        observable complex when the fields carry brackets.
        """
        linear = self.generator(self.fields.apply_bracket([self.kernels[index]]), -1)
        if not self.fields.arities():
            return linear
        if index not in self._differentials:
            self._differentials[index] = linear + self._bracket_terms(index, linear)
        return self._differentials[index]

    def _bracket_terms(self, index, linear):
        observables = self.require_observables()
        target = observables.differential(self.expansion(index))
        BBKUtils.add_into(target, linear.expand(), -1)
        if not target:
            return KernelObservable(self)
        monomials = self._monomials(self.degrees[index] + 1, observables.truncation)
        expansions = [KernelObservable(self, {term: 1}).expand() for term in monomials]
        words = sorted(set(target).union(*expansions), key=repr)
        rows = {word: i for i, word in enumerate(words)}
        entries = {(rows[word], col): c for col, vector in enumerate(expansions) for word, c in vector.items()}
        solution = solve_linear(entries, (len(words), len(monomials)), {rows[word]: c for word, c in target.items()})
        if solution is None:
            raise PreconditionException("d O_{} is not a polynomial in the kernels {}".format(
                index, ", ".join(BBKUtils.format_vector(kernel) for kernel in self.kernels)))
        return KernelObservable(self, {monomials[col]: c for col, c in solution.items()})

    def _independent(self):
        """Indices of the kernels which are linearly independent of the earlier ones"""
        labels = sorted({label for kernel in self.kernels for label in kernel}, key=repr)
        rows = {label: i for i, label in enumerate(labels)}
        entries = {(rows[label], col): c for col, kernel in enumerate(self.kernels) for label, c in kernel.items()}
        return pivot_columns(sparse_matrix(entries, (len(labels), len(self.kernels))))

    def _monomials(self, degree, truncation):
        """Products of at least two independent generators with the given total degree"""
        letters = self._independent()
        monomials = []
        for length in range(2, truncation + 1):
            for term in combinations_with_replacement(letters, length):
                if sum(self.degrees[i] for i in term) != degree:
                    continue
                if any(self.degrees[i] % 2 and term.count(i) > 1 for i in term):
                    continue
                monomials.append(term)
        return monomials

    def require_observables(self):
        if self.observables is None:
            raise PreconditionException("Kernel pool has no observable complex to expand into")
        return self.observables

    def expansion(self, index):
        if index not in self._expansions:
            observables = self.require_observables()
            vector = {}
            for label in observables.algebra.labels:
                value = self.fields.pair_vectors(self.kernels[index], observables.algebra.vector(label))
                if value:
                    vector[(label,)] = value
            self._expansions[index] = vector
        return self._expansions[index]


class KernelObservable(object):
    """Polynomial in the generators of a KernelPool; terms are sorted tuples of generator indices"""

    def __init__(self, pool, terms=None):
        self.pool = pool
        self.terms = {}
        for term, coeff in (terms or {}).items():
            sign, ordered = self._sort(term)
            if sign and coeff:
                BBKUtils.add_into(self.terms, {ordered: sign * Fraction(coeff)})

    def _sort(self, term):
        return BBKUtils.graded_sort(list(term), [self.pool.degrees[i] for i in term], lambda i: i)

    def _term_degree(self, term):
        return sum(self.pool.degrees[i] for i in term)

    def degrees(self):
        return {self._term_degree(term) for term in self.terms}

    @property
    def degree(self):
        degrees = self.degrees()
        if len(degrees) > 1:
            raise ValueError("Kernel observable is not homogeneous")
        return degrees.pop() if degrees else 0

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        result = KernelObservable(self.pool, self.terms)
        BBKUtils.add_into(result.terms, other.terms)
        return result

    def scaled(self, scalar):
        return KernelObservable(self.pool, {term: scalar * c for term, c in self.terms.items()})

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        result = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                sign, word = self._sort(u + v)
                if sign:
                    BBKUtils.add_into(result, {word: sign * cu * cv})
        return KernelObservable(self.pool, result)

    def _monomial(self, term):
        return KernelObservable(self.pool, {tuple(term): 1})

    def d(self):
        """The derivation extending the pool's d O_phi"""
        result = KernelObservable(self.pool)
        for term, coeff in self.terms.items():
            for i, index in enumerate(term):
                sign = -1 if self._term_degree(term[:i]) % 2 else 1
                piece = self._monomial(term[:i]) * self.pool.differential(index) * self._monomial(term[i + 1:])
                result = result + piece.scaled(sign * coeff)
        return result

    def _bracket_generator(self, term, index):
        """{a_1 ... a_m, b} = sum_i (-1)^((|a_(i+1)| + ... + |a_m|)(|b| + 1)) <a_i, b> a_1 ... a_i^ ... a_m"""
        result = KernelObservable(self.pool)
        b_degree = self.pool.degrees[index]
        for i, a in enumerate(term):
            value = self.pool.pairing(a, index)
            if not value:
                continue
            sign = -1 if (self._term_degree(term[i + 1:]) * (b_degree + 1)) % 2 else 1
            result = result + self._monomial(term[:i] + term[i + 1:]).scaled(sign * value)
        return result

    def _bracket_terms(self, first, second):
        result = KernelObservable(self.pool)
        shifted = self._term_degree(first) + 1
        for j, index in enumerate(second):
            sign = -1 if (shifted * self._term_degree(second[:j])) % 2 else 1
            inner = self._bracket_generator(first, index)
            if inner.is_zero():
                continue
            result = result + (self._monomial(second[:j]) * inner * self._monomial(second[j + 1:])).scaled(sign)
        return result

    def bracket(self, other):
        result = KernelObservable(self.pool)
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                result = result + self._bracket_terms(u, v).scaled(cu * cv)
        return result

    def expand(self):
        """The same observable in the dual word basis of the pool's observable complex"""
        observables = self.pool.require_observables()
        result = {}
        for term, coeff in self.terms.items():
            vector = observables.unit()
            for index in term:
                vector = observables.product(vector, self.pool.expansion(index))
            BBKUtils.add_into(result, vector, coeff)
        return result

    def __repr__(self):
        return " + ".join("{}*O{}".format(BBKUtils.format_rational(c), list(term))
                          for term, c in sorted(self.terms.items())) or "0"


def p0_bracket(first, second):
    """Degree +1 bracket of kernel-presented observables"""
    for observable in (first, second):
        if not isinstance(observable, KernelObservable):
            raise PreconditionException("The bracket is only defined on kernel-presented observables")
    if first.pool is not second.pool:
        raise ValueError("Observables come from different kernel pools")
    return first.bracket(second)


def _residual(observable):
    if observable.pool.observables is not None:
        return BBKUtils.format_vector(observable.expand())
    return repr(observable)


def _vanishes(observable):
    if observable.pool.observables is not None:
        return not observable.expand()
    return observable.is_zero()


def check_antisymmetry(first, second):
    """{F, G} = -(-1)^((|F|+1)(|G|+1)) {G, F}"""
    sign = -1 if ((first.degree + 1) * (second.degree + 1)) % 2 else 1
    residual = p0_bracket(first, second) + p0_bracket(second, first).scaled(sign)
    if not _vanishes(residual):
        return False, {"residual": _residual(residual)}
    return True, None


def check_jacobi_identity(first, second, third):
    """{F, {G, H}} = {{F, G}, H} + (-1)^((|F|+1)(|G|+1)) {G, {F, H}}"""
    sign = -1 if ((first.degree + 1) * (second.degree + 1)) % 2 else 1
    residual = (p0_bracket(first, p0_bracket(second, third)) - p0_bracket(p0_bracket(first, second), third)
                - p0_bracket(second, p0_bracket(first, third)).scaled(sign))
    if not _vanishes(residual):
        return False, {"residual": _residual(residual)}
    return True, None


def check_leibniz(first, second, third):
    """Derivation rules in each slot: {F, GH} and {FG, H}"""
    sign = -1 if ((first.degree + 1) * second.degree) % 2 else 1
    right = (p0_bracket(first, second * third) - p0_bracket(first, second) * third
             - (second * p0_bracket(first, third)).scaled(sign))
    if not _vanishes(right):
        return False, {"slot": "right", "residual": _residual(right)}
    sign = -1 if (second.degree * (third.degree + 1)) % 2 else 1
    left = (p0_bracket(first * second, third) - first * p0_bracket(second, third)
            - (p0_bracket(first, third) * second).scaled(sign))
    if not _vanishes(left):
        return False, {"slot": "left", "residual": _residual(left)}
    return True, None


def check_bracket_degree(first, second):
    """{F, G} is homogeneous of degree |F| + |G| + 1"""
    result = p0_bracket(first, second)
    expected = first.degree + second.degree + 1
    observables = first.pool.observables
    if observables is not None:
        degrees = {observables.degree(word) for word in result.expand()}
    else:
        degrees = result.degrees()
    if degrees and degrees != {expected}:
        return False, {"expected": expected, "found": sorted(degrees)}
    return True, None


def check_d_compatibility(first, second):
    """
    d{F, G} = {dF, G} + (-1)^(|F|+1) {F, dG}, and d agrees with the CE differential on expansions.
    Fails when d leaves the polynomials in the pool's kernels.
    """
    try:
        sign = -1 if (first.degree + 1) % 2 else 1
        residual = (p0_bracket(first, second).d() - p0_bracket(first.d(), second)
                    - p0_bracket(first, second.d()).scaled(sign))
        differentials = [observable.d() for observable in (first, second)]
    except PreconditionException as e:
        if first.pool.observables is None:
            raise
        return False, {"reason": str(e)}
    if not _vanishes(residual):
        return False, {"residual": _residual(residual)}
    observables = first.pool.observables
    if observables is not None:
        for observable, differential in zip((first, second), differentials):
            difference = BBKUtils.add_into(observables.differential(observable.expand()), differential.expand(), -1)
            if difference:
                return False, {"reason": "d of a kernel-presented observable differs from the CE differential",
                               "residual": BBKUtils.format_vector(difference)}
    return True, None


class AMFactorization(object):
    """
    The factorization algebra of a commutative dg algebra A on interior cells and a right A-module M on the
    boundary cell, here A = O(E_boundary) and M = O(L) acting through restriction along L -> E_boundary.
    """

    def __init__(self, boundary_algebra, lagrangian_algebra, inclusion, truncation=None, name=""):
        self.truncation = CONFIG.SYM_TRUNCATION if truncation is None else truncation
        self.name = name
        self.inclusion = inclusion
        self.algebra = ObservableComplex(boundary_algebra, self.truncation)
        self.module = ObservableComplex(lagrangian_algebra, self.truncation)
        self.restriction = pullback(self.algebra, self.module, inclusion)
        self.fields = ConstantFields(boundary_algebra, lagrangian_algebra, inclusion)
        self.assignment = FactorizationAssignment(self.fields, self.truncation, name)

    @classmethod
    def from_system(cls, sys, condition=None, truncation=None):
        condition = condition or sys.condition
        return cls(sys.algebra, condition.lagrangian_algebra(sys.algebra), condition.inclusion(sys.algebra),
                   truncation, name="{}:{}".format(sys.name, condition.name))

    def multiply(self, first, second):
        return self.algebra.product(first, second)

    def act(self, module_element, algebra_element):
        return self.module.product(module_element, self.restriction.apply(algebra_element))

    def _small(self, observables):
        return [observables.unit()] + [{word: Fraction(1)} for word in observables.words if len(word) == 1]

    def verify(self):
        """Unit, associativity, restriction as an algebra map and the right module axioms on weight <= 1 elements"""
        try:
            check_chain_map(self.restriction)
        except ChainMapException as e:
            return False, {"axiom": "restriction is a chain map", "reason": str(e)}
        algebra_elements = self._small(self.algebra)
        module_elements = self._small(self.module)
        for a in algebra_elements:
            if self.multiply(self.algebra.unit(), a) != a or self.multiply(a, self.algebra.unit()) != a:
                return False, {"axiom": "unit", "element": BBKUtils.format_vector(a)}
            for b in algebra_elements:
                ab = self.multiply(a, b)
                if self.restriction.apply(ab) != self.module.product(self.restriction.apply(a),
                                                                     self.restriction.apply(b)):
                    return False, {"axiom": "restriction is multiplicative",
                                   "elements": [BBKUtils.format_vector(a), BBKUtils.format_vector(b)]}
                for c in algebra_elements:
                    if self.multiply(ab, c) != self.multiply(a, self.multiply(b, c)):
                        return False, {"axiom": "associativity", "elements": [BBKUtils.format_vector(x)
                                                                              for x in (a, b, c)]}
        for m in module_elements:
            if self.act(m, self.algebra.unit()) != m:
                return False, {"axiom": "module unit", "element": BBKUtils.format_vector(m)}
            for a in algebra_elements:
                for b in algebra_elements:
                    if self.act(self.act(m, a), b) != self.act(m, self.multiply(a, b)):
                        return False, {"axiom": "module associativity",
                                       "elements": [BBKUtils.format_vector(x) for x in (m, a, b)]}
        return True, None


def fam_builder(boundary_algebra, lagrangian_algebra, inclusion, truncation=None, name=""):
    factorization = AMFactorization(boundary_algebra, lagrangian_algebra, inclusion, truncation, name)
    result, witness = factorization.verify()
    if not result:
        raise PreconditionException("Module axioms fail for {}: {}".format(name or "factorization", witness))
    return factorization


def constants_inclusion(sys, condition, candidate, open_set):
    """S(U) -> E_L(U): a constant field c on a cell goes to c (x) 1"""
    source = candidate.fields.algebra(open_set)
    target = sys.conditioned(open_set, condition)
    columns = {}
    for label in source.labels:
        cell, inner = label
        if cell == 0 and open_set.boundary:
            ambient = {(0, (a, (0, 0))): c for a, c in candidate.inclusion.column(inner).items()}
        else:
            ambient = {(cell, (inner, (0, 0))): Fraction(1)}
        columns[label] = target.coordinates(ambient)
    return GradedMap.from_columns(source.complex(), target.complex(), 0, columns)


def am_compare(sys, candidate, condition=None, opens=None):
    """
    The observables of the system and of the candidate are compared through the inclusion of constant fields:
    on every open the induced map is a quasi-isomorphism, it commutes with extension maps and with products.
    """
    condition = condition or sys.condition
    target = FactorizationAssignment(ConditionedFields(sys, condition), candidate.truncation)
    source = candidate.assignment
    opens = sorted(opens if opens is not None else sys.mesh.opens())
    maps = {}
    for open_set in opens:
        comparison = pullback(target.observables(open_set), source.observables(open_set),
                              constants_inclusion(sys, condition, candidate, open_set))
        try:
            check_chain_map(comparison)
        except ChainMapException as e:
            return False, {"open": repr(open_set), "reason": str(e)}
        result, degree = is_quasi_iso(comparison)
        if not result:
            return False, {"open": repr(open_set), "degree": degree}
        maps[open_set] = comparison
    for smaller in opens:
        for larger in opens:
            if smaller == larger or not smaller.issubset(larger):
                continue
            left = maps[larger].compose(target.extension(smaller, larger))
            right = source.extension(smaller, larger).compose(maps[smaller])
            if not left.equals(right):
                return False, {"square": [repr(smaller), repr(larger)]}
    largest = opens[-1]
    observables = target.observables(largest)
    letters = [word for word in observables.words if len(word) <= 1]
    comparison = maps[largest]
    for i, u in enumerate(letters):
        for v in letters[i:]:
            product_image = comparison.apply(observables.product({u: 1}, {v: 1}))
            image_product = source.observables(largest).product(comparison.column(u), comparison.column(v))
            if product_image != image_product:
                return False, {"open": repr(largest), "reason": "comparison is not multiplicative",
                               "words": [str(u), str(v)]}
    return True, None
