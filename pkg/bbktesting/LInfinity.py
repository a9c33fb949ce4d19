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
Cyclic L-infinity algebras on finite graded spaces of fields.

Brackets l_k act on the un-shifted fields, are graded symmetric for the field degrees and raise degree by one.
A graded Lie algebra L enters through E = L[1] with l_2(sx, sy) = (-1)^|sx| s[x, y].
Pairings are graded antisymmetric: <y, x> = -(-1)^(|x||y|) <x, y>, nonzero only when |x| + |y| + p = 0.
"""

from fractions import Fraction
from itertools import combinations, product, permutations
from math import factorial

from . import Config as CONFIG
from .BBKUtils import BBKUtils, BudgetException
from .GradedLinalg import CochainComplex, GradedVectorSpace, dual


class CyclicLInfinity(object):
    """Explicit cyclic L-infinity structure given by structure constants on a labelled basis"""

    def __init__(self, space, differential=None, brackets=None, pairing=None, pairing_degree=0,
                 symplectic=False, has_boundary=False, name=""):
        self.space = space if isinstance(space, GradedVectorSpace) else GradedVectorSpace(space)
        self.name = name
        self.pairing_degree = int(pairing_degree)
        self.symplectic = symplectic
        self.has_boundary = has_boundary
        self.poly_cap = None
        self._index = {label: i for i, label in enumerate(self.space.labels)}
        self._differential = {}
        self._brackets = {}
        self._pairing = {}
        self._cache = {}
        for label, image in (differential or {}).items():
            self._store_differential(label, image)
        for arity, entries in sorted((brackets or {}).items()):
            for inputs, image in entries.items():
                if len(inputs) != arity:
                    raise ValueError("Bracket entry {!r} does not have arity {}".format(inputs, arity))
                self._store_bracket(tuple(inputs), image)
        for (first, second), value in (pairing or {}).items():
            self._store_pairing(first, second, Fraction(value))

    def _check_label(self, label):
        if label not in self._index:
            raise ValueError("Unknown field label {!r}".format(label))

    def _store_differential(self, label, image):
        self._check_label(label)
        image = {y: Fraction(c) for y, c in image.items() if c}
        for y in image:
            self._check_label(y)
            if self.degree(y) != self.degree(label) + 1:
                raise ValueError("l1({!r}) -> {!r} does not raise degree by one".format(label, y))
        if image:
            self._differential[label] = image

    def _store_bracket(self, inputs, image):
        if len(inputs) < 2:
            raise ValueError("Brackets of arity below 2 belong to the differential")
        for label in inputs:
            self._check_label(label)
        image = {y: Fraction(c) for y, c in image.items() if c}
        sign, ordered = self._sort(inputs)
        if sign == 0:
            if image:
                raise ValueError("Bracket {!r} repeats an odd input and must vanish".format(inputs))
            return
        expected = sum(self.degree(x) for x in inputs) + 1
        for y in image:
            self._check_label(y)
            if self.degree(y) != expected:
                raise ValueError("Bracket {!r} -> {!r} has the wrong degree".format(inputs, y))
        normalized = {y: sign * c for y, c in image.items()}
        existing = self._brackets.get(ordered)
        if existing is not None and existing != normalized:
            raise ValueError("Bracket {!r} is not graded symmetric with an earlier entry".format(inputs))
        if normalized:
            self._brackets[ordered] = normalized

    def _store_pairing(self, first, second, value):
        self._check_label(first)
        self._check_label(second)
        if not value:
            return
        df, ds = self.degree(first), self.degree(second)
        if df + ds + self.pairing_degree != 0:
            raise ValueError("Pairing <{!r}, {!r}> does not have degree {}".format(first, second, self.pairing_degree))
        partner = -value if (df * ds) % 2 == 0 else value
        for key, entry in (((first, second), value), ((second, first), partner)):
            existing = self._pairing.get(key)
            if existing is not None and existing != entry:
                raise ValueError("Pairing <{!r}, {!r}> is not graded antisymmetric".format(first, second))
            self._pairing[key] = entry

    @property
    def labels(self):
        return self.space.labels

    def index(self, label):
        return self._index[label]

    def degree(self, label):
        return self.space.degree_of(label)

    def pdeg(self, label):
        return 0

    def _sort(self, labels):
        return BBKUtils.graded_sort(list(labels), [self.degree(x) for x in labels], self.index)

    def arities(self):
        """Arities >= 2 carrying a nonzero bracket"""
        return sorted({len(inputs) for inputs in self._brackets})

    def has_differential(self):
        if "has_differential" not in self._cache:
            self._cache["has_differential"] = any(self.ell1(label) for label in self.labels)
        return self._cache["has_differential"]

    def orders(self):
        return ([1] if self.has_differential() else []) + self.arities()

    def has_pairing(self):
        return bool(self._pairing)

    def _differential_of(self, label):
        return self._differential.get(label, {})

    def _bracket_sorted(self, ordered):
        return self._brackets.get(ordered, {})

    def ell1(self, label):
        key = ("l1", label)
        if key not in self._cache:
            self._cache[key] = self._differential_of(label)
        return self._cache[key]

    def bracket(self, labels):
        """l_k on basis labels in any order"""
        labels = tuple(labels)
        if len(labels) == 1:
            return self.ell1(labels[0])
        sign, ordered = self._sort(labels)
        if sign == 0:
            return {}
        key = ("lk", ordered)
        if key not in self._cache:
            self._cache[key] = self._bracket_sorted(ordered)
        return {y: sign * c for y, c in self._cache[key].items()}

    def pair(self, first, second):
        return self._pairing.get((first, second), Fraction(0))

    def apply_bracket(self, vectors):
        result = {}
        for terms in product(*[list(v.items()) for v in vectors]):
            coeff = 1
            for _, c in terms:
                coeff *= c
            if coeff:
                BBKUtils.add_into(result, self.bracket(tuple(label for label, _ in terms)), coeff)
        return result

    def pair_vectors(self, first, second):
        total = Fraction(0)
        for a, ca in first.items():
            for b, cb in second.items():
                total += ca * cb * self.pair(a, b)
        return total

    def vector(self, label):
        return {label: Fraction(1)}

    def coordinates(self, vector):
        for label in vector:
            self._check_label(label)
        return dict(vector)

    def complex(self):
        if "complex" not in self._cache:
            self._cache["complex"] = CochainComplex.from_columns(self.space.basis,
                                                                 {label: self.ell1(label) for label in self.labels})
        return self._cache["complex"]

    def to_json(self):
        brackets = {}
        for inputs, image in self._brackets.items():
            entries = brackets.setdefault(len(inputs), [])
            for output, coeff in image.items():
                entries.append({"inputs": [self.index(x) for x in inputs], "output": self.index(output),
                                "coeff": BBKUtils.format_rational(coeff)})
        return {
            "basis": [{"label": str(label), "degree": degree} for label, degree in self.space.basis],
            "differential": [{"input": self.index(x), "output": self.index(y), "coeff": BBKUtils.format_rational(c)}
                             for x, image in self._differential.items() for y, c in image.items()],
            "brackets": [{"arity": arity, "entries": entries} for arity, entries in sorted(brackets.items())],
            "pairing": {
                "degree": self.pairing_degree,
                "entries": [{"first": self.index(a), "second": self.index(b), "value": BBKUtils.format_rational(v)}
                            for (a, b), v in self._pairing.items() if self.index(a) <= self.index(b)]
            }
        }


class TensorAlgebra(CyclicLInfinity):
    """
    Boundary algebra tensored with a commutative dg algebra of forms.
    l1(a (x) w) = l1(a) (x) w + (-1)^|a| a (x) dw
    l_k(a_1 (x) w_1, ...) = (-1)^(sum_{i<j} |w_i||a_j|) l_k(a_1, ...) (x) w_1 ... w_k
    <a (x) w, b (x) v> = (-1)^(|w||b|) <a, b> int w v
    """

    def __init__(self, boundary, model, pairing_scale=1, name=""):
        self.boundary = boundary
        self.model = model
        self.pairing_scale = Fraction(pairing_scale)
        basis = [((a, w), da + dw) for a, da in boundary.space.basis for w, dw in model.basis()]
        CyclicLInfinity.__init__(self, GradedVectorSpace(basis), pairing_degree=boundary.pairing_degree - 1,
                                 has_boundary=True, name=name or boundary.name)
        self.poly_cap = model.cap

    def pdeg(self, label):
        return self.model.pdeg(label[1])

    def arities(self):
        return self.boundary.arities()

    def has_pairing(self):
        return self.boundary.has_pairing()

    def _differential_of(self, label):
        a, w = label
        result = {(b, w): c for b, c in self.boundary.ell1(a).items()}
        sign = -1 if self.boundary.degree(a) % 2 else 1
        for v, c in self.model.differential(w).items():
            BBKUtils.add_into(result, {(a, v): sign * c})
        return result

    def _bracket_sorted(self, ordered):
        fields = [a for a, _ in ordered]
        forms = [w for _, w in ordered]
        core = self.boundary.bracket(fields)
        if not core:
            return {}
        sign = 1
        for i in range(len(ordered)):
            for j in range(i + 1, len(ordered)):
                if self.model.degree(forms[i]) % 2 and self.boundary.degree(fields[j]) % 2:
                    sign = -sign
        form_product = {forms[0]: Fraction(1)}
        for w in forms[1:]:
            step = {}
            for u, cu in form_product.items():
                for v, cv in self.model.multiply(u, w).items():
                    BBKUtils.add_into(step, {v: cu * cv})
            form_product = step
        result = {}
        for b, cb in core.items():
            for u, cu in form_product.items():
                BBKUtils.add_into(result, {(b, u): sign * cb * cu})
        return result

    def pair(self, first, second):
        (a, w), (b, v) = first, second
        value = self.boundary.pair(a, b)
        if not value:
            return Fraction(0)
        sign = -1 if self.model.degree(w) % 2 and self.boundary.degree(b) % 2 else 1
        return self.pairing_scale * sign * value * self.model.pair(w, v)


class DirectSumAlgebra(CyclicLInfinity):
    """Direct sum of algebras over keys (the cells of an open); brackets and pairings vanish across summands"""

    def __init__(self, parts, has_boundary=None, name=""):
        self.parts = dict(parts)
        self.keys = [key for key, _ in parts]
        basis = [((key, label), degree) for key, part in parts for label, degree in part.space.basis]
        pairing_degrees = {part.pairing_degree for _, part in parts}
        CyclicLInfinity.__init__(self, GradedVectorSpace(basis),
                                 pairing_degree=pairing_degrees.pop() if len(pairing_degrees) == 1 else 0,
                                 has_boundary=any(p.has_boundary for _, p in parts) if has_boundary is None
                                 else has_boundary, name=name)
        caps = [part.poly_cap for _, part in parts if part.poly_cap is not None]
        self.poly_cap = max(caps) if caps else None

    def pdeg(self, label):
        return self.parts[label[0]].pdeg(label[1])

    def arities(self):
        return sorted({k for part in self.parts.values() for k in part.arities()})

    def has_pairing(self):
        return any(part.has_pairing() for part in self.parts.values())

    def _differential_of(self, label):
        key, inner = label
        return {(key, y): c for y, c in self.parts[key].ell1(inner).items()}

    def _bracket_sorted(self, ordered):
        keys = {key for key, _ in ordered}
        if len(keys) != 1:
            return {}
        key = keys.pop()
        return {(key, y): c for y, c in self.parts[key].bracket([inner for _, inner in ordered]).items()}

    def pair(self, first, second):
        if first[0] != second[0]:
            return Fraction(0)
        return self.parts[first[0]].pair(first[1], second[1])


class SubAlgebra(CyclicLInfinity):
    """
    Subcomplex of an ambient algebra closed under its brackets, given by an inclusion from kernel_complex.
    Basis labels are ambient labels; coordinates of an ambient vector are its entries on those labels.
    """

    def __init__(self, ambient, complex_, inclusion, has_boundary=False, name=""):
        self.ambient = ambient
        self.inclusion = inclusion
        CyclicLInfinity.__init__(self, GradedVectorSpace(complex_.basis), pairing_degree=ambient.pairing_degree,
                                 has_boundary=has_boundary, name=name or ambient.name)
        self._complex = complex_
        self.poly_cap = ambient.poly_cap

    def pdeg(self, label):
        return self.ambient.pdeg(label)

    def arities(self):
        return self.ambient.arities()

    def has_pairing(self):
        return self.ambient.has_pairing()

    def vector(self, label):
        return self.inclusion.column(label)

    def coordinates(self, vector):
        coordinates = {label: c for label, c in vector.items() if label in self.space}
        rebuilt = {}
        for label, c in coordinates.items():
            BBKUtils.add_into(rebuilt, self.vector(label), c)
        if BBKUtils.add_into(rebuilt, vector, -1):
            raise ValueError("Vector is not in the subalgebra {}".format(self.name))
        return coordinates

    def _differential_of(self, label):
        return self._complex.d.column(label)

    def _bracket_sorted(self, ordered):
        return self.coordinates(self.ambient.apply_bracket([self.vector(label) for label in ordered]))

    def pair(self, first, second):
        return self.ambient.pair_vectors(self.vector(first), self.vector(second))

    def complex(self):
        return self._complex


def enumerate_words(alg, max_length, min_length=0, word_filter=None):
    """Sorted multisets of basis labels without repeated odd letters, within the algebra's polynomial-degree cap"""
    labels = alg.labels
    degrees = [alg.degree(label) for label in labels]
    pdegs = [alg.pdeg(label) for label in labels]
    cap = alg.poly_cap
    words = []

    def extend(start, word, pdeg):
        if len(word) >= min_length:
            candidate = tuple(labels[i] for i in word)
            if word_filter is None or word_filter(candidate):
                words.append(candidate)
        if len(word) == max_length:
            return
        for i in range(start, len(labels)):
            if cap is not None and pdeg + pdegs[i] > cap:
                continue
            if degrees[i] % 2 and word and word[-1] == i:
                continue
            extend(i, word + [i], pdeg + pdegs[i])

    extend(0, [], 0)
    return words


def _vector_string(vector):
    return BBKUtils.format_vector(vector)


def jacobiator(alg, word, orders):
    degrees = [alg.degree(x) for x in word]
    n = len(word)
    residual = {}
    for i in orders:
        j = n + 1 - i
        if j not in orders:
            continue
        for chosen in combinations(range(n), i):
            rest = [p for p in range(n) if p not in chosen]
            inner = alg.bracket(tuple(word[p] for p in chosen))
            if not inner:
                continue
            sign = BBKUtils.koszul_sign(degrees, list(chosen) + rest)
            outer = alg.apply_bracket([inner] + [{word[p]: 1} for p in rest])
            BBKUtils.add_into(residual, outer, sign)
    return residual


def check_jacobi(alg, arity_budget=None):
    """Generalized Jacobi identities on every basis word; returns (True, None) or (False, counterexample)"""
    budget = CONFIG.ARITY_BUDGET if arity_budget is None else arity_budget
    orders = alg.orders()
    if not orders:
        return True, None
    longest = 2 * max(orders) - 1
    if longest > budget:
        raise BudgetException("Jacobi identities up to arity {} exceed the arity budget {}".format(longest, budget))
    for n in range(1, longest + 1):
        if not any(n + 1 - i in orders for i in orders):
            continue
        for word in enumerate_words(alg, n, n):
            residual = jacobiator(alg, word, orders)
            if residual:
                return False, {"inputs": [str(x) for x in word], "residual": _vector_string(residual)}
    return True, None


def check_cyclic(alg, arity_budget=None, include_differential=None):
    """
    <l(S, y), z> = (-1)^(|y||z|) <l(S, z), y> on basis tuples.
    The arity 1 identity is only checked for models without a boundary, unless requested.
    """
    budget = CONFIG.ARITY_BUDGET if arity_budget is None else arity_budget
    if not alg.has_pairing():
        return True, None
    if include_differential is None:
        include_differential = not alg.has_boundary
    orders = [k for k in alg.orders() if k >= 2 or include_differential]
    labels = alg.labels
    cap = alg.poly_cap
    for k in orders:
        if k > budget:
            raise BudgetException("Cyclicity of arity {} exceeds the arity budget {}".format(k, budget))
        for common in enumerate_words(alg, k - 1, k - 1):
            common_degree = sum(alg.degree(x) for x in common)
            common_pdeg = sum(alg.pdeg(x) for x in common)
            for yi, y in enumerate(labels):
                if cap is not None and common_pdeg + alg.pdeg(y) > cap:
                    continue
                for z in labels[yi:]:
                    if common_degree + alg.degree(y) + alg.degree(z) + 1 + alg.pairing_degree != 0:
                        continue
                    if cap is not None and common_pdeg + alg.pdeg(z) > cap:
                        continue
                    first = alg.pair_vectors(alg.bracket(common + (y,)), {z: 1})
                    second = alg.pair_vectors(alg.bracket(common + (z,)), {y: 1})
                    sign = -1 if alg.degree(y) % 2 and alg.degree(z) % 2 else 1
                    residual = first - sign * second
                    if residual:
                        return False, {"inputs": [str(x) for x in common + (y, z)],
                                       "residual": BBKUtils.format_rational(residual)}
    return True, None


def ce_chains(alg, truncation, word_filter=None):
    """Sym^{<= T} of the fields with the coderivation extending the brackets"""
    if truncation < 1:
        raise ValueError("Sym truncation must be at least 1, got {}".format(truncation))
    arities = alg.arities()
    if arities and max(arities) > truncation:
        raise BudgetException("Sym truncation {} cannot see brackets of arity {}".format(truncation, max(arities)))
    words = enumerate_words(alg, truncation, 0, word_filter)
    orders = alg.orders()
    basis = [(word, sum(alg.degree(x) for x in word)) for word in words]
    columns = {}
    for word in words:
        degrees = [alg.degree(x) for x in word]
        image = {}
        for k in orders:
            if k > len(word):
                continue
            for chosen in combinations(range(len(word)), k):
                output = alg.bracket(tuple(word[p] for p in chosen))
                if not output:
                    continue
                rest = [p for p in range(len(word)) if p not in chosen]
                sign = BBKUtils.koszul_sign(degrees, list(chosen) + rest)
                for letter, coeff in output.items():
                    letters = [letter] + [word[p] for p in rest]
                    word_sign, new_word = alg._sort(letters)
                    if word_sign:
                        BBKUtils.add_into(image, {new_word: sign * word_sign * coeff})
        columns[word] = image
    return CochainComplex.from_columns(basis, columns)


def ce_differential(alg, truncation, word_filter=None):
    """Truncated Chevalley-Eilenberg complex of functionals on the fields, in the dual word basis"""
    return dual(ce_chains(alg, truncation, word_filter))


class ActionFunctional(object):
    """S(phi) = sum_k <phi, l_k(phi, ..., phi)> / (k+1)!, the interaction I drops the k = 1 term"""

    def __init__(self, alg):
        self.alg = alg

    def _term(self, phi, k):
        return self.alg.pair_vectors(phi, self.alg.apply_bracket([phi] * k)) / factorial(k + 1)

    def action(self, phi):
        return sum((self._term(phi, k) for k in self.alg.orders()), Fraction(0))

    def interaction(self, phi):
        return sum((self._term(phi, k) for k in self.alg.arities()), Fraction(0))


def action(alg, phi):
    return ActionFunctional(alg).action(phi)


def interaction(alg, phi):
    return ActionFunctional(alg).interaction(phi)


def check_cubic_symmetry(alg):
    """The cubic term <x, l_2(y, z)> is graded symmetric in (x, y, z) for a cyclic algebra"""
    if 2 not in alg.arities():
        return True, None
    for word in enumerate_words(alg, 3, 3):
        if sum(alg.degree(x) for x in word) + 1 + alg.pairing_degree != 0:
            continue
        degrees = [alg.degree(x) for x in word]
        reference = alg.pair_vectors({word[0]: 1}, alg.bracket(word[1:]))
        for order in permutations(range(3)):
            sign = BBKUtils.koszul_sign(degrees, list(order))
            value = alg.pair_vectors({word[order[0]]: 1}, alg.bracket((word[order[1]], word[order[2]])))
            if sign * value != reference:
                return False, {"inputs": [str(x) for x in word], "order": list(order)}
    return True, None


class LieAlgebra(object):
    """Finite-dimensional Lie algebra given by structure constants, with an optional invariant symmetric form"""

    def __init__(self, labels, brackets=None, form=None, name=""):
        self.labels = tuple(labels)
        self.name = name
        self._index = {label: i for i, label in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("Duplicate Lie algebra basis label")
        self._brackets = {}
        for (a, b), image in (brackets or {}).items():
            self._store(a, b, {c: Fraction(v) for c, v in image.items() if v})
        self.form = {}
        for (a, b), value in (form or {}).items():
            for key in ((a, b), (b, a)):
                if key in self.form and self.form[key] != Fraction(value):
                    raise ValueError("Invariant form is not symmetric at {!r}".format(key))
                self.form[key] = Fraction(value)

    def _store(self, a, b, image):
        for label in [a, b] + list(image):
            if label not in self._index:
                raise ValueError("Unknown Lie algebra label {!r}".format(label))
        if a == b:
            if image:
                raise ValueError("[{0}, {0}] must vanish".format(a))
            return
        negated = {c: -v for c, v in image.items()}
        for key, entry in (((a, b), image), ((b, a), negated)):
            if key in self._brackets and self._brackets[key] != entry:
                raise ValueError("Structure constants are not antisymmetric at {!r}".format(key))
            self._brackets[key] = entry

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        return self._index[label]

    def bracket_labels(self, a, b):
        return dict(self._brackets.get((a, b), {}))

    def bracket(self, x, y):
        result = {}
        for a, ca in x.items():
            for b, cb in y.items():
                BBKUtils.add_into(result, self._brackets.get((a, b), {}), ca * cb)
        return result

    def is_abelian(self):
        return not any(self._brackets.values())

    def check_jacobi(self):
        for a, b, c in combinations(self.labels, 3):
            total = {}
            BBKUtils.add_into(total, self.bracket({a: 1}, self.bracket({b: 1}, {c: 1})))
            BBKUtils.add_into(total, self.bracket({b: 1}, self.bracket({c: 1}, {a: 1})))
            BBKUtils.add_into(total, self.bracket({c: 1}, self.bracket({a: 1}, {b: 1})))
            if total:
                return False, {"inputs": [a, b, c], "residual": _vector_string(total)}
        return True, None

    def killing_form(self):
        """tr(ad x ad y) on basis pairs"""
        form = {}
        for a in self.labels:
            for b in self.labels:
                trace = Fraction(0)
                for c in self.labels:
                    trace += self.bracket({a: 1}, self.bracket({b: 1}, {c: 1})).get(c, 0)
                if trace:
                    form[(a, b)] = trace
        return form

    def shifted(self, form=None, name=""):
        """g[1] with l_2(sx, sy) = -s[x, y] and pairing <sx, sy> = form(x, y) of degree 2"""
        form = self.form if form is None else form
        space = GradedVectorSpace([(a, -1) for a in self.labels])
        brackets = {2: {}}
        for (a, b), image in self._brackets.items():
            if self.index(a) < self.index(b) and image:
                brackets[2][(a, b)] = {c: -v for c, v in image.items()}
        pairing = {key: value for key, value in form.items() if value}
        return CyclicLInfinity(space, brackets=brackets, pairing=pairing, pairing_degree=2,
                               name=name or "{}[1]".format(self.name))

    def direct_sum(self, other, name=""):
        """g + h with labels prefixed by 1. and 2."""
        def prefixed(n, label):
            return "{}.{}".format(n, label)
        labels = [prefixed(1, a) for a in self.labels] + [prefixed(2, a) for a in other.labels]
        brackets = {}
        form = {}
        for n, algebra in ((1, self), (2, other)):
            for (a, b), image in algebra._brackets.items():
                brackets[(prefixed(n, a), prefixed(n, b))] = {prefixed(n, c): v for c, v in image.items()}
            for (a, b), value in algebra.form.items():
                form[(prefixed(n, a), prefixed(n, b))] = value
        return LieAlgebra(labels, brackets, form, name=name or "{}+{}".format(self.name, other.name))

    @staticmethod
    def dual_label(label):
        return "{}*".format(label)

    def semidirect_dual(self, k=1, pairing=True, name=""):
        """
        g[1] + g^v[-k] from the graded Lie algebra g x g^v[-k-1] with the coadjoint action.
        The duality pairing <sx_a, xi^b> = delta_ab is attached when it has degree 0 (k = 1).
        """
        space = GradedVectorSpace([(a, -1) for a in self.labels] + [(self.dual_label(a), k) for a in self.labels])
        brackets = {2: {}}
        for (a, b), image in self._brackets.items():
            if self.index(a) < self.index(b) and image:
                brackets[2][(a, b)] = {c: -v for c, v in image.items()}
        # l_2(x_a, xi^b) = -[x_a, xi^b] = sum_c c^b_{ac} xi^c
        for a in self.labels:
            for b in self.labels:
                image = {}
                for c in self.labels:
                    coeff = self._brackets.get((a, c), {}).get(b, 0)
                    if coeff:
                        image[self.dual_label(c)] = coeff
                if image:
                    brackets[2][(a, self.dual_label(b))] = image
        pairings = {}
        if pairing and k == 1:
            pairings = {(a, self.dual_label(a)): 1 for a in self.labels}
        return CyclicLInfinity(space, brackets=brackets, pairing=pairings, pairing_degree=0,
                               symplectic=bool(pairings), name=name or "{}+{}v[-{}]".format(self.name, self.name, k))


def sl2(name="sl2"):
    return LieAlgebra(["e", "f", "h"], {
        ("h", "e"): {"e": 2},
        ("h", "f"): {"f": -2},
        ("e", "f"): {"h": 1}
    }, name=name)


def abelian(dim=1, name="abelian"):
    labels = ["x{}".format(i) for i in range(dim)] if dim > 1 else ["x"]
    return LieAlgebra(labels, {}, name=name)
