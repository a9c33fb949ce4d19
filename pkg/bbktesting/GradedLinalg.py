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
Exact graded linear algebra over the rationals.

Sign conventions (used by every module):
  shift     (V[n])^k = V^(k+n), d_V[n] = (-1)^n d_V, basis labels are kept
  cone      Cone(f: X -> Y) = X[1] + Y, d(x, y) = (-d x, f(x) + d y), labels ("src", x) then ("tgt", y)
  tensor    d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy, labels (x, y)
  dual      (C^v)^k = (C^-k)^v, (d^v phi)(x) = -(-1)^|phi| phi(dx), labels kept
"""

from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .BBKUtils import BBKUtils


class NotAComplexException(Exception):
    """The differential of a complex does not square to zero"""
    pass


class ChainMapException(Exception):
    """A map was required to commute with the differentials and does not"""
    pass


def to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_scalar(value):
    return BBKUtils.to_fraction(value)


def sparse_matrix(entries, shape):
    """Build a sparse matrix over QQ from {(row, col): value}"""
    dod = {}
    for (row, col), value in entries.items():
        if value:
            dod.setdefault(row, {})[col] = to_qq(value)
    return DomainMatrix(dod, shape, QQ)


def zero_matrix(rows, cols):
    return DomainMatrix({}, (rows, cols), QQ)


def matrix_is_zero(matrix):
    return not any(value for row in matrix.to_dod().values() for value in row.values())


def matrix_rank(matrix):
    if 0 in matrix.shape:
        return 0
    return matrix.rank()


def pivot_columns(matrix):
    if 0 in matrix.shape:
        return ()
    return tuple(matrix.rref()[1])


def nullspace_vectors(matrix):
    """
    Kernel basis of a matrix read off its reduced row echelon form.
    Returns (free column, vector) pairs, the vector being {column: Fraction} with coefficient 1 on its free column.
    """
    rows, cols = matrix.shape
    if cols == 0:
        return []
    if rows == 0:
        return [(col, {col: Fraction(1)}) for col in range(cols)]
    reduced, pivots = matrix.rref()
    dod = reduced.to_dod()
    pivot_set = set(pivots)
    vectors = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vector = {free: Fraction(1)}
        for row, pivot in enumerate(pivots):
            value = dod.get(row, {}).get(free)
            if value:
                vector[pivot] = -to_scalar(value)
        vectors.append((free, vector))
    return vectors


def solve_linear(entries, shape, rhs):
    """
    One solution x of A x = rhs, with A given as {(row, col): value} and rhs as {row: value}.
    Free variables are set to zero. Returns {col: Fraction}, or None when the system is inconsistent.
    """
    rows, cols = shape
    if rows == 0:
        return {}
    augmented = dict(entries)
    augmented.update({(row, cols): value for row, value in rhs.items()})
    reduced, pivots = sparse_matrix(augmented, (rows, cols + 1)).rref()
    if cols in pivots:
        return None
    dod = reduced.to_dod()
    solution = {}
    for row, pivot in enumerate(pivots):
        value = dod.get(row, {}).get(cols)
        if value:
            solution[pivot] = to_scalar(value)
    return solution


class GradedVectorSpace(object):
    """Finite graded vector space with an ordered basis of unique labels"""

    def __init__(self, basis=()):
        self.basis = tuple((label, int(degree)) for label, degree in basis)
        self._position = {}
        self._by_degree = {}
        for label, degree in self.basis:
            if label in self._position:
                raise ValueError("Duplicate basis label {!r}".format(label))
            block = self._by_degree.setdefault(degree, [])
            self._position[label] = (degree, len(block))
            block.append(label)

    @property
    def labels(self):
        return tuple(label for label, _ in self.basis)

    def degrees(self):
        return sorted(self._by_degree)

    def dim(self, degree=None):
        if degree is None:
            return len(self.basis)
        return len(self._by_degree.get(degree, ()))

    def dimensions(self):
        return {degree: len(labels) for degree, labels in sorted(self._by_degree.items())}

    def labels_in(self, degree):
        return tuple(self._by_degree.get(degree, ()))

    def degree_of(self, label):
        return self._position[label][0]

    def index_of(self, label):
        """Position of a label within its own degree"""
        return self._position[label][1]

    def __contains__(self, label):
        return label in self._position

    def __len__(self):
        return len(self.basis)

    def same_basis(self, other):
        return self.basis == other.basis

    def check_vector(self, vector):
        for label in vector:
            if label not in self:
                raise ValueError("Label {!r} is not a basis element".format(label))


class GradedMap(object):
    """
    Linear map of a fixed degree between graded spaces.
    Block k is a sparse matrix from the degree-k source basis to the degree-(k + degree) target basis.
    """

    def __init__(self, source, target, degree=0, blocks=None):
        self.source = source
        self.target = target
        self.degree = int(degree)
        self.blocks = {}
        self._columns = {}
        for k, matrix in (blocks or {}).items():
            if source.dim(k) == 0:
                continue
            shape = (target.dim(k + self.degree), source.dim(k))
            if tuple(matrix.shape) != shape:
                raise ValueError("Block {} has shape {}, expected {}".format(k, matrix.shape, shape))
            self.blocks[k] = matrix

    @classmethod
    def from_columns(cls, source, target, degree, columns):
        """Build a map from {source label: {target label: coefficient}}"""
        entries = {}
        for label, image in columns.items():
            k = source.degree_of(label)
            col = source.index_of(label)
            for target_label, coeff in image.items():
                if not coeff:
                    continue
                if target_label not in target:
                    raise ValueError("Image label {!r} is not in the target".format(target_label))
                if target.degree_of(target_label) != k + degree:
                    raise ValueError("{!r} -> {!r} does not have degree {}".format(label, target_label, degree))
                entries.setdefault(k, {})[(target.index_of(target_label), col)] = coeff
        blocks = {}
        for k in source.degrees():
            blocks[k] = sparse_matrix(entries.get(k, {}), (target.dim(k + degree), source.dim(k)))
        return cls(source, target, degree, blocks)

    @classmethod
    def zero(cls, source, target, degree=0):
        return cls(source, target, degree)

    @classmethod
    def identity(cls, space):
        return cls.from_columns(space, space, 0, {label: {label: 1} for label in space.labels})

    def block(self, k):
        if k in self.blocks:
            return self.blocks[k]
        return zero_matrix(self.target.dim(k + self.degree), self.source.dim(k))

    def _degree_columns(self, k):
        if k not in self._columns:
            target_labels = self.target.labels_in(k + self.degree)
            source_labels = self.source.labels_in(k)
            columns = {label: {} for label in source_labels}
            for col, rows in self.block(k).transpose().to_dod().items():
                columns[source_labels[col]] = {target_labels[row]: to_scalar(value)
                                               for row, value in rows.items() if value}
            self._columns[k] = columns
        return self._columns[k]

    def column(self, label):
        return self._degree_columns(self.source.degree_of(label))[label]

    def columns(self):
        result = {}
        for k in self.source.degrees():
            result.update(self._degree_columns(k))
        return result

    def apply(self, vector):
        result = {}
        for label, coeff in vector.items():
            if coeff:
                BBKUtils.add_into(result, self.column(label), coeff)
        return result

    def compose(self, other):
        """self after other"""
        if not other.target.same_basis(self.source):
            raise ValueError("Maps are not composable")
        blocks = {}
        for k in other.source.degrees():
            blocks[k] = self.block(k + other.degree).matmul(other.block(k))
        return GradedMap(other.source, self.target, self.degree + other.degree, blocks)

    def _check_parallel(self, other):
        if (not self.source.same_basis(other.source) or not self.target.same_basis(other.target)
                or self.degree != other.degree):
            raise ValueError("Maps do not have matching source, target and degree")

    def add(self, other):
        self._check_parallel(other)
        return GradedMap(self.source, self.target, self.degree,
                         {k: self.block(k).add(other.block(k)) for k in self.source.degrees()})

    def neg(self):
        return GradedMap(self.source, self.target, self.degree, {k: m.neg() for k, m in self.blocks.items()})

    def sub(self, other):
        return self.add(other.neg())

    def scaled(self, scalar):
        return GradedMap(self.source, self.target, self.degree,
                         {k: m.scalarmul(to_qq(scalar)) for k, m in self.blocks.items()})

    def is_zero(self):
        return all(matrix_is_zero(matrix) for matrix in self.blocks.values())

    def equals(self, other):
        return self.sub(other).is_zero()

    def rank(self, k):
        return matrix_rank(self.block(k))

    def first_nonzero_degree(self):
        for k in self.source.degrees():
            if not matrix_is_zero(self.block(k)):
                return k
        return None


class CochainComplex(GradedVectorSpace):
    """Graded space with a degree +1 differential squaring to zero"""

    def __init__(self, basis=(), blocks=None, check=True):
        GradedVectorSpace.__init__(self, basis)
        self.d = GradedMap(self, self, 1, blocks)
        self._ranks = {}
        if check:
            self.check_square_zero()

    @classmethod
    def from_columns(cls, basis, columns, check=True):
        complex_ = cls(basis, check=False)
        complex_.d = GradedMap.from_columns(complex_, complex_, 1, columns)
        if check:
            complex_.check_square_zero()
        return complex_

    @classmethod
    def from_space(cls, space, differential=None):
        """Complex on the basis of 'space' with the blocks of a degree +1 map on it (zero when omitted)"""
        return cls(space.basis, differential.blocks if differential is not None else None)

    def check_square_zero(self):
        for k in self.degrees():
            if self.dim(k + 1) == 0 or self.dim(k + 2) == 0:
                continue
            if not matrix_is_zero(self.d.block(k + 1).matmul(self.d.block(k))):
                raise NotAComplexException("d o d is nonzero on degree {}".format(k))

    def differential_rank(self, k):
        if k not in self._ranks:
            self._ranks[k] = self.d.rank(k) if self.dim(k) else 0
        return self._ranks[k]


def cohomology_dimensions(complex_):
    """{degree: dim H^degree} for every degree carrying basis elements"""
    return {k: complex_.dim(k) - complex_.differential_rank(k) - complex_.differential_rank(k - 1)
            for k in complex_.degrees()}


def is_acyclic(complex_):
    return all(dim == 0 for dim in cohomology_dimensions(complex_).values())


def cohomology(complex_):
    """{degree: (dim H^degree, representative cocycles as {label: Fraction})}"""
    result = {}
    for k in complex_.degrees():
        labels = complex_.labels_in(k)
        cycles = [vector for _, vector in nullspace_vectors(complex_.d.block(k))]
        boundary_block = complex_.d.block(k - 1)
        boundaries = boundary_block.transpose().to_dod() if complex_.dim(k - 1) else {}
        entries = {}
        column = 0
        for _, rows in sorted(boundaries.items()):
            for row, value in rows.items():
                entries[(row, column)] = to_scalar(value)
            column += 1
        offset = column
        for vector in cycles:
            for row, value in vector.items():
                entries[(row, column)] = value
            column += 1
        pivots = pivot_columns(sparse_matrix(entries, (len(labels), column)))
        representatives = []
        for pivot in pivots:
            if pivot >= offset:
                representatives.append({labels[row]: value for row, value in cycles[pivot - offset].items()})
        result[k] = (len(representatives), representatives)
    return result


def shift(obj, n):
    """V[n]: degree k elements of V sit in degree k - n, the differential picks up (-1)^n"""
    basis = [(label, degree - n) for label, degree in obj.basis]
    if not isinstance(obj, CochainComplex):
        return GradedVectorSpace(basis)
    sign = -1 if n % 2 else 1
    blocks = {k - n: (matrix.neg() if sign < 0 else matrix) for k, matrix in obj.d.blocks.items()}
    return CochainComplex(basis, blocks, check=False)


def is_chain_map(f):
    if f.degree != 0:
        return False
    return f.target.d.compose(f).equals(f.compose(f.source.d))


def check_chain_map(f):
    if f.degree != 0:
        raise ChainMapException("Map has degree {}, expected 0".format(f.degree))
    defect = f.target.d.compose(f).sub(f.compose(f.source.d))
    degree = defect.first_nonzero_degree()
    if degree is not None:
        raise ChainMapException("d f - f d is nonzero on degree {}".format(degree))


def cone(f):
    check_chain_map(f)
    source, target = f.source, f.target
    basis = [(("src", label), degree - 1) for label, degree in source.basis]
    basis += [(("tgt", label), degree) for label, degree in target.basis]
    columns = {}
    for label in source.labels:
        image = {("src", x): -c for x, c in source.d.column(label).items()}
        for y, c in f.column(label).items():
            image[("tgt", y)] = c
        columns[("src", label)] = image
    for label in target.labels:
        columns[("tgt", label)] = {("tgt", y): c for y, c in target.d.column(label).items()}
    return CochainComplex.from_columns(basis, columns, check=False)


def is_quasi_iso(f):
    """(True, None) when the cone of f is acyclic, otherwise (False, first degree of the cone with cohomology)"""
    for k, dim in sorted(cohomology_dimensions(cone(f)).items()):
        if dim:
            return False, k
    return True, None


def tensor(a, b):
    basis = [((x, y), dx + dy) for x, dx in a.basis for y, dy in b.basis]
    columns = {}
    for x, dx in a.basis:
        dx_column = a.d.column(x)
        sign = -1 if dx % 2 else 1
        for y, _ in b.basis:
            image = {(u, y): c for u, c in dx_column.items()}
            for v, c in b.d.column(y).items():
                BBKUtils.add_into(image, {(x, v): sign * c})
            columns[(x, y)] = image
    return CochainComplex.from_columns(basis, columns, check=False)


def dual(complex_):
    basis = [(label, -degree) for label, degree in complex_.basis]
    columns = {label: {} for label in complex_.labels}
    for y in complex_.labels:
        for x, c in complex_.d.column(y).items():
            # phi = x^v has degree -|x|
            sign = -(-1) ** (-complex_.degree_of(x) % 2)
            BBKUtils.add_into(columns[x], {y: sign * c})
    return CochainComplex.from_columns(basis, columns, check=False)


def direct_sum(*complexes):
    basis = []
    columns = {}
    for index, complex_ in enumerate(complexes):
        basis += [((index, label), degree) for label, degree in complex_.basis]
        for label in complex_.labels:
            columns[(index, label)] = {(index, y): c for y, c in complex_.d.column(label).items()}
    return CochainComplex.from_columns(basis, columns, check=False)


def restrict_complex(complex_, labels):
    """Subcomplex spanned by a subset of the basis, which must be closed under the differential"""
    keep = set(labels)
    basis = [(label, degree) for label, degree in complex_.basis if label in keep]
    columns = {}
    for label, _ in basis:
        image = complex_.d.column(label)
        outside = [y for y in image if y not in keep]
        if outside:
            raise ChainMapException("d({!r}) leaves the chosen basis through {!r}".format(label, outside[0]))
        columns[label] = image
    return CochainComplex.from_columns(basis, columns, check=False)


def kernel_complex(f):
    """
    Kernel of a chain map out of a complex, as (complex K, inclusion K -> source).
    K is labelled by the free columns of each degree block; its coordinates are the free-label entries.
    """
    source = f.source
    basis = []
    vectors = {}
    for k in source.degrees():
        labels = source.labels_in(k)
        for free, vector in nullspace_vectors(f.block(k)):
            label = labels[free]
            basis.append((label, k))
            vectors[label] = {labels[col]: value for col, value in vector.items()}
    kernel = GradedVectorSpace(basis)
    columns = {}
    for label, _ in basis:
        image = source.d.apply(vectors[label])
        coordinates = {y: c for y, c in image.items() if y in kernel}
        rebuilt = {}
        for y, c in coordinates.items():
            BBKUtils.add_into(rebuilt, vectors[y], c)
        if BBKUtils.add_into(rebuilt, image, -1):
            raise ChainMapException("The kernel is not closed under the differential at {!r}".format(label))
        columns[label] = coordinates
    complex_ = CochainComplex.from_columns(basis, columns, check=False)
    inclusion = GradedMap.from_columns(complex_, source, 0, vectors)
    return complex_, inclusion


def complex_to_json(complex_):
    blocks = []
    for k in complex_.degrees():
        if complex_.dim(k + 1) == 0:
            continue
        dense = complex_.d.block(k).to_Matrix().tolist()
        blocks.append({
            "from_degree": k,
            "matrix": [[BBKUtils.format_rational(to_scalar(value)) for value in row] for row in dense]
        })
    return {
        "basis": [{"label": str(label), "degree": degree} for label, degree in complex_.basis],
        "blocks": blocks
    }


def complex_from_json(data):
    basis = [(entry["label"], entry["degree"]) for entry in data["basis"]]
    space = GradedVectorSpace(basis)
    blocks = {}
    for block in data.get("blocks", []):
        k = block["from_degree"]
        entries = {}
        for row, values in enumerate(block["matrix"]):
            for col, value in enumerate(values):
                entries[(row, col)] = BBKUtils.parse_rational(value)
        blocks[k] = sparse_matrix(entries, (space.dim(k + 1), space.dim(k)))
    return CochainComplex(basis, blocks)
