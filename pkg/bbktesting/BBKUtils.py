# Copyright 2017 British Broadcasting Corporation
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

import re
from fractions import Fraction

from . import Config as CONFIG

DEFAULT_ARGS = {
    "input": None,
    "list_suites": False,
    "describe_suites": False,
    "list_tests": False,
    "describe_tests": False,
    "suite": "all",
    "selection": "all",
    "report": None,
    "sym_trunc": None,
    "weiss_sym_trunc": None,
    "arity_budget": None,
    "poly_cap": None,
    "weight_cap": None
}

RATIONAL_PATTERN = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


class BudgetException(Exception):
    """A computation would leave one of the configured budgets (arity, truncation or polynomial degree)"""
    pass


class PreconditionException(Exception):
    """The inputs of a check do not satisfy its precondition; this is not a failure of the check itself"""
    pass


class BBKUtils(object):

    @staticmethod
    def parse_rational(value):
        """Parse an int, a Fraction or a "p/q" string into a Fraction"""
        if isinstance(value, bool):
            raise ValueError("Boolean {!r} is not a rational".format(value))
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if not isinstance(value, str) or not RATIONAL_PATTERN.match(value.strip()):
            raise ValueError("Malformed rational {!r}".format(value))
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise ValueError("Rational {!r} has a zero denominator".format(value))

    @staticmethod
    def format_rational(value):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return "{}/{}".format(value.numerator, value.denominator)

    @staticmethod
    def to_fraction(value):
        """Convert sympy and gmpy rationals, ints and Fractions to a Fraction"""
        if isinstance(value, Fraction):
            return value
        if hasattr(value, "p") and hasattr(value, "q"):
            return Fraction(int(value.p), int(value.q))
        return Fraction(int(value.numerator), int(value.denominator))

    @staticmethod
    def random_rational(rng, max_numerator=5, max_denominator=4, nonzero=False):
        while True:
            value = Fraction(rng.randint(-max_numerator, max_numerator), rng.randint(1, max_denominator))
            if value or not nonzero:
                return value

    @staticmethod
    def koszul_sign(degrees, order):
        """Sign of reordering a sequence of homogeneous elements into 'order' (a permutation of its positions)"""
        sign = 1
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                if order[i] > order[j] and degrees[order[i]] % 2 and degrees[order[j]] % 2:
                    sign = -sign
        return sign

    @staticmethod
    def graded_sort(items, degrees, key):
        """
        Sort a graded-commutative word into canonical order.
        Returns (sign, sorted items), with sign 0 when an odd element repeats.
        """
        order = sorted(range(len(items)), key=lambda i: key(items[i]))
        for a, b in zip(order, order[1:]):
            if key(items[a]) == key(items[b]) and degrees[a] % 2:
                return 0, None
        return BBKUtils.koszul_sign(degrees, order), tuple(items[i] for i in order)

    @staticmethod
    def add_into(target, vector, scale=1):
        """Accumulate scale * vector into the dict target, dropping zero coefficients"""
        for label, coeff in vector.items():
            value = target.get(label, 0) + scale * coeff
            if value:
                target[label] = value
            else:
                target.pop(label, None)
        return target

    @staticmethod
    def format_vector(vector):
        return {str(label): BBKUtils.format_rational(coeff) for label, coeff in sorted(vector.items(), key=repr)}

    @staticmethod
    def mesh_breakpoints(breakpoints=None):
        return [BBKUtils.parse_rational(point) for point in (breakpoints or CONFIG.MESH_BREAKPOINTS)]

    @staticmethod
    def to_jsonable(value):
        """Witnesses and reports as JSON values: rationals become "p/q" strings and keys become strings"""
        if isinstance(value, dict):
            return {str(key): BBKUtils.to_jsonable(item) for key, item in value.items()}
        if isinstance(value, (set, frozenset)):
            return [BBKUtils.to_jsonable(item) for item in sorted(value, key=repr)]
        if isinstance(value, (list, tuple)):
            return [BBKUtils.to_jsonable(item) for item in value]
        if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
            return value
        if isinstance(value, Fraction) or (hasattr(value, "p") and hasattr(value, "q")):
            return BBKUtils.format_rational(BBKUtils.to_fraction(value))
        return str(value)
