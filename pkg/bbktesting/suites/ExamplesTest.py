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

from .. import Config as CONFIG
from ..Examples import (LocalFunctionalComplex, bf_pushforward_compare, jx_span, lie_cohomology, o_gB_halfplane)
from ..GenericTest import GenericTest, anchor
from ..LInfinity import abelian, sl2


class ExamplesTest(GenericTest):
    """
    Runs the worked BF computations, which need no system descriptor
    """

    requires_system = False

    @anchor("Lie algebra cohomology of sl2 with trivial coefficients")
    def test_01(self, test):
        """H(sl2) is one-dimensional in degrees 0 and 3"""
        dims = lie_cohomology(sl2())
        if dims != {0: 1, 1: 0, 2: 0, 3: 1}:
            return test.FAIL("Unexpected cohomology of sl2", dims)
        return test.PASS()

    @anchor("B-variant local functionals of sl2 BF on the half-plane in B-weight 1")
    def test_02(self, test):
        """Weight 1 cohomology of the B-variant complex is three-dimensional and matches the closed form"""
        result = o_gB_halfplane(sl2(), 1)
        weight_one = result["weights"][1]
        if not result["weight_preserved"]:
            return test.FAIL("Differential does not preserve the B-weight")
        if weight_one["dimension"] != 3 or not weight_one["agrees"]:
            return test.FAIL("Weight 1 cohomology differs from the closed form", weight_one)
        return test.PASS()

    @anchor("J_x functionals are closed and span the weight 1 cohomology")
    def test_03(self, test):
        """J_e, J_f and J_h are closed, independent and span H in weight 1"""
        result = jx_span(sl2(), [{"e": 1}, {"f": 1}, {"h": 1}])
        if not (result["closed"] and result["independent"] and result["spans"]):
            return test.FAIL("J_x classes do not span the weight 1 cohomology", result)
        return test.PASS()

    @anchor("closed form of the B-variant cohomology for other Lie algebras")
    def test_04(self, test):
        """Abelian and sl2 + sl2 agree with the closed form; the Kunneth formula holds for sl2 + sl2"""
        doubled = sl2().direct_sum(sl2(), name="sl2+sl2")
        dims = {degree: dim for degree, dim in lie_cohomology(doubled).items() if dim}
        if dims != {0: 1, 3: 2, 6: 1}:
            return test.FAIL("Cohomology of sl2 + sl2 does not follow the Kunneth formula", dims)
        for g in (abelian(), doubled):
            result = o_gB_halfplane(g, 1)
            if not result["weights"][1]["agrees"]:
                return test.FAIL("Weight 1 cohomology of {} differs from the closed form".format(g.name),
                                 result["weights"][1])
        return test.PASS()

    @anchor("the A variant at weight 0 is acyclic")
    def test_05(self, test):
        """Total complex of the A variant in weight 0 has no cohomology"""
        complex_ = LocalFunctionalComplex(sl2(), "A", 0)
        if complex_.cohomology():
            return test.FAIL("A variant has cohomology", complex_.cohomology())
        return test.PASS()

    @anchor("boundary pushforward of BF observables agrees with the boundary factorization algebra")
    def test_06(self, test):
        """Theta is a quasi-isomorphism on every boundary open for abelian and sl2 coefficients"""
        for g in (abelian(), sl2()):
            result, detail = bf_pushforward_compare(g, CONFIG.WEISS_SYM_TRUNCATION)
            if not result:
                detail["algebra"] = g.name
                return test.FAIL("Pushforward comparison fails", detail)
        return test.PASS()
