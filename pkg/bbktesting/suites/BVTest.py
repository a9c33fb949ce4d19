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
from ..BBKUtils import BBKUtils
from ..BulkBoundary import boundary_defect, check_isotropic, random_compact_field
from ..GenericTest import GenericTest, anchor
from ..IntervalModel import PolyForm, as_poly
from ..LInfinity import ActionFunctional, check_cubic_symmetry, check_cyclic, check_jacobi


class BVTest(GenericTest):
    """
    Runs BV structure checks: the boundary and bulk L-infinity identities, cyclicity and the boundary defect
    """
    def __init__(self, descriptor, **kwargs):
        GenericTest.__init__(self, descriptor, **kwargs)
        self.sys = descriptor.system()

    @anchor("generalized Jacobi identities of the boundary brackets")
    def test_01(self, test):
        """Boundary brackets satisfy the generalized Jacobi identities"""
        return self.check(test, check_jacobi(self.sys.algebra), "Boundary Jacobi identity fails")

    @anchor("cyclicity of the boundary brackets against the boundary pairing")
    def test_02(self, test):
        """Boundary brackets are cyclic for the boundary pairing"""
        return self.check(test, check_cyclic(self.sys.algebra), "Boundary brackets are not cyclic")

    @anchor("nondegenerate graded antisymmetric boundary pairing")
    def test_03(self, test):
        """Boundary pairing is nondegenerate"""
        return self.check(test, self.sys.boundary.check_nondegenerate(), "Boundary pairing is degenerate")

    @anchor("generalized Jacobi identities of the bulk brackets")
    def test_04(self, test):
        """Bulk fields on the interval satisfy the generalized Jacobi identities"""
        return self.check(test, check_jacobi(self.sys.bulk), "Bulk Jacobi identity fails")

    @anchor("dK + Kd = id on forms vanishing at the far end")
    def test_05(self, test):
        """Contracting homotopy inverts d on randomized forms vanishing at the far end"""
        rng = self.rng(test)
        for case in range(CONFIG.HOMOTOPY_CASES):
            cap = rng.randint(1, CONFIG.HOMOTOPY_MAX_CAP)
            delta = abs(BBKUtils.random_rational(rng, 7, 5, nonzero=True))
            factor = [BBKUtils.random_rational(rng) for _ in range(cap)]
            form = PolyForm(as_poly(factor) * as_poly([-delta, 1]),
                            [BBKUtils.random_rational(rng) for _ in range(cap)], delta, cap)
            restored = form.homotopy_K().d() + form.d().homotopy_K()
            if restored != form:
                return test.FAIL("dK + Kd differs from the identity", {"case": case, "form": form.to_json()})
        return test.PASS("{} forms checked".format(CONFIG.HOMOTOPY_CASES))

    @anchor("failure of cyclicity for l1 equals the boundary pairing of boundary values")
    def test_06(self, test):
        """Boundary defect identity on randomized pairs of fields vanishing at the far end"""
        rng = self.rng(test)
        for case in range(CONFIG.RANDOMIZED_CASES):
            first = random_compact_field(self.sys, rng)
            second = random_compact_field(self.sys, rng)
            lhs, rhs = boundary_defect(self.sys, first, second)
            if lhs != rhs:
                return test.FAIL("Boundary defect identity fails", {
                    "case": case, "lhs": BBKUtils.format_rational(lhs), "rhs": BBKUtils.format_rational(rhs)})
        return test.PASS("{} field pairs checked".format(CONFIG.RANDOMIZED_CASES))

    @anchor("isotropic structure on the restriction to the boundary")
    def test_07(self, test):
        """Boundary defect on a spanning set and cyclicity of the higher bulk brackets"""
        return self.check(test, check_isotropic(self.sys), "Bulk fields are not isotropic over the boundary")

    @anchor("cubic term of the action is graded symmetric")
    def test_08(self, test):
        """Cubic interaction term is graded symmetric in its inputs"""
        if not self.sys.algebra.arities():
            return test.SKIPPED("Boundary theory has no brackets")
        result, witness = check_cubic_symmetry(self.sys.bulk)
        if not result:
            return test.FAIL("Cubic term is not graded symmetric", witness)
        rng = self.rng(test)
        functional = ActionFunctional(self.sys.bulk)
        phi = {}
        arity = max(self.sys.algebra.arities())
        for label in self.sys.bulk.labels:
            if self.sys.bulk.degree(label) == 0 and self.sys.bulk.pdeg(label) * arity <= self.sys.cap:
                BBKUtils.add_into(phi, {label: BBKUtils.random_rational(rng)})
        # on degree 0 fields the action is the free part plus the interaction
        free = self.sys.bulk.pair_vectors(phi, self.sys.bulk.apply_bracket([phi])) / 2
        if functional.action(phi) != free + functional.interaction(phi):
            return test.FAIL("Action does not split into free and interaction parts")
        return test.PASS()
