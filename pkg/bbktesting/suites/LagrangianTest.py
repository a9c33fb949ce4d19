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

from fractions import Fraction

from ..BulkBoundary import (BoundaryCondition, BoundaryConditionException, BoundaryViolation, BulkBoundarySystem,
                            check_lagrangian, check_restored_cyclicity, impose, splitting,
                            strict_pullback_model_check, validate_boundary_condition)
from ..Descriptors import load_registered
from ..GenericTest import GenericTest, InvalidInputException, anchor
from ..IntervalModel import OpenSet


class LagrangianTest(GenericTest):
    """
    Runs boundary condition and Lagrangian checks on every open of the system's mesh
    """
    def __init__(self, descriptor, **kwargs):
        GenericTest.__init__(self, descriptor, **kwargs)
        self.sys = descriptor.system()
        if not descriptor.conditions:
            raise InvalidInputException("System {} lists no boundary conditions".format(descriptor.name))

    def opens(self):
        return self.sys.mesh.opens(punctured=True)

    @anchor("boundary conditions are isotropic, bracket closed and have an isotropic complement")
    def test_01(self, test):
        """Every boundary condition of the system passes validation"""
        for condition in self.descriptor.conditions:
            result, violations = validate_boundary_condition(self.sys.boundary, condition)
            if not result:
                return test.FAIL("Boundary condition {} is invalid".format(condition.name),
                                 {violation.value: detail for violation, detail in violations.items()})
        return test.PASS("{} conditions checked".format(len(self.descriptor.conditions)))

    @anchor("invalid boundary conditions are rejected with the violated requirement")
    def test_02(self, test):
        """Seeded negative controls fail validation with the expected violation"""
        sl2 = load_registered("bf1d-sl2")
        controls = [
            ("non-isotropic", BoundaryCondition("non-isotropic", [{"e": 1}, {"e*": 1}], [{"f": 1}, {"f*": 1}]),
             BoundaryViolation.ISOTROPY),
            ("bracket", BoundaryCondition("bracket", [{"e": 1}, {"f": 1}], [{"e*": 1}, {"f*": 1}]),
             BoundaryViolation.BRACKET_CLOSURE),
            ("complement", BoundaryCondition("complement", [{"e*": 1}, {"f*": 1}, {"h*": 1}], []),
             BoundaryViolation.COMPLEMENT)
        ]
        for name, condition, expected in controls:
            result, violations = validate_boundary_condition(sl2.boundary, condition)
            if result or expected not in violations:
                return test.FAIL("Negative control {} was not rejected as {}".format(name, expected.value),
                                 {violation.value: detail for violation, detail in violations.items()})
            try:
                impose(sl2.system(), condition, OpenSet([0], True))
            except BoundaryConditionException:
                continue
            return test.FAIL("Imposing negative control {} did not raise".format(name))
        return test.PASS()

    @anchor("every line of a two-dimensional symplectic space is Lagrangian")
    def test_03(self, test):
        """Every line of a degree 0 symplectic plane passes validation"""
        labels = self.sys.algebra.labels
        if len(labels) != 2 or any(self.sys.algebra.degree(label) for label in labels):
            return test.SKIPPED("Boundary fields are not a plane in degree 0")
        first, second = labels
        slopes = [Fraction(n, d) for n in range(-3, 4) for d in (1, 2)]
        lines = [{first: 1, second: s} for s in slopes] + [{second: 1}]
        for line in lines:
            complement = [{second: 1}] if line.get(first) else [{first: 1}]
            condition = BoundaryCondition("line", [line], complement)
            result, violations = validate_boundary_condition(self.sys.boundary, condition)
            if not result:
                return test.FAIL("Line {} is not accepted".format(line),
                                 {violation.value: detail for violation, detail in violations.items()})
        return test.PASS("{} lines checked".format(len(lines)))

    @anchor("Psi from the cone of rho to the dual of compactly supported fields is a quasi-isomorphism")
    def test_04(self, test):
        """Lagrangian structure on the restriction to the boundary, on every open of the mesh"""
        for open_set in self.opens():
            result, witness = check_lagrangian(self.sys, open_set)
            if not result:
                return test.FAIL("Psi is not a quasi-isomorphism", witness)
        return test.PASS("{} opens checked".format(len(self.opens())))

    @anchor("a degenerate bulk pairing is not Lagrangian")
    def test_05(self, test):
        """Lagrangian check rejects the system with its pairing scaled to zero"""
        degenerate = BulkBoundarySystem(self.sys.boundary, self.sys.mesh, self.sys.cap, pairing_scale=0,
                                        name=self.sys.name)
        open_set = OpenSet([self.sys.mesh.cells[-1]], False)
        result, _ = check_lagrangian(degenerate, open_set)
        if result:
            return test.FAIL("Zero pairing passed the Lagrangian check on {!r}".format(open_set))
        return test.PASS()

    @anchor("imposing L restores cyclicity of l1")
    def test_06(self, test):
        """Cyclicity holds on conditioned fields for every boundary condition"""
        for condition in self.descriptor.conditions:
            result, witness = check_restored_cyclicity(self.sys, condition)
            if not result:
                witness["condition"] = condition.name
                return test.FAIL("Cyclicity is not restored", witness)
        return test.PASS()

    @anchor("splitting of the fields into conditioned fields and the complement")
    def test_07(self, test):
        """Cutoff splitting is a projection onto the conditioned fields with the expected dimensions"""
        for condition in self.descriptor.conditions:
            result, witness = splitting(self.sys, condition).verify()
            if not result:
                witness["condition"] = condition.name
                return test.FAIL("Splitting fails", witness)
        return test.PASS()

    @anchor("conditioned fields model the homotopy pullback of L along rho")
    def test_08(self, test):
        """rho is surjective and the conditioned fields are quasi-isomorphic to the homotopy pullback"""
        for condition in self.descriptor.conditions:
            for open_set in self.opens():
                result, witness = strict_pullback_model_check(self.sys, condition, open_set)
                if not result:
                    witness["condition"] = condition.name
                    return test.FAIL("Conditioned fields are not the homotopy pullback", witness)
        return test.PASS()
