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
from ..Examples import system_example
from ..GenericTest import CheckException, GenericTest, InvalidInputException, anchor
from ..GradedLinalg import GradedMap, cohomology_dimensions
from ..IntervalModel import CellMesh, OpenSet
from ..LInfinity import CyclicLInfinity
from ..Observables import (ConditionedFields, FactorizationAssignment, PreconditionException, check_prefactorization,
                           fam_builder, weiss_cech_check, weiss_covers)


class FactorizationTest(GenericTest):
    """
    Runs factorization algebra checks on the observables of the conditioned fields
    """
    def __init__(self, descriptor, **kwargs):
        GenericTest.__init__(self, descriptor, **kwargs)
        if descriptor.condition() is None:
            raise InvalidInputException("System {} lists no boundary conditions".format(descriptor.name))
        self.truncation = CONFIG.WEISS_SYM_TRUNCATION
        self.mesh = CellMesh(BBKUtils.mesh_breakpoints(CONFIG.FACTORIZATION_MESH_BREAKPOINTS))
        self.sys = descriptor.system(mesh=self.mesh, cap=CONFIG.WEISS_POLY_DEGREE_CAP)

    def meshes(self):
        return [CellMesh.uniform(1, self.mesh.delta), self.mesh, self.descriptor.mesh()]

    @anchor("observables form a factorization algebra: Cech descent for Weiss covers")
    def test_01(self, test):
        """Augmented Cech complex of every Weiss cover of every open is exact"""
        checked = 0
        for mesh in self.meshes():
            sys = self.descriptor.system(mesh=mesh, cap=CONFIG.WEISS_POLY_DEGREE_CAP)
            assignment = FactorizationAssignment(ConditionedFields(sys), self.truncation)
            for larger in mesh.opens():
                for cover in weiss_covers(mesh, larger, self.truncation):
                    # a cover containing the open itself has a contractible Cech complex
                    if larger in cover:
                        continue
                    result, witness = weiss_cech_check(assignment, larger, cover)
                    if not result:
                        return test.FAIL("Cech complex is not exact", witness)
                    checked += 1
        return test.PASS("{} covers checked".format(checked))

    @anchor("descent is only asserted for Weiss covers")
    def test_02(self, test):
        """A cover which is not Weiss is rejected"""
        assignment = FactorizationAssignment(ConditionedFields(self.sys), self.truncation)
        cover = [OpenSet([0], True), OpenSet([1], False)]
        try:
            weiss_cech_check(assignment, self.mesh.whole(), cover)
        except PreconditionException:
            return test.PASS()
        return test.FAIL("Non-Weiss cover {} was accepted".format(cover))

    def check_extensions(self, test, assignment, opens):
        """Raise a CheckException carrying a FAIL if an extension map is not a chain map or fails to compose"""
        result, witness = check_prefactorization(assignment, opens)
        if not result:
            raise CheckException(test.FAIL("Extension maps are not functorial chain maps", witness))

    @anchor("prefactorization structure maps are functorial chain maps")
    def test_03(self, test):
        """Extension maps are chain maps, compose correctly and structure maps need disjoint inputs"""
        assignment = FactorizationAssignment(ConditionedFields(self.sys), self.truncation)
        self.check_extensions(test, assignment, self.mesh.opens(punctured=True, empty=True))
        whole = self.mesh.whole()
        left, right = OpenSet([0], True), OpenSet([1], False)
        first = {word: 1 for word in assignment.observables(left).words if len(word) == 1}
        second = {word: 1 for word in assignment.observables(right).words if len(word) == 1}
        expected = assignment.observables(whole).product(assignment.extension(left, whole).apply(first),
                                                         assignment.extension(right, whole).apply(second))
        if assignment.structure_map([(left, first), (right, second)], whole) != expected:
            return test.FAIL("Structure map is not the product of extensions")
        try:
            assignment.structure_map([(left, first), (whole, second)], whole)
        except ValueError:
            return test.PASS()
        return test.FAIL("Structure map accepted overlapping opens")

    @anchor("observables agree with the factorization algebra of an algebra and a module")
    def test_04(self, test):
        """Observables are quasi-isomorphic to F_{A,M} built from the boundary fields and L"""
        report = system_example(self.descriptor, self.truncation)
        if not report["module_axioms"]:
            return test.FAIL("Module axioms fail", report["witness"])
        if not report["oracle_agrees"]:
            return test.FAIL("Observable cohomology differs from the polynomial algebra oracle", report["opens"])
        if not report["comparison"]:
            return test.FAIL("Comparison with F_{A,M} fails", report["witness"])
        return test.PASS()

    @anchor("A = M = Q gives the terminal factorization algebra")
    def test_05(self, test):
        """The factorization algebra of the ground field is the ground field on every open"""
        empty = CyclicLInfinity([])
        inclusion = GradedMap.zero(empty.complex(), empty.complex())
        factorization = fam_builder(empty, empty, inclusion, self.truncation, name="terminal")
        for open_set in self.mesh.opens(empty=True):
            dims = cohomology_dimensions(factorization.assignment.observables(open_set).complex)
            if dims != {0: 1}:
                return test.FAIL("Observables on {!r} are not the ground field".format(open_set), dims)
        return test.PASS()
