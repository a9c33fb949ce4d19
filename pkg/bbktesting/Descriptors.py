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

from . import Config as CONFIG
from . import TestHelper
from .BBKUtils import BBKUtils
from .BulkBoundary import BoundaryCondition, BoundaryTheory, BulkBoundarySystem
from .IntervalModel import CellMesh
from .LInfinity import CyclicLInfinity, LieAlgebra
from .TestHelper import DescriptorException


def _rational(value, path):
    try:
        return BBKUtils.parse_rational(value)
    except ValueError as e:
        raise DescriptorException("{}: {}".format(path, e), path)


def _label_at(labels, index, path):
    if index >= len(labels):
        raise DescriptorException("{}: basis index {} is out of range".format(path, index), path)
    return labels[index]


def parse_boundary(data, path="$.boundary"):
    """Boundary algebra from basis labels, differential and bracket entries and pairing entries"""
    labels = [entry["label"] for entry in data["basis"]]
    if len(set(labels)) != len(labels):
        raise DescriptorException("{}.basis: duplicate basis label".format(path), path + ".basis")
    differential = {}
    for i, entry in enumerate(data.get("differential", [])):
        where = "{}.differential[{}]".format(path, i)
        source = _label_at(labels, entry["input"], where + ".input")
        target = _label_at(labels, entry["output"], where + ".output")
        BBKUtils.add_into(differential.setdefault(source, {}), {target: _rational(entry["coeff"], where + ".coeff")})
    brackets = {}
    for i, block in enumerate(data.get("brackets", [])):
        entries = brackets.setdefault(block["arity"], {})
        for j, entry in enumerate(block["entries"]):
            where = "{}.brackets[{}].entries[{}]".format(path, i, j)
            if len(entry["inputs"]) != block["arity"]:
                raise DescriptorException("{}.inputs: expected {} inputs".format(where, block["arity"]),
                                          where + ".inputs")
            inputs = tuple(_label_at(labels, k, where + ".inputs") for k in entry["inputs"])
            output = _label_at(labels, entry["output"], where + ".output")
            BBKUtils.add_into(entries.setdefault(inputs, {}), {output: _rational(entry["coeff"], where + ".coeff")})
    pairing = {}
    for i, entry in enumerate(data["pairing"]["entries"]):
        where = "{}.pairing.entries[{}]".format(path, i)
        key = (_label_at(labels, entry["first"], where + ".first"),
               _label_at(labels, entry["second"], where + ".second"))
        pairing[key] = _rational(entry["value"], where + ".value")
    try:
        return CyclicLInfinity([(entry["label"], entry["degree"]) for entry in data["basis"]], differential, brackets,
                               pairing, data["pairing"]["degree"], symplectic=True)
    except ValueError as e:
        raise DescriptorException("{}: {}".format(path, e), path)


def parse_lie_algebra(data, path="$.boundary.lie_algebra"):
    brackets = {}
    for i, entry in enumerate(data.get("brackets", [])):
        where = "{}.brackets[{}]".format(path, i)
        key = (entry["first"], entry["second"])
        BBKUtils.add_into(brackets.setdefault(key, {}), {entry["output"]: _rational(entry["coeff"], where + ".coeff")})
    try:
        return LieAlgebra(data["labels"], brackets, name=data["name"])
    except ValueError as e:
        raise DescriptorException("{}: {}".format(path, e), path)


def parse_condition(algebra, data, path):
    def span(key):
        vectors = []
        for i, entry in enumerate(data.get(key, [])):
            vector = {}
            for label, coeff in entry.items():
                where = "{}.{}[{}].{}".format(path, key, i, label)
                if label not in algebra.space:
                    raise DescriptorException("{}: unknown basis label".format(where), where)
                vector[label] = _rational(coeff, where)
            vectors.append(vector)
        return vectors
    return BoundaryCondition(data["name"], span("lagrangian"), span("complement"))


class SystemDescriptor(object):
    """A parsed system descriptor: the boundary theory, its mesh and its named boundary conditions"""

    def __init__(self, name, boundary, conditions, breakpoints=None, poly_cap=None, lie_algebra=None,
                 description=""):
        self.name = name
        self.boundary = boundary
        self.conditions = conditions
        self.breakpoints = breakpoints
        self.poly_cap = poly_cap
        self.lie_algebra = lie_algebra
        self.description = description

    @property
    def algebra(self):
        return self.boundary.algebra

    def condition(self, name=None):
        """The named condition, or the first one listed"""
        if not self.conditions:
            return None
        if name is None:
            return self.conditions[0]
        for condition in self.conditions:
            if condition.name == name:
                return condition
        raise DescriptorException("System {} has no boundary condition {!r}".format(self.name, name))

    def mesh(self):
        return CellMesh(self.breakpoints or BBKUtils.mesh_breakpoints())

    def system(self, mesh=None, cap=None, condition=None):
        cap = cap if cap is not None else (self.poly_cap or CONFIG.POLY_DEGREE_CAP)
        return BulkBoundarySystem(self.boundary, mesh or self.mesh(), cap, self.condition(condition), name=self.name)


def parse_descriptor(payload):
    """Validate a descriptor against the system schema and build it"""
    TestHelper.validate_descriptor(payload)
    boundary_data = payload["boundary"]
    lie_algebra = None
    if boundary_data.get("kind") == "bf":
        lie_algebra = parse_lie_algebra(boundary_data["lie_algebra"])
        algebra = lie_algebra.semidirect_dual(1, name="BF[{}]".format(lie_algebra.name))
    else:
        algebra = parse_boundary(boundary_data)
    algebra.name = payload["name"]
    interval = payload.get("interval", {})
    breakpoints = None
    if "breakpoints" in interval:
        breakpoints = [_rational(b, "$.interval.breakpoints[{}]".format(i))
                       for i, b in enumerate(interval["breakpoints"])]
        try:
            CellMesh(breakpoints)
        except ValueError as e:
            raise DescriptorException("$.interval.breakpoints: {}".format(e), "$.interval.breakpoints")
    conditions = [parse_condition(algebra, data, "$.conditions[{}]".format(i))
                  for i, data in enumerate(payload.get("conditions", []))]
    return SystemDescriptor(payload["name"], BoundaryTheory(algebra, payload["name"]), conditions, breakpoints,
                            interval.get("poly_cap"), lie_algebra, payload.get("description", ""))


def load_descriptor(path):
    return parse_descriptor(TestHelper.load_json_file(path))


def load_registered(name):
    if name not in TestHelper.registered_descriptors():
        raise DescriptorException("No registered system named {!r}".format(name))
    return load_descriptor(TestHelper.DESCRIPTOR_PATH / "{}.json".format(name))
