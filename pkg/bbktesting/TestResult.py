# Copyright (C) 2018 Riedel Communications GmbH & Co. KG
#
# Modifications Copyright 2018 British Broadcasting Corporation
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

import inspect
import datetime
import time

from enum import Enum


class TestStates(Enum):
    PASS = 0
    FAIL = 1
    SKIPPED = 2

    def __init__(self, *args):
        self.names = ["Pass", "Fail", "Skipped"]

    def __str__(self):
        return self.names[self.value]


class TestResult(object):
    def __init__(self, name, state, description, detail, anchor, witness, timestamp, elapsed_time):
        self.name = name
        self.state = state
        self.description = description
        self.detail = detail
        self.anchor = anchor
        self.witness = witness
        self.timestamp = timestamp
        self.elapsed_time = elapsed_time

    def output(self):
        return [self.name, str(self.state), self.description, self.detail, self.anchor, self.timestamp,
                "{0:.3f}s".format(self.elapsed_time)]

    def to_json(self, timing=True):
        result = {
            "name": self.name,
            "anchor": self.anchor,
            "state": str(self.state),
            "detail": self.detail,
            "elapsed_time": self.elapsed_time if timing else 0
        }
        if self.witness is not None:
            result["witness"] = self.witness
        return result


class Test(object):
    def __init__(self, description, name=None, anchor=""):
        self.description = description
        self.name = name
        self.anchor = anchor
        if not self.name:
            # Get name of calling function
            self.name = inspect.stack()[1][3]
        self.timer = time.time()

    def _current_time(self):
        return datetime.datetime.now().strftime("%H:%M:%S.%f")[:-3]

    def _time_elapsed(self):
        return time.time() - self.timer

    def _result(self, state, detail, witness):
        return TestResult(self.name, state, self.description, detail, self.anchor, witness, self._current_time(),
                          self._time_elapsed())

    # Pass: the property holds exactly within the configured budgets
    def PASS(self, detail="", witness=None):
        return self._result(TestStates.PASS, detail, witness)

    # Fail: the property is violated; the witness carries the counterexample
    def FAIL(self, detail, witness=None):
        return self._result(TestStates.FAIL, detail, witness)

    # Skipped: the check does not apply to the system under test
    def SKIPPED(self, detail=""):
        return self._result(TestStates.SKIPPED, detail, None)
