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
import random
import traceback
import zlib
from concurrent.futures import ThreadPoolExecutor

from . import Config as CONFIG
from .BBKUtils import BudgetException
from .TestResult import Test


def anchor(text):
    """Decorator recording the property a test method checks, reported alongside its result"""

    def decorate(func):
        func.anchor = text
        return func
    return decorate


class CheckException(Exception):
    """Provides a way to exit a single test, by providing the TestResult return statement as the first exception
       parameter"""
    pass


class InvalidInputException(Exception):
    """The system under test cannot be used by the suite. Causes all tests to abort"""
    pass


class GenericTest(object):
    """
    Generic verification suite.
    Subclasses define test_* methods taking a Test and returning its TestResult.
    """

    # Whether the suite needs a system descriptor
    requires_system = True

    def __init__(self, descriptor=None, **kwargs):
        self.descriptor = descriptor
        self.result = list()
        if self.requires_system and descriptor is None:
            raise InvalidInputException("Suite {} needs a system descriptor (--input)".format(self.suite_name()))

    @classmethod
    def suite_name(cls):
        return cls.__name__

    @classmethod
    def test_names(cls):
        return sorted(name for name in dir(cls) if name.startswith("test_") and callable(getattr(cls, name)))

    @staticmethod
    def rng(test):
        """Random source seeded from the configured seed and the test name, independent of scheduling"""
        return random.Random(CONFIG.RANDOM_SEED ^ zlib.crc32(test.name.encode("utf-8")))

    def check(self, test, outcome, message, detail=""):
        """Turn a (bool, witness) pair into a PASS or FAIL result"""
        result, witness = outcome
        if result:
            return test.PASS(detail)
        return test.FAIL(message, witness)

    def execute_test(self, test_name):
        """Perform a test defined within this class"""
        method = getattr(self, test_name)
        print(" * Running " + test_name)
        test = Test(inspect.getdoc(method), test_name, getattr(method, "anchor", ""))
        try:
            return method(test)
        except CheckException as e:
            return e.args[0]
        except BudgetException as e:
            return test.FAIL("Budget exceeded: {}".format(e))
        except Exception as e:
            return self.uncaught_exception(test, e)

    def execute_tests(self, test_names):
        """Perform the given tests, concurrently up to MAX_THREADS, collecting results in name order"""
        with ThreadPoolExecutor(max_workers=CONFIG.MAX_THREADS) as executor:
            results = list(executor.map(self.execute_test, test_names))
        self.result += sorted(results, key=lambda result: result.name)

    def uncaught_exception(self, test, exception):
        """Print a traceback and provide a test FAIL result for uncaught exceptions"""
        traceback.print_exc()
        return test.FAIL("Uncaught exception: {}".format(exception))

    def set_up_tests(self):
        """Called before a set of tests is run. Override this method with setup code."""
        pass

    def tear_down_tests(self):
        """Called after a set of tests is run. Override this method with teardown code."""
        pass

    def run_tests(self, test_names=["all"]):
        """Perform tests and return the results as a list"""
        selected = []
        for name in test_names:
            if name == "all":
                selected += self.test_names()
            elif name in self.test_names():
                selected.append(name)
            else:
                raise InvalidInputException("Suite {} has no test {}".format(self.suite_name(), name))
        self.set_up_tests()
        self.execute_tests(sorted(set(selected)))
        self.tear_down_tests()
        return self.result
