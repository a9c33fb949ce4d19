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

import argparse
import inspect
import json
import re
import sys

from datetime import datetime
from enum import IntEnum
from pathlib import Path
from junit_xml import TestSuite, TestCase

from . import Config as CONFIG
from . import TestHelper
from .BBKUtils import BBKUtils, DEFAULT_ARGS
from .Descriptors import load_descriptor, load_registered
from .Examples import list_examples, run_example
from .GenericTest import InvalidInputException
from .TestHelper import DescriptorException
from .TestResult import TestStates
from .suites import BVTest
from .suites import ExamplesTest
from .suites import FactorizationTest
from .suites import LagrangianTest
from .suites import P0Test


SUITE_DEFINITIONS = {
    "bv": {
        "name": "BV Structure",
        "class": BVTest.BVTest
    },
    "lagrangian": {
        "name": "Boundary Conditions and Lagrangian Structure",
        "class": LagrangianTest.LagrangianTest
    },
    "factorization": {
        "name": "Factorization Algebra of Observables",
        "class": FactorizationTest.FactorizationTest
    },
    "p0": {
        "name": "P0 Bracket on Kernel-Presented Observables",
        "class": P0Test.P0Test
    },
    "examples": {
        "name": "Worked BF Computations",
        "class": ExamplesTest.ExamplesTest
    }
}


class ExitCodes(IntEnum):
    OK = 0  # All checks passed, or an informational command completed
    FAIL = 1  # Worst case check was a failure
    INVALID_INPUT = 2  # Malformed descriptor or arguments, or a suite which cannot run on the system


def enumerate_tests(class_def, describe=False):
    if describe:
        tests = ["all: Runs all tests in the suite"]
    else:
        tests = ["all"]
    for method_name in class_def.test_names():
        method = getattr(class_def, method_name)
        description = method_name
        if describe:
            try:
                docstring = inspect.getdoc(method).replace('\n', ' ').replace('\r', '')
                description += ": " + docstring
                if len(docstring) > 160:
                    print(" * WARNING: {}.{} description is too long (> 160 characters)"
                          .format(class_def.__name__, method_name))
            except AttributeError:
                print(" * ERROR: {}.{} is missing a description".format(class_def.__name__, method_name))
        tests.append(description)
    return tests


def selected_suites(suite):
    return list(SUITE_DEFINITIONS) if suite == "all" else [suite]


def positive_int(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("{!r} is not an integer".format(value))
    if number < 1:
        raise argparse.ArgumentTypeError("{} is not positive".format(number))
    return number


def add_budget_arguments(parser):
    parser.add_argument('--sym-trunc', default=DEFAULT_ARGS["sym_trunc"], type=positive_int,
                        help="Sym-truncation T of observable complexes, used by the p0 suite")
    parser.add_argument('--weiss-sym-trunc', default=DEFAULT_ARGS["weiss_sym_trunc"], type=positive_int,
                        help="Sym-truncation of the Weiss cover enumeration in the factorization suite and of the "
                             "boundary pushforward example")
    parser.add_argument('--weight-cap', default=DEFAULT_ARGS["weight_cap"], type=positive_int,
                        help="largest B-weight of the local functional computations")


def parse_arguments(argv):
    parser = argparse.ArgumentParser(prog="bbk-test.py", description='Bulk-Boundary BV Verification Suite')
    parser.add_argument('--list-suites', action='store_true', help="list available verification suites")
    parser.add_argument('--describe-suites', action='store_true', help="describe the available verification suites")

    subparsers = parser.add_subparsers(dest="command")
    verify_parser = subparsers.add_parser("verify", help="run verification suites against a system descriptor")
    verify_parser.add_argument('--input', default=DEFAULT_ARGS["input"],
                               help="system descriptor file, or the name of a registered system")
    verify_parser.add_argument('--suite', default=DEFAULT_ARGS["suite"],
                               help="suite to run ({} or all)".format(", ".join(SUITE_DEFINITIONS)))
    verify_parser.add_argument('--list-tests', action='store_true',
                               help="list available tests for a given suite")
    verify_parser.add_argument('--describe-tests', action='store_true',
                               help="describe the available tests for a given suite")
    verify_parser.add_argument('--selection', default=DEFAULT_ARGS["selection"],
                               help="select a specific test to run, otherwise 'all' will be tested")
    add_budget_arguments(verify_parser)
    verify_parser.add_argument('--arity-budget', default=DEFAULT_ARGS["arity_budget"], type=positive_int,
                               help="largest generalized Jacobi identity arity a check may expand")
    verify_parser.add_argument('--poly-cap', default=DEFAULT_ARGS["poly_cap"], type=positive_int,
                               help="polynomial-degree cap of the interval model")
    verify_parser.add_argument('--report', default=DEFAULT_ARGS["report"],
                               help="filename to save results to (ending .xml or .json), otherwise print to stdout")

    examples_parser = subparsers.add_parser("examples", help="list or run the registered worked examples")
    examples_parser.add_argument("action", choices=["list", "run"])
    examples_parser.add_argument("name", nargs="?", help="name of the example to run")
    add_budget_arguments(examples_parser)

    schema_parser = subparsers.add_parser("schema", help="print the system descriptor JSON schema")
    schema_parser.add_argument('--check', default=None, help="validate a descriptor file against the schema")

    return parser.parse_args(argv)


def validate_args(args):
    """Validate input arguments, printing informational listings or errors and exiting where appropriate"""
    msg = ""
    return_type = ExitCodes.OK
    if args.list_suites:
        for suite in SUITE_DEFINITIONS:
            msg += suite + '\n'
    elif args.describe_suites:
        for suite in SUITE_DEFINITIONS:
            msg += suite + ": " + SUITE_DEFINITIONS[suite]["name"] + '\n'
    elif args.command is None:
        msg = "ERROR: No command given, expected one of 'verify', 'examples' or 'schema'"
        return_type = ExitCodes.INVALID_INPUT
    elif args.command == "verify":
        if args.suite != "all" and args.suite not in SUITE_DEFINITIONS:
            msg = "ERROR: The requested suite '{}' does not exist".format(args.suite)
            return_type = ExitCodes.INVALID_INPUT
        elif args.list_tests or args.describe_tests:
            for suite in selected_suites(args.suite):
                for test_name in enumerate_tests(SUITE_DEFINITIONS[suite]["class"], describe=args.describe_tests):
                    msg += ("{}.".format(suite) if args.suite == "all" else "") + test_name + '\n'
        elif args.selection != "all" and (args.suite == "all" or args.selection not in enumerate_tests(
                SUITE_DEFINITIONS[args.suite]["class"])):
            msg = "ERROR: Test with name '{}' does not exist in suite '{}'".format(args.selection, args.suite)
            return_type = ExitCodes.INVALID_INPUT
        elif not args.input and any(SUITE_DEFINITIONS[suite]["class"].requires_system
                                    for suite in selected_suites(args.suite)):
            msg = "ERROR: No system descriptor specified (--input)"
            return_type = ExitCodes.INVALID_INPUT
        elif args.report and not args.report.endswith(".xml") and not args.report.endswith(".json"):
            msg = "ERROR: Report file must end with '.xml' or '.json'"
            return_type = ExitCodes.INVALID_INPUT
    elif args.command == "examples":
        if args.action == "list":
            for name, description in list_examples():
                msg += name + ": " + description + '\n'
        elif not args.name:
            msg = "ERROR: No example name given"
            return_type = ExitCodes.INVALID_INPUT
        elif args.name not in dict(list_examples()):
            msg = "ERROR: The requested example '{}' does not exist".format(args.name)
            return_type = ExitCodes.INVALID_INPUT
    arg_return(return_type, msg)


def arg_return(return_type, msg=""):
    if msg:
        if msg.endswith('\n'):
            msg = msg[:-1]
        print(" * " + msg if return_type != ExitCodes.OK else msg)
        sys.exit(return_type)


def apply_config(args):
    """Command line budgets write through to the configuration every suite reads"""
    if getattr(args, "sym_trunc", None) is not None:
        CONFIG.SYM_TRUNCATION = args.sym_trunc
    if getattr(args, "weiss_sym_trunc", None) is not None:
        CONFIG.WEISS_SYM_TRUNCATION = args.weiss_sym_trunc
    if getattr(args, "weight_cap", None) is not None:
        CONFIG.WEIGHT_CAP = args.weight_cap
    if getattr(args, "arity_budget", None) is not None:
        CONFIG.ARITY_BUDGET = args.arity_budget
    if getattr(args, "poly_cap", None) is not None:
        CONFIG.POLY_DEGREE_CAP = args.poly_cap


def load_input(args):
    """A descriptor file, falling back to the registered system of the same name"""
    if not args.input:
        return None
    path = Path(args.input)
    if path.exists():
        descriptor = load_descriptor(path)
    elif path.stem in TestHelper.registered_descriptors():
        descriptor = load_registered(path.stem)
    else:
        raise DescriptorException("Unable to find system descriptor {}".format(args.input))
    if args.poly_cap is not None:
        descriptor.poly_cap = args.poly_cap
    return descriptor


def run_tests(args, descriptor):
    results = []
    for suite in selected_suites(args.suite):
        suite_def = SUITE_DEFINITIONS[suite]
        if suite_def["class"].requires_system and descriptor is None:
            print(" * WARNING: Suite '{}' needs a system descriptor and was not run".format(suite))
            continue
        try:
            test_obj = suite_def["class"](descriptor)
        except InvalidInputException as e:
            if args.suite != "all":
                raise
            print(" * WARNING: Suite '{}' was not run: {}".format(suite, e))
            continue
        print(" * Running suite '{}'".format(suite))
        results.append({"suite": suite, "def": suite_def, "result": test_obj.run_tests([args.selection])})
    return results


def _check_test_result(test_result, results):
    if test_result is None:
        print(
            "The following results currently are being returned: {}"
            .format([result.name for result in results["result"] if result != test_result])
        )
        raise AttributeError("""
            None object returned as result from one of the tests. Please see the terminal output.
        """)


def _export_config():
    current_config = {}
    for param in dir(CONFIG):
        if re.match("^[A-Z][A-Z0-9_]*$", param):
            current_config[param] = getattr(CONFIG, param)
    return BBKUtils.to_jsonable(current_config)


def _report_name(suite, test_result):
    return "{}.{}".format(suite, test_result.name)


def format_test_results(results, format, args, system=None):
    formatted = None
    total_time = 0
    max_name_len = 0
    for suite_results in results:
        for test_result in suite_results["result"]:
            _check_test_result(test_result, suite_results)
            total_time += test_result.elapsed_time
            max_name_len = max(max_name_len, len(_report_name(suite_results["suite"], test_result)))
    if format == "json":
        formatted = {
            "version": CONFIG.REPORT_VERSION,
            "timestamp": datetime.now().isoformat(),
            "suite": args.suite,
            "system": system,
            "config": _export_config(),
            "results": []
        }
        for suite_results in results:
            for test_result in suite_results["result"]:
                entry = BBKUtils.to_jsonable(test_result.to_json())
                entry["name"] = _report_name(suite_results["suite"], test_result)
                formatted["results"].append(entry)
        TestHelper.validate_report(formatted)
        formatted = json.dumps(formatted, sort_keys=True, indent=4)
    elif format == "junit":
        formatted = []
        for suite_results in results:
            test_cases = []
            for test_result in suite_results["result"]:
                test_case = TestCase(test_result.name, classname=suite_results["suite"],
                                     elapsed_sec=test_result.elapsed_time, timestamp=test_result.timestamp)
                if test_result.state == TestStates.SKIPPED:
                    test_case.add_skipped_info(test_result.detail)
                elif test_result.state == TestStates.FAIL:
                    witness = None
                    if test_result.witness is not None:
                        witness = json.dumps(BBKUtils.to_jsonable(test_result.witness), sort_keys=True)
                    test_case.add_failure_info(test_result.detail, output=witness, failure_type=str(test_result.state))
                test_cases.append(test_case)
            formatted.append(TestSuite(suite_results["def"]["name"] + ": " + (system or "no system"), test_cases))
    elif format == "console":
        formatted = "\r\nPrinting results for suite '{}' on system '{}'\r\n".format(args.suite, system or "-")
        formatted += "----------------------------\r\n"
        for suite_results in results:
            for test_result in suite_results["result"]:
                name = _report_name(suite_results["suite"], test_result)
                num_extra_dots = max_name_len - len(name)
                formatted += "{} ...{} {}\r\n".format(name, ("." * num_extra_dots), str(test_result.state))
        formatted += "----------------------------\r\n"
        count = sum(len(suite_results["result"]) for suite_results in results)
        formatted += "Ran {} tests in ".format(count) + "{0:.3f}s".format(total_time) + "\r\n"
    return formatted


def identify_exit_code(results):
    exit_code = ExitCodes.OK
    for suite_results in results:
        for test_result in suite_results["result"]:
            if test_result.state == TestStates.FAIL:
                exit_code = max(exit_code, ExitCodes.FAIL)
    return exit_code


def write_test_results(results, args, system=None):
    if args.report.endswith(".xml"):
        formatted = format_test_results(results, "junit", args, system)
    else:
        formatted = format_test_results(results, "json", args, system)
    with open(args.report, "w") as f:
        if args.report.endswith(".xml"):
            # pretty-print to help out Jenkins (and us humans), which struggles otherwise
            TestSuite.to_file(f, formatted, prettyprint=True)
        else:
            f.write(formatted)
        print(" * Test results written to file: {}".format(args.report))
    return identify_exit_code(results)


def print_test_results(results, args, system=None):
    print(format_test_results(results, "console", args, system))
    return identify_exit_code(results)


def run_verification(args):
    try:
        descriptor = load_input(args)
    except DescriptorException as e:
        print(" * ERROR: {}".format(e))
        return ExitCodes.INVALID_INPUT
    system = descriptor.name if descriptor else None
    try:
        results = run_tests(args, descriptor)
    except InvalidInputException as e:
        print(" * ERROR: {}".format(e))
        return ExitCodes.INVALID_INPUT
    exit_code = print_test_results(results, args, system)
    if args.report:
        write_test_results(results, args, system)
    return exit_code


def run_examples(args):
    report = BBKUtils.to_jsonable(run_example(args.name, args.sym_trunc, args.weight_cap))
    print(json.dumps(report, sort_keys=True, indent=4))
    return ExitCodes.OK if report["passed"] else ExitCodes.FAIL


def run_schema(args):
    if args.check:
        try:
            TestHelper.validate_descriptor(TestHelper.load_json_file(args.check))
        except DescriptorException as e:
            print(" * ERROR: {}".format(e))
            return ExitCodes.INVALID_INPUT
        print(" * {} is a valid system descriptor".format(args.check))
        return ExitCodes.OK
    print(json.dumps(TestHelper.load_resolved_schema("system.json"), sort_keys=True, indent=4))
    return ExitCodes.OK


def main(args):
    # Parse and validate command line arguments
    cmd_args = parse_arguments(args[1:])
    validate_args(cmd_args)
    apply_config(cmd_args)

    if cmd_args.command == "verify":
        exit_code = run_verification(cmd_args)
    elif cmd_args.command == "examples":
        exit_code = run_examples(cmd_args)
    else:
        exit_code = run_schema(cmd_args)
    sys.exit(exit_code)
