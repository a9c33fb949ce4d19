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

import json
import jsonref
import jsonschema
from pathlib import Path

SCHEMA_PATH = Path(__file__).resolve().parent / "schemas"
DESCRIPTOR_PATH = Path(__file__).resolve().parent / "descriptors"


class DescriptorException(Exception):
    """A system descriptor is malformed; 'path' locates the offending field when known"""

    def __init__(self, message, path=None):
        Exception.__init__(self, message)
        self.path = path


def json_path(parts):
    """Render a jsonschema error path as $.a[0].b"""
    result = "$"
    for part in parts:
        if isinstance(part, int):
            result += "[{}]".format(part)
        else:
            result += ".{}".format(part)
    return result


def load_resolved_schema(file_name, schema_path=SCHEMA_PATH):
    """
    Parses a schema file and resolves its `$ref`s, both within the file and to sibling files.
    """
    json_file = Path(schema_path).resolve() / file_name
    with open(str(json_file), "r") as f:
        return jsonref.load(f, base_uri=json_file.as_uri(), jsonschema=True, lazy_load=False, proxies=False)


def load_raw_schema(file_name, schema_path=SCHEMA_PATH):
    with open(str(Path(schema_path) / file_name), "r") as f:
        return json.load(f)


def validate_schema(payload, schema):
    """
    Validate the payload against the given schema, raising a DescriptorException at the
    deepest failing location.
    """
    validator = jsonschema.Draft7Validator(schema, format_checker=jsonschema.FormatChecker())
    error = jsonschema.exceptions.best_match(validator.iter_errors(payload))
    if error is not None:
        location = json_path(error.absolute_path)
        raise DescriptorException("{}: {}".format(location, error.message), location)


def validate_descriptor(payload):
    validate_schema(payload, load_resolved_schema("system.json"))


def validate_report(payload):
    validate_schema(payload, load_resolved_schema("report.json"))


def load_json_file(path):
    try:
        with open(str(path), "r") as f:
            return json.load(f)
    except OSError as e:
        raise DescriptorException("Unable to read {}: {}".format(path, e.strerror))
    except ValueError as e:
        raise DescriptorException("{} is not valid JSON: {}".format(path, e))


def registered_descriptors():
    return sorted(path.stem for path in DESCRIPTOR_PATH.glob("*.json"))
