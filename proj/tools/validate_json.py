#!/usr/bin/env python3
# Copyright 2026 The hmstream Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Validates JSON documents (or JSON-lines files) against a schema in schemas/."""

import argparse
import json
import pathlib
import sys

import jsonschema
import referencing


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("schema", type=pathlib.Path)
    parser.add_argument("files", nargs="+", type=pathlib.Path)
    parser.add_argument("--lines", action="store_true", help="each line is a document")
    args = parser.parse_args()

    registry = referencing.Registry()
    for path in args.schema.parent.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        registry = registry.with_resource(path.name, referencing.Resource.from_contents(doc))
    schema = json.loads(args.schema.read_text())
    validator = jsonschema.Draft202012Validator(schema, registry=registry)

    failures = 0
    for path in args.files:
        text = path.read_text()
        docs = [line for line in text.splitlines() if line.strip()] if args.lines else [text]
        if not docs:
            print(f"{path}: no documents", file=sys.stderr)
            failures += 1
        for i, doc in enumerate(docs):
            for error in validator.iter_errors(json.loads(doc)):
                print(f"{path}[{i}]: {error.json_path}: {error.message}", file=sys.stderr)
                failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
