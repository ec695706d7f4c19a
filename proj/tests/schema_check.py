#!/usr/bin/env python3
#
# Copyright 2026 The kiv Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validate every command's JSON report against the shipped schema."""

import json
import subprocess
import sys

import jsonschema

INVOCATIONS = [
    ["eval", "--nu", "0,1", "--x", "0.5,3"],
    ["gamma", "--re", "0,1.5", "--im", "1,-2"],
    ["identity-check", "--nu", "1", "--nu2", "2", "--xi", "0.1"],
    ["ortho-scan", "--nu", "1", "--xi", "0.01", "--points", "5"],
    ["delta-test", "--nu", "1", "--xi", "1e-2,1e-4", "--phi", "gaussian:1,0.2"],
    ["delta-test", "--nu", "2", "--xi", "1e-2,1e-4", "--mode", "lemma", "--phi", "compact:2,1"],
    ["asym-check", "--nu", "1", "--x", "0.0625,0.03125"],
    ["--tol", "1e-30", "identity-check", "--nu", "1", "--nu2", "2", "--xi", "0.1"],
]


def main():
    tool, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in INVOCATIONS:
        proc = subprocess.run([tool, *args], capture_output=True, text=True)
        try:
            report = json.loads(proc.stdout)
        except json.JSONDecodeError as err:
            print(f"FAIL {' '.join(args)}: not JSON ({err})")
            failures += 1
            continue
        errors = list(validator.iter_errors(report))
        if errors:
            failures += 1
            for e in errors:
                print(f"FAIL {' '.join(args)}: {e.message}")
        else:
            print(f"ok   {' '.join(args)} (exit {proc.returncode})")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
