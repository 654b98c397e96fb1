"""Validates report JSON files against the shipped schema."""

import json
import sys

import jsonschema


def main(argv):
    with open(argv[1]) as f:
        schema = json.load(f)
    jsonschema.Draft7Validator.check_schema(schema)
    validator = jsonschema.Draft7Validator(schema)
    status = 0
    for path in argv[2:]:
        with open(path) as f:
            doc = json.load(f)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for err in errors:
            print(f"{path}: {'/'.join(map(str, err.path))}: {err.message}")
            status = 1
        summary = doc["summary"]
        passed = sum(1 for c in doc["cases"] if c["pass"])
        if summary["cases"] != len(doc["cases"]) or summary["passed"] != passed:
            print(f"{path}: summary counts disagree with cases")
            status = 1
        for c in doc["cases"]:
            if c["pass"] != (c["margin"] <= c["tolerance"]):
                print(f"{path}: case {c['name']} pass flag disagrees with margin")
                status = 1
        if status == 0:
            print(f"{path}: ok ({len(doc['cases'])} cases)")
    return status


if __name__ == "__main__":
    sys.exit(main(sys.argv))
