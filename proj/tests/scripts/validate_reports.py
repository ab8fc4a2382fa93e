"""Validate JSON reports from the CLI against the report schema."""

import argparse
import json
import pathlib
import subprocess
import sys

import jsonschema


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--vnspec", required=True)
    ap.add_argument("--schema", required=True)
    ap.add_argument("--systems", required=True)
    args = ap.parse_args()

    schema = json.loads(pathlib.Path(args.schema).read_text())
    validator = jsonschema.Draft7Validator(schema)

    files = sorted(pathlib.Path(args.systems).glob("*.json"))
    documents = {}
    for f in files:
        out = subprocess.run([args.vnspec, "report", str(f), "--format", "json"],
                             check=True, capture_output=True, text=True).stdout
        documents[f.name] = json.loads(out)
    out = subprocess.run([args.vnspec, "selftest", "--dir", args.systems, "--format", "json"],
                         check=True, capture_output=True, text=True).stdout
    documents["selftest"] = json.loads(out)

    bad = 0
    for name, doc in documents.items():
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            print(f"{name}: {'/'.join(map(str, e.path))}: {e.message}")
        bad += bool(errors)
    if len(documents["selftest"]["reports"]) != len(files):
        print("selftest report count does not match the systems directory")
        bad += 1
    empty = [n for n, d in documents.items() if n != "selftest" and not d["spectrum"]["modules"]]
    if not empty:
        print("no report with an empty module list was validated")
        bad += 1
    print(f"validated {len(documents)} documents, {bad} with errors")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
