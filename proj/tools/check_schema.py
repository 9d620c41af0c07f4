#!/usr/bin/env python3
"""Run every JSON-producing command over the fixtures and validate the output."""

import argparse
import json
import subprocess
import sys
from pathlib import Path

import jsonschema


def commands(fixtures: Path):
    grammars = sorted(fixtures.glob("*.cg"))
    pairs = sorted(fixtures.glob("*.cgp"))
    shared = str(fixtures / "enfr-np.cg")
    for g in grammars:
        declares = any(line.startswith("semantics ") for line in g.read_text().splitlines())
        extra = [] if declares else ["--semantics", shared]
        yield ["validate", str(g), *extra]
    for p in pairs:
        yield ["validate", str(p)]
        conditions = ["homomorphism", "n1"]
        if "correspond" in p.read_text():
            conditions += ["nn", "labels"]
        for cond in conditions:
            yield ["check", str(p), "--condition", cond, "--depth", "3"]
        yield ["witness", str(p), "--depth", "3"]
        yield ["enumerate", str(p), "--cat", "A" if "identity" in p.name else "NP", "--depth", "3"]
        yield ["enumerate", str(p), "--cat", "A" if "identity" in p.name else "NP",
               "--depth", "4", "--random", "5", "--seed", "11"]
    pe = str(fixtures / "paper-example.cg")
    yield ["parse", pe, "--utterance", "e c b"]
    yield ["parse", pe, "--utterance", "a b d", "--cat", "A"]
    yield ["enumerate", pe, "--cat", "A", "--depth", "2", "--semantic"]
    yield ["translate", str(fixtures / "identity.cgp"), "--utterance", "a b d"]
    yield ["translate", str(fixtures / "enfr-np.cgp"), "--utterance", "the house", "--trace"]
    yield ["translate", str(fixtures / "enfr-adj.cgp"), "--utterance", "the big cat", "--trace"]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--schema", required=True)
    ap.add_argument("--fixtures", required=True)
    args = ap.parse_args()

    schema = json.loads(Path(args.schema).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    count = 0
    for cmd in commands(Path(args.fixtures)):
        proc = subprocess.run([args.cli, *cmd, "--format", "json"], capture_output=True, text=True)
        count += 1
        if proc.returncode not in (0, 1):
            print(f"FAIL {' '.join(cmd)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        if errors:
            failures += 1
            print(f"FAIL {' '.join(cmd)}: {errors[0].message}")
    print(f"{count - failures}/{count} reports valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
