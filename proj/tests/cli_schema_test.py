"""Runs every CLI subcommand and validates its JSON output against schema/v1."""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

BINARY = sys.argv[1]
SCHEMA_DIR = pathlib.Path(sys.argv[2])

SCHEMAS = {p.stem: json.loads(p.read_text()) for p in SCHEMA_DIR.glob("*.json")}
REGISTRY = Registry().with_resources(
    (f"https://feynmot.invalid/schema/v1/{name}.json", Resource.from_contents(s)) for name, s in SCHEMAS.items()
)

# (arguments, schema, expected exit code)
CASES = [
    (["psi", "--graph", "banana:3"], "psi", 0),
    (["psi", "--graph", "K4", "--method", "det"], "psi", 0),
    (["symanzik2", "--graph", "sunset", "--p2", "2"], "symanzik2", 0),
    (["class", "banana", "--n", "3", "--check-primes", "2,3,5"], "class", 0),
    (["frame", "--dims", "2,2,1", "--check-primes", "2,3"], "frame", 0),
    (["frame", "--dims3", "1,1,1,0,0,0,0,2"], "frame", 0),
    (["count", "--graph", "K4", "--q", "3"], "count", 0),
    (["upsilon", "--graph", "wheel:4"], "upsilon", 0),
    (["det-count", "--l", "2", "--q", "2", "--bruteforce"], "det-count", 0),
    (["divisor-count", "--l", "3", "--genus", "0", "--components", "0,1", "--q", "3"], "divisor-count", 0),
    (["cremona", "--graph", "banana:4", "--dual", "cycle:4"], "cremona", 0),
    (["renormalize", "--graph", "double-bubble", "--character", "nested:c=1"], "renormalize", 0),
    (["renormalize", "--graph", "bubble-chain", "--character", "mixed:c=2", "--order", "6"], "renormalize", 0),
    (["rg-frame", "--max-degree", "4"], "rg-frame", 0),
    (["param", "--graph", "banana:2", "--D", "3", "--p2", "1", "--samples", "1e4"], "param", 0),
    (["param", "--graph", "banana:2", "--mode", "massive", "--mass", "1", "--samples", "1e3"], "param", 0),
    (["master", "--D", "4"], "master", 0),
    (["master", "--D", "4.5"], "master", 0),
    (["gamma", "--a", "-2"], "gamma", 0),
    (["corpus", "list"], "corpus-list", 0),
    (["sum", "--N", "2", "--primes", "2,3,5,7"], "sum", 0),
    (["feynman-trick", "--q", "1,2,3"], "feynman-trick", 0),
    (["psi", "--graph", "no-such-graph"], "error", 2),
    (["renormalize", "--graph", "cycle:3"], "error", 2),
    (["class", "banana", "--n", "3", "--check-primes", "4"], "error", 2),
    (["count", "--graph", "complete:12", "--q", "7"], "error", 3),
    (["psi"], "error", 2),
]


def main():
    failures = 0
    for args, schema, code in CASES:
        proc = subprocess.run([BINARY, "--threads", "1", *args], capture_output=True, text=True, timeout=120)
        label = " ".join(args)
        try:
            doc = json.loads(proc.stdout)
            jsonschema.Draft202012Validator(SCHEMAS[schema], registry=REGISTRY).validate(doc)
            if proc.returncode != code:
                raise AssertionError(f"exit {proc.returncode}, expected {code}")
            print(f"ok   {label}")
        except Exception as exc:  # report every case before failing
            failures += 1
            print(f"FAIL {label}: {exc}\n{proc.stdout}{proc.stderr}")
    for name, schema in SCHEMAS.items():
        jsonschema.Draft202012Validator.check_schema(schema)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
