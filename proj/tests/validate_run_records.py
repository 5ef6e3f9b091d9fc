"""Runs every CLI subcommand and validates its JSON record against the
published schema (schema/run_record.schema.json).

Usage: validate_run_records.py <mcoords-binary> <schema-path>
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())

    with tempfile.TemporaryDirectory() as tmp:
        tree = str(Path(tmp) / "ex2.mtree")
        runs = {
            "solve": ["solve", "--backend", "example2", "--alpha", "2",
                      "--stop", "count=12", "--accumulate", "count",
                      "--tree-out", tree],
            "solve_classic": ["solve", "--backend", "synthetic", "--d", "60",
                              "--classic", "--rep", "IV", "--seed", "5"],
            "solve_parametric": ["solve", "--backend", "parametric",
                                 "--degree", "8", "--seed", "3"],
            "unpack": ["unpack", tree, "--accumulate", "count"],
            "table": ["table"],
            "stats": ["stats", "--trials", "100", "--d", "40", "--seed", "4"],
            "tradeoff": ["tradeoff", "--d", "200", "--trials", "2",
                         "--alpha", "1,4"],
        }
        for name, args in runs.items():
            out = str(Path(tmp) / f"{name}.json")
            subprocess.run([binary, *args, "--json-out", out], check=True,
                           capture_output=True)
            record = json.loads(Path(out).read_text())
            jsonschema.validate(record, schema)
            print(f"{name}: valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
