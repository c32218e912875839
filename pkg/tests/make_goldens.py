"""Regenerate the golden CLI transcripts in tests/data/golden/.

Run from anywhere: `python3 tests/make_goldens.py`.  Review the diff
before committing; the CLI tests compare byte for byte.
"""
import json
import os
import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from cli_cases import CASES, run_case


def main():
    os.chdir(HERE)
    golden = HERE / "data" / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES:
        code, out, err = run_case(argv)
        record = {"argv": argv, "exit": code, "stdout": out, "stderr": err}
        path = golden / f"{name}.json"
        path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
        print(f"{name}: exit {code}, {len(out)}b stdout, {len(err)}b stderr")


if __name__ == "__main__":
    main()
