#!/usr/bin/env python3
"""Regenerate the golden CLI outputs under tests/golden/.

Run from the repository root after an intentional output-format change:

    python3 scripts/regen_goldens.py
"""

import contextlib
import io
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from subsetkit import cli  # noqa: E402
from golden_manifest import CASES  # noqa: E402


def main() -> None:
    golden = ROOT / "tests" / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    for name, payload, argv in CASES:
        inst_path = golden / f"{name}.json"
        inst_path.write_text(json.dumps(payload, sort_keys=True) + "\n")
        buf = io.StringIO()
        args = [a.replace("{inst}", str(inst_path)) for a in argv]
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
            rc = cli.main(args)
        if rc != 0:
            raise SystemExit(f"{name}: exit code {rc}")
        (golden / f"{name}.out").write_bytes(buf.getvalue().encode())
        print(f"{name}: {len(buf.getvalue())} bytes")


if __name__ == "__main__":
    main()
