#!/usr/bin/env python3
"""Smoke test for the hyperbell_py extension module.

Builds the cdylib if needed, loads it as a Python module, and checks a few
known values across every exposed entry point. Exits 0 on success.
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def locate_or_build_library() -> Path:
    candidates = [
        REPO_ROOT / "target" / "debug" / "libhyperbell_py.so",
        REPO_ROOT / "target" / "release" / "libhyperbell_py.so",
    ]
    for path in candidates:
        if path.exists():
            return path
    print("library not built yet; running cargo build -p hyperbell-py", flush=True)
    subprocess.run(
        ["cargo", "build", "-p", "hyperbell-py"],
        cwd=REPO_ROOT,
        check=True,
    )
    for path in candidates:
        if path.exists():
            return path
    raise SystemExit("cargo build succeeded but no libhyperbell_py.so was produced")


def import_module(library: Path):
    staging = Path(tempfile.mkdtemp(prefix="hyperbell_py_"))
    shutil.copy2(library, staging / "hyperbell_py.so")
    sys.path.insert(0, str(staging))
    import hyperbell_py

    return hyperbell_py


def main() -> None:
    hb = import_module(locate_or_build_library())

    assert hb.extended_bell(0, 10) == 115975
    assert hb.extended_bell(6, 6) == 173566857025139312
    assert hb.extended_bell_prefix(1, 6) == [1, 1, 3, 16, 131, 1496, 22482]

    assert hb.stirling(1, 4, 2) == 34
    assert hb.stirling(2, 8, 5) == 17188416000
    assert hb.supra_diagonal(1, 1, 13) == hb.stirling(1, 14, 13)

    assert hb.restricted_bell(0, 3, 10) == 337
    assert hb.restricted_bell(2, 2, 8) == 347117

    assert hb.oracle_bell_matches(2, 20)

    assert hb.general_sequence([1, 2], 7) == [1, 1, 4, 37, 641, 18276, 789377, 48681011]
    try:
        hb.general_sequence([2], 10)
    except ValueError as err:
        assert "index 2" in str(err), err
    else:
        raise AssertionError("general_sequence([2], ...) should raise ValueError")

    overlap, lhs_lo, lhs_hi, rhs_lo, rhs_hi, gap = hb.identity_check("L1-first", terms=30)
    assert overlap, (lhs_lo, lhs_hi, rhs_lo, rhs_hi)
    assert float(lhs_lo) <= float(rhs_hi) and float(rhs_lo) <= float(lhs_hi)
    assert float(gap) < 1e-6, gap

    print("smoke test passed: 12 checks OK")


if __name__ == "__main__":
    main()
