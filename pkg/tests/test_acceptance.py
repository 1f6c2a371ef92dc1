"""Acceptance suite: every published value and invariant, one line each.

The rows live in ``symtensor.verification`` (also behind the CLI's
``verify-paper``); this module runs each row as its own test and prints a
pass/fail line so the full table is visible under ``pytest -s`` or in the
captured output of a failure.
"""

import pytest

from symtensor.verification import build_rows

ROWS = build_rows()


@pytest.mark.parametrize("row", ROWS, ids=[r.name for r in ROWS])
def test_row(row):
    result = row.run()
    status = "PASS" if result.ok else "FAIL"
    print(f"[{status}] {row.name}: expected {result.expected}, got {result.actual}")
    assert result.ok, f"{row.name}: expected {result.expected}, got {result.actual}"


def test_character_identity_values():
    # chi(identity) across the catalog covers the published set
    from symtensor.spaces import SPACES
    dims = {sp.dim for sp in SPACES.values()}
    assert {21, 45, 108, 171, 36, 6, 3} <= dims


def test_every_category_present():
    from symtensor.verification import ROW_CATEGORIES
    seen = {row.category for row in ROWS}
    assert seen == set(ROW_CATEGORIES)
