"""Acceptance criteria 1-10 at exact tolerance, one pass/fail line each."""

import pytest

from conftest import ACCEPTANCE_LINES
from upsilon_kit import acceptance


@pytest.mark.parametrize("k", sorted(acceptance.CRITERIA))
def test_criterion(k):
    r = acceptance.run(k)
    ACCEPTANCE_LINES[k] = r.line()
    print()
    print(r.line())
    for d in r.details:
        print(f"    {d}")
    assert r.ok, "\n".join([r.line(), *map(str, r.details)])
