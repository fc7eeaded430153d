"""One line per acceptance criterion: ``criterion N: PASS|FAIL  title``.

Run with ``pytest tests/test_acceptance.py`` (lines also appear in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
import sys

import pytest

from surface_census.cli import CRITERIA, Context

RESULTS: dict[int, tuple[bool, list]] = {}


def line(k: int) -> str:
    passed, checks = RESULTS[k]
    head = f"criterion {k:2d}: {'PASS' if passed else 'FAIL'}  {CRITERIA[k][0]}"
    failed = [c for c in checks if not c.ok]
    if failed:
        head += "  [" + "; ".join(f"{c.name}: expected {c.expected}, got {c.computed}" for c in failed) + "]"
    return head


def evaluate(k: int, ctx: Context) -> bool:
    checks = CRITERIA[k][1](ctx)
    passed = bool(checks) and all(c.ok for c in checks)
    RESULTS[k] = (passed, checks)
    print(line(k))
    return passed


@pytest.fixture(scope="module")
def ctx(cache_dir):
    return Context(cache_dir=cache_dir)


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, ctx):
    assert evaluate(k, ctx), line(k)


if __name__ == "__main__":
    c = Context(cache_dir=sys.argv[1] if len(sys.argv) > 1 else None)
    sys.exit(0 if all([evaluate(k, c) for k in sorted(CRITERIA)]) else 1)
