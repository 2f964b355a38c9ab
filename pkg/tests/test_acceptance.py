"""The end-to-end criteria, one test and one printed verdict line each."""

import json

import pytest

from diagdeform.acceptance import CRITERIA, run_suite
from diagdeform.cli import _encode


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[n for n, _ in CRITERIA])
def test_criterion(name, fn):
    rep = fn()
    print(("PASS " if rep["ok"] else "FAIL ") + name)
    failed = [k for k, v in rep["checks"].items() if not v]
    assert rep["ok"], f"{name}: failed checks {failed}"


def test_suite_covers_all_ten():
    names = [n for n, _ in CRITERIA]
    assert len(names) == 10
    assert len(set(names)) == 10


def test_filter_selects_substring():
    reports = run_suite("weyl")
    assert [r["name"] for r in reports] == ["weyl-isomorphism", "q-weyl-identities"]


def test_reports_are_byte_identical_across_runs():
    a = json.dumps(_encode(run_suite()), sort_keys=True)
    b = json.dumps(_encode(run_suite()), sort_keys=True)
    assert a == b
