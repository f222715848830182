import io
import json
from dataclasses import replace

import pytest

from dunkl_an.verify import IDENTITIES, SuiteConfig, UnknownIdentityError, run_suite, write_jsonl

FAST = ["unit-degree", "kernel-sum", "thm41-triple", "phi2-integral"]


def _strip(reports):
    return [json.dumps({k: v for k, v in r.to_dict().items() if k != "runtime_ms"})
            for r in reports]


def test_registry_has_required_ids():
    assert {"ir1", "thm41-triple"} <= set(IDENTITIES)
    for desc, fn in IDENTITIES.values():
        assert desc and callable(fn)


def test_empty_selection():
    assert run_suite([]) == []


def test_unknown_id():
    with pytest.raises(UnknownIdentityError):
        run_suite(["ir1", "nosuch"])


def test_reports_sorted_and_passing():
    reports = run_suite(FAST)
    ids = [r.identity_id for r in reports]
    assert ids == sorted(ids)
    assert all(r.passed for r in reports)


def test_deterministic_reruns():
    config = replace(SuiteConfig(), timing=False)
    a = io.StringIO()
    b = io.StringIO()
    write_jsonl(run_suite(FAST, config), a)
    write_jsonl(run_suite(FAST, config), b)
    assert a.getvalue() == b.getvalue()
    assert all(json.loads(line)["runtime_ms"] == 0 for line in a.getvalue().splitlines())


def test_selection_does_not_change_points():
    alone = run_suite(["kernel-sum"])
    mixed = [r for r in run_suite(["kernel-sum", "unit-degree"]) if r.identity_id == "kernel-sum"]
    assert _strip(alone) == _strip(mixed)


def test_seed_changes_samples():
    a = run_suite(["transposed-average"], replace(SuiteConfig(), seed=1))
    b = run_suite(["transposed-average"], replace(SuiteConfig(), seed=2))
    assert [r.metric for r in a] != [r.metric for r in b]


def test_parallel_matches_serial():
    config = replace(SuiteConfig(), timing=False)
    assert _strip(run_suite(FAST, config, jobs=2)) == _strip(run_suite(FAST, config))


@pytest.mark.slow
def test_full_suite_passes():
    reports = run_suite()
    failed = [r.to_json() for r in reports if not r.passed]
    assert not failed
    assert {r.identity_id for r in reports} == set(IDENTITIES)
