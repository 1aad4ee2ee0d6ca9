import json
import math

import pytest

from core.errors import InvalidParameters
from experiments.audit import PROPERTIES, AuditReport, run_audit
from experiments.writers import write_audit_json


@pytest.mark.parametrize("dim", [2, 3, 5])
def test_random_audit_passes(dim):
    reports = run_audit(dim, trials=4, seed=11)
    assert [r.property for r in reports] == list(PROPERTIES)
    for report in reports:
        assert report.trials == 4
        assert report.failures == 0, report.to_dict()


def test_audit_with_fixed_rank_deficient_state(alpha_pi4):
    reports = run_audit(dim=7, trials=3, seed=2, state=alpha_pi4)
    assert all(r.failures == 0 for r in reports)


def test_audit_is_deterministic(tmp_path):
    a = write_audit_json(run_audit(3, 3, 5), tmp_path / "a.json", {"seed": 5})
    b = write_audit_json(run_audit(3, 3, 5), tmp_path / "b.json", {"seed": 5})
    assert a.read_bytes() == b.read_bytes()
    payload = json.loads(a.read_text(encoding="utf-8"))
    assert payload["metadata"] == {"seed": 5}
    assert len(payload["reports"]) == len(PROPERTIES)


@pytest.mark.parametrize("dim, trials", [(1, 3), (9, 3), (3, 0)])
def test_invalid_audit_parameters(dim, trials):
    with pytest.raises(InvalidParameters):
        run_audit(dim, trials, 0)


def test_report_records_failures():
    report = AuditReport("demo")
    report.record(1, 0.0, True)
    report.record(2, math.inf, False)
    report.record(3, 1e-3, False)
    assert report.trials == 3
    assert report.failures == 2
    assert report.failing_seeds == [2, 3]
    assert report.worst_violation == math.inf


@pytest.mark.slow
def test_acceptance_scale_audit():
    for dim in (2, 3, 4, 5, 6, 8):
        reports = {r.property: r for r in run_audit(dim, trials=1000, seed=0)}
        assert all(r.failures == 0 for r in reports.values()), dim
        assert reports["unified_equality_residual"].worst_violation <= 1e-10
        assert reports["maccone_pati_recovery"].trials == 1000


def test_property_list_covers_recoveries():
    for name in ("sur_recovery", "sum_form_recovery", "maccone_pati_recovery", "eq8_closed_form_vs_grid"):
        assert name in PROPERTIES


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_maccone_pati_recovery_over_many_trials(dim):
    reports = {r.property: r for r in run_audit(dim, trials=60, seed=21)}
    recovery = reports["maccone_pati_recovery"]
    assert recovery.trials == 60
    assert recovery.failures == 0, recovery.to_dict()


def test_tolerance_changes_inequality_verdicts():
    reports = {r.property: r for r in run_audit(3, trials=2, seed=3, tol=-1e6)}
    assert reports["info_operator_bound"].failures == 2
    assert reports["sur_recovery"].failures == 0
