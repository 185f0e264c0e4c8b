import math

import pytest

from kyfanlp.campaign import CampaignConfig, ConfigError, Report, Violation, run_campaign, run_trial
from kyfanlp.matrix_io import dumps


@pytest.mark.parametrize("task,dims", [
    ("sandwich", (2, 3, 4)),
    ("diag-tight", (3, 4, 5)),
    ("sep-fan", (2, 3)),
    ("spin-align2", (2, 3)),
    ("overlap-feasibility", (3, 5)),
    ("flag-invariance", (3, 6)),
    ("subspace-dim", (2, 4)),
])
def test_tasks_pass(task, dims):
    rep = run_campaign(CampaignConfig(task, seed=11, trials=8, dims=dims))
    assert rep.status == "pass" and rep.trials == 8 and rep.max_gap <= 1e-7


def test_corrupted_table_is_caught():
    rep = run_campaign(CampaignConfig("sandwich", seed=3, trials=5, dims=(3, 4), corrupt_rhs=True))
    assert rep.status == "fail" and len(rep.violations) == 5
    assert all(v.gap > 1e-7 for v in rep.violations)


def test_reports_are_byte_identical():
    cfg = CampaignConfig("sep-fan", seed=5, trials=6, dims=(2, 3))
    assert dumps(run_campaign(cfg).to_dict()) == dumps(run_campaign(cfg).to_dict())


def test_trials_are_independent_of_order():
    cfg = CampaignConfig("spin-align2", seed=99, trials=4, dims=(2,))
    forward = [run_trial(cfg, i) for i in range(4)]
    backward = [run_trial(cfg, i) for i in reversed(range(4))][::-1]
    assert forward == backward
    shifted = CampaignConfig("spin-align2", seed=100, trials=3, dims=(2,))
    assert run_trial(shifted, 0) == forward[1]


def test_status_tracks_violations():
    assert Report("x", 1).status == "pass"
    assert Report("x", 1, (Violation(0, "ab", 1.0),), 1.0).status == "fail"


@pytest.mark.parametrize("kwargs", [
    dict(task="nope"),
    dict(task="sandwich", trials=0),
    dict(task="sandwich", dims=(17,)),
    dict(task="diag-tight", dims=(9,)),
    dict(task="sep-fan", dims=(5,)),
    dict(task="sandwich", dims=()),
    dict(task="sandwich", tol=-1.0),
    dict(task="sandwich", seed=-1),
    dict(task="sep-fan", corrupt_rhs=True),
])
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        CampaignConfig(**kwargs)


def test_config_from_dict():
    cfg = CampaignConfig.from_dict({"task": "sep-fan", "seed": 1, "trials": 2, "dims": [2]})
    assert cfg.dims == (2,)
    with pytest.raises(ConfigError):
        CampaignConfig.from_dict({"task": "sep-fan", "bogus": 1})
    with pytest.raises(ConfigError):
        CampaignConfig.from_dict({"seed": 1})


def test_infinite_gap_serializes_as_null():
    rep = Report("sandwich", 1, (Violation(0, "ab", math.inf),), math.inf)
    assert '"gap": null' in dumps(rep.to_dict())
