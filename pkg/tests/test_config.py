"""Settings and logging configuration tests"""
import json
import logging

import numpy as np
import pytest
from pydantic import ValidationError

from config import Settings, setup_logging
from config.logging_config import get_solver_logger, log_solver_execution
from config.settings import LammSettings, ModelDefaults
from core import quantile_grid
from solvers import AdmmConfig, LammConfig, solve_cqr_admm, solve_weighted_l1


def test_defaults_convert_to_solver_configs():
    config = Settings()
    lamm = config.lamm_config()
    assert isinstance(lamm, LammConfig)
    assert (lamm.phi0, lamm.gamma, lamm.tol, lamm.irw_steps) == (0.01, 1.25, 1e-5, 3)
    admm = config.admm_config()
    assert isinstance(admm, AdmmConfig)
    assert admm.direct_factor_limit == 2000
    assert config.concavity("SCAD") == 3.7
    assert config.concavity("mcp") == 3.0
    assert config.concavity("l1") is None


def test_sections_read_their_own_environment(monkeypatch):
    monkeypatch.setenv("SCQR_ADMM_MAX_ITER", "123")
    monkeypatch.setenv("SCQR_Q", "9")
    config = Settings()
    assert config.admm.max_iter == 123
    assert config.lamm.max_iter == 5000
    assert config.model.q == 9


def test_invalid_settings_are_rejected():
    with pytest.raises(ValidationError):
        ModelDefaults(bandwidth=-1.0)
    with pytest.raises(ValidationError):
        LammSettings(gamma=1.0)


def json_config(tmp_path=None, level="INFO"):
    config = Settings()
    config.logging = config.logging.model_copy(update={
        "log_level": level,
        "log_format": "json",
        "log_file": None if tmp_path is None else str(tmp_path / "logs" / "scqr.log"),
    })
    return config


def test_json_logs_carry_the_solver_name(capsys):
    setup_logging(json_config(), "fit")
    log_solver_execution("lamm", "completed", {"iterations": 12, "converged": True, "message": "converged"})
    lines = [json.loads(line) for line in capsys.readouterr().err.splitlines()]
    assert lines[0]["command"] == "fit"
    assert lines[0]["solver"] == "-"
    solve = lines[-1]
    assert solve["solver"] == "lamm"
    assert solve["iterations"] == 12
    assert solve["level"] == "INFO"


def test_non_convergence_is_a_warning(capsys):
    setup_logging(json_config(level="WARNING"), "fit")
    log_solver_execution("admm", "completed", {"iterations": 7, "converged": False, "message": "max_iter reached"})
    record = json.loads(capsys.readouterr().err.splitlines()[-1])
    assert record["level"] == "WARNING"
    assert record["detail"] == "max_iter reached"


def test_log_file_is_created(tmp_path):
    setup_logging(json_config(tmp_path), "bench")
    get_solver_logger("lamm").info("written to file")
    for handler in logging.getLogger().handlers:
        handler.flush()
    text = (tmp_path / "logs" / "scqr.log").read_text()
    assert "written to file" in text


def test_solver_metrics_reach_the_json_log(capsys, small_spec, small_data):
    setup_logging(json_config(), "fit")
    weights = np.full(small_data.p, 0.05)
    solve_weighted_l1(small_spec, small_data, weights)
    solve_cqr_admm(small_data, quantile_grid(3), weights)
    records = [json.loads(line) for line in capsys.readouterr().err.splitlines()]
    lamm = next(r for r in records if r["solver"] == "lamm" and "status" in r)
    admm = next(r for r in records if r["solver"] == "admm" and "status" in r)
    assert lamm["inflations"] >= 0
    assert lamm["seconds"] > 0
    assert admm["route"] in ("direct", "woodbury")
