"""
SCQR Configuration Management
Centralized settings using Pydantic for validation and type safety
"""

from typing import Optional, Literal, Union
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


def _env(section: str = "") -> SettingsConfigDict:
    """Environment overrides: SCQR_<SECTION>_<FIELD>, or SCQR_<FIELD> for the model and logging sections"""
    prefix = f"SCQR_{section}_" if section else "SCQR_"
    return SettingsConfigDict(env_prefix=prefix, case_sensitive=False, extra="ignore")


class ModelDefaults(BaseSettings):
    """Model Defaults shared by the library and the CLI"""

    q: int = Field(19, ge=1, description="Number of quantile levels")
    kernel: Literal["gaussian", "logistic", "uniform", "epanechnikov"] = "gaussian"
    bandwidth: Union[float, Literal["auto"]] = Field("auto", description="Bandwidth h or 'auto'")
    scad_a: float = Field(3.7, gt=2.0)
    mcp_a: float = Field(3.0, ge=1.0)
    irw_steps: int = Field(3, ge=1, description="Number of reweighting steps T")
    standardize: bool = True

    model_config = _env()

    @field_validator("bandwidth")
    @classmethod
    def validate_bandwidth(cls, v):
        """Validate bandwidth selection"""
        if v != "auto" and float(v) <= 0:
            raise ValueError("bandwidth must be positive or 'auto'")
        return v


class LammSettings(BaseSettings):
    """LAMM Solver Configuration"""

    phi0: float = Field(0.01, gt=0.0, description="Initial quadratic coefficient")
    gamma: float = Field(1.25, gt=1.0, description="Inflation factor")
    tol: float = Field(1e-5, gt=0.0, description="Sup-norm parameter-change stop")
    max_iter: int = Field(5000, ge=1)
    max_inflations: int = Field(60, ge=1)

    model_config = _env("LAMM")

    def to_config(self, irw_steps: int = 3):
        from solvers.lamm_solver import LammConfig
        return LammConfig(
            phi0=self.phi0,
            gamma=self.gamma,
            tol=self.tol,
            max_iter=self.max_iter,
            irw_steps=irw_steps,
            max_inflations=self.max_inflations,
        )


class AdmmSettings(BaseSettings):
    """ADMM Solver Configuration"""

    sigma: float = Field(1.0, gt=0.0, description="Augmentation parameter")
    max_iter: int = Field(20000, ge=1)
    primal_tol: float = Field(1e-4, gt=0.0)
    dual_tol: float = Field(1e-4, gt=0.0)
    direct_factor_limit: int = Field(2000, ge=1, description="Largest p+q factorized directly")

    model_config = _env("ADMM")

    def to_config(self):
        from solvers.admm_solver import AdmmConfig
        return AdmmConfig(
            sigma=self.sigma,
            max_iter=self.max_iter,
            primal_tol=self.primal_tol,
            dual_tol=self.dual_tol,
            direct_factor_limit=self.direct_factor_limit,
        )


class TuningSettings(BaseSettings):
    """Regularization Parameter Selection Configuration"""

    n_lambda: int = Field(50, ge=2)
    lambda_min_ratio: float = Field(0.01, gt=0.0, lt=1.0)
    folds: int = Field(5, ge=2)
    pivotal_c_lasso: float = Field(1.9, gt=1.0)
    pivotal_c_concave: float = Field(3.1, gt=1.0)
    pivotal_alpha: float = Field(0.05, gt=0.0, lt=1.0)
    pivotal_replications: int = Field(200, ge=1)
    bic_cn: Optional[float] = Field(None, gt=0.0, description="C_n; None means log(log n)")

    model_config = _env("TUNING")


class BenchSettings(BaseSettings):
    """Benchmark Harness Configuration"""

    output_dir: str = "bench_results"
    threads: int = Field(1, ge=1)
    progress: bool = True

    model_config = _env("BENCH")


class LoggingSettings(BaseSettings):
    """Logging Configuration"""

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    log_file: Optional[str] = None
    log_format: Literal["json", "text"] = "text"
    log_max_size: int = Field(10, description="Max log file size in MB")
    log_backup_count: int = Field(5, description="Number of backup log files")

    model_config = _env()


class Settings:
    """
    Unified Settings Class
    Aggregates all configuration sections
    """

    def __init__(self):
        """Initialize all settings sections"""
        self.model = ModelDefaults()
        self.lamm = LammSettings()
        self.admm = AdmmSettings()
        self.tuning = TuningSettings()
        self.bench = BenchSettings()
        self.logging = LoggingSettings()

    def lamm_config(self):
        return self.lamm.to_config(irw_steps=self.model.irw_steps)

    def admm_config(self):
        return self.admm.to_config()

    def pivotal_c(self, penalty: str) -> float:
        """Pivotal constant c for the given penalty family"""
        if penalty.lower() == "l1":
            return self.tuning.pivotal_c_lasso
        return self.tuning.pivotal_c_concave

    def concavity(self, penalty: str) -> Optional[float]:
        """Concavity parameter a for the given penalty family"""
        penalty = penalty.lower()
        if penalty == "scad":
            return self.model.scad_a
        if penalty == "mcp":
            return self.model.mcp_a
        return None

    def to_dict(self) -> dict:
        return {
            "model": self.model.model_dump(),
            "lamm": self.lamm.model_dump(),
            "admm": self.admm.model_dump(),
            "tuning": self.tuning.model_dump(),
            "bench": self.bench.model_dump(),
        }


# Global settings instance
settings = Settings()


__all__ = ["settings", "Settings"]
