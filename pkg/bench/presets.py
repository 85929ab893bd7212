"""
Named benchmark presets

``table1`` (λ by oracle scan), ``table2`` (5-fold CV), ``table3`` (BIC) and
``figure1`` (runtime against n with p = 5n) follow the full simulation
protocol; the ``-desk`` variants shrink sizes and replication counts to
run on a workstation in minutes.
"""
from itertools import product
from typing import Dict, List, Literal, Sequence, Tuple

from pydantic import BaseModel, Field

from .scenarios import BenchMethod, ErrorLaw, Scenario, TuningMode

ALL_LAWS = tuple(ErrorLaw)
COMPARED = (BenchMethod.CQR_ADMM_LASSO, BenchMethod.SCQR_LASSO, BenchMethod.SCQR_SCAD)


class Preset(BaseModel):
    name: str
    description: str
    kind: Literal["scenarios", "runtime"] = "scenarios"
    scenarios: List[Scenario] = Field(default_factory=list)
    sizes: Tuple[int, ...] = ()
    repeats: int = 3

    def with_seed(self, seed: int) -> "Preset":
        return self.model_copy(update={
            "scenarios": [s.model_copy(update={"seed": seed}) for s in self.scenarios],
        })


def _grid_of(
    name: str,
    tuning: TuningMode,
    dims: Sequence[Tuple[int, int]],
    laws: Sequence[ErrorLaw],
    methods: Sequence[BenchMethod],
    replications: int,
    pilot: int = 10,
    n_lambda: int = 50,
) -> List[Scenario]:
    scenarios = []
    for (n, p), law, method in product(dims, laws, methods):
        mode = TuningMode.FIXED if method is BenchMethod.SCQR_ORACLE else tuning
        scenarios.append(Scenario(
            name=f"{name}/{law.value}/{method.value}/n{n}p{p}",
            n=n, p=p, rho=0.5, error_law=law, method=method,
            tuning=mode,
            replications=replications, pilot_replications=pilot, n_lambda=n_lambda,
        ))
    return scenarios


def _build() -> Dict[str, Preset]:
    full_dims = ((100, 600), (200, 1200))
    presets = [
        Preset(
            name="table1",
            description="oracle-scan lambda: 50 pilot + 100 evaluation replications",
            scenarios=_grid_of("table1", TuningMode.ORACLE_SCAN, full_dims, ALL_LAWS,
                               COMPARED + (BenchMethod.SCQR_ORACLE,), replications=100, pilot=50),
        ),
        Preset(
            name="table1-desk",
            description="oracle-scan lambda at (n, p) = (100, 600): 10 pilot + 20 evaluation replications",
            scenarios=_grid_of("table1-desk", TuningMode.ORACLE_SCAN, ((100, 600),),
                               (ErrorLaw.NORMAL3, ErrorLaw.CAUCHY),
                               (BenchMethod.SCQR_LASSO, BenchMethod.SCQR_SCAD, BenchMethod.SCQR_ORACLE),
                               replications=20, pilot=10),
        ),
        Preset(
            name="table2",
            description="5-fold cross-validation: 100 replications",
            scenarios=_grid_of("table2", TuningMode.CV, full_dims, ALL_LAWS, COMPARED, replications=100),
        ),
        Preset(
            name="table2-desk",
            description="5-fold cross-validation at (n, p) = (100, 200): 10 replications, 20 lambdas",
            scenarios=_grid_of("table2-desk", TuningMode.CV, ((100, 200),), (ErrorLaw.NORMAL3, ErrorLaw.T3),
                               (BenchMethod.SCQR_LASSO, BenchMethod.SCQR_SCAD), replications=10, n_lambda=20),
        ),
        Preset(
            name="table3",
            description="BIC: 200 replications",
            scenarios=_grid_of("table3", TuningMode.BIC, full_dims, ALL_LAWS, COMPARED, replications=200),
        ),
        Preset(
            name="table3-desk",
            description="BIC at (n, p) = (100, 200): 10 replications, 20 lambdas",
            scenarios=_grid_of("table3-desk", TuningMode.BIC, ((100, 200),), (ErrorLaw.NORMAL3, ErrorLaw.T3),
                               (BenchMethod.SCQR_LASSO, BenchMethod.SCQR_SCAD), replications=10, n_lambda=20),
        ),
        Preset(
            name="figure1",
            description="ADMM vs LAMM runtime, n = 20..200, p = 5n",
            kind="runtime",
            sizes=tuple(range(20, 201, 20)),
            repeats=10,
        ),
        Preset(
            name="figure1-desk",
            description="ADMM vs LAMM runtime, n in {20, 40, 60, 80, 100}, p = 5n",
            kind="runtime",
            sizes=(20, 40, 60, 80, 100),
            repeats=2,
        ),
    ]
    return {p.name: p for p in presets}


PRESETS: Dict[str, Preset] = _build()


def get_preset(name: str) -> Preset:
    """Look up a preset; KeyError lists the available names"""
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown scenario '{name}'; available: {', '.join(sorted(PRESETS))}") from None
