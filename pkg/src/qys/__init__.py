"""Quantum Yule-Simpson effect simulation for qubit and qutrit systems."""

__version__ = "0.1.0"

from .model import Effect, LurkingVars, PureState, Scenario, build_scenario
from .engine import (
    Classification,
    LambdaResult,
    QCResult,
    QQResult,
    classify,
    lambda_family,
    qc_condition_threshold,
    qc_probabilities,
    qq_probabilities,
    superposition_state,
)
from .sampling import SampleConfig

__all__ = [
    "Effect",
    "LurkingVars",
    "PureState",
    "Scenario",
    "build_scenario",
    "Classification",
    "LambdaResult",
    "QCResult",
    "QQResult",
    "classify",
    "lambda_family",
    "qc_condition_threshold",
    "qc_probabilities",
    "qq_probabilities",
    "superposition_state",
    "SampleConfig",
    "__version__",
]
