"""Feasibility engine mapping joint 6G use-case KPIs (communication,
localization, sensing) onto signal, hardware, and deployment requirements."""

from . import channel, deployment, emitters, linkbudget, locbounds, quantities, sensebounds, usecases
from .scenario import ScenarioParseError, load_scenario, parse_scenario
from .usecases import (
    FeasibilityReport,
    Recommendation,
    ScenarioConfig,
    UseCaseKpis,
    builtin_use_cases,
    default_scenario,
    evaluate,
    evaluate_all,
    recommend,
)

__all__ = [
    "FeasibilityReport",
    "Recommendation",
    "ScenarioConfig",
    "ScenarioParseError",
    "UseCaseKpis",
    "builtin_use_cases",
    "channel",
    "default_scenario",
    "deployment",
    "emitters",
    "evaluate",
    "evaluate_all",
    "linkbudget",
    "load_scenario",
    "locbounds",
    "parse_scenario",
    "quantities",
    "recommend",
    "sensebounds",
    "usecases",
]

__version__ = "0.1.0"
