from schurpress.cli.config import ExperimentConfig, OutputFormat, Subcommand
from schurpress.cli.main import run_cli
from schurpress.cli.report import ReportRow, emit_report

__all__ = [
    "ExperimentConfig",
    "OutputFormat",
    "ReportRow",
    "Subcommand",
    "emit_report",
    "run_cli",
]
