import math
import os
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path
from typing import Final

from schurpress.collective.spin import SpinAxis
from schurpress.errors import InvalidArgument

LOG_LEVEL: Final[str] = os.getenv("SCHURPRESS_LOG_LEVEL", "WARNING").upper()

DEFAULT_SEED: Final[int] = 1_522_013
DEFAULT_RUNS: Final[int] = 500
DEFAULT_TRIALS: Final[int] = 250
DEFAULT_SAMPLES: Final[int] = 1_000_000
DEFAULT_LEAKAGE_P: Final[float] = 0.015
DEFAULT_COPIES: Final[int] = 10

RANGE_ATOL: Final[float] = 1e-9


class InvalidConfig(InvalidArgument):
    pass


class Subcommand(StrEnum):
    COMPRESS = "compress"
    DISTRIBUTION = "distribution"
    TRIALS = "trials"
    SWEEP = "sweep"
    AVERAGE = "average"
    MLE = "mle"
    NOISE = "noise"
    CODEC = "codec"


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"
    MSGPACK = "msgpack"


def _number(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise InvalidConfig(f"Not a number: {text!r}")
    if not math.isfinite(value):
        raise InvalidConfig(f"Angles must be finite. Got: {text!r}")
    return value


def parse_thetas(text: str) -> tuple[float, ...]:
    """Angles in degrees: comma-separated values and ``start:stop:step`` ranges.

    Ranges include ``stop`` when it lies on the step grid within 1e-9.

    Examples:
        >>> parse_thetas("0:22.5:7.5")
        (0.0, 7.5, 15.0, 22.5)
        >>> parse_thetas("13.5,45")
        (13.5, 45.0)
    """
    thetas: list[float] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        match part.split(":"):
            case [value]:
                thetas.append(_number(value))
            case [start, stop, step]:
                start, stop, step = _number(start), _number(stop), _number(step)
                if step <= 0:
                    raise InvalidConfig(f"Range step must be positive. Got: {part!r}")
                count = math.floor((stop - start) / step + RANGE_ATOL)
                if count < 0:
                    raise InvalidConfig(f"Empty angle range: {part!r}")
                thetas.extend(start + i * step for i in range(count + 1))
            case _:
                raise InvalidConfig(f"Angles are 'value' or 'start:stop:step'. Got: {part!r}")
    if not thetas:
        raise InvalidConfig(f"No angles in {text!r}")
    return tuple(thetas)


def parse_axis(name: str, delta_deg: float | None = None, epsilon_deg: float | None = None) -> SpinAxis:
    """Named axis, or the ``(delta, epsilon)`` direction in degrees when either is given."""
    if delta_deg is None and epsilon_deg is None:
        return SpinAxis.from_name(name)
    delta = math.radians(delta_deg or 0.0)
    epsilon = math.radians(epsilon_deg or 0.0) % (2 * math.pi)
    return SpinAxis(delta, epsilon)


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    subcommand: Subcommand
    theta_deg: tuple[float, ...] = (13.5,)
    phase_deg: float = 0.0
    axis: SpinAxis = field(default_factory=SpinAxis.Z)
    runs: int = DEFAULT_RUNS
    trials: int = DEFAULT_TRIALS
    samples: int = DEFAULT_SAMPLES
    leakage_p: float = DEFAULT_LEAKAGE_P
    copies: int = DEFAULT_COPIES
    mode: str = "all"
    seed: int | None = None
    output_path: Path | None = None
    format: OutputFormat = OutputFormat.CSV
    check: bool = False
    threads: int | None = None

    def __post_init__(self):
        for name in ("runs", "trials", "samples", "copies"):
            if (value := getattr(self, name)) < 1:
                raise InvalidConfig(f"--{name} must be a positive integer. Got: {value}")
        if not 0.0 <= self.leakage_p <= 1.0:
            raise InvalidConfig(f"--leakage-p must lie in [0, 1]. Got: {self.leakage_p}")
        if not all(math.isfinite(theta) for theta in self.theta_deg) or not self.theta_deg:
            raise InvalidConfig(f"Angles must be finite and non-empty. Got: {self.theta_deg}")
        if not math.isfinite(self.phase_deg):
            raise InvalidConfig(f"--phase-deg must be finite. Got: {self.phase_deg}")
        if self.seed is not None and self.seed < 0:
            raise InvalidConfig(f"--seed must be non-negative. Got: {self.seed}")
        if self.threads is not None and self.threads < 0:
            raise InvalidConfig(f"SCHURPRESS_THREADS must be >= 0. Got: {self.threads}")
        if self.mode not in ("all", "compressed", "direct3", "direct2"):
            raise InvalidConfig(f"Unknown trial mode: {self.mode!r}")

    @property
    def axis_label(self) -> str:
        return self.axis.label

    @property
    def target(self) -> Path:
        return self.output_path or Path(f"{self.subcommand}.{self.format}")

    @property
    def check_target(self) -> Path:
        target = self.target
        return target.with_name(f"{target.stem}.check{target.suffix or '.' + self.format}")
