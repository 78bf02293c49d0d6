"""Run configuration shared by the CLI and the experiment scripts."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .errors import MarginalResolventError

SCHEMA_VERSION = 1
COMMANDS = ("moments", "enumerate", "density", "simulate", "eliminate", "balanced", "crosscheck")


class InvalidConfig(MarginalResolventError, ValueError):
    pass


def parse_rational(text):
    """``"2"``, ``"1/2"`` or ``"0.25"`` as an exact Fraction."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidConfig(f"not a rational number: {text!r}") from exc


@dataclass
class RunConfig:
    command: str
    c: Fraction = Fraction(1)
    m: Fraction = Fraction(2)
    n: int = 3
    k: int = 3
    grid_min: float = None
    grid_max: float = None
    grid_points: int = 1500
    epsilon: float = 1e-6
    seed: int = 0
    samples: int = 20
    size: int = 300
    regime: str = "unbalanced"
    out: str = None
    symbolic: bool = False
    only: list = field(default_factory=list)

    @property
    def y(self):
        return 1 / self.m

    def validate(self):
        if self.command not in COMMANDS:
            raise InvalidConfig(f"unknown command {self.command!r}")
        if self.c <= 0:
            raise InvalidConfig("c must be positive")
        if self.m <= 0:
            raise InvalidConfig("m must be positive")
        if self.n < 0 or self.k < 1:
            raise InvalidConfig("need n >= 0 and k >= 1")
        if self.epsilon <= 0:
            raise InvalidConfig("epsilon must be positive")
        if self.grid_points < 2 or self.samples < 1 or self.size < 1:
            raise InvalidConfig("grid points, samples and size must be positive")
        if self.grid_min is not None and self.grid_max is not None and self.grid_min >= self.grid_max:
            raise InvalidConfig("grid-min must be below grid-max")
        if self.regime not in ("unbalanced", "balanced"):
            raise InvalidConfig(f"unknown regime {self.regime!r}")
        return self

    def to_dict(self):
        d = asdict(self)
        for key in ("c", "m"):
            d[key] = str(d[key])
        return d


def envelope(config: RunConfig, payload: dict) -> dict:
    """Every output file carries the schema version and the full config."""
    return {"schema_version": SCHEMA_VERSION, "config": config.to_dict(), **payload}
