"""Run-time knobs shared by the library and the CLI."""
from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_WITNESS_CAP = 1 << 16
DEFAULT_BUDGET = 10 ** 7
DEFAULT_EXAMPLE_CAP = 200


def witness_cap() -> int:
    raw = os.environ.get("INSEP_WITNESS_CAP")
    if raw:
        try:
            val = int(raw)
        except ValueError:
            raise ValueError(f"INSEP_WITNESS_CAP must be an integer, got {raw!r}") from None
        if val <= 0:
            raise ValueError("INSEP_WITNESS_CAP must be positive")
        return val
    return DEFAULT_WITNESS_CAP


@dataclass
class RunConfig:
    witness_cap: int = DEFAULT_WITNESS_CAP
    example_cap: int = 3
    parallelism: int = 1
    output: str = "json"

    def __post_init__(self):
        if self.witness_cap <= 0 or self.example_cap < 0 or self.parallelism <= 0:
            raise ValueError("caps and parallelism must be positive")
        if self.output not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output!r}")
