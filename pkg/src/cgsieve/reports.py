"""Run-report records and their JSON-lines serialization.

Lines are emitted with sorted keys and compact separators so a fixed
(command, seed, config) triple reproduces byte-identical output.  The
schema shipped as `report_schema.json` documents every line shape.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .groups import InvolutionLabel


@dataclass(frozen=True)
class RunReport:
    """Per-trial record of one recovery experiment."""

    n: int
    trial: int
    seed: int
    planted: InvolutionLabel
    recovered: Optional[InvolutionLabel]
    queries: int
    retries: int
    restarts: int
    success: bool

    def to_dict(self) -> dict:
        return {
            "type": "trial",
            "n": self.n,
            "trial": self.trial,
            "seed": self.seed,
            "planted": self.planted.to_json_dict(),
            "recovered": self.recovered.to_json_dict() if self.recovered else None,
            "queries": self.queries,
            "retries": self.retries,
            "restarts": self.restarts,
            "success": self.success,
        }


def json_line(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def summary_dict(
    n: int,
    trials: int,
    seed: int,
    success_rate: float,
    mean_queries: float,
    wall_time_s: Optional[float] = None,
) -> dict:
    out = {
        "type": "summary",
        "n": n,
        "trials": trials,
        "seed": seed,
        "success_rate": success_rate,
        "mean_queries": mean_queries,
    }
    if wall_time_s is not None:
        out["wall_time_s"] = wall_time_s
    return out


def load_schema() -> dict:
    text = resources.files("cgsieve").joinpath("report_schema.json").read_text()
    return json.loads(text)
