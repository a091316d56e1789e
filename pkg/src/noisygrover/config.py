"""Sweep configuration: validated fields, defaults, and per-cell seeding."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import List, Literal, Optional, Union

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .core import MAX_QUBITS

EXPERIMENTS = ("spectrum", "heff", "stats", "critical", "dynamics")


class SweepConfig(BaseModel):
    """One experiment family swept over (L, delta, realization) cells.

    Unknown keys are rejected so sweep-file typos fail loudly.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    experiment: Literal["spectrum", "heff", "stats", "critical", "dynamics"]
    L_list: List[int] = Field(min_length=1)
    delta_list: List[float] = Field(default_factory=list)
    realizations: int = Field(default=32, ge=1)
    base_seed: int = Field(default=12345, ge=0, lt=2**64)
    t_max: Optional[int] = Field(default=None, ge=1)
    out_dir: Path = Path("results")
    workers: Union[int, Literal["auto"]] = "auto"

    @field_validator("L_list")
    @classmethod
    def _check_sizes(cls, v):
        for L in v:
            if not 1 <= L <= MAX_QUBITS:
                raise ValueError(
                    f"L={L} outside the desk-scale dense-diagonalization "
                    f"limit [1, {MAX_QUBITS}]"
                )
        return v

    @field_validator("delta_list")
    @classmethod
    def _check_deltas(cls, v):
        for d in v:
            if d < 0:
                raise ValueError(f"delta_list contains negative value {d}")
        return v

    def t_max_for(self, num_qubits: int) -> int:
        if self.t_max is not None:
            return self.t_max
        return 4 * int(np.floor(np.pi / 4.0 * 2.0 ** (num_qubits / 2.0)))

    def num_workers(self) -> int:
        if self.workers == "auto":
            import os

            return os.cpu_count() or 1
        return int(self.workers)

    def cell_seed(self, num_qubits: int, realization_index: int) -> int:
        """Deterministic per-(L, r) seed, independent of delta by construction."""
        ss = np.random.SeedSequence(
            entropy=self.base_seed, spawn_key=(num_qubits, realization_index)
        )
        return int(ss.generate_state(1, dtype=np.uint64)[0])

    def content_hash(self) -> str:
        payload = self.model_dump(mode="json")
        payload.pop("out_dir")  # same sweep, different destination: same hash
        payload.pop("workers")  # worker count must not change outputs
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def load_config(path) -> SweepConfig:
    """Parse and validate a YAML sweep file."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    if not isinstance(raw, dict):
        raise ValueError(f"config file {path} is not a mapping")
    return SweepConfig(**raw)


def dump_config(config: SweepConfig, path) -> None:
    payload = config.model_dump(mode="json")
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(payload, fh, sort_keys=True)
