"""Flat key=value configuration for the command line tool.

Flags override file values; file values override the defaults below.
Unknown keys are rejected so typos surface immediately.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction


@dataclass(frozen=True)
class Config:
    max_qubits: int = 20
    max_witness_qubits: int = 4
    # indices wrapping machine encodings are huge numerals; this cap only
    # guards against absurd command-line input
    max_enum_index: int = 10 ** 300
    max_word_length: int = 16
    default_fuel: int = 10_000
    threshold_c: Fraction = Fraction(2, 3)
    threshold_s: Fraction = Fraction(1, 3)

    def __post_init__(self):
        if self.threshold_c < self.threshold_s:
            raise ValueError("threshold c must be at least s")
        for name in ("max_qubits", "max_witness_qubits", "max_enum_index",
                     "max_word_length", "default_fuel"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


_INT_KEYS = {"max_qubits", "max_witness_qubits", "max_enum_index",
             "max_word_length", "default_fuel"}
_FRACTION_KEYS = {"threshold_c", "threshold_s"}


def load_config(path: str, base: Config | None = None) -> Config:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FRACTION_KEYS:
                values[key] = Fraction(value)
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    return replace(base or Config(), **values)
