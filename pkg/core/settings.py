from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

DEFAULT_DIGITS = 50
MIN_ITERATION_DIGITS = 50
DEFAULT_MAX_ITER = 200
DEFAULT_MAX_DEPTH = 8
DEFAULT_ORACLE_DIGITS = 40
DEFAULT_JOURNAL: Path | None = None

MAX_DIGITS = 2000
MAX_ITER_LIMIT = 100_000


@dataclass(frozen=True, slots=True)
class Settings:
    digits: int = DEFAULT_DIGITS
    max_iter: int = DEFAULT_MAX_ITER
    max_depth: int = DEFAULT_MAX_DEPTH
    oracle_digits: int = DEFAULT_ORACLE_DIGITS
    journal: Path | None = DEFAULT_JOURNAL


def _bounded_int(raw: str | None, default: int, low: int, high: int) -> int:
    if raw is None:
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        return default
    if value < low or value > high:
        return default
    return value


def load_settings(environ: Mapping[str, str] | None = None) -> Settings:
    env = os.environ if environ is None else environ
    journal_raw = (env.get("LANDEN_JOURNAL") or "").strip()
    return Settings(
        digits=_bounded_int(env.get("LANDEN_DIGITS"), DEFAULT_DIGITS, 5, MAX_DIGITS),
        max_iter=_bounded_int(env.get("LANDEN_MAX_ITER"), DEFAULT_MAX_ITER, 1, MAX_ITER_LIMIT),
        max_depth=_bounded_int(env.get("LANDEN_MAX_DEPTH"), DEFAULT_MAX_DEPTH, 1, 64),
        oracle_digits=_bounded_int(env.get("LANDEN_ORACLE_DIGITS"), DEFAULT_ORACLE_DIGITS, 10, MAX_DIGITS),
        journal=Path(journal_raw) if journal_raw else DEFAULT_JOURNAL,
    )
