"""Run configuration with flags > config file > defaults precedence.

The config file is flat ``key=value`` text ('#' comments allowed); keys
match RunConfig field names.  Every output file embeds the resolved
configuration so results stay attributable to their settings.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .errors import DataError


class ConfigError(DataError):
    pass


@dataclass(frozen=True)
class RunConfig:
    method: str = "rake"            # ngram | rake
    mode: str = "paper_literal"     # paper_literal | classic
    max_n: int = 4
    count_mode: str = "presence"    # presence | occurrence
    top_t: int | None = None        # per-abstract phrase cap (rake only)
    window: int = 500               # curation window size
    target_k: int = 10              # topics to accept
    jobs: int = 1
    registry: str | None = None
    abstracts: str | None = None
    stoplist: str | None = None
    rules: str | None = None
    output: str | None = None

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise ConfigError("max_n must be >= 1")
        if self.target_k < 1:
            raise ConfigError("target_k must be >= 1")
        if self.window < self.target_k:
            raise ConfigError("window must be >= target_k")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def as_metadata(self) -> dict:
        """Resolved settings for embedding into output files.

        Excludes jobs (parallelism never affects results, so it must not
        make otherwise identical outputs differ) and the output path
        itself (self-referential).
        """
        skip = {"jobs", "output"}
        return {k: v for k, v in asdict(self).items() if v is not None and k not in skip}


_INT_FIELDS = {"max_n", "top_t", "window", "target_k", "jobs"}


def load_config_file(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    known = {f.name for f in fields(RunConfig)}
    values: dict = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _INT_FIELDS:
            try:
                values[key] = int(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {key} must be an integer") from exc
        else:
            values[key] = value
    return values


def resolve_config(flag_values: dict, config_path: str | Path | None = None) -> RunConfig:
    """Merge CLI flags over config-file values over defaults."""
    merged: dict = {}
    if config_path is not None:
        merged.update(load_config_file(config_path))
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    return RunConfig(**merged)
