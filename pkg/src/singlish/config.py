"""Engine configuration: file paths, thresholds, service binding.

Config files are flat ``key = value`` text; anything not set falls back to
the packaged defaults (shipped rule tables, seed lexicon, training corpus).
The SWB_CONFIG environment variable names a config file to load when the
caller does not pass one explicitly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from importlib import resources
from pathlib import Path
from typing import Optional

from .errors import ConfigError

ENV_VAR = "SWB_CONFIG"


def packaged_data(*parts: str):
    return resources.files("singlish").joinpath("data", *parts)


@dataclass(frozen=True)
class EngineConfig:
    forward_rules: object = field(default_factory=lambda: packaged_data("rules", "forward_standard.tsv"))
    reverse_rules: object = field(default_factory=lambda: packaged_data("rules", "reverse_standard.tsv"))
    adhoc_rules: object = field(default_factory=lambda: packaged_data("rules", "adhoc_profile.tsv"))
    seed_words: object = field(default_factory=lambda: packaged_data("seed_words.txt"))
    corpus: Optional[object] = field(default_factory=lambda: packaged_data("corpus_train.tsv"))
    lexicon: Optional[object] = None   # prebuilt lexicon TSV overrides seed build
    models: Optional[object] = None    # serialized tagger+LM file overrides training
    variant_limit: int = 64
    min_similarity: float = 0.8
    vowel_rich_ratio: float = 0.35
    max_per_mask: int = 4
    max_masks_per_chunk: int = 2
    context_overlap: int = 3
    explosion_limit: int = 4096
    suggest_k: int = 5
    host: str = "127.0.0.1"
    port: int = 8750

    def validated(self) -> "EngineConfig":
        checks = [
            (self.variant_limit >= 1, "variant_limit must be >= 1"),
            (0 <= self.min_similarity <= 1, "min_similarity must lie in [0, 1]"),
            (0 < self.vowel_rich_ratio <= 1, "vowel_rich_ratio must lie in (0, 1]"),
            (self.max_per_mask >= 1, "max_per_mask must be >= 1"),
            (self.max_masks_per_chunk >= 1, "max_masks_per_chunk must be >= 1"),
            (self.context_overlap >= 0, "context_overlap must be >= 0"),
            (self.explosion_limit >= 1, "explosion_limit must be >= 1"),
            (self.suggest_k >= 1, "suggest_k must be >= 1"),
            (0 < self.port < 65536, "port must be a valid TCP port"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        for name in ("forward_rules", "reverse_rules", "adhoc_rules", "seed_words",
                     "corpus", "lexicon", "models"):
            target = getattr(self, name)
            if target is None:
                continue
            try:
                exists = Path(str(target)).exists() if isinstance(target, (str, Path)) \
                    else target.is_file()
            except OSError:
                exists = False
            if not exists:
                raise ConfigError(f"{name} does not exist: {target}")
        return self


_INT_KEYS = {"variant_limit", "max_per_mask", "max_masks_per_chunk",
             "context_overlap", "explosion_limit", "suggest_k", "port"}
_FLOAT_KEYS = {"min_similarity", "vowel_rich_ratio"}
_PATH_KEYS = {"forward_rules", "reverse_rules", "adhoc_rules", "seed_words",
              "corpus", "lexicon", "models"}


def load_config(path=None) -> EngineConfig:
    """Build a config from a flat key/value file, the SWB_CONFIG file, or
    pure defaults when neither is given."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    config = EngineConfig()
    if path is None:
        return config.validated()
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file does not exist: {path}")
    known = {f.name for f in fields(EngineConfig)}
    overrides: dict = {}
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in known:
            raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
        try:
            if key in _INT_KEYS:
                overrides[key] = int(value)
            elif key in _FLOAT_KEYS:
                overrides[key] = float(value)
            elif key in _PATH_KEYS:
                overrides[key] = (path.parent / value) if value else None
            else:
                overrides[key] = value
        except ValueError:
            raise ConfigError(f"{path}:{line_no}: bad value for {key}: {value!r}") from None
    return replace(config, **overrides).validated()
