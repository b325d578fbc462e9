"""Run configuration: YAML file + documented defaults, strict key checking.

Unknown keys anywhere in the file are rejected so typos fail fast. The
canonical JSON form of the effective config is hashed and embedded in
every artifact manifest, making outputs traceable to the exact settings
that produced them.
"""

from __future__ import annotations

import copy
import hashlib
import json
from pathlib import Path

import yaml

DEFAULTS: dict = {
    "ingest": {
        "mode": "dir",  # dir | jsonl
        "path": "corpus",
        "source_name": "local",
    },
    "segmenter": {
        "terminators": ["։", "?", "!", "…", "."],
        "abbreviations": [],
    },
    "filters": {
        "min_content_tokens": 6,
        "max_content_tokens": 22,
        "metadata_patterns": ["էջ\\s*\\d+"],
    },
    "stopwords": {
        "path": None,  # null -> bundled Armenian list
    },
    "provider": {
        "id": "identity",  # identity | reversal | table | http
        "source_lang": "hy",
        "pivot": "en",
        "iterations": 2,
        "rate": 5.0,
        "in_flight": 1,
        "retries": 3,
        "backoff": 0.5,
        "foreign_threshold": 0.5,
        "cache_dir": None,  # null -> <workspace>/cache
        "table": {},  # "src>dst" -> {word: word}
        "http": {
            "endpoint": None,
            "api_key_env": "TRANSLATE_API_KEY",
            "request_template": {"q": "{text}", "source": "{src}", "target": "{dst}"},
            "response_field": "translation",
            "headers": {},
            "timeout": 30.0,
        },
    },
    "negatives": {
        "train": {"consecutive": 1330, "random": 1330},
        "test": {"consecutive": 150, "random": 150},
    },
    "split": {
        "test_fraction": 0.47,
    },
    "metrics": {
        "jaccard_include_stopwords": True,
        "diversity_allow_substitution": True,
    },
    "seeds": {
        "split": 101,
        "negatives": 202,
        "shuffle": 303,
        "enqueue": 404,
        "bootstrap": 505,
    },
    "service": {
        "port": 8765,
        "data_dir": "annotation-data",
    },
    "build": {
        "labels": None,  # path to adjudicated-pairs JSONL; null -> all candidates positive
    },
    "eval": {
        "n_resamples": 10000,
        "alpha": 0.05,
    },
}


class ConfigError(ValueError):
    pass


def _merge(defaults: dict, override: dict, path: str = "") -> dict:
    out = copy.deepcopy(defaults)
    for key, value in override.items():
        where = f"{path}.{key}" if path else key
        if key not in defaults:
            raise ConfigError(f"unknown config key: {where}")
        if isinstance(defaults[key], dict) and not _is_open_mapping(path, key):
            if not isinstance(value, dict):
                raise ConfigError(f"config key {where} must be a mapping")
            out[key] = _merge(defaults[key], value, where)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _is_open_mapping(path: str, key: str) -> bool:
    # Mappings with user-defined keys (no fixed schema).
    full = f"{path}.{key}" if path else key
    return full in ("provider.table", "provider.http.request_template", "provider.http.headers")


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> dict:
    """Effective config: defaults <- YAML file <- programmatic overrides."""
    cfg = copy.deepcopy(DEFAULTS)
    if path is not None:
        raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise ConfigError(f"config root must be a mapping ({path})")
        cfg = _merge(cfg, raw)
    if overrides:
        cfg = _merge(cfg, overrides)
    return cfg


def config_hash(cfg: dict) -> str:
    canonical = json.dumps(cfg, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
