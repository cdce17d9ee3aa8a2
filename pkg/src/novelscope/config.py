"""Dataclass configuration objects and bundled config-file loaders."""

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

DEFAULT_MODEL = "gemini-2.0-flash"

# Stage fan-out bound for candidate decomposition and polarity classification.
DEFAULT_PARALLELISM = 4


@dataclass(frozen=True)
class EvaluationSettings:
    """Knobs exposed by the evaluation configuration panel."""

    k_citations: int = 20
    k_recommended: int = 30
    k_related: int = 10
    k_samples: int = 5
    model_id: str = DEFAULT_MODEL
    filter_by_date: bool = True


@dataclass(frozen=True)
class AblationFlags:
    """Pipeline component toggles for ablation runs.

    ``no_related`` in the harness is expressed as both citation and semantic
    retrieval turned off.
    """

    use_graph: bool = True
    use_citations: bool = True
    use_semantic: bool = True


@dataclass(frozen=True)
class ServerLimits:
    """Upper bounds enforced on evaluation requests."""

    max_k_citations: int = 50
    max_k_recommended: int = 100
    max_k_related: int = 50
    max_k_samples: int = 20
    max_concurrent_evaluations: int = 2


@dataclass(frozen=True)
class CachePolicy:
    ttl_seconds: float = 7 * 24 * 3600.0
    max_bytes: int = 500 * 1024 * 1024


@dataclass(frozen=True)
class RetryPolicy:
    attempts: int = 3
    backoff_base: float = 1.0
    jitter: float = 0.25


@dataclass(frozen=True)
class ServerConfig:
    data_dir: Path = Path("data")
    host: str = "127.0.0.1"
    port: int = 8000
    limits: ServerLimits = field(default_factory=ServerLimits)


def asset_path(*parts: str) -> Path:
    """Path to a bundled asset (prompt, schema, or config file)."""
    root = resources.files("novelscope") / "assets"
    return Path(str(root.joinpath(*parts)))


def load_asset_text(*parts: str) -> str:
    return asset_path(*parts).read_text(encoding="utf-8")


def load_pricing(path: Path | None = None) -> dict[str, dict[str, float]]:
    """Per-model USD prices per 1M input/output tokens."""
    if path is None:
        path = asset_path("config", "pricing.json")
    return json.loads(path.read_text(encoding="utf-8"))


def load_model_roster(path: Path | None = None) -> list[str]:
    if path is None:
        path = asset_path("config", "models.json")
    return json.loads(path.read_text(encoding="utf-8"))["models"]


def load_config_lines(name: str) -> list[str]:
    """Non-empty, non-comment lines of a plain-text config file."""
    lines = []
    for raw in load_asset_text("config", name).splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines
