"""Flat-file store for evaluation results; the library is this directory."""

import json
import logging
import os
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


def canonical_json(document: dict[str, Any]) -> str:
    """The one serialization used for persisted results and golden files."""
    return json.dumps(document, ensure_ascii=False, indent=2) + "\n"


class ReportStore:
    """Immutable result documents named by their request cache key.

    Concurrent readers are safe; writes are atomic replaces and a key is
    never overwritten, so two racing evaluations of the same request agree.
    """

    def __init__(self, directory: Path):
        self._dir = Path(directory)
        self._dir.mkdir(parents=True, exist_ok=True)

    def path(self, key: str) -> Path:
        return self._dir / f"{key}.json"

    def get(self, key: str) -> dict[str, Any] | None:
        path = self.path(key)
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            return None
        except json.JSONDecodeError:
            logger.warning("corrupted report %s ignored", path.name)
            return None

    def put(self, key: str, document: dict[str, Any]) -> None:
        path = self.path(key)
        if path.exists():
            return
        tmp = path.with_suffix(".tmp")
        tmp.write_text(canonical_json(document), encoding="utf-8")
        os.replace(tmp, path)

    def list_summaries(self) -> list[dict[str, Any]]:
        """Library cards: title, abstract, venue, score; sorted by title.

        Corrupted files are skipped with a warning so one bad report never
        takes the library down.
        """
        summaries = []
        for path in sorted(self._dir.glob("*.json")):
            try:
                document = json.loads(path.read_text(encoding="utf-8"))
                paper = document["paper"]
                report = document["report"]
                summaries.append(
                    {
                        "key": path.stem,
                        "title": paper["title"],
                        "abstract": paper.get("abstract", ""),
                        "venue": paper.get("venue"),
                        "year": paper.get("year"),
                        "score": report["score"],
                        "label": report["label"],
                        "mode": report.get("mode", "full"),
                    }
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                logger.warning("skipping corrupted report %s: %s", path.name, exc)
        summaries.sort(key=lambda s: s["title"])
        return summaries
