"""Registry of structured-output JSON schemas, loaded from bundled assets."""

import json
from pathlib import Path

import jsonschema

from novelscope.config import asset_path


class SchemaRegistry:
    """Named JSON schemas available for structured-output requests."""

    def __init__(self, schemas: dict[str, dict] | None = None):
        self._schemas: dict[str, dict] = dict(schemas or {})

    def add(self, schema_id: str, schema: dict) -> None:
        jsonschema.Draft202012Validator.check_schema(schema)
        self._schemas[schema_id] = schema

    def __contains__(self, schema_id: str) -> bool:
        return schema_id in self._schemas

    def get(self, schema_id: str) -> dict:
        return self._schemas[schema_id]

    def ids(self) -> list[str]:
        return sorted(self._schemas)

    def validate(self, schema_id: str, value: object) -> list[str]:
        """All validation error messages for ``value``; empty means valid."""
        validator = jsonschema.Draft202012Validator(self._schemas[schema_id])
        return [e.message for e in validator.iter_errors(value)]


def load_default_registry(directory: Path | None = None) -> SchemaRegistry:
    """Load every ``*.json`` schema shipped in the assets directory."""
    if directory is None:
        directory = asset_path("schemas")
    registry = SchemaRegistry()
    for path in sorted(directory.glob("*.json")):
        registry.add(path.stem, json.loads(path.read_text(encoding="utf-8")))
    return registry
