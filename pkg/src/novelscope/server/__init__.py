"""HTTP service layer."""

from novelscope.server.app import create_app, sse_frame
from novelscope.server.store import ReportStore, canonical_json

__all__ = ["ReportStore", "canonical_json", "create_app", "sse_frame"]
