"""Exception hierarchy shared across the pipeline."""


class NovelscopeError(Exception):
    """Base class for every error raised by this package."""


# --- ingest ---------------------------------------------------------------


class EmptyQuery(NovelscopeError):
    """Search query was blank after trimming."""


class UpstreamUnavailable(NovelscopeError):
    """Network or HTTP failure talking to an external service (retriable)."""


class RateLimited(NovelscopeError):
    """Upstream asked us to back off (HTTP 429)."""


class SourceUnavailable(NovelscopeError):
    """No LaTeX source is offered for this id; degrade to abstract-only."""


class BadId(NovelscopeError):
    """Identifier is syntactically invalid."""


class NotFound(NovelscopeError):
    """Upstream does not know this identifier."""


class BadRequest(NovelscopeError):
    """Caller violated an operation precondition."""


class CorruptEntry(NovelscopeError):
    """Cache entry failed its checksum; treated as a miss and evicted."""


# --- texparse -------------------------------------------------------------


class NoBibliography(NovelscopeError):
    """No bibliography entries were found; pipeline continues citation-free."""


# --- graph ----------------------------------------------------------------


class ExtractionFailed(NovelscopeError):
    """Model output failed schema or structural validation after retries."""


class CyclicGraph(NovelscopeError):
    """Defensive: linearization was handed a graph with a cycle."""


# --- retrieval / llm ------------------------------------------------------


class ProviderUnavailable(NovelscopeError):
    """The model or embedding provider could not be reached."""


class DimensionMismatch(NovelscopeError):
    """Cosine similarity of vectors with different dimensions."""


class EmptyLabels(NovelscopeError):
    """Polarity aggregation over an empty label list."""


class SchemaFailure(NovelscopeError):
    """Structured output still failed validation after all re-prompts."""


class Timeout(NovelscopeError):
    """Provider call exceeded its deadline."""


class UnknownModel(NovelscopeError):
    """Model id missing from the pricing table or roster."""


# --- assess ---------------------------------------------------------------


class ScoringFailed(NovelscopeError):
    """Every novelty-vote sample was dropped."""


class ReportFailed(NovelscopeError):
    """Report generation request failed."""


# --- evalharness ----------------------------------------------------------


class EmptyScores(NovelscopeError):
    """Binarization over an empty score list."""


class OutOfRange(NovelscopeError):
    """A reviewer score fell outside the 1-5 scale."""


class LengthMismatch(NovelscopeError):
    """Prediction and truth label lists differ in length."""


class DisconnectedGraph(NovelscopeError):
    """Comparison graph for a dimension is not connected.

    Carries the components so callers can report which systems never met.
    """

    def __init__(self, dimension: str, components: list[set[str]]):
        self.dimension = dimension
        self.components = components
        parts = ", ".join("{" + ", ".join(sorted(c)) + "}" for c in components)
        super().__init__(f"comparison graph for {dimension!r} is disconnected: {parts}")


class NoJudgments(NovelscopeError):
    """Tournament fit was given no judgments."""
