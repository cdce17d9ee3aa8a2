"""arXiv API client: title search and LaTeX source retrieval."""

import gzip
import io
import logging
import random
import re
import tarfile
import xml.etree.ElementTree as ET
from pathlib import PurePosixPath

from novelscope.clock import SYSTEM_CLOCK, Clock
from novelscope.config import RetryPolicy
from novelscope.errors import BadId, BadRequest, EmptyQuery, NotFound, SourceUnavailable
from novelscope.ingest.cache import ResponseCache, canonical_key
from novelscope.ingest.ratelimit import RateLimiter
from novelscope.ingest.transport import Transport, request_with_retries
from novelscope.records import LatexBundle, PaperRecord
from novelscope.texparse.latex import strip_comments

logger = logging.getLogger(__name__)

SEARCH_URL = "http://export.arxiv.org/api/query"
EPRINT_URL = "https://arxiv.org/e-print/{arxiv_id}"
MAX_SEARCH_LIMIT = 50

_ATOM = "{http://www.w3.org/2005/Atom}"
_NEW_ID = re.compile(r"^\d{4}\.\d{4,5}(v\d+)?$")
_OLD_ID = re.compile(r"^[a-z][a-z0-9-]*(\.[A-Z]{2})?/\d{7}(v\d+)?$")

_INCLUDE_RE = re.compile(r"\\(?:input|include)\{([^}]+)\}")


def valid_arxiv_id(arxiv_id: str) -> bool:
    return bool(_NEW_ID.match(arxiv_id) or _OLD_ID.match(arxiv_id))


class ArxivClient:
    """Search by title and fetch LaTeX source bundles.

    Shareable across concurrent pipeline tasks: responses are cached on disk,
    upstream calls run through the rate limiter, and transient failures retry
    with exponential backoff and jitter.
    """

    def __init__(
        self,
        transport: Transport,
        cache: ResponseCache | None = None,
        limiter: RateLimiter | None = None,
        *,
        retry_policy: RetryPolicy = RetryPolicy(),
        clock: Clock = SYSTEM_CLOCK,
        rng: random.Random | None = None,
    ):
        self._transport = transport
        self._cache = cache
        self._limiter = limiter
        self._retry_policy = retry_policy
        self._clock = clock
        self._rng = rng or random.Random()

    def _fetch(self, endpoint: str, url: str, params: dict[str, str] | None) -> bytes:
        key = canonical_key(endpoint, {"url": url, **(params or {})})
        if self._cache is not None:
            hit = self._cache.get(key)
            if hit is not None:
                return hit
        if self._limiter is not None:
            self._limiter.acquire()
        response = request_with_retries(
            self._transport,
            "GET",
            url,
            params=params,
            policy=self._retry_policy,
            clock=self._clock,
            rng=self._rng,
        )
        if self._cache is not None:
            self._cache.put(key, response.body)
        return response.body

    def search(self, query: str, limit: int) -> list[PaperRecord]:
        """Title search, preserving the upstream relevance order."""
        query = query.strip()
        if not query:
            raise EmptyQuery("search query is blank")
        if not 1 <= limit <= MAX_SEARCH_LIMIT:
            raise BadRequest(f"limit must be in [1, {MAX_SEARCH_LIMIT}]")
        params = {
            "search_query": f'ti:"{query}"',
            "start": "0",
            "max_results": str(limit),
        }
        body = self._fetch("arxiv.search", SEARCH_URL, params)
        return parse_search_feed(body)[:limit]

    def fetch_latex(self, arxiv_id: str) -> LatexBundle:
        """Resolved LaTeX bundle for one id.

        The main file is the one containing the document-begin marker (ties
        broken by largest file); include directives are inlined recursively.
        Raises :class:`SourceUnavailable` when no usable LaTeX is offered.
        """
        if not valid_arxiv_id(arxiv_id):
            raise BadId(f"not an arXiv id: {arxiv_id!r}")
        url = EPRINT_URL.format(arxiv_id=arxiv_id)
        try:
            body = self._fetch("arxiv.eprint", url, None)
        except NotFound as exc:
            raise SourceUnavailable(f"no LaTeX source for {arxiv_id}") from exc
        files = extract_source_files(body)
        if not files:
            raise SourceUnavailable(f"source archive for {arxiv_id} holds no .tex files")
        main = resolve_main_file(files)
        if main is None:
            raise SourceUnavailable(f"no document-begin marker found for {arxiv_id}")
        flattened = flatten_includes(files, main)
        bibs = tuple(
            files[name] for name in sorted(files) if name.endswith(".bib")
        )
        return LatexBundle(
            arxiv_id=arxiv_id,
            main_source=flattened,
            bib_sources=bibs,
            fetched_at=self._clock.now(),
        )


def parse_search_feed(body: bytes) -> list[PaperRecord]:
    root = ET.fromstring(body)
    records = []
    for entry in root.findall(f"{_ATOM}entry"):
        raw_id = _text(entry, "id")
        arxiv_id = raw_id.rsplit("/abs/", 1)[-1]
        arxiv_id = re.sub(r"v\d+$", "", arxiv_id)
        title = re.sub(r"\s+", " ", _text(entry, "title")).strip()
        if not title or not arxiv_id:
            continue
        published = _text(entry, "published")
        year = int(published[:4]) if re.match(r"^\d{4}", published) else None
        authors = tuple(
            _text(a, "name") for a in entry.findall(f"{_ATOM}author")
        )
        records.append(
            PaperRecord(
                id=f"arxiv:{arxiv_id}",
                title=title,
                abstract=re.sub(r"\s+", " ", _text(entry, "summary")).strip(),
                authors=authors,
                year=year,
                arxiv_id=arxiv_id,
                url=f"https://arxiv.org/abs/{arxiv_id}",
            )
        )
    return records


def _text(element: ET.Element, tag: str) -> str:
    child = element.find(f"{_ATOM}{tag}")
    return child.text or "" if child is not None else ""


def extract_source_files(body: bytes) -> dict[str, str]:
    """Decode an e-print payload (tar.gz, gzipped file, or bare file)."""
    if body[:2] == b"\x1f\x8b":
        try:
            body = gzip.decompress(body)
        except OSError:
            return {}
    files: dict[str, str] = {}
    if _is_tar(body):
        with tarfile.open(fileobj=io.BytesIO(body)) as tar:
            for member in tar.getmembers():
                if not member.isfile():
                    continue
                name = str(PurePosixPath(member.name))
                if not name.endswith((".tex", ".bib", ".bbl", ".sty")):
                    continue
                handle = tar.extractfile(member)
                if handle is None:
                    continue
                files[name] = _decode(handle.read())
        return files
    text = _decode(body)
    if "\\" in text:
        files["main.tex"] = text
    return files


def _is_tar(body: bytes) -> bool:
    return len(body) > 265 and body[257:262] == b"ustar"


def _decode(raw: bytes) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError:
        return raw.decode("latin-1", errors="replace")


def resolve_main_file(files: dict[str, str]) -> str | None:
    """The .tex file containing \\begin{document}; ties go to the largest."""
    candidates = [
        name
        for name in files
        if name.endswith(".tex") and "\\begin{document}" in strip_comments(files[name])
    ]
    if not candidates:
        return None
    candidates.sort(key=lambda n: (-len(files[n]), n))
    return candidates[0]


def flatten_includes(files: dict[str, str], main: str) -> str:
    """Inline \\input/\\include directives, guarding against cycles."""

    def resolve(name: str) -> str | None:
        options = [name, f"{name}.tex"]
        base = str(PurePosixPath(main).parent)
        if base != ".":
            options += [f"{base}/{name}", f"{base}/{name}.tex"]
        for option in options:
            normalized = str(PurePosixPath(option))
            if normalized in files:
                return normalized
        return None

    def expand(name: str, stack: frozenset[str]) -> str:
        content = strip_comments(files[name])

        def replace(match: re.Match) -> str:
            target = resolve(match.group(1).strip())
            if target is None:
                logger.warning("missing include %r in %s", match.group(1), name)
                return ""
            if target in stack:
                logger.warning("circular include %s", target)
                return ""
            return expand(target, stack | {target})

        return _INCLUDE_RE.sub(replace, content)

    return expand(main, frozenset([main]))
