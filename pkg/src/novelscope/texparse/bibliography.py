"""Bibliography parsing from .bib sources and embedded bibitem environments."""

import logging
import re
from dataclasses import dataclass

from novelscope.errors import NoBibliography
from novelscope.records import LatexBundle
from novelscope.texparse.latex import normalize_space, strip_comments

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BibEntry:
    title: str
    authors: tuple[str, ...] = ()
    year: int | None = None
    raw: str = ""


@dataclass(frozen=True)
class Bibliography:
    entries: dict[str, BibEntry]

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def parse_bibliography(bundle: LatexBundle) -> Bibliography:
    """Collect entries from .bib files, falling back to \\bibitem blocks.

    Field parsing is best-effort; the raw entry text is always retained.
    Raises :class:`NoBibliography` when neither source yields entries.
    """
    entries: dict[str, BibEntry] = {}
    for source in bundle.bib_sources:
        for key, entry in parse_bibtex(source).items():
            entries.setdefault(key, entry)
    if not entries:
        entries = parse_bibitems(strip_comments(bundle.main_source))
    if not entries:
        raise NoBibliography(f"no bibliography entries found for {bundle.arxiv_id}")
    return Bibliography(entries=entries)


# --- .bib parsing ----------------------------------------------------------

_ENTRY_START = re.compile(r"@(\w+)\s*\{", re.MULTILINE)
_FIELD_NAME = re.compile(r"\s*(\w+)\s*=\s*")


def parse_bibtex(text: str) -> dict[str, BibEntry]:
    entries: dict[str, BibEntry] = {}
    for match in _ENTRY_START.finditer(text):
        kind = match.group(1).lower()
        if kind in ("comment", "string", "preamble"):
            continue
        body, end = _balanced(text, match.end() - 1)
        if body is None:
            logger.warning("unterminated bibtex entry at offset %d", match.start())
            continue
        key, fields = _parse_entry_body(body)
        if not key:
            continue
        raw = text[match.start() : end]
        title = clean_field(fields.get("title", ""))
        entries[key] = BibEntry(
            title=title,
            authors=_split_authors(fields.get("author", "")),
            year=_parse_year(fields.get("year", "")),
            raw=raw,
        )
    return entries


def _balanced(text: str, open_idx: int) -> tuple[str | None, int]:
    """Content between the brace at ``open_idx`` and its match."""
    depth = 0
    for j in range(open_idx, len(text)):
        if text[j] == "{":
            depth += 1
        elif text[j] == "}":
            depth -= 1
            if depth == 0:
                return text[open_idx + 1 : j], j + 1
    return None, len(text)


def _parse_entry_body(body: str) -> tuple[str, dict[str, str]]:
    comma = body.find(",")
    if comma < 0:
        return body.strip(), {}
    key = body[:comma].strip()
    fields: dict[str, str] = {}
    i = comma + 1
    while i < len(body):
        match = _FIELD_NAME.match(body, i)
        if not match:
            i += 1
            continue
        name = match.group(1).lower()
        value, i = _read_value(body, match.end())
        fields[name] = value
    return key, fields


def _read_value(body: str, i: int) -> tuple[str, int]:
    if i >= len(body):
        return "", i
    ch = body[i]
    if ch == "{":
        value, end = _balanced(body, i)
        return value or "", end
    if ch == '"':
        end = body.find('"', i + 1)
        if end < 0:
            return body[i + 1 :], len(body)
        return body[i + 1 : end], end + 1
    # Bare value (number or macro) up to the next comma.
    end = body.find(",", i)
    if end < 0:
        end = len(body)
    return body[i:end].strip(), end


def clean_field(value: str) -> str:
    value = re.sub(r"\\[a-zA-Z]+", " ", value)
    value = value.replace("{", "").replace("}", "").replace("~", " ")
    return normalize_space(value)


def _split_authors(value: str) -> tuple[str, ...]:
    if not value.strip():
        return ()
    parts = re.split(r"\s+and\s+", clean_field(value))
    return tuple(_flip_name(p) for p in parts if p.strip())


def _flip_name(name: str) -> str:
    # "Last, First" -> "First Last"
    if "," in name:
        last, _, first = name.partition(",")
        first = first.strip()
        if first:
            return f"{first} {last.strip()}"
        return last.strip()
    return name.strip()


def _parse_year(value: str) -> int | None:
    match = re.search(r"(19|20)\d{2}", value)
    return int(match.group()) if match else None


# --- embedded thebibliography ----------------------------------------------

_BIBENV = re.compile(
    r"\\begin\{thebibliography\}.*?\\end\{thebibliography\}", re.DOTALL
)
_BIBITEM = re.compile(
    r"\\bibitem(?:\[[^\]]*\])?\{([^}]+)\}(.*?)(?=\\bibitem|\\end\{thebibliography\}|$)",
    re.DOTALL,
)
_NEWBLOCK_TITLE = re.compile(r"\\newblock\s+([^\\]+?)\.(?:\s|$)")


def parse_bibitems(latex: str) -> dict[str, BibEntry]:
    env = _BIBENV.search(latex)
    if not env:
        return {}
    entries: dict[str, BibEntry] = {}
    for match in _BIBITEM.finditer(env.group(0)):
        key = match.group(1).strip()
        raw = match.group(2).strip()
        if not key or not raw:
            continue
        entries[key] = BibEntry(
            title=_bibitem_title(raw),
            authors=(),
            year=_parse_year(raw),
            raw=raw,
        )
    return entries


def _bibitem_title(raw: str) -> str:
    match = _NEWBLOCK_TITLE.search(raw)
    if match:
        return normalize_space(clean_field(match.group(1)))
    # Plain items: take the first sentence-like chunk after the authors.
    flat = normalize_space(clean_field(raw))
    pieces = [p.strip() for p in flat.split(".") if p.strip()]
    return pieces[1] if len(pieces) > 1 else (pieces[0] if pieces else "")
