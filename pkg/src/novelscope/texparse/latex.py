"""Convert a LaTeX source into plain structured text.

Strategy: strip comments, keep only the document body, drop float and listing
environments, reduce math to an inline ``[MATH]`` placeholder, expand citation
commands into ``⟨cite:KEY⟩`` tokens, then walk the remaining text with a small
brace-aware scanner that drops unknown macros while preserving their brace
content. Unbalanced braces are recovered best-effort and logged, never fatal.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache

from novelscope.config import load_config_lines
from novelscope.records import LatexBundle

logger = logging.getLogger(__name__)

CITE_TOKEN_RE = re.compile(r"\u27e8cite:([^\u27e9]+)\u27e9")


def cite_token(key: str) -> str:
    return f"\u27e8cite:{key}\u27e9"


@dataclass(frozen=True)
class Section:
    heading: str
    paragraphs: tuple[str, ...]


@dataclass(frozen=True)
class PlainDocument:
    source_id: str
    sections: tuple[Section, ...]

    def all_paragraphs(self) -> list[str]:
        return [p for s in self.sections for p in s.paragraphs]

    def text(self) -> str:
        parts = []
        for section in self.sections:
            if section.heading:
                parts.append(section.heading)
            parts.extend(section.paragraphs)
        return "\n\n".join(parts)


# Environments whose entire content is dropped.
_DROP_ENVS = (
    "figure",
    "figure*",
    "table",
    "table*",
    "tabular",
    "algorithm",
    "algorithmic",
    "lstlisting",
    "verbatim",
    "tikzpicture",
    "thebibliography",
    "filecontents",
)
# Environments reduced to a [MATH] placeholder.
_MATH_ENVS = (
    "equation",
    "equation*",
    "align",
    "align*",
    "gather",
    "gather*",
    "eqnarray",
    "eqnarray*",
    "multline",
    "multline*",
    "displaymath",
)
# Macros whose argument is dropped along with the macro.
_DROP_ARG_MACROS = {
    "label",
    "bibliography",
    "bibliographystyle",
    "includegraphics",
    "vspace",
    "hspace",
    "input",
    "include",
    "usepackage",
    "documentclass",
    "pagestyle",
    "thispagestyle",
    "setcounter",
    "addtocounter",
    "newcommand",
    "renewcommand",
    "providecommand",
    "def",
    "caption",
}
# Reference-like macros replaced by a placeholder.
_REF_MACROS = {"ref", "eqref", "autoref", "cref", "Cref", "pageref"}

_SECTION_RE = re.compile(r"\\(?:sub){0,2}section\*?(?:\[[^\]]*\])?\s*")


@lru_cache(maxsize=1)
def citation_commands() -> tuple[str, ...]:
    # Longest-first so \citep is not shadowed by \cite.
    return tuple(sorted(load_config_lines("citation_commands.txt"), key=len, reverse=True))


def to_plain_text(bundle: LatexBundle, source_id: str | None = None) -> PlainDocument:
    """Reduce a LaTeX bundle to headed sections of plain paragraphs."""
    text = strip_comments(bundle.main_source)
    text = _document_body(text)
    text = _drop_environments(text)
    text = _replace_math(text)
    text = _replace_citations(text)
    sections = _split_sections(text)
    return PlainDocument(
        source_id=source_id or bundle.arxiv_id,
        sections=tuple(sections),
    )


def strip_comments(text: str) -> str:
    """Remove % comments (keeping escaped \\%), preserving line structure."""
    out_lines = []
    for line in text.split("\n"):
        cut = None
        i = 0
        while i < len(line):
            ch = line[i]
            if ch == "\\":
                i += 2
                continue
            if ch == "%":
                cut = i
                break
            i += 1
        out_lines.append(line if cut is None else line[:cut])
    return "\n".join(out_lines)


def _document_body(text: str) -> str:
    begin = text.find(r"\begin{document}")
    if begin < 0:
        return text
    start = begin + len(r"\begin{document}")
    end = text.find(r"\end{document}", start)
    return text[start:end] if end >= 0 else text[start:]


def _env_re(names: tuple[str, ...]) -> re.Pattern:
    alt = "|".join(re.escape(n) for n in names)
    return re.compile(
        r"\\begin\{(" + alt + r")\}.*?\\end\{\1\}",
        re.DOTALL,
    )


def _drop_environments(text: str) -> str:
    return _env_re(_DROP_ENVS).sub(" ", text)


def _replace_math(text: str) -> str:
    text = _env_re(_MATH_ENVS).sub(" [MATH] ", text)
    text = re.sub(r"\$\$.+?\$\$", " [MATH] ", text, flags=re.DOTALL)
    text = re.sub(r"\\\[.+?\\\]", " [MATH] ", text, flags=re.DOTALL)
    text = re.sub(r"\\\(.+?\\\)", " [MATH] ", text, flags=re.DOTALL)
    text = re.sub(r"(?<!\\)\$[^$]+\$", " [MATH] ", text)
    return text


def _replace_citations(text: str) -> str:
    alt = "|".join(re.escape(c) for c in citation_commands())
    pattern = re.compile(
        r"\\(?:" + alt + r")\*?(?:\[[^\]]*\]){0,2}\{([^}]*)\}"
    )

    def expand(match: re.Match) -> str:
        keys = [k.strip() for k in match.group(1).split(",") if k.strip()]
        return " ".join(cite_token(k) for k in keys)

    return pattern.sub(expand, text)


def _split_sections(text: str) -> list[Section]:
    sections: list[Section] = []
    cursor = 0
    heading = ""
    for match in _SECTION_RE.finditer(text):
        body = text[cursor : match.start()]
        _append_section(sections, heading, body)
        arg, after = _read_brace_group(text, match.end())
        heading = normalize_space(_scan_macros(arg))
        cursor = after
    _append_section(sections, heading, text[cursor:])
    return sections


def _append_section(sections: list[Section], heading: str, body: str) -> None:
    paragraphs = _paragraphs(_scan_macros(body))
    if heading or paragraphs:
        sections.append(Section(heading=heading, paragraphs=tuple(paragraphs)))


def _paragraphs(text: str) -> list[str]:
    out = []
    for block in re.split(r"\n\s*\n", text):
        para = normalize_space(block)
        if para:
            out.append(para)
    return out


def normalize_space(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def _read_brace_group(text: str, idx: int) -> tuple[str, int]:
    """Content of the brace group starting at ``idx`` and the index after it.

    Best-effort on malformed input: a missing opening brace yields an empty
    group; a missing closing brace consumes to end of text with a warning.
    """
    if idx >= len(text) or text[idx] != "{":
        return "", idx
    depth = 0
    for j in range(idx, len(text)):
        if text[j] == "{" and (j == 0 or text[j - 1] != "\\"):
            depth += 1
        elif text[j] == "}" and text[j - 1] != "\\":
            depth -= 1
            if depth == 0:
                return text[idx + 1 : j], j + 1
    logger.warning("unbalanced braces; recovering by scanning to end of input")
    return text[idx + 1 :], len(text)


def _scan_macros(text: str) -> str:
    """Drop macros, preserving brace content; expand escapes; remove braces."""
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\\":
            i = _scan_one_macro(text, i, out)
        elif ch == "{" or ch == "}":
            i += 1  # grouping braces vanish, content stays
        elif ch == "~":
            out.append(" ")
            i += 1
        else:
            out.append(ch)
            i += 1
    return "".join(out)


_ESCAPES = {"%": "%", "&": "&", "_": "_", "#": "#", "$": "$", "{": "{", "}": "}"}


def _scan_one_macro(text: str, i: int, out: list[str]) -> int:
    n = len(text)
    if i + 1 >= n:
        return i + 1
    nxt = text[i + 1]
    if nxt in _ESCAPES:
        out.append(_ESCAPES[nxt])
        return i + 2
    if nxt == "\\":
        out.append(" ")
        return i + 2
    if not nxt.isalpha():
        # Accents like \'e, \"o: drop the control symbol, keep what follows.
        return i + 2

    j = i + 1
    while j < n and text[j].isalpha():
        j += 1
    name = text[i + 1 : j]
    # Star forms and optional arguments.
    if j < n and text[j] == "*":
        j += 1
    for _ in range(2):
        if j < n and text[j] == "[":
            close = text.find("]", j)
            if close < 0:
                break
            j = close + 1

    if j < n and text[j] == "{":
        content, after = _read_brace_group(text, j)
        if name in _DROP_ARG_MACROS:
            out.append(" ")
        elif name in _REF_MACROS:
            out.append("[REF]")
        else:
            out.append(_scan_macros(content))
        # Chained second argument (e.g. \texorpdfstring{a}{b}): keep first only.
        if name in _DROP_ARG_MACROS and after < n and text[after] == "{":
            _, after = _read_brace_group(text, after)
        return after
    if name in _REF_MACROS:
        out.append("[REF]")
    else:
        out.append(" ")
    return j
