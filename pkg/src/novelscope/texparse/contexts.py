"""Locate the sentences in which each bibliography entry is cited."""

import logging
from dataclasses import dataclass

from novelscope.texparse.bibliography import Bibliography
from novelscope.texparse.latex import CITE_TOKEN_RE, PlainDocument
from novelscope.texparse.sentences import segment_sentences

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CitationContext:
    citation_key: str
    sentence: str
    section_heading: str
    position: tuple[int, int, int]  # (section, paragraph, sentence) indices


def extract_citation_contexts(
    doc: PlainDocument, bib: Bibliography
) -> list[CitationContext]:
    """One context per (key, sentence) pair, in document order.

    A sentence citing the same key twice yields a single context. Keys that
    never appear in the bibliography are skipped with a warning.
    """
    contexts: list[CitationContext] = []
    unknown: set[str] = set()
    for si, section in enumerate(doc.sections):
        for pi, paragraph in enumerate(section.paragraphs):
            for sj, sentence in enumerate(segment_sentences(paragraph)):
                seen: set[str] = set()
                for match in CITE_TOKEN_RE.finditer(sentence):
                    key = match.group(1)
                    if key in seen:
                        continue
                    seen.add(key)
                    if key not in bib:
                        unknown.add(key)
                        continue
                    contexts.append(
                        CitationContext(
                            citation_key=key,
                            sentence=sentence,
                            section_heading=section.heading,
                            position=(si, pi, sj),
                        )
                    )
    if unknown:
        logger.warning(
            "citation keys with no bibliography entry skipped: %s",
            ", ".join(sorted(unknown)),
        )
    return contexts


def sentence_at(doc: PlainDocument, position: tuple[int, int, int]) -> str:
    """Resolve a context position back to its sentence."""
    si, pi, sj = position
    return segment_sentences(doc.sections[si].paragraphs[pi])[sj]
