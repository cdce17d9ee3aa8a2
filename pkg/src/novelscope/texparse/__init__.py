"""LaTeX-to-plain-text conversion, bibliography parsing, citation contexts.

The converter handles a deliberate LaTeX subset (sections, paragraphs, the
cite command family, comment stripping, environment removal) rather than
shelling out to an external document converter: everything here runs hermetic
and is unit-testable. Citation commands become placeholder tokens of the form
``⟨cite:KEY⟩``; that token format is part of this module's contract and is
relied on by the graph-extraction prompts downstream.
"""

from novelscope.texparse.bibliography import BibEntry, Bibliography, parse_bibliography
from novelscope.texparse.contexts import CitationContext, extract_citation_contexts
from novelscope.texparse.latex import (
    CITE_TOKEN_RE,
    PlainDocument,
    Section,
    cite_token,
    to_plain_text,
)
from novelscope.texparse.sentences import segment_sentences

__all__ = [
    "BibEntry",
    "Bibliography",
    "CITE_TOKEN_RE",
    "CitationContext",
    "PlainDocument",
    "Section",
    "cite_token",
    "extract_citation_contexts",
    "parse_bibliography",
    "segment_sentences",
    "to_plain_text",
]
