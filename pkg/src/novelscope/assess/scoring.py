"""Multi-sample novelty voting and keyword extraction."""

import logging
from concurrent.futures import ThreadPoolExecutor

from novelscope.config import load_asset_text
from novelscope.errors import ScoringFailed, SchemaFailure
from novelscope.llm.gateway import Gateway, ModelRequest
from novelscope.records import PaperRecord

logger = logging.getLogger(__name__)

# Scoring needs output diversity, so it runs hot; every other stage runs at 0.
SCORING_TEMPERATURE = 1.0

LABEL_NOVEL = "novel"
LABEL_NOT_NOVEL = "not_novel"


def score_from_votes(votes: list[int]) -> tuple[float, str]:
    """Mean of binary votes and the thresholded label (ties count as novel)."""
    score = sum(votes) / len(votes)
    return score, LABEL_NOVEL if score >= 0.5 else LABEL_NOT_NOVEL


def score_novelty(
    graph_text: str,
    evidence_text: str,
    gateway: Gateway,
    model_id: str,
    k_samples: int,
    stage: str = "assess",
) -> tuple[float, list[int]]:
    """Ask for ``k_samples`` independent binary votes and average them.

    Each request carries a sample tag so deterministic providers still see
    distinct prompts. Samples whose reply fails the schema are dropped; if
    every sample drops, :class:`ScoringFailed`.
    """
    if k_samples < 1:
        raise ValueError("k_samples must be >= 1")
    system = load_asset_text("prompts", "novelty_vote_system.txt")
    template = load_asset_text("prompts", "novelty_vote_user.txt")

    def one_sample(index: int) -> int | None:
        user = template.format(
            graph_text=graph_text or "(not available)",
            evidence_text=evidence_text,
            sample_tag=f"Assessment sample {index + 1} of {k_samples}.",
        )
        request = ModelRequest(
            model_id=model_id,
            system=system,
            user=user,
            schema_id="novelty_vote",
            temperature=SCORING_TEMPERATURE,
        )
        try:
            response = gateway.complete(request, stage=stage)
        except SchemaFailure as exc:
            logger.warning("novelty vote sample %d dropped: %s", index + 1, exc)
            return None
        return 1 if response.content["label"] == LABEL_NOVEL else 0

    with ThreadPoolExecutor(max_workers=min(8, k_samples)) as pool:
        results = list(pool.map(one_sample, range(k_samples)))
    votes = [v for v in results if v is not None]
    if not votes:
        raise ScoringFailed("every novelty vote sample failed schema validation")
    score, _label = score_from_votes(votes)
    return score, votes


def extract_keywords(
    paper: PaperRecord,
    gateway: Gateway,
    model_id: str,
    stage: str = "assess",
) -> list[str]:
    """3-8 lowercase keyword phrases; empty list (with a warning) on failure."""
    if not paper.abstract.strip():
        raise ValueError("paper abstract must be nonempty")
    system = load_asset_text("prompts", "keywords_system.txt")
    user = load_asset_text("prompts", "keywords_user.txt").format(
        title=paper.title, abstract=paper.abstract
    )
    try:
        response = gateway.complete(
            ModelRequest(model_id=model_id, system=system, user=user, schema_id="keywords"),
            stage=stage,
        )
    except SchemaFailure as exc:
        logger.warning("keyword extraction failed for %s: %s", paper.id, exc)
        return []
    seen: set[str] = set()
    keywords: list[str] = []
    for raw in response.content["keywords"]:
        phrase = raw.strip().lower()
        if phrase and phrase not in seen:
            seen.add(phrase)
            keywords.append(phrase)
    return keywords[:8]
