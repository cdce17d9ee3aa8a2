"""Pairwise rationale tournament judged by a model."""

import logging
from dataclasses import dataclass
from itertools import combinations

from novelscope.config import load_asset_text
from novelscope.errors import SchemaFailure
from novelscope.llm.gateway import Gateway, ModelRequest

logger = logging.getLogger(__name__)

# The five rationale-quality dimensions, each judged independently.
DIMENSIONS = {
    "clarity": "How easy is the rationale to understand and to follow its ideas?",
    "faithfulness": (
        "Does the rationale justify the novelty label? For example, if the text "
        "is mostly positive, so should be the label."
    ),
    "factuality": (
        "Is the rationale correctly grounded in scientific facts from the target "
        "and related papers?"
    ),
    "specificity": (
        "Does the rationale cover information specific to the paper, or does it "
        "make overly generic statements?"
    ),
    "contributions": (
        "Does the rationale effectively compare the target paper with the "
        "related papers?"
    ),
}


@dataclass(frozen=True)
class PairwiseJudgment:
    dimension: str
    system_a: str
    system_b: str
    winner: str  # "a" | "b", relative to the presentation order

    def __post_init__(self) -> None:
        if self.system_a == self.system_b:
            raise ValueError("a system cannot be judged against itself")
        if self.winner not in ("a", "b"):
            raise ValueError(f"winner must be 'a' or 'b', got {self.winner!r}")

    def winner_id(self) -> str:
        return self.system_a if self.winner == "a" else self.system_b


def run_tournament(
    rationales: dict[str, str],
    dimensions: dict[str, str] | None,
    gateway: Gateway,
    model_id: str,
    repeats: int = 2,
) -> list[PairwiseJudgment]:
    """Judge every ordered pair of systems on every dimension.

    Iterating ordered pairs presents each matchup in both orders (A-first and
    B-first), cancelling judge position bias; ``repeats`` judgments are
    collected per ordered pair, for n*(n-1)*len(dimensions)*repeats total.
    The judge prompt carries the dimension definition. Judgments whose reply
    fails the schema are skipped with a warning.
    """
    if len(rationales) < 2:
        raise ValueError("a tournament needs at least two systems")
    if dimensions is None:
        dimensions = DIMENSIONS
    system = load_asset_text("prompts", "judge_system.txt")
    template = load_asset_text("prompts", "judge_user.txt")

    judgments: list[PairwiseJudgment] = []
    systems = sorted(rationales)
    for dimension, definition in dimensions.items():
        for x, y in combinations(systems, 2):
            for first, second in ((x, y), (y, x)):
                user = template.format(
                    dimension=dimension,
                    definition=definition,
                    rationale_a=rationales[first],
                    rationale_b=rationales[second],
                )
                request = ModelRequest(
                    model_id=model_id,
                    system=system,
                    user=user,
                    schema_id="pairwise_judgment",
                )
                for _ in range(repeats):
                    try:
                        response = gateway.complete(request, stage="tournament")
                    except SchemaFailure as exc:
                        logger.warning(
                            "skipping judgment %s %s-vs-%s: %s", dimension, first, second, exc
                        )
                        continue
                    judgments.append(
                        PairwiseJudgment(
                            dimension=dimension,
                            system_a=first,
                            system_b=second,
                            winner=response.content["winner"],
                        )
                    )
    return judgments
