#!/usr/bin/env python3
"""Synthetic rationale tournament: mock judge, MM fit, ratings table.

Demonstrates the full tournament path without any API keys: a deterministic
judge prefers longer rationales, the judgments are fitted per dimension, and
the display ratings land on the familiar 1500-centred scale.
"""

from novelscope.evalharness.bradley_terry import fit_bradley_terry
from novelscope.evalharness.tables import format_ratings_table
from novelscope.evalharness.tournament import run_tournament
from novelscope.llm.gateway import Gateway
from novelscope.llm.mock import MockProvider
from novelscope.llm.schemas import load_default_registry

RATIONALES = {
    "human": (
        "The paper extends prior sparse-attention work with a routing "
        "mechanism; reviewers found the idea solid but incremental."
    ),
    "basic": "Seems novel.",
    "graph-based": (
        "The claim-method-experiment structure shows a routing mechanism "
        "distinct from the five closest retrieved papers; two citations "
        "contrast with it directly, and the dispersed-context experiments "
        "support the central claim, so the novelty label is well justified."
    ),
}


def length_judge(request):
    a = request.user.split("Rationale a:\n")[1].split("\n\nRationale b:")[0]
    b = request.user.split("Rationale b:\n")[1].split("\n\nWhich rationale")[0]
    return {"winner": "a" if len(a) >= len(b) else "b"}


def main() -> None:
    provider = MockProvider()
    provider.register_handler("pairwise_judgment", length_judge)
    gateway = Gateway(provider, load_default_registry(), roster=["gemini-2.0-flash"])
    judgments = run_tournament(RATIONALES, None, gateway, "gemini-2.0-flash")
    print(f"{len(judgments)} judgments collected\n")
    print(format_ratings_table(fit_bradley_terry(judgments)))


if __name__ == "__main__":
    main()
