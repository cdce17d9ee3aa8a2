"""Bradley-Terry strength fitting via minorization-maximization.

Model: P(i beats j) = s_i / (s_i + s_j). Strengths are fitted per rationale
dimension by Hunter's MM iteration, which provably never decreases the
log-likelihood. To keep the MLE finite under shutouts (a system that wins or
loses every game), every system also plays one virtual game against a shared
phantom opponent, split half-win half-loss. The phantom participates in the
fit like any player and is dropped before normalization, so the reported
strengths have mean 1 and the phantom anchors nothing user-visible.

Display ratings use 1500 + 400*log10(strength): a mean-strength system sits
at 1500 and the mapping is strictly monotone.
"""

import math
from dataclasses import dataclass

from novelscope.errors import DisconnectedGraph, NoJudgments
from novelscope.evalharness.tournament import PairwiseJudgment

MAX_ITERATIONS = 10_000
RELATIVE_TOLERANCE = 1e-10
PHANTOM = "__phantom__"
PHANTOM_GAMES = 0.5  # half a win and half a loss per system


@dataclass(frozen=True)
class SystemRating:
    strength: float
    display_rating: float


@dataclass(frozen=True)
class DimensionFit:
    ratings: dict[str, SystemRating]
    loglik_trace: tuple[float, ...]
    iterations: int


@dataclass(frozen=True)
class BTRatings:
    per_dimension: dict[str, DimensionFit]

    def rating(self, dimension: str, system: str) -> SystemRating:
        return self.per_dimension[dimension].ratings[system]


def display_rating(strength: float) -> float:
    return 1500.0 + 400.0 * math.log10(strength)


def fit_bradley_terry(judgments: list[PairwiseJudgment]) -> BTRatings:
    """Fit per-dimension strengths from pairwise judgments.

    Raises :class:`NoJudgments` on empty input and :class:`DisconnectedGraph`
    (naming the components) when some systems in a dimension never meet, even
    transitively.
    """
    if not judgments:
        raise NoJudgments("no pairwise judgments to fit")
    by_dimension: dict[str, list[PairwiseJudgment]] = {}
    for judgment in judgments:
        by_dimension.setdefault(judgment.dimension, []).append(judgment)
    fits = {
        dimension: _fit_dimension(dimension, own)
        for dimension, own in sorted(by_dimension.items())
    }
    return BTRatings(per_dimension=fits)


def _fit_dimension(dimension: str, judgments: list[PairwiseJudgment]) -> DimensionFit:
    systems = sorted({j.system_a for j in judgments} | {j.system_b for j in judgments})
    _check_connected(dimension, systems, judgments)

    players = systems + [PHANTOM]
    index = {s: i for i, s in enumerate(players)}
    n = len(players)
    wins = [[0.0] * n for _ in range(n)]
    for judgment in judgments:
        a, b = index[judgment.system_a], index[judgment.system_b]
        if judgment.winner == "a":
            wins[a][b] += 1.0
        else:
            wins[b][a] += 1.0
    phantom = index[PHANTOM]
    for system in systems:
        i = index[system]
        wins[i][phantom] += PHANTOM_GAMES
        wins[phantom][i] += PHANTOM_GAMES

    games = [[wins[i][j] + wins[j][i] for j in range(n)] for i in range(n)]
    total_wins = [sum(wins[i]) for i in range(n)]

    strengths = [1.0] * n
    trace = [_loglik(strengths, wins)]
    iterations = 0
    for iterations in range(1, MAX_ITERATIONS + 1):
        updated = _mm_step(strengths, games, total_wins)
        rel_change = max(
            abs(u - s) / s for u, s in zip(updated, strengths)
        )
        strengths = updated
        trace.append(_loglik(strengths, wins))
        if rel_change < RELATIVE_TOLERANCE:
            break

    visible = strengths[: len(systems)]
    mean = sum(visible) / len(visible)
    ratings = {
        system: SystemRating(
            strength=strengths[index[system]] / mean,
            display_rating=display_rating(strengths[index[system]] / mean),
        )
        for system in systems
    }
    return DimensionFit(ratings=ratings, loglik_trace=tuple(trace), iterations=iterations)


def _mm_step(
    strengths: list[float], games: list[list[float]], total_wins: list[float]
) -> list[float]:
    n = len(strengths)
    updated = []
    for i in range(n):
        denom = sum(
            games[i][j] / (strengths[i] + strengths[j])
            for j in range(n)
            if j != i and games[i][j] > 0
        )
        updated.append(total_wins[i] / denom)
    # Renormalize by the geometric mean; the likelihood is scale-invariant,
    # this just keeps the iterates bounded.
    log_gm = sum(math.log(u) for u in updated) / n
    scale = math.exp(log_gm)
    return [u / scale for u in updated]


def _loglik(strengths: list[float], wins: list[list[float]]) -> float:
    n = len(strengths)
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i != j and wins[i][j] > 0:
                total += wins[i][j] * math.log(strengths[i] / (strengths[i] + strengths[j]))
    return total


def predicted_win_probability(ratings: dict[str, SystemRating], a: str, b: str) -> float:
    sa, sb = ratings[a].strength, ratings[b].strength
    return sa / (sa + sb)


def _check_connected(
    dimension: str, systems: list[str], judgments: list[PairwiseJudgment]
) -> None:
    adjacency: dict[str, set[str]] = {s: set() for s in systems}
    for judgment in judgments:
        adjacency[judgment.system_a].add(judgment.system_b)
        adjacency[judgment.system_b].add(judgment.system_a)
    components: list[set[str]] = []
    unseen = set(systems)
    while unseen:
        start = unseen.pop()
        component = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for neighbour in adjacency[node]:
                if neighbour not in component:
                    component.add(neighbour)
                    frontier.append(neighbour)
        unseen -= component
        components.append(component)
    if len(components) > 1:
        raise DisconnectedGraph(dimension, components)
