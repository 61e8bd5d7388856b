"""Shared test helpers: a plug-in fair randomized algorithm and instance builders."""

import random

from palette import engine, harness
from palette.adversaries import RevealSequence
from palette.graph import build_graph


class RandomFair:
    """Plug-in strategy: color with a uniformly random open color, reject
    only when forced.  Exercises the external-algorithm contract."""

    name = "random-fair"
    deterministic = False
    fair = True

    def reset(self, k, rng):
        self.k = k
        self.rng = rng

    def decide(self, coloring, g, eid):
        mask = coloring.available_mask(g, eid)
        if not mask:
            return None
        choices = [c for c in range(1, self.k + 1) if mask >> (c - 1) & 1]
        return self.rng.choice(choices)

    def clone(self):
        return RandomFair()


class RejectAll:
    """Plug-in strategy that rejects everything (deterministic, unfair)."""

    name = "reject-all"
    deterministic = True
    fair = False

    def reset(self, k, rng):
        pass

    def decide(self, coloring, g, eid):
        return None

    def clone(self):
        return RejectAll()


def random_tree_sequence(seed: int, max_edges: int, k: int) -> RevealSequence:
    rng = random.Random(seed)
    m = rng.randrange(1, max_edges + 1)
    edges = harness.random_reveal(rng, harness.random_tree_edges(rng, m))
    return RevealSequence(edges=edges, k=k)
