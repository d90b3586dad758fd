"""Forgery measurement and brute-force witness oracles.

The forger enters at the commitment step: per round it guesses the
challenge, builds a commitment it can open for that guess using the public
statement alone, and hopes.  Its per-round success is 1/2 unless the key is
degenerate, so ``k`` rounds give about ``2**-k``.

The oracles search exhaustively and are only meant for small instances,
where they provide independent answers to compare against extraction.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass
from statistics import NormalDist

from .errors import BadParameters, TooLarge
from .graphs import Coloring, Graph, Permutation
from .schemes import SubgraphWitness, scheme_for
from .sigma import Scheme, SchemeId


def wilson_interval(successes: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    if trials <= 0:
        raise BadParameters("need at least one trial")
    z = NormalDist().inv_cdf(1 - (1 - confidence) / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z / denom * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class ForgeryReport:
    scheme_id: SchemeId
    rounds: int
    trials: int
    successes: int
    empirical_rate: float
    expected_rate: float
    confidence_interval: tuple[float, float]

    @property
    def consistent(self) -> bool:
        """Whether the expected rate lies inside the 99% interval."""
        lo, hi = self.confidence_interval
        return lo <= self.expected_rate <= hi

    def to_dict(self) -> dict:
        d = asdict(self)
        d["scheme_id"] = self.scheme_id.cli_name
        d["confidence_interval"] = list(self.confidence_interval)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        lo, hi = self.confidence_interval
        return (
            f"{self.scheme_id.cli_name}: {self.successes}/{self.trials} forged sessions over "
            f"{self.rounds} round(s), rate {self.empirical_rate:.6g} "
            f"(99% CI [{lo:.6g}, {hi:.6g}], expected {self.expected_rate:.6g})"
        )


def measure_forgery_rate(
    scheme: Scheme,
    statement,
    rounds: int,
    trials: int,
    rng: random.Random,
    keypair=None,
) -> ForgeryReport:
    """Run ``trials`` impersonation attempts of ``rounds`` rounds each.

    Passing ``keypair`` replaces the guessing forger by an honest prover,
    which should succeed every time.
    """
    if rounds < 1:
        raise BadParameters("a session needs at least one round")
    if trials < 1:
        raise BadParameters("need at least one trial")
    successes = 0
    for _ in range(trials):
        for _ in range(rounds):
            if keypair is None:
                guess = rng.getrandbits(1)
                commitment, response = scheme.simulate(statement, guess, rng)
                c = rng.getrandbits(1)
            else:
                commitment, ephemeral = scheme.commit(keypair, rng)
                c = rng.getrandbits(1)
                response = scheme.respond(keypair, ephemeral, c)
            if not scheme.verify_round(statement, commitment, c, response):
                break
        else:
            successes += 1
    return ForgeryReport(
        scheme.scheme_id,
        rounds,
        trials,
        successes,
        successes / trials,
        2.0 ** -rounds,
        wilson_interval(successes, trials),
    )


def brute_force_isomorphism(g1: Graph, g2: Graph, max_n: int = 8) -> Permutation | None:
    """Lexicographically first ``p`` with ``apply_permutation(g1, p) == g2``, or None.

    Depth-first over positions 0..n-1 with ascending candidates, pruning
    assignments that already contradict adjacency or degree, so the first
    complete assignment found is the lexicographic minimum.
    """
    n = g1.n
    if n > max_n:
        raise TooLarge(f"isomorphism search limited to {max_n} vertices, got {n}")
    if g2.n != n or g1.edge_count() != g2.edge_count():
        return None
    a = g1.adj.tolist()
    b = g2.adj.tolist()
    da, db = g1.degrees(), g2.degrees()
    if sorted(da) != sorted(db):
        return None
    image = [0] * n
    used = [False] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        for v in range(n):
            if used[v] or db[v] != da[i]:
                continue
            if all(b[v][image[j]] == a[i][j] for j in range(i)):
                image[i] = v
                used[v] = True
                if place(i + 1):
                    return True
                used[v] = False
        return False

    return Permutation(tuple(image)) if place(0) else None


def brute_force_coloring(g: Graph, k: int, max_n: int = 24) -> Coloring | None:
    """First proper ``k``-coloring in backtracking order (vertices by index, colors ascending)."""
    if k < 1:
        raise BadParameters("k must be positive")
    n = g.n
    if n > max_n:
        raise TooLarge(f"coloring search limited to {max_n} vertices, got {n}")
    nbrs = [[j for j in range(i) if g.adj[i, j]] for i in range(n)]
    colors = [0] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        taken = {colors[j] for j in nbrs[i]}
        for c in range(1, k + 1):
            if c not in taken:
                colors[i] = c
                if place(i + 1):
                    return True
        colors[i] = 0
        return False

    return Coloring(k, tuple(colors)) if place(0) else None


def brute_force_discrete_log(p: int, x: int, u: int, max_p: int = 1 << 20) -> int | None:
    """Smallest ``s`` in ``[0, p-2]`` with ``x**s = u (mod p)``, by repeated multiplication."""
    if p > max_p:
        raise TooLarge(f"discrete-log scan limited to p <= {max_p}")
    acc = 1
    x %= p
    u %= p
    for s in range(p - 1):
        if acc == u:
            return s
        acc = acc * x % p
    return None


def brute_force_subgraph(gamma: Graph, host: Graph, max_n: int = 16) -> SubgraphWitness | None:
    """An induced copy of ``gamma`` inside ``host``, as a witness with identity relabeling."""
    if host.n > max_n:
        raise TooLarge(f"subgraph search limited to hosts of {max_n} vertices")
    n, m = gamma.n, host.n
    if n > m:
        return None
    a = gamma.adj.tolist()
    b = host.adj.tolist()
    image = [0] * n
    used = [False] * m

    def place(i: int) -> bool:
        if i == n:
            return True
        for v in range(m):
            if not used[v] and all(b[v][image[j]] == a[i][j] for j in range(i)):
                image[i] = v
                used[v] = True
                if place(i + 1):
                    return True
                used[v] = False
        return False

    return SubgraphWitness(tuple(image), Permutation.identity(n)) if place(0) else None


def brute_force_witness(statement):
    """Dispatch to the oracle matching the statement's scheme."""
    sid = scheme_for(statement)
    if sid is SchemeId.GRAPH_ISO:
        return brute_force_isomorphism(statement.gamma, statement.gamma1)
    if sid is SchemeId.SUBGRAPH_ISO:
        return brute_force_subgraph(statement.gamma, statement.lambda1)
    if sid is SchemeId.COLORING:
        return brute_force_coloring(statement.gamma, statement.k)
    s = brute_force_discrete_log(statement.p, statement.x, statement.u)
    if s is None:
        return None
    # the smallest log may share a factor with p-1; step by the order of x to find a unit
    order = _multiplicative_order(statement.x, statement.p)
    while s < statement.p - 1 and math.gcd(s, statement.p - 1) != 1:
        s += order
    return s if s < statement.p - 1 else None


def _multiplicative_order(x: int, p: int) -> int:
    acc, k = x % p, 1
    while acc != 1:
        acc = acc * x % p
        k += 1
    return k
