"""Graph-isomorphism identification.

Public: two isomorphic graphs ``gamma`` and ``gamma1``.  Secret: the
relabeling ``phi`` with ``apply_permutation(gamma, phi) == gamma1``.
Each round the prover commits to a fresh relabeled copy ``psi(gamma1)`` and
opens it either as ``psi`` (from ``gamma1``) or ``psi . phi`` (from ``gamma``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..codec import pack_fields, unpack_fields
from ..errors import BadParameters, SizeMismatch
from ..graphs import (
    Graph,
    Permutation,
    apply_permutation,
    compose,
    invert,
    random_graph,
    random_permutation,
)
from ..sigma import Scheme, SchemeId, check_challenge


@dataclass(frozen=True)
class GraphIsoStatement:
    gamma: Graph
    gamma1: Graph


@dataclass(frozen=True)
class GraphIsoKeyPair:
    gamma: Graph
    gamma1: Graph
    phi: Permutation

    @property
    def statement(self) -> GraphIsoStatement:
        return GraphIsoStatement(self.gamma, self.gamma1)

    @property
    def witness(self) -> Permutation:
        return self.phi


def keygen(n: int, rng: random.Random, edge_probability: float = 0.5) -> GraphIsoKeyPair:
    if n < 1:
        raise BadParameters("n must be positive")
    gamma = random_graph(n, rng, edge_probability)
    phi = random_permutation(n, rng)
    return GraphIsoKeyPair(gamma, apply_permutation(gamma, phi), phi)


def _as_permutation(obj, n: int) -> Permutation | None:
    if not isinstance(obj, Permutation):
        try:
            obj = Permutation(tuple(obj))
        except (BadParameters, TypeError, ValueError):
            return None
    return obj if len(obj) == n else None


class GraphIsoScheme(Scheme):
    scheme_id = SchemeId.GRAPH_ISO

    def commit(self, keypair: GraphIsoKeyPair, rng: random.Random, psi: Permutation | None = None):
        if psi is None:
            psi = random_permutation(keypair.gamma1.n, rng)
        return apply_permutation(keypair.gamma1, psi), psi

    def respond(self, keypair: GraphIsoKeyPair, ephemeral: Permutation, challenge: int) -> Permutation:
        if check_challenge(challenge) == 0:
            return ephemeral
        return compose(ephemeral, keypair.phi)

    def verify_round(self, statement: GraphIsoStatement, commitment: Graph, challenge: int, response) -> bool:
        source = statement.gamma1 if check_challenge(challenge) == 0 else statement.gamma
        if commitment.n != source.n:
            return False
        perm = _as_permutation(response, source.n)
        return perm is not None and apply_permutation(source, perm) == commitment

    def extract(self, statement, commitment, response0: Permutation, response1: Permutation) -> Permutation:
        # psi^-1 . (psi . phi) = phi
        return compose(invert(response0), response1)

    def simulate(self, statement: GraphIsoStatement, challenge: int, rng: random.Random):
        source = statement.gamma1 if check_challenge(challenge) == 0 else statement.gamma
        rho = random_permutation(source.n, rng)
        return apply_permutation(source, rho), rho

    def is_witness(self, statement: GraphIsoStatement, witness) -> bool:
        if statement.gamma.n != statement.gamma1.n:
            return False
        perm = _as_permutation(witness, statement.gamma.n)
        try:
            return perm is not None and apply_permutation(statement.gamma, perm) == statement.gamma1
        except SizeMismatch:
            return False

    def encode_statement(self, statement: GraphIsoStatement) -> bytes:
        return pack_fields(statement.gamma.to_bytes(), statement.gamma1.to_bytes())

    def decode_statement(self, data: bytes) -> GraphIsoStatement:
        a, b = unpack_fields(data, 2)
        return GraphIsoStatement(Graph.from_bytes(a), Graph.from_bytes(b))

    def encode_commitment(self, statement, commitment: Graph) -> bytes:
        return commitment.to_bytes()

    def decode_commitment(self, statement, data: bytes) -> Graph:
        return Graph.from_bytes(data)

    def encode_response(self, statement, response: Permutation) -> bytes:
        return response.to_bytes()

    def decode_response(self, statement, challenge: int, data: bytes) -> Permutation:
        return Permutation.from_bytes(data)
