"""Subgraph-isomorphism identification.

Public: a small graph ``gamma`` and a host ``lambda1``.  Secret: the vertices
of ``lambda1`` that induce a copy of ``gamma`` plus the matching relabeling.
Subgraph always means *induced* subgraph, since vertex lists are all that is
ever transmitted.

A commitment is a larger graph ``lambda2`` hiding ``gamma2 = psi(lambda1)`` at
a random position.  Both openings are vertex correspondences into
``lambda2``: from ``lambda1`` (challenge 0) or from ``gamma`` (challenge 1).
The challenge-1 opening is checked against the image of ``gamma`` inside
``lambda2`` rather than against all of ``gamma2``, which has more vertices.

Correspondences travel in a canonical form: the sorted target vertex list and
a permutation ``map`` so that source vertex ``i`` goes to ``vertices[map[i]]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ..codec import pack_fields, unpack_fields
from ..errors import BadParameters, DuplicateIndex, IndexOutOfRange, SizeMismatch
from ..graphs import (
    Graph,
    Permutation,
    apply_permutation,
    decode_indices,
    embed_into_larger,
    encode_indices,
    induced_subgraph,
    random_graph,
    random_permutation,
)
from ..sigma import Scheme, SchemeId, check_challenge


@dataclass(frozen=True)
class SubgraphIsoStatement:
    gamma: Graph
    lambda1: Graph


@dataclass(frozen=True)
class SubgraphWitness:
    embedding: tuple[int, ...]
    phi: Permutation

    def vertex_map(self) -> tuple[int, ...]:
        """Host vertex of each ``gamma`` vertex."""
        return tuple(self.embedding[self.phi[v]] for v in range(len(self.phi)))


@dataclass(frozen=True)
class SubgraphIsoKeyPair:
    gamma: Graph
    lambda1: Graph
    embedding: tuple[int, ...]
    phi: Permutation

    @property
    def statement(self) -> SubgraphIsoStatement:
        return SubgraphIsoStatement(self.gamma, self.lambda1)

    @property
    def witness(self) -> SubgraphWitness:
        return SubgraphWitness(self.embedding, self.phi)


@dataclass(frozen=True)
class SubgraphEphemeral:
    psi: Permutation
    host_embedding: tuple[int, ...]


@dataclass(frozen=True)
class SubgraphResponse:
    vertices: tuple[int, ...]
    map: Permutation

    @classmethod
    def from_correspondence(cls, targets: Sequence[int]) -> "SubgraphResponse":
        vertices = tuple(sorted(targets))
        position = {v: i for i, v in enumerate(vertices)}
        return cls(vertices, Permutation(tuple(position[t] for t in targets)))

    def correspondence(self) -> tuple[int, ...]:
        return tuple(self.vertices[self.map[i]] for i in range(len(self.map)))


def keygen(n_gamma: int, n_lambda: int, rng: random.Random, edge_probability: float = 0.5) -> SubgraphIsoKeyPair:
    if not 1 <= n_gamma <= n_lambda:
        raise BadParameters(f"need 1 <= n_gamma <= n_lambda, got {n_gamma}, {n_lambda}")
    gamma = random_graph(n_gamma, rng, edge_probability)
    phi = random_permutation(n_gamma, rng)
    lambda1, embedding = embed_into_larger(apply_permutation(gamma, phi), n_lambda, rng)
    return SubgraphIsoKeyPair(gamma, lambda1, embedding, phi)


class SubgraphIsoScheme(Scheme):
    """``slack`` extra vertices pad each commitment; None means ``|lambda1|``."""

    scheme_id = SchemeId.SUBGRAPH_ISO

    def __init__(self, slack: int | None = None) -> None:
        if slack is not None and slack < 0:
            raise BadParameters("slack must be nonnegative")
        self.slack = slack

    def _host_size(self, lambda1: Graph) -> int:
        return lambda1.n + (lambda1.n if self.slack is None else self.slack)

    def commit(self, keypair: SubgraphIsoKeyPair, rng: random.Random):
        psi = random_permutation(keypair.lambda1.n, rng)
        gamma2 = apply_permutation(keypair.lambda1, psi)
        lambda2, host_embedding = embed_into_larger(gamma2, self._host_size(keypair.lambda1), rng)
        return lambda2, SubgraphEphemeral(psi, host_embedding)

    def respond(self, keypair: SubgraphIsoKeyPair, ephemeral: SubgraphEphemeral, challenge: int) -> SubgraphResponse:
        psi, host = ephemeral.psi, ephemeral.host_embedding
        if check_challenge(challenge) == 0:
            targets = [host[psi[i]] for i in range(keypair.lambda1.n)]
        else:
            targets = [host[psi[keypair.embedding[keypair.phi[v]]]] for v in range(keypair.gamma.n)]
        return SubgraphResponse.from_correspondence(targets)

    def verify_round(self, statement: SubgraphIsoStatement, commitment: Graph, challenge: int, response) -> bool:
        source = statement.lambda1 if check_challenge(challenge) == 0 else statement.gamma
        if not isinstance(response, SubgraphResponse):
            return False
        if len(response.vertices) != source.n or len(response.map) != source.n:
            return False
        try:
            image = induced_subgraph(commitment, response.vertices)
        except (IndexOutOfRange, DuplicateIndex, BadParameters):
            return False
        return image == apply_permutation(source, response.map)

    def extract(self, statement: SubgraphIsoStatement, commitment, response0: SubgraphResponse,
                response1: SubgraphResponse) -> SubgraphWitness:
        back = {t: i for i, t in enumerate(response0.correspondence())}
        # a gamma vertex outside psi(lambda1) leaves nothing to pull back
        embedding = tuple(back.get(t, -1) for t in response1.correspondence())
        return SubgraphWitness(embedding, Permutation.identity(statement.gamma.n))

    def simulate(self, statement: SubgraphIsoStatement, challenge: int, rng: random.Random):
        m = self._host_size(statement.lambda1)
        if check_challenge(challenge) == 0:
            psi = random_permutation(statement.lambda1.n, rng)
            lambda2, host = embed_into_larger(apply_permutation(statement.lambda1, psi), m, rng)
            targets = [host[psi[i]] for i in range(statement.lambda1.n)]
        else:
            lambda2, targets = embed_into_larger(statement.gamma, m, rng)
        return lambda2, SubgraphResponse.from_correspondence(targets)

    def is_witness(self, statement: SubgraphIsoStatement, witness) -> bool:
        if not isinstance(witness, SubgraphWitness):
            return False
        n = statement.gamma.n
        if len(witness.embedding) != n or len(witness.phi) != n:
            return False
        try:
            image = induced_subgraph(statement.lambda1, witness.embedding)
            return apply_permutation(statement.gamma, witness.phi) == image
        except (IndexOutOfRange, DuplicateIndex, BadParameters, SizeMismatch):
            return False

    def encode_statement(self, statement: SubgraphIsoStatement) -> bytes:
        return pack_fields(statement.gamma.to_bytes(), statement.lambda1.to_bytes())

    def decode_statement(self, data: bytes) -> SubgraphIsoStatement:
        a, b = unpack_fields(data, 2)
        return SubgraphIsoStatement(Graph.from_bytes(a), Graph.from_bytes(b))

    def encode_commitment(self, statement, commitment: Graph) -> bytes:
        return commitment.to_bytes()

    def decode_commitment(self, statement, data: bytes) -> Graph:
        return Graph.from_bytes(data)

    def encode_response(self, statement, response: SubgraphResponse) -> bytes:
        return pack_fields(encode_indices(response.vertices), response.map.to_bytes())

    def decode_response(self, statement, challenge: int, data: bytes) -> SubgraphResponse:
        vertices, mapping = unpack_fields(data, 2)
        return SubgraphResponse(decode_indices(vertices), Permutation.from_bytes(mapping))

