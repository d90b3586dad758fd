"""Graph k-colorability identification.

Public: a graph ``gamma`` and a color count ``k``.  Secret: a proper
``k``-coloring of ``gamma``.  The prover commits to a relabeled copy
``gamma1 = psi(gamma)`` and opens with either ``psi`` or a full proper
coloring of ``gamma1``.  Colors in that coloring are renamed in first-seen
order so repeated openings do not line up color identities across rounds.
"""

from __future__ import annotations

import random
import struct
from dataclasses import dataclass

from ..codec import pack_fields, unpack_fields
from ..errors import CoverageMismatch, DecodeError
from ..graphs import (
    Coloring,
    Graph,
    Permutation,
    apply_permutation,
    generate_k_colorable_graph,
    is_valid_coloring,
    random_permutation,
)
from ..sigma import Scheme, SchemeId, check_challenge


@dataclass(frozen=True)
class ColoringStatement:
    gamma: Graph
    k: int


@dataclass(frozen=True)
class ColoringKeyPair:
    gamma: Graph
    k: int
    coloring: Coloring

    @property
    def statement(self) -> ColoringStatement:
        return ColoringStatement(self.gamma, self.k)

    @property
    def witness(self) -> Coloring:
        return self.coloring


def keygen(n: int, k: int, rng: random.Random, partition=None) -> ColoringKeyPair:
    gamma, coloring = generate_k_colorable_graph(n, k, rng, partition)
    return ColoringKeyPair(gamma, k, coloring)


def _valid_for(g: Graph, k: int, col) -> bool:
    if not isinstance(col, Coloring) or col.k != k:
        return False
    try:
        return is_valid_coloring(g, col)
    except CoverageMismatch:
        return False


class ColoringScheme(Scheme):
    scheme_id = SchemeId.COLORING

    def commit(self, keypair: ColoringKeyPair, rng: random.Random, psi: Permutation | None = None):
        if psi is None:
            psi = random_permutation(keypair.gamma.n, rng)
        return apply_permutation(keypair.gamma, psi), psi

    def respond(self, keypair: ColoringKeyPair, ephemeral: Permutation, challenge: int):
        if check_challenge(challenge) == 0:
            return ephemeral
        return keypair.coloring.pushforward(ephemeral).canonical()

    def verify_round(self, statement: ColoringStatement, commitment: Graph, challenge: int, response) -> bool:
        if commitment.n != statement.gamma.n:
            return False
        if check_challenge(challenge) == 0:
            return (
                isinstance(response, Permutation)
                and len(response) == statement.gamma.n
                and apply_permutation(statement.gamma, response) == commitment
            )
        return _valid_for(commitment, statement.k, response)

    def extract(self, statement: ColoringStatement, commitment, response0: Permutation,
                response1: Coloring) -> Coloring:
        return response1.pullback(response0)

    def simulate(self, statement: ColoringStatement, challenge: int, rng: random.Random):
        n = statement.gamma.n
        if check_challenge(challenge) == 0:
            psi = random_permutation(n, rng)
            return apply_permutation(statement.gamma, psi), psi
        fake, coloring = generate_k_colorable_graph(n, statement.k, rng)
        return fake, coloring.canonical()

    def is_witness(self, statement: ColoringStatement, witness) -> bool:
        return _valid_for(statement.gamma, statement.k, witness)

    def encode_statement(self, statement: ColoringStatement) -> bytes:
        return pack_fields(struct.pack(">I", statement.k), statement.gamma.to_bytes())

    def decode_statement(self, data: bytes) -> ColoringStatement:
        k_bytes, g = unpack_fields(data, 2)
        if len(k_bytes) != 4:
            raise DecodeError("color count must be a 4-byte integer")
        (k,) = struct.unpack(">I", k_bytes)
        gamma = Graph.from_bytes(g)
        if not 1 <= k <= gamma.n:
            raise DecodeError(f"color count {k} out of range for {gamma.n} vertices")
        return ColoringStatement(gamma, k)

    def encode_commitment(self, statement, commitment: Graph) -> bytes:
        return commitment.to_bytes()

    def decode_commitment(self, statement, data: bytes) -> Graph:
        return Graph.from_bytes(data)

    def encode_response(self, statement, response) -> bytes:
        return response.to_bytes()

    def decode_response(self, statement: ColoringStatement, challenge: int, data: bytes):
        if check_challenge(challenge) == 0:
            return Permutation.from_bytes(data)
        return Coloring.from_bytes(data, statement.k)

