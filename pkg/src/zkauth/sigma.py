"""Generic commitment / challenge / response engine.

Each scheme plugs in through :class:`Scheme`.  At this layer commitments and
responses are opaque byte strings; only the scheme knows how to decode them.
A round verifies when the scheme's ``verify_round`` accepts the decoded values;
anything that fails to decode simply rejects.
"""

from __future__ import annotations

import enum
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

from .errors import (
    DecodeError,
    ExtractionFailed,
    InvalidKeyPair,
    MalformedTranscript,
    NotBothAccepting,
    UnsupportedChallenge,
)

DEFAULT_ROUNDS = 32


class SchemeId(enum.IntEnum):
    GRAPH_ISO = 1
    SUBGRAPH_ISO = 2
    COLORING = 3
    MODEXP = 4

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]

    @classmethod
    def from_cli_name(cls, name: str) -> "SchemeId":
        for sid, label in _CLI_NAMES.items():
            if label == name:
                return sid
        raise ValueError(f"unknown scheme {name!r}")


_CLI_NAMES = {
    SchemeId.GRAPH_ISO: "graph-iso",
    SchemeId.SUBGRAPH_ISO: "subgraph-iso",
    SchemeId.COLORING: "coloring",
    SchemeId.MODEXP: "modexp",
}


class Verdict(str, enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"

    @classmethod
    def of(cls, ok: bool) -> "Verdict":
        return cls.ACCEPT if ok else cls.REJECT


def check_challenge(c: int) -> int:
    if not isinstance(c, int) or c not in (0, 1):
        raise UnsupportedChallenge(f"challenge must be 0 or 1, got {c!r}")
    return int(c)


@dataclass(frozen=True)
class RoundRecord:
    commitment: bytes
    challenge: int
    response: bytes


@dataclass(frozen=True)
class Transcript:
    statement: Any
    rounds: tuple[RoundRecord, ...]
    verdict: Verdict


class Scheme(ABC):
    """Contract every concrete scheme implements.

    ``commit``/``respond`` run on the prover with the key pair; ``verify_round``,
    ``simulate`` and ``extract`` only ever see the public statement.
    """

    scheme_id: SchemeId

    @abstractmethod
    def commit(self, keypair, rng: random.Random) -> tuple[Any, Any]:
        """Return ``(commitment, ephemeral)`` for one round."""

    @abstractmethod
    def respond(self, keypair, ephemeral, challenge: int) -> Any:
        ...

    @abstractmethod
    def verify_round(self, statement, commitment, challenge: int, response) -> bool:
        ...

    @abstractmethod
    def extract(self, statement, commitment, response0, response1) -> Any:
        """Combine two accepting responses to one commitment into a witness."""

    @abstractmethod
    def simulate(self, statement, challenge: int, rng: random.Random) -> tuple[Any, Any]:
        """Return ``(commitment, response)`` verifying for ``challenge``, without a witness."""

    @abstractmethod
    def is_witness(self, statement, witness) -> bool:
        ...

    @abstractmethod
    def encode_statement(self, statement) -> bytes: ...

    @abstractmethod
    def decode_statement(self, data: bytes): ...

    @abstractmethod
    def encode_commitment(self, statement, commitment) -> bytes: ...

    @abstractmethod
    def decode_commitment(self, statement, data: bytes): ...

    @abstractmethod
    def encode_response(self, statement, response) -> bytes: ...

    @abstractmethod
    def decode_response(self, statement, challenge: int, data: bytes): ...

    def check_keypair(self, keypair) -> None:
        if not self.is_witness(keypair.statement, keypair.witness):
            raise InvalidKeyPair("witness does not satisfy the public statement")


def _challenge_stream(rng: random.Random, challenges: Iterable[int] | None) -> Iterator[int]:
    if challenges is not None:
        for c in challenges:
            yield check_challenge(c)
        return
    while True:
        yield rng.getrandbits(1)


def prove_round(scheme: Scheme, keypair, challenge: int, rng: random.Random) -> RoundRecord:
    """One honest round with a fixed challenge."""
    c = check_challenge(challenge)
    st = keypair.statement
    commitment, ephemeral = scheme.commit(keypair, rng)
    response = scheme.respond(keypair, ephemeral, c)
    return RoundRecord(scheme.encode_commitment(st, commitment), c, scheme.encode_response(st, response))


def honest_opening(scheme: Scheme, keypair, rng: random.Random) -> tuple[bytes, bytes, bytes]:
    """One commitment together with its responses to both challenges."""
    st = keypair.statement
    commitment, ephemeral = scheme.commit(keypair, rng)
    return (
        scheme.encode_commitment(st, commitment),
        scheme.encode_response(st, scheme.respond(keypair, ephemeral, 0)),
        scheme.encode_response(st, scheme.respond(keypair, ephemeral, 1)),
    )


def verify_record(scheme: Scheme, statement, record: RoundRecord) -> bool:
    c = check_challenge(record.challenge)
    try:
        commitment = scheme.decode_commitment(statement, record.commitment)
        response = scheme.decode_response(statement, c, record.response)
    except DecodeError:
        return False
    return bool(scheme.verify_round(statement, commitment, c, response))


def run_session(
    scheme: Scheme,
    keypair,
    rounds: int = DEFAULT_ROUNDS,
    rng: random.Random | None = None,
    challenges: Iterable[int] | None = None,
) -> Transcript:
    """Run prover and verifier locally for ``rounds`` rounds.

    Challenges come from ``rng`` unless an explicit sequence is injected.
    """
    if rounds < 1:
        raise MalformedTranscript("a session needs at least one round")
    scheme.check_keypair(keypair)
    rng = rng if rng is not None else random.SystemRandom()
    stream = _challenge_stream(rng, challenges)
    statement = keypair.statement
    records = []
    for _ in range(rounds):
        try:
            c = next(stream)
        except StopIteration:
            raise MalformedTranscript("injected challenge sequence ran out") from None
        records.append(prove_round(scheme, keypair, c, rng))
    ok = all(verify_record(scheme, statement, r) for r in records)
    return Transcript(statement, tuple(records), Verdict.of(ok))


def verify_transcript(
    scheme: Scheme, statement, transcript: Transcript, rounds: int | None = None
) -> bool:
    if not transcript.rounds:
        raise MalformedTranscript("transcript has no rounds")
    if rounds is not None and len(transcript.rounds) != rounds:
        raise MalformedTranscript(f"expected {rounds} rounds, got {len(transcript.rounds)}")
    for r in transcript.rounds:
        if not isinstance(r, RoundRecord) or r.challenge not in (0, 1):
            raise MalformedTranscript(f"malformed round record {r!r}")
    if scheme.encode_statement(transcript.statement) != scheme.encode_statement(statement):
        return False
    return all(verify_record(scheme, statement, r) for r in transcript.rounds)


def extract_witness(scheme: Scheme, statement, commitment: bytes, response0: bytes, response1: bytes):
    """Recover a witness from one commitment answered under both challenges."""
    r0 = RoundRecord(commitment, 0, response0)
    r1 = RoundRecord(commitment, 1, response1)
    if not (verify_record(scheme, statement, r0) and verify_record(scheme, statement, r1)):
        raise NotBothAccepting("both openings must verify before extraction")
    witness = scheme.extract(
        statement,
        scheme.decode_commitment(statement, commitment),
        scheme.decode_response(statement, 0, response0),
        scheme.decode_response(statement, 1, response1),
    )
    if not scheme.is_witness(statement, witness):
        raise ExtractionFailed("combined openings do not yield a valid witness")
    return witness


def simulate_transcript(scheme: Scheme, statement, challenge: int, rng: random.Random) -> RoundRecord:
    """A verifying round for a known-in-advance challenge, produced without the witness."""
    c = check_challenge(challenge)
    commitment, response = scheme.simulate(statement, c, rng)
    return RoundRecord(
        scheme.encode_commitment(statement, commitment), c, scheme.encode_response(statement, response)
    )
