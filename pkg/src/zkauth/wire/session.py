"""Prover and verifier state machines over a message channel.

Session shape::

    prover                          verifier
      Hello(version, scheme, k) -->
      PublicKey(statement)      -->
      k times:
        Commitment              -->
                                <-- Challenge(c)
        Response                -->
                                <-- Verdict

The verifier draws each challenge only after the whole commitment frame has
arrived, and only from its own generator, so challenge ``i`` depends on the
seed and ``i`` alone.
"""

from __future__ import annotations

import logging
import random
import socket
import socketserver
import threading
from dataclasses import dataclass
from typing import Callable, Iterable

from ..errors import (
    DecodeError,
    ProtocolViolation,
    StatementMismatch,
    Timeout,
    TransportClosed,
    WireError,
)
from ..schemes import get_scheme, scheme_for
from ..sigma import (
    DEFAULT_ROUNDS,
    RoundRecord,
    Scheme,
    SchemeId,
    Transcript,
    Verdict,
    verify_record,
)
from .frames import PROTOCOL_VERSION, Hello, Message, Tag
from .transport import MessageChannel, SocketStream, Stream

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SessionConfig:
    scheme_id: SchemeId | None = None
    rounds: int = DEFAULT_ROUNDS
    timeout_ms: int = 5000

    def __post_init__(self) -> None:
        if self.rounds < 1:
            raise ValueError("a session needs at least one round")

    @property
    def timeout(self) -> float | None:
        return None if self.timeout_ms <= 0 else self.timeout_ms / 1000.0


def _expect(channel: MessageChannel, tag: Tag) -> Message:
    msg = channel.recv()
    if msg.tag is not tag:
        raise ProtocolViolation(f"expected {tag.name}, received {msg.tag.name}")
    return msg


def prover_endpoint(
    stream: Stream,
    scheme: Scheme,
    keypair,
    config: SessionConfig,
    rng: random.Random,
) -> Verdict:
    """Authenticate to the verifier on ``stream``; returns the verifier's verdict.

    Only the statement, commitments and responses are ever sent.
    """
    channel = MessageChannel(stream, config.timeout)
    statement = keypair.statement
    channel.send(Hello(PROTOCOL_VERSION, scheme.scheme_id, config.rounds).to_message())
    channel.send(Message(Tag.PUBLIC_KEY, scheme.encode_statement(statement)))
    for _ in range(config.rounds):
        commitment, ephemeral = scheme.commit(keypair, rng)
        channel.send(Message(Tag.COMMITMENT, scheme.encode_commitment(statement, commitment)))
        msg = channel.recv()
        if msg.tag is Tag.VERDICT:
            # verifier aborted early
            return msg.verdict_value
        if msg.tag is not Tag.CHALLENGE:
            raise ProtocolViolation(f"expected CHALLENGE, received {msg.tag.name}")
        response = scheme.respond(keypair, ephemeral, msg.challenge_bit)
        channel.send(Message(Tag.RESPONSE, scheme.encode_response(statement, response)))
    return _expect(channel, Tag.VERDICT).verdict_value


def verifier_endpoint(
    stream: Stream,
    config: SessionConfig,
    rng: random.Random,
    statement=None,
    challenges: Iterable[int] | None = None,
) -> Transcript:
    """Run one verifier session.

    With ``statement`` set the prover must present exactly that public key;
    with ``statement=None`` the presented key is trusted on first use.
    The returned transcript carries the verdict that was sent.
    """
    channel = MessageChannel(stream, config.timeout)
    try:
        return _verify(channel, config, rng, statement, challenges)
    except (Timeout, TransportClosed):
        raise
    except WireError:
        try:
            channel.send(Message.verdict(Verdict.REJECT))
        except WireError:
            pass
        raise


def _verify(channel, config, rng, pinned, challenges) -> Transcript:
    hello = Hello.from_message(_expect(channel, Tag.HELLO))
    if hello.version != PROTOCOL_VERSION:
        raise ProtocolViolation(f"unsupported protocol version {hello.version}")
    if hello.rounds != config.rounds:
        raise ProtocolViolation(f"prover proposes {hello.rounds} rounds, verifier requires {config.rounds}")
    if config.scheme_id is not None and hello.scheme_id != config.scheme_id:
        raise StatementMismatch(f"verifier expects scheme {config.scheme_id.cli_name}")
    if pinned is not None and scheme_for(pinned) != hello.scheme_id:
        raise StatementMismatch("prover announced a different scheme than the pinned key")
    scheme = get_scheme(hello.scheme_id)

    key_bytes = _expect(channel, Tag.PUBLIC_KEY).payload
    if pinned is not None:
        if key_bytes != scheme.encode_statement(pinned):
            raise StatementMismatch("presented public key differs from the pinned one")
        statement = pinned
    else:
        try:
            statement = scheme.decode_statement(key_bytes)
        except DecodeError as exc:
            raise ProtocolViolation(f"undecodable public key: {exc}") from None

    source = iter(challenges) if challenges is not None else None
    records = []
    for _ in range(config.rounds):
        commitment = _expect(channel, Tag.COMMITMENT).payload
        c = next(source) if source is not None else rng.getrandbits(1)
        channel.send(Message.challenge(c))
        response = _expect(channel, Tag.RESPONSE).payload
        records.append(RoundRecord(commitment, c, response))
    ok = all(verify_record(scheme, statement, r) for r in records)
    verdict = Verdict.of(ok)
    channel.send(Message.verdict(verdict))
    return Transcript(statement, tuple(records), verdict)


def connect(host: str, port: int, timeout: float | None = 5.0) -> SocketStream:
    return SocketStream(socket.create_connection((host, port), timeout=timeout))


def session_rng(seed, index: int) -> random.Random:
    """Per-connection verifier generator; independent of every other session."""
    return random.SystemRandom() if seed is None else random.Random(f"{seed}/{index}")


class VerifierServer(socketserver.ThreadingTCPServer):
    """TCP verifier handling each connection in its own thread.

    ``on_result(address, transcript_or_exception)`` is called after every session.
    """

    daemon_threads = True
    allow_reuse_address = True

    def __init__(
        self,
        address: tuple[str, int],
        config: SessionConfig,
        statement=None,
        seed=None,
        on_result: Callable | None = None,
    ) -> None:
        self.config = config
        self.statement = statement
        self.seed = seed
        self.on_result = on_result
        self._count = 0
        self._count_lock = threading.Lock()
        super().__init__(address, _Handler)

    def next_rng(self) -> random.Random:
        with self._count_lock:
            index = self._count
            self._count += 1
        return session_rng(self.seed, index)


class _Handler(socketserver.BaseRequestHandler):
    def handle(self) -> None:
        server: VerifierServer = self.server  # type: ignore[assignment]
        stream = SocketStream(self.request)
        try:
            result = verifier_endpoint(stream, server.config, server.next_rng(), server.statement)
            log.info("session from %s: %s", self.client_address, result.verdict.value)
        except WireError as exc:
            log.warning("session from %s failed: %s", self.client_address, exc)
            result = exc
        if server.on_result is not None:
            server.on_result(self.client_address, result)


@dataclass
class LoopbackResult:
    prover_verdict: Verdict | None
    transcript: Transcript | None
    prover_bytes: bytes
    verifier_bytes: bytes
    prover_error: BaseException | None = None
    verifier_error: BaseException | None = None


def run_loopback(
    scheme: Scheme,
    keypair,
    config: SessionConfig,
    prover_rng: random.Random,
    verifier_rng: random.Random,
    statement=None,
) -> LoopbackResult:
    """Run prover and verifier against each other over an in-memory pipe."""
    from .transport import RecordingStream, loopback_pair

    a, b = loopback_pair()
    prover_side, verifier_side = RecordingStream(a), RecordingStream(b)
    out: dict = {}

    def verifier() -> None:
        try:
            out["transcript"] = verifier_endpoint(verifier_side, config, verifier_rng, statement)
        except BaseException as exc:  # reported to the caller
            out["verifier_error"] = exc
        finally:
            verifier_side.close()

    thread = threading.Thread(target=verifier, daemon=True)
    thread.start()
    try:
        out["verdict"] = prover_endpoint(prover_side, scheme, keypair, config, prover_rng)
    except BaseException as exc:
        out["prover_error"] = exc
    finally:
        prover_side.close()
    thread.join()
    return LoopbackResult(
        out.get("verdict"),
        out.get("transcript"),
        bytes(prover_side.sent),
        bytes(verifier_side.sent),
        out.get("prover_error"),
        out.get("verifier_error"),
    )
