"""Framing, transports and the interactive session protocol."""

from .frames import (
    MAX_PAYLOAD,
    PROTOCOL_VERSION,
    FrameDecoder,
    Hello,
    Message,
    Tag,
    decode_message,
    encode_message,
)
from .session import (
    SessionConfig,
    VerifierServer,
    connect,
    LoopbackResult,
    prover_endpoint,
    run_loopback,
    session_rng,
    verifier_endpoint,
)
from .transport import (
    LoopbackStream,
    MessageChannel,
    RecordingStream,
    SocketStream,
    Stream,
    loopback_pair,
)

__all__ = [
    "MAX_PAYLOAD",
    "PROTOCOL_VERSION",
    "FrameDecoder",
    "Hello",
    "LoopbackStream",
    "Message",
    "MessageChannel",
    "RecordingStream",
    "SessionConfig",
    "SocketStream",
    "Stream",
    "Tag",
    "VerifierServer",
    "connect",
    "decode_message",
    "encode_message",
    "LoopbackResult",
    "loopback_pair",
    "run_loopback",
    "prover_endpoint",
    "session_rng",
    "verifier_endpoint",
]
