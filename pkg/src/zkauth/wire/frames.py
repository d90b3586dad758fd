"""Binary frame codec.

Every frame is ``[1-byte tag][4-byte big-endian payload length][payload]``.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

from ..errors import (
    InvalidChallengeByte,
    MalformedFrame,
    PayloadTooLarge,
    Truncated,
    UnknownTag,
)
from ..sigma import SchemeId, Verdict

HEADER = struct.Struct(">BI")
MAX_PAYLOAD = (1 << 32) - 1
PROTOCOL_VERSION = 1


class Tag(enum.IntEnum):
    HELLO = 0x01
    PUBLIC_KEY = 0x02
    COMMITMENT = 0x03
    CHALLENGE = 0x04
    RESPONSE = 0x05
    VERDICT = 0x06


@dataclass(frozen=True)
class Message:
    tag: Tag
    payload: bytes = b""

    @classmethod
    def challenge(cls, c: int) -> "Message":
        return cls(Tag.CHALLENGE, bytes([c]))

    @classmethod
    def verdict(cls, v: Verdict) -> "Message":
        return cls(Tag.VERDICT, b"\x01" if v is Verdict.ACCEPT else b"\x00")

    @property
    def challenge_bit(self) -> int:
        return self.payload[0]

    @property
    def verdict_value(self) -> Verdict:
        return Verdict.ACCEPT if self.payload == b"\x01" else Verdict.REJECT


@dataclass(frozen=True)
class Hello:
    version: int
    scheme_id: SchemeId
    rounds: int

    _FMT = struct.Struct(">BBI")

    def to_message(self) -> Message:
        return Message(Tag.HELLO, self._FMT.pack(self.version, int(self.scheme_id), self.rounds))

    @classmethod
    def from_message(cls, msg: Message) -> "Hello":
        if len(msg.payload) != cls._FMT.size:
            raise MalformedFrame("hello payload must be 6 bytes")
        version, sid, rounds = cls._FMT.unpack(msg.payload)
        try:
            scheme_id = SchemeId(sid)
        except ValueError:
            raise MalformedFrame(f"unknown scheme id {sid}") from None
        return cls(version, scheme_id, rounds)


def _check_payload(tag: Tag, payload: bytes) -> None:
    if tag is Tag.CHALLENGE and (len(payload) != 1 or payload[0] > 1):
        raise InvalidChallengeByte(f"challenge payload must be one byte 0x00/0x01, got {payload!r}")
    if tag is Tag.VERDICT and (len(payload) != 1 or payload[0] > 1):
        raise MalformedFrame(f"verdict payload must be one byte 0x00/0x01, got {payload!r}")


def encode_message(m: Message) -> bytes:
    if len(m.payload) > MAX_PAYLOAD:
        raise PayloadTooLarge(f"payload of {len(m.payload)} bytes exceeds the 32-bit length field")
    tag = Tag(m.tag)
    _check_payload(tag, m.payload)
    return HEADER.pack(tag, len(m.payload)) + bytes(m.payload)


def decode_message(b: bytes, max_payload: int = MAX_PAYLOAD) -> tuple[Message, int]:
    """Decode one frame from the front of ``b``; returns the message and bytes consumed."""
    if len(b) < HEADER.size:
        raise Truncated(f"need {HEADER.size} header bytes, have {len(b)}")
    raw_tag, length = HEADER.unpack_from(b)
    try:
        tag = Tag(raw_tag)
    except ValueError:
        raise UnknownTag(f"unknown tag 0x{raw_tag:02x}") from None
    if length > max_payload:
        raise PayloadTooLarge(f"frame announces {length} bytes, limit is {max_payload}")
    end = HEADER.size + length
    if len(b) < end:
        raise Truncated(f"need {end} bytes, have {len(b)}")
    payload = bytes(b[HEADER.size:end])
    _check_payload(tag, payload)
    return Message(tag, payload), end


class FrameDecoder:
    """Incremental decoder: feed arbitrary chunks, get whole messages out."""

    def __init__(self, max_payload: int = MAX_PAYLOAD) -> None:
        self._buf = bytearray()
        self.max_payload = max_payload

    def feed(self, data: bytes) -> list[Message]:
        self._buf += data
        out = []
        while True:
            try:
                msg, used = decode_message(self._buf, self.max_payload)
            except Truncated:
                return out
            del self._buf[:used]
            out.append(msg)

    @property
    def pending(self) -> int:
        return len(self._buf)
