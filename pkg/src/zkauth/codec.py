"""Small byte-level helpers: length prefixes and fixed-width integers."""

from __future__ import annotations

import struct

from .errors import DecodeError

_U32 = struct.Struct(">I")


def pack_u32(value: int) -> bytes:
    return _U32.pack(value)


def pack_fields(*fields: bytes) -> bytes:
    """Concatenate fields, each preceded by its 4-byte big-endian length."""
    return b"".join(_U32.pack(len(f)) + f for f in fields)


def unpack_fields(data: bytes, count: int) -> list[bytes]:
    """Inverse of :func:`pack_fields`; the whole buffer must be consumed."""
    out = []
    pos = 0
    for _ in range(count):
        if pos + 4 > len(data):
            raise DecodeError("truncated length prefix")
        (size,) = _U32.unpack_from(data, pos)
        pos += 4
        if pos + size > len(data):
            raise DecodeError("truncated field")
        out.append(bytes(data[pos:pos + size]))
        pos += size
    if pos != len(data):
        raise DecodeError("trailing bytes after last field")
    return out


def int_width(modulus: int) -> int:
    return max(1, (modulus.bit_length() + 7) // 8)


def pack_int(value: int, width: int) -> bytes:
    return value.to_bytes(width, "big")


def unpack_int(data: bytes, width: int) -> int:
    if len(data) != width:
        raise DecodeError(f"expected {width}-byte integer, got {len(data)} bytes")
    return int.from_bytes(data, "big")
