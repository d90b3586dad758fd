"""Byte-stream transports and a message channel over them.

A stream offers ``send(data)``, ``recv(max_bytes, timeout) -> bytes`` (empty
on orderly close) and ``close()``.  Sockets and an in-memory loopback pair
both satisfy it.
"""

from __future__ import annotations

import queue
import socket
import threading
import time
from collections import deque
from typing import Protocol

from ..errors import Timeout, TransportClosed
from .frames import FrameDecoder, Message, encode_message


class Stream(Protocol):
    def send(self, data: bytes) -> None: ...

    def recv(self, max_bytes: int, timeout: float | None) -> bytes: ...

    def close(self) -> None: ...


class SocketStream:
    def __init__(self, sock: socket.socket) -> None:
        self.sock = sock

    def send(self, data: bytes) -> None:
        try:
            self.sock.sendall(data)
        except OSError as exc:
            raise TransportClosed(f"send failed: {exc}") from exc

    def recv(self, max_bytes: int, timeout: float | None) -> bytes:
        self.sock.settimeout(timeout)
        try:
            return self.sock.recv(max_bytes)
        except socket.timeout:
            raise Timeout(f"no data within {timeout} s") from None
        except OSError as exc:
            raise TransportClosed(f"receive failed: {exc}") from exc

    def close(self) -> None:
        try:
            self.sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self.sock.close()


_EOF = None


class LoopbackStream:
    """One end of an in-memory duplex pipe; see :func:`loopback_pair`."""

    def __init__(self, inbox: queue.Queue, outbox: queue.Queue) -> None:
        self._inbox = inbox
        self._outbox = outbox
        self._pending = b""
        self._eof = False
        self._closed = False
        self._lock = threading.Lock()

    def send(self, data: bytes) -> None:
        if self._closed:
            raise TransportClosed("stream is closed")
        if data:
            self._outbox.put(bytes(data))

    def recv(self, max_bytes: int, timeout: float | None) -> bytes:
        with self._lock:
            if not self._pending and not self._eof:
                try:
                    chunk = self._inbox.get(timeout=timeout)
                except queue.Empty:
                    raise Timeout(f"no data within {timeout} s") from None
                if chunk is _EOF:
                    self._eof = True
                else:
                    self._pending = chunk
            out, self._pending = self._pending[:max_bytes], self._pending[max_bytes:]
            return out

    def close(self) -> None:
        if not self._closed:
            self._closed = True
            self._outbox.put(_EOF)


def loopback_pair() -> tuple[LoopbackStream, LoopbackStream]:
    a_to_b: queue.Queue = queue.Queue()
    b_to_a: queue.Queue = queue.Queue()
    return LoopbackStream(b_to_a, a_to_b), LoopbackStream(a_to_b, b_to_a)


class RecordingStream:
    """Wraps a stream and keeps a copy of every byte sent and received."""

    def __init__(self, inner: Stream) -> None:
        self.inner = inner
        self.sent = bytearray()
        self.received = bytearray()

    def send(self, data: bytes) -> None:
        self.sent += data
        self.inner.send(data)

    def recv(self, max_bytes: int, timeout: float | None) -> bytes:
        data = self.inner.recv(max_bytes, timeout)
        self.received += data
        return data

    def close(self) -> None:
        self.inner.close()


class MessageChannel:
    """Whole-message send/receive over a stream with a per-message timeout."""

    def __init__(self, stream: Stream, timeout: float | None = 5.0) -> None:
        self.stream = stream
        self.timeout = timeout
        self._decoder = FrameDecoder()
        self._ready: deque[Message] = deque()

    def send(self, msg: Message) -> None:
        self.stream.send(encode_message(msg))

    def recv(self) -> Message:
        deadline = None if self.timeout is None else time.monotonic() + self.timeout
        while not self._ready:
            remaining = None if deadline is None else max(deadline - time.monotonic(), 0.0)
            if remaining == 0.0:
                raise Timeout(f"no complete message within {self.timeout} s")
            data = self.stream.recv(65536, remaining)
            if not data:
                raise TransportClosed("peer closed the stream")
            self._ready.extend(self._decoder.feed(data))
        return self._ready.popleft()
