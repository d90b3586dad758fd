"""Key-pair factories shared by the test modules."""

import random

from zkauth.schemes import coloring, get_scheme, graph_iso, modexp, subgraph_iso
from zkauth.sigma import SchemeId

ALL_SCHEMES = list(SchemeId)


def make_keypair(sid: SchemeId, rng: random.Random, size: str = "default"):
    small = size == "small"
    if sid is SchemeId.GRAPH_ISO:
        return graph_iso.keygen(6 if small else 16, rng)
    if sid is SchemeId.SUBGRAPH_ISO:
        return subgraph_iso.keygen(4 if small else 8, 7 if small else 16, rng)
    if sid is SchemeId.COLORING:
        return coloring.keygen(7 if small else 16, 3, rng)
    return modexp.keygen(101 if small else 1009, rng)


def scheme_and_keypair(sid, seed=0, size="default"):
    return get_scheme(sid), make_keypair(sid, random.Random(seed), size)


import os
import socket
import subprocess
import sys
import threading

from zkauth.wire import FrameDecoder, Message, Tag, encode_message


class TamperProxy:
    """TCP relay that can rewrite one Response frame from the prover.

    ``position`` picks the payload byte of the first Response that gets
    XORed with 0xFF; None relays unchanged.
    """

    def __init__(self, upstream: tuple[str, int], position: int | None = None):
        self.upstream = upstream
        self.position = position
        self.tampered = False
        self.listener = socket.create_server(("127.0.0.1", 0))
        self.port = self.listener.getsockname()[1]
        self.thread = threading.Thread(target=self._serve, daemon=True)
        self.thread.start()

    def _serve(self):
        client, _ = self.listener.accept()
        server = socket.create_connection(self.upstream)
        back = threading.Thread(target=self._pipe, args=(server, client), daemon=True)
        back.start()
        decoder = FrameDecoder()
        try:
            while data := client.recv(65536):
                for msg in decoder.feed(data):
                    server.sendall(encode_message(self._maybe_tamper(msg)))
        except OSError:
            pass
        finally:
            for s in (server, client):
                try:
                    s.shutdown(socket.SHUT_RDWR)
                except OSError:
                    pass
            back.join(5)
            client.close()
            server.close()
            self.listener.close()

    def _maybe_tamper(self, msg):
        if self.position is None or self.tampered or msg.tag is not Tag.RESPONSE:
            return msg
        payload = bytearray(msg.payload)
        payload[self.position % len(payload)] ^= 0xFF
        self.tampered = True
        return Message(msg.tag, bytes(payload))

    @staticmethod
    def _pipe(src, dst):
        try:
            while data := src.recv(65536):
                dst.sendall(data)
        except OSError:
            pass
        finally:
            try:
                dst.shutdown(socket.SHUT_WR)
            except OSError:
                pass


def zkauth_cmd(*args):
    return [sys.executable, "-m", "zkauth", *map(str, args)]


def start_verifier(pub, rounds, seed="v"):
    """Launch ``zkauth verify --once`` on an ephemeral port; returns (process, port)."""
    proc = subprocess.Popen(
        zkauth_cmd("verify", "--pub", pub, "--listen", "127.0.0.1:0", "--once", "--rounds", rounds, "--seed", seed),
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        text=True,
        env={**os.environ, "PYTHONUNBUFFERED": "1"},
    )
    line = proc.stdout.readline()
    if not line.startswith("listening on "):
        proc.kill()
        raise RuntimeError(f"verifier did not start: {line!r} {proc.stderr.read()}")
    return proc, int(line.rsplit(":", 1)[1])


def run_cli_session(prefix, rounds, tamper_position=None, seed="p"):
    """keygen output -> verify --once -> [proxy] -> prove; returns (verify rc, prove rc, proxy)."""
    verifier, port = start_verifier(f"{prefix}.pub", rounds)
    proxy = TamperProxy(("127.0.0.1", port), tamper_position)
    prove = subprocess.run(
        zkauth_cmd("prove", "--key", f"{prefix}.key", "--verifier", f"127.0.0.1:{proxy.port}",
                   "--rounds", rounds, "--seed", seed),
        capture_output=True, text=True, timeout=60,
    )
    try:
        verify_rc = verifier.wait(timeout=30)
    finally:
        verifier.kill()
        verifier.stdout.close()
        verifier.stderr.close()
    proxy.thread.join(5)
    return verify_rc, prove.returncode, proxy
