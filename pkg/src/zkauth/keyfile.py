"""JSON key-file envelopes.

``PREFIX.pub`` holds only the public statement; ``PREFIX.key`` holds the
statement and the witness.  Binary fields are base64 of the graph /
permutation / coloring encodings; integers are decimal strings.
"""

from __future__ import annotations

import base64
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import DecodeError, InvalidKeyPair, ZKAuthError
from .graphs import Coloring, Graph, Permutation, decode_indices, encode_indices
from .schemes import (
    ColoringKeyPair,
    ColoringStatement,
    GraphIsoKeyPair,
    GraphIsoStatement,
    ModExpKeyPair,
    ModExpStatement,
    SubgraphIsoKeyPair,
    SubgraphIsoStatement,
    get_scheme,
    scheme_for,
)
from .sigma import SchemeId

KEYFILE_VERSION = 1


class KeyFileError(ZKAuthError):
    pass


def _b64(data: bytes) -> str:
    return base64.b64encode(data).decode("ascii")


def _unb64(text: str) -> bytes:
    try:
        return base64.b64decode(text.encode("ascii"), validate=True)
    except (ValueError, UnicodeEncodeError) as exc:
        raise KeyFileError(f"bad base64 field: {exc}") from None


@dataclass(frozen=True)
class KeyFileEnvelope:
    version: int
    scheme_id: SchemeId
    public: dict
    secret: dict | None
    created: str

    def to_json(self) -> str:
        doc = {
            "version": self.version,
            "scheme": self.scheme_id.cli_name,
            "created": self.created,
            "public": self.public,
        }
        if self.secret is not None:
            doc["secret"] = self.secret
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "KeyFileEnvelope":
        try:
            doc = json.loads(text)
            version = doc["version"]
            scheme_id = SchemeId.from_cli_name(doc["scheme"])
            public = doc["public"]
        except (ValueError, KeyError, TypeError) as exc:
            raise KeyFileError(f"malformed key file: {exc}") from None
        if version != KEYFILE_VERSION:
            raise KeyFileError(f"unsupported key file version {version}")
        return cls(version, scheme_id, public, doc.get("secret"), doc.get("created", ""))


def statement_fields(statement) -> dict:
    sid = scheme_for(statement)
    if sid is SchemeId.GRAPH_ISO:
        return {"gamma": _b64(statement.gamma.to_bytes()), "gamma1": _b64(statement.gamma1.to_bytes())}
    if sid is SchemeId.SUBGRAPH_ISO:
        return {"gamma": _b64(statement.gamma.to_bytes()), "lambda1": _b64(statement.lambda1.to_bytes())}
    if sid is SchemeId.COLORING:
        return {"gamma": _b64(statement.gamma.to_bytes()), "k": statement.k}
    return {"p": str(statement.p), "x": str(statement.x), "u": str(statement.u)}


def witness_fields(keypair) -> dict:
    sid = scheme_for(keypair)
    if sid is SchemeId.GRAPH_ISO:
        return {"phi": _b64(keypair.phi.to_bytes())}
    if sid is SchemeId.SUBGRAPH_ISO:
        return {"embedding": _b64(encode_indices(keypair.embedding)), "phi": _b64(keypair.phi.to_bytes())}
    if sid is SchemeId.COLORING:
        return {"coloring": _b64(keypair.coloring.to_bytes())}
    return {"s": str(keypair.s)}


def parse_statement(sid: SchemeId, fields: dict):
    try:
        if sid is SchemeId.GRAPH_ISO:
            return GraphIsoStatement(Graph.from_bytes(_unb64(fields["gamma"])),
                                     Graph.from_bytes(_unb64(fields["gamma1"])))
        if sid is SchemeId.SUBGRAPH_ISO:
            return SubgraphIsoStatement(Graph.from_bytes(_unb64(fields["gamma"])),
                                        Graph.from_bytes(_unb64(fields["lambda1"])))
        if sid is SchemeId.COLORING:
            return ColoringStatement(Graph.from_bytes(_unb64(fields["gamma"])), int(fields["k"]))
        return ModExpStatement(int(fields["p"]), int(fields["x"]), int(fields["u"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise KeyFileError(f"bad public key fields: {exc}") from None


def parse_keypair(sid: SchemeId, statement, fields: dict):
    try:
        if sid is SchemeId.GRAPH_ISO:
            return GraphIsoKeyPair(statement.gamma, statement.gamma1,
                                   Permutation.from_bytes(_unb64(fields["phi"])))
        if sid is SchemeId.SUBGRAPH_ISO:
            return SubgraphIsoKeyPair(statement.gamma, statement.lambda1,
                                      decode_indices(_unb64(fields["embedding"])),
                                      Permutation.from_bytes(_unb64(fields["phi"])))
        if sid is SchemeId.COLORING:
            return ColoringKeyPair(statement.gamma, statement.k,
                                   Coloring.from_bytes(_unb64(fields["coloring"]), statement.k))
        return ModExpKeyPair(statement.p, statement.x, statement.u, int(fields["s"]))
    except (KeyError, TypeError, ValueError, DecodeError) as exc:
        raise KeyFileError(f"bad secret key fields: {exc}") from None


def envelope_for(keypair, created: str, include_secret: bool) -> KeyFileEnvelope:
    return KeyFileEnvelope(
        KEYFILE_VERSION,
        scheme_for(keypair),
        statement_fields(keypair.statement),
        witness_fields(keypair) if include_secret else None,
        created,
    )


def timestamp(fixed: bool = False) -> str:
    moment = datetime.fromtimestamp(0, timezone.utc) if fixed else datetime.now(timezone.utc)
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


def write_keypair(prefix: str | Path, keypair, created: str | None = None) -> tuple[Path, Path]:
    created = created or timestamp()
    pub = Path(f"{prefix}.pub")
    key = Path(f"{prefix}.key")
    pub.write_text(envelope_for(keypair, created, include_secret=False).to_json())
    key.write_text(envelope_for(keypair, created, include_secret=True).to_json())
    key.chmod(0o600)
    return pub, key


def read_envelope(path: str | Path) -> KeyFileEnvelope:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise KeyFileError(f"cannot read {path}: {exc}") from None
    return KeyFileEnvelope.from_json(text)


def load_public(path: str | Path) -> tuple[SchemeId, object]:
    """Statement from a public or private key file."""
    env = read_envelope(path)
    statement = parse_statement(env.scheme_id, env.public)
    try:
        get_scheme(env.scheme_id).decode_statement(get_scheme(env.scheme_id).encode_statement(statement))
    except (DecodeError, ValueError, OverflowError) as exc:
        raise KeyFileError(f"public key does not describe a valid statement: {exc}") from None
    return env.scheme_id, statement


def load_private(path: str | Path):
    """Key pair from a private key file; the witness must verify."""
    env = read_envelope(path)
    if env.secret is None:
        raise KeyFileError(f"{path} holds no secret key")
    sid, statement = load_public(path)
    keypair = parse_keypair(sid, statement, env.secret)
    if not get_scheme(sid).is_witness(statement, keypair.witness):
        raise InvalidKeyPair(f"secret in {path} does not match its public key")
    return keypair
