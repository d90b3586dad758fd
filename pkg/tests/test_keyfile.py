import json
from dataclasses import replace

import pytest

from zkauth import keyfile
from zkauth.errors import InvalidKeyPair
from zkauth.sigma import SchemeId

from helpers import ALL_SCHEMES, scheme_and_keypair

schemes = pytest.mark.parametrize("sid", ALL_SCHEMES, ids=lambda s: s.cli_name)


@schemes
def test_round_trip(sid, tmp_path):
    scheme, kp = scheme_and_keypair(sid, seed=1)
    pub, key = keyfile.write_keypair(tmp_path / "k", kp, keyfile.timestamp(fixed=True))
    assert keyfile.load_public(pub) == (sid, kp.statement)
    assert keyfile.load_public(key) == (sid, kp.statement)
    assert keyfile.load_private(key) == kp


@schemes
def test_public_file_has_no_secret(sid, tmp_path):
    scheme, kp = scheme_and_keypair(sid, seed=2)
    pub, key = keyfile.write_keypair(tmp_path / "k", kp)
    doc = json.loads(pub.read_text())
    assert set(doc) == {"version", "scheme", "created", "public"}
    for value in keyfile.witness_fields(kp).values():
        assert value not in pub.read_text()
    assert "secret" in json.loads(key.read_text())
    with pytest.raises(keyfile.KeyFileError):
        keyfile.load_private(pub)


def test_modexp_fields_are_decimal_strings(tmp_path):
    scheme, kp = scheme_and_keypair(SchemeId.MODEXP, seed=3)
    _, key = keyfile.write_keypair(tmp_path / "k", kp, "2020-01-01T00:00:00Z")
    doc = json.loads(key.read_text())
    assert doc["public"] == {"p": str(kp.p), "x": str(kp.x), "u": str(kp.u)}
    assert doc["secret"] == {"s": str(kp.s)}
    assert doc["scheme"] == "modexp" and doc["version"] == 1


def test_mismatched_secret_refused(tmp_path):
    scheme, kp = scheme_and_keypair(SchemeId.MODEXP, seed=4)
    bad = replace(kp, s=1 if kp.s != 1 else 5)
    _, key = keyfile.write_keypair(tmp_path / "k", bad)
    with pytest.raises(InvalidKeyPair):
        keyfile.load_private(key)


def test_fixed_timestamp_makes_files_reproducible(tmp_path):
    _, kp = scheme_and_keypair(SchemeId.COLORING, seed=5)
    a = keyfile.write_keypair(tmp_path / "a", kp, keyfile.timestamp(fixed=True))
    b = keyfile.write_keypair(tmp_path / "b", kp, keyfile.timestamp(fixed=True))
    assert a[1].read_bytes() == b[1].read_bytes()


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        json.dumps({"version": 1}),
        json.dumps({"version": 2, "scheme": "modexp", "public": {}}),
        json.dumps({"version": 1, "scheme": "rsa", "public": {}}),
        json.dumps({"version": 1, "scheme": "modexp", "public": {"p": "23"}}),
        json.dumps({"version": 1, "scheme": "modexp", "public": {"p": "21", "x": "2", "u": "4"}}),
        json.dumps({"version": 1, "scheme": "modexp", "public": {"p": "23", "x": "-5", "u": "4"}}),
        json.dumps({"version": 1, "scheme": "graph-iso", "public": {"gamma": "@@", "gamma1": ""}}),
    ],
)
def test_malformed_files(text, tmp_path):
    path = tmp_path / "bad.pub"
    path.write_text(text)
    with pytest.raises(keyfile.KeyFileError):
        keyfile.load_public(path)


def test_missing_file(tmp_path):
    with pytest.raises(keyfile.KeyFileError):
        keyfile.load_public(tmp_path / "absent.pub")
