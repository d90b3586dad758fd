"""Exponentiation in Z_p^* as an identification scheme.

The units of Z_{p-1} act on Z_p^* by ``s(x) = x^s mod p``; the action
satisfies ``(s t)(x) = s(t(x))``.  Public: ``p``, a base ``x`` and
``u = x^s``.  Secret: ``s``.  Each round the prover commits to ``v = u^t`` and
opens with ``t`` (checked as ``u^t``) or ``t*s mod (p-1)`` (checked as
``x^(ts)``).  Forging amounts to computing discrete logarithms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from ..codec import int_width, pack_fields, pack_int, unpack_fields, unpack_int
from ..errors import BadModulus, BadParameters, DecodeError, NonInvertibleResponse, NotPrime
from ..sigma import Scheme, SchemeId, check_challenge

_TRIAL_DIVISION_LIMIT = 1 << 32


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """``base ** exponent % modulus`` by left-to-right square-and-multiply."""
    if modulus < 2:
        raise BadModulus(f"modulus must be at least 2, got {modulus}")
    if exponent < 0:
        raise BadParameters("exponent must be nonnegative")
    base %= modulus
    result = 1
    for bit in bin(exponent)[2:]:
        result = result * result % modulus
        if bit == "1":
            result = result * base % modulus
    return result % modulus


def is_prime(n: int) -> bool:
    """Trial division below 2**32; BPSW (via sympy) above."""
    if n < 2:
        return False
    if n >= _TRIAL_DIVISION_LIMIT:
        from sympy import isprime

        return bool(isprime(n))
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def is_unit(e: int, p: int) -> bool:
    """Whether ``e`` is a reduced unit of Z_{p-1}, i.e. ``1 <= e < p-1`` and coprime."""
    return 1 <= e < p - 1 and math.gcd(e, p - 1) == 1


def random_unit(p: int, rng: random.Random) -> int:
    """Uniform element of Z_{p-1}^* as an integer in ``[1, p-2]``."""
    while True:
        e = rng.randrange(1, p - 1)
        if math.gcd(e, p - 1) == 1:
            return e


def _check_modulus(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")


@dataclass(frozen=True)
class ModExpStatement:
    p: int
    x: int
    u: int


@dataclass(frozen=True)
class ModExpKeyPair:
    p: int
    x: int
    u: int
    s: int

    @property
    def statement(self) -> ModExpStatement:
        return ModExpStatement(self.p, self.x, self.u)

    @property
    def witness(self) -> int:
        return self.s


def keygen(p: int, rng: random.Random, x: int | None = None, s: int | None = None) -> ModExpKeyPair:
    _check_modulus(p)
    if x is None:
        x = rng.randrange(2, p)
    elif not 2 <= x <= p - 1:
        raise BadParameters(f"base must lie in [2, p-1], got {x}")
    if s is None:
        s = random_unit(p, rng)
    elif not is_unit(s, p):
        raise BadParameters(f"secret exponent {s} is not a unit mod {p - 1}")
    return ModExpKeyPair(p, x, mod_pow(x, s, p), s)


class ModExpScheme(Scheme):
    scheme_id = SchemeId.MODEXP

    def commit(self, keypair: ModExpKeyPair, rng: random.Random, t: int | None = None):
        if t is None:
            t = random_unit(keypair.p, rng)
        return mod_pow(keypair.u, t, keypair.p), t

    def respond(self, keypair: ModExpKeyPair, ephemeral: int, challenge: int) -> int:
        if check_challenge(challenge) == 0:
            return ephemeral
        return ephemeral * keypair.s % (keypair.p - 1)

    def verify_round(self, statement: ModExpStatement, commitment: int, challenge: int, response: int) -> bool:
        p = statement.p
        if not 1 <= commitment <= p - 1 or not is_unit(response, p):
            return False
        base = statement.u if check_challenge(challenge) == 0 else statement.x
        return mod_pow(base, response, p) == commitment

    def extract(self, statement: ModExpStatement, commitment, response0: int, response1: int) -> int:
        m = statement.p - 1
        try:
            t_inv = pow(response0, -1, m)
        except ValueError:
            raise NonInvertibleResponse(f"{response0} has no inverse mod {m}") from None
        return response1 * t_inv % m

    def simulate(self, statement: ModExpStatement, challenge: int, rng: random.Random):
        w = random_unit(statement.p, rng)
        base = statement.u if check_challenge(challenge) == 0 else statement.x
        return mod_pow(base, w, statement.p), w

    def is_witness(self, statement: ModExpStatement, witness) -> bool:
        return (
            isinstance(witness, int)
            and is_unit(witness, statement.p)
            and mod_pow(statement.x, witness, statement.p) == statement.u
        )

    def encode_statement(self, statement: ModExpStatement) -> bytes:
        w = int_width(statement.p)
        return pack_fields(pack_int(statement.p, w), pack_int(statement.x, w), pack_int(statement.u, w))

    def decode_statement(self, data: bytes) -> ModExpStatement:
        pb, xb, ub = unpack_fields(data, 3)
        p = int.from_bytes(pb, "big")
        if p < 3 or len(pb) != int_width(p) or not is_prime(p):
            raise DecodeError("modulus is not a canonically encoded odd prime")
        x, u = unpack_int(xb, len(pb)), unpack_int(ub, len(pb))
        if not (2 <= x <= p - 1 and 1 <= u <= p - 1):
            raise DecodeError("base or public element out of range")
        return ModExpStatement(p, x, u)

    def encode_commitment(self, statement: ModExpStatement, commitment: int) -> bytes:
        return pack_int(commitment, int_width(statement.p))

    def decode_commitment(self, statement: ModExpStatement, data: bytes) -> int:
        return unpack_int(data, int_width(statement.p))

    def encode_response(self, statement: ModExpStatement, response: int) -> bytes:
        return pack_int(response, int_width(statement.p))

    def decode_response(self, statement: ModExpStatement, challenge: int, data: bytes) -> int:
        return unpack_int(data, int_width(statement.p))
