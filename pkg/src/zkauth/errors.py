"""Exception hierarchy shared by every layer of the toolkit."""


class ZKAuthError(Exception):
    """Base class for all toolkit errors."""


# parameters and combinatorics

class BadParameters(ZKAuthError, ValueError):
    pass


class SizeMismatch(ZKAuthError, ValueError):
    pass


class CoverageMismatch(ZKAuthError, ValueError):
    pass


class IndexOutOfRange(ZKAuthError, ValueError):
    pass


class DuplicateIndex(ZKAuthError, ValueError):
    pass


class TooSmall(BadParameters):
    pass


class TooLarge(BadParameters):
    pass


class NotPrime(BadParameters):
    pass


class BadModulus(BadParameters):
    pass


class DecodeError(ZKAuthError, ValueError):
    """Bytes do not form a canonical encoding of the expected object."""


# protocol engine

class InvalidKeyPair(ZKAuthError):
    pass


class MalformedTranscript(ZKAuthError):
    pass


class UnsupportedChallenge(ZKAuthError, ValueError):
    pass


class NotBothAccepting(ZKAuthError):
    pass


class NonInvertibleResponse(ZKAuthError):
    pass


class ExtractionFailed(ZKAuthError):
    """Both responses verify but do not combine into a witness."""


# wire

class WireError(ZKAuthError):
    pass


class Truncated(WireError):
    pass


class UnknownTag(WireError):
    pass


class MalformedFrame(WireError):
    pass


class InvalidChallengeByte(MalformedFrame):
    pass


class PayloadTooLarge(WireError):
    pass


class ProtocolViolation(WireError):
    pass


class Timeout(WireError):
    pass


class TransportClosed(WireError):
    pass


class StatementMismatch(ProtocolViolation):
    pass
