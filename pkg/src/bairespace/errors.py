"""Error classes shared by every module; each maps to a CLI exit code."""
from __future__ import annotations


class BaireError(Exception):
    exit_code = 1
    kind = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def as_json(self) -> dict:
        out = {"error": self.kind, "message": self.message}
        for k, v in self.details.items():
            out[k] = v if isinstance(v, (int, str, bool, list, type(None))) else repr(v)
        return out


class DomainError(BaireError):
    kind = "domain"


class FuelExhausted(BaireError):
    """A bounded search ran out before finding what it looked for.

    This never means the sought object does not exist.
    """

    exit_code = 2
    kind = "fuel-exhausted"


class ParseError(BaireError):
    exit_code = 3
    kind = "parse"


class PreconditionViolation(DomainError):
    kind = "precondition"
