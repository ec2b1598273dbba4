"""Shared exception hierarchy.

Library code raises; the report pipelines catch HopfForgeError, record the
failure in the report, and map it to the verification-failure exit code.
Anything not under HopfForgeError is a genuine bug and escapes as such.
"""


class HopfForgeError(Exception):
    """Base class for every definition, structure, or verification error."""


class DefinitionError(HopfForgeError):
    """A definition file is malformed or inconsistent."""


class StructureError(HopfForgeError):
    """Algebraic structure data violates its axioms (with a witness)."""


class CheckFailure(HopfForgeError):
    """A named verification check failed."""

    def __init__(self, check: str, message: str):
        self.check = check
        super().__init__("%s: %s" % (check, message))


class NotFaithful(HopfForgeError):
    """A functional required to be faithful has singular Gram data."""
