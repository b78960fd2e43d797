"""Exception types shared across the package."""


class MsarrError(Exception):
    """Base class for package errors."""


class GuardExceeded(MsarrError):
    """An enumeration size guard was exceeded (CLI exit code 3)."""


class RetryExhausted(MsarrError):
    """A randomized search loop ran out of retries (CLI exit code 4)."""


class VerificationError(MsarrError):
    """An asserted known fact failed to verify (CLI exit code 2)."""
