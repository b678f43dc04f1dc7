"""Exception types shared across the toolkit."""


class ReferatError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(ReferatError):
    """Input bytes are not valid docjson / expected format."""


class EmptyDocument(ReferatError):
    """No usable content: zero blocks, or nothing left for the main part."""


class InvalidPosition(ReferatError):
    """Sentence position value outside the allowed {1, 3} set."""


class ComponentOutOfRange(ReferatError):
    """A word-weight component lies outside [0, 1]."""


class InvalidClipFactor(ReferatError):
    """Clip factor for redundancy penalties must be positive."""


class InvalidLimit(ReferatError):
    """Summary size limit is not a valid ratio or sentence count."""


class IoFailure(ReferatError):
    """Underlying file read/write failed."""


class SchemaMismatch(ReferatError):
    """Persisted trace file does not match the expected schema."""


class InvariantViolation(ReferatError):
    """Stored records are internally inconsistent (e.g. stale sums)."""


class ConfigError(ReferatError):
    """Pipeline configuration is invalid; message names the offending flag."""
