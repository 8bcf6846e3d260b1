"""Exception hierarchy.

UsageError subclasses signal caller mistakes (CLI exit code 1); DataError
subclasses signal malformed inputs or out-of-contract data (exit code 2).
"""


class SisaError(Exception):
    pass


class UsageError(SisaError):
    pass


class VariantError(UsageError):
    """Set-operation variant not applicable to the operand representations."""


class UniverseError(UsageError):
    """Operands live in different universes, or an element is out of range."""


class DataError(SisaError):
    pass


class GraphFormatError(DataError):
    pass


class EncodingError(DataError):
    """Instruction field overflow or an undecodable word."""


class TraceFormatError(DataError):
    pass


class OracleSizeError(DataError):
    """Graph too large for brute-force enumeration."""
