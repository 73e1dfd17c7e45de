"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An argument or state violates a documented precondition."""


class PgmFormatError(ValueError):
    """A PGM byte stream cannot be parsed or is unsupported.

    ``code`` is a short machine-readable reason, e.g. "bad-magic",
    "truncated", "bad-maxval", "not-square".
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
