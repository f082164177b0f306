"""
UniMorph Kit - Error Hierarchy
Every exception raised by the toolkit derives from UniMorphError and carries a
symbolic code that matches the diagnostic vocabulary used in reports.
"""


class UniMorphError(Exception):
    """Base class for toolkit errors."""

    code: str = "UniMorphError"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self) -> str:
        return f"{self.code}: {self.args[0]}"


class ResourceError(UniMorphError):
    """A data file (inventory, profile, table, inventory of classes) is malformed."""

    code = "ResourceError"
