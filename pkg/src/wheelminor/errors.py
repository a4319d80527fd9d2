"""Exception types shared across the package."""


class InputError(ValueError):
    """A precondition on the arguments was violated."""


class ResourceError(RuntimeError):
    """A configured size or budget limit was exceeded."""


class SearchFailure(Exception):
    """A search below its guarantee threshold came up empty.

    ``stage`` names where the procedure gave up.
    """

    def __init__(self, stage: str, reason: str = ""):
        super().__init__(f"{stage}: {reason}" if reason else stage)
        self.stage = stage
        self.reason = reason


class TraceError(Exception):
    """Replaying a trace failed at ``step`` (-1 means the final claim)."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step
