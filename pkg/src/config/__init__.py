from .settings import (
    DEFAULT_TOLERANCE,
    MAX_SUBSYSTEM_RANK,
    MAX_WORD_LENGTH_CAP,
    OutputFormat,
    RunConfig,
    Tolerance,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "MAX_SUBSYSTEM_RANK",
    "MAX_WORD_LENGTH_CAP",
    "OutputFormat",
    "RunConfig",
    "Tolerance",
]
