import logging
import os
from dataclasses import dataclass

logger = logging.getLogger(__name__)

THREADS_ENV = "MIOCP_THREADS"
_MAX_DEFAULT_THREADS = 8


@dataclass(frozen=True)
class Settings:

    threads: int = 1

    @classmethod
    def from_env(cls) -> "Settings":
        raw = os.environ.get(THREADS_ENV)
        if raw is None or raw.strip() == "":
            return cls(threads=min(os.cpu_count() or 1, _MAX_DEFAULT_THREADS))
        try:
            threads = int(raw)
        except ValueError:
            logger.warning("Settings: %s=%r is not an integer, using 1 thread",
                           THREADS_ENV, raw)
            return cls(threads=1)
        if threads < 1:
            logger.warning("Settings: %s=%d must be positive, using 1 thread",
                           THREADS_ENV, threads)
            return cls(threads=1)
        return cls(threads=threads)
