import os
import sys
from pathlib import Path
from dotenv import load_dotenv

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from utilidades.errors import ConfigError
from configs.storage_config import DEFAULT_THREADS


class EnvUtils:
    def __init__(self):
        load_dotenv() #load .env file

    @staticmethod
    def resolve_threads(threads: int) -> int:
        """
        Resolve the worker count behind the ``--threads`` flag.

        Args:
            threads (int): Requested threads. 0 means auto: ``BEEHIVE_THREADS`` from the
                environment when set, otherwise one per cpu.

        Returns:
            int: Number of worker threads, at least 1.

        Raises:
            ConfigError: If threads is negative or BEEHIVE_THREADS is not an integer.
        """
        if threads < 0:
            raise ConfigError(f"threads must be >= 0, got {threads}")
        if threads > 0:
            return threads

        env_threads = os.getenv('BEEHIVE_THREADS', DEFAULT_THREADS)
        if env_threads:
            try:
                value = int(env_threads)
            except ValueError:
                raise ConfigError(f"BEEHIVE_THREADS must be an integer, got {env_threads!r}")
            if value > 0:
                return value

        return os.cpu_count() or 1
