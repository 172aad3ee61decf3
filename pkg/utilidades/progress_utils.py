"""
Status lines and progress bars for long-running pipeline steps.

Everything goes to stderr (through ``tqdm.write`` so bars and messages do not overlap);
stdout is reserved for primary results.
"""

__all__ = ['ProgressIndicator', 'log_status', 'log_step', 'track']

import sys
from typing import Iterable, Iterator, Optional, TypeVar
from tqdm import tqdm

T = TypeVar('T')

_BAR_FORMAT = '{desc}: {percentage:3.0f}%|{bar}| {n_fmt}/{total_fmt}'


def log_status(message: str, quiet: bool = False) -> None:
    """Print a status line on stderr unless quiet."""
    if not quiet:
        tqdm.write(message, file=sys.stderr)


def log_step(step: int, total_steps: int, name: str, quiet: bool = False) -> None:
    """Print the '📍 STEP i/n' banner used between pipeline stages."""
    if quiet:
        return
    log_status("\n" + "-" * 50)
    log_status(f"📍 STEP {step}/{total_steps}: {name.replace('_', ' ').strip().title()}")
    log_status("-" * 50)


def track(iterable: Iterable[T], message: str, total: Optional[int] = None, quiet: bool = False) -> Iterator[T]:
    """Wrap an iterable in a stderr progress bar."""
    return tqdm(iterable, desc=message, total=total, disable=quiet,
                file=sys.stderr, bar_format=_BAR_FORMAT, leave=False)


class ProgressIndicator:
    """
    A context manager showing a progress bar for work whose steps complete out of order
    (e.g. futures finishing in a thread pool).
    """
    def __init__(self, message: str = "Processing...", total_steps: int = None, quiet: bool = False):
        """
        Initialize the progress indicator.

        Args:
            message (str): Bar description. Defaults to "Processing..."
            total_steps (int): Total steps for the bar.
            quiet (bool): Disable the bar entirely.
        """
        if total_steps is None:
            raise ValueError("total_steps must be provided for the progress bar")
        self.message = message
        self.total_steps = total_steps
        self.quiet = quiet
        self.progress_bar = None

    def update_progress(self, steps: int = 1):
        """
        Update the progress bar by the specified number of steps.

        Args:
            steps (int): Number of steps to increment. Defaults to 1
        """
        if self.progress_bar:
            self.progress_bar.update(steps)

    def __enter__(self):
        """Start the progress indicator when entering the context."""
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Stop the progress indicator when exiting the context."""
        self.stop()

    def start(self):
        self.progress_bar = tqdm(
            total=self.total_steps,
            desc=self.message,
            disable=self.quiet,
            file=sys.stderr,
            bar_format=_BAR_FORMAT,
            leave=False,
        )

    def stop(self):
        if self.progress_bar:
            self.progress_bar.close()
            self.progress_bar = None
