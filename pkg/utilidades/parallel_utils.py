"""
Bounded, order-preserving parallel map used for feature extraction, per-feature scoring,
forest trees, folds and sweep cells.
"""

__all__ = ['map_ordered']

import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import Callable, List, Sequence, TypeVar

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from utilidades.env_utils import EnvUtils
from utilidades.progress_utils import ProgressIndicator

T = TypeVar('T')
R = TypeVar('R')


def map_ordered(func: Callable[[T], R], items: Sequence[T], threads: int = 1,
                message: str = "Processing...", quiet: bool = True) -> List[R]:
    """
    Apply ``func`` to every item, possibly concurrently, returning results in input order.

    Args:
        func (Callable): Pure function of one item.
        items (Sequence): Inputs.
        threads (int): Worker threads; 1 runs inline, 0 resolves automatically.
        message (str): Progress bar description.
        quiet (bool): Hide the progress bar.

    Returns:
        list: ``[func(item) for item in items]`` regardless of completion order.
    """
    items = list(items)
    workers = min(EnvUtils.resolve_threads(threads), max(len(items), 1))
    results: List[R] = [None] * len(items)

    with ProgressIndicator(message, total_steps=len(items), quiet=quiet) as progress:
        if workers <= 1:
            for i, item in enumerate(items):
                results[i] = func(item)
                progress.update_progress()
            return results

        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(func, item): i for i, item in enumerate(items)}
            for future in as_completed(futures):
                #re-raises the worker exception here
                results[futures[future]] = future.result()
                progress.update_progress()

    return results
