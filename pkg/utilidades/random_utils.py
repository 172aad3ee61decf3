"""
Sub-seed derivation.

All randomness flows from one integer seed. Independent streams are derived with a counter
scheme: ``derive_seed(seed, *counters)`` hashes the seed together with the counters through
``numpy.random.SeedSequence``, so stream (seed, 3) never depends on how many numbers stream
(seed, 2) consumed. Counters in use:

- ``(seed, i)``: tree ``i`` of a random forest (a lone decision tree uses ``i = 0``)
- ``(seed, class_index, i)``: segment ``i`` of class ``class_index`` in the synthetic corpus
- ``seed`` itself: splits, folds and neural network initialisation/shuffling
"""

__all__ = ['derive_seed', 'make_rng']

import numpy as np


def derive_seed(seed: int, *counters: int) -> int:
    """Returns a 32-bit seed for the stream identified by ``counters`` under ``seed``."""
    sequence = np.random.SeedSequence([int(seed), *[int(c) for c in counters]])
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def make_rng(seed: int, *counters: int) -> np.random.Generator:
    if not counters:
        return np.random.default_rng(int(seed))
    return np.random.default_rng(derive_seed(seed, *counters))
