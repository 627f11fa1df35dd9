"""
Counter-based splitting of a master seed into independent RNG streams.

Every stream is keyed by (master seed, purpose, index...), so a stream's
draws never depend on how many other streams exist or in which order
workers consume them.
"""

import numpy as np

# Purpose tags keep streams for different jobs apart.
REPLICA = 1
INIT = 2
VARIATION = 3
TRANSFER = 4
BASELINE = 5
SIMILARITY = 6
EXPERIMENT = 7
GENERATOR = 8


def seed_sequence(master: int, *key: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(master, spawn_key=tuple(int(k) for k in key))


def stream(master: int, *key: int) -> np.random.Generator:
    """Independent generator for (master, key...)."""
    return np.random.default_rng(seed_sequence(master, *key))


def derive_seed(master: int, *key: int) -> int:
    """A 63-bit integer seed for (master, key...), recorded in reports for replay."""
    state = seed_sequence(master, *key).generate_state(2, dtype=np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1]))
