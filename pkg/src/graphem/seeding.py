"""Deterministic seed derivation for parallel / ensemble jobs.

Per-job seeds are derived from a master seed and a job index with the
splitmix64 mixing function, so that jobs are reproducible independently of
execution order and worker count.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    """One splitmix64 output step for a 64-bit state."""
    z = (state + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(master_seed: int, index: int) -> int:
    """Seed for job `index` under `master_seed` (stable 64-bit mixing)."""
    if index < 0:
        raise ValueError("job index must be non-negative")
    return splitmix64((master_seed & _MASK64) ^ splitmix64(index))
