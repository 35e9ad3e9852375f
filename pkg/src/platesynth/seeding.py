"""Deterministic seed derivation for batched work.

Every batch operation derives one independent 64-bit seed per record from a
single master seed, so records can be produced in any order (or in parallel)
and still come out identical to a serial run.
"""

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(master_seed: int, index: int) -> int:
    """Derive the seed for record ``index`` of a batch keyed by ``master_seed``.

    Uses the SplitMix64 finalizer over ``master_seed + (index + 1) * golden``,
    which decorrelates consecutive indices. Output is a uniform-looking value
    in [0, 2**64).
    """
    z = (master_seed + (index + 1) * _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)
