"""
Input validation utilities.
"""

import numbers
from typing import Any, Iterable, List

from ..core.exceptions import NodeIdError, SeedSetError


def _seed_id(seed: Any) -> int:
    if isinstance(seed, numbers.Integral):
        return int(seed)
    if isinstance(seed, numbers.Real):
        if not float(seed).is_integer():
            raise SeedSetError(f"non-integral seed {seed!r}")
        return int(seed)
    try:
        return int(seed)
    except (TypeError, ValueError) as e:
        raise SeedSetError(f"non-integer seed ({e})") from None


class SeedSetValidator:
    """Validator for seed sets."""

    @classmethod
    def validate(cls, seeds: Iterable[int], node_count: int) -> List[int]:
        """
        Validate that ``seeds`` are distinct node ids of a network.

        Args:
            seeds: Candidate seed ids
            node_count: |V| of the network

        Returns:
            Seeds as a list of Python ints, original order kept

        Raises:
            SeedSetError: If seeds repeat or are not integers; a float
                must be integral (2.0 passes, 1.7 does not)
            NodeIdError: If an id lies outside 0..|V|-1
        """
        ids = [_seed_id(s) for s in seeds]

        for s in ids:
            if not 0 <= s < node_count:
                raise NodeIdError(s, node_count)

        if len(set(ids)) != len(ids):
            raise SeedSetError("seeds must be distinct")

        return ids

    @classmethod
    def validate_size(cls, seeds: Iterable[int], node_count: int, k: int) -> List[int]:
        """Validate seeds and require exactly ``k`` of them."""
        ids = cls.validate(seeds, node_count)
        if len(ids) != k:
            raise SeedSetError(f"expected {k} seeds, got {len(ids)}")
        return ids
