"""Subset-sum feasibility kernels for integer weight constraints.

A plain Python int serves as a bitset over achievable sums: bit ``s`` is set
iff some subset of the weights sums to ``s``.  All sums are truncated at the
budget, which keeps the bitsets small for desk-scale weights.
"""

from __future__ import annotations

from collections.abc import Sequence


def reachable_sums(weights: Sequence[int], limit: int) -> int:
    """Bitset of all subset sums of ``weights`` that do not exceed ``limit``."""
    if limit < 0:
        return 0
    cap = (1 << (limit + 1)) - 1
    reach = 1
    for w in weights:
        w = int(w)
        if 0 < w <= limit:
            reach |= (reach << w) & cap
    return reach


def is_feasible(weights: Sequence[int], budget: int) -> bool:
    """True iff some subset of ``weights`` sums exactly to ``budget``."""
    if budget < 0:
        return False
    return bool((reachable_sums(weights, budget) >> budget) & 1)


def suffix_reachable(weights: Sequence[int], limit: int) -> list[int]:
    """``out[i]`` = bitset of sums over ``weights[i:]``, truncated at ``limit``.

    ``out[len(weights)]`` is the empty-selection bitset (just bit 0).
    """
    n = len(weights)
    cap = (1 << (max(limit, 0) + 1)) - 1
    out = [0] * (n + 1)
    out[n] = 1
    for i in range(n - 1, -1, -1):
        w = int(weights[i])
        reach = out[i + 1]
        if 0 < w <= limit:
            reach |= (reach << w) & cap
        out[i] = reach
    return out


def lexmin_feasible(weights: Sequence[int], budget: int) -> int:
    """Basis index of the lexicographically smallest feasible bitstring.

    The order reads the bits x_0 x_1 ... x_{n-1} left to right and prefers
    x_i = 0 at ascending index.  Bit i of the returned index is x_i.

    Raises ValueError if no subset of ``weights`` sums to ``budget``.
    """
    n = len(weights)
    suffix = suffix_reachable(weights, budget)
    if budget < 0 or not (suffix[0] >> budget) & 1:
        raise ValueError(f"no bitstring satisfies the weight constraint (budget {budget})")
    z = 0
    remaining = budget
    for i in range(n):
        if (suffix[i + 1] >> remaining) & 1:
            continue
        z |= 1 << i
        remaining -= int(weights[i])
    return z
