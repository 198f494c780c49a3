"""Permutations of 0..n-1 as image tuples."""

from __future__ import annotations

from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_perm(p: Sequence[int], n: int | None = None) -> bool:
    if n is not None and len(p) != n:
        return False
    return sorted(p) == list(range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """p after q: (p.q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(q)))


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    out = list(range(n))
    for cyc in cycles:
        for i, v in enumerate(cyc):
            out[v] = cyc[(i + 1) % len(cyc)]
    return tuple(out)


def perm_order(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = _lcm(order, length)
    return order


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def all_perms(n: int) -> list[Perm]:
    from itertools import permutations

    return [tuple(p) for p in permutations(range(n))]
