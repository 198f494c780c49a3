"""Finite groups as Cayley tables over carrier 0..n-1 with identity 0."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import permutations
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, NoIdentity, NotAssociative, NotLatin
from .perms import Perm, compose, invert

# Exhaustive triple validation keeps indices in one byte.
MAX_CARRIER = 255


@dataclass(frozen=True)
class GroupTable:
    """A finite group: n x n Cayley table, identity at index 0."""

    n: int
    table: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.order_of(a) for a in range(self.n))

    def exponent(self) -> int:
        return reduce(lambda x, y: x * y // gcd(x, y), self.element_orders(), 1)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(self.n))

    def is_cyclic(self) -> bool:
        return any(self.order_of(a) == self.n for a in range(self.n))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv[a], -k)
        x = 0
        for _ in range(k):
            x = self.table[x][a]
        return x

    def conjugate(self, a: int, b: int) -> int:
        """a b a^-1."""
        return self.table[self.table[a][b]][self.inv[a]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1."""
        return self.table[self.conjugate(a, b)][self.inv[b]]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)


def verify_group(table: Sequence[Sequence[int]]) -> tuple[GroupTable, Perm]:
    """Validate a Cayley table; relabel the identity to index 0 if needed.

    Returns (group, relabeling) where relabeling[old] = new index. Raises
    NotLatin / NoIdentity / NotAssociative with the first violating witness.
    """
    n = len(table)
    if n == 0:
        raise NoIdentity("empty table")
    if n > MAX_CARRIER:
        raise BudgetExceeded("carrier size for exhaustive validation", n, MAX_CARRIER)
    t = np.asarray(table, dtype=np.int64)
    if t.shape != (n, n):
        raise ValueError(f"table must be square, got shape {t.shape}")
    if t.min() < 0 or t.max() >= n:
        raise ValueError("table entries must lie in 0..n-1")

    _check_latin(t)

    rng = np.arange(n)
    ident = [e for e in range(n) if np.array_equal(t[e], rng) and np.array_equal(t[:, e], rng)]
    if not ident:
        raise NoIdentity("no two-sided identity element")
    e = ident[0]
    relabel = tuple(range(n))
    if e != 0:
        swap = list(range(n))
        swap[0], swap[e] = e, 0
        relabel = tuple(swap)
        t = _relabel_table(t, relabel)

    # (a*b)*c == a*(b*c) on all triples.
    lhs = t[t, :]
    rhs = t[:, t]
    if not np.array_equal(lhs, rhs):
        a, b, c = np.argwhere(lhs != rhs)[0]
        raise NotAssociative(int(a), int(b), int(c))

    inv = np.empty(n, dtype=np.int64)
    rows, cols = np.nonzero(t == 0)
    inv[rows] = cols
    rows_t = tuple(tuple(int(x) for x in row) for row in t)
    return GroupTable(n, rows_t, tuple(int(x) for x in inv)), relabel


def _check_latin(t: np.ndarray) -> None:
    n = t.shape[0]
    for axis, mats in (("row", t), ("column", t.T)):
        for i in range(n):
            seen: dict[int, int] = {}
            for j, v in enumerate(mats[i]):
                v = int(v)
                if v in seen:
                    raise NotLatin(axis, i, seen[v], j, v)
                seen[v] = j


def _relabel_table(t: np.ndarray, relabel: Perm) -> np.ndarray:
    n = t.shape[0]
    old_of_new = invert(relabel)
    out = np.empty_like(t)
    for a in range(n):
        for b in range(n):
            out[a][b] = relabel[t[old_of_new[a]][old_of_new[b]]]
    return out


def relabeled(g: GroupTable, relabel: Perm) -> GroupTable:
    """Transport the group structure along a carrier bijection fixing 0."""
    if relabel[0] != 0:
        raise ValueError("relabeling must fix the identity")
    t = _relabel_table(g.as_array(), relabel)
    out, back = verify_group(t)
    assert back == tuple(range(g.n))
    return out


# ---------------------------------------------------------------------------
# Constructors


def cyclic(n: int) -> GroupTable:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return verify_group(table)[0]


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    n = g.n * h.n
    table = [[0] * n for _ in range(n)]
    for a1 in range(g.n):
        for a2 in range(h.n):
            for b1 in range(g.n):
                for b2 in range(h.n):
                    table[a1 * h.n + a2][b1 * h.n + b2] = (
                        g.table[a1][b1] * h.n + h.table[a2][b2]
                    )
    return verify_group(table)[0]


def from_permutations(perms: list[Perm]) -> GroupTable:
    """Cayley table of a permutation list closed under composition."""
    index = {p: i for i, p in enumerate(perms)}
    if len(index) != len(perms):
        raise ValueError("duplicate permutations")
    table = [[index[compose(p, q)] for q in perms] for p in perms]
    out, relabel = verify_group(table)
    if relabel != tuple(range(len(perms))):
        raise ValueError("identity permutation must come first")
    return out

def symmetric(k: int) -> GroupTable:
    perms = sorted(tuple(p) for p in permutations(range(k)))
    return from_permutations(perms)


def dihedral(k: int) -> GroupTable:
    """Dihedral group of order 2k: (i, s) with i mod k, s in {0,1}."""
    n = 2 * k
    table = [[0] * n for _ in range(n)]
    for i in range(k):
        for s in (0, 1):
            for j in range(k):
                for u in (0, 1):
                    # (i, s)(j, u) = (i + j if s == 0 else i - j, s xor u)
                    m = (i + j) % k if s == 0 else (i - j) % k
                    table[s * k + i][u * k + j] = (s ^ u) * k + m
    return verify_group(table)[0]


def quaternion8() -> GroupTable:
    # 0..7 = 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    mul = {}
    sign = lambda s: 1 if not s.startswith("-") else -1
    base = lambda s: s.lstrip("-")
    rules = {
        ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
        ("i", "1"): "i", ("j", "1"): "j", ("k", "1"): "k",
        ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
        ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
    }
    def product(x: str, y: str) -> str:
        s = sign(x) * sign(y)
        r = rules[(base(x), base(y))]
        s *= sign(r)
        r = base(r)
        return r if s == 1 else "-" + r
    idx = {s: i for i, s in enumerate(names)}
    table = [[idx[product(x, y)] for y in names] for x in names]
    return verify_group(table)[0]


def opposite(g: GroupTable) -> GroupTable:
    table = [[g.table[b][a] for b in range(g.n)] for a in range(g.n)]
    return verify_group(table)[0]


# ---------------------------------------------------------------------------
# Subgroup machinery (subgroups as frozensets of indices)


def subgroup_closure(g: GroupTable, seed) -> frozenset[int]:
    """Subgroup generated by seed (closure under the operation suffices on
    finite carriers)."""
    members = {0} | set(seed)
    frontier = list(members)
    table = g.table
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(members):
                for c in (table[a][b], table[b][a]):
                    if c not in members:
                        members.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(members)


def generated_subgroup_from_products(g: GroupTable, elements) -> frozenset[int]:
    return subgroup_closure(g, elements)


def commutator_subgroup(g: GroupTable, xs, ys) -> frozenset[int]:
    comms = {g.commutator(x, y) for x in xs for y in ys}
    return subgroup_closure(g, comms)


def center(g: GroupTable) -> frozenset[int]:
    t = g.table
    return frozenset(
        a for a in range(g.n) if all(t[a][b] == t[b][a] for b in range(g.n))
    )


def is_normal(g: GroupTable, members) -> bool:
    mset = set(members)
    return all(g.conjugate(a, m) in mset for a in range(g.n) for m in mset)


def lower_central_series(g: GroupTable) -> list[frozenset[int]]:
    """gamma_1 = G, gamma_{k+1} = [G, gamma_k]; cut at first repetition."""
    full = frozenset(range(g.n))
    chain = [full if g.n > 1 else frozenset({0})]
    while True:
        nxt = commutator_subgroup(g, range(g.n), chain[-1])
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def nilpotency_class(g: GroupTable) -> Optional[int]:
    """Class c with gamma_{c+1} = 1, or None if not nilpotent."""
    chain = lower_central_series(g)
    if chain[-1] != frozenset({0}):
        return None
    return len(chain) - 1 if chain[0] != frozenset({0}) else 0


def is_nilpotent(g: GroupTable) -> bool:
    return nilpotency_class(g) is not None


def upper_central_series(g: GroupTable) -> list[frozenset[int]]:
    """Z_0 = 1, Z_{k+1} = {x : [x,a] in Z_k for all a}; cut at repetition."""
    chain = [frozenset({0})]
    while True:
        prev = chain[-1]
        nxt = frozenset(
            x
            for x in range(g.n)
            if all(g.commutator(x, a) in prev for a in range(g.n))
        )
        if nxt == prev:
            return chain
        chain.append(nxt)


# ---------------------------------------------------------------------------
# Isomorphism testing


def minimal_generating_sequence(g: GroupTable) -> list[int]:
    gens: list[int] = []
    reached = frozenset({0})
    while len(reached) < g.n:
        nxt = min(a for a in range(g.n) if a not in reached)
        gens.append(nxt)
        reached = subgroup_closure(g, gens)
    return gens


def _expression_plan(g: GroupTable, gens: list[int]) -> list[tuple[int, int, int]]:
    """Plan (target, a, b) with target = a*b deriving all elements from gens.

    Seeds are the identity and the generators; every other element appears
    exactly once as a target, with a and b already derived.
    """
    known = {0} | set(gens)
    plan: list[tuple[int, int, int]] = []
    frontier = sorted(known)
    table = g.table
    while len(known) < g.n:
        nxt = []
        for a in frontier:
            for b in sorted(known):
                for t, (x, y) in ((table[a][b], (a, b)), (table[b][a], (b, a))):
                    if t not in known:
                        known.add(t)
                        plan.append((t, x, y))
                        nxt.append(t)
        if not nxt:
            raise ValueError("generators do not generate the group")
        frontier = nxt
    return plan


def _order_classes(g: GroupTable) -> dict[int, list[int]]:
    classes: dict[int, list[int]] = {}
    for a in range(g.n):
        classes.setdefault(g.order_of(a), []).append(a)
    return classes


def isomorphic_groups(g1: GroupTable, g2: GroupTable) -> Optional[Perm]:
    """A bijection phi with phi(a*b) = phi(a)*phi(b), or None.

    Backtracks over images of a minimal generating sequence, pruning by
    element order; each full candidate map is verified on all pairs.
    """
    if g1.n != g2.n:
        return None
    if sorted(g1.element_orders()) != sorted(g2.element_orders()):
        return None
    gens = minimal_generating_sequence(g1)
    plan = _expression_plan(g1, gens)
    by_order = _order_classes(g2)
    t1, t2 = g1.table, g2.table

    def extend(k: int, phi: list[int], used: set[int]) -> Optional[Perm]:
        if k == len(gens):
            for target, a, b in plan:
                v = t2[phi[a]][phi[b]]
                phi[target] = v
            image = set(phi)
            if len(image) != g1.n:
                return None
            for a in range(g1.n):
                row1, prow = t1[a], phi[a]
                for b in range(g1.n):
                    if phi[row1[b]] != t2[prow][phi[b]]:
                        return None
            return tuple(phi)
        gen = gens[k]
        for cand in by_order.get(g1.order_of(gen), []):
            if cand in used:
                continue
            phi[gen] = cand
            res = extend(k + 1, phi, used | {cand})
            if res is not None:
                return res
        return None

    phi0 = [-1] * g1.n
    phi0[0] = 0
    return extend(0, phi0, {0})


def automorphism_group(g: GroupTable) -> tuple[list[Perm], int]:
    """Generating automorphisms of G and |Aut(G)|."""
    auts = all_automorphisms(g)
    # Greedy generating subset of the full automorphism list.
    gens: list[Perm] = []
    reached = {tuple(range(g.n))}
    for p in auts:
        if p in reached:
            continue
        gens.append(p)
        reached = _perm_closure(gens, g.n)
        if len(reached) == len(auts):
            break
    return gens, len(auts)


def _perm_closure(gens: list[Perm], n: int) -> set[Perm]:
    members = {tuple(range(n))}
    frontier = list(members)
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = compose(p, q)
                if r not in members:
                    members.add(r)
                    nxt.append(r)
        frontier = nxt
    return members


_AUTOMORPHISM_CACHE: dict[GroupTable, list[Perm]] = {}


def all_automorphisms(g: GroupTable) -> list[Perm]:
    """Every automorphism of G, by generator-image backtracking."""
    cached = _AUTOMORPHISM_CACHE.get(g)
    if cached is not None:
        return cached
    gens = minimal_generating_sequence(g)
    plan = _expression_plan(g, gens)
    by_order = _order_classes(g)
    t = g.table
    found: list[Perm] = []

    def extend(k: int, phi: list[int], used: set[int]) -> None:
        if k == len(gens):
            for target, a, b in plan:
                phi[target] = t[phi[a]][phi[b]]
            if len(set(phi)) != g.n:
                return
            for a in range(g.n):
                row, prow = t[a], phi[a]
                for b in range(g.n):
                    if phi[row[b]] != t[prow][phi[b]]:
                        return
            found.append(tuple(phi))
            return
        gen = gens[k]
        order = g.order_of(gen)
        for cand in by_order.get(order, []):
            if cand in used:
                continue
            phi[gen] = cand
            extend(k + 1, phi, used | {cand})

    if g.n == 1:
        out = [(0,)]
    else:
        phi0 = [-1] * g.n
        phi0[0] = 0
        extend(0, phi0, {0})
        out = sorted(found)
    _AUTOMORPHISM_CACHE[g] = out
    return out
