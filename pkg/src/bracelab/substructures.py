"""Distinguished substructures of a skew brace: sub-braces, ideals, socle,
annihilator, lattices, radical, idealizer."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional

from .brace import SkewBrace, brace_closure_mask
from .errors import BudgetExceeded, NoUniqueMaximum, NotASubBrace
from .subsets import Subset

DEFAULT_LATTICE_BUDGET = 48


def _lattice_budget() -> int:
    env = os.environ.get("BRACELAB_BUDGET")
    return int(env) if env else DEFAULT_LATTICE_BUDGET


# ---------------------------------------------------------------------------
# Closures


def additive_closure(b: SkewBrace, elements: Iterable[int]) -> int:
    """Mask of the additive subgroup generated by elements (and 0)."""
    mask = 1
    members = [0]
    for e in elements:
        if not mask >> e & 1:
            mask |= 1 << e
            members.append(e)
    add_t = b.add.table
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            for c in list(members):
                for d in (add_t[a][c], add_t[c][a]):
                    if not mask >> d & 1:
                        mask |= 1 << d
                        members.append(d)
                        nxt.append(d)
        frontier = nxt
    return mask


def subbrace_closure(b: SkewBrace, seed: Subset) -> Subset:
    """Smallest subset containing seed and 0 closed under + and o."""
    return Subset(b.n, brace_closure_mask(b, seed.mask))


def is_subbrace(b: SkewBrace, s: Subset) -> bool:
    if not s.mask:
        return False
    members = s.indices()
    add_t, mul_t = b.add.table, b.mul.table
    m = s.mask
    return all(
        m >> add_t[a][c] & 1 and m >> mul_t[a][c] & 1 for a in members for c in members
    )


# ---------------------------------------------------------------------------
# Ideals


@dataclass(frozen=True)
class IdealVerdict:
    ok: bool
    condition: Optional[str] = None
    witness: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def is_ideal(b: SkewBrace, i: Subset) -> IdealVerdict:
    """Additive subgroup, lambda-invariant, normal for + and for o.

    A failing verdict names the first violated condition and a witness pair.
    """
    m = i.mask
    if not m >> 0 & 1:
        return IdealVerdict(False, "additive_subgroup", (0, 0))
    members = i.indices()
    add_t, mul_t = b.add.table, b.mul.table
    for a in members:
        for c in members:
            if not m >> add_t[a][c] & 1:
                return IdealVerdict(False, "additive_subgroup", (a, c))
    lam = b.lam
    for a in range(b.n):
        for x in members:
            if not m >> lam[a][x] & 1:
                return IdealVerdict(False, "lambda_invariant", (a, x))
    neg, minv = b.add.inv, b.mul.inv
    for a in range(b.n):
        for x in members:
            if not m >> add_t[add_t[a][x]][neg[a]] & 1:
                return IdealVerdict(False, "add_normal", (a, x))
    for a in range(b.n):
        for x in members:
            if not m >> mul_t[mul_t[a][x]][minv[a]] & 1:
                return IdealVerdict(False, "mul_normal", (a, x))
    return IdealVerdict(True)


def is_left_ideal(b: SkewBrace, i: Subset) -> bool:
    """Additive subgroup closed under every lambda_a."""
    m = i.mask
    if not m >> 0 & 1:
        return False
    members = i.indices()
    add_t, lam = b.add.table, b.lam
    if not all(m >> add_t[a][c] & 1 for a in members for c in members):
        return False
    return all(m >> lam[a][x] & 1 for a in range(b.n) for x in members)


def ideal_generated(b: SkewBrace, seed: Subset) -> Subset:
    """Least ideal containing seed: fixpoint of additive closure, lambda
    images, and conjugates under both operations."""
    mask = additive_closure(b, seed.indices())
    add_t, mul_t, lam = b.add.table, b.mul.table, b.lam
    neg, minv = b.add.inv, b.mul.inv
    while True:
        new = 0
        members = [x for x in range(b.n) if mask >> x & 1]
        for a in range(b.n):
            for x in members:
                for y in (
                    lam[a][x],
                    add_t[add_t[a][x]][neg[a]],
                    mul_t[mul_t[a][x]][minv[a]],
                ):
                    if not mask >> y & 1:
                        new |= 1 << y
        if not new:
            return Subset(b.n, mask)
        mask = additive_closure(b, [x for x in range(b.n) if (mask | new) >> x & 1])


# ---------------------------------------------------------------------------
# Star products and commutators of subsets


def star_sets(b: SkewBrace, xs: Subset, ys: Subset) -> Subset:
    """Additive subgroup generated by {x*y : x in X, y in Y}."""
    star = b.star
    products = {star[x][y] for x in xs.indices() for y in ys.indices()}
    return Subset(b.n, additive_closure(b, products))


def commutator(b: SkewBrace, xs: Subset, ys: Subset, op: str) -> Subset:
    """Subgroup of (B,+) or (B,o) generated by pairwise commutators."""
    if op == "+":
        comms = {b.add_comm(x, y) for x in xs.indices() for y in ys.indices()}
        return Subset(b.n, additive_closure(b, comms))
    if op == "o":
        comms = {b.mul_comm(x, y) for x in xs.indices() for y in ys.indices()}
        return Subset(b.n, _mul_closure(b, comms))
    raise ValueError(f"op must be '+' or 'o', got {op!r}")


def _mul_closure(b: SkewBrace, elements: Iterable[int]) -> int:
    mask = 1
    members = [0]
    for e in elements:
        if not mask >> e & 1:
            mask |= 1 << e
            members.append(e)
    mul_t = b.mul.table
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            for c in list(members):
                for d in (mul_t[a][c], mul_t[c][a]):
                    if not mask >> d & 1:
                        mask |= 1 << d
                        members.append(d)
                        nxt.append(d)
        frontier = nxt
    return mask


# ---------------------------------------------------------------------------
# Invariant substructures


@dataclass(frozen=True)
class InvariantSubstructures:
    z_add: Subset
    z_mul: Subset
    ker_lambda: Subset
    fix: Subset
    soc: Subset
    ann: Subset


def invariant_substructures(b: SkewBrace) -> InvariantSubstructures:
    """Centers, Ker lambda, Fix, Soc = Ker lambda meet Z(B,+), Ann = Soc meet Fix.

    Ann is recomputed from its elementwise characterization
    {x : x o a = a o x = x + a = a + x for all a}; both must agree.
    """
    n = b.n
    add_t, mul_t, lam = b.add.table, b.mul.table, b.lam
    ident = tuple(range(n))
    z_add = Subset.of(
        n, (a for a in range(n) if all(add_t[a][c] == add_t[c][a] for c in range(n)))
    )
    z_mul = Subset.of(
        n, (a for a in range(n) if all(mul_t[a][c] == mul_t[c][a] for c in range(n)))
    )
    ker = Subset.of(n, (a for a in range(n) if lam[a] == ident))
    fix = Subset.of(
        n, (x for x in range(n) if all(lam[a][x] == x for a in range(n)))
    )
    soc = ker & z_add
    ann = soc & fix
    ann_direct = Subset.of(
        n,
        (
            x
            for x in range(n)
            if all(
                mul_t[x][a] == mul_t[a][x] == add_t[x][a] == add_t[a][x]
                for a in range(n)
            )
        ),
    )
    assert ann == ann_direct, "annihilator characterizations disagree"
    return InvariantSubstructures(z_add, z_mul, ker, fix, soc, ann)


# ---------------------------------------------------------------------------
# Lattice of sub skew braces, radical, idealizer


def subbrace_lattice(b: SkewBrace) -> list[Subset]:
    """All sub skew braces: closures of singletons, then pairwise joins to a
    fixpoint. Exponential in the worst case; guarded by the carrier budget."""
    budget = _lattice_budget()
    if b.n > budget:
        raise BudgetExceeded("sub-brace lattice carrier", b.n, budget)
    found: set[int] = {1}
    for x in range(b.n):
        found.add(brace_closure_mask(b, 1 << x))
    while True:
        new: set[int] = set()
        items = sorted(found)
        for i, m1 in enumerate(items):
            for m2 in items[i + 1 :]:
                join = m1 | m2
                if join in found:
                    continue
                closed = brace_closure_mask(b, join)
                if closed not in found:
                    new.add(closed)
        if not new:
            break
        found |= new
    return [Subset(b.n, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]


def maximal_subbraces(b: SkewBrace, lattice: Optional[list[Subset]] = None) -> list[Subset]:
    """Maximal proper sub skew braces."""
    lattice = subbrace_lattice(b) if lattice is None else lattice
    proper = [s for s in lattice if not s.is_full()]
    return [s for s in proper if not any(s < t for t in proper)]


def ideals_of(b: SkewBrace, lattice: Optional[list[Subset]] = None) -> list[Subset]:
    lattice = subbrace_lattice(b) if lattice is None else lattice
    return [s for s in lattice if is_ideal(b, s)]


def maximal_ideals(b: SkewBrace, lattice: Optional[list[Subset]] = None) -> list[Subset]:
    ideals = ideals_of(b, lattice)
    proper = [s for s in ideals if not s.is_full()]
    return [s for s in proper if not any(s < t for t in proper)]


def radical(b: SkewBrace, lattice: Optional[list[Subset]] = None) -> Subset:
    """Intersection of all maximal ideals; the whole brace when none exist."""
    maxima = maximal_ideals(b, lattice)
    if not maxima:
        return Subset.full(b.n)
    out = Subset.full(b.n)
    for m in maxima:
        out = out & m
    return out


def is_ideal_in(b: SkewBrace, h: Subset, n_sub: Subset) -> bool:
    """Whether h is an ideal of the sub skew brace on n_sub."""
    if not h <= n_sub:
        return False
    hm = h.mask
    members = h.indices()
    ambient = n_sub.indices()
    add_t, mul_t, lam = b.add.table, b.mul.table, b.lam
    neg, minv = b.add.inv, b.mul.inv
    if not all(hm >> add_t[a][c] & 1 for a in members for c in members):
        return False
    for a in ambient:
        for x in members:
            if not hm >> lam[a][x] & 1:
                return False
            if not hm >> add_t[add_t[a][x]][neg[a]] & 1:
                return False
            if not hm >> mul_t[mul_t[a][x]][minv[a]] & 1:
                return False
    return True


def idealizer(b: SkewBrace, h: Subset, lattice: Optional[list[Subset]] = None) -> Subset:
    """Largest sub skew brace in which h is an ideal.

    Computed by filtering the sub-brace lattice; elementwise conditions would
    not give a closed candidate set. Raises NoUniqueMaximum if the candidates
    have incomparable maxima (a definitional edge case worth surfacing).
    """
    if not is_subbrace(b, h):
        raise NotASubBrace(f"{h.indices()} is not a sub skew brace")
    lattice = subbrace_lattice(b) if lattice is None else lattice
    candidates = [s for s in lattice if h <= s and is_ideal_in(b, h, s)]
    maxima = [s for s in candidates if not any(s < t for t in candidates)]
    if len(maxima) != 1:
        raise NoUniqueMaximum(
            f"idealizer candidates have {len(maxima)} incomparable maxima"
        )
    return maxima[0]


def subideal_chain(
    b: SkewBrace, a: Subset, lattice: Optional[list[Subset]] = None
) -> Optional[list[Subset]]:
    """Chain A = H_1 <= ... <= H_k = B with H_i an ideal of H_{i+1}, built by
    iterated idealizers; None if the idealizer stops growing early."""
    lattice = subbrace_lattice(b) if lattice is None else lattice
    chain = [a]
    while not chain[-1].is_full():
        nxt = idealizer(b, chain[-1], lattice)
        if nxt == chain[-1]:
            return None
        chain.append(nxt)
    return chain


# ---------------------------------------------------------------------------
# Lambda orbits and generation


def lambda_orbits(b: SkewBrace) -> list[list[int]]:
    """Orbits of the lambda-image group acting on the carrier."""
    assigned = [False] * b.n
    orbits: list[list[int]] = []
    for x in range(b.n):
        if assigned[x]:
            continue
        orbit = sorted({b.lam[a][x] for a in range(b.n)})
        for y in orbit:
            assigned[y] = True
        orbits.append(orbit)
    return orbits


def generates(b: SkewBrace, s: Subset) -> bool:
    return subbrace_closure(b, s).is_full()
