"""Finite skew braces: two group tables on one carrier linked by the brace law."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import groups
from .errors import (
    BraceLawViolated,
    LambdaNotHomomorphism,
    NotABrace,
    NotAnIdeal,
)
from .groups import GroupTable, cyclic, opposite, verify_group
from .perms import Perm, invert
from .subsets import Subset


@dataclass(frozen=True)
class SkewBrace:
    """Validated skew brace with precomputed lambda and star tables.

    lam[a][b] = -a + a o b, star[a][b] = lam[a][b] - b. Both operations have
    their identity at index 0.
    """

    n: int
    add: GroupTable
    mul: GroupTable
    lam: tuple[tuple[int, ...], ...]
    lam_inv: tuple[tuple[int, ...], ...]
    star: tuple[tuple[int, ...], ...]

    def neg(self, a: int) -> int:
        return self.add.inv[a]

    def minv(self, a: int) -> int:
        return self.mul.inv[a]

    def add_(self, a: int, b: int) -> int:
        return self.add.table[a][b]

    def mul_(self, a: int, b: int) -> int:
        return self.mul.table[a][b]

    def lam_(self, a: int, b: int) -> int:
        return self.lam[a][b]

    def star_(self, a: int, b: int) -> int:
        return self.star[a][b]

    def add_comm(self, a: int, b: int) -> int:
        """[a,b]_+ = a + b - a - b."""
        t, neg = self.add.table, self.add.inv
        return t[t[t[a][b]][neg[a]]][neg[b]]

    def mul_comm(self, a: int, b: int) -> int:
        """[a,b]_o = a o b o a^-1 o b^-1."""
        t, inv = self.mul.table, self.mul.inv
        return t[t[t[a][b]][inv[a]]][inv[b]]


def verify_skew_brace(add: GroupTable, mul: GroupTable) -> SkewBrace:
    """Check the brace law on all triples and build the lambda/star caches."""
    if add.n != mul.n:
        raise NotABrace(f"carrier sizes differ: {add.n} != {mul.n}")
    n = add.n
    a_t = add.as_array()
    m_t = mul.as_array()
    neg = np.asarray(add.inv, dtype=np.int64)

    # a o (b + c) == a o b - a + a o c on all triples.
    lhs = m_t[:, a_t]
    x1 = a_t[m_t, neg[:, None]]
    rhs = a_t[x1[:, :, None], m_t[:, None, :]]
    if not np.array_equal(lhs, rhs):
        a, b, c = np.argwhere(lhs != rhs)[0]
        raise BraceLawViolated(int(a), int(b), int(c))

    lam = a_t[neg[:, None], m_t]
    rng = np.arange(n)
    # Forced by the brace law; a failure here is an internal inconsistency.
    if not np.array_equal(np.sort(lam, axis=1), np.broadcast_to(rng, (n, n))):
        raise LambdaNotHomomorphism(int(np.argwhere(np.sort(lam, axis=1) != rng)[0][0]), -1)
    hom_lhs = lam[:, a_t]
    hom_rhs = a_t[lam[:, :, None], lam[:, None, :]]
    if not np.array_equal(hom_lhs, hom_rhs):
        a, b, _ = np.argwhere(hom_lhs != hom_rhs)[0]
        raise LambdaNotHomomorphism(int(a), int(b))
    comp_lhs = lam[m_t]
    comp_rhs = lam[:, lam]
    if not np.array_equal(comp_lhs, comp_rhs):
        a, b, _ = np.argwhere(comp_lhs != comp_rhs)[0]
        raise LambdaNotHomomorphism(int(a), int(b))

    star = a_t[lam, neg[None, :]]
    lam_rows = tuple(tuple(int(x) for x in row) for row in lam)
    lam_inv = tuple(invert(row) for row in lam_rows)
    return SkewBrace(
        n=n,
        add=add,
        mul=mul,
        lam=lam_rows,
        lam_inv=lam_inv,
        star=tuple(tuple(int(x) for x in row) for row in star),
    )


def brace_from_tables(add_table, mul_table) -> SkewBrace:
    """Validate raw tables sharing one carrier labeling with identity 0."""
    add, relabel = verify_group(add_table)
    if relabel != tuple(range(add.n)):
        raise NotABrace("additive identity must be at index 0")
    mul, relabel = verify_group(mul_table)
    if relabel != tuple(range(mul.n)):
        raise NotABrace("multiplicative identity must be at index 0")
    return verify_skew_brace(add, mul)


def lambda_map(b: SkewBrace, a: int) -> Perm:
    """The additive automorphism lam_a."""
    return b.lam[a]


def star(b: SkewBrace, a: int, x: int) -> int:
    return b.star[a][x]


# ---------------------------------------------------------------------------
# Constructors


def from_group_trivial(g: GroupTable) -> SkewBrace:
    return verify_skew_brace(g, g)


def from_group_almost_trivial(g: GroupTable) -> SkewBrace:
    return verify_skew_brace(g, opposite(g))


def from_zn_quadratic(n: int, c: int) -> SkewBrace:
    """Brace on Z/n with x o y = x + y + c*x*y, when that is a group."""
    add = cyclic(n)
    mul_table = [[(x + y + c * x * y) % n for y in range(n)] for x in range(n)]
    try:
        mul, relabel = verify_group(mul_table)
        if relabel != tuple(range(n)):
            raise NotABrace("multiplicative identity moved away from 0")
        return verify_skew_brace(add, mul)
    except NotABrace:
        raise
    except Exception as exc:  # noqa: BLE001 - rewrap validation errors
        raise NotABrace(f"x+y+{c}xy mod {n} is not a skew brace: {exc}") from exc


# ---------------------------------------------------------------------------
# Quotients


def quotient(b: SkewBrace, ideal: Subset) -> tuple[SkewBrace, tuple[int, ...]]:
    """Quotient brace on additive cosets of an ideal, identity coset first."""
    from .substructures import is_ideal

    verdict = is_ideal(b, ideal)
    if not verdict.ok:
        raise NotAnIdeal(verdict.condition, verdict.witness)

    n = b.n
    members = ideal.indices()
    proj = [-1] * n
    reps: list[int] = []
    for a in range(n):
        if proj[a] != -1:
            continue
        idx = len(reps)
        reps.append(a)
        for i in members:
            proj[b.add_(a, i)] = idx
    qn = len(reps)
    qadd = [[proj[b.add_(reps[x], reps[y])] for y in range(qn)] for x in range(qn)]
    qmul = [[proj[b.mul_(reps[x], reps[y])] for y in range(qn)] for x in range(qn)]
    # Well-definedness over all pairs, not just representatives.
    for a in range(n):
        for c in range(n):
            if proj[b.add_(a, c)] != qadd[proj[a]][proj[c]]:
                raise NotAnIdeal("additive_cosets_ill_defined", (a, c))
            if proj[b.mul_(a, c)] != qmul[proj[a]][proj[c]]:
                raise NotAnIdeal("multiplicative_cosets_ill_defined", (a, c))
    quot = brace_from_tables(qadd, qmul)
    return quot, tuple(proj)


# ---------------------------------------------------------------------------
# Classification flags


@dataclass(frozen=True)
class BraceFlags:
    trivial: bool
    two_sided: bool
    abelian_type: bool
    nilpotent_type: bool
    add_nilpotency_class: Optional[int]
    mul_nilpotent: bool
    mul_nilpotency_class: Optional[int]


def classify_flags(b: SkewBrace) -> BraceFlags:
    add_class = groups.nilpotency_class(b.add)
    mul_class = groups.nilpotency_class(b.mul)
    return BraceFlags(
        trivial=b.add.table == b.mul.table,
        two_sided=_is_two_sided(b),
        abelian_type=b.add.is_abelian(),
        nilpotent_type=add_class is not None,
        add_nilpotency_class=add_class,
        mul_nilpotent=mul_class is not None,
        mul_nilpotency_class=mul_class,
    )


def _is_two_sided(b: SkewBrace) -> bool:
    a_t = b.add.as_array()
    m_t = b.mul.as_array()
    neg = np.asarray(b.add.inv, dtype=np.int64)
    # (a + b) o c == a o c - c + b o c on all triples.
    lhs = m_t[a_t, :]
    t1 = a_t[m_t, neg[None, :]]
    rhs = a_t[t1[:, None, :], m_t[None, :, :]]
    return bool(np.array_equal(lhs, rhs))


# ---------------------------------------------------------------------------
# Isomorphism


def brace_closure_mask(b: SkewBrace, seed_mask: int) -> int:
    """Closure of a subset (plus 0) under both operations."""
    mask = seed_mask | 1
    members = [i for i in range(b.n) if mask >> i & 1]
    frontier = list(members)
    add_t, mul_t = b.add.table, b.mul.table
    while frontier:
        nxt = []
        for a in frontier:
            for c in list(members):
                for d in (add_t[a][c], add_t[c][a], mul_t[a][c], mul_t[c][a]):
                    if not mask >> d & 1:
                        mask |= 1 << d
                        members.append(d)
                        nxt.append(d)
        frontier = nxt
    return mask


def _generating_sequence(b: SkewBrace) -> list[int]:
    gens: list[int] = []
    mask = 1
    while mask != (1 << b.n) - 1:
        nxt = min(a for a in range(b.n) if not mask >> a & 1)
        gens.append(nxt)
        mask = brace_closure_mask(b, mask | 1 << nxt)
    return gens


def _expression_plan(b: SkewBrace, gens: list[int]) -> list[tuple[int, int, int, int]]:
    """Entries (target, op, x, y): op 0 is +, op 1 is o; x, y already derived."""
    known = {0} | set(gens)
    plan: list[tuple[int, int, int, int]] = []
    frontier = sorted(known)
    tables = (b.add.table, b.mul.table)
    while len(known) < b.n:
        nxt = []
        for a in frontier:
            for c in sorted(known):
                for op, t in enumerate(tables):
                    for target, (x, y) in ((t[a][c], (a, c)), (t[c][a], (c, a))):
                        if target not in known:
                            known.add(target)
                            plan.append((target, op, x, y))
                            nxt.append(target)
        if not nxt:
            raise ValueError("generators do not generate the brace")
        frontier = nxt
    return plan


def _element_fingerprint(b: SkewBrace, a: int, orbit_sizes: dict[int, int]) -> tuple:
    lam_row = b.lam[a]
    cycle_type = _cycle_type(lam_row)
    return (b.add.order_of(a), b.mul.order_of(a), orbit_sizes[a], cycle_type)


def _cycle_type(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        out.append(length)
    return tuple(sorted(out))


def _lambda_orbit_sizes(b: SkewBrace) -> dict[int, int]:
    sizes: dict[int, int] = {}
    for x in range(b.n):
        orbit = {b.lam[a][x] for a in range(b.n)}
        sizes[x] = len(orbit)
    return sizes


def isomorphic(b1: SkewBrace, b2: SkewBrace) -> Optional[Perm]:
    """A bijection fixing 0 that preserves both tables, or None.

    Backtracks over images of a generating sequence of b1, pruning candidates
    by element order in both groups and lambda-orbit data; a completed map is
    verified on every pair for both operations.
    """
    if b1.n != b2.n:
        return None
    orb1, orb2 = _lambda_orbit_sizes(b1), _lambda_orbit_sizes(b2)
    fp2: dict[tuple, list[int]] = {}
    for a in range(b2.n):
        fp2.setdefault(_element_fingerprint(b2, a, orb2), []).append(a)
    fp1 = [_element_fingerprint(b1, a, orb1) for a in range(b1.n)]
    if sorted(fp1) != sorted(k for k, v in fp2.items() for _ in v):
        return None

    gens = _generating_sequence(b1)
    plan = _expression_plan(b1, gens)
    t1 = (b1.add.table, b1.mul.table)
    t2 = (b2.add.table, b2.mul.table)

    def extend(k: int, phi: list[int], used: set[int]) -> Optional[Perm]:
        if k == len(gens):
            for target, op, x, y in plan:
                phi[target] = t2[op][phi[x]][phi[y]]
            if len(set(phi)) != b1.n:
                return None
            for op in (0, 1):
                s1, s2 = t1[op], t2[op]
                for a in range(b1.n):
                    row, prow = s1[a], phi[a]
                    for c in range(b1.n):
                        if phi[row[c]] != s2[prow][phi[c]]:
                            return None
            return tuple(phi)
        gen = gens[k]
        for cand in fp2.get(fp1[gen], []):
            if cand in used:
                continue
            phi[gen] = cand
            res = extend(k + 1, phi, used | {cand})
            if res is not None:
                return res
        return None

    phi0 = [-1] * b1.n
    phi0[0] = 0
    return extend(0, phi0, {0})


def relabeled(b: SkewBrace, relabel: Perm) -> SkewBrace:
    """Transport both tables along a carrier bijection fixing 0."""
    if relabel[0] != 0:
        raise ValueError("relabeling must fix 0")
    old = invert(relabel)
    n = b.n
    add = [[relabel[b.add_(old[x], old[y])] for y in range(n)] for x in range(n)]
    mul = [[relabel[b.mul_(old[x], old[y])] for y in range(n)] for x in range(n)]
    return brace_from_tables(add, mul)


# ---------------------------------------------------------------------------
# Star-operation identities


EXHAUSTIVE_IDENTITY_LIMIT = 12


def star_identity_violations(
    b: SkewBrace, rng=None, sample: int = 4096
) -> list[tuple[str, tuple[int, int, int]]]:
    """Violations of the three star expansion identities:

      x*(y+z)   = x*y + y + x*z - y
      (x+y)*z   = x*(lam_x^{-1}(y)*z) + lam_x^{-1}(y)*z + x*z
      (x o y)*z = x*(y*z) + y*z + x*z

    Exhaustive for carriers up to EXHAUSTIVE_IDENTITY_LIMIT, else on sampled
    triples (rng required). An empty list is the only healthy outcome.
    """
    n = b.n
    a_t = b.add.as_array()
    m_t = b.mul.as_array()
    st = np.asarray(b.star, dtype=np.int64)
    lam_inv = np.asarray(b.lam_inv, dtype=np.int64)
    neg = np.asarray(b.add.inv, dtype=np.int64)

    if n <= EXHAUSTIVE_IDENTITY_LIMIT:
        idx = np.arange(n)
        xs, ys, zs = np.meshgrid(idx, idx, idx, indexing="ij")
        xs, ys, zs = xs.ravel(), ys.ravel(), zs.ravel()
    else:
        if rng is None:
            raise ValueError("carrier too large to be exhaustive; pass an rng")
        xs = np.asarray([rng.randrange(n) for _ in range(sample)])
        ys = np.asarray([rng.randrange(n) for _ in range(sample)])
        zs = np.asarray([rng.randrange(n) for _ in range(sample)])

    out: list[tuple[str, tuple[int, int, int]]] = []

    lhs1 = st[xs, a_t[ys, zs]]
    rhs1 = a_t[a_t[a_t[st[xs, ys], ys], st[xs, zs]], neg[ys]]
    for i in np.nonzero(lhs1 != rhs1)[0]:
        out.append(("star_of_sum", (int(xs[i]), int(ys[i]), int(zs[i]))))

    u = lam_inv[xs, ys]
    s1 = st[u, zs]
    lhs2 = st[a_t[xs, ys], zs]
    rhs2 = a_t[a_t[st[xs, s1], s1], st[xs, zs]]
    for i in np.nonzero(lhs2 != rhs2)[0]:
        out.append(("sum_star", (int(xs[i]), int(ys[i]), int(zs[i]))))

    s2 = st[ys, zs]
    lhs3 = st[m_t[xs, ys], zs]
    rhs3 = a_t[a_t[st[xs, s2], s2], st[xs, zs]]
    for i in np.nonzero(lhs3 != rhs3)[0]:
        out.append(("product_star", (int(xs[i]), int(ys[i]), int(zs[i]))))

    return out
