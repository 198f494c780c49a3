"""Census machinery: small groups, automorphism groups, skew braces via
regular subgroups of the holomorph, and involutive solutions.

Search spaces partition by additive group and by first-generator choice;
candidate production is deterministic and deduplication happens in a single
merge stage, so shuffled worker output cannot change the result.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import product as iproduct
from pathlib import Path
from random import Random
from typing import Iterable, Optional, Sequence

from .brace import SkewBrace, isomorphic, verify_skew_brace
from .errors import BudgetExceeded
from .groups import (
    GroupTable,
    all_automorphisms,
    automorphism_group,
    isomorphic_groups,
    verify_group,
)
from .perms import Perm, all_perms, compose, invert, perm_order
from .substructures import invariant_substructures, lambda_orbits
from .ybe import Solution, multipermutation_level, permutation_brace

# Classical group counts; groups_of_order() must reproduce these.
EXPECTED_GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5,
    9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14,
}

GROUP_ORDER_BUDGET = 48


@dataclass
class Catalog:
    kind: str
    order: int
    items: list
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.items)


# ---------------------------------------------------------------------------
# Groups of a given order


_GROUPS_CACHE: dict[int, list[GroupTable]] = {}


def groups_of_order(n: int) -> Catalog:
    started = time.monotonic()
    items = _groups_of_order(n)
    meta = {
        "kind": "groups",
        "order": n,
        "count": len(items),
        "wall_time_s": round(time.monotonic() - started, 3),
        "method": "cyclic-extension",
    }
    return Catalog("groups", n, list(items), meta)


def _groups_of_order(n: int) -> list[GroupTable]:
    """All groups of order n up to isomorphism.

    Every group of order < 60 is solvable, hence has a normal subgroup of
    prime index; so each candidate arises as a cyclic extension of a group
    of order n/p by data (alpha, z) with alpha in Aut(N), alpha(z) = z and
    alpha^p equal to conjugation by z. Candidates are validated and then
    deduplicated by isomorphism.
    """
    if n > GROUP_ORDER_BUDGET:
        raise BudgetExceeded("group order", n, GROUP_ORDER_BUDGET)
    if n in _GROUPS_CACHE:
        return _GROUPS_CACHE[n]
    if n == 1:
        out = [verify_group([[0]])[0]]
        _GROUPS_CACHE[1] = out
        return out
    found: list[GroupTable] = []
    for p in _primes_dividing(n):
        for base in _groups_of_order(n // p):
            for table in _cyclic_extensions(base, p):
                g, relabel = verify_group(table)
                assert relabel == tuple(range(n))
                if not any(isomorphic_groups(g, h) is not None for h in found):
                    found.append(g)
    if n in EXPECTED_GROUP_COUNTS:
        assert len(found) == EXPECTED_GROUP_COUNTS[n], (
            f"group census at order {n}: got {len(found)}, "
            f"expected {EXPECTED_GROUP_COUNTS[n]}"
        )
    _GROUPS_CACHE[n] = found
    return found


def _primes_dividing(n: int) -> list[int]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _cyclic_extensions(base: GroupTable, p: int) -> Iterable[list[list[int]]]:
    """Tables of order p*|N| built from t^i x with t^p = z and t x t^-1 = alpha(x)."""
    m = base.n
    n = m * p
    conj = {
        z: tuple(base.conjugate(z, x) for x in range(m)) for z in range(m)
    }
    for alpha in all_automorphisms(base):
        alpha_inv_pows = [tuple(range(m))]
        ainv = invert(alpha)
        for _ in range(p - 1):
            alpha_inv_pows.append(compose(ainv, alpha_inv_pows[-1]))
        alpha_p = tuple(range(m))
        for _ in range(p):
            alpha_p = compose(alpha, alpha_p)
        for z in range(m):
            if alpha[z] != z or alpha_p != conj[z]:
                continue
            table = [[0] * n for _ in range(n)]
            for i in range(p):
                for x in range(m):
                    row = table[i * m + x]
                    for j in range(p):
                        shifted = alpha_inv_pows[j]
                        for y in range(m):
                            w = base.op(shifted[x], y)
                            if i + j < p:
                                row[j * m + y] = (i + j) * m + w
                            else:
                                row[j * m + y] = (i + j - p) * m + base.op(z, w)
            yield table


def automorphisms(g: GroupTable) -> tuple[list[Perm], int]:
    """Generating automorphisms and |Aut(G)|."""
    return automorphism_group(g)


# ---------------------------------------------------------------------------
# Skew braces via regular subgroups of the holomorph


LambdaMap = tuple[Perm, ...]  # a -> the additive automorphism lambda_a


def regular_subgroup_search_units(a_group: GroupTable) -> list[int]:
    """Indices of Aut(A) elements usable as the first generator choice."""
    return list(range(len(all_automorphisms(a_group))))


def regular_subgroups(a_group: GroupTable, first_choice: Optional[int] = None) -> list[LambdaMap]:
    """Regular subgroups of Hol(A), each as the map a -> f_a.

    A regular subgroup has exactly one element (a, f_a) per first coordinate;
    the search extends a partial subgroup by the unique element at the least
    uncovered coordinate, so every regular subgroup is produced exactly once.
    first_choice restricts the top-level branch (work unit for checkpointing
    and parallelism).

    Candidate automorphism parts are limited to those whose order divides n:
    the cyclic group generated by any member of a regular subgroup has order
    dividing n, and the automorphism part's order divides that.
    """
    n = a_group.n
    auts = all_automorphisms(a_group)
    aut_index = {p: i for i, p in enumerate(auts)}
    aut_order = [perm_order(p) for p in auts]
    usable = [i for i in range(len(auts)) if n % aut_order[i] == 0]
    op = a_group.op
    m = len(auts)
    comp_cache: dict[int, int] = {}

    def comp(i: int, j: int) -> int:
        key = i * m + j
        k = comp_cache.get(key)
        if k is None:
            k = aut_index[compose(auts[i], auts[j])]
            if len(comp_cache) > 1 << 24:  # keep hours-long runs within memory
                comp_cache.clear()
            comp_cache[key] = k
        return k

    results: list[LambdaMap] = []

    def close(items: dict[int, int]) -> Optional[dict[int, int]]:
        # Subgroup closure on (coordinate, automorphism index) pairs; None on
        # a coordinate conflict or when the size cannot divide n.
        h = dict(items)
        frontier = list(h.items())
        while frontier:
            nxt = []
            for a, fi in frontier:
                fa = auts[fi]
                for b, gi in list(h.items()):
                    gb = auts[gi]
                    for c, ki in (
                        (op(a, fa[b]), comp(fi, gi)),
                        (op(b, gb[a]), comp(gi, fi)),
                    ):
                        cur = h.get(c)
                        if cur is None:
                            if n % aut_order[ki] != 0:
                                return None
                            h[c] = ki
                            nxt.append((c, ki))
                        elif cur != ki:
                            return None
            frontier = nxt
        if n % len(h) != 0:
            return None
        return h

    def extend(h: dict[int, int]) -> None:
        if len(h) == n:
            results.append(tuple(auts[h[a]] for a in range(n)))
            return
        a0 = min(a for a in range(n) if a not in h)
        for fi in usable:
            h2 = dict(h)
            h2[a0] = fi
            closed = close(h2)
            if closed is not None:
                extend(closed)

    ident_idx = aut_index[tuple(range(n))]
    if n == 1:
        return [(tuple(range(n)),)]
    if first_choice is None:
        extend({0: ident_idx})
        return results
    if n % aut_order[first_choice] != 0:
        return results
    closed = close({0: ident_idx, 1: first_choice})
    if closed is not None:
        extend(closed)
    return results


def brace_from_lambda_map(a_group: GroupTable, lam: LambdaMap) -> SkewBrace:
    n = a_group.n
    mul = [[a_group.op(a, lam[a][b]) for b in range(n)] for a in range(n)]
    mul_group, relabel = verify_group(mul)
    assert relabel == tuple(range(n))
    return verify_skew_brace(a_group, mul_group)


def _conjugate_lambda_map(lam: LambdaMap, phi: Perm) -> LambdaMap:
    phi_inv = invert(phi)
    out: list[Perm] = [()] * len(lam)
    for a, f in enumerate(lam):
        out[phi[a]] = compose(phi, compose(f, phi_inv))
    return tuple(out)


def reduce_by_aut_conjugation(
    lams: Iterable[LambdaMap], aut_gens: Sequence[Perm]
) -> list[LambdaMap]:
    """One representative per Aut(A)-conjugation orbit (orbits give
    isomorphic braces via the conjugating automorphism).

    The input must be the complete search result: orbits are walked with
    automorphism generators, so the collection has to be closed under the
    action."""
    index = set(lams)
    seen: set[LambdaMap] = set()
    reps: list[LambdaMap] = []
    for lam in sorted(index):
        if lam in seen:
            continue
        component = {lam}
        queue = [lam]
        while queue:
            cur = queue.pop()
            for phi in aut_gens:
                nxt = _conjugate_lambda_map(cur, phi)
                assert nxt in index, "regular-subgroup set not closed under Aut"
                if nxt not in component:
                    component.add(nxt)
                    queue.append(nxt)
        seen |= component
        reps.append(lam)
    return reps


def brace_fingerprint(b: SkewBrace) -> tuple:
    """Cheap isomorphism invariants for dedup bucketing."""
    inv = invariant_substructures(b)
    orders = sorted(zip(b.add.element_orders(), b.mul.element_orders()))
    orbit_sizes = sorted(len(o) for o in lambda_orbits(b))
    return (
        b.n,
        tuple(orders),
        tuple(orbit_sizes),
        b.add.is_abelian(),
        b.mul.is_abelian(),
        len(inv.soc),
        len(inv.ann),
        len(inv.fix),
        len(inv.ker_lambda),
    )


def dedup_braces(braces: Iterable[SkewBrace]) -> list[SkewBrace]:
    """Keep one representative per isomorphism class (fingerprint buckets,
    then pairwise backtracking tests)."""
    buckets: dict[tuple, list[SkewBrace]] = {}
    out: list[SkewBrace] = []
    for b in braces:
        fp = brace_fingerprint(b)
        bucket = buckets.setdefault(fp, [])
        if not any(isomorphic(b, other) is not None for other in bucket):
            bucket.append(b)
            out.append(b)
    return out


def enumerate_skew_braces(
    n: int,
    method: str = "holomorph",
    checkpoint: Optional[str | Path] = None,
) -> Catalog:
    """All skew braces of order n up to isomorphism.

    holomorph: regular subgroups of Hol(A) for each additive group A, reduced
    by Aut(A)-conjugation, then certified pairwise non-isomorphic.
    direct: independent oracle for small n; enumerates multiplication tables
    over each fixed additive group by backtracking on the brace law.
    """
    started = time.monotonic()
    if method == "holomorph":
        items = _enumerate_braces_holomorph(n, checkpoint)
    elif method == "direct":
        items = _enumerate_braces_direct(n)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    meta = {
        "kind": "braces",
        "order": n,
        "count": len(items),
        "wall_time_s": round(time.monotonic() - started, 3),
        "method": method,
    }
    return Catalog("braces", n, items, meta)


def _enumerate_braces_holomorph(n: int, checkpoint: Optional[str | Path]) -> list[SkewBrace]:
    groups = _groups_of_order(n)
    done: dict[tuple[int, int], list[LambdaMap]] = {}
    ckpt_path = Path(checkpoint) if checkpoint else None
    if ckpt_path and ckpt_path.exists():
        for line in ckpt_path.read_text().splitlines():
            rec = json.loads(line)
            done[(rec["group"], rec["unit"])] = [
                tuple(tuple(p) for p in lam) for lam in rec["maps"]
            ]

    braces: list[SkewBrace] = []
    for gi, a_group in enumerate(groups):
        auts = all_automorphisms(a_group)
        if n == 1:
            braces.append(brace_from_lambda_map(a_group, (tuple([0]),)))
            continue
        lams: list[LambdaMap] = []
        for unit in range(len(auts)):
            key = (gi, unit)
            if key not in done:
                found = regular_subgroups(a_group, first_choice=unit)
                done[key] = found
                if ckpt_path:
                    with ckpt_path.open("a") as fh:
                        fh.write(
                            json.dumps(
                                {
                                    "group": gi,
                                    "unit": unit,
                                    "maps": [[list(p) for p in lam] for lam in found],
                                }
                            )
                            + "\n"
                        )
            lams.extend(done[key])
        aut_gens, _ = automorphism_group(a_group)
        reduced = reduce_by_aut_conjugation(lams, aut_gens)
        braces.extend(brace_from_lambda_map(a_group, lam) for lam in reduced)
    return dedup_braces(braces)


def _enumerate_braces_direct(n: int) -> list[SkewBrace]:
    """Backtrack over multiplication tables with identity 0 over each fixed
    additive group, pruning rows by the brace law; leaves are validated."""
    if n > 6:
        raise BudgetExceeded("direct brace search order", n, 6)
    out: list[SkewBrace] = []
    for a_group in _groups_of_order(n):
        add_t = a_group.table
        neg = a_group.inv
        rows: list[list[int]] = [list(range(n))]

        def row_ok(a: int, row: Sequence[int]) -> bool:
            # a o (b + c) == a o b - a + a o c uses only row a.
            for b in range(n):
                for c in range(n):
                    if row[add_t[b][c]] != add_t[add_t[row[b]][neg[a]]][row[c]]:
                        return False
            return True

        found_tables: list[list[list[int]]] = []

        def fill(a: int, used_cols: list[set[int]]) -> None:
            if a == n:
                found_tables.append([list(r) for r in rows])
                return
            # row a starts with a (identity in column 0)
            def backtrack(pos: int, row: list[int]) -> None:
                if pos == n:
                    if row_ok(a, row):
                        rows.append(row)
                        for j, v in enumerate(row):
                            used_cols[j].add(v)
                        fill(a + 1, used_cols)
                        rows.pop()
                        for j, v in enumerate(row):
                            used_cols[j].discard(v)
                    return
                for v in range(n):
                    if v in row[:pos] or v in used_cols[pos]:
                        continue
                    row.append(v)
                    backtrack(pos + 1, row)
                    row.pop()

            backtrack(1, [a])

        cols = [set(row[j] for row in rows) for j in range(n)]
        fill(1, cols)

        for table in found_tables:
            try:
                mul_group, relabel = verify_group(table)
            except Exception:  # noqa: BLE001 - non-groups are just skipped
                continue
            if relabel != tuple(range(n)):
                continue
            out.append(verify_skew_brace(a_group, mul_group))
    return dedup_braces(out)


# ---------------------------------------------------------------------------
# Involutive solutions


SIGMA_SPACE_BUDGET = 10**7


def _sigma_space(n: int) -> int:
    from math import factorial

    return factorial(n) ** n


def _try_involutive(sig: tuple[Perm, ...], sig_inv: dict[Perm, Perm]) -> Optional[Solution]:
    """Fast validity filter; returns the verified solution or None."""
    n = len(sig)
    tau = [[0] * n for _ in range(n)]
    for y in range(n):
        row = tau[y]
        for x in range(n):
            row[x] = sig_inv[sig[sig[x][y]]][x]
        if len(set(row)) != n:
            return None
    # involutivity of r
    for x in range(n):
        for y in range(n):
            u, v = sig[x][y], tau[y][x]
            if sig[u][v] != x or tau[v][u] != y:
                return None
    # braid relation
    for x in range(n):
        for y in range(n):
            u1, v1 = sig[x][y], tau[y][x]
            for z in range(n):
                a = (u1, sig[v1][z], tau[z][v1])
                b1, c1 = sig[a[0]][a[1]], tau[a[1]][a[0]]
                lhs = (b1, c1, a[2])
                d = (x, sig[y][z], tau[z][y])
                e1, f1 = sig[d[0]][d[1]], tau[d[1]][d[0]]
                e = (e1, f1, d[2])
                rhs = (e[0], sig[e[1]][e[2]], tau[e[2]][e[1]])
                if lhs != rhs:
                    return None
    return Solution(n=n, sigma=sig, tau=tuple(tuple(r) for r in tau), involutive=True)


def solution_canonical_form(sol: Solution) -> tuple:
    """Minimum relabeling of (sigma, tau) over Sym(n)."""
    n = sol.n
    best = None
    for pi in all_perms(n):
        pi_inv = invert(pi)
        sig = tuple(
            tuple(pi[sol.sigma[pi_inv[x]][pi_inv[y]]] for y in range(n)) for x in range(n)
        )
        tau = tuple(
            tuple(pi[sol.tau[pi_inv[x]][pi_inv[y]]] for y in range(n)) for x in range(n)
        )
        cand = (sig, tau)
        if best is None or cand < best:
            best = cand
    return best


def enumerate_involutive_solutions(n: int) -> Catalog:
    """Involutive solutions of size n up to relabeling, with the
    multipermutation level and permutation-brace size of each item."""
    started = time.monotonic()
    if _sigma_space(n) > SIGMA_SPACE_BUDGET:
        raise BudgetExceeded("sigma-family space", _sigma_space(n), SIGMA_SPACE_BUDGET)
    perms = all_perms(n)
    sig_inv = {p: invert(p) for p in perms}
    seen: dict[tuple, Solution] = {}
    for sig in iproduct(perms, repeat=n):
        sol = _try_involutive(sig, sig_inv)
        if sol is None:
            continue
        canon = solution_canonical_form(sol)
        if canon not in seen:
            seen[canon] = sol
    items = [seen[k] for k in sorted(seen)]
    levels = []
    brace_sizes = []
    for sol in items:
        levels.append(multipermutation_level(sol))
        brace_sizes.append(permutation_brace(sol)[0].n)
    meta = {
        "kind": "solutions",
        "order": n,
        "count": len(items),
        "wall_time_s": round(time.monotonic() - started, 3),
        "method": "exhaustive-sigma",
        "levels": levels,
        "brace_sizes": brace_sizes,
    }
    return Catalog("solutions", n, items, meta)


def sample_involutive_solutions(n: int, count: int, seed: int) -> list[Solution]:
    """Seeded randomized depth-first sampling of valid involutive solutions.

    Assigns sigma_x one index at a time in a random candidate order, pruning
    partial assignments whose forced tau rows collide or whose fully
    evaluable braid triples fail; complete assignments still go through the
    full validity check. Solutions are distinct as labeled sigma-families.
    """
    rng = Random(seed)
    perms = all_perms(n)
    sig_inv = {p: invert(p) for p in perms}
    found: list[Solution] = []
    seen: set[tuple] = set()
    triples = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]

    def partial_ok(sig: list[Optional[Perm]]) -> bool:
        # tau_y(x) = sigma^{-1}_{sigma_x(y)}(x) where defined; a collision
        # inside a tau row means tau_y cannot become a permutation.
        for y in range(n):
            row: dict[int, int] = {}
            for x in range(n):
                sx = sig[x]
                if sx is None:
                    continue
                s2 = sig[sx[y]]
                if s2 is None:
                    continue
                t = sig_inv[s2][x]
                for k, v in row.items():
                    if k != x and v == t:
                        return False
                row[x] = t

        def ev(x: int, y: int) -> Optional[tuple[int, int]]:
            sx = sig[x]
            if sx is None:
                return None
            u = sx[y]
            su = sig[u]
            if su is None:
                return None
            return u, sig_inv[su][x]

        # Braid triples that are already fully evaluable must hold.
        for x, y, z in triples:
            a = ev(x, y)
            if a is None:
                continue
            u1, v1 = a
            bq = ev(v1, z)
            if bq is None:
                continue
            u2, v2 = bq
            cq = ev(u1, u2)
            if cq is None:
                continue
            lhs = (cq[0], cq[1], v2)
            d = ev(y, z)
            if d is None:
                continue
            w1, w2 = d
            e = ev(x, w1)
            if e is None:
                continue
            p1, p2 = e
            f = ev(p2, w2)
            if f is None:
                continue
            if lhs != (p1, f[0], f[1]):
                return False
        return True

    def extend(k: int, sig: list[Optional[Perm]]) -> bool:
        if len(found) >= count:
            return True
        if k == n:
            full = tuple(p for p in sig if p is not None)
            sol = _try_involutive(full, sig_inv)
            if sol is not None and full not in seen:
                seen.add(full)
                found.append(sol)
            return len(found) >= count
        order = list(range(len(perms)))
        rng.shuffle(order)
        for idx in order:
            sig[k] = perms[idx]
            if partial_ok(sig):
                if extend(k + 1, sig):
                    return True
            sig[k] = None
        return False

    while len(found) < count:
        before = len(found)
        extend(0, [None] * n)
        if len(found) == before:
            break
    return found
