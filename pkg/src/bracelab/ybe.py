"""Set-theoretic Yang-Baxter solutions: validation, retraction, and the
permutation skew brace they generate inside Sym(X) x Sym(X)."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .brace import SkewBrace, classify_flags, verify_skew_brace
from .errors import (
    AdditiveGenerationFailed,
    BraceValidationFailed,
    BraidFailed,
    BudgetExceeded,
    EquivalenceViolated,
    InducedMapsIllDefined,
    NotBijective,
)
from .groups import verify_group
from .perms import Perm, compose, invert, is_perm
from .series import nilpotency_report

# Keeps the quadratic addition-table construction interactive.
DEFAULT_CLOSURE_BUDGET = 10080


def closure_budget() -> int:
    env = os.environ.get("BRACELAB_BUDGET")
    return int(env) if env else DEFAULT_CLOSURE_BUDGET


@dataclass(frozen=True)
class Solution:
    """Non-degenerate solution r(x,y) = (sigma_x(y), tau_y(x)) on 0..n-1."""

    n: int
    sigma: tuple[Perm, ...]
    tau: tuple[Perm, ...]
    involutive: bool

    def r(self, x: int, y: int) -> tuple[int, int]:
        return self.sigma[x][y], self.tau[y][x]


def verify_solution(sigma: Sequence[Sequence[int]], tau: Sequence[Sequence[int]]) -> Solution:
    """Check bijectivity of r and the braid relation on all triples."""
    n = len(sigma)
    if len(tau) != n:
        raise ValueError("sigma and tau must have the same length")
    sig = tuple(tuple(p) for p in sigma)
    ta = tuple(tuple(p) for p in tau)
    for fam, name in ((sig, "sigma"), (ta, "tau")):
        for x, p in enumerate(fam):
            if not is_perm(p, n):
                raise ValueError(f"{name}[{x}] is not a permutation of 0..{n - 1}")

    seen: dict[tuple[int, int], tuple[int, int]] = {}
    for x in range(n):
        for y in range(n):
            img = (sig[x][y], ta[y][x])
            if img in seen:
                raise NotBijective(seen[img], (x, y), img)
            seen[img] = (x, y)

    def r12(t):
        x, y, z = t
        return sig[x][y], ta[y][x], z

    def r23(t):
        x, y, z = t
        return x, sig[y][z], ta[z][y]

    for x in range(n):
        for y in range(n):
            for z in range(n):
                t = (x, y, z)
                if r12(r23(r12(t))) != r23(r12(r23(t))):
                    raise BraidFailed(x, y, z)

    involutive = all(
        (sig[sig[x][y]][ta[y][x]], ta[ta[y][x]][sig[x][y]]) == (x, y)
        for x in range(n)
        for y in range(n)
    )
    return Solution(n=n, sigma=sig, tau=ta, involutive=involutive)


def involutive_from_sigma(sigma: Sequence[Sequence[int]]) -> Solution:
    """Build tau from the involutivity constraint tau_y(x) = sigma_{sigma_x(y)}^{-1}(x),
    then validate. Not every sigma family yields a solution."""
    n = len(sigma)
    sig = tuple(tuple(p) for p in sigma)
    for x, p in enumerate(sig):
        if not is_perm(p, n):
            raise ValueError(f"sigma[{x}] is not a permutation of 0..{n - 1}")
    sig_inv = [invert(p) for p in sig]
    tau = [[sig_inv[sig[x][y]][x] for x in range(n)] for y in range(n)]
    sol = verify_solution(sig, tau)
    if not sol.involutive:
        raise ValueError("sigma family does not close involutively")
    return sol


# ---------------------------------------------------------------------------
# Retraction


def retract(sol: Solution) -> tuple[Solution, tuple[int, ...]]:
    """Quotient solution identifying x and y with equal (sigma_x, tau_x)."""
    n = sol.n
    key_to_class: dict[tuple[Perm, Perm], int] = {}
    class_map = [0] * n
    for x in range(n):
        key = (sol.sigma[x], sol.tau[x])
        if key not in key_to_class:
            key_to_class[key] = len(key_to_class)
        class_map[x] = key_to_class[key]
    m = len(key_to_class)
    members: list[list[int]] = [[] for _ in range(m)]
    for x in range(n):
        members[class_map[x]].append(x)

    sigma_bar = [[-1] * m for _ in range(m)]
    tau_bar = [[-1] * m for _ in range(m)]
    for c in range(m):
        for d in range(m):
            sig_vals = {class_map[sol.sigma[x][y]] for x in members[c] for y in members[d]}
            tau_vals = {class_map[sol.tau[x][y]] for x in members[c] for y in members[d]}
            if len(sig_vals) != 1 or len(tau_vals) != 1:
                raise InducedMapsIllDefined(
                    f"classes ({c},{d}) induce sigma {sig_vals}, tau {tau_vals}"
                )
            sigma_bar[c][d] = sig_vals.pop()
            tau_bar[c][d] = tau_vals.pop()
    return verify_solution(sigma_bar, tau_bar), tuple(class_map)


def multipermutation_level(sol: Solution) -> Optional[int]:
    """Least m with |Ret^m(X)| = 1, or None when retraction stabilizes above
    one point. Sizes never increase, so this always terminates."""
    level = 0
    current = sol
    while current.n > 1:
        retracted, _ = retract(current)
        if retracted.n == current.n:
            return None
        current = retracted
        level += 1
    return level


# ---------------------------------------------------------------------------
# The permutation skew brace


def permutation_brace(
    sol: Solution, budget: Optional[int] = None
) -> tuple[SkewBrace, tuple[int, ...]]:
    """The finite skew brace on the subgroup of Sym(X) x Sym(X) generated by
    (sigma_x, tau_x^{-1}).

    Multiplication is componentwise composition. Addition is reconstructed by
    breadth-first search over right-addition moves: a + g_x = a o g_{alpha^-1(x)}
    for a with first component alpha, which realizes the generator rule
    lambda_a(g_y) = g_{alpha(y)}; each reachable element gets a move word and
    a + b replays b's word starting from a. The generator rule is only a
    construction heuristic: the resulting tables are revalidated in full, and
    the structure relation g_x o g_y = g_{sigma_x(y)} o g_{tau_y(x)} is
    asserted, so no unproved identity is trusted.
    """
    budget = closure_budget() if budget is None else budget
    n = sol.n
    gens = [(sol.sigma[x], invert(sol.tau[x])) for x in range(n)]
    ident = (tuple(range(n)), tuple(range(n)))

    members = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a1, b1 in frontier:
            for a2, b2 in gens:
                g = (compose(a1, a2), compose(b1, b2))
                if g not in members:
                    members.add(g)
                    nxt.append(g)
                    if len(members) > budget:
                        raise BudgetExceeded("multiplicative closure", len(members), budget)
        frontier = nxt

    elements = sorted(members)
    index = {g: i for i, g in enumerate(elements)}
    e_idx = index[ident]
    m = len(elements)
    gen_map = tuple(index[g] for g in gens)

    mul_table = [
        [index[(compose(a1, a2), compose(b1, b2))] for (a2, b2) in elements]
        for (a1, b1) in elements
    ]

    alpha_inv = [invert(g[0]) for g in elements]
    forward = [[mul_table[i][gen_map[alpha_inv[i][x]]] for x in range(n)] for i in range(m)]
    backward: list[Optional[Perm]] = []
    for x in range(n):
        col = tuple(forward[i][x] for i in range(m))
        backward.append(invert(col) if is_perm(col, m) else None)

    # BFS from the identity over signed moves; words replay as additions.
    words: dict[int, tuple[tuple[int, int], ...]] = {e_idx: ()}
    queue = [e_idx]
    while queue:
        nxt = []
        for i in queue:
            for x in range(n):
                for sign, target in ((1, forward[i][x]), (-1, backward[x][i] if backward[x] is not None else None)):
                    if target is not None and target not in words:
                        words[target] = words[i] + ((x, sign),)
                        nxt.append(target)
        queue = nxt
    if len(words) != m:
        raise AdditiveGenerationFailed(
            f"addition moves reach {len(words)} of {m} elements"
        )

    def replay(start: int, word) -> int:
        state = start
        for x, sign in word:
            if sign == 1:
                state = forward[state][x]
            else:
                back = backward[x]
                if back is None:
                    raise AdditiveGenerationFailed(f"move {x} is not invertible")
                state = back[state]
        return state

    add_table = [[replay(i, words[j]) for j in range(m)] for i in range(m)]

    try:
        add_group, relabel = verify_group(add_table)
        if relabel != tuple(range(m)):
            raise BraceValidationFailed("additive identity moved during validation")
        mul_group, relabel = verify_group(mul_table)
        if relabel != tuple(range(m)):
            raise BraceValidationFailed("multiplicative identity moved during validation")
        brace = verify_skew_brace(add_group, mul_group)
    except BraceValidationFailed:
        raise
    except Exception as exc:  # noqa: BLE001 - surface as a hard diagnostic
        raise BraceValidationFailed(f"reconstructed tables fail validation: {exc}") from exc

    for x in range(n):
        for y in range(n):
            if brace.lam[gen_map[x]][gen_map[y]] != gen_map[sol.sigma[x][y]]:
                raise BraceValidationFailed(
                    f"lambda generator rule fails at ({x},{y})"
                )
            lhs = brace.mul_(gen_map[x], gen_map[y])
            rhs = brace.mul_(gen_map[sol.sigma[x][y]], gen_map[sol.tau[y][x]])
            if lhs != rhs:
                raise BraceValidationFailed(f"structure relation fails at ({x},{y})")
    return brace, gen_map


def equivalence_check(sol: Solution) -> dict:
    """Both sides of: multipermutation iff the permutation brace is right
    nilpotent of nilpotent type. Raises EquivalenceViolated on disagreement,
    which always indicates an implementation bug."""
    level = multipermutation_level(sol)
    brace, _ = permutation_brace(sol)
    report = nilpotency_report(brace)
    flags = classify_flags(brace)
    lhs = level is not None
    rhs = report.right.holds and report.nilpotent_type
    if lhs != rhs:
        raise EquivalenceViolated(
            f"multipermutation={lhs} but right-nilpotent-of-nilpotent-type={rhs}"
        )
    return {
        "multipermutation": lhs,
        "level": level,
        "brace_size": brace.n,
        "right_nilpotent": report.right.holds,
        "right_class": report.right.cls,
        "left_nilpotent": report.left.holds,
        "nilpotent_type": report.nilpotent_type,
        "abelian_type": flags.abelian_type,
    }
