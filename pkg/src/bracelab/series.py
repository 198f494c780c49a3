"""Nilpotency series of skew braces and the verdicts they support.

Descending kinds are computed with star products and commutators; ascending
kinds (socle, annihilator) go through quotients and preimages. Every chain is
cut at the first repetition; a strictly monotone chain is bounded by the
carrier size, so no other cutoff is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from . import groups
from .brace import SkewBrace, classify_flags, quotient
from .errors import CrossCheckFailed, HypothesisUnmet
from .subsets import Subset
from .substructures import (
    additive_closure,
    commutator,
    invariant_substructures,
    is_ideal,
    is_left_ideal,
    star_sets,
)

SeriesKind = Literal[
    "left",
    "right",
    "strong",
    "gamma",
    "gamma_bracket",
    "socle",
    "annihilator",
    "lcs_add",
    "lcs_mul",
    "ucs_add",
    "ucs_mul",
]

DESCENDING_KINDS = {"left", "right", "strong", "gamma", "gamma_bracket", "lcs_add", "lcs_mul"}
ASCENDING_KINDS = {"socle", "annihilator", "ucs_add", "ucs_mul"}

# Kinds whose terms are ideals; "left" terms are only left ideals, and the
# group series terms are normal subgroups of their group.
IDEAL_KINDS = {"right", "strong", "gamma", "gamma_bracket", "socle", "annihilator"}


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    chain: tuple[Subset, ...]
    stabilized_at: int
    terminates: bool
    cls: Optional[int]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "chain": [s.indices() for s in self.chain],
            "stabilized_at": self.stabilized_at,
            "terminates": self.terminates,
            "class": self.cls,
        }


def series(b: SkewBrace, kind: SeriesKind) -> SeriesReport:
    builder = _BUILDERS.get(kind)
    if builder is None:
        raise ValueError(f"unknown series kind {kind!r}")
    chain = builder(b)
    _check_members(b, kind, chain)
    if kind in DESCENDING_KINDS:
        terminates = chain[-1].is_zero_only()
    else:
        terminates = chain[-1].is_full()
    cls: Optional[int] = None
    if terminates:
        if kind in ("left", "right", "strong", "gamma_bracket"):
            cls = len(chain)  # series indexed from 1, class = first zero index
        else:
            cls = len(chain) - 1  # series indexed from 0
    return SeriesReport(
        kind=kind,
        chain=tuple(chain),
        stabilized_at=len(chain) - 1,
        terminates=terminates,
        cls=cls,
    )


def _check_members(b: SkewBrace, kind: str, chain: list[Subset]) -> None:
    if kind in IDEAL_KINDS:
        for term in chain:
            assert is_ideal(b, term).ok, f"{kind} series term is not an ideal"
    elif kind == "left":
        for term in chain:
            assert is_left_ideal(b, term), "left series term is not a left ideal"
    elif kind in ("lcs_add", "ucs_add"):
        for term in chain:
            assert groups.is_normal(b.add, term.indices())
    elif kind in ("lcs_mul", "ucs_mul"):
        for term in chain:
            assert groups.is_normal(b.mul, term.indices())


def _descend(b: SkewBrace, step) -> list[Subset]:
    chain = [Subset.full(b.n)]
    while True:
        nxt = step(chain[-1])
        if nxt == chain[-1]:
            return chain
        assert nxt <= chain[-1], "descending series failed to descend"
        chain.append(nxt)


def _left_chain(b: SkewBrace) -> list[Subset]:
    full = Subset.full(b.n)
    return _descend(b, lambda prev: star_sets(b, full, prev))


def _right_chain(b: SkewBrace) -> list[Subset]:
    full = Subset.full(b.n)
    return _descend(b, lambda prev: star_sets(b, prev, full))


def _strong_chain(b: SkewBrace) -> list[Subset]:
    """B[1] = B, B[m+1] = <union of B[i] * B[m+1-i] for i = 1..m>_+."""
    chain = [Subset.full(b.n)]
    while True:
        m = len(chain)
        products: set[int] = set()
        for i in range(1, m + 1):
            xs, ys = chain[i - 1], chain[m - i]
            products |= {b.star[x][y] for x in xs.indices() for y in ys.indices()}
        nxt = Subset(b.n, additive_closure(b, products))
        if nxt == chain[-1]:
            return chain
        assert nxt <= chain[-1]
        chain.append(nxt)


def gamma_series(b: SkewBrace, ideal: Subset) -> list[Subset]:
    """Gamma_0(I) = I, Gamma_{n+1}(I) = <Gn*B, B*Gn, [B,Gn]_+>_+."""
    full = Subset.full(b.n)
    chain = [ideal]
    while True:
        prev = chain[-1]
        gen = (
            star_sets(b, prev, full).mask
            | star_sets(b, full, prev).mask
            | commutator(b, full, prev, "+").mask
        )
        nxt = Subset(b.n, additive_closure(b, Subset(b.n, gen).indices()))
        if nxt == prev:
            return chain
        assert nxt <= prev
        chain.append(nxt)


def _gamma_chain(b: SkewBrace) -> list[Subset]:
    return gamma_series(b, Subset.full(b.n))


def _gamma_bracket_chain(b: SkewBrace) -> list[Subset]:
    """G[1] = B, G[n] = <G[i]*G[n-i], [G[i],G[n-i]]_+ : 1 <= i <= n-1>_+."""
    chain = [Subset.full(b.n)]
    while True:
        n_idx = len(chain) + 1
        gen = 0
        for i in range(1, n_idx):
            xs, ys = chain[i - 1], chain[n_idx - i - 1]
            gen |= star_sets(b, xs, ys).mask
            gen |= commutator(b, xs, ys, "+").mask
        nxt = Subset(b.n, additive_closure(b, Subset(b.n, gen).indices()))
        if nxt == chain[-1]:
            return chain
        assert nxt <= chain[-1], "gamma bracket series failed to descend"
        chain.append(nxt)


def _ascend_by_quotient(b: SkewBrace, pick) -> list[Subset]:
    chain = [Subset.zero(b.n)]
    while True:
        prev = chain[-1]
        quot, proj = quotient(b, prev)
        target = pick(quot)
        nxt = Subset.of(b.n, (a for a in range(b.n) if proj[a] in target))
        if nxt == prev:
            return chain
        assert prev <= nxt
        chain.append(nxt)


def _socle_chain(b: SkewBrace) -> list[Subset]:
    return _ascend_by_quotient(b, lambda q: invariant_substructures(q).soc)


def _annihilator_chain(b: SkewBrace) -> list[Subset]:
    return _ascend_by_quotient(b, lambda q: invariant_substructures(q).ann)


def _lcs(b: SkewBrace, op: str) -> list[Subset]:
    chain = [Subset.full(b.n)]
    while True:
        nxt = commutator(b, Subset.full(b.n), chain[-1], op)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def _ucs(b: SkewBrace, op: str) -> list[Subset]:
    comm = b.add_comm if op == "+" else b.mul_comm
    chain = [Subset.zero(b.n)]
    while True:
        prev = chain[-1]
        nxt = Subset.of(
            b.n,
            (
                x
                for x in range(b.n)
                if all(comm(x, a) in prev for a in range(b.n))
            ),
        )
        if nxt == prev:
            return chain
        chain.append(nxt)


_BUILDERS = {
    "left": _left_chain,
    "right": _right_chain,
    "strong": _strong_chain,
    "gamma": _gamma_chain,
    "gamma_bracket": _gamma_bracket_chain,
    "socle": _socle_chain,
    "annihilator": _annihilator_chain,
    "lcs_add": lambda b: _lcs(b, "+"),
    "lcs_mul": lambda b: _lcs(b, "o"),
    "ucs_add": lambda b: _ucs(b, "+"),
    "ucs_mul": lambda b: _ucs(b, "o"),
}


# ---------------------------------------------------------------------------
# Nilpotency verdicts


@dataclass(frozen=True)
class Verdict:
    holds: bool
    cls: Optional[int]


@dataclass(frozen=True)
class NilpotencyReport:
    left: Verdict
    right: Verdict
    strong: Verdict
    annihilator: Verdict
    nilpotent_type: bool
    cross_checks: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "left": {"holds": self.left.holds, "class": self.left.cls},
            "right": {"holds": self.right.holds, "class": self.right.cls},
            "strong": {"holds": self.strong.holds, "class": self.strong.cls},
            "annihilator": {
                "holds": self.annihilator.holds,
                "class": self.annihilator.cls,
            },
            "nilpotent_type": self.nilpotent_type,
            "cross_checks": list(self.cross_checks),
        }


def nilpotency_report(b: SkewBrace) -> NilpotencyReport:
    """All four nilpotency verdicts with redundant routes cross-asserted.

    The annihilator verdict is computed three ways (annihilator series up,
    gamma series down, bracketed gamma series down); disagreement raises
    CrossCheckFailed and always indicates an implementation bug.
    """
    left = series(b, "left")
    right = series(b, "right")
    strong = series(b, "strong")
    ann = series(b, "annihilator")
    gam = series(b, "gamma")
    gam_br = series(b, "gamma_bracket")

    if not (ann.terminates == gam.terminates == gam_br.terminates):
        raise CrossCheckFailed(
            "annihilator routes disagree: "
            f"ann={ann.terminates} gamma={gam.terminates} gamma_bracket={gam_br.terminates}"
        )
    # Gamma_n sits inside Gamma_[n+1] (positionwise on the two chains), and
    # consecutive bracketed terms nest; both checked on the computed chains.
    for i, term in enumerate(gam.chain):
        if i < len(gam_br.chain) and not term <= gam_br.chain[i]:
            raise CrossCheckFailed("gamma term escapes bracketed gamma term")
    if strong.terminates != (left.terminates and right.terminates):
        raise CrossCheckFailed("strong vs left-and-right disagree")
    if ann.terminates and not strong.terminates:
        raise CrossCheckFailed("annihilator nilpotent but not strongly nilpotent")

    flags = classify_flags(b)
    if flags.nilpotent_type and ann.terminates != strong.terminates:
        raise CrossCheckFailed("nilpotent type: annihilator vs strong disagree")

    checks = []
    if flags.nilpotent_type:
        # For finite braces of nilpotent type, left nilpotency is known to
        # match nilpotency of the multiplicative group; reported, and
        # asserted across whole catalogs by the campaign suites.
        checks.append(
            {
                "name": "left_iff_multiplicative_nilpotent",
                "holds": left.terminates == flags.mul_nilpotent,
            }
        )
        if left.terminates and right.terminates:
            checks.append(
                {
                    "name": "left_and_right_give_multiplicative_nilpotent",
                    "holds": flags.mul_nilpotent,
                }
            )

    return NilpotencyReport(
        left=Verdict(left.terminates, left.cls),
        right=Verdict(right.terminates, right.cls),
        strong=Verdict(strong.terminates, strong.cls),
        annihilator=Verdict(ann.terminates, ann.cls),
        nilpotent_type=flags.nilpotent_type,
        cross_checks=tuple(checks),
    )


# ---------------------------------------------------------------------------
# Distributivity inside the bracketed gamma chain


def gamma_distributivity_check(b: SkewBrace) -> dict:
    """For a in G[c-k] and q, w in G[k-1], star and additive commutators
    distribute over + and o in the second argument; all six identities are
    checked on every admissible triple."""
    gam_br = series(b, "gamma_bracket")
    if not gam_br.terminates:
        raise HypothesisUnmet("brace is not annihilator nilpotent")
    c = gam_br.cls
    assert c is not None
    chain = gam_br.chain  # chain[j-1] = G[j]

    checked = 0
    counterexamples: list[dict] = []
    add_t, mul_t, st = b.add.table, b.mul.table, b.star
    for k in range(2, c):
        a_set = chain[c - k - 1].indices()
        qw_set = chain[k - 2].indices()
        for a in a_set:
            for q in qw_set:
                for w in qw_set:
                    checked += 1
                    qpw = add_t[q][w]
                    qow = mul_t[q][w]
                    sum_star_a = add_t[st[a][q]][st[a][w]]
                    sum_star_right = add_t[st[q][a]][st[w][a]]
                    comm_sum = add_t[b.add_comm(a, q)][b.add_comm(a, w)]
                    results = (
                        st[a][qpw] == sum_star_a,
                        st[a][qow] == sum_star_a,
                        st[qow][a] == sum_star_right,
                        st[qpw][a] == sum_star_right,
                        b.add_comm(a, qpw) == comm_sum,
                        b.add_comm(a, qow) == comm_sum,
                    )
                    if not all(results):
                        counterexamples.append(
                            {
                                "k": k,
                                "triple": (a, q, w),
                                "identities": [i + 1 for i, r in enumerate(results) if not r],
                            }
                        )
    return {
        "class": c,
        "checked": checked,
        "counterexamples": counterexamples,
    }
