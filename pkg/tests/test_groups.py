import random
from itertools import permutations

import pytest

from bracelab.errors import BudgetExceeded, NoIdentity, NotAssociative, NotLatin
from bracelab.groups import (
    all_automorphisms,
    automorphism_group,
    center,
    cyclic,
    dihedral,
    direct_product,
    isomorphic_groups,
    lower_central_series,
    nilpotency_class,
    opposite,
    quaternion8,
    relabeled,
    subgroup_closure,
    symmetric,
    upper_central_series,
    verify_group,
)
from bracelab.perms import compose, invert

# a Latin square with identity that is not a group (first bad triple (1,1,2))
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


def test_z2_table_validates():
    g, relabel = verify_group([[0, 1], [1, 0]])
    assert g.n == 2
    assert g.inv == (0, 1)
    assert relabel == (0, 1)


def test_repeated_entry_is_not_latin():
    with pytest.raises(NotLatin) as exc:
        verify_group([[0, 1], [1, 1]])
    assert exc.value.index == 1


def test_nonassociative_loop_rejected_with_first_triple():
    with pytest.raises(NotAssociative) as exc:
        verify_group(NONASSOC_LOOP)
    assert exc.value.witness == (1, 1, 2)


def test_no_identity():
    # Latin square in which no row equals 0..n-1
    with pytest.raises(NoIdentity):
        verify_group([[1, 0, 2], [0, 2, 1], [2, 1, 0]])


def test_identity_relabeled_to_zero():
    # Z/3 written with identity at index 2
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    g, relabel = verify_group(table)
    assert relabel[2] == 0
    assert g.table[0] == (0, 1, 2)
    assert isomorphic_groups(g, cyclic(3)) is not None


def test_sym3_from_direct_composition():
    # oracle: compose the six permutations of three points directly
    perms = sorted(permutations(range(3)))
    table = [
        [perms.index(tuple(p[q[i]] for i in range(3))) for q in perms]
        for p in perms
    ]
    g, relabel = verify_group(table)
    assert relabel == tuple(range(6))
    assert not g.is_abelian()
    assert isomorphic_groups(g, symmetric(3)) is not None


def test_inverses_are_two_sided():
    g = dihedral(5)
    for a in range(g.n):
        assert g.op(a, g.inv[a]) == 0
        assert g.op(g.inv[a], a) == 0


def test_element_orders_and_exponent():
    z6 = cyclic(6)
    assert z6.element_orders() == (1, 6, 3, 2, 3, 6)
    assert z6.exponent() == 6
    assert symmetric(3).exponent() == 6


def test_carrier_budget():
    with pytest.raises(BudgetExceeded):
        verify_group([[0] * 300 for _ in range(300)])


def test_center_and_series():
    s3 = symmetric(3)
    assert center(s3) == frozenset({0})
    assert nilpotency_class(s3) is None
    assert [sorted(t) for t in upper_central_series(s3)] == [[0]]
    d4 = dihedral(4)
    assert nilpotency_class(d4) == 2
    assert nilpotency_class(quaternion8()) == 2
    assert nilpotency_class(cyclic(8)) == 1
    assert nilpotency_class(cyclic(1)) == 0
    chain = lower_central_series(d4)
    assert [len(t) for t in chain] == [8, 2, 1]


def test_subgroup_closure():
    z12 = cyclic(12)
    assert sorted(subgroup_closure(z12, [4])) == [0, 4, 8]
    assert sorted(subgroup_closure(z12, [])) == [0]
    s3 = symmetric(3)
    # element 1 is the transposition fixing point 0
    assert len(subgroup_closure(s3, [1])) == 2


def test_not_isomorphic_same_order():
    assert isomorphic_groups(cyclic(4), direct_product(cyclic(2), cyclic(2))) is None
    assert isomorphic_groups(dihedral(4), quaternion8()) is None
    assert isomorphic_groups(cyclic(6), symmetric(3)) is None


def test_isomorphism_found_and_symmetric():
    rng = random.Random(11)
    for g in (cyclic(6), dihedral(4), symmetric(3)):
        relabel = tuple([0] + rng.sample(range(1, g.n), g.n - 1))
        h = relabeled(g, relabel)
        phi = isomorphic_groups(g, h)
        assert phi is not None
        # phi is a homomorphism both ways
        back = invert(phi)
        for a in range(g.n):
            for b in range(g.n):
                assert phi[g.op(a, b)] == h.op(phi[a], phi[b])
                assert back[h.op(a, b)] == g.op(back[a], back[b])


def test_opposite_of_abelian_is_itself():
    z5 = cyclic(5)
    assert opposite(z5).table == z5.table
    s3 = symmetric(3)
    assert opposite(s3).table != s3.table
    assert isomorphic_groups(opposite(s3), s3) is not None


def test_automorphism_counts():
    assert automorphism_group(cyclic(2))[1] == 1
    # oracle: units mod 4
    assert automorphism_group(cyclic(4))[1] == 2
    # oracle: |GL(3,2)| = (8-1)(8-2)(8-4)
    e8 = direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2))
    assert automorphism_group(e8)[1] == (8 - 1) * (8 - 2) * (8 - 4)


def test_automorphisms_are_automorphisms():
    g = dihedral(4)
    auts = all_automorphisms(g)
    assert len(auts) == 8  # Aut(D4) = D4
    for phi in auts:
        for a in range(g.n):
            for b in range(g.n):
                assert phi[g.op(a, b)] == g.op(phi[a], phi[b])
    # closure under composition
    aut_set = set(auts)
    for p in auts:
        for q in auts:
            assert compose(p, q) in aut_set
