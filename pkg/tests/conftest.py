import pytest

from bracelab.brace import from_group_trivial, from_zn_quadratic
from bracelab.groups import cyclic, symmetric
from bracelab.perms import from_cycles, identity
from bracelab.ybe import involutive_from_sigma, permutation_brace


@pytest.fixture(scope="session")
def z4_quadratic():
    """The brace on Z/4 with x o y = x + y + 2xy."""
    return from_zn_quadratic(4, 2)


@pytest.fixture(scope="session")
def trivial_z2():
    return from_group_trivial(cyclic(2))


@pytest.fixture(scope="session")
def trivial_s3():
    return from_group_trivial(symmetric(3))


# sigma data of the five-point involutive solution whose permutation brace
# has additive group Z/6 and multiplicative group Sym(3)
FIVE_POINT_SIGMA = (
    identity(5),
    identity(5),
    identity(5),
    from_cycles(5, [(1, 2), (3, 4)]),
    from_cycles(5, [(0, 1), (3, 4)]),
)


@pytest.fixture(scope="session")
def five_point_solution():
    return involutive_from_sigma(FIVE_POINT_SIGMA)


@pytest.fixture(scope="session")
def five_point_brace(five_point_solution):
    brace, _ = permutation_brace(five_point_solution)
    return brace
