import random

import pytest

import cayleydist as cd


def cyclic(n: int) -> cd.GroupTable:
    return cd.make_group(cd.GroupKind.cyclic(n))


def dihedral(k: int) -> cd.GroupTable:
    return cd.make_group(cd.GroupKind.dihedral(k))


def random_permutation(n: int, rng: random.Random) -> cd.Permutation:
    img = list(range(n))
    rng.shuffle(img)
    return cd.Permutation(tuple(img))


@pytest.fixture
def z5():
    return cyclic(5)


@pytest.fixture
def z7():
    return cyclic(7)


@pytest.fixture
def paper_f7():
    """The order-7 isomorphism witnessing distance 18 < 24."""
    return cd.Permutation((0, 1, 4, 5, 2, 3, 6))


# Independent oracles: plain double loops, kept deliberately separate from
# the library implementations they check.


def oracle_dist(a: cd.GroupTable, b: cd.GroupTable) -> int:
    return sum(
        a.cells[x][y] != b.cells[x][y] for x in range(a.n) for y in range(a.n)
    )


def oracle_row_dist(a: cd.GroupTable, b: cd.GroupTable, g: int) -> int:
    return sum(a.cells[g][y] != b.cells[g][y] for y in range(a.n))


def oracle_mf(f, h: cd.GroupTable, k: cd.GroupTable) -> int:
    img = f.image if isinstance(f, cd.Permutation) else f
    return sum(
        img[h.cells[a][b]] != k.cells[img[a]][img[b]]
        for a in range(h.n)
        for b in range(h.n)
    )
