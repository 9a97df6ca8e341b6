import pytest

from torusfan.poset import (Cell, SimplicialPoset, simplex_boundary,
                            simplex_poset, sphere_poset, sphere_product_poset)


def s4_cells():
    """The doubled-interval poset: two vertices p, q and two rank-2 cells
    G, H, each covering both vertices."""
    return [
        Cell(0, 0, ()),
        Cell(1, 1, (0,), "p"),
        Cell(2, 1, (0,), "q"),
        Cell(3, 2, (1, 2), "G"),
        Cell(4, 2, (1, 2), "H"),
    ]


@pytest.fixture
def s4_poset():
    return SimplicialPoset(2, s4_cells())


def builder_family(max_rank=4):
    """The named example posets of rank <= max_rank, keyed for reporting."""
    out = {}
    for n in range(2, max_rank + 1):
        out[f"simplex_boundary({n})"] = simplex_boundary(n)
        out[f"sphere_poset({n})"] = sphere_poset(n)
    for k in range(1, max_rank):
        for l in range(k, max_rank):
            if k + l <= max_rank:
                out[f"sphere_product_poset({k},{l})"] = sphere_product_poset(k, l)
    return out


@pytest.fixture(scope="session")
def examples_rank4():
    return builder_family(4)


@pytest.fixture(scope="session")
def disc():
    return simplex_poset(3)
