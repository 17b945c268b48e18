import random

import pytest
from hypothesis import given, settings, strategies as st

from latlab import (
    Diagram, canonical_form, chain, four_cells, grid, insert_fork, is_rectangular, is_semimodular,
    is_slim, is_sps, is_sr, validate_planar, wide_elements,
)
from latlab.catalog import m3, n5, s7
from latlab.construct import random_sr
from latlab.diagram import (
    InconsistentOrders, NotSemimodular, _segments_cross, is_slim_naive, left_boundary,
    right_boundary,
)


def test_inconsistent_orders_rejected():
    with pytest.raises(InconsistentOrders):
        Diagram.from_orders([[], [0]], [[], []])


def test_non_cover_edge_rejected():
    with pytest.raises(InconsistentOrders):
        Diagram.from_orders([[], [0], [0, 1]], [[1, 2], [2], []])


def test_chain_and_grid_are_planar():
    assert validate_planar(chain(5)).valid
    rep = validate_planar(grid(3, 4))
    assert rep.valid and len(rep.coords) == 12


def test_m3_is_planar_but_not_slim():
    assert validate_planar(m3()).valid
    res = is_slim(m3())
    assert not res and res.witness == (1, 2, 3)


def test_swapped_cover_order_is_not_planar():
    D = grid(2, 3)
    # reverse the upper order at the bottom only: the two boundary paths cross
    upper = [list(x) for x in D.upper]
    upper[0].reverse()
    lower = [list(x) for x in D.lower]
    E = Diagram.from_orders(lower, upper)
    assert not validate_planar(E).valid


def test_segments_sharing_an_endpoint_do_not_cross():
    assert not _segments_cross((0, 0), (1, 1), (0, 0), (-1, 1))
    assert _segments_cross((0, 0), (2, 2), (0, 0), (1, 1))      # overlap
    assert _segments_cross((0, 0), (2, 2), (0, 2), (2, 0))


@pytest.mark.parametrize("make,slim", [(lambda: grid(3, 4), True), (s7, True), (m3, False),
                                       (n5, True)])
def test_slimness(make, slim):
    D = make()
    assert bool(is_slim(D)) == slim == bool(is_slim_naive(D))


def test_semimodularity():
    assert is_semimodular(grid(3, 3))
    assert is_semimodular(s7())
    res = is_semimodular(n5())
    assert not res and len(res.witness) == 2


def test_rectangularity():
    res = is_rectangular(grid(3, 4))
    assert res and res.witness == (8, 3)
    assert not is_rectangular(chain(4))
    with pytest.raises(NotSemimodular):
        is_rectangular(n5())


def test_grid_cell_counts():
    for m in range(2, 6):
        for n in range(2, 6):
            assert len(four_cells(grid(m, n))) == (m - 1) * (n - 1)
    assert four_cells(chain(4)) == []


def test_s7_cells_flank_the_middle_edge():
    D = s7()
    upper_cells = [c for c in four_cells(D) if c.top == 6]
    assert [(c.left, c.right) for c in upper_cells] == [(3, 4), (4, 5)]


def test_sps_and_sr():
    assert is_sr(grid(3, 4))
    assert not is_sps(m3())
    assert is_sps(chain(2)) and not is_sr(chain(2))
    assert is_sr(s7())


def test_wide_elements():
    assert wide_elements(grid(3, 4)) == []
    assert wide_elements(s7()) == [6]


def test_boundaries():
    D = grid(2, 3)
    assert left_boundary(D) == [0, 3, 4, 5]
    assert right_boundary(D) == [0, 1, 2, 5]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_sr_diagrams_pass_every_predicate(seed):
    D, _ = random_sr(seed, 30, seed % 5)
    assert is_sr(D)
    assert is_slim(D) and is_slim_naive(D)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_canonical_form_is_label_invariant(seed):
    D, _ = random_sr(seed, 20, seed % 4)
    perm = list(range(D.n))
    random.Random(seed).shuffle(perm)
    E = D.relabel(perm)
    assert canonical_form(E) == canonical_form(D)
    assert canonical_form(D.mirror()) == canonical_form(D)


def test_canonical_form_examples():
    assert canonical_form(grid(2, 3)) == canonical_form(grid(3, 2))
    assert canonical_form(grid(2, 3)) != canonical_form(chain(6))
    assert canonical_form(insert_fork(grid(2, 2), four_cells(grid(2, 2))[0])) == canonical_form(s7())
