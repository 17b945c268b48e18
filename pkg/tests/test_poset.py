import itertools

import pytest
from hypothesis import given, settings, strategies as st

from latlab.poset import (
    R3, CycleDetected, NotALattice, as_lattice, brute_force_embeddings, close_order,
    cover_preserving_embedding, downset_lattice, is_cover_preserving_embedding, join_irreducibles,
    poset_from_leq,
)


def test_antichain():
    P = close_order([], 3)
    assert set(P.leq_pairs()) == {(0, 0), (1, 1), (2, 2)}
    assert P.covers == frozenset()


def test_chain_has_six_leq_pairs():
    P = close_order([(0, 1), (1, 2)], 3)
    assert len(list(P.leq_pairs())) == 6


def test_transitive_edge_is_dropped():
    P = close_order([(0, 1), (1, 2), (0, 2)], 3)
    assert P.covers == {(0, 1), (1, 2)}
    assert P.leq(0, 2)


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        close_order([(0, 1), (1, 2), (2, 0)], 3)


def test_chain_lattice_tables():
    L = as_lattice(close_order([(0, 1), (1, 2)], 3))
    for a, b in itertools.product(range(3), repeat=2):
        assert L.join(a, b) == max(a, b)
        assert L.meet(a, b) == min(a, b)


def test_antichain_is_not_a_lattice():
    with pytest.raises(NotALattice):
        as_lattice(close_order([], 2))


def test_r3_is_not_a_lattice():
    with pytest.raises(NotALattice):
        as_lattice(R3)


def test_join_irreducibles_of_chain_and_square():
    C4 = as_lattice(close_order([(0, 1), (1, 2), (2, 3)], 4))
    assert join_irreducibles(C4) == [1, 2, 3]
    B2 = as_lattice(close_order([(0, 1), (0, 2), (1, 3), (2, 3)], 4))
    assert join_irreducibles(B2) == [1, 2]


@pytest.mark.parametrize("covers,n", [
    ([(0, 2), (1, 2), (1, 3)], 4),          # the N poset
    ([(0, 1), (0, 2)], 3),                  # V
    ([], 3),                                # antichain: Boolean cube
    ([(0, 1), (1, 2), (0, 3)], 4),
])
def test_downsets_regenerate_the_poset(covers, n):
    P = close_order(covers, n)
    D, sets = downset_lattice(P)
    ji = join_irreducibles(D)
    assert len(ji) == n
    # Ji(D) ordered by inclusion is isomorphic to P via the new top element
    top_of = {j: (sets[j] & ~max((sets[i] for i in D.lower_covers[j]), default=0)).bit_length() - 1
              for j in ji}
    assert sorted(top_of.values()) == list(range(n))
    for i in ji:
        for j in ji:
            assert D.leq(i, j) == P.leq(top_of[i], top_of[j])


def test_r3_shape():
    assert R3.n == 9
    assert len(R3.covers) == 12
    assert sorted(len(R3.upper_covers[x]) for x in range(9)) == [0, 0, 0, 2, 2, 2, 2, 2, 2]


def test_r3_into_itself_is_identity():
    phi = cover_preserving_embedding(R3, R3)
    assert phi == tuple(range(9))


def test_v_into_antichain_absent():
    V = close_order([(0, 1), (0, 2)], 3)
    assert cover_preserving_embedding(V, close_order([], 5)) is None


def test_cover_preservation_is_stronger_than_order_embedding():
    # 0 < 1 embeds in a 3-chain only by skipping when covers are ignored
    C2 = close_order([(0, 1)], 2)
    Q = close_order([(0, 1), (1, 2)], 3)
    assert is_cover_preserving_embedding(C2, Q, (0, 1))
    assert not is_cover_preserving_embedding(C2, Q, (0, 2))


def _random_poset(draw, n):
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return close_order([(a, b) for a, b in pairs if a < b], n)


@st.composite
def poset_pairs(draw):
    p = draw(st.integers(1, 4))
    q = draw(st.integers(p, 6))
    return _random_poset(draw, p), _random_poset(draw, q)


@settings(max_examples=150, deadline=None)
@given(poset_pairs(), st.booleans())
def test_backtracking_matches_brute_force(pq, reflect):
    P, Q = pq
    found = cover_preserving_embedding(P, Q, reflect)
    exists = next(brute_force_embeddings(P, Q, reflect), None) is not None
    assert (found is not None) == exists
    if found is not None:
        assert is_cover_preserving_embedding(P, Q, found, reflect)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.lists(
    st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))))
def test_close_order_matches_leq_closure(arg):
    n, pairs = arg
    pairs = [(a, b) for a, b in pairs if a < b]
    P = close_order(pairs, n)
    Q = poset_from_leq(n, lambda a, b: P.leq(a, b))
    assert P.covers == Q.covers
    # covers are exactly the non-transitive comparabilities
    for a, b in itertools.product(range(n), repeat=2):
        between = any(P.lt(a, c) and P.lt(c, b) for c in range(n))
        assert P.is_cover(a, b) == (P.lt(a, b) and not between)
