"""Finite posets and lattices on dense integer ids.

Order relations are stored as Python ints used as bitsets: ``up[a]`` has bit
``b`` set iff ``a <= b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class PosetError(ValueError):
    pass


class CycleDetected(PosetError):
    pass


class DuplicateElement(PosetError):
    pass


class NotALattice(PosetError):
    def __init__(self, a, b, what):
        super().__init__(f"elements {a} and {b} have no {what}")
        self.pair = (a, b)
        self.what = what


def bits(x):
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def popcount(x):
    return bin(x).count("1")


@dataclass(frozen=True, eq=False)
class Poset:
    n: int
    covers: frozenset
    up: tuple
    down: tuple
    topo: tuple

    def leq(self, a, b):
        return (self.up[a] >> b) & 1 == 1

    def lt(self, a, b):
        return a != b and (self.up[a] >> b) & 1 == 1

    def comparable(self, a, b):
        return self.leq(a, b) or self.leq(b, a)

    def is_cover(self, a, b):
        return (a, b) in self.covers

    @cached_property
    def upper_covers(self):
        ups = [[] for _ in range(self.n)]
        for a, b in sorted(self.covers):
            ups[a].append(b)
        return tuple(tuple(u) for u in ups)

    @cached_property
    def lower_covers(self):
        dns = [[] for _ in range(self.n)]
        for a, b in sorted(self.covers, key=lambda ab: (ab[1], ab[0])):
            dns[b].append(a)
        return tuple(tuple(d) for d in dns)

    def leq_pairs(self):
        return {(a, b) for a in range(self.n) for b in bits(self.up[a])}

    def minimal(self):
        return [a for a in range(self.n) if not self.lower_covers[a]]

    def maximal(self):
        return [a for a in range(self.n) if not self.upper_covers[a]]

    def __repr__(self):
        return f"Poset(n={self.n}, covers={sorted(self.covers)})"


def close_order(covers, n):
    """Build a Poset from generating pairs ``(a, b)`` meaning ``a < b``.

    Pairs implied transitively are dropped from the cover relation.
    """
    succ = [set() for _ in range(n)]
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise PosetError(f"pair ({a}, {b}) references an element outside 0..{n - 1}")
        if a == b:
            raise CycleDetected(f"self-loop at {a}")
        succ[a].add(b)

    indeg = [0] * n
    for a in range(n):
        for b in succ[a]:
            indeg[b] += 1
    stack = [a for a in range(n - 1, -1, -1) if indeg[a] == 0]
    topo = []
    while stack:
        a = stack.pop()
        topo.append(a)
        for b in sorted(succ[a], reverse=True):
            indeg[b] -= 1
            if indeg[b] == 0:
                stack.append(b)
    if len(topo) != n:
        stuck = sorted(set(range(n)) - set(topo))
        raise CycleDetected(f"order relation has a cycle through {stuck}")

    up = [0] * n
    for a in reversed(topo):
        mask = 1 << a
        for b in succ[a]:
            mask |= up[b]
        up[a] = mask
    down = [0] * n
    for a in range(n):
        for b in bits(up[a]):
            down[b] |= 1 << a

    strict = [up[a] & ~(1 << a) for a in range(n)]
    reduced = set()
    for a in range(n):
        above = 0
        for b in bits(strict[a]):
            above |= strict[b]
        for b in bits(strict[a] & ~above):
            reduced.add((a, b))
    return Poset(n, frozenset(reduced), tuple(up), tuple(down), tuple(topo))


def poset_from_leq(n, leq):
    """Poset from a full (or generating) relation given as a callable or pair set."""
    if callable(leq):
        pairs = [(a, b) for a in range(n) for b in range(n) if a != b and leq(a, b)]
    else:
        pairs = [(a, b) for a, b in leq if a != b]
    return close_order(pairs, n)


@dataclass(frozen=True, eq=False)
class Lattice:
    poset: Poset
    join_table: tuple
    meet_table: tuple
    bottom: int
    top: int

    @property
    def n(self):
        return self.poset.n

    def join(self, a, b):
        return self.join_table[a][b]

    def meet(self, a, b):
        return self.meet_table[a][b]

    def leq(self, a, b):
        return self.poset.leq(a, b)

    def is_cover(self, a, b):
        return self.poset.is_cover(a, b)

    @property
    def upper_covers(self):
        return self.poset.upper_covers

    @property
    def lower_covers(self):
        return self.poset.lower_covers


def _bound_table(mat, which):
    # mat[a, x] = a <= x for joins; transpose for meets
    n = mat.shape[0]
    count = mat.sum(axis=1)
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        bounds = mat[a][None, :] & mat
        score = np.where(bounds, count, -1)
        best = score.argmax(axis=1)
        ok = bounds[np.arange(n), best] & (bounds.sum(axis=1) == count[best])
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            raise NotALattice(a, b, which)
        table[a] = best
    return tuple(tuple(int(v) for v in row) for row in table)


def as_lattice(p):
    """Compute join and meet tables; raise NotALattice if a pair lacks one."""
    n = p.n
    if n == 0:
        raise NotALattice(None, None, "elements at all")
    mat = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in bits(p.up[a]):
            mat[a, b] = True
    join = _bound_table(mat, "least upper bound")
    meet = _bound_table(mat.T.copy(), "greatest lower bound")
    bottom = meet[0][0]
    for a in range(n):
        bottom = meet[bottom][a]
    top = join[0][0]
    for a in range(n):
        top = join[top][a]
    return Lattice(p, join, meet, bottom, top)


def join_irreducibles(lat):
    return [a for a in range(lat.n) if len(lat.lower_covers[a]) == 1]


def downset_lattice(p):
    """The distributive lattice of down-sets of ``p``, ordered by inclusion.

    Returns ``(lattice, downsets)`` where ``downsets[i]`` is the bitmask of
    element ``i``.
    """
    sets = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for a in range(p.n):
                if not (s >> a) & 1 and (p.down[a] & ~(1 << a)) & ~s == 0:
                    t = s | (1 << a)
                    if t not in sets:
                        sets.add(t)
                        nxt.append(t)
        frontier = nxt
    order = sorted(sets, key=lambda s: (popcount(s), s))
    index = {s: i for i, s in enumerate(order)}
    pairs = [(index[s], index[s | (1 << a)])
             for s in order for a in range(p.n) if (s | (1 << a)) in index and not (s >> a) & 1]
    return as_lattice(close_order(pairs, len(order))), order


def _embedding_ok(P, Q, phi, reflect_covers):
    for u in range(P.n):
        for v in range(P.n):
            if P.leq(u, v) != Q.leq(phi[u], phi[v]):
                return False
            if P.is_cover(u, v) and not Q.is_cover(phi[u], phi[v]):
                return False
            if reflect_covers and Q.is_cover(phi[u], phi[v]) and not P.is_cover(u, v):
                return False
    return True


def is_cover_preserving_embedding(P, Q, phi, reflect_covers=False):
    """Pointwise verifier, independent of the search."""
    phi = list(phi)
    if len(phi) != P.n or len(set(phi)) != P.n:
        return False
    if any(not 0 <= x < Q.n for x in phi):
        return False
    return _embedding_ok(P, Q, phi, reflect_covers)


def brute_force_embeddings(P, Q, reflect_covers=False):
    for phi in itertools.permutations(range(Q.n), P.n):
        if _embedding_ok(P, Q, phi, reflect_covers):
            yield phi


def _search_order(P):
    nbrs = [set(P.upper_covers[u]) | set(P.lower_covers[u]) for u in range(P.n)]
    deg = [len(s) for s in nbrs]
    order = []
    placed = set()
    while len(order) < P.n:
        best = max((u for u in range(P.n) if u not in placed),
                   key=lambda u: (len(nbrs[u] & placed), deg[u], -u))
        order.append(best)
        placed.add(best)
    return order


def cover_preserving_embedding(P, Q, reflect_covers=False):
    """Find an order-embedding of P into Q that maps covers to covers.

    Returns a tuple ``phi`` with ``phi[u]`` the image of ``u``, or None.
    """
    if P.n > Q.n:
        return None
    order = _search_order(P)
    n_up_p = [len(P.upper_covers[u]) for u in range(P.n)]
    n_dn_p = [len(P.lower_covers[u]) for u in range(P.n)]
    n_up_q = [len(Q.upper_covers[v]) for v in range(Q.n)]
    n_dn_q = [len(Q.lower_covers[v]) for v in range(Q.n)]
    cand = [[v for v in range(Q.n) if n_up_q[v] >= n_up_p[u] and n_dn_q[v] >= n_dn_p[u]]
            for u in range(P.n)]
    phi = [-1] * P.n
    used = set()

    def fits(u, v):
        for w in order:
            x = phi[w]
            if x < 0:
                continue
            if P.leq(u, w) != Q.leq(v, x) or P.leq(w, u) != Q.leq(x, v):
                return False
            if P.is_cover(u, w) and not Q.is_cover(v, x):
                return False
            if P.is_cover(w, u) and not Q.is_cover(x, v):
                return False
            if reflect_covers and ((Q.is_cover(v, x) and not P.is_cover(u, w))
                                   or (Q.is_cover(x, v) and not P.is_cover(w, u))):
                return False
        return True

    def extend(k):
        if k == len(order):
            return True
        u = order[k]
        for v in cand[u]:
            if v in used or not fits(u, v):
                continue
            phi[u] = v
            used.add(v)
            if extend(k + 1):
                return True
            used.discard(v)
            phi[u] = -1
        return False

    return tuple(phi) if extend(0) else None


R3_NAMES = ("a", "b", "c", "d", "e", "f", "x", "y", "z")


def _r3():
    ix = {name: i for i, name in enumerate(R3_NAMES)}
    pairs = ["ab", "ac", "dc", "df", "eb", "ef",  # crown
             "xa", "xf", "ye", "yc", "zb", "zd"]  # pendants
    return close_order([(ix[s[0]], ix[s[1]]) for s in pairs], len(R3_NAMES))


R3 = _r3()
