"""Congruences of finite lattices by union-find closure.

This is the trusted oracle: it knows nothing about planar diagrams or swings.
Colors are identified by partition equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .poset import bits, close_order


class NotPrime(ValueError):
    pass


class CapExceeded(ValueError):
    pass


def _lattice(obj):
    return getattr(obj, "lattice", obj)


@dataclass(frozen=True)
class Congruence:
    """A partition given by ``labels[x]`` = least element of x's block."""

    labels: tuple

    @property
    def n(self):
        return len(self.labels)

    def collapses(self, a, b):
        return self.labels[a] == self.labels[b]

    @property
    def blocks(self):
        out = {}
        for x, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(x)
        return sorted(out.values())

    def is_trivial(self):
        return all(lab == x for x, lab in enumerate(self.labels))

    def refines(self, other):
        """True iff every pair collapsed here is collapsed by ``other``."""
        lab = other.labels
        return all(lab[x] == lab[m] for x, m in enumerate(self.labels))

    def join(self, other):
        parent = list(self.labels)
        for x, m in enumerate(other.labels):
            _union(parent, x, m)
        return Congruence(_normalize(parent))


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent, a, b):
    ra, rb = _find(parent, a), _find(parent, b)
    if ra == rb:
        return False
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb
    return True


def _normalize(parent):
    return tuple(_find(parent, x) for x in range(len(parent)))


def congruence_generated(L, pairs):
    """Least congruence collapsing every pair in ``pairs``.

    Each merged pair (x, y) is pushed once; popping it applies the two
    substitution rules x∨z ≡ y∨z and x∧z ≡ y∧z for every z.
    """
    L = _lattice(L)
    J, M = L.join_table, L.meet_table
    n = L.n
    parent = list(range(n))
    queue = []
    for a, b in pairs:
        if _union(parent, a, b):
            queue.append((a, b))
    while queue:
        x, y = queue.pop()
        for row_x, row_y in ((J[x], J[y]), (M[x], M[y])):
            for z in range(n):
                u = row_x[z]
                v = row_y[z]
                if u != v and _union(parent, u, v):
                    queue.append((u, v))
    return Congruence(_normalize(parent))


def principal_congruence(L, p):
    """con(p): the least congruence collapsing the prime interval p."""
    L = _lattice(L)
    a, b = p
    if not L.is_cover(a, b):
        raise NotPrime(f"{tuple(p)} is not a covering pair")
    return congruence_generated(L, [(a, b)])


def collapses(L, p, q):
    return principal_congruence(L, p).collapses(q[0], q[1])


def is_compatible(L, cong):
    """Full substitution-rule audit of a partition."""
    L = _lattice(L)
    lab = cong.labels
    n = L.n
    for x in range(n):
        y = lab[x]
        if x == y:
            continue
        for z in range(n):
            if lab[L.join_table[x][z]] != lab[L.join_table[y][z]]:
                return False
            if lab[L.meet_table[x][z]] != lab[L.meet_table[y][z]]:
                return False
    return True


def _square_perspective_classes(L, edges):
    """Group edges that are opposite sides of a covering square.

    Opposite sides of a covering square are perspective, so they generate the
    same principal congruence; this only saves closure runs.
    """
    index = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))
    for b in range(L.n):
        ups = L.upper_covers[b]
        for i, l in enumerate(ups):
            for r in ups[i + 1:]:
                t = L.join_table[l][r]
                if L.is_cover(l, t) and L.is_cover(r, t):
                    _union(parent, index[(b, l)], index[(r, t)])
                    _union(parent, index[(b, r)], index[(l, t)])
    return [_find(parent, i) for i in range(len(edges))]


@dataclass(frozen=True, eq=False)
class JiPoset:
    """Join-irreducible congruences (colors) with their order and edge coloring."""

    edges: tuple
    colors: tuple
    poset: object
    color_index: tuple

    @property
    def n(self):
        return len(self.colors)

    def color_of(self, edge):
        return self.color_index[self._edge_pos[tuple(edge)]]

    @cached_property
    def _edge_pos(self):
        return {tuple(e): i for i, e in enumerate(self.edges)}

    def leq(self, i, j):
        return self.poset.leq(i, j)

    def is_cover(self, i, j):
        return self.poset.is_cover(i, j)

    def upper_covers(self, i):
        return self.poset.upper_covers[i]

    def edges_of(self, i):
        return [e for e, c in zip(self.edges, self.color_index) if c == i]


def ji_con_poset(D):
    L = _lattice(D)
    edges = tuple(getattr(D, "edges", None) or sorted(L.poset.covers))
    classes = _square_perspective_classes(L, [tuple(e) for e in edges])
    by_labels = {}
    colors = []
    rep_color = {}
    color_index = []
    for i, e in enumerate(edges):
        rep = classes[i]
        if rep not in rep_color:
            cong = principal_congruence(L, edges[rep])
            if cong.labels not in by_labels:
                by_labels[cong.labels] = len(colors)
                colors.append(cong)
            rep_color[rep] = by_labels[cong.labels]
        color_index.append(rep_color[rep])
    pairs = [(i, j) for i, ci in enumerate(colors) for j, cj in enumerate(colors)
             if i != j and ci.refines(cj)]
    poset = close_order(pairs, len(colors))
    return JiPoset(edges, tuple(colors), poset, tuple(color_index))


def edge_collapse_masks(D):
    """Oracle collapse relation: bit q of entry p is set iff con(p) collapses q.

    Runs one closure per edge with no shortcuts.
    """
    L = _lattice(D)
    edges = tuple(getattr(D, "edges", None) or sorted(L.poset.covers))
    out = []
    for p in edges:
        lab = principal_congruence(L, p).labels
        mask = 0
        for j, (a, b) in enumerate(edges):
            if lab[a] == lab[b]:
                mask |= 1 << j
        out.append(mask)
    return out


@dataclass(frozen=True, eq=False)
class ConLattice:
    congruences: tuple
    poset: object

    def join_irreducible_indices(self):
        return [i for i in range(len(self.congruences)) if len(self.poset.lower_covers[i]) == 1]


def con_lattice(D, cap=14):
    """Every congruence of a small lattice, ordered by refinement.

    Exponential; meant as a test oracle only.
    """
    L = _lattice(D)
    if L.n > cap:
        raise CapExceeded(f"{L.n} elements exceeds the cap of {cap}")
    seeds = set()
    for a in range(L.n):
        for b in bits(L.poset.up[a]):
            if a != b:
                seeds.add(congruence_generated(L, [(a, b)]))
    found = {Congruence(tuple(range(L.n)))} | seeds
    frontier = list(found)
    while frontier:
        nxt = []
        for c in frontier:
            for s in seeds:
                j = c.join(s)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    order = sorted(found, key=lambda c: (-len(set(c.labels)), c.labels))
    pairs = [(i, j) for i, ci in enumerate(order) for j, cj in enumerate(order)
             if i != j and ci.refines(cj)]
    return ConLattice(tuple(order), close_order(pairs, len(order)))
