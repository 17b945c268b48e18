"""Planar lattice diagrams and the structural predicates on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any, NamedTuple

from .poset import as_lattice, close_order


class DiagramError(ValueError):
    pass


class InconsistentOrders(DiagramError):
    pass


class NotSemimodular(DiagramError):
    pass


class PrimeInterval(NamedTuple):
    zero: int
    one: int

    def __str__(self):
        return f"[{self.zero},{self.one}]"


class FourCell(NamedTuple):
    top: int
    left: int
    right: int
    bottom: int


@dataclass
class CheckResult:
    """A predicate outcome that is truthy iff the predicate holds."""

    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class Diagram:
    lattice: Any
    lower: tuple
    upper: tuple
    name: str = field(default="")

    @classmethod
    def from_orders(cls, lower, upper, name=""):
        """Build a diagram from left-to-right lower and upper cover lists."""
        n = len(lower)
        if len(upper) != n:
            raise InconsistentOrders("lower and upper lists have different lengths")
        pairs = set()
        for j in range(n):
            if len(set(lower[j])) != len(lower[j]):
                raise InconsistentOrders(f"element {j} lists a lower cover twice")
            if len(set(upper[j])) != len(upper[j]):
                raise InconsistentOrders(f"element {j} lists an upper cover twice")
            for i in lower[j]:
                if not 0 <= i < n or j not in upper[i]:
                    raise InconsistentOrders(f"{i} is below {j} but {j} is not above {i}")
                pairs.add((i, j))
            for k in upper[j]:
                if not 0 <= k < n or j not in lower[k]:
                    raise InconsistentOrders(f"{k} is above {j} but {j} is not below {k}")
        poset = close_order(pairs, n)
        if poset.covers != pairs:
            extra = sorted(pairs - poset.covers)[0]
            raise InconsistentOrders(f"listed edge {extra} is not a covering pair")
        lat = as_lattice(poset)
        return cls(lat, tuple(tuple(x) for x in lower), tuple(tuple(x) for x in upper), name)

    @property
    def n(self):
        return self.lattice.n

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def top(self):
        return self.lattice.top

    @property
    def J(self):
        return self.lattice.join_table

    @property
    def M(self):
        return self.lattice.meet_table

    def join(self, a, b):
        return self.lattice.join_table[a][b]

    def meet(self, a, b):
        return self.lattice.meet_table[a][b]

    def leq(self, a, b):
        return self.lattice.poset.leq(a, b)

    def is_cover(self, a, b):
        return self.lattice.poset.is_cover(a, b)

    @cached_property
    def edges(self):
        return tuple(PrimeInterval(a, b) for a, b in sorted(self.lattice.poset.covers))

    @cached_property
    def edge_index(self):
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def height(self):
        h = [0] * self.n
        for a in self.lattice.poset.topo:
            for b in self.upper[a]:
                h[b] = max(h[b], h[a] + 1)
        return tuple(h)

    def mirror(self):
        return Diagram(self.lattice, tuple(x[::-1] for x in self.lower),
                       tuple(x[::-1] for x in self.upper), self.name)

    def relabel(self, perm):
        """Diagram with element ``i`` renamed to ``perm[i]``."""
        inv = [0] * self.n
        for i, p in enumerate(perm):
            inv[p] = i
        lower = [tuple(perm[x] for x in self.lower[inv[j]]) for j in range(self.n)]
        upper = [tuple(perm[x] for x in self.upper[inv[j]]) for j in range(self.n)]
        return Diagram.from_orders(lower, upper, self.name)

    def __repr__(self):
        return f"Diagram({self.name or '?'}, n={self.n})"


def left_boundary(D):
    chain = [D.bottom]
    while D.upper[chain[-1]]:
        chain.append(D.upper[chain[-1]][0])
    return chain


def right_boundary(D):
    chain = [D.bottom]
    while D.upper[chain[-1]]:
        chain.append(D.upper[chain[-1]][-1])
    return chain


def doubly_irreducible(D, a):
    return len(D.lower[a]) == 1 and len(D.upper[a]) == 1


# -- planarity -----------------------------------------------------------

def _reverse_postorder(D, rightmost_first):
    seen = [False] * D.n
    post = []
    stack = [(D.bottom, iter(D.upper[D.bottom][::-1] if rightmost_first else D.upper[D.bottom]))]
    seen[D.bottom] = True
    while stack:
        a, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            post.append(a)
        elif not seen[nxt]:
            seen[nxt] = True
            ups = D.upper[nxt][::-1] if rightmost_first else D.upper[nxt]
            stack.append((nxt, iter(ups)))
    post.reverse()
    return post


def _orient(p, q, r):
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p, q, r):
    return min(p[0], r[0]) <= q[0] <= max(p[0], r[0]) and min(p[1], r[1]) <= q[1] <= max(p[1], r[1])


def _segments_cross(p1, p2, p3, p4):
    """True if the closed segments meet anywhere other than a shared endpoint."""
    shared = {p1, p2} & {p3, p4}
    if shared:
        s = shared.pop()
        a = p2 if p1 == s else p1
        b = p4 if p3 == s else p3
        if _orient(s, a, b) != 0:
            return False
        # collinear edges from a common end overlap iff they leave in the same direction
        return (a[0] - s[0]) * (b[0] - s[0]) + (a[1] - s[1]) * (b[1] - s[1]) > 0
    o1, o2 = _orient(p1, p2, p3), _orient(p1, p2, p4)
    o3, o4 = _orient(p3, p4, p1), _orient(p3, p4, p2)
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and _on_segment(p1, p3, p2)) or (o2 == 0 and _on_segment(p1, p4, p2))
            or (o3 == 0 and _on_segment(p3, p1, p4)) or (o4 == 0 and _on_segment(p3, p2, p4)))


def _slope_order_ok(coords, a, seq):
    # left-to-right means strictly increasing dx/|dy|
    xa, ya = coords[a]
    for c1, c2 in zip(seq, seq[1:]):
        dx1, dy1 = coords[c1][0] - xa, abs(coords[c1][1] - ya)
        dx2, dy2 = coords[c2][0] - xa, abs(coords[c2][1] - ya)
        if dx1 * dy2 >= dx2 * dy1:
            return False
    return True


@dataclass
class PlanarityReport:
    valid: bool
    coords: dict
    witness: Any = None

    def __bool__(self):
        return self.valid


def _check_drawing(D, coords):
    for a in range(D.n):
        if not _slope_order_ok(coords, a, D.upper[a]):
            return ("upper-order", a)
        if not _slope_order_ok(coords, a, D.lower[a]):
            return ("lower-order", a)
    segs = [(e, coords[e.zero], coords[e.one]) for e in D.edges]
    for (e1, p1, p2), (e2, p3, p4) in combinations(segs, 2):
        # segments whose y-ranges are disjoint cannot meet
        if max(p1[1], p2[1]) < min(p3[1], p4[1]) or max(p3[1], p4[1]) < min(p1[1], p2[1]):
            continue
        if _segments_cross(p1, p2, p3, p4):
            return ("crossing", e1, e2)
    return None


def drawing(D, dominance=False):
    """Integer coordinates realizing the left-to-right cover orders.

    x is the difference of ranks in the left-first and right-first linear
    extensions; y is the height unless ``dominance`` is set, in which case the
    rank sum is used.
    """
    left_first = _reverse_postorder(D, rightmost_first=True)
    right_first = _reverse_postorder(D, rightmost_first=False)
    pos_l = {a: i for i, a in enumerate(left_first)}
    pos_r = {a: i for i, a in enumerate(right_first)}
    if dominance:
        return {a: (pos_l[a] - pos_r[a], pos_l[a] + pos_r[a]) for a in range(D.n)}
    h = D.height
    return {a: (pos_l[a] - pos_r[a], h[a]) for a in range(D.n)}


def validate_planar(D):
    """Try to draw D with straight edges honoring its cover orders.

    Valid iff one of the two candidate drawings has no crossing and agrees with
    every cover order; otherwise the witness from the height drawing is kept.
    """
    for a in range(D.n):
        for b in D.upper[a]:
            if a not in D.lower[b]:
                raise InconsistentOrders(f"{b} above {a} but not listed below")
    coords = drawing(D)
    witness = _check_drawing(D, coords)
    if witness is None:
        return PlanarityReport(True, coords)
    alt = drawing(D, dominance=True)
    if _check_drawing(D, alt) is None:
        return PlanarityReport(True, alt)
    return PlanarityReport(False, coords, witness)


# -- slimness and semimodularity -----------------------------------------

def is_slim_naive(D):
    """Triple sweep for an M3 sublattice {m, u, v, w, j}."""
    L = D.lattice
    for u, v, w in combinations(range(D.n), 3):
        if L.poset.comparable(u, v) or L.poset.comparable(u, w) or L.poset.comparable(v, w):
            continue
        m = D.meet(u, v)
        j = D.join(u, v)
        if D.meet(u, w) == m == D.meet(v, w) and D.join(u, w) == j == D.join(v, w):
            return CheckResult(False, (u, v, w))
    return CheckResult(True)


def is_slim(D):
    """Group incomparable pairs by (meet, join); an M3 is a triangle in a group."""
    L = D.lattice
    groups = {}
    for u in range(D.n):
        for v in range(u + 1, D.n):
            if not L.poset.comparable(u, v):
                groups.setdefault((D.meet(u, v), D.join(u, v)), []).append((u, v))
    for pairs in groups.values():
        if len(pairs) < 3:
            continue
        adj = {}
        for u, v in pairs:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for u, v in pairs:
            common = adj[u] & adj[v]
            if common:
                return CheckResult(False, tuple(sorted((u, v, min(common)))))
    return CheckResult(True)


def is_semimodular(D):
    cov = D.lattice.poset.is_cover
    for a in range(D.n):
        for b in range(D.n):
            m = D.meet(a, b)
            if m != a and cov(m, a) and not cov(b, D.join(a, b)):
                return CheckResult(False, (a, b))
    return CheckResult(True)


def is_rectangular(D):
    if not is_semimodular(D):
        raise NotSemimodular(f"{D!r} is not semimodular")
    lefts = [a for a in left_boundary(D) if doubly_irreducible(D, a)]
    rights = [a for a in right_boundary(D) if doubly_irreducible(D, a)]
    if len(lefts) != 1 or len(rights) != 1:
        return CheckResult(False)
    cl, cr = lefts[0], rights[0]
    if D.join(cl, cr) == D.top and D.meet(cl, cr) == D.bottom:
        return CheckResult(True, (cl, cr))
    return CheckResult(False)


def four_cells(D):
    cells = []
    cov = D.lattice.poset.is_cover
    for t in range(D.n):
        lows = D.lower[t]
        for i, l in enumerate(lows):
            for j in range(i + 1, len(lows)):
                r = lows[j]
                b = D.meet(l, r)
                if not (cov(b, l) and cov(b, r)):
                    continue
                if any(D.leq(b, lows[k]) for k in range(i + 1, j)):
                    continue
                cells.append(FourCell(t, l, r, b))
    cells.sort(key=lambda c: (c.top, c.left))
    return cells


def is_sps(D):
    return bool(is_slim(D)) and bool(is_semimodular(D)) and bool(validate_planar(D))


def is_sr(D):
    return is_sps(D) and bool(is_rectangular(D))


def wide_elements(D):
    return [a for a in range(D.n) if len(D.lower[a]) >= 3]


def check_boundaries(D):
    """Both boundary chains run from bottom to top and are maximal chains."""
    for chain in (left_boundary(D), right_boundary(D)):
        if chain[-1] != D.top:
            return False
        if any(not D.is_cover(a, b) for a, b in zip(chain, chain[1:])):
            return False
    return True


__all__ = [
    "CheckResult", "Diagram", "DiagramError", "FourCell", "InconsistentOrders",
    "NotSemimodular", "PlanarityReport", "PrimeInterval", "check_boundaries",
    "doubly_irreducible", "drawing", "four_cells", "is_rectangular", "is_semimodular",
    "is_slim", "is_slim_naive", "is_sps", "is_sr", "left_boundary", "right_boundary",
    "validate_planar", "wide_elements",
]
