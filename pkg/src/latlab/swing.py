"""Perspectivities, swings, and the relations built from them.

Edge relations are precomputed per diagram as bitsets over edge indices
(``D.edges`` order) and cached weakly.
"""

from __future__ import annotations

import enum
import weakref
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .congruence import ji_con_poset
from .diagram import PrimeInterval, wide_elements
from .poset import bits


class InternalFlaw(AssertionError):
    """A witness produced by the engine violates a property it must have."""


class StepKind(enum.Enum):
    UP = "↗"
    DOWN = "↘"
    SWING_IN = "↷in"
    SWING_EX = "↷ex"


class SwingStep(NamedTuple):
    kind: StepKind
    src: PrimeInterval
    dst: PrimeInterval

    def __str__(self):
        return f"{self.src} {self.kind.value} {self.dst}"


# Deliberate faults for checking that the test suite notices them.
MUTATIONS = ("swap-kind", "flip-roles", "no-interior")


def up_perspective(D, p, r):
    return D.J[p[1]][r[0]] == r[1] and D.M[p[1]][r[0]] == p[0]


def down_perspective(D, p, q):
    return D.M[p[0]][q[1]] == q[0] and D.J[p[0]][q[1]] == p[1]


def swing(D, p, q, mutation=None):
    """Classify ``p ↷ q``: None, StepKind.SWING_IN or StepKind.SWING_EX."""
    if p[1] != q[1]:
        return None
    lows = D.lower[p[1]]
    if len(lows) < 3:
        return None
    src, dst = p[0], q[0]
    if mutation == "flip-roles":
        src, dst = dst, src
    ends = (lows[0], lows[-1])
    if mutation != "no-interior" and dst in ends:
        return None
    external = src in ends
    if mutation == "swap-kind":
        external = not external
    return StepKind.SWING_EX if external else StepKind.SWING_IN


@dataclass(frozen=True, eq=False)
class EdgeRelations:
    edges: tuple
    up: tuple        # up[i]: edges r with e_i ↗ r (includes i)
    down: tuple      # down[i]: edges q with e_i ↘ q (includes i)
    down_to: tuple   # down_to[j]: edges t with t ↘ e_j
    swing_in: tuple
    swing_ex: tuple
    height: tuple


_CACHE = weakref.WeakKeyDictionary()


def clear_cache():
    _CACHE.clear()


def edge_relations(D, mutation=None):
    per = _CACHE.setdefault(D, {})
    rel = per.get(mutation)
    if rel is not None:
        return rel
    edges = D.edges
    idx = D.edge_index
    J, M = D.J, D.M
    E = len(edges)
    up = [0] * E
    down = [0] * E
    down_to = [0] * E
    for i, (a, b) in enumerate(edges):
        Jb, Ma = J[b], M[a]
        mu = 0
        md = 0
        for j, (c, d) in enumerate(edges):
            if Jb[c] == d and M[b][c] == a:
                mu |= 1 << j
            if Ma[d] == c and J[a][d] == b:
                md |= 1 << j
        up[i] = mu
        down[i] = md
    for i in range(E):
        for j in bits(down[i]):
            down_to[j] |= 1 << i
    s_in = [0] * E
    s_ex = [0] * E
    for t in range(D.n):
        lows = D.lower[t]
        if len(lows) < 3:
            continue
        for x in lows:
            i = idx[(x, t)]
            for y in lows:
                if x == y:
                    continue
                kind = swing(D, (x, t), (y, t), mutation)
                if kind is StepKind.SWING_IN:
                    s_in[i] |= 1 << idx[(y, t)]
                elif kind is StepKind.SWING_EX:
                    s_ex[i] |= 1 << idx[(y, t)]
    rel = EdgeRelations(edges, tuple(up), tuple(down), tuple(down_to), tuple(s_in), tuple(s_ex),
                        D.height)
    per[mutation] = rel
    return rel


def _edge(D, e):
    e = PrimeInterval(*e)
    if e not in D.edge_index:
        raise ValueError(f"{e} is not a prime interval")
    return e


def _tie_key(rel, j):
    e = rel.edges[j]
    return (rel.height[e.one], e.one, e.zero)


def swing_witnesses(D, p, mutation=None):
    """Shortest witness sequences from p to every edge it reaches.

    Returns ``{q: [SwingStep, ...]}``. The first step is always the up
    perspectivity p ↗ r0 (possibly the identity hop p ↗ p).
    """
    rel = edge_relations(D, mutation)
    edges = rel.edges
    pi = D.edge_index[_edge(D, p)]
    parent = {}
    via = {}
    order = sorted(bits(rel.up[pi]), key=lambda j: _tie_key(rel, j))
    queue = deque()
    for j in order:
        parent[j] = None
        via[j] = StepKind.UP
        queue.append(j)
    while queue:
        i = queue.popleft()
        nxt = []
        for j in bits(rel.down[i]):
            if j not in parent:
                nxt.append((j, StepKind.DOWN))
        for mask, kind in ((rel.swing_in[i], StepKind.SWING_IN), (rel.swing_ex[i], StepKind.SWING_EX)):
            for j in bits(mask):
                if j not in parent:
                    nxt.append((j, kind))
        nxt.sort(key=lambda jk: _tie_key(rel, jk[0]))
        for j, kind in nxt:
            if j in parent:
                continue
            parent[j] = i
            via[j] = kind
            queue.append(j)
    out = {}
    for j in parent:
        path = []
        k = j
        while parent[k] is not None:
            path.append(SwingStep(via[k], edges[parent[k]], edges[k]))
            k = parent[k]
        path.append(SwingStep(StepKind.UP, edges[pi], edges[k]))
        path.reverse()
        audit_descent(D, path)
        out[edges[j]] = path
    return out


def audit_descent(D, steps):
    """Raise InternalFlaw unless 1_{r0} ≥ 1_{r1} ≥ ... and the r_i are distinct."""
    chain = [steps[0].dst] + [s.dst for s in steps[1:]]
    if len(set(chain)) != len(chain):
        raise InternalFlaw(f"witness repeats an interval: {[str(e) for e in chain]}")
    for a, b in zip(chain, chain[1:]):
        if not D.leq(b.one, a.one):
            raise InternalFlaw(f"witness ascends from {a} to {b}")
    return True


def swing_reachable(D, p, q, mutation=None):
    p, q = _edge(D, p), _edge(D, q)
    return swing_witnesses(D, p, mutation).get(q)


def swing_collapses(D, p, q, mutation=None):
    p, q = _edge(D, p), _edge(D, q)
    return p == q or swing_reachable(D, p, q, mutation) is not None


def swing_collapse_masks(D, mutation=None):
    """Bit q of entry p is set iff the swing engine says con(p) collapses q."""
    idx = D.edge_index
    out = []
    for i, p in enumerate(D.edges):
        mask = 1 << i
        for q in swing_witnesses(D, p, mutation):
            mask |= 1 << idx[q]
        out.append(mask)
    return out


def _with_self(mask, i):
    return mask | (1 << i)


def equality_witness(D, p, q, mutation=None):
    """Intervals (s, t) with p ↗ s, s ↷in t (or s = t), t ↘ q; else None."""
    rel = edge_relations(D, mutation)
    idx = D.edge_index
    pi, qi = idx[_edge(D, p)], idx[_edge(D, q)]
    target = rel.down_to[qi]
    for s in bits(rel.up[pi]):
        hit = _with_self(rel.swing_in[s], s) & target
        if hit:
            t = (hit & -hit).bit_length() - 1
            return rel.edges[s], rel.edges[t]
    return None


class PeakSublattice(NamedTuple):
    bottom: int
    left_mid: int
    right_mid: int
    left_top: int
    mid_top: int
    right_top: int
    top: int

    @property
    def top_edges(self):
        return (PrimeInterval(self.left_top, self.top), PrimeInterval(self.mid_top, self.top),
                PrimeInterval(self.right_top, self.top))


_S7_COVERS = {(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)}


def is_peak_sublattice(D, peak):
    """Independent audit: 7 distinct elements, closed under the host operations,
    ordered like S7, with the three top edges covering in the host."""
    els = list(peak)
    if len(set(els)) != 7:
        return False
    s = set(els)
    for x in els:
        for y in els:
            if D.join(x, y) not in s or D.meet(x, y) not in s:
                return False
    for i in range(7):
        for j in range(7):
            if i == j:
                continue
            less = D.leq(els[i], els[j])
            # covers inside the 7-element order
            between = any(k not in (i, j) and D.leq(els[i], els[k]) and D.leq(els[k], els[j])
                          for k in range(7))
            if ((i, j) in _S7_COVERS) != (less and not between):
                return False
    return all(D.is_cover(e.zero, e.one) for e in peak.top_edges)


def peak_sublattices(D):
    out = []
    for t in wide_elements(D):
        for lt, mt, rt in combinations(D.lower[t], 3):
            lm = D.meet(lt, mt)
            rm = D.meet(mt, rt)
            peak = PeakSublattice(D.meet(lm, rm), lm, rm, lt, mt, rt, t)
            if is_peak_sublattice(D, peak):
                out.append(peak)
    return out


@dataclass(frozen=True)
class CoveringWitness:
    r: PrimeInterval
    s: PrimeInterval
    t: PrimeInterval
    u: PrimeInterval
    peak: PeakSublattice
    peak_side: PrimeInterval   # the top edge of ``peak`` playing the role of t


def _chain_tail(rel, pi):
    """Map t -> (r, s) for every t reachable as p ↗ r ↷in s ↘ t (degenerate hops allowed)."""
    found = {}
    for r in bits(rel.up[pi]):
        for s in bits(_with_self(rel.swing_in[r], r)):
            for t in bits(rel.down[s]):
                found.setdefault(t, (r, s))
    return found


def covering_witness(D, p, q, ji=None, mutation=None):
    """Witness for con(q) ≺ con(p): p ↗ r ↷in s ↘ t ↷ex u ↘ q, plus a peak
    sublattice whose middle edge has the color of q and a side top edge the
    color of p. Returns None when no chain exists."""
    rel = edge_relations(D, mutation)
    idx = D.edge_index
    pi, qi = idx[_edge(D, p)], idx[_edge(D, q)]
    target = rel.down_to[qi]
    for t, (r, s) in sorted(_chain_tail(rel, pi).items()):
        hit = rel.swing_ex[t] & target
        if not hit:
            continue
        u = (hit & -hit).bit_length() - 1
        e = rel.edges
        ji = ji or ji_con_poset(D)
        peak, side = _peak_for(D, ji, e[t], e[u], ji.color_of(p), ji.color_of(q))
        return CoveringWitness(e[r], e[s], e[t], e[u], peak, side)
    return None


def _peak_for(D, ji, t, u, col_p, col_q):
    peaks = peak_sublattices(D)

    def ranked(pk):
        left, mid, right = pk.top_edges
        return (pk.top != t.one, mid != u, t not in (left, right))

    for pk in sorted(peaks, key=ranked):
        left, mid, right = pk.top_edges
        if ji.color_of(mid) != col_q:
            continue
        for side in (left, right):
            if ji.color_of(side) == col_p:
                return pk, side
    return None, None


class VRelation(NamedTuple):
    a: int
    b: int
    c: int


def v_relations(D, ji=None):
    """All V(a, b, c) with a ≺ b, a ≺ c in the Ji poset; listed once with b < c."""
    ji = ji or ji_con_poset(D)
    out = []
    for a in range(ji.n):
        ups = sorted(ji.upper_covers(a))
        for b, c in combinations(ups, 2):
            out.append(VRelation(a, b, c))
    return out


def peak_colors(D, peak, ji):
    left, mid, right = peak.top_edges
    return ji.color_of(left), ji.color_of(mid), ji.color_of(right)


def peak_triple(D, peak, ji):
    cl, cm, cr = peak_colors(D, peak, ji)
    return VRelation(cm, min(cl, cr), max(cl, cr))


@dataclass
class VLemmaReport:
    ok: bool
    v_without_peak: list
    peak_not_v: list
    wide_not_hit: list
    tops: dict

    def __bool__(self):
        return self.ok


def v_lemma_check(D, ji=None):
    """Parts (i)-(iii): V-relations and colored peak triples coincide, and the
    tops of their peaks exhaust the elements covering three or more."""
    ji = ji or ji_con_poset(D)
    vs = set(v_relations(D, ji))
    peaks = peak_sublattices(D)
    tops = {}
    for pk in peaks:
        tops.setdefault(peak_triple(D, pk, ji), set()).add(pk.top)
    v_without_peak = sorted(vs - set(tops))
    peak_not_v = sorted(set(tops) - vs)
    hit = set()
    for v in vs:
        hit |= tops.get(v, set())
    wide_not_hit = sorted(set(wide_elements(D)) - hit)
    ok = not (v_without_peak or peak_not_v or wide_not_hit)
    return VLemmaReport(ok, v_without_peak, peak_not_v, wide_not_hit,
                        {v: sorted(t) for v, t in tops.items() if v in vs})


class WRelation(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    versions: frozenset


def _oriented(vs):
    for v in vs:
        yield v.a, v.b, v.c
        yield v.a, v.c, v.b


def _side_of(peak_cols, color):
    cl, _, cr = peak_cols
    return "L" if cl == color else "R" if cr == color else None


def w_relations(D, ji=None):
    """W(a,b,c,d,e,f): V(a,b,c), V(d,e,f), c = e, from two different V's.

    Version 1 when, for some pair of witnessing peaks, the c-colored top edge
    of the first and the e-colored top edge of the second sit on opposite
    sides of their peaks (they face each other); Version 2 when they sit on
    the same side, so the c-edge faces the f-colored edge.
    """
    ji = ji or ji_con_poset(D)
    vs = v_relations(D, ji)
    peaks_by_v = {}
    for pk in peak_sublattices(D):
        peaks_by_v.setdefault(peak_triple(D, pk, ji), []).append(peak_colors(D, pk, ji))
    out = []
    for a, b, c in _oriented(vs):
        for d, e, f in _oriented(vs):
            if e != c or (d == a and {e, f} == {b, c}):
                continue
            versions = set()
            v1 = VRelation(a, min(b, c), max(b, c))
            v2 = VRelation(d, min(e, f), max(e, f))
            for cols1 in peaks_by_v.get(v1, []):
                for cols2 in peaks_by_v.get(v2, []):
                    s1, s2 = _side_of(cols1, c), _side_of(cols2, e)
                    versions.add(1 if s1 != s2 else 2)
            out.append(WRelation(a, b, c, d, e, f, frozenset(versions)))
    return out


def threec_relations(D, ji=None):
    """Three-crown relations V(a,b,c), V(d,c,f), V(e,b,f) with six distinct colors.

    Each crown is reported once, as its lexicographically least tuple.
    """
    ji = ji or ji_con_poset(D)
    vs = v_relations(D, ji)
    vset = set(vs)

    def holds(x, y, z):
        return VRelation(x, min(y, z), max(y, z)) in vset

    crowns = {}
    for a, b, c in _oriented(vs):
        for d, c2, f in _oriented(vs):
            if c2 != c:
                continue
            for e in range(ji.n):
                tup = (a, b, c, d, e, f)
                if len(set(tup)) == 6 and holds(e, b, f):
                    key = frozenset({(a, frozenset((b, c))), (d, frozenset((c, f))),
                                     (e, frozenset((b, f)))})
                    crowns[key] = min(crowns.get(key, tup), tup)
    return sorted(crowns.values())
