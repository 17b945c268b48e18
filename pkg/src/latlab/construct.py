"""Grids, fork insertion, and enumeration of slim rectangular lattices."""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from pathlib import Path

from .canon import canonical_form
from .diagram import Diagram, FourCell, four_cells, is_sps


class BadSize(ValueError):
    pass


class NotAFourCell(ValueError):
    pass


class NotSps(ValueError):
    pass


def chain(k):
    if k < 1:
        raise BadSize(f"chain length must be at least 1, got {k}")
    lower = [[i - 1] if i else [] for i in range(k)]
    upper = [[i + 1] if i + 1 < k else [] for i in range(k)]
    return Diagram.from_orders(lower, upper, f"C{k}")


def grid(m, n):
    """C_m × C_n; element (i, j) has id i*n + j and i grows to the left."""
    if m < 2 or n < 2:
        raise BadSize(f"grid sides must be at least 2, got {m}x{n}")

    def eid(i, j):
        return i * n + j

    lower, upper = [], []
    for i in range(m):
        for j in range(n):
            lo = ([eid(i, j - 1)] if j else []) + ([eid(i - 1, j)] if i else [])
            up = ([eid(i + 1, j)] if i + 1 < m else []) + ([eid(i, j + 1)] if j + 1 < n else [])
            lower.append(lo)
            upper.append(up)
    return Diagram.from_orders(lower, upper, f"C{m}xC{n}")


@dataclass(frozen=True)
class ForkSite:
    cell: FourCell
    left_path: tuple
    right_path: tuple

    @property
    def new_elements(self):
        return 1 + len(self.left_path) + len(self.right_path)


def _cell_maps(D):
    cells = four_cells(D)
    by_top_right = {(c.top, c.right): c for c in cells}
    by_top_left = {(c.top, c.left): c for c in cells}
    return cells, by_top_left, by_top_right


def fork_site(D, cell, _maps=None):
    """The down-left and down-right staircases of 4-cells starting at ``cell``."""
    cells, by_top_left, by_top_right = _maps or _cell_maps(D)
    cell = FourCell(*cell)
    if by_top_left.get((cell.top, cell.left)) != cell:
        raise NotAFourCell(f"{tuple(cell)} is not a 4-cell")
    left = [cell]
    while (nxt := by_top_right.get((left[-1].left, left[-1].bottom))) is not None:
        left.append(nxt)
    right = [cell]
    while (nxt := by_top_left.get((right[-1].right, right[-1].bottom))) is not None:
        right.append(nxt)
    return ForkSite(cell, tuple(left), tuple(right))


def find_cell(D, top, left):
    for c in four_cells(D):
        if c.top == top and c.left == left:
            return c
    raise NotAFourCell(f"no 4-cell with top {top} and left corner {left}")


def insert_fork(D, cell, check=True, site=None):
    """Insert a fork into the 4-cell ``cell`` of an SPS diagram.

    New ids are appended: the middle element first, then the left staircase
    elements top-down, then the right ones.
    """
    if check and not is_sps(D):
        raise NotSps(f"{D!r} is not slim, planar and semimodular")
    site = site or fork_site(D, cell)
    t, l, r, b = site.cell
    n = D.n
    lower = [list(x) for x in D.lower]
    upper = [list(x) for x in D.upper]
    m = n
    us = [n + 1 + i for i in range(len(site.left_path))]
    vs = [us[-1] + 1 + i for i in range(len(site.right_path))]
    lower += [[] for _ in range(site.new_elements)]
    upper += [[] for _ in range(site.new_elements)]

    lower[t].insert(lower[t].index(l) + 1, m)
    upper[m] = [t]
    lower[m] = [us[0], vs[0]]
    for i, c in enumerate(site.left_path):
        u = us[i]
        lower[c.left][lower[c.left].index(c.bottom)] = u
        upper[c.bottom][upper[c.bottom].index(c.left)] = u
        upper[u] = [c.left, us[i - 1] if i else m]
        lower[u] = ([us[i + 1]] if i + 1 < len(us) else []) + [c.bottom]
    for i, c in enumerate(site.right_path):
        v = vs[i]
        lower[c.right][lower[c.right].index(c.bottom)] = v
        upper[c.bottom][upper[c.bottom].index(c.right)] = v
        upper[v] = [vs[i - 1] if i else m, c.right]
        lower[v] = [c.bottom] + ([vs[i + 1]] if i + 1 < len(vs) else [])
    return Diagram.from_orders(lower, upper, D.name)


@dataclass(frozen=True)
class ConstructionLog:
    base_grid: tuple
    forks: tuple = field(default=())

    def to_json(self):
        return {"grid": list(self.base_grid), "forks": [list(f) for f in self.forks]}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["grid"]), tuple(tuple(f) for f in obj["forks"]))

    def extended(self, cell):
        return ConstructionLog(self.base_grid, self.forks + ((cell.top, cell.left),))

    def __str__(self):
        m, n = self.base_grid
        return f"C{m}xC{n}" + "".join(f"+fork({t},{l})" for t, l in self.forks)


def build(log, check=False):
    D = grid(*log.base_grid)
    for top, left in log.forks:
        D = insert_fork(D, find_cell(D, top, left), check=check)
    return Diagram(D.lattice, D.lower, D.upper, str(log))


def _grid_sizes(max_elements):
    sizes = [(m, n) for m in range(2, max_elements // 2 + 1)
             for n in range(2, max_elements // 2 + 1) if m * n <= max_elements]
    return sorted(sizes, key=lambda mn: (mn[0] * mn[1], mn))


def _cache_path(max_elements, max_forks):
    root = os.environ.get("LATLAB_CACHE")
    if not root:
        return None
    return Path(root) / f"enum-{max_elements}-{max_forks}.json"


def enumerate_sr(max_elements, max_forks):
    """Breadth-first over grids and fork sequences, one diagram per
    isomorphism-or-mirror class, in a deterministic order.

    Yields ``(diagram, log)``. With ``LATLAB_CACHE`` set, the list of logs is
    stored there and replayed on later runs.
    """
    cache = _cache_path(max_elements, max_forks)
    if cache is not None and cache.exists():
        for entry in json.loads(cache.read_text()):
            log = ConstructionLog.from_json(entry["log"])
            yield build(log), log
        return
    seen = set()
    emitted = []
    level = []
    for m, n in _grid_sizes(max_elements):
        D = grid(m, n)
        key = canonical_form(D)
        if key not in seen:
            seen.add(key)
            log = ConstructionLog((m, n))
            level.append((D, log))
            emitted.append(log)
            yield Diagram(D.lattice, D.lower, D.upper, str(log)), log
    for _ in range(max_forks):
        nxt = []
        for D, log in level:
            maps = _cell_maps(D)
            for cell in maps[0]:
                site = fork_site(D, cell, maps)
                if D.n + site.new_elements > max_elements:
                    continue
                child = insert_fork(D, cell, check=False, site=site)
                key = canonical_form(child)
                if key in seen:
                    continue
                seen.add(key)
                clog = log.extended(cell)
                nxt.append((child, clog))
                emitted.append(clog)
                yield Diagram(child.lattice, child.lower, child.upper, str(clog)), clog
        level = nxt
    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        cache.write_text(json.dumps([{"log": lg.to_json()} for lg in emitted]))


def random_sr(seed, element_cap, fork_count):
    """A reproducible random SR lattice: a grid plus up to ``fork_count`` forks."""
    rng = random.Random(seed)
    reserve = min(3 * fork_count, element_cap - 4)
    sizes = [mn for mn in _grid_sizes(element_cap - reserve)] or [(2, 2)]
    m, n = rng.choice(sizes)
    D = grid(m, n)
    log = ConstructionLog((m, n))
    for _ in range(fork_count):
        maps = _cell_maps(D)
        fits = []
        for cell in maps[0]:
            site = fork_site(D, cell, maps)
            if D.n + site.new_elements <= element_cap:
                fits.append(site)
        if not fits:
            break
        site = rng.choice(fits)
        D = insert_fork(D, site.cell, check=False, site=site)
        log = log.extended(site.cell)
    return Diagram(D.lattice, D.lower, D.upper, str(log)), log
