"""Acceptance criteria 1-9, checked literally on the enumerated SR family.

Each test records one PASS/FAIL line; the lines are repeated in the pytest
terminal summary. Every tolerance is zero discrepancies unless stated.
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from latlab import canonical_form, check_3p3c, check_two_cover, grid, insert_fork, ji_con_poset, s7
from latlab.congruence import edge_collapse_masks
from latlab.construct import _cell_maps, fork_site, random_sr
from latlab.poset import popcount
from latlab.swing import (
    InternalFlaw, clear_cache, covering_witness, equality_witness, is_peak_sublattice,
    peak_sublattices, swing_collapse_masks, swing_witnesses, v_lemma_check,
)

RANDOM_COUNT = 10_000
RANDOM_CAP = 60
PER_LATTICE_SECONDS = 1.0
PAIR_SWEEP_CAP = 20


def record(number, name, ok, detail, tolerance):
    line = f"[{'PASS' if ok else 'FAIL'}] C{number} {name}: {detail} (tolerance: {tolerance})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_c1_swing_oracle_equivalence(family):
    pairs = disagreements = flaws = 0
    for D, _ in family:
        k = len(D.edges)
        pairs += k * k
        oracle = edge_collapse_masks(D)
        try:
            engine = swing_collapse_masks(D)
        except InternalFlaw:
            flaws += 1
            continue
        disagreements += sum(popcount(a ^ b) for a, b in zip(oracle, engine))
    ok = disagreements == 0 and flaws == 0
    assert record(1, "swing oracle equivalence",
                  ok, f"{disagreements} disagreements, {flaws} engine flaws over "
                      f"{len(family)} lattices / {pairs} ordered edge pairs", "0"), \
        f"{disagreements} disagreements"


def test_c2_two_cover_sweep(family):
    failures = [str(log) for D, log in family if not check_two_cover(D)]
    assert record(2, "two-cover sweep", not failures,
                  f"{len(failures)} failures over {len(family)} lattices", "0"), failures[:5]


def test_c3_3p3c_sweep(family):
    failures = []
    worst = 0.0
    for D, log in family:
        start = time.perf_counter()
        if not check_3p3c(D):
            failures.append(str(log))
        worst = max(worst, time.perf_counter() - start)
    for seed in range(RANDOM_COUNT):
        start = time.perf_counter()
        D, log = random_sr(seed, RANDOM_CAP, seed % 7)
        if not check_3p3c(D):
            failures.append(f"seed {seed}: {log}")
        worst = max(worst, time.perf_counter() - start)
    ok = not failures and worst < PER_LATTICE_SECONDS
    assert record(3, "3P3C sweep", ok,
                  f"{len(failures)} failures over {len(family)} enumerated + {RANDOM_COUNT} random "
                  f"(cap {RANDOM_CAP}); slowest {worst:.3f} s",
                  f"0 failures, each < {PER_LATTICE_SECONDS:g} s"), failures[:5]


def test_c4_s7_base_case():
    G = grid(2, 2)
    forked = insert_fork(G, _cell_maps(G)[0][0])
    same = canonical_form(forked) == canonical_form(s7())
    ji = ji_con_poset(s7())
    covers = sorted(ji.poset.covers)
    bottoms = {a for a, _ in covers}
    tops = [b for _, b in covers]
    is_v = (ji.n == 3 and len(covers) == 2 and len(bottoms) == 1 and len(set(tops)) == 2
            and not ji.leq(tops[0], tops[1]) and not ji.leq(tops[1], tops[0]))
    assert record(4, "S7 base case", same and is_v,
                  f"canonical match {same}; Ji poset covers {covers}", "exact"), (same, covers)


def test_c5_v_lemma_equivalence(family):
    v_without_peak = peak_not_v = wide_not_hit = repeated = 0
    bad = []
    for D, log in family:
        rep = v_lemma_check(D)
        v_without_peak += len(rep.v_without_peak)
        peak_not_v += len(rep.peak_not_v)
        repeated += sum(len(set(t)) < 3 for t in rep.peak_not_v)
        wide_not_hit += len(rep.wide_not_hit)
        if not rep.ok:
            bad.append(str(log))
    total = v_without_peak + peak_not_v + wide_not_hit
    assert record(5, "V-lemma equivalence", total == 0,
                  f"{total} discrepancies in {len(bad)} lattices ({v_without_peak} V without peak, "
                  f"{peak_not_v} peak triples not V of which {repeated} repeat a color, "
                  f"{wide_not_hit} wide tops not hit); first: {bad[:1]}", "0"), bad[:3]


@pytest.fixture(scope="module")
def pair_sweep(family):
    """Equality and covering witnesses for every ordered pair, small lattices only."""
    out = {"eq": 0, "cover_missing": 0, "cover_spurious": 0, "peak": 0, "pairs": 0,
           "lattices": 0, "chains": [], "first": None}
    for D, log in family:
        if D.n > PAIR_SWEEP_CAP:
            continue
        out["lattices"] += 1
        ji = ji_con_poset(D)
        for p in D.edges:
            for q in D.edges:
                if p == q:
                    continue
                out["pairs"] += 1
                cp, cq = ji.color_of(p), ji.color_of(q)
                w = equality_witness(D, p, q)
                if (w is not None) != (cp == cq):
                    out["eq"] += 1
                if w is not None:
                    out["chains"].append((D, [p, w[0], w[1], q]))
                c = covering_witness(D, p, q, ji)
                covered = ji.is_cover(cq, cp)
                if c is None and covered:
                    out["cover_missing"] += 1
                if c is not None and not covered:
                    out["cover_spurious"] += 1
                    out["first"] = out["first"] or (str(log), p, q)
                if c is not None:
                    out["chains"].append((D, [p, c.r, c.s, c.t, c.u, q]))
                    mid_ok = c.peak is not None and ji.color_of(c.peak.top_edges[1]) == cq
                    if not (mid_ok and ji.color_of(c.u) == cq and ji.color_of(c.t) == cp):
                        out["peak"] += 1
    return out


def test_c6_equality_and_covering_witnesses(pair_sweep):
    s = pair_sweep
    total = s["eq"] + s["cover_missing"] + s["cover_spurious"] + s["peak"]
    detail = (f"{total} discrepancies over {s['lattices']} lattices / {s['pairs']} pairs "
              f"(equality {s['eq']}, covering missing {s['cover_missing']}, covering spurious "
              f"{s['cover_spurious']}, peak colors {s['peak']})")
    if s["first"]:
        detail += f"; first spurious: {s['first'][0]} p={tuple(s['first'][1])} q={tuple(s['first'][2])}"
    assert record(6, "equality/covering witnesses", total == 0, detail, "0"), detail


def test_c7_fork_color_contract(family):
    insertions = violations = 0
    no_new = no_v = 0
    first = None
    for D, log in family:
        if len(log.forks) >= 3:
            continue
        before = ji_con_poset(D)
        maps = _cell_maps(D)
        for cell in maps[0]:
            site = fork_site(D, cell, maps)
            if D.n + site.new_elements > 25:
                continue
            insertions += 1
            child = insert_fork(D, cell, check=False, site=site)
            after = ji_con_poset(child)
            e = after.color_of((D.n, cell.top))
            b = after.color_of((cell.left, cell.top))
            f = after.color_of((cell.right, cell.top))
            new = after.n == before.n + 1
            v = len({e, b, f}) == 3 and after.is_cover(e, b) and after.is_cover(e, f)
            if not (new and v):
                violations += 1
                no_new += not new
                no_v += not v
                first = first or (str(log), tuple(cell))
    assert record(7, "fork color contract", violations == 0,
                  f"{violations} violations over {insertions} insertions ({no_new} without a new "
                  f"color, {no_v} without V(e,b,f)); first: {first}", "0"), first


def _descends(D, chain):
    """chain = [p, r0, r1, ..., q]: the tops of r0, r1, ... never rise and,
    after dropping identity hops, no interval repeats."""
    rs = chain[1:]
    hops = [rs[0]] + [b for a, b in zip(rs, rs[1:]) if a != b]
    if len(set(hops)) != len(hops):
        return False
    return all(D.leq(b[1], a[1]) for a, b in zip(rs, rs[1:]))


def test_c8_descent_audit(family, pair_sweep):
    checked = violations = 0
    clear_cache()
    for D, _ in family:
        for p in D.edges:
            try:
                found = swing_witnesses(D, p)
            except InternalFlaw:
                violations += 1
                continue
            for steps in found.values():
                checked += 1
                chain = [steps[0].src] + [s.dst for s in steps]
                if not _descends(D, chain):
                    violations += 1
    for D, chain in pair_sweep["chains"]:
        checked += 1
        if not _descends(D, chain):
            violations += 1
    assert record(8, "descent audit", violations == 0,
                  f"{violations} violations over {checked} witnesses", "0")


@pytest.mark.parametrize("mutation", ["flip-roles", "no-interior"])
def test_c9_mutation_sensitivity(family, mutation):
    broken = 0
    with_s7 = 0
    for D, _ in family:
        if not any(is_peak_sublattice(D, pk) for pk in peak_sublattices(D)):
            continue
        with_s7 += 1
        try:
            differs = swing_collapse_masks(D, mutation) != edge_collapse_masks(D)
        except InternalFlaw:
            differs = True
        broken += differs
    clear_cache()
    assert record(9, f"mutation sensitivity [{mutation}]", broken >= 1,
                  f"criterion 1 breaks on {broken} of {with_s7} lattices containing S7",
                  ">= 1 lattice")
