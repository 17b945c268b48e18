"""Per-lattice checks, the Two-Cover and 3P3C checkers, and the sweep runner."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .canon import canonical_digest
from .congruence import JiPoset, edge_collapse_masks, ji_con_poset
from .construct import ConstructionLog, build, enumerate_sr, find_cell, insert_fork, random_sr
from .diagram import is_sps
from .poset import R3, Poset, cover_preserving_embedding
from .swing import (
    InternalFlaw, StepKind, SwingStep, audit_descent, covering_witness, equality_witness,
    MUTATIONS, swing_collapse_masks, v_lemma_check,
)

log = logging.getLogger(__name__)

DEFAULT_CHECKS = ("swing", "2cover", "3p3c", "vlemma", "eq", "cover")
ALL_CHECKS = DEFAULT_CHECKS + ("fork",)


@dataclass
class Outcome:
    passed: bool
    witness: object = None

    def __bool__(self):
        return self.passed


def _ji_of(obj):
    if isinstance(obj, JiPoset):
        return obj.poset, obj
    if isinstance(obj, Poset):
        return obj, None
    ji = ji_con_poset(obj)
    return ji.poset, ji


def check_two_cover(obj):
    """Pass iff every color has at most two upper covers in Ji(Con K)."""
    P, _ = _ji_of(obj)
    for i in range(P.n):
        ups = P.upper_covers[i]
        if len(ups) > 2:
            return Outcome(False, {"color": i, "covers": list(ups)})
    return Outcome(True)


def check_3p3c(obj, reflect_covers=False):
    """Pass iff R3 has no cover-preserving embedding into Ji(Con K).

    ``obj`` may be a diagram, a lattice, a JiPoset, or a Poset taken as the
    Ji poset itself.
    """
    P, _ = _ji_of(obj)
    phi = cover_preserving_embedding(R3, P, reflect_covers)
    if phi is None:
        return Outcome(True)
    return Outcome(False, {"embedding": list(phi)})


def _edge_json(e):
    return [int(e[0]), int(e[1])]


def check_swing(D, mutation=None):
    oracle = edge_collapse_masks(D)
    try:
        engine = swing_collapse_masks(D, mutation)
    except InternalFlaw as exc:
        return Outcome(False, {"flaw": str(exc)})
    for i, (a, b) in enumerate(zip(oracle, engine)):
        if a != b:
            j = ((a ^ b) & -(a ^ b)).bit_length() - 1
            return Outcome(False, {"p": _edge_json(D.edges[i]), "q": _edge_json(D.edges[j]),
                                   "oracle": bool(a >> j & 1), "swing": bool(b >> j & 1)})
    return Outcome(True)


def _chain_steps(pairs):
    return [SwingStep(kind, a, b) for kind, a, b in pairs if a != b or kind is StepKind.UP]


def check_equality(D, ji=None, mutation=None):
    ji = ji or ji_con_poset(D)
    for p in D.edges:
        for q in D.edges:
            if p == q:
                continue
            w = equality_witness(D, p, q, mutation)
            same = ji.color_of(p) == ji.color_of(q)
            if (w is not None) != same:
                return Outcome(False, {"p": _edge_json(p), "q": _edge_json(q),
                                       "witness": w is not None, "same_color": same})
            if w is not None:
                s, t = w
                try:
                    audit_descent(D, _chain_steps([(StepKind.UP, p, s), (StepKind.SWING_IN, s, t),
                                                   (StepKind.DOWN, t, q)]))
                except InternalFlaw as exc:
                    return Outcome(False, {"flaw": str(exc)})
    return Outcome(True)


def check_covering(D, ji=None, mutation=None):
    ji = ji or ji_con_poset(D)
    for p in D.edges:
        for q in D.edges:
            if p == q:
                continue
            cp, cq = ji.color_of(p), ji.color_of(q)
            w = covering_witness(D, p, q, ji, mutation)
            covered = ji.is_cover(cq, cp)
            if (w is not None) != covered:
                return Outcome(False, {"p": _edge_json(p), "q": _edge_json(q),
                                       "witness": w is not None, "covering": covered})
            if w is None:
                continue
            if w.peak is None or ji.color_of(w.peak.top_edges[1]) != cq or ji.color_of(w.peak_side) != cp:
                return Outcome(False, {"p": _edge_json(p), "q": _edge_json(q), "peak": w.peak})
            try:
                audit_descent(D, _chain_steps([
                    (StepKind.UP, p, w.r), (StepKind.SWING_IN, w.r, w.s), (StepKind.DOWN, w.s, w.t),
                    (StepKind.SWING_EX, w.t, w.u), (StepKind.DOWN, w.u, q)]))
            except InternalFlaw as exc:
                return Outcome(False, {"flaw": str(exc)})
    return Outcome(True)


def fork_contract(parent, cell, child=None):
    """Check that forking ``cell`` adds one new color e with V(e, b, f)."""
    child = child or insert_fork(parent, cell, check=False)
    before = ji_con_poset(parent)
    after = ji_con_poset(child)
    e = after.color_of((parent.n, cell.top))
    b = after.color_of((cell.left, cell.top))
    f = after.color_of((cell.right, cell.top))
    new = after.n == before.n + 1
    v = len({e, b, f}) == 3 and after.is_cover(e, b) and after.is_cover(e, f)
    if new and v:
        return Outcome(True)
    return Outcome(False, {"cell": list(cell), "new_color": new, "v_relation": v,
                           "colors": [e, b, f], "color_count": [before.n, after.n]})


def check_fork(D, clog):
    if not clog.forks:
        return Outcome(True)
    parent = build(ConstructionLog(clog.base_grid, clog.forks[:-1]))
    cell = find_cell(parent, *clog.forks[-1])
    return fork_contract(parent, cell, D)


def run_checks(D, clog, checks=DEFAULT_CHECKS, mutation=None, pair_cap=20):
    """Run the selected checks on one lattice and return a JSON-ready report."""
    start = time.perf_counter()
    ji = ji_con_poset(D)
    results = {}
    for name in checks:
        if name == "swing":
            out = check_swing(D, mutation)
        elif name == "2cover":
            out = check_two_cover(ji)
        elif name == "3p3c":
            out = check_3p3c(ji)
        elif name == "vlemma":
            rep = v_lemma_check(D, ji)
            out = Outcome(rep.ok, None if rep.ok else {
                "v_without_peak": [list(v) for v in rep.v_without_peak],
                "peak_not_v": [list(v) for v in rep.peak_not_v],
                "wide_not_hit": rep.wide_not_hit})
        elif name in ("eq", "cover"):
            if D.n > pair_cap:
                results[name] = {"pass": True, "skipped": True}
                continue
            out = (check_equality if name == "eq" else check_covering)(D, ji, mutation)
        elif name == "fork":
            out = check_fork(D, clog)
        else:
            raise ValueError(f"unknown check {name!r}")
        entry = {"pass": out.passed}
        if not out.passed:
            entry["witness"] = out.witness
        results[name] = entry
    return {
        "key": canonical_digest(D),
        "size": D.n,
        "forks": len(clog.forks),
        "log": clog.to_json(),
        "sps": is_sps(D),
        "colors": ji.n,
        "checks": results,
        "seconds": round(time.perf_counter() - start, 4),
    }


@dataclass
class VerifyConfig:
    max_elements: int = 7
    max_forks: int = 1
    checks: tuple = DEFAULT_CHECKS
    jobs: int = 1
    mutation: str = None
    pair_cap: int = 20
    random_count: int = 0
    random_cap: int = 60
    random_max_forks: int = 6
    logs: list = field(default_factory=list)
    enumerate: bool = True


def _stream(config):
    if config.enumerate:
        for _, clog in enumerate_sr(config.max_elements, config.max_forks):
            yield clog
    for seed in range(config.random_count):
        yield ("random", seed)
    yield from config.logs


def _materialize(item, config):
    if isinstance(item, tuple) and item and item[0] == "random":
        forks = item[1] % (config.random_max_forks + 1)
        return random_sr(item[1], config.random_cap, forks)
    return build(item), item


def _work(args):
    item, config = args
    D, clog = _materialize(item, config)
    rep = run_checks(D, clog, config.checks, config.mutation, config.pair_cap)
    if isinstance(item, tuple):
        rep["seed"] = item[1]
    return rep


def verify_family(config):
    """Yield one report per lattice, in enumeration order, then a summary dict."""
    items = ((item, config) for item in _stream(config))
    failures = {name: 0 for name in config.checks}
    count = failed = 0
    slowest = []
    if config.jobs > 1:
        import multiprocessing as mp

        pool = mp.Pool(config.jobs)
        reports = pool.imap(_work, items, chunksize=4)
    else:
        pool = None
        reports = map(_work, items)
    try:
        for rep in reports:
            count += 1
            bad = [name for name, res in rep["checks"].items() if not res["pass"]]
            for name in bad:
                failures[name] += 1
            if bad:
                failed += 1
                log.info("lattice %s fails %s", rep["log"], bad)
            slowest.append((rep["seconds"], rep["log"]))
            slowest = sorted(slowest, key=lambda s: -s[0])[:5]
            yield rep
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    yield {"summary": True, "lattices": count, "failed_lattices": failed,
           "failures": failures, "slowest": [{"seconds": s, "log": lg} for s, lg in slowest]}


def replay(report, checks=None, mutation=None, pair_cap=20):
    """Re-run the checks recorded in ``report`` from its construction log."""
    clog = ConstructionLog.from_json(report["log"])
    D = build(clog)
    return run_checks(D, clog, checks or tuple(report["checks"]), mutation, pair_cap)
