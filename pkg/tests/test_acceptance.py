"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from itertools import combinations

import pytest

from zzreps.hopsize import cycle_hop_persistence
from zzreps.io import report_to_json
from zzreps.netsim import FailureDisk, NetworkConfig
from zzreps.oracle import all_cycles_containing, validate_basis
from zzreps.pipeline import simulate, track_adjacency
from zzreps.render import svg_bytes
from zzreps.sequence import random_zigzag_stream
from zzreps.simplicial import Z2Chain, all_faces
from zzreps.tracker import Change, EventKind, ZigzagTracker, events_from, run
from zzreps.verify import Verification, verify_stream

from conftest import ACCEPTANCE_LINES, cycle_graph

pytestmark = pytest.mark.acceptance


def record(n, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


# -- 1 ---------------------------------------------------------------------------------
def test_c1_hop_size_table():
    t0 = time.perf_counter()
    rows = []
    for n in range(4, 16):
        K, edges = cycle_graph(n)
        k = next(k for k in range(1, 6) if n in (3 * k + 1, 3 * k + 2, 3 * k + 3))
        rows.append(cycle_hop_persistence(K, Z2Chain.of(edges)) == k)
    dt = time.perf_counter() - t0
    ok = all(rows) and dt < 5
    assert record(1, "hop-size table for C_4..C_15", ok, f"{sum(rows)}/12 rows, {dt:.2f}s < 5s")


# -- 2, 3, 4 share the same streams ----------------------------------------------------
@pytest.fixture(scope="module")
def oracle_run():
    t0 = time.perf_counter()
    total = Verification()
    for seed in range(200):
        rng = random.Random(seed)
        events = random_zigzag_stream(rng, n_vertices=4 + seed % 7, n_events=300, top_dim=2)
        total.merge(verify_stream(events, dims=(0, 1)))
    return total, time.perf_counter() - t0


def test_c2_oracle_betti_consistency(oracle_run):
    res, dt = oracle_run
    bad = len(res.betti_violations) + len(res.basis_violations)
    ok = bad == 0 and dt < 60
    assert record(2, "live intervals = betti and valid bases, p in {0,1}", ok,
                  f"200 streams, {res.steps} steps, {bad} violations, {dt:.1f}s < 60s")


def test_c3_canonical_births(oracle_run):
    res, _ = oracle_run
    ok = not res.canonical_violations and res.canonical_births > 0
    assert record(3, "birth by removal stores the boundary", ok,
                  f"{res.canonical_births} births checked, {len(res.canonical_violations)} exceptions")


def test_c4_no_stale_simplices(oracle_run):
    res, _ = oracle_run
    ok = not res.stale_violations
    assert record(4, "no representative touches a removed simplex", ok,
                  f"{len(res.stale_violations)} exceptions")


# -- 5 ---------------------------------------------------------------------------------
def chain(*edges):
    return Z2Chain.of(edges)


def test_c5_hand_sequences():
    loop = chain((0, 1), (1, 2), (0, 2))
    checks = []

    # full triangle built in 7 events, face removed at 8, re-added at 9
    events = events_from(("A", s) for s in all_faces([(0, 1, 2)]))
    events += events_from([("R", (0, 1, 2)), ("A", (0, 1, 2))], start=8)
    bc = run(events, dims=(0, 1))
    checks.append(bc.pairs() == [(0, 1, None), (0, 2, 4), (0, 3, 5), (1, 6, 7), (1, 8, 9)])
    h1 = {iv.birth: iv for iv in bc.in_dim(1)}
    checks.append(h1[6].changes == [(6, loop)] and h1[8].changes == [(8, loop)])

    # hollow square 0-1-2-3 with diagonal [0,2]; the diagonal is removed at step 10
    events = events_from(("A", s) for s in all_faces([(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]))
    events += events_from([("R", (0, 2))], start=10)
    tr = ZigzagTracker(check=True)
    tr.run(events[:9])
    w1, w2 = chain((0, 1), (1, 2), (0, 2)), chain((0, 2), (2, 3), (0, 3))
    checks.append(tr.representatives(1) == [(8, w1), (9, w2)])
    out = tr.step(events[9])
    checks.append(out.change is Change.DEATH and out.interval.birth == 8 and out.interval.death == 10)
    outer = chain((0, 1), (1, 2), (2, 3), (0, 3))
    checks.append(tr.representatives(1) == [(9, outer)])
    checks.append(validate_basis(tr.complex, 1, [outer]))
    bc = tr.barcode((0, 1))
    checks.append(sorted(bc.pairs()) == sorted([(0, 1, None), (0, 2, 5), (0, 3, 6), (0, 4, 7), (1, 8, 10),
                                               (1, 9, None)]))
    live = [iv for iv in bc.in_dim(1) if iv.birth == 9][0]
    checks.append(live.changes == [(9, w2), (10, outer)])
    ok = all(checks)
    assert record(5, "hand-computed triangle and square-with-diagonal sequences", ok,
                  f"{sum(checks)}/{len(checks)} checks")


# -- 6 ---------------------------------------------------------------------------------
def connected_graph(rng):
    while True:
        n = rng.randint(3, 7)
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.55]
        adj = {v: set() for v in range(n)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        seen, todo = {0}, [0]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) == n:
            return n, edges


def test_c6_shortest_cycle_optimality():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    births = exceptions = 0
    for _ in range(500):
        n, edges = connected_graph(rng)
        rng.shuffle(edges)
        stream = [("A", (v,)) for v in range(n)]
        present = set()
        for e in edges:
            stream.append(("A", e))
            present.add(e)
            # fill flag triangles as they appear
            for t in combinations(range(n), 3):
                if set(e) <= set(t) and all(f in present for f in combinations(t, 2)):
                    stream.append(("A", t))
        tr = ZigzagTracker()
        for ev in events_from(stream):
            before = tr.complex.copy()
            out = tr.step(ev)
            if out.change is Change.BIRTH and ev.kind is EventKind.ADD and out.dim == 1:
                births += 1
                w = tr.representatives(1)[-1][1]
                best = min(len(c) for c in all_cycles_containing(before, ev.simplex))
                if len(w) != best:
                    exceptions += 1
    dt = time.perf_counter() - t0
    ok = exceptions == 0 and births > 0 and dt < 120
    assert record(6, "shortest-cycle optimality on 500 connected graphs", ok,
                  f"{births} births, {exceptions} exceptions, {dt:.1f}s < 120s")


# -- 7, 8 --------------------------------------------------------------------------------
FAILURE_CONFIG = NetworkConfig(n=120, r=0.11, T=15, seed=0, failure=FailureDisk((0.5, 0.5), 0.0, 0.3 / 14))


def expanding_failure_report(cfg=FAILURE_CONFIG):
    mats, masks = simulate(cfg)
    return track_adjacency(mats, masks, dims=(0, 1), sizes=True, seed=cfg.seed)


def test_c7_expanding_failure():
    t0 = time.perf_counter()
    report = expanding_failure_report()
    dt = time.perf_counter() - t0
    best = None
    for iv in report.barcode.in_dim(1):
        alive = [c.index for c in report.coarse if iv.birth <= c.step and (iv.death is None or c.step < iv.death)]
        if len(alive) >= 8 and iv.sizes:
            first, last = iv.sizes[min(iv.sizes)], iv.sizes[max(iv.sizes)]
            if last > first and (best is None or len(alive) > best[0]):
                best = (len(alive), first, last)
    ok = best is not None and dt < 60
    detail = "no qualifying H_1 bar" if best is None else f"bar over {best[0]} coarse steps, size {best[1]} -> {best[2]}"
    assert record(7, "expanding-failure hole grows", ok, f"{detail}, {dt:.1f}s < 60s")


def test_c8_determinism():
    a, b = expanding_failure_report(), expanding_failure_report()
    same_json = report_to_json(a) == report_to_json(b)
    same_svg = svg_bytes(a) == svg_bytes(b)
    ok = same_json and same_svg
    assert record(8, "byte-identical report and SVG on rerun", ok, f"json={same_json} svg={same_svg}")
