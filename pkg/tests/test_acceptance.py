"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line in the summary."""

import os
import shutil
import subprocess
import sys
import time

from idealizer_lab.checks import TABLE_B_ROW, TABLE_C_ROW, check_antisymmetry, check_jacobi
from idealizer_lab.grading import (
    decompose,
    entry_index,
    enumerate_chain_set,
    enumerate_layer,
    period_map,
    threshold,
    wd,
)
from idealizer_lab.lie import RingContext, basis
from idealizer_lab.oracle import OracleConfig, commutator_containment, oracle_chain
from idealizer_lab.partitions import partition_counts
from oracles import example_n5_layer

ORACLE_GRID = {3: 10, 4: 10, 5: 12}


def _analytic(ctx, i_max):
    return [frozenset(enumerate_chain_set(ctx, i)) for i in range(-1, i_max + 1)]


def test_criterion_01_sequence(acceptance):
    partition_counts.cache_clear()
    t0 = time.perf_counter()
    a = partition_counts(14).a
    elapsed = time.perf_counter() - t0
    ok = tuple(a[:15]) == (1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135) and elapsed < 1
    acceptance(1, "partition counts a_0..a_14", ok, f"{elapsed:.3f}s")
    assert ok


def test_criterion_02_golden_listing(acceptance):
    ctx = RingContext(5)
    t0 = time.perf_counter()
    bad = []
    for i in range(5, 17):
        got = {k: {e.partition.items() for e in v} for k, v in enumerate_layer(ctx, i).by_direction.items()}
        if got != example_n5_layer(i):
            bad.append(i)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 5
    acceptance(2, "n=5 layers equal the published listing, i=5..16", ok, f"differs at i={bad}" if bad else f"{elapsed:.3f}s")
    assert ok, f"layers differ from the printed listing at i = {bad}"


def test_criterion_03_size_formulas(acceptance):
    t0 = time.perf_counter()
    counts = partition_counts(40)
    bad = []
    for n in range(3, 8):
        ctx = RingContext(n)
        thr = threshold(n)
        # layers are defined from i = 0, which only bites for n = 3 (threshold -2)
        for i in range(max(0, thr + 1), thr + 3 * (n - 1) + 1):
            r = decompose(n, i).r
            layer = enumerate_layer(ctx, i)
            for k in range(1, n + 1):
                if len(layer.by_direction.get(k, ())) != counts.b_at(r + k - n - 1):
                    bad.append((n, i, k))
            if len(layer) != counts.c_at(r - 1):
                bad.append((n, i, "total"))
    elapsed = time.perf_counter() - t0
    # printed rows do not fit: the n = 5, r = 4 layer
    layer = enumerate_layer(RingContext(5), 8)
    printed_fit = len(layer) == TABLE_C_ROW[3] or [len(layer.by_direction[k]) for k in (5, 4, 3, 2)] == list(
        TABLE_B_ROW[3::-1]
    )
    ok = not bad and elapsed < 30 and len(layer) == 14 and not printed_fit
    acceptance(3, "layer sizes b_{r+k-n-1} and c_{r-1}, n=3..7", ok, f"{elapsed:.2f}s, bad={bad[:3]}")
    assert ok


def test_criterion_04_oracle_equivalence(acceptance):
    t0 = time.perf_counter()
    bad = []
    for n, i_max in ORACLE_GRID.items():
        ctx = RingContext(n)
        oracle = oracle_chain(ctx, i_max, OracleConfig(pure_mode=True))
        for offset, (got, want) in enumerate(zip(oracle, _analytic(ctx, i_max))):
            if got != want:
                bad.append((n, offset - 1))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    acceptance(4, "pure-mode oracle chain equals analytic chain", ok, f"{elapsed:.2f}s, bad={bad}")
    assert ok


def test_criterion_05_periodicity(acceptance):
    bad = []
    for n in range(3, 8):
        ctx = RingContext(n)
        thr = threshold(n)
        for i in range(0, thr + 3 * (n - 1) + 1):
            src = set(enumerate_layer(ctx, i).elements())
            dst = set(enumerate_layer(ctx, i + n - 1).elements())
            image = {period_map(ctx, e) for e in src}
            injective = len(image) == len(src)
            if not injective or not image <= dst or (i > thr and image != dst):
                bad.append((n, i))
    ok = not bad
    acceptance(5, "period map bijective above threshold, injective below", ok, f"bad={bad[:5]}")
    assert ok


def test_criterion_06_algebraic_suite(acceptance):
    t0 = time.perf_counter()
    results = []
    for n in (3, 4, 5):
        ctx = RingContext(n)
        results.append(check_antisymmetry(ctx, 8))
        results.append(check_jacobi(ctx, trials=1000, max_weight=12, seed=20240229 + n))
    elapsed = time.perf_counter() - t0
    failed = [r for r in results if not r.passed]
    ok = not failed and elapsed < 30
    acceptance(6, "antisymmetry (wt<=8) and Jacobi (1000 triples, wt<=12)", ok, f"{elapsed:.2f}s")
    assert ok, failed[:1]


def test_criterion_07_commutator_containment(acceptance):
    t0 = time.perf_counter()
    bad = []
    for n in (4, 5):
        ctx = RingContext(n)
        for j in range(0, 9):
            for i in range(-1, j):
                if not commutator_containment(ctx, i, j):
                    bad.append((n, i, j))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    acceptance(7, "[N_i, N_j] in Z N_{j-1} for -1<=i<j<=8", ok, f"{elapsed:.2f}s, bad={bad[:3]}")
    assert ok


def test_criterion_08_non_nilpotence_witness(acceptance):
    e = basis({2: 3}, 3)
    bad = []
    for n in (3, 4, 5):
        ctx = RingContext(n)
        if entry_index(ctx, e) is not None or wd(ctx, e) < n:
            bad.append((n, "entry_index"))
        if e in enumerate_chain_set(ctx, 50):
            bad.append((n, "analytic"))
        if any(e in level for level in oracle_chain(ctx, 50)):
            bad.append((n, "oracle"))
    ok = not bad
    acceptance(8, "x2^3*d3 never enters the chain (i <= 50)", ok, f"bad={bad}")
    assert ok


def test_criterion_09_cap_robustness(acceptance):
    bad = []
    for n, i_max in ORACLE_GRID.items():
        ctx = RingContext(n)
        base = oracle_chain(ctx, i_max, OracleConfig(weight_cap_margin=0))
        wide = oracle_chain(ctx, i_max, OracleConfig(weight_cap_margin=n))
        bad += [(n, k - 1) for k, (x, y) in enumerate(zip(base, wide)) if x != y]
    ok = not bad
    acceptance(9, "weight-cap margin +n changes no level", ok, f"bad={bad}")
    assert ok


def _cli():
    exe = shutil.which("idealizer-lab")
    return [exe] if exe else [sys.executable, "-m", "idealizer_lab"]


def test_criterion_10_determinism(acceptance):
    argv = _cli() + ["verify", "--n", "5", "--i-max", "8", "--seed", "17", "--format", "json"]
    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        proc = subprocess.run(argv, capture_output=True, env=env, timeout=120)
        outs.append((proc.returncode, proc.stdout))
    ok = outs[0] == outs[1] and outs[0][0] == 0 and outs[0][1]
    acceptance(10, "verify --format json is byte-identical across runs", bool(ok), f"{len(outs[0][1])} bytes")
    assert ok

