"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` (or plainly under
``pytest -v``, where the lines go straight to the terminal), or as a
script: ``python tests/test_acceptance.py``.
"""
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402
from spantl import corpus  # noqa: E402
from spantl.cli import cmd_reduce  # noqa: E402
from spantl.comp_dag import build_dag  # noqa: E402
from spantl.computation import (check_well_behaved, enumerate_computations,  # noqa: E402
                                extract_output, span_exact)
from spantl.ato_core import ResourceBounds  # noqa: E402
from spantl.errors import CycleError  # noqa: E402
from spantl.nfta import Nfta, accepts, count_exact, determinize  # noqa: E402
from spantl.reduction import build_nfta, size_bound, tuple_product  # noqa: E402
from spantl.trees import canonical_code  # noqa: E402

INPUTS = ("", "x", "ab", "bxa", "abab", "abxba", "ababab")


def criterion_1():
    p1 = {(), ("s1", "s2"), ("s3",)}
    p2 = {("s5",), ("s6", "s7")}
    expected = {("s5",), ("s6", "s7"), ("s1", "s2", "s5"), ("s1", "s2", "s6", "s7"),
                ("s3", "s5"), ("s3", "s6", "s7")}
    best = float("inf")
    for _ in range(20):
        start = time.perf_counter()
        got = tuple_product([p1, p2])
        best = min(best, time.perf_counter() - start)
    return got == expected and best < 1e-3, f"equal={got == expected} time={best * 1e6:.1f}us (< 1 ms)"


def criterion_2():
    start = time.perf_counter()
    bad = []
    checked = 0
    for name in corpus.TERMINATING:
        m = corpus.load(name)
        for w in INPUTS:
            span = span_exact(m, w, mode="ordered")
            count = count_exact(build_nfta(m, w), size_bound(m), cumulative=True)
            checked += 1
            if span != count:
                bad.append((name, w, span, count))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60 and len(corpus.TERMINATING) >= 8
    return ok, (f"{len(corpus.TERMINATING)} machines, {checked} runs, mismatches={bad} "
                f"time={elapsed:.2f}s (< 60 s)")


def _random_automata(count, seed):
    rng = random.Random(seed)
    return [oracles.random_nfta(rng, max_states=4, max_labels=3, max_arity=2) for _ in range(count)]


def criterion_3():
    start = time.perf_counter()
    autos = _random_automata(24, seed=20240601)
    bad = []
    for i, a in enumerate(autos):
        for n in range(0, 7):
            brute = 0 if n == 0 else sum(oracles.naive_accepts(a, t)
                                         for t in oracles.all_trees(n, a.alphabet, 2))
            got = count_exact(a, n, cumulative=False)
            if got != brute:
                bad.append((i, n, got, brute))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 120, f"{len(autos)} automata, n=0..6, mismatches={bad} time={elapsed:.2f}s (< 120 s)"


def criterion_4():
    a = Nfta(frozenset({"q"}), frozenset({"a"}), "q",
             frozenset({("q", "a", ()), ("q", "a", ("q",)), ("q", "a", ("q", "q"))}))
    got = [count_exact(a, n) for n in range(1, 7)]
    brute = [sum(oracles.naive_accepts(a, t) for t in oracles.all_trees(n, "a", 2)) for n in range(1, 7)]
    expected = [1, 1, 2, 4, 9, 21]
    return got == expected == brute, f"counts={got} brute={brute} expected={expected}"


def criterion_5():
    m = corpus.load("ex4_two_universal")
    (t,) = enumerate_computations(m, "")
    k1 = check_well_behaved(t, ResourceBounds(m.bounds.max_nodes, m.bounds.tape_cap, 1))
    k2 = check_well_behaved(t, ResourceBounds(m.bounds.max_nodes, m.bounds.tape_cap, 2))
    ok = len(k1) == 1 and k1[0].kind == "universal_k" and k2 == []
    return ok, f"k=1 violations={len(k1)} ({k1[0].kind if k1 else '-'}), k=2 violations={len(k2)}"


def criterion_6():
    total = bad = 0
    for name in corpus.TERMINATING:
        m = corpus.load(name)
        for w in INPUTS:
            for t in enumerate_computations(m, w):
                total += 1
                ordered = extract_output(t, "ordered")
                unordered = extract_output(t, "unordered")
                if ordered.label != "" or \
                        canonical_code(unordered, "unordered") != canonical_code(ordered, "unordered"):
                    bad += 1
    return bad == 0 and total > 0, f"{total} computations, {bad} failing"


def criterion_7():
    missing = 0
    total = 0
    for name in corpus.TERMINATING:
        m = corpus.load(name)
        for w in INPUTS:
            nodes = set(build_dag(m, w).nodes)
            for t in enumerate_computations(m, w):
                for c in t.configurations():
                    total += 1
                    missing += c not in nodes
    try:
        build_dag(corpus.load("ex5_loop"), "x")
        cycle = False
    except CycleError:
        cycle = True
    return missing == 0 and cycle, f"{total} configurations checked, {missing} missing; EX5 cycle error={cycle}"


def criterion_8():
    start = time.perf_counter()
    autos = [build_nfta(corpus.load(n), w) for n in corpus.TERMINATING for w in ("", "ab")]
    autos += _random_automata(20, seed=77)
    trees = bad = 0
    for a in autos:
        det = determinize(a)
        for n in range(1, 5):
            for t in oracles.all_trees(n, a.alphabet, a.max_arity):
                trees += 1
                bad += det.accepts(t) != accepts(a, t)
    elapsed = time.perf_counter() - start
    return bad == 0 and elapsed < 60, f"{len(autos)} automata, {trees} trees, {bad} disagreements, time={elapsed:.2f}s (< 60 s)"


def criterion_9(repeats=7):
    times = {}
    for n in (2, 4, 6, 8):
        w = "ab" * (n // 2)
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            report = cmd_reduce("corpus:input_reader", w)
            best = min(best, time.perf_counter() - start)
            if report.status != 0:
                return False, f"cmd_reduce failed for |w|={n}: {report.violations}"
        times[n] = best
    ratio_hi = times[8] / times[6]
    band = 8 * times[6] / times[4]
    ok = ratio_hi < band and all(t < 10 for t in times.values())
    shown = ", ".join(f"t({n})={t * 1e3:.2f}ms" for n, t in times.items())
    return ok, f"{shown}; t8/t6={ratio_hi:.2f} < 8*t6/t4={band:.2f}"


CRITERIA = {
    1: ("tuple product worked example", criterion_1),
    2: ("span equals NFTA count on the corpus", criterion_2),
    3: ("exact NFTA counting equals brute force", criterion_3),
    4: ("known sequence 1, 1, 2, 4, 9, 21", criterion_4),
    5: ("well-behaved guard on two universal steps", criterion_5),
    6: ("output invariants", criterion_6),
    7: ("DAG soundness and cycle rejection", criterion_7),
    8: ("determinization correctness", criterion_8),
    9: ("reduction time grows polynomially", criterion_9),
}


def run_criterion(number):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} -- {detail}"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
