"""Exit criteria.  Each test records one PASS/FAIL line in the terminal summary.

Counts are single-threaded and timed from a cold search cache.  The n = 9
rows for k = 4 and k = 5 run only with ``--run-extended``.
"""
import io
import itertools
import random
import time

import pytest

from canmat.bitcore import apply_perms, complement, decode, encode, is_member, transpose_tuple
from canmat.canonical import is_canonical
from canmat.cli import main
from canmat.enumeration import _search, count_canonical, count_lambda, list_canonical
from canmat.fibtheorem import embed_case_i, embed_case_ii, fib, partition_check
from canmat.oracle import compare, orbit_partition

import brute


def timed_counts(k, ns):
    _search.cache_clear()
    t0 = time.perf_counter()
    got = [count_canonical(n, k, 1) for n in ns]
    return got, time.perf_counter() - t0


def test_c01_sequence_k2(criterion):
    expected = [1, 1, 2, 5, 13, 42, 155, 636, 2889, 14321]
    got, secs = timed_counts(2, range(2, 12))
    criterion(got == expected and secs <= 60, f"n=2..11 {got} in {secs:.1f}s (<= 60s)")
    assert got == expected
    assert secs <= 60


def test_c02_sequence_k3(criterion):
    expected = [1, 1, 3, 25, 272, 4070, 79221]
    got, secs = timed_counts(3, range(3, 10))
    criterion(got == expected and secs <= 120, f"n=3..9 {got} in {secs:.1f}s (<= 120s)")
    assert got == expected
    assert secs <= 120


def test_c03_sequence_k4(criterion):
    expected = [1, 1, 5, 161, 7776]
    got, secs = timed_counts(4, range(4, 9))
    criterion(got == expected and secs <= 120, f"n=4..8 {got} in {secs:.1f}s (<= 120s)")
    assert got == expected
    assert secs <= 120


@pytest.mark.extended
def test_c03_sequence_k4_n9(criterion):
    got, secs = timed_counts(4, [9])
    criterion(got == [626649] and secs <= 900, f"n=9 {got} in {secs:.1f}s (<= 900s)")
    assert got == [626649]
    assert secs <= 900


def test_c04_sequence_k5(criterion):
    expected = [1, 1, 8, 1112]
    got, secs = timed_counts(5, range(5, 9))
    criterion(got == expected and secs <= 120, f"n=5..8 {got} in {secs:.1f}s (<= 120s)")
    assert got == expected
    assert secs <= 120


@pytest.mark.extended
def test_c04_sequence_k5_n9(criterion):
    got, secs = timed_counts(5, [9])
    criterion(got == [287311] and secs <= 900, f"n=9 {got} in {secs:.1f}s (<= 900s)")
    assert got == [287311]
    assert secs <= 900


def test_c05_trivial_rows(criterion):
    bad = []
    for n in range(1, 9):
        for k in {0, n, 1, n - 1}:
            if count_canonical(n, k) != 1:
                bad.append((n, k))
        if list(list_canonical(n, 1)) != [tuple(1 << i for i in range(n))]:
            bad.append((n, "k=1 element"))
    criterion(not bad, f"n<=8, k in {{0,1,n-1,n}}; failures={bad}")
    assert not bad


def test_c06_fibonacci(criterion):
    f = fib(7)
    counts = [count_canonical(k + 2, k) for k in range(8)]
    rec = all(
        count_canonical(k + 2, k) == count_canonical(k, k - 2) + count_canonical(k + 1, k - 1)
        for k in range(2, 8)
    )
    embeds_ok = all(
        is_canonical(embed_case_i(b, k))
        for k in range(2, 7) for b in list_canonical(k, k - 2)
    ) and all(
        is_canonical(embed_case_ii(b, k))
        for k in range(2, 7) for b in list_canonical(k + 1, k - 1)
    )
    parts = all(partition_check(k) for k in range(2, 7))
    ok = counts == f == [1, 1, 2, 3, 5, 8, 13, 21] and rec and embeds_ok and parts
    criterion(ok, f"C(k+2,k)={counts}; recurrence={rec}; partition k=2..6={parts}")
    assert counts == f == [1, 1, 2, 3, 5, 8, 13, 21]
    assert rec and embeds_ok and parts


def test_c07_oracle_cross_checks(criterion):
    t0 = time.perf_counter()
    failures = []
    for n in range(1, 6):
        orbits = {}
        for k in range(n + 1):
            part = orbit_partition(n, k)
            lam = count_lambda(n, k)
            if part.total() != lam:
                failures.append(("sizes", n, k))
            if lam != len(brute.all_members(n, k)):
                failures.append(("lambda", n, k))
            orbits[k] = len(part.classes)
            if count_canonical(n, k) < orbits[k]:
                failures.append(("C<O", n, k))
        if any(orbits[k] != orbits[n - k] for k in range(n + 1)):
            failures.append(("symmetry", n))
    c42, o42 = count_canonical(4, 2), len(orbit_partition(4, 2).classes)
    if (c42, o42) != (2, 2):
        failures.append(("C(4,2)=O(4,2)=2", c42, o42))
    secs = time.perf_counter() - t0
    criterion(not failures and secs <= 60, f"n<=5 all k; failures={failures}; {secs:.1f}s (<= 60s)")
    assert not failures
    assert secs <= 60


@pytest.mark.parametrize("n,k,c_published", [(5, 2, 5), (5, 3, 3)])
def test_c08_audit_report(criterion, n, k, c_published):
    out = io.StringIO()
    code = main(["compare", "--n", str(n), "--k", str(k), "--threads", "1"], out=out)
    text = out.getvalue()
    report = compare(n, k)
    flag = "true" if report.agree else "false"
    printed = f"C={c_published} O={report.orbit_count} agree={flag}" in text
    consistent = not report.problems()
    criterion(code == 0 and printed and consistent,
              f"C={report.canonical_count} O={report.orbit_count} agree={flag}; consistent={consistent}")
    assert code == 0
    assert report.canonical_count == c_published
    assert printed
    assert consistent


@pytest.mark.parametrize("argv", [
    ["list", "--n", "8", "--k", "4"],
    ["list", "--n", "9", "--k", "3", "--format", "json"],
    ["sequence", "--k", "2", "--n-max", "10"],
    ["sequence", "--k", "4", "--n-max", "8", "--format", "json"],
])
def test_c09_determinism(criterion, argv):
    outputs = []
    for threads in ("1", "2", "8"):
        out = io.StringIO()
        assert main(argv + ["--threads", threads], out=out) == 0
        outputs.append(out.getvalue().encode())
    same = outputs[0] == outputs[1] == outputs[2]
    criterion(same, " ".join(argv) + f" ({len(outputs[0])} bytes)")
    assert same


def test_c10_properties(criterion):
    rng = random.Random(10)
    ok = True
    for n in range(1, 4):
        for t in itertools.product(range(1 << n), repeat=n):
            m = decode(t)
            ok &= encode(m) == t and decode(encode(m)) == m
    for _ in range(10_000):
        n = rng.randint(1, 12)
        t = tuple(rng.randrange(1 << n) for _ in range(n))
        ok &= encode(decode(t)) == t
        ok &= transpose_tuple(transpose_tuple(t)) == t
        k = rng.randint(0, n)
        ok &= is_member(t, n, k) == is_member(complement(t), n, n - k)
    for _ in range(2_000):
        n = rng.randint(1, 12)
        t = tuple(rng.randrange(1 << n) for _ in range(n))
        r1, c1, r2, c2 = (rng.sample(range(n), n) for _ in range(4))
        ident = list(range(n))
        ok &= apply_perms(t, ident, ident) == t
        ok &= apply_perms(apply_perms(t, r1, c1), r2, c2) == apply_perms(
            t, [r1[i] for i in r2], [c1[j] for j in c2])
    # membership laws on real members, where is_member is true
    for n in range(2, 7):
        for k in range(n + 1):
            for t in list_canonical(n, k):
                u = apply_perms(t, rng.sample(range(n), n), rng.sample(range(n), n))
                ok &= is_member(u, n, k) and is_member(complement(u), n, n - k)
    criterion(ok, "round-trips, transpose involution, complement law, group action")
    assert ok
