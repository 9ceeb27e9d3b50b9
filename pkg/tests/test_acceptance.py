"""Acceptance criteria AC1-AC9.

Each test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary (see conftest.py) and by ``python tests/test_acceptance.py``.
"""
import re
import sys
import time
from collections import defaultdict
from fractions import Fraction

import pytest

from tiltlab import cli, padic, verify
from tiltlab import projectors as P
from tiltlab.exactnum import pval

LINES: dict[str, str] = {}


def record(ac, ok, detail):
    line = f"{ac} {'PASS' if ok else 'FAIL'}: {detail}"
    LINES[ac] = line
    print(line)
    return ok


def run_suites(fn, primes, **kw):
    t = time.time()
    reps = {p: fn(p, **kw) for p in primes}
    bad = [f"p={p} {c.name} {c.detail}" for p, r in reps.items() for c in r.failures]
    n = sum(len(r.checks) for r in reps.values())
    return reps, bad, n, time.time() - t


def test_ac1_lambda():
    v = padic.signed_value([1, 2, 6, 4, 0, 6, 6], 7)
    t = time.perf_counter()
    lam = P.lambda_scalar(v, (5, 3, 2, 1, 0), 7)
    dt = time.perf_counter() - t
    ok = lam == Fraction(485105, 689087) and pval(lam, 7) == -5 and dt < 1e-3
    assert record("AC1", ok, f"lambda = {lam}, ord_7 = {pval(lam, 7)}, {dt * 1e3:.3f} ms")


def test_ac2_combinatorics():
    t = time.time()
    a = padic.ancestry(23, 3)
    checks = [
        (a.mother, a.generation) == (21, 2),
        padic.support(23, 3) == {23, 19, 17, 13},
        padic.fsupport(23, 3) == {19, 17},
    ]
    v = padic.signed_value([4, 5, 0, 2, 0, 6, 1], 7)
    checks += [
        padic.reflect_down(v, 7, {5, 4, 3, 0}) == padic.signed_value([4, -5, 0, -2, 0, 6, -1], 7),
        padic.reflect_up(v, 7, {5, 4, 3, 1, 0}) == padic.signed_value([6, -5, 0, -2, 2, -6, -1], 7),
        padic.hull(v, 7, {5, 4, 3, 1, 0}) == (5, 4, 3, 2, 1, 0),
        padic.reflect_up(13, 3, {1, 0}) == 23 and padic.reflect_down(23, 3, {1, 0}) == 13,
        padic.enumerate_block(1, 3, 23) == [0, 4, 6, 10, 12, 16, 18, 22],
    ]
    dt = time.time() - t
    ok = all(checks) and dt < 1
    assert record("AC2", ok, f"{sum(checks)}/{len(checks)} golden values, {dt:.3f} s")


def test_ac3_projectors_admissible():
    reps, bad, n, dt = run_suites(verify.suite_projectors, (2, 3, 5), vmax=12)
    ok = not bad and dt <= 300
    assert record("AC3", ok, f"{n} checks, {len(bad)} failures, {dt:.1f} s {bad[:3]}")


@pytest.mark.slow
def test_ac4_identities():
    reps, bad, n, dt = run_suites(verify.suite_identities, (2, 3, 5), vmax=12)
    ok = not bad and dt <= 600
    assert record("AC4", ok, f"{n} checks, {len(bad)} failures, {dt:.1f} s {bad[:3]}")


@pytest.mark.slow
def test_ac5_presentation():
    reps, bad, n, dt = run_suites(verify.suite_presentation, (2, 3, 5), vmax=12)
    ok = not bad and dt <= 900
    assert record("AC5", ok, f"{n} checks, {len(bad)} failures, {dt:.1f} s {bad[:3]}")


def test_ac6_basis():
    reps, bad, n, dt = run_suites(verify.suite_basis, (2, 3, 5, 7), vmax=12)
    ok = not bad and dt <= 60
    assert record("AC6", ok, f"{n} checks, {len(bad)} failures, {dt:.1f} s {bad[:3]}")


def test_ac7_characters():
    reps, bad, n, dt = run_suites(verify.suite_characters, (2, 3, 5, 7), vmax=12)
    ok = not bad and dt < 10
    assert record("AC7", ok, f"{n} checks, {len(bad)} failures, {dt:.1f} s {bad[:3]}")


def test_ac8_findings_reported(capsys):
    code = cli.main(["verify", "--p", "3", "--suite", "characters"])
    out = capsys.readouterr().out
    found = [line.strip() for line in out.splitlines() if "finding:" in line]
    ok = (
        code == 0
        and any("(7,3)" in f for f in found)
        and any("(23,3)" in f for f in found)
        and any("ideal levels" in f for f in found)
    )
    assert record("AC8", ok, f"exit {code}, {len(found)} findings reported")


def test_ac9_quiver_export(tmp_path, capsys):
    path = tmp_path / "q.dot"
    t = time.time()
    code = cli.main(["quiver", "--p", "3", "--vmax", "53", "--dot", str(path)])
    dt = time.time() - t
    dot = path.read_text()
    down = defaultdict(set)
    adj = defaultdict(set)
    for a, b, style in re.findall(r"v(\d+) -> v(\d+) \[style=(\w+)", dot):
        a, b = int(a), int(b)
        adj[a].add(b)
        adj[b].add(a)
        if style == "solid":
            down[a].add(b)
    arrows_ok = all(down[v - 1] == {u - 1 for u in padic.fsupport(v, 3)} for v in range(1, 54))
    eves_ok = all(not down[v - 1] for v in range(1, 54) if padic.is_eve(v, 3))
    comps = []
    seen = set()
    for x in range(53):
        if x in seen:
            continue
        stack, comp = [x], set()
        while stack:
            y = stack.pop()
            if y not in comp:
                comp.add(y)
                stack.extend(adj[y])
        seen |= comp
        comps.append(comp)
    blocks_ok = all(len({padic.block_of(y + 1, 3) for y in c}) == 1 for c in comps)
    blocks_ok &= len(comps) == len({padic.block_of(v, 3) for v in range(1, 54)})
    ok = code == 0 and arrows_ok and eves_ok and blocks_ok and dt < 1
    assert record("AC9", ok, f"{len(comps)} components, arrows {arrows_ok}, eves {eves_ok}, blocks {blocks_ok}, {dt:.2f} s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
