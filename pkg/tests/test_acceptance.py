"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run with ``pytest -v tests/test_acceptance.py``.  The extended profile
(SL(2,5) and S5 batteries) is marked ``slow``.
"""

import time

import pytest

from holocount.suites import Profile, byott_check, gp_check, run_suite

MINUTE = 60.0


def report(capsys, number: int, title: str, checks, seconds: float, limit: float | None) -> bool:
    ok = all(c.ok for c in checks) and (limit is None or seconds <= limit)
    bound = "" if limit is None else f" <= {limit:.0f}s"
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title} "
              f"({seconds:.1f}s{bound})")
        for c in checks:
            if not c.ok:
                print(f"    {c.line()}")
    return ok


def timed(fn):
    t = time.monotonic()
    out = fn()
    return out, time.monotonic() - t


def test_criterion_1_abelian(capsys):
    prof = Profile()
    checks, dt = timed(lambda: run_suite("abelian", prof))
    assert len(checks) == 25
    assert report(capsys, 1, "e(A, A) = 1 exactly on the listed abelian groups", checks, dt,
                  10 * MINUTE)
    assert prof.lemma_checks > 0


def test_criterion_2_cyclic_pn(capsys):
    prof = Profile()
    checks, dt = timed(lambda: run_suite("cyclic-pn", prof))
    assert len(checks) == 6
    assert report(capsys, 2, "no cyclic structures on non-cyclic p-groups", checks, dt,
                  5 * MINUTE)


def test_criterion_3_alternating(capsys):
    prof = Profile(prune=True)
    checks, dt = timed(lambda: run_suite("quasisimple", prof))
    assert report(capsys, 3, "e(A5, A5) = 2 with rho and lambda only", checks, dt,
                  30 * MINUTE)


@pytest.mark.slow
def test_criterion_3_sl25_extended(capsys):
    prof = Profile(extended=True, prune=True)
    checks, dt = timed(lambda: run_suite("quasisimple", prof))
    assert len(checks) == 2
    assert report(capsys, 3, "extended: e(SL(2,5), SL(2,5)) = 2", checks, dt, 4 * 3600.0)


@pytest.mark.slow
def test_criterion_4_sl25_targets(capsys):
    prof = Profile(extended=True)
    checks, dt = timed(lambda: run_suite("2a5", prof))
    assert len(checks) == 5
    assert report(capsys, 4, "e(SL(2,5), N) = 0 on the order-120 spot checks", checks, dt, None)


@pytest.mark.slow
def test_criterion_5_symmetric(capsys):
    prof = Profile(extended=True)
    checks, dt = timed(lambda: run_suite("s5", prof))
    assert len(checks) == 3
    assert report(capsys, 5, "S5 spot checks", checks, dt, None)


def test_criterion_6_byott(capsys):
    checks, dt = timed(lambda: [byott_check(Profile())])
    assert report(capsys, 6, "holomorph census matches |Reg| / |Aut(G)| up to order 16",
                  checks, dt, 15 * MINUTE)


def test_criterion_7_symmetric_group_count(capsys):
    checks, dt = timed(lambda: [gp_check(Profile())])
    assert report(capsys, 7, "symmetric-group count equals the sum over types, orders 1..6",
                  checks, dt, 10 * MINUTE)


def test_criterion_8_properties(capsys):
    checks, dt = timed(lambda: run_suite("props", Profile()))
    assert len(checks) == 6
    assert report(capsys, 8, "structural property battery", checks, dt, None)
