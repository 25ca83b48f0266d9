"""Shared test plumbing.

Every :class:`Topology` built while the suite runs is recorded. At session
end each one is re-analyzed and the combined upper bound is checked against
the best lower bound, so the cross-check covers topologies from all modules.
"""

from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from timcm.topology import Topology

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SEEN: set[tuple[frozenset[int], ...]] = set()
ACCEPTANCE: dict[str, tuple[bool, str]] = {}
VIOLATIONS: list[str] = []
CROSS_CHECK_MAX_K = 7

_orig_post_init = Topology.__post_init__


def _recording_post_init(self) -> None:
    _orig_post_init(self)
    if self.k <= CROSS_CHECK_MAX_K:
        SEEN.add(self.heard)


Topology.__post_init__ = _recording_post_init


def lower_upper(t: Topology):
    from timcm import best_secure_partition, check_feasibility, combined_upper_bound, fractional_sis_bound
    from fractions import Fraction

    lower = Fraction(0)
    if check_feasibility(t).feasible:
        lower = Fraction(1, t.k)
        for b in (best_secure_partition(t), fractional_sis_bound(t)):
            if b is not None:
                lower = max(lower, b.value)
    return lower, combined_upper_bound(t)


def cross_check_all() -> tuple[int, list[str]]:
    bad = []
    snapshot = list(SEEN)
    for heard in snapshot:
        t = Topology(len(heard), heard)
        lo, up = lower_upper(t)
        if lo > up:
            bad.append(f"{t}: lower {lo} > upper {up}")
    return len(snapshot), bad


def record(criterion: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_sessionfinish(session, exitstatus):
    if not SEEN:
        return
    n, bad = cross_check_all()
    VIOLATIONS.extend(bad)
    record("8 (session-wide)", not bad, f"{n} distinct topologies, {len(bad)} violations")
    if bad and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: (int(s.split()[0]), s)):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
    for line in VIOLATIONS[:20]:
        terminalreporter.write_line(f"  violation: {line}")


@pytest.fixture
def rng():
    import random

    return random.Random(20240611)
