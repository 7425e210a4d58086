from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

from qstab.quiver import Quiver

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def quiver(arrows, n=None) -> Quiver:
    """Quiver on vertices "1".."n" from 1-based integer arrows."""
    n = n or max(max(a) for a in arrows)
    return Quiver(tuple(str(i) for i in range(1, n + 1)), tuple((str(s), str(t)) for s, t in arrows))


def star(arms, outward=True) -> Quiver:
    """Star with centre 1 and the given arm lengths; arrows point away from the centre."""
    arrows = []
    nxt = 2
    for length in arms:
        prev = 1
        for _ in range(length):
            arrows.append((prev, nxt) if outward else (nxt, prev))
            prev = nxt
            nxt += 1
    return quiver(arrows, nxt - 1)


A1 = Quiver(("1",), ())
A2 = quiver([(1, 2)])
A3 = quiver([(1, 2), (2, 3)])
KRONECKER = quiver([(1, 2), (1, 2)])
KRONECKER3 = quiver([(1, 2), (1, 2), (1, 2)])
A3_TILDE = quiver([(1, 2), (1, 3), (2, 4), (3, 4)])
A2_TILDE = quiver([(1, 2), (2, 3), (1, 3)])
D4_TILDE = star((1, 1, 1, 1))
D5_TILDE = quiver([(1, 3), (2, 3), (3, 4), (4, 5), (4, 6)])
E6_TILDE = star((2, 2, 2))
E7_TILDE = star((1, 3, 3))
E8_TILDE = star((1, 2, 5))
D4 = star((1, 1, 1))
E6 = star((1, 2, 2))

EUCLIDEAN = {
    "A1~": KRONECKER,
    "A2~": A2_TILDE,
    "A3~": A3_TILDE,
    "D4~": D4_TILDE,
    "D5~": D5_TILDE,
    "E6~": E6_TILDE,
    "E7~": E7_TILDE,
    "E8~": E8_TILDE,
}


@pytest.fixture
def a3t() -> Quiver:
    return A3_TILDE


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.format_line(number))
