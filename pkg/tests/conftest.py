"""Shared fixtures, strategies, and reporting helpers for the suite."""

from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from utt.padic import PadicContext, PadicInt, make_context

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# The three standard configurations every cross-prime check runs at.
STANDARD_TRIPLES = ((3, 2, 20), (5, 2, 20), (7, 3, 20))

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ctx3() -> PadicContext:
    return make_context(3, 2, 20)


@pytest.fixture(scope="session")
def ctx5() -> PadicContext:
    return make_context(5, 2, 20)


@pytest.fixture(scope="session")
def ctx7() -> PadicContext:
    return make_context(7, 3, 20)


@pytest.fixture(scope="session", params=STANDARD_TRIPLES, ids=lambda t: f"p{t[0]}q{t[1]}")
def ctx(request) -> PadicContext:
    p, q, N = request.param
    return make_context(p, q, N)


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def acceptance_recorder():
    """Record one pass/fail line per acceptance criterion.

    The lines are echoed in the terminal summary so the verdicts stay
    visible even when pytest captures per-test stdout.
    """

    def record(criterion: int, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


def dense_product(a, b):
    """Oracle matrix product: dense schoolbook multiply over residues.

    Independent of UTWindow.__mul__ (which sums only the upper band);
    this walks every k and relies on entry() returning zero below the
    diagonal.
    """
    from utt.utmat import UTWindow

    assert a.W == b.W
    W = a.W
    return UTWindow.from_fn(
        a.ctx, W,
        lambda i, j: sum(
            (a.entry(i, k) * b.entry(k, j) for k in range(W)),
            start=a.ctx.zero(),
        ),
    )


def random_window(ctx: PadicContext, W: int, rng: random.Random):
    """Random upper-triangular window with arbitrary entries."""
    from utt.utmat import UTWindow

    return UTWindow.from_fn(
        ctx, W, lambda i, j: PadicInt(ctx, rng.randrange(ctx.modulus))
    )


def random_unit_diag_window(ctx: PadicContext, W: int, rng: random.Random):
    """Random window whose diagonal entries are units (invertible)."""
    from utt.utmat import UTWindow

    def gen(i: int, j: int) -> PadicInt:
        r = rng.randrange(ctx.modulus)
        if i == j and r % ctx.p == 0:
            r += 1 + rng.randrange(ctx.p - 1)
        return PadicInt(ctx, r)

    return UTWindow.from_fn(ctx, W, gen)
