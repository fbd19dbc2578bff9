"""Upper-triangular windows: exactness, ring laws, inversion, filtration."""

from __future__ import annotations

import random

import pytest

from conftest import dense_product, random_unit_diag_window, random_window
from utt.errors import BadIndexError, ContextMismatchError, NotInvertibleError
from utt.padic import PadicInt, make_context
from utt.utmat import UTWindow

# ------------------------------------------------------------ construction


def test_from_fn_frozen_examples(ctx):
    ident = UTWindow.from_fn(ctx, 3, lambda i, j: 1 if i == j else 0)
    assert ident == UTWindow.identity(ctx, 3)

    zero = UTWindow.from_fn(ctx, 3, lambda i, j: 0)
    assert zero == UTWindow.zero(ctx, 3)

    ladder = UTWindow.from_fn(ctx, 2, lambda i, j: j - i + 1)
    assert ladder.entry(0, 0).residue == 1
    assert ladder.entry(0, 1).residue == 2
    assert ladder.entry(1, 1).residue == 1


def test_entry_below_diagonal_is_zero(ctx):
    w = random_window(ctx, 5, random.Random(1))
    for i in range(5):
        for j in range(i):
            assert w.entry(i, j).residue == 0


def test_entry_out_of_window_raises(ctx):
    w = UTWindow.identity(ctx, 3)
    for i, j in ((-1, 0), (0, 3), (3, 3), (0, -1)):
        with pytest.raises(BadIndexError):
            w.entry(i, j)


# -------------------------------------------------------------- arithmetic


def test_ring_laws_random(ctx):
    rng = random.Random(99)
    for _ in range(10):
        a = random_window(ctx, 5, rng)
        b = random_window(ctx, 5, rng)
        c = random_window(ctx, 5, rng)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a * UTWindow.identity(ctx, 5) == a
        assert UTWindow.identity(ctx, 5) * a == a
        assert a - a == UTWindow.zero(ctx, 5)
        assert a.scale(3) == a + a + a


def test_mul_matches_dense_oracle(ctx):
    rng = random.Random(7)
    for _ in range(10):
        a = random_window(ctx, 6, rng)
        b = random_window(ctx, 6, rng)
        assert a * b == dense_product(a, b)


def test_pow_matches_repeated_mul(ctx):
    rng = random.Random(3)
    a = random_window(ctx, 5, rng)
    acc = UTWindow.identity(ctx, 5)
    for k in range(7):
        assert a**k == acc
        acc = acc * a
    with pytest.raises(BadIndexError):
        a**-1


def test_window_exactness(ctx):
    """Products restrict exactly: leading submatrix of product equals
    product of leading submatrices, for every window size."""
    rng = random.Random(11)
    a = random_window(ctx, 10, rng)
    b = random_window(ctx, 10, rng)
    big = a * b
    for W2 in range(1, 11):
        assert big.sub_window(W2) == a.sub_window(W2) * b.sub_window(W2)
    assert (a**3).sub_window(6) == a.sub_window(6) ** 3


def test_context_and_size_mismatch(ctx):
    other = make_context(5 if ctx.p != 5 else 7, 2 if ctx.p != 5 else 3, 20)
    a = UTWindow.identity(ctx, 3)
    with pytest.raises(ContextMismatchError):
        a + UTWindow.identity(other, 3)
    from utt.errors import SizeMismatchError
    with pytest.raises(SizeMismatchError):
        a + UTWindow.identity(ctx, 4)


# --------------------------------------------------------------- inversion


def test_inverse_two_sided(ctx):
    rng = random.Random(17)
    for _ in range(10):
        a = random_unit_diag_window(ctx, 6, rng)
        inv = a.inverse()
        ident = UTWindow.identity(ctx, 6)
        assert a * inv == ident
        assert inv * a == ident


def test_inverse_rejects_non_unit_diagonal(ctx):
    a = UTWindow.from_fn(ctx, 3, lambda i, j: ctx.p if i == j == 1 else (1 if i == j else 0))
    with pytest.raises(NotInvertibleError):
        a.inverse()


def test_inverse_of_inverse(ctx):
    rng = random.Random(23)
    a = random_unit_diag_window(ctx, 5, rng)
    assert a.inverse().inverse() == a


# ------------------------------------------------- membership / filtration


def test_membership(ctx):
    p = ctx.p
    ident = UTWindow.identity(ctx, 4)
    m = ident.membership()
    assert m.is_invertible and m.is_in_unit_group

    shifted_diag = UTWindow.from_fn(ctx, 4, lambda i, j: 1 + p if i == j else 0)
    m = shifted_diag.membership()
    assert m.is_invertible and m.is_in_unit_group

    unit_but_not_group = UTWindow.from_fn(ctx, 4, lambda i, j: 2 if i == j else 0)
    m = unit_but_not_group.membership()
    assert m.is_invertible and not m.is_in_unit_group

    singular = UTWindow.from_fn(ctx, 4, lambda i, j: p if i == j else 0)
    m = singular.membership()
    assert not m.is_invertible and not m.is_in_unit_group


def test_filtration_level(ctx):
    assert UTWindow.zero(ctx, 4).filtration_level() == 4
    assert UTWindow.identity(ctx, 4).filtration_level() == 0
    w = UTWindow.from_fn(ctx, 4, lambda i, j: 0 if j < 2 else 1)
    assert w.filtration_level() == 2


def test_filtration_is_ideal(ctx):
    """Windows vanishing in the first n columns form a two-sided ideal."""
    rng = random.Random(31)
    n = 3
    a = UTWindow.from_fn(ctx, 6, lambda i, j: 0 if j < n else rng.randrange(ctx.modulus))
    for _ in range(5):
        b = random_window(ctx, 6, rng)
        assert (a * b).filtration_level() >= n
        assert (b * a).filtration_level() >= n
        assert (a + a).filtration_level() >= n


# ------------------------------------------------------------ presentation


def test_json_round_trip(ctx):
    rng = random.Random(41)
    a = random_window(ctx, 5, rng)
    data = a.to_json()
    assert data["p"] == ctx.p and data["N"] == ctx.N and data["W"] == 5
    assert UTWindow.parse(data, ctx) == a
    other = make_context(5 if ctx.p != 5 else 3, 2, 20)
    with pytest.raises(ContextMismatchError):
        UTWindow.parse(data, other)


def test_json_is_canonical(ctx):
    import json

    rng = random.Random(43)
    a = random_window(ctx, 4, rng)
    assert json.dumps(a.to_json()) == json.dumps(UTWindow.parse(a.to_json(), ctx).to_json())


def test_pretty_output(ctx):
    s = UTWindow.identity(ctx, 3).pretty()
    lines = s.splitlines()
    assert len(lines) == 3
    assert all(len(line.split()) == 3 for line in lines)


def test_hash_consistency(ctx):
    a = UTWindow.identity(ctx, 3)
    b = UTWindow.from_fn(ctx, 3, lambda i, j: 1 if i == j else 0)
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
