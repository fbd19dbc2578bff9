"""Windows onto infinite upper-triangular matrices over a p-adic context.

A UTWindow stores the entries (i, j), 0 <= i <= j < W, of an infinite
upper-triangular matrix.  Because such matrices are triangular, the
window of a product equals the product of the windows: entry (i, j) of
A*B only involves columns k with i <= k <= j, all inside the window.
Every operation here leans on that exactness; nothing is approximated
by the windowing itself.

Row and column indices are 0-based throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import (
    BadIndexError,
    ContextMismatchError,
    NotInvertibleError,
    SizeMismatchError,
)
from .padic import PadicContext, PadicInt


@dataclass(frozen=True)
class Membership:
    """Group-membership facts about a window's diagonal."""

    is_invertible: bool
    is_in_unit_group: bool  # diagonal entries all 1 mod p


class UTWindow:
    """Immutable W-by-W upper-triangular window."""

    __slots__ = ("ctx", "W", "_e")

    def __init__(self, ctx: PadicContext, W: int, entries: Sequence[PadicInt]):
        if W < 1:
            raise BadIndexError(f"window size must be >= 1, got {W}")
        if len(entries) != W * (W + 1) // 2:
            raise SizeMismatchError(f"expected {W * (W + 1) // 2} entries, got {len(entries)}")
        self.ctx = ctx
        self.W = W
        self._e = tuple(entries)

    def _idx(self, i: int, j: int) -> int:
        return i * self.W - i * (i - 1) // 2 + (j - i)

    @classmethod
    def from_fn(cls, ctx: PadicContext, W: int, fn: Callable[[int, int], PadicInt | int]) -> "UTWindow":
        """Build from an entry generator fn(i, j) for i <= j."""
        entries = []
        for i in range(W):
            for j in range(i, W):
                v = fn(i, j)
                entries.append(v if isinstance(v, PadicInt) else PadicInt(ctx, v))
        return cls(ctx, W, entries)

    @classmethod
    def identity(cls, ctx: PadicContext, W: int) -> "UTWindow":
        return cls.from_fn(ctx, W, lambda i, j: 1 if i == j else 0)

    @classmethod
    def zero(cls, ctx: PadicContext, W: int) -> "UTWindow":
        z = ctx.zero()
        return cls(ctx, W, [z] * (W * (W + 1) // 2))

    def entry(self, i: int, j: int) -> PadicInt:
        """Entry (i, j); zero below the diagonal, error outside the window."""
        if not (0 <= i < self.W and 0 <= j < self.W):
            raise BadIndexError(f"({i},{j}) outside {self.W}x{self.W} window")
        if i > j:
            return self.ctx.zero()
        return self._e[self._idx(i, j)]

    def _check(self, other: "UTWindow") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"{self.ctx} vs {other.ctx}")
        if self.W != other.W:
            raise SizeMismatchError(f"window sizes {self.W} vs {other.W}")

    def __add__(self, other: "UTWindow") -> "UTWindow":
        self._check(other)
        return UTWindow(self.ctx, self.W, [a + b for a, b in zip(self._e, other._e)])

    def __sub__(self, other: "UTWindow") -> "UTWindow":
        self._check(other)
        return UTWindow(self.ctx, self.W, [a - b for a, b in zip(self._e, other._e)])

    def scale(self, c: PadicInt | int) -> "UTWindow":
        if not isinstance(c, PadicInt):
            c = PadicInt(self.ctx, c)
        return UTWindow(self.ctx, self.W, [c * a for a in self._e])

    def __neg__(self) -> "UTWindow":
        return self.scale(-1)

    def __mul__(self, other: "UTWindow") -> "UTWindow":
        self._check(other)
        entries = []
        for i in range(self.W):
            for j in range(i, self.W):
                acc = self.ctx.zero()
                for k in range(i, j + 1):
                    acc = acc + self.entry(i, k) * other.entry(k, j)
                entries.append(acc)
        return UTWindow(self.ctx, self.W, entries)

    def __pow__(self, k: int) -> "UTWindow":
        """k-th power by repeated squaring, k >= 0."""
        if not isinstance(k, int) or k < 0:
            raise BadIndexError("window power needs an integer exponent >= 0")
        result = UTWindow.identity(self.ctx, self.W)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "UTWindow":
        """Two-sided inverse by back-substitution along each column.

        Requires every diagonal entry to be a p-adic unit.
        """
        for d in range(self.W):
            if not self.entry(d, d).is_unit():
                raise NotInvertibleError(f"diagonal entry ({d},{d}) is not a unit")
        inv_diag = [self.entry(d, d).inverse() for d in range(self.W)]
        out: dict[tuple[int, int], PadicInt] = {}
        for j in range(self.W):
            out[(j, j)] = inv_diag[j]
            for i in range(j - 1, -1, -1):
                acc = self.ctx.zero()
                for k in range(i + 1, j + 1):
                    acc = acc + self.entry(i, k) * out[(k, j)]
                out[(i, j)] = -(inv_diag[i] * acc)
        return UTWindow.from_fn(self.ctx, self.W, lambda i, j: out[(i, j)])

    def membership(self) -> Membership:
        diag = [self.entry(d, d) for d in range(self.W)]
        return Membership(
            is_invertible=all(d.is_unit() for d in diag),
            is_in_unit_group=all(d.residue % self.ctx.p == 1 for d in diag),
        )

    def filtration_level(self) -> int:
        """Number of leading all-zero columns (0-based count).

        Returns W when the whole window vanishes, meaning "at least W".
        """
        for j in range(self.W):
            if any(not self.entry(i, j).is_zero() for i in range(j + 1)):
                return j
        return self.W

    def sub_window(self, W2: int) -> "UTWindow":
        if not 1 <= W2 <= self.W:
            raise BadIndexError(f"sub-window size {W2} outside [1, {self.W}]")
        return UTWindow.from_fn(self.ctx, W2, lambda i, j: self.entry(i, j))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UTWindow):
            return NotImplemented
        return self.ctx == other.ctx and self.W == other.W and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.ctx, self.W, tuple(e.residue for e in self._e)))

    def __repr__(self) -> str:
        return f"UTWindow(W={self.W}, p={self.ctx.p}^{self.ctx.N})"

    def pretty(self) -> str:
        """Aligned full-grid rendering with explicit zeros below the diagonal."""
        rows = [[str(self.entry(i, j).residue) if i <= j else "0" for j in range(self.W)]
                for i in range(self.W)]
        width = max(len(s) for row in rows for s in row)
        return "\n".join(" ".join(s.rjust(width) for s in row) for row in rows)

    def to_json(self) -> dict:
        return {
            "p": self.ctx.p,
            "N": self.ctx.N,
            "W": self.W,
            "rows": [[str(self.entry(i, j).residue) for j in range(i, self.W)]
                     for i in range(self.W)],
        }

    @classmethod
    def parse(cls, data: dict, ctx: PadicContext) -> "UTWindow":
        if data["p"] != ctx.p or data["N"] != ctx.N:
            raise ContextMismatchError(f"serialized (p,N)=({data['p']},{data['N']}) vs {ctx}")
        W = data["W"]
        entries = []
        for i, row in enumerate(data["rows"]):
            if len(row) != W - i:
                raise SizeMismatchError(f"row {i} has {len(row)} entries, expected {W - i}")
            entries.extend(PadicInt(ctx, int(s)) for s in row)
        return cls(ctx, W, entries)
