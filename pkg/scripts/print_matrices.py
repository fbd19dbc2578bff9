#!/usr/bin/env python3
"""Print the named operation matrices on a small window.

Example:
    python scripts/print_matrices.py --p 3 --q 2 --W 6 --nmax 3
"""

from __future__ import annotations

import argparse

from utt.ops import build_D, build_R, build_Rn, build_S, build_Xn
from utt.padic import make_context


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--N", type=int, default=8)
    ap.add_argument("--W", type=int, default=6)
    ap.add_argument("--nmax", type=int, default=3)
    args = ap.parse_args()

    ctx = make_context(args.p, args.q, args.N)
    print(f"context: {ctx}  q_hat = {ctx.q_hat_residue}\n")
    for name, win in (
        ("D (diagonal q_hat**i)", build_D(ctx, args.W)),
        ("S (superdiagonal shift)", build_S(ctx, args.W)),
        ("R = D + S", build_R(ctx, args.W)),
    ):
        print(f"{name}:\n{win.pretty()}\n")
    for n in range(1, args.nmax + 1):
        print(f"R_{n} = R - q_hat**{n - 1} * I:\n{build_Rn(ctx, n, args.W).pretty()}\n")
    for n in range(1, args.nmax + 1):
        xn = build_Xn(ctx, n, args.W)
        print(
            f"X_{n} = R_1 ... R_{n}  (filtration level {xn.filtration_level()}):\n"
            f"{xn.pretty()}\n"
        )


if __name__ == "__main__":
    main()
