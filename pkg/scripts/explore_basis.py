#!/usr/bin/env python3
"""Show the basis polynomials, their integrality, and the twist action.

For each k up to --kmax this prints the scaled coefficients of c_k and
f_k, both integrality verdicts for f_k, and the coefficients of
psi(f_k) - q_hat**k f_k over the f-basis (a single lower term).

Example:
    python scripts/explore_basis.py --p 3 --kmax 5
"""

from __future__ import annotations

import argparse

from utt.basis import BivarPoly, c_poly, check_integrality, f_poly, psi_action, required_precision
from utt.padic import make_context, nu_factorial, nu_int


def describe(poly: BivarPoly) -> str:
    bits = []
    for (a, b), coeff in sorted(poly.terms.items()):
        val = f"p^{coeff.val} * " if coeff.val else ""
        bits.append(f"u^{a} v^{b}: {val}{coeff.unit}")
    return "\n    ".join(bits) if bits else "0"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--kmax", type=int, default=5)
    ap.add_argument("--N", type=int, default=None,
                    help="precision (default: smallest the module accepts)")
    args = ap.parse_args()

    N = args.N if args.N is not None else required_precision(args.p, args.kmax)
    ctx = make_context(args.p, args.q, N)
    print(f"context: {ctx}  q_hat = {ctx.q_hat_residue}")
    u = BivarPoly.u_hat(ctx)
    for k in range(args.kmax + 1):
        nu = nu_factorial(ctx.p, k)
        print(f"\nk = {k}  (nu(k!) = {nu})")
        print(f"  c_{k}:\n    {describe(c_poly(ctx, k))}")
        print(f"  f_{k} = p^{nu} c_{k}:\n    {describe(f_poly(ctx, k))}")
        res = check_integrality(f_poly(ctx, k))
        print(f"  integrality: cond1={res.cond1} cond2={res.cond2}")
        if k >= 1:
            moved = psi_action(f_poly(ctx, k)) - f_poly(ctx, k).scale(ctx.q_hat_pow(k))
            want = (u * f_poly(ctx, k - 1)).scale_p(nu_int(ctx.p, k))
            print(f"  psi(f_{k}) - q_hat^{k} f_{k} == p^nu({k}) u f_{k-1}: {moved == want}")


if __name__ == "__main__":
    main()
