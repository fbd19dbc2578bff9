"""Bivariate polynomials over scaled p-adics and the integral basis.

Polynomials live in span{u**a * v**b} with PadicScaled coefficients, so
negative powers of p are first-class.  The distinguished family

    c_k = prod_{i<k} (v - q_hat**i * u) / (q_hat**k - q_hat**i)
    f_k = p**nu(k!) * c_k
    F_{i,j,k} = u**i * (u/p)**j * f_k
    g_{m,l}   = the F-element of weight m built on f_l

is constructed here together with the two integrality conditions that
characterize which weight-n combinations lie in the integral subring,
and the substitution action psi: u -> u, v -> q_hat * v.

Expansion in the c-basis works by evaluation: c_r vanishes at
(u, v) = (1, q_hat**s) for r > s and equals 1 at r = s, so peeling off
one coefficient per evaluation point is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import BadIndexError, ContextMismatchError, PrecisionExhaustedError
from .padic import PadicContext, PadicInt, PadicScaled, nu_factorial, nu_int
from .qcalc import qbinom_eval

# Extra p-adic digits demanded beyond the worst denominator; keeps the
# c-basis peeling decisive even after alignment losses.
GUARD_DIGITS = 4


def required_precision(p: int, kmax: int) -> int:
    """Minimal context precision N for building c_k up to k = kmax."""
    return nu_factorial(p, kmax) + kmax + GUARD_DIGITS


def _to_scaled(ctx: PadicContext, v) -> PadicScaled:
    if isinstance(v, PadicScaled):
        if v.ctx != ctx:
            raise ContextMismatchError(f"{ctx} vs {v.ctx}")
        return v
    if isinstance(v, PadicInt):
        if v.ctx != ctx:
            raise ContextMismatchError(f"{ctx} vs {v.ctx}")
        return v.to_scaled()
    if isinstance(v, int):
        return PadicScaled.from_int(ctx, v)
    raise TypeError(f"cannot use {type(v).__name__} as a coefficient")


class BivarPoly:
    """Polynomial in two variables u, v with PadicScaled coefficients.

    Terms are kept in a dict keyed by (a, b) exponent pairs; zero
    coefficients are dropped on construction and instances are never
    mutated afterwards.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: PadicContext, terms: Mapping[tuple[int, int], PadicScaled]):
        clean = {}
        for (a, b), coeff in terms.items():
            if a < 0 or b < 0:
                raise BadIndexError(f"negative exponent pair ({a},{b})")
            if not coeff.is_zero():
                clean[(a, b)] = coeff
        self.ctx = ctx
        self.terms = clean

    @classmethod
    def zero(cls, ctx: PadicContext) -> "BivarPoly":
        return cls(ctx, {})

    @classmethod
    def monomial(cls, ctx: PadicContext, a: int, b: int, coeff=1) -> "BivarPoly":
        return cls(ctx, {(a, b): _to_scaled(ctx, coeff)})

    @classmethod
    def one(cls, ctx: PadicContext) -> "BivarPoly":
        return cls.monomial(ctx, 0, 0)

    @classmethod
    def u_hat(cls, ctx: PadicContext) -> "BivarPoly":
        return cls.monomial(ctx, 1, 0)

    @classmethod
    def v_hat(cls, ctx: PadicContext) -> "BivarPoly":
        return cls.monomial(ctx, 0, 1)

    def is_zero(self) -> bool:
        return not self.terms

    def _sorted_items(self) -> Iterator[tuple[tuple[int, int], PadicScaled]]:
        return iter(sorted(self.terms.items()))

    def weight(self) -> int | None:
        """Common total degree of all terms, or None if mixed or zero."""
        degrees = {a + b for a, b in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def coefficient(self, a: int, b: int) -> PadicScaled:
        return self.terms.get((a, b), PadicScaled.zero(self.ctx))

    def _check(self, other: "BivarPoly") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        self._check(other)
        acc = dict(self.terms)
        for key, coeff in other.terms.items():
            acc[key] = acc[key] + coeff if key in acc else coeff
        return BivarPoly(self.ctx, acc)

    def __neg__(self) -> "BivarPoly":
        return BivarPoly(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        self._check(other)
        acc: dict[tuple[int, int], PadicScaled] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                prod = c1 * c2
                acc[key] = acc[key] + prod if key in acc else prod
        return BivarPoly(self.ctx, acc)

    def scale(self, factor) -> "BivarPoly":
        f = _to_scaled(self.ctx, factor)
        if f.is_zero():
            return BivarPoly.zero(self.ctx)
        return BivarPoly(self.ctx, {k: c * f for k, c in self.terms.items()})

    def scale_p(self, m: int) -> "BivarPoly":
        """Multiply by p**m (m may be negative)."""
        return BivarPoly(self.ctx, {k: c.scale_by_p_power(m) for k, c in self.terms.items()})

    def substitute(self, u_value: PadicInt, v_value: PadicInt) -> PadicScaled:
        """Evaluate at ring elements (u, v) = (u_value, v_value)."""
        acc = PadicScaled.zero(self.ctx)
        for (a, b), coeff in self._sorted_items():
            acc = acc + coeff * (u_value**a * v_value**b)
        return acc

    def graded_parts(self) -> dict[int, "BivarPoly"]:
        """Split into homogeneous pieces keyed by total degree."""
        parts: dict[int, dict[tuple[int, int], PadicScaled]] = {}
        for (a, b), coeff in self.terms.items():
            parts.setdefault(a + b, {})[(a, b)] = coeff
        return {d: BivarPoly(self.ctx, t) for d, t in sorted(parts.items())}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        if self.ctx != other.ctx or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.is_zero():
            return "BivarPoly(0)"
        bits = [f"u^{a}v^{b}:{c!r}" for (a, b), c in self._sorted_items()]
        return "BivarPoly(" + ", ".join(bits) + ")"

    def to_json(self) -> dict:
        return {
            "weight": self.weight(),
            "terms": [
                {"a": a, "b": b, **coeff.to_json()}
                for (a, b), coeff in self._sorted_items()
            ],
        }

    @classmethod
    def parse(cls, data: dict, ctx: PadicContext) -> "BivarPoly":
        terms = {}
        for t in data["terms"]:
            terms[(int(t["a"]), int(t["b"]))] = PadicScaled.parse(t, ctx)
        return cls(ctx, terms)


@lru_cache(maxsize=None)
def c_poly(ctx: PadicContext, k: int) -> BivarPoly:
    """The k-th interpolation polynomial, homogeneous of weight k.

    Needs N >= nu(k!) + k + GUARD_DIGITS: the denominator product
    prod_{i<k} (q_hat**k - q_hat**i) has valuation exactly nu(k!) + k,
    and the guard absorbs the alignment losses of later expansions.

    Both the numerator coefficients and the denominator are exact
    integers determined by q alone, so the division is carried out on
    exact integers and every delivered coefficient keeps a full N
    significant digits.  Dividing capped residues instead would cut the
    absolute precision of low-valuation coefficients enough to make the
    c-basis peeling of f_k undecidable at the documented minimum N.
    """
    if k < 0:
        raise BadIndexError(f"c_poly needs k >= 0, got {k}")
    need = required_precision(ctx.p, k)
    if ctx.N < need:
        raise PrecisionExhaustedError(f"c_{k} at p={ctx.p} needs N >= {need}, have {ctx.N}")
    p = ctx.p
    q_hat = ctx.q ** (p - 1)
    num: dict[tuple[int, int], int] = {(0, 0): 1}
    for i in range(k):
        qi = q_hat**i
        nxt: dict[tuple[int, int], int] = {}
        for (a, b), coeff in num.items():
            nxt[(a, b + 1)] = nxt.get((a, b + 1), 0) + coeff
            nxt[(a + 1, b)] = nxt.get((a + 1, b), 0) - qi * coeff
        num = nxt
    den = 1
    qk = q_hat**k
    for i in range(k):
        den *= qk - q_hat**i
    d = nu_int(p, den) if k else 0
    den_unit_inv = pow(den // p**d, -1, ctx.modulus)
    terms = {}
    for (a, b), coeff in num.items():
        if coeff == 0:
            continue
        v = nu_int(p, coeff)
        unit = (coeff // p**v) * den_unit_inv
        terms[(a, b)] = PadicScaled(ctx, v - d, unit, ctx.N)
    return BivarPoly(ctx, terms)


def f_poly(ctx: PadicContext, k: int) -> BivarPoly:
    """p**nu(k!) * c_k; every coefficient then has valuation >= -k."""
    return c_poly(ctx, k).scale_p(nu_factorial(ctx.p, k))


def big_F(ctx: PadicContext, i: int, j: int, k: int, raw: bool = False) -> BivarPoly:
    """u**i * (u/p)**j * f_k.

    With raw=False the indices must name a basis element: j <= nu(k!),
    and i = 0 unless j = nu(k!).  raw=True lifts those constraints (any
    i, j >= 0), which is how the negative controls are built.
    """
    if k < 0 or i < 0 or j < 0:
        raise BadIndexError(f"big_F needs i, j, k >= 0, got ({i},{j},{k})")
    if not raw:
        nu = nu_factorial(ctx.p, k)
        if j > nu:
            raise BadIndexError(f"basis element needs j <= nu({k}!) = {nu}, got j={j}")
        if j < nu and i != 0:
            raise BadIndexError(f"basis element with j < nu({k}!) = {nu} needs i = 0, got i={i}")
    return (f_poly(ctx, k) * BivarPoly.monomial(ctx, i + j, 0)).scale_p(-j)


def g_poly(ctx: PadicContext, m: int, l: int) -> BivarPoly:
    """The weight-m basis element built on f_l, for 0 <= l <= m."""
    if not 0 <= l <= m:
        raise BadIndexError(f"g_poly needs 0 <= l <= m, got (m,l)=({m},{l})")
    nu = nu_factorial(ctx.p, l)
    if m - l <= nu:
        return big_F(ctx, 0, m - l, l)
    return big_F(ctx, m - l - nu, nu, l)


def beta(p: int, m: int, i: int) -> int:
    """Exact p-divisibility forced on the (m, i) expansion coefficient."""
    if m < 0 or i < 0:
        raise BadIndexError(f"beta needs m, i >= 0, got ({m},{i})")
    if m > nu_factorial(p, i) + i:
        return nu_factorial(p, m)
    return nu_factorial(p, m) + m - nu_factorial(p, i) - i


def psi_action(f: BivarPoly) -> BivarPoly:
    """The ring map fixing u and sending v to q_hat * v."""
    ctx = f.ctx
    return BivarPoly(
        ctx, {(a, b): coeff * ctx.q_hat_pow(b) for (a, b), coeff in f.terms.items()}
    )


def expand_in_c_basis(f: BivarPoly) -> list[PadicScaled]:
    """Coefficients lambda_0..lambda_n of f over {u**(n-s) * c_s}.

    f must be homogeneous of some weight n.  Works by evaluation at
    (1, q_hat**s) for s = 0..n: every c_r with r > s vanishes there and
    c_s evaluates to 1, so the evaluations determine the coefficients
    through the triangular system

        f(1, q_hat**s) = sum_{r <= s} lambda_r * c_r(1, q_hat**s)

    whose multipliers c_r(1, q_hat**s) are exactly the Gaussian
    binomials [s, r] at q_hat, honest ring elements.  Solving this way
    never multiplies one extracted coefficient back into the negative
    powers of p inside a c polynomial, so precision loss does not
    compound across steps.  The expansion is verified by rebuilding f;
    a mismatch means the context precision cannot support this weight.
    """
    ctx = f.ctx
    n = f.weight()
    if n is None:
        raise ValueError("expansion needs a nonzero homogeneous polynomial")
    one = ctx.one()
    q_hat = ctx.q_hat()
    out: list[PadicScaled] = []
    for s in range(n + 1):
        acc = f.substitute(one, ctx.q_hat_pow(s))
        for r, lam in enumerate(out):
            if not lam.is_zero():
                acc = acc - lam * qbinom_eval(s, r, q_hat)
        out.append(acc)
    rebuilt = BivarPoly.zero(ctx)
    for s, lam in enumerate(out):
        if not lam.is_zero():
            rebuilt = rebuilt + (c_poly(ctx, s) * BivarPoly.monomial(ctx, n - s, 0)).scale(lam)
    if rebuilt != f:
        raise PrecisionExhaustedError("c-basis expansion failed to rebuild its input")
    return out


@dataclass(frozen=True)
class IntegralityResult:
    """The two integrality verdicts for a homogeneous polynomial."""

    cond1: bool  # every c-basis coefficient lies in Z_p
    cond2: bool  # coefficient of u**a * v**b has valuation >= -(a+b)

    def to_json(self) -> dict:
        return {"cond1": self.cond1, "cond2": self.cond2}


def check_integrality(f: BivarPoly) -> IntegralityResult:
    lambdas = expand_in_c_basis(f)
    cond1 = all(lam.is_padic_integer() for lam in lambdas)
    cond2 = all(
        coeff.val is None or coeff.val >= -(a + b)
        for (a, b), coeff in f.terms.items()
    )
    return IntegralityResult(cond1=cond1, cond2=cond2)


def expand_in_g_basis(f: BivarPoly) -> list[PadicScaled]:
    """Coefficients mu_0..mu_n of f over {g_{n,s}}, n the weight of f.

    Derived from the c-basis expansion: u**(n-s) * c_s differs from
    g_{n,s} by the exact power p**max(0, nu(s!) - (n-s)).
    """
    n = f.weight()
    if n is None:
        raise ValueError("expansion needs a nonzero homogeneous polynomial")
    p = f.ctx.p
    out = []
    for s, lam in enumerate(expand_in_c_basis(f)):
        shift = max(0, nu_factorial(p, s) - (n - s))
        out.append(lam.scale_by_p_power(-shift))
    return out


def sample_integrality(f: BivarPoly, trials: int, rng) -> bool:
    """Check condition (1) by substitution at points congruent to 1 mod p.

    Probes the coefficient-reading points (1, q_hat**j) first: if any
    expansion coefficient fails to be integral, the first failing one
    appears undiluted at its own reading point, so these probes refute
    every condition-(1) failure.  The remaining trials draw random
    u, v in 1 + pZ_p as independent spot checks.
    """
    ctx = f.ctx
    parts = f.graded_parts()
    one = ctx.one()
    for weight, part in parts.items():
        for j in range(weight + 1):
            if not part.substitute(one, ctx.q_hat_pow(j)).is_padic_integer():
                return False
    for _ in range(trials):
        u_val = ctx.from_int(1 + ctx.p * rng.randrange(ctx.modulus // ctx.p))
        v_val = ctx.from_int(1 + ctx.p * rng.randrange(ctx.modulus // ctx.p))
        for part in parts.values():
            if not part.substitute(u_val, v_val).is_padic_integer():
                return False
    return True
