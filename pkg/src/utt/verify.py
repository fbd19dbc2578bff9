"""Named verification suites over the whole identity inventory.

Each suite runs a family of exact checks at one context and returns
CheckResult records.  Every record carries a stable anchor label naming
the identity family it exercises; the CLI serializes these records as
JSON lines.  Checks are generated in a fixed order from the
configuration alone, so two runs with the same configuration emit
byte-identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .basis import (
    BivarPoly,
    beta,
    big_F,
    check_integrality,
    expand_in_g_basis,
    f_poly,
    g_poly,
    psi_action,
    sample_integrality,
)
from .conj import AFormMatrix, CFormMatrix, conjugator, verify_conjugation
from .ops import alpha, build_D, build_R, build_S, build_Xn, rpower_closed, xn_closed, xn_expand_binomial
from .padic import PadicContext, PadicInt, nu_factorial, nu_int
from .qcalc import qbinom_eval
from .utmat import UTWindow

# Anchor labels attached to report lines.  These are opaque wire-format
# constants required of the report output; do not edit them.
ANCHOR_QBINOM_MATRIX = "Eq. expand"
ANCHOR_RPOWER = "Lemma Rpower"
ANCHOR_XN_FILTRATION = "Theorem app(1)"
ANCHOR_XN_ENTRIES = "Theorem app(3)"
ANCHOR_CONJUGATION = "§4.3 Theorem"
ANCHOR_SUBRING = "Prop. subring"
ANCHOR_BASIS = "Theorem basis"
ANCHOR_ACTION_F = "Lemma action on f"
ANCHOR_ACTION_G = "Prop. action on g"
ANCHOR_ALGLEM = "Lemma alglem"
ANCHOR_LOWER_G = "Lemma lower g"
ANCHOR_ALPHA = "Theorem topringapp"

ALL_ANCHORS = frozenset(
    {
        ANCHOR_QBINOM_MATRIX,
        ANCHOR_RPOWER,
        ANCHOR_XN_FILTRATION,
        ANCHOR_XN_ENTRIES,
        ANCHOR_CONJUGATION,
        ANCHOR_SUBRING,
        ANCHOR_BASIS,
        ANCHOR_ACTION_F,
        ANCHOR_ACTION_G,
        ANCHOR_ALGLEM,
        ANCHOR_LOWER_G,
        ANCHOR_ALPHA,
    }
)


@dataclass(frozen=True)
class CheckResult:
    """One verified identity instance."""

    name: str
    anchor: str
    passed: bool
    params: dict = field(default_factory=dict)
    detail: str = ""

    def to_json(self) -> dict:
        out = {"check": self.name, "anchor": self.anchor, "pass": self.passed}
        if self.params:
            out["params"] = self.params
        if self.detail:
            out["detail"] = self.detail
        return out


def _ctx_params(ctx: PadicContext, **extra) -> dict:
    params = {"p": ctx.p, "q": ctx.q, "N": ctx.N}
    params.update(extra)
    return params


def _random_padic(ctx: PadicContext, rng: random.Random) -> PadicInt:
    return ctx.from_int(rng.randrange(ctx.modulus))


def _windows_equal_detail(a: UTWindow, b: UTWindow) -> str:
    for i in range(a.W):
        for j in range(i, a.W):
            if a.entry(i, j) != b.entry(i, j):
                return f"first mismatch at ({i},{j})"
    return ""


def suite_qbinom_matrix(ctx: PadicContext, W: int, nmax: int) -> list[CheckResult]:
    """(D+S)**n against the q-binomial expansion sum_i [n,i] D**i S**(n-i)."""
    D, S, R = build_D(ctx, W), build_S(ctx, W), build_R(ctx, W)
    q_hat = ctx.q_hat()
    out = []
    for n in range(nmax + 1):
        lhs = R**n
        rhs = UTWindow.zero(ctx, W)
        for i in range(n + 1):
            rhs = rhs + ((D**i) * (S ** (n - i))).scale(qbinom_eval(n, i, q_hat))
        ok = lhs == rhs
        out.append(
            CheckResult(
                name=f"qbinom-matrix/n={n}",
                anchor=ANCHOR_QBINOM_MATRIX,
                passed=ok,
                params=_ctx_params(ctx, W=W, n=n),
                detail="" if ok else _windows_equal_detail(lhs, rhs),
            )
        )
    return out


def suite_rpower(ctx: PadicContext, W: int, nmax: int) -> list[CheckResult]:
    """Closed entry formula for R**n against the iterated window product."""
    out = []
    for n in range(nmax + 1):
        direct = build_R(ctx, W) ** n
        closed = UTWindow.from_fn(ctx, W, lambda i, j: rpower_closed(ctx, n, i, j - i))
        ok = direct == closed
        out.append(
            CheckResult(
                name=f"rpower/n={n}",
                anchor=ANCHOR_RPOWER,
                passed=ok,
                params=_ctx_params(ctx, W=W, n=n),
                detail="" if ok else _windows_equal_detail(direct, closed),
            )
        )
    return out


def suite_xn(ctx: PadicContext, W: int, nmax: int) -> list[CheckResult]:
    """Vanishing pattern of X_n, then its three independent constructions.

    The entry-formula comparison is capped at n = 6; the vanishing and
    filtration checks run to nmax.
    """
    out = []
    for n in range(nmax + 1):
        xn = build_Xn(ctx, n, W)
        level_ok = xn.filtration_level() >= min(n, W)
        band_ok = all(
            xn.entry(s, s + c).is_zero()
            for s in range(W)
            for c in range(n + 1, W - s)
        )
        ok = level_ok and band_ok
        out.append(
            CheckResult(
                name=f"xn/filtration/n={n}",
                anchor=ANCHOR_XN_FILTRATION,
                passed=ok,
                params=_ctx_params(ctx, W=W, n=n),
                detail="" if ok else f"filtration_ok={level_ok} band_ok={band_ok}",
            )
        )
    for n in range(min(nmax, 6) + 1):
        direct = build_Xn(ctx, n, W)
        closed = UTWindow.from_fn(ctx, W, lambda i, j: xn_closed(ctx, n, i, j - i))
        expanded = xn_expand_binomial(ctx, n, W)
        ok = direct == closed == expanded
        out.append(
            CheckResult(
                name=f"xn/entries/n={n}",
                anchor=ANCHOR_XN_ENTRIES,
                passed=ok,
                params=_ctx_params(ctx, W=W, n=n),
                detail=""
                if ok
                else f"closed={'ok' if direct == closed else _windows_equal_detail(direct, closed)}"
                f" expanded={'ok' if direct == expanded else _windows_equal_detail(direct, expanded)}",
            )
        )
    return out


ALPHA_TERMS = 10  # number of coefficients (beyond a_0) fed to alpha
ALPHA_STABLE_COLS = 6  # columns whose stabilization is checked


def suite_alpha(ctx: PadicContext, W: int, trials: int, seed: int) -> list[CheckResult]:
    """Column-j output of alpha must not change once terms n > j are added."""
    rng = random.Random(seed)
    out = []
    jmax = min(ALPHA_STABLE_COLS, W - 1)
    for t in range(trials):
        coeffs = [_random_padic(ctx, rng) for _ in range(ALPHA_TERMS + 1)]
        full = alpha(coeffs, W)
        bad = ""
        for j in range(jmax + 1):
            truncated = alpha(coeffs[: j + 1], W)
            for i in range(j + 1):
                if full.entry(i, j) != truncated.entry(i, j):
                    bad = f"column {j} unstable at row {i}"
                    break
            if bad:
                break
        out.append(
            CheckResult(
                name=f"alpha/stabilization/trial={t}",
                anchor=ANCHOR_ALPHA,
                passed=not bad,
                params=_ctx_params(ctx, W=W, terms=ALPHA_TERMS, trial=t, seed=seed),
                detail=bad,
            )
        )
    return out


def suite_conjugation(
    ctx: PadicContext, W: int, trials: int, seed: int, e2e_trials: int = 20
) -> list[CheckResult]:
    """U*C = R*U on random C-form matrices, then full B*A*B**-1 = R."""
    rng = random.Random(seed)
    out = []
    for t in range(trials):
        trial_seed = rng.getrandbits(32)
        c_mat = CFormMatrix.random(ctx, W, random.Random(trial_seed))
        report = verify_conjugation(c_mat)
        ok = report.ok and report.u_is_invertible and report.u_in_unit_group
        out.append(
            CheckResult(
                name=f"conjugation/uc-ru/trial={t}",
                anchor=ANCHOR_CONJUGATION,
                passed=ok,
                params=_ctx_params(ctx, W=W, trial=t, seed=trial_seed),
                detail="" if ok else f"mismatches={report.mismatches}",
            )
        )
    R = build_R(ctx, W)
    for t in range(e2e_trials):
        trial_seed = rng.getrandbits(32)
        a_mat = AFormMatrix.random(ctx, W, random.Random(trial_seed))
        b = conjugator(a_mat)
        conjugated = b * a_mat.to_window() * b.inverse()
        ok = conjugated == R
        out.append(
            CheckResult(
                name=f"conjugation/end-to-end/trial={t}",
                anchor=ANCHOR_CONJUGATION,
                passed=ok,
                params=_ctx_params(ctx, W=W, trial=t, seed=trial_seed),
                detail="" if ok else _windows_equal_detail(conjugated, R),
            )
        )
    return out


SAMPLE_TRIALS = 5  # substitution samples per polynomial
G_EXPANSION_TRIALS = 3  # random combinations expanded over the g-basis


def suite_integrality(ctx: PadicContext, kmax: int, seed: int) -> list[CheckResult]:
    """Both integrality conditions on f_k, with negative controls.

    Also pins the denominator valuation nu(prod (q_hat**k - q_hat**i))
    = nu(k!) + k for k <= 12 and expands random Z_p-combinations of
    basis elements back over the g-basis.
    """
    rng = random.Random(seed)
    out = []
    for k in range(kmax + 1):
        res = check_integrality(f_poly(ctx, k))
        ok = res.cond1 and res.cond2
        out.append(
            CheckResult(
                name=f"integrality/f/k={k}",
                anchor=ANCHOR_BASIS,
                passed=ok,
                params=_ctx_params(ctx, k=k),
                detail="" if ok else f"cond1={res.cond1} cond2={res.cond2}",
            )
        )
    for k in range(kmax + 1):
        # One extra division by p must break condition (1).
        over = big_F(ctx, 0, nu_factorial(ctx.p, k) + 1, k, raw=True)
        res = check_integrality(over)
        out.append(
            CheckResult(
                name=f"integrality/overdivided/k={k}",
                anchor=ANCHOR_BASIS,
                passed=not res.cond1,
                params=_ctx_params(ctx, k=k),
                detail="" if not res.cond1 else "condition (1) unexpectedly held",
            )
        )
    for k in range(13):
        den = ctx.one()
        for i in range(k):
            den = den * (ctx.q_hat_pow(k) - ctx.q_hat_pow(i))
        expected = nu_factorial(ctx.p, k) + k
        ok = den.valuation() == expected
        out.append(
            CheckResult(
                name=f"integrality/denominator/k={k}",
                anchor=ANCHOR_BASIS,
                passed=ok,
                params=_ctx_params(ctx, k=k),
                detail="" if ok else f"valuation {den.valuation()} != {expected}",
            )
        )
    for k in range(kmax + 1):
        ok = sample_integrality(f_poly(ctx, k), SAMPLE_TRIALS, rng)
        out.append(
            CheckResult(
                name=f"integrality/sampling/f/k={k}",
                anchor=ANCHOR_SUBRING,
                passed=ok,
                params=_ctx_params(ctx, k=k, trials=SAMPLE_TRIALS),
                detail="" if ok else "sampled value escaped Z_p",
            )
        )
    negative = big_F(ctx, 0, nu_factorial(ctx.p, kmax) + 1, kmax, raw=True)
    caught = not sample_integrality(negative, SAMPLE_TRIALS, rng)
    out.append(
        CheckResult(
            name="integrality/sampling/negative",
            anchor=ANCHOR_SUBRING,
            passed=caught,
            params=_ctx_params(ctx, k=kmax, trials=SAMPLE_TRIALS),
            detail="" if caught else "sampling missed a non-integral polynomial",
        )
    )
    for t in range(G_EXPANSION_TRIALS):
        coeffs = [_random_padic(ctx, rng) for _ in range(kmax + 1)]
        f = BivarPoly.zero(ctx)
        for s, a in enumerate(coeffs):
            f = f + g_poly(ctx, kmax, s).scale(a)
        if f.is_zero():
            continue  # vanishing random combination: nothing to expand
        mus = expand_in_g_basis(f)
        integral = all(mu.is_padic_integer() for mu in mus)
        rebuilt = BivarPoly.zero(ctx)
        for s, mu in enumerate(mus):
            rebuilt = rebuilt + g_poly(ctx, kmax, s).scale(mu)
        ok = integral and rebuilt == f
        out.append(
            CheckResult(
                name=f"integrality/g-expansion/trial={t}",
                anchor=ANCHOR_BASIS,
                passed=ok,
                params=_ctx_params(ctx, n=kmax, trial=t, seed=seed),
                detail="" if ok else f"integral={integral} reconstructed={rebuilt == f}",
            )
        )
    return out


def _diag_action_branch(p: int, m: int) -> str:
    if m == 0:
        return "identity"
    if m < p:
        return "small"
    if m == p:
        return "p"
    return "large"


def _offdiag_action_branch(p: int, m: int, n: int) -> str:
    if m > nu_factorial(p, n) + n:
        return "above"
    if m > nu_factorial(p, n - 1) + n - 1:
        return "window"
    return "below"


def reachable_action_branches(p: int, kmax: int) -> frozenset[str]:
    """Branch labels the (m, n) grid up to kmax can actually reach."""
    labels = {"diag:identity"}
    if kmax >= 1:
        labels.add("diag:small")
    if kmax >= p:
        labels.add("diag:p")
    if kmax >= p + 1:
        labels.add("diag:large")
        labels.add("off:window")  # first hit at (m, n) = (p+1, p)
    if kmax >= 2:
        labels.add("off:above")
    if kmax >= 2 * p + 2:
        labels.add("off:below")  # needs nu((n-1)!) >= 2, first at n = 2p+1
    return frozenset(labels)


def suite_action(ctx: PadicContext, kmax: int) -> list[CheckResult]:
    """The substitution action on f_m and on every g-basis branch."""
    p = ctx.p
    u = BivarPoly.u_hat(ctx)
    out = []
    for m in range(1, kmax + 1):
        lhs = psi_action(f_poly(ctx, m))
        rhs = f_poly(ctx, m).scale(ctx.q_hat_pow(m)) + (u * f_poly(ctx, m - 1)).scale_p(
            nu_int(p, m)
        )
        ok = lhs == rhs
        out.append(
            CheckResult(
                name=f"action/f/m={m}",
                anchor=ANCHOR_ACTION_F,
                passed=ok,
                params=_ctx_params(ctx, m=m),
            )
        )
    hit: set[str] = set()
    for m in range(kmax + 1):
        branch = _diag_action_branch(p, m)
        hit.add(f"diag:{branch}")
        lhs = psi_action(g_poly(ctx, m, m))
        if m == 0:
            rhs = g_poly(ctx, 0, 0)
        else:
            rhs = g_poly(ctx, m, m).scale(ctx.q_hat_pow(m))
            if m < p:
                rhs = rhs + g_poly(ctx, m, m - 1)
            elif m == p:
                rhs = rhs + g_poly(ctx, m, m - 1).scale_p(1)
            else:
                rhs = rhs + g_poly(ctx, m, m - 1).scale_p(nu_int(p, m) + 1)
        ok = lhs == rhs
        out.append(
            CheckResult(
                name=f"action/g/m={m},l={m}",
                anchor=ANCHOR_ACTION_G,
                passed=ok,
                params=_ctx_params(ctx, m=m, l=m, branch=branch),
            )
        )
    for m in range(2, kmax + 1):
        for n in range(1, m):
            branch = _offdiag_action_branch(p, m, n)
            hit.add(f"off:{branch}")
            lhs = psi_action(g_poly(ctx, m, n))
            rhs = g_poly(ctx, m, n).scale(ctx.q_hat_pow(n))
            if branch == "above":
                rhs = rhs + g_poly(ctx, m, n - 1)
            elif branch == "window":
                rhs = rhs + g_poly(ctx, m, n - 1).scale_p(nu_factorial(p, n) + n - m)
            else:
                rhs = rhs + g_poly(ctx, m, n - 1).scale_p(nu_int(p, n) + 1)
            ok = lhs == rhs
            out.append(
                CheckResult(
                    name=f"action/g/m={m},l={n}",
                    anchor=ANCHOR_ACTION_G,
                    passed=ok,
                    params=_ctx_params(ctx, m=m, l=n, branch=branch),
                )
            )
    required = reachable_action_branches(p, kmax)
    coverage_ok = hit == set(required)
    out.append(
        CheckResult(
            name="action/g/branch-coverage",
            anchor=ANCHOR_ACTION_G,
            passed=coverage_ok,
            params=_ctx_params(ctx, kmax=kmax, branches=sorted(hit)),
            detail="" if coverage_ok else f"expected {sorted(required)}",
        )
    )
    return out


def suite_alglem(ctx: PadicContext, kmax: int) -> list[CheckResult]:
    """(u/p)**nu(m!) * g_{m,i} re-expressed through f_i, both branches."""
    p = ctx.p
    out = []
    hit: set[str] = set()
    for m in range(1, kmax + 1):
        for i in range(m):
            nu_m, nu_i = nu_factorial(p, m), nu_factorial(p, i)
            branch = "le" if m <= nu_i + i else "gt"
            hit.add(branch)
            lhs = (g_poly(ctx, m, i) * BivarPoly.monomial(ctx, nu_m, 0)).scale_p(-nu_m)
            # Right side: p**-beta * u**(nu(m!)-nu(i!)+m-i) * (u/p)**nu(i!) * f_i.
            rhs = (f_poly(ctx, i) * BivarPoly.monomial(ctx, nu_m + m - i, 0)).scale_p(
                -nu_i - beta(p, m, i)
            )
            ok = lhs == rhs
            out.append(
                CheckResult(
                    name=f"alglem/m={m},i={i}",
                    anchor=ANCHOR_ALGLEM,
                    passed=ok,
                    params=_ctx_params(ctx, m=m, i=i, branch=branch),
                )
            )
    required = {"gt"} | ({"le"} if kmax >= p + 1 else set())
    coverage_ok = hit == required
    out.append(
        CheckResult(
            name="alglem/branch-coverage",
            anchor=ANCHOR_ALGLEM,
            passed=coverage_ok,
            params=_ctx_params(ctx, kmax=kmax, branches=sorted(hit)),
            detail="" if coverage_ok else f"expected {sorted(required)}",
        )
    )
    return out


def suite_lower_g(ctx: PadicContext, kmax: int) -> list[CheckResult]:
    """u**(m-n) * g_{n,i} against the p-power multiple of g_{m,i}."""
    p = ctx.p
    out = []
    hit: set[str] = set()
    for m in range(kmax + 1):
        for n in range(m + 1):
            for i in range(n + 1):
                nu_i = nu_factorial(p, i)
                if m <= nu_i + i:
                    branch, exponent = "low", m - n
                elif n <= nu_i + i:
                    branch, exponent = "mid", nu_i + i - n
                else:
                    branch, exponent = "high", 0
                hit.add(branch)
                lhs = g_poly(ctx, n, i) * BivarPoly.monomial(ctx, m - n, 0)
                rhs = g_poly(ctx, m, i).scale_p(exponent)
                ok = lhs == rhs
                out.append(
                    CheckResult(
                        name=f"lower-g/m={m},n={n},i={i}",
                        anchor=ANCHOR_LOWER_G,
                        passed=ok,
                        params=_ctx_params(ctx, m=m, n=n, i=i, branch=branch),
                    )
                )
    required = {"low"} | ({"mid", "high"} if kmax >= 1 else set())
    coverage_ok = hit == required
    out.append(
        CheckResult(
            name="lower-g/branch-coverage",
            anchor=ANCHOR_LOWER_G,
            passed=coverage_ok,
            params=_ctx_params(ctx, kmax=kmax, branches=sorted(hit)),
            detail="" if coverage_ok else f"expected {sorted(required)}",
        )
    )
    return out


SUITE_BUILDERS: dict[str, Callable[..., list[CheckResult]]] = {
    "qbinom-matrix": lambda ctx, cfg: suite_qbinom_matrix(ctx, cfg["W"], cfg["nmax"]),
    "rpower": lambda ctx, cfg: suite_rpower(ctx, cfg["W"], cfg["nmax"]),
    "xn": lambda ctx, cfg: suite_xn(ctx, cfg["W"], cfg["nmax"]),
    "alpha": lambda ctx, cfg: suite_alpha(ctx, cfg["W"], cfg["alpha_trials"], cfg["seed"]),
    "conjugation": lambda ctx, cfg: suite_conjugation(
        ctx, cfg["W"], cfg["trials"], cfg["seed"], cfg["e2e_trials"]
    ),
    "integrality": lambda ctx, cfg: suite_integrality(ctx, cfg["kmax"], cfg["seed"]),
    "action": lambda ctx, cfg: suite_action(ctx, cfg["kmax"]),
    "alglem": lambda ctx, cfg: suite_alglem(ctx, cfg["kmax"]),
    "lower-g": lambda ctx, cfg: suite_lower_g(ctx, cfg["kmax"]),
}

SUITE_ORDER = tuple(SUITE_BUILDERS)


def default_suite_config(W: int, nmax: int, kmax: int, trials: int, seed: int) -> dict:
    return {
        "W": W,
        "nmax": nmax,
        "kmax": kmax,
        "trials": trials,
        "e2e_trials": 20,
        "alpha_trials": 20,
        "seed": seed,
    }


def run_suites(ctx: PadicContext, names: list[str], cfg: dict) -> Iterator[CheckResult]:
    """Run the named suites in canonical order, yielding results lazily."""
    for name in SUITE_ORDER:
        if name in names:
            yield from SUITE_BUILDERS[name](ctx, cfg)
