"""Cross-checks closed-form counts against brute-force enumeration.

A mismatch is reported, never raised: finding one is the reason this
module exists.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .arith import ModulusContext, PolySpec, as_poly, is_prime
from .counts import (
    CountBreakdown,
    fixed_multiplier,
    fp_count_mod_p,
    fp_count_mod_p_divisor_sum,
    fp_count_nonsingular,
    fp_count_nonsingular_divisor_sum,
    fp_count_total,
    fp_count_total_divisor_sum,
    p2_fixed_class_count,
    p2_fixed_total,
    p2_two_cycle_class_count,
    p2_two_cycle_total,
    tc_count_mod_p,
    tc_count_mod_p_divisor_sum,
    tc_count_total,
    tc_count_total_divisor_sum,
    two_cycle_multiplier,
)
from .oracle import (
    RangeSpec,
    classify_fixed,
    classify_two_cycles,
    count_nonsingular_fixed,
    enumerate_fixed_points,
    enumerate_two_cycles,
)
from .padic import interpolated_selfpower, one_unit_part, pexp, plog, teichmuller, valuation

KINDS = ("fixed", "two-cycle")


@dataclass(frozen=True)
class ClassCount:
    key: str
    formula: int
    oracle: int


@dataclass
class CountReport:
    kind: str
    p: int
    e: int
    n: int
    formula_total: int | None
    oracle_total: int | None
    per_class: list[ClassCount] = field(default_factory=list)
    match: bool = False
    regime: str | None = None
    elapsed_ms: float | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CountReport":
        data = dict(data)
        data["per_class"] = [ClassCount(**c) for c in data.get("per_class", [])]
        return cls(**data)


@dataclass(frozen=True)
class RatioReport:
    kind: str
    p: int
    e: int
    n: int
    full_count: int
    reduced_count: int
    ratio: Fraction
    reference: Fraction

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ratio"] = str(self.ratio)
        d["reference"] = str(self.reference)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "RatioReport":
        data = dict(data)
        data["ratio"] = Fraction(data["ratio"])
        data["reference"] = Fraction(data["reference"])
        return cls(**data)


def _compare(breakdown: CountBreakdown, oracle_classes: dict, oracle_total: int, kind, ctx, n, t0, timing):
    keys = sorted(set(breakdown.per_class) | set(oracle_classes))
    per_class = [
        ClassCount(str(k), breakdown.per_class.get(k, 0), oracle_classes.get(k, 0)) for k in keys
    ]
    match = (
        breakdown.total == oracle_total
        and all(c.formula == c.oracle for c in per_class)
        and breakdown.decomposition_holds()
    )
    return CountReport(
        kind, ctx.p, ctx.e, n, breakdown.total, oracle_total, per_class, match,
        breakdown.regime.value,
        round((time.perf_counter() - t0) * 1000, 3) if timing else None,
    )


def verify_fixed(ctx: ModulusContext, n: int, budget=None, workers: int = 1, timing: bool = False) -> CountReport:
    t0 = time.perf_counter()
    breakdown = fp_count_total(ctx, n)
    records = enumerate_fixed_points(ctx, n, budget=budget, workers=workers)
    return _compare(breakdown, classify_fixed(records, ctx), len(records), "fixed", ctx, n, t0, timing)


def verify_two_cycles(ctx: ModulusContext, n: int, budget=None, workers: int = 1, timing: bool = False) -> CountReport:
    t0 = time.perf_counter()
    breakdown = tc_count_total(ctx, n)
    records = enumerate_two_cycles(ctx, n, budget=budget, workers=workers)
    return _compare(breakdown, classify_two_cycles(records, ctx), len(records), "two-cycle", ctx, n, t0, timing)


def _verify_point(point, kind, budget, timing):
    p, e, n = point
    try:
        ctx = ModulusContext(p, e)
        fn = verify_fixed if kind == "fixed" else verify_two_cycles
        return fn(ctx, n, budget=budget, timing=timing)
    except Exception as exc:  # recorded per point; the sweep carries on
        return CountReport(kind, p, e, n, None, None, error=f"{type(exc).__name__}: {exc}")


def sweep(grid, kinds=KINDS, workers: int = 1, budget=None, timing: bool = False) -> list[CountReport]:
    """One report per (point, kind), ordered by grid index then kind."""
    tasks = [(tuple(pt), kind) for pt in grid for kind in kinds]
    if workers <= 1 or len(tasks) <= 1:
        return [_verify_point(pt, kind, budget, timing) for pt, kind in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_verify_point, pt, kind, budget, timing) for pt, kind in tasks]
        return [f.result() for f in futures]


def grid_from_bounds(p_max: int, e_max: int, n_max: int) -> list[tuple[int, int, int]]:
    return [
        (p, e, n)
        for p in range(2, p_max + 1)
        if is_prime(p)
        for e in range(1, e_max + 1)
        for n in range(1, n_max + 1)
    ]


def heuristic_ratio(ctx: ModulusContext, n: int, kind: str = "fixed", budget=None) -> RatioReport:
    """Share of the solutions that already lie in 1..p^e.  Observational only."""
    if kind == "fixed":
        full = fp_count_total(ctx, n).total
        reduced = len(enumerate_fixed_points(ctx, n, RangeSpec.REDUCED, budget=budget))
    else:
        full = tc_count_total(ctx, n).total
        reduced = len(enumerate_two_cycles(ctx, n, RangeSpec.REDUCED, budget=budget))
    return RatioReport(kind, ctx.p, ctx.e, n, full, reduced, Fraction(reduced, full), Fraction(1, ctx.p))


# -- identity and boundary checks ----------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    params: tuple
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def _odd_primes(limit: int):
    return [p for p in range(3, limit + 1) if is_prime(p)]


def sum_form_checks(p_max: int = 23, n_max: int = 8, e_values=(1, 2, 3, 4, 5)) -> list[IdentityCheck]:
    """Double-sum versus divisor-sum forms of every count stated both ways."""
    out = []
    for p in _odd_primes(p_max):
        for n in range(1, n_max + 1):
            g = PolySpec.power(n)
            out.append(IdentityCheck("fp-mod-p", (p, n), fp_count_mod_p(p, g), fp_count_mod_p_divisor_sum(p, g)))
            out.append(IdentityCheck("tc-mod-p", (p, n), tc_count_mod_p(p, g), tc_count_mod_p_divisor_sum(p, g)))
            out.append(IdentityCheck(
                "fp-nonsingular", (p, n), fp_count_nonsingular(p, 1, g), fp_count_nonsingular_divisor_sum(p, g)
            ))
            for e in e_values:
                ctx = ModulusContext(p, e)
                out.append(IdentityCheck(
                    "fp-total", (p, e, n), fp_count_total(ctx, n).total, fp_count_total_divisor_sum(ctx, n)
                ))
                out.append(IdentityCheck(
                    "tc-total", (p, e, n), tc_count_total(ctx, n).total, tc_count_total_divisor_sum(ctx, n)
                ))
    return out


def boundary_checks(p_max: int = 7, n_max: int = 9) -> list[IdentityCheck]:
    """Where two branches of a piecewise formula meet, both must give the same value."""
    out = []
    for p in _odd_primes(p_max):
        for n in range(1, n_max + 1):
            v = valuation(n, p)
            if v == 0:
                continue
            for e in (v + 1, v + 2):
                out.append(IdentityCheck("fp-odd-p", (p, n, e), p ** (e - 1), p ** ((e + v) // 2)))
                out.append(IdentityCheck("fp-odd-p-table", (p, n, e), fixed_multiplier(p, e, v), p ** (e - 1)))
            for e in (2 * v + 1, 2 * v + 2, 2 * v + 3):
                cubic = p ** ((e + v) // 3 + (e + v + 1) // 3)
                out.append(IdentityCheck("tc-odd-p-cubic", (p, n, e), p ** (e - 1), cubic))
                out.append(IdentityCheck(
                    "tc-odd-p-table", (p, n, e), two_cycle_multiplier(p, e, v, True), p ** (e - 1)
                ))
    for n in range(1, n_max + 1):
        v = valuation(n, 2)
        if n % 2 == 0:
            for e in (v + 3, v + 4):
                for xi in (1, -1):
                    out.append(IdentityCheck(f"p2-fixed-class{xi:+d}", (2, n, e), 2 ** (e - 2), 2 ** ((e + v) // 2)))
                    out.append(IdentityCheck(
                        f"p2-fixed-class{xi:+d}-table", (2, n, e), p2_fixed_class_count(e, n, xi), 2 ** (e - 2)
                    ))
                out.append(IdentityCheck("p2-fixed-total", (2, n, e), 2 * 2 ** (e - 2), 2 * 2 ** ((e + v) // 2)))
                out.append(IdentityCheck("p2-fixed-total-table", (2, n, e), p2_fixed_total(e, n), 2 * 2 ** (e - 2)))
        else:
            for e in (3, 4):
                out.append(IdentityCheck("p2-fixed-class+1", (2, n, e), 2 ** (e - 2), 2 ** (e // 2)))
            out.append(IdentityCheck("p2-fixed-class-1", (2, n, 3), 2 ** (3 - 2), 2))
            out.append(IdentityCheck("p2-fixed-total", (2, n, 3), 2 * 2 ** (3 - 2), 2 ** (3 // 2) + 2))
            out.append(IdentityCheck("p2-fixed-total-table", (2, n, 3), p2_fixed_total(3, n), 2 * 2 ** (3 - 2)))
        for e in (v + 4, v + 5):
            out.append(IdentityCheck("p2-tc-class", (2, n, e), 2 ** (e - 2), 2 ** ((e + v + 1) // 2)))
            out.append(IdentityCheck("p2-tc-class-table", (2, n, e), p2_two_cycle_class_count(e, n, 1), 2 ** (e - 2)))
            out.append(IdentityCheck("p2-tc-total", (2, n, e), 2 * 2 ** (e - 2), p2_two_cycle_total(e, n)))
        if n % 2:
            for e in (4, 5):
                cubic = 2 ** (e // 3 + (e + 1) // 3)
                out.append(IdentityCheck("p2-tc-class-1", (2, n, e), 2 ** (e - 2), cubic))
                out.append(IdentityCheck(
                    "p2-tc-total-odd", (2, n, e), 2 * 2 ** (e - 2), 2 ** ((e + 1) // 2) + cubic
                ))
    return out


def identity_suite(p_max: int = 23, n_max: int = 8, boundary_p_max: int = 7, boundary_n_max: int = 9):
    return sum_form_checks(p_max, n_max) + boundary_checks(boundary_p_max, boundary_n_max)


def nonsingular_invariance(p: int, g, e_max: int = 5, budget=None) -> dict:
    """Formula and oracle nonsingular counts for e = 1..e_max."""
    g = as_poly(g)
    formula = {e: fp_count_nonsingular(p, e, g) for e in range(1, e_max + 1)}
    oracle = {
        e: count_nonsingular_fixed(ModulusContext(p, e), g, budget=budget) for e in range(1, e_max + 1)
    }
    return {"formula": formula, "oracle": oracle}


# -- p-adic property checks ----------------------------------------------------------


@dataclass
class PropertyResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cases > 0 and not self.failures

    def check(self, condition: bool, witness):
        self.cases += 1
        if not condition:
            self.failures.append(witness)


def _padic_checks_for(ctx: ModulusContext, units, one_units, zs, pairs, results: dict):
    m, q = ctx.modulus, min(ctx.q, ctx.modulus)
    r = results
    for u in one_units:
        r["exp-log"].check(pexp(plog(u, ctx), ctx) == u % m, (ctx.p, ctx.e, u))
    for z in zs:
        r["log-exp"].check(plog(pexp(z, ctx), ctx) == z % m, (ctx.p, ctx.e, z))
    for x in units:
        w, u = teichmuller(x, ctx), one_unit_part(x, ctx)
        r["teich-root-of-unity"].check(pow(w, ctx.phi_q, m) == 1 % m and (w - x) % q == 0, (ctx.p, ctx.e, x))
        r["decomposition"].check(w * u % m == x % m and (u - 1) % q == 0, (ctx.p, ctx.e, x))
    for x, y in pairs:
        r["teich-multiplicative"].check(
            teichmuller(x * y, ctx) == teichmuller(x, ctx) * teichmuller(y, ctx) % m, (ctx.p, ctx.e, x, y)
        )
    for u, v in ((a, b) for a, b in pairs if (a - 1) % q == 0 and (b - 1) % q == 0):
        r["log-additive"].check(plog(u * v, ctx) == (plog(u, ctx) + plog(v, ctx)) % m, (ctx.p, ctx.e, u, v))


def padic_property_checks(
    exhaustive=((3, 4), (5, 3), (7, 2), (2, 6)),
    samples: int = 1000,
    seed: int = 0,
    sample_primes=(2, 3, 5, 7, 11, 13),
    e_max: int = 8,
) -> list[PropertyResult]:
    names = [
        "exp-log", "log-exp", "teich-root-of-unity", "teich-multiplicative",
        "decomposition", "log-additive", "interpolation",
    ]
    results = {name: PropertyResult(name) for name in names}
    polys = [PolySpec.power(k) for k in (1, 2, 3)]

    for p, e in exhaustive:
        ctx = ModulusContext(p, e)
        m, q = ctx.modulus, min(ctx.q, ctx.modulus)
        units = [x for x in range(1, m) if x % p]
        pairs = [(x, y) for x in units for y in units]
        _padic_checks_for(ctx, units, range(1, m, q), range(0, m, ctx.q), pairs, results)
        # x and x0 independently cover Z/p^e and Z/phi(q)
        for x in range(1, m * ctx.phi_q):
            if x % p:
                for g in polys:
                    results["interpolation"].check(
                        interpolated_selfpower(x, x % ctx.phi_q, g, ctx) == pow(x, g(x), m), (p, e, x, str(g))
                    )

    rng = random.Random(seed)
    for _ in range(samples):
        p = rng.choice(sample_primes)
        e = rng.randint(1, e_max)
        ctx = ModulusContext(p, e)
        m, q = ctx.modulus, ctx.q
        x = rng.randrange(1, m * ctx.phi_q)
        while x % p == 0:
            x = rng.randrange(1, m * ctx.phi_q)
        y = rng.randrange(1, m)
        while y % p == 0:
            y = rng.randrange(1, m)
        u = (1 + q * rng.randrange(m)) % m
        v = (1 + q * rng.randrange(m)) % m
        z = q * rng.randrange(m) % m
        _padic_checks_for(ctx, [x, y], [u], [z], [(x, y), (u, v)], results)
        g = rng.choice(polys)
        results["interpolation"].check(
            interpolated_selfpower(x, x % ctx.phi_q, g, ctx) == pow(x, g(x), m), (p, e, x, str(g))
        )
    return [results[name] for name in names]


__all__ = [
    "ClassCount",
    "CountReport",
    "IdentityCheck",
    "PropertyResult",
    "RatioReport",
    "boundary_checks",
    "grid_from_bounds",
    "heuristic_ratio",
    "identity_suite",
    "nonsingular_invariance",
    "padic_property_checks",
    "sum_form_checks",
    "sweep",
    "verify_fixed",
    "verify_two_cycles",
]
