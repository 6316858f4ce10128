"""Brute-force enumeration of fixed points and two-cycles.

This is the ground truth the closed forms are checked against, so it only
relies on modular exponentiation.  The candidate range is cut into disjoint
intervals which may be processed in worker processes; results are merged in
interval order, so the output never depends on the worker count.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .arith import DomainError, ModulusContext, PolySpec, as_poly
from .counts import FixedClassKey, TwoCycleClassKey

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "SELFPOWER_BUDGET"
CHUNK = 1 << 15


class BudgetExceeded(RuntimeError):
    pass


class RangeSpec(str, Enum):
    """``full``: 1..p^e(p-1) for odd p (1..2^e for p = 2); ``reduced``: 1..p^e."""

    FULL = "full"
    REDUCED = "reduced"

    def upper(self, ctx: ModulusContext) -> int:
        if self is RangeSpec.REDUCED or ctx.p == 2:
            return ctx.modulus
        return ctx.modulus * (ctx.p - 1)


@dataclass(frozen=True, order=True)
class SolutionRecord:
    x: int
    y: int | None
    x0: int | None
    x1: int

    def as_row(self) -> dict:
        row = {"x": self.x}
        if self.y is not None:
            row["y"] = self.y
        row["x0"] = self.x0
        row["x1"] = self.x1
        return row


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def _exponent(x: int, g: PolySpec, lam: int) -> int:
    n = g.pure_power
    if n is not None:
        return pow(x, n, lam)
    return g(x) % lam


def _image(x: int, g: PolySpec, m: int, lam: int) -> int:
    return pow(x, _exponent(x, g, lam), m)


def _recheck(x: int, target: int, g: PolySpec, ctx: ModulusContext) -> bool:
    # independent of the Carmichael reduction used in the scan: reduce by phi
    exp = g(x) % ctx.phi
    return pow(x, exp, ctx.modulus) == target % ctx.modulus


def _fixed_chunk(p: int, e: int, g: PolySpec, lo: int, hi: int) -> list[int]:
    ctx = ModulusContext(p, e)
    m, lam = ctx.modulus, ctx.carmichael
    return [x for x in range(lo, hi) if x % p and _image(x, g, m, lam) == x % m]


def _two_cycle_chunk(p: int, e: int, g: PolySpec, lo: int, hi: int, upper: int) -> list[tuple[int, int]]:
    ctx = ModulusContext(p, e)
    m, lam = ctx.modulus, ctx.carmichael
    out = []
    for x in range(lo, hi):
        if x % p == 0:
            continue
        r = _image(x, g, m, lam)
        # every y in range with y == r (mod p^e); r is a unit so r >= 1
        for y in range(r, upper + 1, m):
            if _image(y, g, m, lam) == x % m:
                out.append((x, y))
    return out


def _intervals(upper: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + CHUNK, upper + 1)) for lo in range(1, upper + 1, CHUNK)]


def _run(func, jobs: list[tuple], workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        parts = [func(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(func, *zip(*jobs)))
    return [item for part in parts for item in part]


def _check_budget(cost: int, budget: int | None):
    budget = default_budget() if budget is None else budget
    if cost > budget:
        raise BudgetExceeded(f"{cost} candidate evaluations exceed the budget of {budget}")


def _record(x: int, y: int | None, ctx: ModulusContext) -> SolutionRecord:
    x0 = x % (ctx.p - 1) if ctx.p > 2 else None
    return SolutionRecord(x, y, x0, x % ctx.modulus)


def enumerate_fixed_points(
    ctx: ModulusContext,
    g,
    range_spec: RangeSpec = RangeSpec.FULL,
    budget: int | None = None,
    workers: int = 1,
) -> list[SolutionRecord]:
    """All ``x`` in range, prime to p, with ``x**g(x) == x (mod p^e)``.

    ``g`` is a ``PolySpec`` or an integer exponent ``n``.
    """
    g = as_poly(g)
    upper = RangeSpec(range_spec).upper(ctx)
    _check_budget(upper, budget)
    jobs = [(ctx.p, ctx.e, g, lo, hi) for lo, hi in _intervals(upper)]
    xs = _run(_fixed_chunk, jobs, workers)
    for x in xs:
        if not _recheck(x, x, g, ctx):
            raise AssertionError(f"enumerated fixed point {x} fails re-verification")
    return [_record(x, None, ctx) for x in xs]


def enumerate_two_cycles(
    ctx: ModulusContext,
    g,
    range_spec: RangeSpec = RangeSpec.FULL,
    budget: int | None = None,
    workers: int = 1,
) -> list[SolutionRecord]:
    """All ordered pairs ``(x, y)`` in range with ``x -> y -> x`` under the map.

    For odd p the image of ``x`` pins ``y`` mod p^e, leaving ``p - 1``
    candidates in the full range instead of a quadratic pair scan.
    """
    g = as_poly(g)
    upper = RangeSpec(range_spec).upper(ctx)
    per_x = upper // ctx.modulus
    _check_budget(upper * (1 + per_x), budget)
    jobs = [(ctx.p, ctx.e, g, lo, hi, upper) for lo, hi in _intervals(upper)]
    pairs = _run(_two_cycle_chunk, jobs, workers)
    for x, y in pairs:
        if not (_recheck(x, y, g, ctx) and _recheck(y, x, g, ctx)):
            raise AssertionError(f"enumerated pair {(x, y)} fails re-verification")
    return [_record(x, y, ctx) for x, y in pairs]


def classify_fixed(records, ctx: ModulusContext) -> dict:
    counts = Counter(FixedClassKey(r.x % ctx.q) for r in records)
    return dict(sorted(counts.items()))


def classify_two_cycles(records, ctx: ModulusContext) -> dict:
    counts = Counter(TwoCycleClassKey(r.x % ctx.q, r.y % ctx.q) for r in records)
    return dict(sorted(counts.items()))


def count_nonsingular_fixed(ctx: ModulusContext, g, budget: int | None = None) -> int:
    """Fixed points with ``g(x) != 1 (mod p)`` (odd p only)."""
    if ctx.p == 2:
        raise DomainError("every fixed point is singular when p = 2")
    g = as_poly(g)
    return sum(
        1 for r in enumerate_fixed_points(ctx, g, budget=budget) if (g(r.x) - 1) % ctx.p
    )
