"""Closed-form counts of fixed points and two-cycles of ``x -> x**(x**n)`` mod p^e.

Ranges follow the usual convention: ``1 <= x <= p^e (p - 1)`` with ``p`` not
dividing ``x`` for odd ``p`` (so that ``x`` mod ``p - 1`` and ``x`` mod ``p^e``
vary independently), and ``1 <= x <= 2^e`` for ``p = 2``.  Two-cycles are
ordered pairs ``(x, y)`` over the same range with ``x**(x**n) == y`` and
``y**(y**n) == x``.

Every count decomposes by residue class.  A class is *nonsingular* when the
solutions mod p lift uniquely (Hensel), and *singular* when they sit on an
n-th root of unity where the lifting multiplies by a power of ``p`` that
depends only on ``e`` and ``v_p(n)``.  The multiplier tables live in
``fixed_multiplier``, ``two_cycle_multiplier`` and their ``p = 2`` siblings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd

from .arith import (
    DomainError,
    ModulusContext,
    PolySpec,
    as_poly,
    count_pair_roots,
    count_roots,
    divisors,
    euler_phi,
    mult_order,
)
from .padic import valuation


class Regime(str, Enum):
    ODD_P_COPRIME_N = "odd-p-coprime-n"
    ODD_P_DIVIDING_N_SMALL_E = "odd-p-dividing-n-small-e"
    ODD_P_DIVIDING_N_LARGE_E = "odd-p-dividing-n-large-e"
    P2_N_EVEN = "p2-n-even"
    P2_N_ODD = "p2-n-odd"


@dataclass(frozen=True, order=True)
class FixedClassKey:
    """Fixed points ``x == xi_residue (mod q)``."""

    xi_residue: int

    def __str__(self):
        return str(self.xi_residue)


@dataclass(frozen=True, order=True)
class TwoCycleClassKey:
    """Two-cycles with ``x == a_residue`` and ``y == b_residue`` (mod p, or mod 4 when p = 2)."""

    a_residue: int
    b_residue: int

    def __str__(self):
        return f"{self.a_residue}:{self.b_residue}"


@dataclass(frozen=True)
class CountBreakdown:
    kind: str
    p: int
    e: int
    n: int
    total: int
    nonsingular_total: int
    per_class: dict = field(default_factory=dict)
    singular: frozenset = frozenset()
    regime: Regime = Regime.ODD_P_COPRIME_N

    @property
    def singular_total(self) -> int:
        return sum(c for k, c in self.per_class.items() if k in self.singular)

    def decomposition_holds(self) -> bool:
        return (
            self.total == self.nonsingular_total + self.singular_total
            and self.total == sum(self.per_class.values())
        )


def _require_odd(p: int):
    if p == 2:
        raise DomainError("this count is stated for odd p; use the *_total variant for p = 2")


def regime_for(ctx: ModulusContext, n: int) -> Regime:
    if ctx.p == 2:
        return Regime.P2_N_EVEN if n % 2 == 0 else Regime.P2_N_ODD
    v = valuation(n, ctx.p)
    if v == 0:
        return Regime.ODD_P_COPRIME_N
    return Regime.ODD_P_DIVIDING_N_SMALL_E if ctx.e <= v else Regime.ODD_P_DIVIDING_N_LARGE_E


# -- lifting multipliers -------------------------------------------------------


def fixed_multiplier(p: int, e: int, v: int) -> int:
    """Lifts mod p^e of a singular fixed point mod p, odd p, ``v = v_p(n)``."""
    if e <= v:
        return p ** (e - 1)
    return p ** ((e + v) // 2)


def two_cycle_multiplier(p: int, e: int, v: int, cubic: bool) -> int:
    """Lifts of a singular two-cycle; ``cubic`` when ``b**n == -1``."""
    if not cubic:
        return fixed_multiplier(p, e, v)
    if e <= 2 * v:
        return p ** (e - 1)
    return p ** ((e + v) // 3 + (e + v + 1) // 3)


def p2_fixed_class_count(e: int, n: int, xi: int) -> int:
    """``|G_{xi,e}|`` for p = 2, ``xi`` in {1, -1}, ``e >= 2``."""
    if e < 2:
        raise DomainError("classes mod 4 need e >= 2")
    v = valuation(n, 2)
    if n % 2 == 0 or xi == 1:
        return 2 ** (e - 2) if e <= 4 + v else 2 ** ((e + v) // 2)
    return 2 ** (e - 2) if e <= 3 else 2


def p2_two_cycle_class_count(e: int, n: int, b: int) -> int:
    """``|T_{b,b,e}|`` for p = 2, ``b`` in {1, -1}, ``e >= 2``."""
    if e < 2:
        raise DomainError("classes mod 4 need e >= 2")
    v = valuation(n, 2)
    if n % 2 == 0 or b == 1:
        return 2 ** (e - 2) if e <= v + 4 else 2 ** ((e + v + 1) // 2)
    return 2 ** (e - 2) if e <= 4 else 2 ** (e // 3 + (e + 1) // 3)


def p2_fixed_total(e: int, n: int) -> int:
    """Fixed points in 1..2^e, closed form."""
    v = valuation(n, 2)
    if e == 1:
        # only x = 1; the 2p^(e-2) expression is not an integer here
        return 1
    if n % 2 == 0:
        return 2 * 2 ** (e - 2) if e <= 4 + v else 2 * 2 ** ((e + v) // 2)
    return 2 * 2 ** (e - 2) if e <= 3 else 2 ** (e // 2) + 2


def p2_two_cycle_total(e: int, n: int) -> int:
    """Two-cycles in (1..2^e)^2, closed form."""
    v = valuation(n, 2)
    if e == 1:
        return 1
    if n % 2 == 0:
        return 2 * 2 ** (e - 2) if e <= v + 4 else 2 * 2 ** ((e + v + 1) // 2)
    if e <= 4:
        return 2 * 2 ** (e - 2)
    return 2 ** ((e + 1) // 2) + 2 ** (e // 3 + (e + 1) // 3)


def _p2_classes(ctx: ModulusContext) -> list[int]:
    return [1] if ctx.e == 1 else [1, 3]


# -- fixed points ------------------------------------------------------------------


def fp_count_per_x0(p: int, g, x0: int) -> int:
    """Solutions mod p attached to one class ``x0`` mod ``p - 1``."""
    return gcd(p - 1, as_poly(g)(x0) - 1)


def fp_count_per_x(p: int, g, x: int) -> int:
    """Classes ``x0`` mod ``p - 1`` that make the unit ``x`` mod p a fixed point."""
    d = mult_order(x, p)
    return count_roots(g, -1, d) * (p - 1) // d


def fp_count_mod_p(p: int, g) -> int:
    _require_odd(p)
    g = as_poly(g)
    return sum(gcd(p - 1, g(x0) - 1) for x0 in range(1, p))


def fp_count_mod_p_divisor_sum(p: int, g) -> int:
    _require_odd(p)
    return sum(
        euler_phi(d) * ((p - 1) // d) * count_roots(g, -1, d) for d in divisors(p - 1)
    )


def fp_count_nonsingular(p: int, e: int, g) -> int:
    """Fixed points with ``g(x) != 1 (mod p)``; the same for every ``e``."""
    _require_odd(p)
    g = as_poly(g)
    singular = sum(fp_count_per_x(p, g, x1) for x1 in range(1, p) if (g(x1) - 1) % p == 0)
    return fp_count_mod_p(p, g) - singular


def fp_count_nonsingular_divisor_sum(p: int, g) -> int:
    _require_odd(p)
    g = as_poly(g)
    total = 0
    for d in divisors(p - 1):
        nonsing = sum(
            1 for x1 in range(1, p) if mult_order(x1, p) == d and (g(x1) - 1) % p
        )
        total += nonsing * ((p - 1) // d) * count_roots(g, -1, d)
    return total


def fp_singular_class_count(ctx: ModulusContext, n: int, key) -> int:
    """``|G_{xi,e}|`` for an n-th root of unity ``xi`` (a residue mod q)."""
    xi = key.xi_residue if isinstance(key, FixedClassKey) else int(key)
    p, e = ctx.p, ctx.e
    if p == 2:
        if xi % 4 not in (1, 3):
            raise DomainError(f"{xi} is not +-1 mod 4")
        return p2_fixed_class_count(e, n, 1 if xi % 4 == 1 else -1)
    if xi % p == 0 or pow(xi, n, p) != 1:
        raise DomainError(f"{xi} is not an {n}-th root of unity mod {p}")
    d = mult_order(xi, p)
    prefactor = (p - 1) // d * count_roots(n, -1, d)
    return prefactor * fixed_multiplier(p, e, valuation(n, p))


def fp_count_total(ctx: ModulusContext, n: int) -> CountBreakdown:
    p, e = ctx.p, ctx.e
    regime = regime_for(ctx, n)
    if p == 2:
        per_class = {}
        for a in _p2_classes(ctx):
            c = 1 if e == 1 else fp_singular_class_count(ctx, n, a)
            if c:
                per_class[FixedClassKey(a)] = c
        return CountBreakdown(
            "fixed", p, e, n, p2_fixed_total(e, n), 0, per_class,
            frozenset(per_class), regime,
        )
    mult = fixed_multiplier(p, e, valuation(n, p))
    base = sum(gcd(p - 1, x0**n - 1) for x0 in range(1, p))
    sing = sum(gcd(gcd(p - 1, n), x0**n - 1) for x0 in range(1, p))
    total = base + sing * (mult - 1)

    per_class, singular = {}, set()
    for a in range(1, p):
        key = FixedClassKey(a)
        if pow(a, n, p) == 1:
            c = fp_singular_class_count(ctx, n, key)
            singular.add(key)
        else:
            c = fp_count_per_x(p, n, a)
        if c:
            per_class[key] = c
    return CountBreakdown(
        "fixed", p, e, n, total, base - sing, per_class, frozenset(singular), regime
    )


def fp_count_total_divisor_sum(ctx: ModulusContext, n: int) -> int:
    p = ctx.p
    _require_odd(p)
    mult = fixed_multiplier(p, ctx.e, valuation(n, p))
    full = sum(
        euler_phi(d) * ((p - 1) // d) * count_roots(n, -1, d) for d in divisors(p - 1)
    )
    sing = sum(
        euler_phi(d) * ((p - 1) // d) * count_roots(n, -1, d)
        for d in divisors(gcd(n, p - 1))
    )
    return full + sing * (mult - 1)


# -- two-cycles ----------------------------------------------------------------------


def tc_count_per_x0y0(p: int, g, x0: int, y0: int) -> int:
    g = as_poly(g)
    return gcd(p - 1, g(x0) * g(y0) - 1)


def tc_count_per_y(p: int, g, y: int) -> int:
    """Pairs ``(x0, y0)`` mod ``p - 1`` admitting a two-cycle through ``y`` mod p."""
    d = mult_order(y, p)
    return count_pair_roots(g, d) * ((p - 1) // d) ** 2


def tc_count_mod_p(p: int, g) -> int:
    _require_odd(p)
    g = as_poly(g)
    vals = [g(x0) for x0 in range(1, p)]
    return sum(gcd(p - 1, a * b - 1) for a in vals for b in vals)


def tc_count_mod_p_divisor_sum(p: int, g) -> int:
    _require_odd(p)
    return sum(
        euler_phi(d) * ((p - 1) // d) ** 2 * count_pair_roots(g, d) for d in divisors(p - 1)
    )


def tc_class_base_count(p: int, g, a: int, b: int) -> int:
    """``|T_{a,b,1}|`` for odd p.

    Each ``(x0, y0)`` mod ``p - 1`` and each ``y`` mod p of order dividing
    ``g(x0) g(y0) - 1`` gives exactly one two-cycle mod p(p-1), with
    ``x == y**g(y0) (mod p)``; here ``y`` is pinned to ``b``.
    """
    _require_odd(p)
    g = as_poly(g)
    if a % p == 0 or b % p == 0:
        return 0
    d = mult_order(b, p)
    count = 0
    for y0 in range(1, p):
        if pow(b, g(y0) % (p - 1), p) != a % p:
            continue
        gy = g(y0)
        count += sum(1 for x0 in range(1, p) if (g(x0) * gy - 1) % d == 0)
    return count


def tc_singular_class_count(ctx: ModulusContext, n: int, key, base_count: int | None = None) -> int:
    """``|T_{a,b,e}|`` for a singular class; ``base_count`` is ``|T_{a,b,1}|`` (odd p)."""
    a, b = (key.a_residue, key.b_residue) if isinstance(key, TwoCycleClassKey) else key
    p, e = ctx.p, ctx.e
    if p == 2:
        if a % 4 != b % 4 or b % 4 not in (1, 3):
            raise DomainError(f"({a},{b}) is not a two-cycle class mod 4")
        return p2_two_cycle_class_count(e, n, 1 if b % 4 == 1 else -1)
    if a % p == 0 or b % p == 0 or pow(a * b, n, p) != 1:
        raise DomainError(f"({a},{b}) does not satisfy b^n == a^-n mod {p}")
    if base_count is None:
        base_count = tc_class_base_count(p, n, a, b)
    cubic = pow(b, n, p) == p - 1
    return base_count * two_cycle_multiplier(p, e, valuation(n, p), cubic)


def _tc_gcd_terms(p: int, n: int) -> tuple[int, int, int]:
    powers = [pow(z, n) for z in range(1, p)]
    t1 = t2 = t3 = 0
    for xn in powers:
        for yn in powers:
            x = xn * yn - 1
            t1 += gcd(p - 1, x)
            t2 += gcd(gcd(p - 1, n * (yn + 1)), x)
            t3 += gcd(gcd(p - 1, 2 * n), x) - gcd(gcd(p - 1, n), x)
    return t1, t2, t3


def tc_count_total(ctx: ModulusContext, n: int) -> CountBreakdown:
    p, e = ctx.p, ctx.e
    regime = regime_for(ctx, n)
    if p == 2:
        per_class = {}
        for b in _p2_classes(ctx):
            c = 1 if e == 1 else tc_singular_class_count(ctx, n, (b, b))
            if c:
                per_class[TwoCycleClassKey(b, b)] = c
        return CountBreakdown(
            "two-cycle", p, e, n, p2_two_cycle_total(e, n), 0, per_class,
            frozenset(per_class), regime,
        )
    v = valuation(n, p)
    quad = two_cycle_multiplier(p, e, v, cubic=False)
    cub = two_cycle_multiplier(p, e, v, cubic=True)
    t1, t2, t3 = _tc_gcd_terms(p, n)
    total = t1 + t2 * (quad - 1) + t3 * (cub - quad)

    per_class, singular = {}, set()
    for a in range(1, p):
        for b in range(1, p):
            base = tc_class_base_count(p, n, a, b)
            if not base:
                continue
            key = TwoCycleClassKey(a, b)
            if pow(a * b, n, p) == 1:
                per_class[key] = tc_singular_class_count(ctx, n, key, base)
                singular.add(key)
            else:
                per_class[key] = base
    return CountBreakdown(
        "two-cycle", p, e, n, total, t1 - t2, per_class, frozenset(singular), regime
    )


def tc_count_total_divisor_sum(ctx: ModulusContext, n: int) -> int:
    p = ctx.p
    _require_odd(p)
    v = valuation(n, p)
    quad = two_cycle_multiplier(p, ctx.e, v, cubic=False)
    cub = two_cycle_multiplier(p, ctx.e, v, cubic=True)
    total = 0
    for d in divisors(p - 1):
        phi, cof = euler_phi(d), ((p - 1) // d) ** 2
        roots = count_roots(n, -1, d)
        total += phi * phi * cof * roots
        total += phi * cof * _count_n_twisted(n, d) * roots * (quad - 1)
        if (2 * n) % d == 0 and n % d:
            total += phi * phi * cof * roots * (cub - quad)
    return total


def _count_n_twisted(n: int, d: int) -> int:
    """Units ``z`` mod d with ``n (z**n + 1) == 0 (mod d)``."""
    return count_roots(PolySpec((n,) + (0,) * (n - 1) + (n,)), 0, d, coprime_only=True)
