"""Truncated p-adic arithmetic modulo p^e.

Units split canonically as ``x = teich(x) * one_unit(x)`` where ``teich(x)``
is a ``phi(q)``-th root of unity and ``one_unit(x)`` lies in ``1 + q Z_p``.
On the one-units the exponential and logarithm series converge, which is
what makes ``x -> x**g(x)`` interpolable on each residue class mod ``phi(q)``.

The series are summed with integer arithmetic at a slightly higher precision
``p^(e + guard)`` so that denominators divisible by ``p`` can be divided out
exactly; the result is then reduced back to ``p^e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf
from typing import Callable, Iterator, NamedTuple

from .arith import DomainError, ModulusContext, as_poly

INFINITY = inf


class SingularRootError(DomainError):
    """Newton lifting was asked to lift a root where the derivative vanishes mod p."""


def valuation(z: int, p: int):
    """Largest ``k`` with ``p**k | z``; ``INFINITY`` for ``z == 0``."""
    if z == 0:
        return INFINITY
    k = 0
    while z % p == 0:
        z //= p
        k += 1
    return k


def _require_unit(x: int, ctx: ModulusContext):
    if x % ctx.p == 0:
        raise DomainError(f"{x} is not a unit modulo {ctx.p}")


def _one_unit_level(ctx: ModulusContext) -> int:
    # modulo 2 there is no room to see the q = 4 condition
    return min(ctx.q, ctx.modulus)


def teichmuller(x: int, ctx: ModulusContext) -> int:
    """The root of unity ``omega(x)`` mod p^e with ``omega(x) == x (mod q)``."""
    _require_unit(x, ctx)
    m = ctx.modulus
    if ctx.p == 2:
        return 1 % m if x % 4 == 1 else (-1) % m
    y = x % m
    for _ in range(ctx.e):
        z = pow(y, ctx.p, m)
        if z == y:
            return y
        y = z
    # y -> y^p contracts by one p-adic digit per step, so e steps suffice
    raise AssertionError("Teichmuller iteration did not stabilise")


def one_unit_part(x: int, ctx: ModulusContext) -> int:
    _require_unit(x, ctx)
    m = ctx.modulus
    return x * pow(teichmuller(x, ctx), -1, m) % m


@dataclass(frozen=True)
class PadicUnit:
    """A unit mod p^e together with its Teichmuller decomposition."""

    ctx: ModulusContext
    value: int
    teich: int
    one_unit: int

    @classmethod
    def of(cls, x: int, ctx: ModulusContext) -> "PadicUnit":
        w = teichmuller(x, ctx)
        u = x * pow(w, -1, ctx.modulus) % ctx.modulus
        return cls(ctx, x % ctx.modulus, w, u)


class SeriesTerm(NamedTuple):
    """One series term ``numerator / (unit * p**shift)``.

    ``numerator`` is held modulo ``p^(e + guard)`` and is divisible by
    ``p**shift``; ``unit`` is the p-free part of the denominator.
    """

    numerator: int
    shift: int
    unit: int


def _split(k: int, p: int) -> tuple[int, int]:
    s = 0
    while k % p == 0:
        k //= p
        s += 1
    return k, s


def _sum_terms(terms: Iterator[SeriesTerm], ctx: ModulusContext, guard: int) -> int:
    m = ctx.modulus
    big = ctx.p ** (ctx.e + guard)
    total = 0
    for t in terms:
        if t.shift > guard:
            raise AssertionError("guard precision too small for series term")
        num = t.numerator % big
        q, r = divmod(num, ctx.p**t.shift)
        assert r == 0, "series numerator not divisible by its p-power denominator"
        total += q * pow(t.unit, -1, m)
    return total % m


def _log_terms(t: int, v: int, ctx: ModulusContext) -> tuple[list[SeriesTerm], int]:
    p, e = ctx.p, ctx.e
    # term k has valuation >= k*v - floor(log_p k), increasing in k
    kmax = 1
    while kmax * v - _floor_log(kmax, p) < e:
        kmax += 1
    guard = _floor_log(kmax, p) + 2
    big = p ** (e + guard)
    terms = []
    power = 1
    for k in range(1, kmax):
        power = power * t % big
        unit, shift = _split(k, p)
        sign = 1 if k % 2 else -1
        terms.append(SeriesTerm(sign * power, shift, unit))
    return terms, guard


def _floor_log(k: int, p: int) -> int:
    r = 0
    while k >= p:
        k //= p
        r += 1
    return r


def plog(u: int, ctx: ModulusContext) -> int:
    """p-adic logarithm of a one-unit, truncated mod p^e."""
    m = ctx.modulus
    if (u - 1) % _one_unit_level(ctx):
        raise DomainError(f"{u} is not congruent to 1 mod {ctx.q}")
    t = (u - 1) % m
    v = valuation(t, ctx.p)
    if v >= ctx.e:
        return 0
    terms, guard = _log_terms(t, v, ctx)
    return _sum_terms(iter(terms), ctx, guard)


def _factorial_valuation(k: int, p: int) -> int:
    s, pk = 0, p
    while pk <= k:
        s += k // pk
        pk *= p
    return s


def pexp(z: int, ctx: ModulusContext) -> int:
    """p-adic exponential of ``z`` in ``q Z_p``, truncated mod p^e."""
    p, e, m = ctx.p, ctx.e, ctx.modulus
    need = 2 if p == 2 else 1
    z %= m
    v = valuation(z, p)
    if v >= e:
        return 1 % m
    if v < need:
        raise DomainError(f"exp needs valuation >= {need}, got v_{p}({z}) = {v}")
    # term k has valuation >= k*v - (k-1)/(p-1), increasing in k
    kmax = 1
    while kmax * v * (p - 1) - (kmax - 1) < e * (p - 1):
        kmax += 1
    guard = _factorial_valuation(kmax, p) + 2
    big = p ** (e + guard)
    terms = [SeriesTerm(1, 0, 1)]
    power, fact_unit, fact_shift = 1, 1, 0
    for k in range(1, kmax):
        power = power * z % big
        unit, shift = _split(k, p)
        fact_unit = fact_unit * unit % m
        fact_shift += shift
        terms.append(SeriesTerm(power, fact_shift, fact_unit))
    return _sum_terms(iter(terms), ctx, guard)


def interpolated_selfpower(x: int, x0: int, g, ctx: ModulusContext) -> int:
    """``omega(x)**g(x0) * exp(g(x) * log <x>)`` mod p^e.

    Agrees with ``x**g(x)`` whenever ``x == x0 (mod phi(q))``.
    """
    _require_unit(x, ctx)
    g = as_poly(g)
    m = ctx.modulus
    w = teichmuller(x, ctx)
    root_part = pow(w, g(x0) % ctx.phi_q, m)
    arg = g(x) * plog(one_unit_part(x, ctx), ctx) % m
    need = 2 if ctx.p == 2 else 1
    if arg and valuation(arg, ctx.p) < need:
        raise AssertionError("exp argument left the convergence disc")
    return root_part * pexp(arg, ctx) % m


def hensel_lift(
    f: Callable[[int], int],
    df: Callable[[int], int],
    a: int,
    ctx: ModulusContext,
) -> int:
    """Lift a simple root ``a`` of ``f`` mod p to the unique root mod p^e.

    ``f`` and ``df`` must map integers to integers (any polynomial or
    restricted power series already truncated to integers will do).
    """
    p = ctx.p
    if f(a) % p:
        raise DomainError(f"{a} is not a root of f modulo {p}")
    if df(a) % p == 0:
        raise SingularRootError(f"f'({a}) == 0 mod {p}; root is singular")
    x, prec = a % p, 1
    while prec < ctx.e:
        prec = min(2 * prec, ctx.e)
        mod = p**prec
        x = (x - f(x) * pow(df(x), -1, mod)) % mod
    return x % ctx.modulus


__all__ = [
    "INFINITY",
    "PadicUnit",
    "SeriesTerm",
    "SingularRootError",
    "hensel_lift",
    "interpolated_selfpower",
    "one_unit_part",
    "pexp",
    "plog",
    "teichmuller",
    "valuation",
]
