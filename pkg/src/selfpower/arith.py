"""Exact modular arithmetic on unbounded non-negative integers.

Everything here is a pure function of its arguments.  Factorization is by
trial division only, which is plenty for prime powers up to ~10^8.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd

# Largest integer we agree to factor by trial division (sqrt is 10^6 steps).
TRIAL_DIVISION_LIMIT = 10**12


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0 or m % 3 == 0:
        return False
    i = 5
    while i * i <= m:
        if m % i == 0 or m % (i + 2) == 0:
            return False
        i += 6
    return True


@lru_cache(maxsize=4096)
def factorize(m: int, limit: int = TRIAL_DIVISION_LIMIT) -> tuple[tuple[int, int], ...]:
    """Return ``((prime, exponent), ...)`` for ``m >= 1`` in ascending order."""
    if m < 1:
        raise DomainError(f"cannot factor {m}")
    if m > limit:
        raise DomainError(f"{m} exceeds the trial-division limit {limit}")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            k = 0
            while m % d == 0:
                m //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def gcd_many(values) -> int:
    values = list(values)
    if not values:
        raise ValueError("gcd_many needs at least one value")
    return reduce(gcd, values, 0)


def divisors(m: int) -> list[int]:
    divs = [1]
    for prime, k in factorize(m):
        divs = [d * prime**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def euler_phi(m: int) -> int:
    result = m
    for prime, _ in factorize(m):
        result -= result // prime
    return result


def _prime_power_carmichael(prime: int, k: int) -> int:
    if prime == 2:
        return 1 if k == 1 else 2 if k == 2 else 2 ** (k - 2)
    return prime ** (k - 1) * (prime - 1)


def carmichael(m: int) -> int:
    """Exponent of the unit group of Z/mZ."""
    lam = 1
    for prime, k in factorize(m):
        part = _prime_power_carmichael(prime, k)
        lam = lam * part // gcd(lam, part)
    return lam


@dataclass(frozen=True)
class ModulusContext:
    """The prime power setting ``p^e`` shared by every counting operation."""

    p: int
    e: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p={self.p} is not prime")
        if self.e < 1:
            raise DomainError(f"e={self.e} must be at least 1")

    @property
    def modulus(self) -> int:
        return self.p**self.e

    @property
    def q(self) -> int:
        return 4 if self.p == 2 else self.p

    @property
    def phi(self) -> int:
        return self.p ** (self.e - 1) * (self.p - 1)

    @property
    def carmichael(self) -> int:
        return _prime_power_carmichael(self.p, self.e)

    @property
    def phi_q(self) -> int:
        """Order of the root-of-unity part, ``phi(q)``."""
        return 2 if self.p == 2 else self.p - 1

    def with_e(self, e: int) -> "ModulusContext":
        return ModulusContext(self.p, e)


@dataclass(frozen=True)
class PolySpec:
    """Integer polynomial ``g(z) = sum(c_i * z**i)``, coefficients low degree first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs or (0,))

    @classmethod
    def power(cls, n: int) -> "PolySpec":
        if n < 1:
            raise DomainError(f"exponent n={n} must be at least 1")
        return cls((0,) * n + (1,))

    @property
    def pure_power(self) -> int | None:
        """``n`` when this polynomial is exactly ``z**n`` with ``n >= 1``."""
        *low, top = self.coefficients
        if len(low) >= 1 and top == 1 and not any(low):
            return len(low)
        return None

    def __call__(self, z: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if i == 0 else "z" if i == 1 else f"z^{i}"
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"


def as_poly(g) -> PolySpec:
    """Accept either a ``PolySpec`` or a positive integer exponent ``n``."""
    if isinstance(g, PolySpec):
        return g
    return PolySpec.power(int(g))


def powmod(base: int, exponent: int, m: int) -> int:
    if m < 1:
        raise DomainError(f"modulus {m} must be positive")
    if exponent < 0:
        raise DomainError("negative exponents are not supported")
    # pow() is square-and-multiply on arbitrary-precision ints
    return pow(base, exponent, m)


def self_power(x: int, n, ctx: ModulusContext) -> int:
    """``x**(x**n) mod p^e`` for a unit ``x``; ``n`` may also be a PolySpec."""
    if x % ctx.p == 0:
        raise DomainError(f"{x} is not a unit modulo {ctx.p}")
    lam = ctx.carmichael
    if isinstance(n, PolySpec):
        exponent = n(x) % lam
    else:
        exponent = pow(x, n, lam) if lam > 1 else 0
    return pow(x, exponent, ctx.modulus)


def mult_order(x: int, m: int) -> int:
    """Multiplicative order of ``x`` modulo ``m``, refined from ``carmichael(m)``."""
    if m == 1:
        return 1
    if gcd(x, m) != 1:
        raise DomainError(f"{x} is not a unit modulo {m}")
    order = carmichael(m)
    for prime, _ in factorize(order):
        while order % prime == 0 and pow(x, order // prime, m) == 1:
            order //= prime
    return order


def crt_combine(r1: int, m1: int, r2: int, m2: int) -> int:
    if gcd(m1, m2) != 1:
        raise DomainError(f"moduli {m1} and {m2} are not coprime")
    m = m1 * m2
    if m == 1:
        return 0
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2 if m2 > 1 else 0
    return (r1 + m1 * t) % m


def count_roots(g, shift: int, d: int, coprime_only: bool = False) -> int:
    """Number of ``z`` in Z/dZ with ``g(z) + shift == 0 (mod d)``."""
    g = as_poly(g)
    if d < 1:
        raise DomainError(f"d={d} must be positive")
    return sum(
        1
        for z in range(d)
        if (g(z) + shift) % d == 0 and (not coprime_only or gcd(z, d) == 1)
    )


def count_pair_roots(g, d: int) -> int:
    """Number of pairs ``(z1, z2)`` in (Z/dZ)^2 with ``g(z1) g(z2) == 1 (mod d)``."""
    g = as_poly(g)
    if d == 1:
        return 1
    values = Counter(g(z) % d for z in range(d))
    total = 0
    for u, mult in values.items():
        if gcd(u, d) == 1:
            total += mult * values.get(pow(u, -1, d), 0)
    return total


def n_th_roots_of_unity(n: int, p: int) -> list[int]:
    """Residues ``a`` in 1..p-1 with ``a**n == 1 (mod p)``."""
    return [a for a in range(1, p) if pow(a, n, p) == 1]


__all__ = [
    "DomainError",
    "ModulusContext",
    "PolySpec",
    "TRIAL_DIVISION_LIMIT",
    "as_poly",
    "carmichael",
    "count_pair_roots",
    "count_roots",
    "crt_combine",
    "divisors",
    "euler_phi",
    "factorize",
    "gcd_many",
    "is_prime",
    "mult_order",
    "n_th_roots_of_unity",
    "powmod",
    "self_power",
]
