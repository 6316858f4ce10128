from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfpower.arith import (
    DomainError,
    ModulusContext,
    PolySpec,
    carmichael,
    count_pair_roots,
    count_roots,
    crt_combine,
    divisors,
    euler_phi,
    factorize,
    gcd_many,
    is_prime,
    mult_order,
    powmod,
    self_power,
)

Z = PolySpec.power(1)
Z2 = PolySpec.power(2)
Z3 = PolySpec.power(3)
Z2_Z_1 = PolySpec((1, 1, 1))


@pytest.mark.parametrize("values,expected", [([2, 0], 2), ([4, 2], 2), ([2, 3, 3], 1)])
def test_gcd_many(values, expected):
    assert gcd_many(values) == expected


def test_gcd_many_rejects_empty():
    with pytest.raises(ValueError):
        gcd_many([])


@pytest.mark.parametrize("m,expected", [(12, [1, 2, 3, 4, 6, 12]), (1, [1]), (9, [1, 3, 9])])
def test_divisors(m, expected):
    assert divisors(m) == expected


@pytest.mark.parametrize("m,expected", [(9, 6), (1, 1), (12, 4)])
def test_euler_phi(m, expected):
    assert euler_phi(m) == expected


def test_euler_phi_matches_definition():
    for m in range(1, 200):
        assert euler_phi(m) == sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def test_factorize_refuses_beyond_limit():
    with pytest.raises(DomainError):
        factorize(10**13)
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))


def test_powmod_examples():
    assert powmod(2, 25, 25) == 7
    assert powmod(7, 7, 16) == 7
    assert powmod(12345, 0, 97) == 1
    assert powmod(5, 0, 1) == 0


def test_modulus_context_fields():
    ctx = ModulusContext(3, 4)
    assert (ctx.modulus, ctx.q, ctx.phi, ctx.carmichael) == (81, 3, 54, 54)
    assert [ModulusContext(2, e).carmichael for e in (1, 2, 3, 6)] == [1, 2, 2, 16]
    assert ModulusContext(2, 5).q == 4
    with pytest.raises(DomainError):
        ModulusContext(9, 1)
    with pytest.raises(DomainError):
        ModulusContext(3, 0)


def test_carmichael_is_the_group_exponent():
    for m in range(2, 300):
        units = [x for x in range(1, m) if gcd(x, m) == 1]
        lam = carmichael(m)
        assert all(pow(x, lam, m) == 1 for x in units)
        assert max(mult_order(x, m) for x in units) == lam


def test_self_power_examples():
    assert self_power(4, 1, ModulusContext(3, 2)) == 4
    assert self_power(7, 1, ModulusContext(5, 2)) == 18
    for ctx in (ModulusContext(3, 3), ModulusContext(2, 5)):
        assert self_power(1, 4, ctx) == 1


def test_self_power_rejects_non_units():
    with pytest.raises(DomainError):
        self_power(6, 1, ModulusContext(3, 2))


def test_self_power_accepts_polynomials():
    ctx = ModulusContext(7, 2)
    for x in range(1, 300):
        if x % 7:
            assert self_power(x, Z2_Z_1, ctx) == pow(x, x * x + x + 1, 49)


@pytest.mark.parametrize("x,m,expected", [(2, 9, 6), (1, 9, 1), (1, 2, 1), (4, 9, 3)])
def test_mult_order(x, m, expected):
    assert mult_order(x, m) == expected


def test_mult_order_rejects_non_units():
    with pytest.raises(DomainError):
        mult_order(3, 9)


@pytest.mark.parametrize(
    "args,expected", [((3, 4, 2, 9), 11), ((0, 4, 0, 9), 0), ((1, 2, 2, 3), 5)]
)
def test_crt_combine(args, expected):
    assert crt_combine(*args) == expected


def test_crt_combine_is_a_bijection():
    images = {crt_combine(r1, 4, r2, 9) for r1 in range(4) for r2 in range(9)}
    assert images == set(range(36))


def test_crt_combine_rejects_common_factor():
    with pytest.raises(DomainError):
        crt_combine(1, 4, 1, 6)


def test_count_roots_examples():
    assert count_roots(Z2, -1, 8) == 4
    assert count_roots(Z3, -1, 7) == 3
    for d in range(1, 20):
        assert count_roots(Z, -1, d) == 1
    assert count_roots(Z2, -1, 1) == 1


def test_count_roots_coprime_flag():
    # 2(z^2 + 1) == 0 mod 10 at z = 3, 7 (units) and z = 2, 8 (not units)
    g = PolySpec((2, 0, 2))
    assert count_roots(g, 0, 10) == 4
    assert count_roots(g, 0, 10, coprime_only=True) == 2


@pytest.mark.parametrize("d,expected", [(2, 1), (1, 1), (3, 2)])
def test_count_pair_roots_linear(d, expected):
    assert count_pair_roots(Z, d) == expected


def test_count_pair_roots_matches_pair_scan():
    for g in (Z, Z2, Z3, Z2_Z_1):
        for d in range(1, 25):
            brute = sum(1 for a in range(d) for b in range(d) if (g(a) * g(b) - 1) % d == 0)
            assert count_pair_roots(g, d) == brute


def test_polyspec():
    assert Z3.pure_power == 3
    assert Z2_Z_1.pure_power is None
    assert PolySpec((1,)).pure_power is None
    assert PolySpec((0, 0, 1, 0, 0)) == Z2
    assert Z2_Z_1(3) == 13
    assert str(Z2_Z_1) == "z^2 + z + 1"


primes_small = st.sampled_from([p for p in range(2, 60) if is_prime(p)])


@settings(max_examples=300)
@given(primes_small, st.integers(1, 6), st.integers(1, 10**6), st.integers(0, 10**9))
def test_powmod_exponent_reduces_mod_carmichael(p, e, x, a):
    m = p**e
    if m > 10**6 or x % p == 0:
        return
    lam = ModulusContext(p, e).carmichael
    assert powmod(x, a, m) == powmod(x, a % lam, m)


@settings(max_examples=300)
@given(primes_small, st.integers(1, 5), st.integers(1, 10**6))
def test_mult_order_divides_carmichael(p, e, x):
    m = p**e
    if x % p == 0:
        return
    k = mult_order(x, m)
    assert carmichael(m) % k == 0
    assert pow(x, k, m) == 1


@pytest.mark.parametrize("g", [Z, Z2, Z3, Z2_Z_1], ids=str)
def test_gcd_sum_equals_divisor_sum(g):
    for p in range(3, 51):
        if not is_prime(p):
            continue
        lhs = sum(gcd(p - 1, g(x0) - 1) for x0 in range(1, p))
        rhs = sum(euler_phi(d) * ((p - 1) // d) * count_roots(g, -1, d) for d in divisors(p - 1))
        assert lhs == rhs, p
