"""Arithmetic substrate tests with brute-force residue oracles."""

import random

import pytest

from noncongruent.arith import (
    DivisibilityError,
    NotSquareFreeError,
    SquareFreeFactorization,
    factor_squarefree,
    is_prime,
    jacobi,
    legendre,
    phi_bit,
    primes_in_class,
    sieve_primes,
)


def brute_symbol(a, p):
    """Independent oracle: exhaustive quadratic residue search mod p."""
    a %= p
    if a == 0:
        return 0
    squares = {x * x % p for x in range(1, p)}
    return 1 if a in squares else -1


def brute_primes(bound):
    return [n for n in range(2, bound + 1) if all(n % d for d in range(2, n))]


# -- jacobi --------------------------------------------------------------


def test_jacobi_squares_mod_7():
    # squares mod 7 are {1, 2, 4}
    assert jacobi(2, 7) == 1
    assert brute_symbol(2, 7) == 1


def test_jacobi_one_numerator():
    for m in (1, 3, 9, 15, 10001):
        assert jacobi(1, m) == 1


def test_jacobi_89_13():
    assert brute_symbol(89, 13) == -1
    assert jacobi(89, 13) == -1


def test_jacobi_rejects_even_or_nonpositive_modulus():
    with pytest.raises(ValueError):
        jacobi(3, 10)
    with pytest.raises(ValueError):
        jacobi(3, -7)
    with pytest.raises(ValueError):
        jacobi(3, 0)


def test_jacobi_shared_factor_is_zero():
    assert jacobi(15, 9) == 0
    assert jacobi(0, 9) == 0


def test_jacobi_multiplicative_in_numerator():
    rng = random.Random(20240811)
    for _ in range(500):
        m = rng.randrange(1, 10**4) * 2 + 1
        a = rng.randrange(-200, 200)
        b = rng.randrange(-200, 200)
        assert jacobi(a * b, m) == jacobi(a, m) * jacobi(b, m)


def test_jacobi_matches_legendre_on_primes():
    for p in brute_primes(200):
        if p == 2:
            continue
        for a in range(1, p):
            assert jacobi(a, p) == brute_symbol(a, p)


# -- legendre ------------------------------------------------------------


def test_legendre_minus_one_mod_3():
    assert legendre(-1, 3) == -1


def test_legendre_two_is_nonresidue_mod_pm3_mod_8():
    assert legendre(2, 3) == -1
    for p in sieve_primes(500):
        if p % 8 in (3, 5):
            assert legendre(2, p) == -1


def test_legendre_perfect_square():
    assert legendre(4, 7) == 1


def test_legendre_rejects_bad_modulus():
    with pytest.raises(ValueError):
        legendre(2, 9)
    with pytest.raises(ValueError):
        legendre(2, 2)


def test_legendre_divisible_pair():
    with pytest.raises(DivisibilityError):
        legendre(26, 13)


def test_legendre_against_exhaustive_residues():
    odd_primes = [p for p in brute_primes(500) if p > 2]
    residues = {p: {x * x % p for x in range(1, p)} for p in odd_primes}
    for p in odd_primes:
        for q in odd_primes:
            if p == q:
                continue
            expected = 1 if p % q in residues[q] else -1
            assert legendre(p, q) == expected


def test_legendre_antisymmetry_for_3_mod_4_pairs():
    odd_primes = [p for p in brute_primes(500) if p > 2]
    for i, p in enumerate(odd_primes):
        for q in odd_primes[i + 1 :]:
            if p % 4 == 3 and q % 4 == 3:
                assert legendre(p, q) == -legendre(q, p)
            else:
                assert legendre(p, q) == legendre(q, p)


# -- phi_bit ---------------------------------------------------------------


def test_phi_bit_values():
    assert phi_bit(1) == 0
    assert phi_bit(-1) == 1
    assert phi_bit(legendre(2, 3)) == 1


def test_phi_bit_rejects_zero():
    with pytest.raises(ValueError):
        phi_bit(0)


# -- is_prime ---------------------------------------------------------------


def test_is_prime_examples():
    assert is_prime(1051)
    assert not is_prime(1)
    assert not is_prime(15)


def test_is_prime_matches_sieve():
    flags = set(sieve_primes(10**4))
    for n in range(1, 10**4 + 1):
        assert is_prime(n) == (n in flags)


def test_is_prime_large_values():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**62 - 1)
    assert not is_prime((2**31 - 1) * (2**31 + 11))


# -- factor_squarefree -------------------------------------------------------


def test_factor_table_member():
    fact = factor_squarefree(26611)
    assert (fact.delta, fact.odd_primes) == (0, (13, 23, 89))
    assert fact.m == 3


def test_factor_two():
    fact = factor_squarefree(2)
    assert (fact.delta, fact.odd_primes, fact.m) == (1, (), 0)


def test_factor_one():
    fact = factor_squarefree(1)
    assert (fact.delta, fact.odd_primes) == (0, ())


def test_factor_rejects_square():
    with pytest.raises(NotSquareFreeError) as exc:
        factor_squarefree(12)
    assert exc.value.prime == 2
    with pytest.raises(NotSquareFreeError) as exc:
        factor_squarefree(45)
    assert exc.value.prime == 3


def test_factor_large_prime_factors():
    n = 89 * 1051 * 2**1  # mixed small/large odd primes with the even part
    fact = factor_squarefree(n)
    assert fact.delta == 1
    assert fact.odd_primes == (89, 1051)
    n = 1000003 * 1000033  # both above the trial-division limit
    fact = factor_squarefree(n)
    assert fact.odd_primes == (1000003, 1000033)
    with pytest.raises(NotSquareFreeError):
        factor_squarefree(1000003 * 1000003)


def test_factor_roundtrip_sweep():
    for n in range(1, 10**5 + 1):
        try:
            fact = factor_squarefree(n)
        except NotSquareFreeError:
            continue
        product = 2**fact.delta
        for p in fact.odd_primes:
            product *= p
        assert product == n
        assert list(fact.odd_primes) == sorted(set(fact.odd_primes))


def test_factorization_type_validates():
    with pytest.raises(ValueError):
        SquareFreeFactorization(15, 0, (5, 3))  # not ascending
    with pytest.raises(ValueError):
        SquareFreeFactorization(15, 0, (3,))  # product mismatch


# -- primes_in_class -----------------------------------------------------------


def test_primes_in_class_examples():
    assert primes_in_class(25, 1) == [17]
    assert primes_in_class(25, 5) == [5, 13]
    for r in (1, 3, 5, 7):
        assert primes_in_class(2, r) == []


def test_primes_in_class_rejects_even_residue():
    with pytest.raises(ValueError):
        primes_in_class(100, 2)
    with pytest.raises(ValueError):
        primes_in_class(100, 9)


def test_primes_in_class_against_brute_force():
    reference = brute_primes(1000)
    for r in (1, 3, 5, 7):
        assert primes_in_class(1000, r) == [p for p in reference if p % 8 == r]
