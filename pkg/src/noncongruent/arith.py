"""Integer arithmetic substrate: quadratic residue symbols, primality,
square-free factorization, and residue-class prime sieves.

Everything here is a pure function on plain integers; results are exact
and deterministic (no probabilistic primality answers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DivisibilityError(ValueError):
    """Legendre symbol requested for a pair with p | a."""


class NotSquareFreeError(ValueError):
    """Input has a repeated prime factor."""

    def __init__(self, n: int, prime: int):
        super().__init__(f"{n} is divisible by {prime}^2 and is not square-free")
        self.n = n
        self.prime = prime


_MAX_64 = 1 << 64


def jacobi(a: int, m_odd: int) -> int:
    """Jacobi symbol (a/m_odd) for odd positive m_odd.

    Equals the Legendre symbol when m_odd is an odd prime.  Returns 0
    exactly when gcd(a, m_odd) > 1.
    """
    if m_odd <= 0 or m_odd % 2 == 0:
        raise ValueError(f"modulus must be odd and positive, got {m_odd}")
    a %= m_odd
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m_odd % 8 in (3, 5):
                result = -result
        a, m_odd = m_odd, a
        if a % 4 == 3 and m_odd % 4 == 3:
            result = -result
        a %= m_odd
    return result if m_odd == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p): +1 if a is a nonzero square mod the odd prime p,
    -1 otherwise.

    Computed through the Jacobi fast path (binary reciprocity), not Euler's
    criterion; this is on the hot path of family search.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    if a % p == 0:
        raise DivisibilityError(f"{p} divides {a}; Legendre symbol is 0")
    return jacobi(a, p)


def phi_bit(s: int) -> int:
    """Map a symbol value to its exponent bit: +1 -> 0, -1 -> 1."""
    if s == 1:
        return 0
    if s == -1:
        return 1
    raise ValueError(f"expected +1 or -1, got {s}")


# Witness set is deterministic for all n < 3.3e24, which covers 64 bits.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality for the full 64-bit range (Miller-Rabin
    with a fixed witness set)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class SquareFreeFactorization:
    """A square-free positive integer split as 2^delta times distinct odd primes."""

    n: int
    delta: int
    odd_primes: tuple[int, ...]

    def __post_init__(self):
        if self.delta not in (0, 1):
            raise ValueError(f"delta must be 0 or 1, got {self.delta}")
        prod = 2**self.delta
        prev = 2
        for p in self.odd_primes:
            if p <= prev:
                raise ValueError("odd primes must be ascending and distinct")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p
            prod *= p
        if prod != self.n:
            raise ValueError(f"factors reconstruct {prod}, not {self.n}")

    @property
    def m(self) -> int:
        return len(self.odd_primes)


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent cycle, deterministic
    parameter sweep so repeated runs agree)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed to split {n}")


def _factor(n: int) -> list[int]:
    """All prime factors of n >= 2, with multiplicity, unsorted."""
    if is_prime(n):
        return [n]
    d = _pollard_rho(n)
    return _factor(d) + _factor(n // d)


_TRIAL_LIMIT = 10**6


def factor_squarefree(n: int) -> SquareFreeFactorization:
    """Factor a square-free positive integer; raises NotSquareFreeError
    (naming the offending prime) otherwise.

    Trial division handles factors up to 1e6; Pollard rho splits any
    remaining cofactor.  n = 1 is accepted (delta=0, no odd primes), which
    feeds the empty-matrix convention downstream.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n >= _MAX_64:
        raise ValueError(f"{n} does not fit in 64 bits")
    original = n
    delta = 0
    if n % 2 == 0:
        delta = 1
        n //= 2
        if n % 2 == 0:
            raise NotSquareFreeError(original, 2)
    primes: list[int] = []
    d = 3
    while d * d <= n and d <= _TRIAL_LIMIT:
        if n % d == 0:
            n //= d
            if n % d == 0:
                raise NotSquareFreeError(original, d)
            primes.append(d)
            if is_prime(n):
                primes.append(n)
                n = 1
                break
        d += 2
    if n > 1:
        rest = sorted(_factor(n))
        for a, b in zip(rest, rest[1:]):
            if a == b:
                raise NotSquareFreeError(original, a)
        primes.extend(rest)
        n = 1
    return SquareFreeFactorization(original, delta, tuple(sorted(primes)))


def sieve_primes(bound: int) -> list[int]:
    """All primes <= bound, ascending."""
    if bound < 2:
        return []
    flags = np.ones(bound + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).tolist()


def primes_in_class(bound: int, residue: int) -> list[int]:
    """All primes p <= bound with p congruent to residue mod 8, ascending.

    Empty bounds (below the first such prime) yield an empty list.
    """
    if residue not in (1, 3, 5, 7):
        raise ValueError(f"residue must be one of 1, 3, 5, 7, got {residue}")
    return [p for p in sieve_primes(bound) if p % 8 == residue]
