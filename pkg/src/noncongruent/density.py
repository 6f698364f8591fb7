"""Counting family members and square-free k-almost-primes up to x,
with the matching asymptotic formulas.

The asymptotics involve log log x, which moves glacially at desk scale,
so reports carry the exact count, the formula value and their ratio; the
ratio is informative, never asserted to converge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import primes_in_class
from .families import MULTIPLIER, ROLE_ORDER, ROLE_RESIDUES, FamilySpec, search

MAX_COUNT_X = 10**8


class ResourceCapError(ValueError):
    """Requested threshold exceeds the in-memory sieve cap."""


@dataclass(frozen=True)
class DensityReport:
    x: int
    exact_count: int
    asymptotic_value: float
    ratio: float


@lru_cache(maxsize=2)
def _omega_squarefree(x: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct-prime-factor counts and square-freeness flags for 0..x."""
    flags = np.ones(x + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(x) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    omega = np.zeros(x + 1, dtype=np.uint8)
    squarefree = np.ones(x + 1, dtype=bool)
    squarefree[0] = False
    for p in np.flatnonzero(flags).tolist():
        omega[p::p] += 1
        sq = p * p
        if sq <= x:
            squarefree[sq::sq] = False
    return omega, squarefree


def count_squarefree_k_primes(x: int, k: int) -> int:
    """Exact count of n <= x that are products of k distinct primes."""
    if x < 2:
        raise ValueError(f"x must be at least 2, got {x}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if x > MAX_COUNT_X:
        raise ResourceCapError(f"x = {x} exceeds the sieve cap {MAX_COUNT_X}")
    omega, squarefree = _omega_squarefree(x)
    return int(np.count_nonzero(squarefree & (omega == k)))


def landau_asymptotic(x: float, k: int) -> float:
    """x (log log x)^(k-1) / ((k-1)! log x), the leading term for the
    count of integers up to x with exactly k prime factors."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if x <= math.e:
        raise ValueError(f"x must exceed e for log log x > 0, got {x}")
    loglog = math.log(math.log(x))
    return x * loglog ** (k - 1) / (math.factorial(k - 1) * math.log(x))


def family_asymptotic(x: float, t: int) -> float:
    """Leading term for the count of (1,5,7)-family members up to x:
    2^(-(9t^2+7t)/2) * x (log log x)^(3t-1) / ((3t-1)! log x).

    Only this family's constant is published; the analogous constants for
    the other families are not, so they are not invented here.
    """
    if t < 1:
        raise ValueError(f"t must be at least 1, got {t}")
    if x <= math.e:
        raise ValueError(f"x must exceed e for log log x > 0, got {x}")
    exponent = (9 * t * t + 7 * t) // 2
    return landau_asymptotic(x, 3 * t) / 2.0**exponent


def _search_bound(spec: FamilySpec, x: int) -> int:
    """Largest prime any member <= x can contain: x over the minimal
    product of the other slots' primes (class minima, distinctness-aware)."""
    slots_by_class: dict[int, int] = {}
    residues = ROLE_RESIDUES[spec.theorem]
    for role in ROLE_ORDER[spec.theorem]:
        arity = 1 if spec.theorem == "377" and role in ("p", "q") else spec.t
        slots_by_class[residues[role]] = slots_by_class.get(residues[role], 0) + arity
    smallest = {
        res: primes_in_class(10**4, res)[: count]
        for res, count in slots_by_class.items()
    }
    mult = MULTIPLIER[spec.theorem]
    best = 0
    for res_of_slot in slots_by_class:
        cofactor = mult
        for res, count in slots_by_class.items():
            take = count - 1 if res == res_of_slot else count
            for p in smallest[res][:take]:
                cofactor *= p
        best = max(best, x // cofactor)
    return best


def family_members(x: int, spec: FamilySpec) -> list[int]:
    """All distinct family members n <= x, ascending.

    Enumerates through the condition-pruned tuple search rather than
    factoring every integer up to x; distinct tuples can assemble the same
    n when two roles share a residue class, hence the set."""
    if x > MAX_COUNT_X:
        raise ResourceCapError(f"x = {x} exceeds the cap {MAX_COUNT_X}")
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    bound = _search_bound(spec, x)
    if bound < 3:
        return []
    mult = MULTIPLIER[spec.theorem]
    members = {
        mult * math.prod(tup.all_primes())
        for tup in search(spec, bound, max_n=x)
    }
    return sorted(members)


def count_family(x: int, spec: FamilySpec) -> int:
    """Exact count of family members <= x."""
    return len(family_members(x, spec))
