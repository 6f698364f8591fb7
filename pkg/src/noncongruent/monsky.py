"""Monsky matrix assembly and 2-Selmer rank certificates.

For square-free n = 2^delta * p_1 ... p_m, the Monsky matrix is the
2m x 2m GF(2) block matrix

    M_o = [[D2, E + D2], [E + D_-2, D2]]          (n odd)
    M_e = [[D2, E + D2], [E' + D2, D_-1]]         (n even, E' = transpose)

built from Legendre symbols among the odd prime factors, and the 2-Selmer
rank of the congruent-number curve y^2 = x^3 - n^2 x is
s(n) = 2m - rank(M).  Since the Mordell-Weil rank r(n) satisfies
0 <= r(n) <= s(n), s(n) = 0 certifies n as non-congruent.  s(n) > 0 is
inconclusive: a certificate never claims congruence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import SquareFreeFactorization, factor_squarefree, is_prime, legendre, phi_bit
from .gf2 import F2Matrix, block_compose

KIND_ODD = "M_o"
KIND_EVEN = "M_e"


def _check_primes(primes: Sequence[int]) -> None:
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    for p in primes:
        if p == 2 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")


def build_D(l: int, primes: Sequence[int]) -> F2Matrix:
    """Diagonal matrix with d(i, i) = 0 if (l/p_i) = +1, 1 if -1.

    Only l in {-1, 2, -2} occurs in a Monsky matrix.
    """
    if l not in (-1, 2, -2):
        raise ValueError(f"l must be -1, 2 or -2, got {l}")
    _check_primes(primes)
    bits = [phi_bit(legendre(l, p)) << i for i, p in enumerate(primes)]
    return F2Matrix(len(primes), len(primes), bits)


def build_E(primes: Sequence[int]) -> F2Matrix:
    """Symbol matrix: E(i, j) = phi((p_j / p_i)) for j != i (column prime
    over row prime), and each diagonal entry is its row sum mod 2."""
    _check_primes(primes)
    m = len(primes)
    bits = []
    for i in range(m):
        word = 0
        for j in range(m):
            if j != i and phi_bit(legendre(primes[j], primes[i])):
                word |= 1 << j
        if word.bit_count() % 2:
            word |= 1 << i
        bits.append(word)
    return F2Matrix(m, m, bits)


@dataclass(frozen=True)
class MonskyMatrix:
    """Assembled Monsky matrix with its constituent blocks kept for audit.

    d_other is D_-2 for the odd kind and D_-1 for the even kind.
    """

    kind: str
    m: int
    matrix: F2Matrix
    d2: F2Matrix
    d_other: F2Matrix
    e: F2Matrix


def monsky_matrix(primes: Sequence[int], even: bool) -> MonskyMatrix:
    """Assemble the Monsky matrix over an explicit prime ordering.

    The rank is invariant under reordering, so certification always uses
    the ascending order from the factorization; family proofs reorder by
    role before calling this.
    """
    kind = KIND_EVEN if even else KIND_ODD
    if not primes:
        empty = F2Matrix.zeros(0, 0)
        return MonskyMatrix(kind, 0, empty, empty, empty, empty)
    d2 = build_D(2, primes)
    e = build_E(primes)
    if even:
        d_other = build_D(-1, primes)
        grid = [[d2, e + d2], [e.transpose() + d2, d_other]]
    else:
        d_other = build_D(-2, primes)
        grid = [[d2, e + d2], [e + d_other, d2]]
    return MonskyMatrix(kind, len(primes), block_compose(grid), d2, d_other, e)


def build_monsky(fact: SquareFreeFactorization) -> MonskyMatrix:
    return monsky_matrix(fact.odd_primes, even=fact.delta == 1)


def selmer_rank(n: int) -> int:
    """2-Selmer rank s(n) = 2m - rank of the Monsky matrix."""
    fact = factor_squarefree(n)
    mm = build_monsky(fact)
    return 2 * fact.m - mm.matrix.rank()


@dataclass(frozen=True)
class Certificate:
    """Outcome of a non-congruence check for one square-free n.

    external_mw_rank is an annotation for a Mordell-Weil rank obtained
    elsewhere (for instance from a computer-algebra system); it is never
    computed here, only checked against r <= s.  Certificates are emitted
    for s > 0 too, carrying the matrix for audit.
    """

    n: int
    factorization: SquareFreeFactorization
    kind: str
    matrix: F2Matrix
    rank: int
    selmer_rank: int
    certified_noncongruent: bool
    external_mw_rank: int | None = None

    def __post_init__(self):
        if self.selmer_rank != 2 * self.factorization.m - self.rank:
            raise ValueError("selmer_rank does not match 2m - rank")
        if self.certified_noncongruent != (self.selmer_rank == 0):
            raise ValueError("certified flag inconsistent with selmer_rank")
        if self.external_mw_rank is not None and not (
            0 <= self.external_mw_rank <= self.selmer_rank
        ):
            raise ValueError(
                f"annotated rank {self.external_mw_rank} violates "
                f"0 <= r <= s = {self.selmer_rank}"
            )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": self.factorization.delta,
            "primes": list(self.factorization.odd_primes),
            "kind": self.kind,
            "matrix": self.matrix.to_bitstrings(),
            "rank": self.rank,
            "selmer_rank": self.selmer_rank,
            "certified_noncongruent": self.certified_noncongruent,
            "external_mw_rank": self.external_mw_rank,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        primes = tuple(d["primes"])
        fact = SquareFreeFactorization(d["n"], d["delta"], primes)
        m = len(primes)
        matrix = F2Matrix(
            2 * m if m else 0,
            2 * m if m else 0,
            [int(row[::-1], 2) if row else 0 for row in d["matrix"]],
        )
        return cls(
            n=d["n"],
            factorization=fact,
            kind=d["kind"],
            matrix=matrix,
            rank=d["rank"],
            selmer_rank=d["selmer_rank"],
            certified_noncongruent=d["certified_noncongruent"],
            external_mw_rank=d["external_mw_rank"],
        )


def certify(n: int, external_mw_rank: int | None = None) -> Certificate:
    """Certificate for n: certified_noncongruent iff s(n) = 0."""
    fact = factor_squarefree(n)
    mm = build_monsky(fact)
    rank = mm.matrix.rank()
    s = 2 * fact.m - rank
    return Certificate(
        n=n,
        factorization=fact,
        kind=mm.kind,
        matrix=mm.matrix,
        rank=rank,
        selmer_rank=s,
        certified_noncongruent=s == 0,
        external_mw_rank=external_mw_rank,
    )
