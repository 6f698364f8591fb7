"""Prime-tuple families of non-congruent numbers.

Each family is a pattern of residue classes mod 8 for role-indexed primes
(p_i, q_i, r_i and sometimes s_i) together with a conjunction of Legendre
symbol conditions; every member n assembled from a satisfying tuple has
2-Selmer rank zero.  This module validates tuples against a family,
searches bounded prime ranges for members, and cross-validates every hit
through the Monsky pipeline.

Conditions quantified over i < j depend on the listed order of primes in
a role; the canonical order is ascending per role, which makes membership
decidable and search output deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .arith import is_prime, legendre, primes_in_class
from .monsky import Certificate, certify

THEOREM_IDS = ("157", "355", "377", "533", "1357", "2x1357")

ROLE_ORDER = {
    "157": ("p", "q", "r"),
    "355": ("p", "q", "r"),
    "377": ("p", "q", "r"),
    "533": ("p", "q", "r"),
    "1357": ("p", "q", "r", "s"),
    "2x1357": ("p", "q", "r", "s"),
}

ROLE_RESIDUES = {
    "157": {"p": 1, "q": 5, "r": 7},
    "355": {"p": 3, "q": 5, "r": 5},
    "377": {"p": 7, "q": 7, "r": 3},
    "533": {"p": 5, "q": 3, "r": 3},
    "1357": {"p": 1, "q": 3, "r": 5, "s": 7},
    "2x1357": {"p": 1, "q": 5, "r": 3, "s": 7},
}

MULTIPLIER = {"157": 1, "355": 1, "377": 1, "533": 2, "1357": 1, "2x1357": 2}

# Families defined only for odd tuple length.
ODD_T_ONLY = ("377", "2x1357")

_PARAMS_BY_THEOREM = {
    "157": frozenset({"alpha"}),
    "355": frozenset({"alpha"}),
    "377": frozenset({"alpha", "mu"}),
    "533": frozenset({"alpha", "mu", "mu1", "mu2"}),
    "1357": frozenset({"mu1", "mu2"}),
    "2x1357": frozenset({"mu"}),
}

T533_CASES = ("A(i)", "A(ii)", "B(i)", "B(ii)")
_CASE_PARAMS = {"A(i)": (1, 1), "A(ii)": (1, -1), "B(i)": (-1, -1), "B(ii)": (-1, 1)}

_MAX_64 = (1 << 64) - 1


class TheoremContradictionError(RuntimeError):
    """A tuple satisfied a family's hypotheses but did not certify (s > 0)."""


@dataclass(frozen=True)
class FamilySpec:
    """A family selector: theorem id, tuple length, and sign parameters.

    Parameters left as None are inferred from the tuple where the
    conditions admit it (all pairwise symbols in the group must agree);
    search requires them explicit whenever they are active at the given t.
    For the 533 family the sub-case fixes alpha and mu, so they may be
    omitted; strict_case_parity applies the (t = 1 or t even) restriction
    of the (ii) sub-cases to the mu1 != mu2 branch as well (the default
    reading restricts only the mu1 == mu2 branch).
    """

    theorem: str
    t: int
    alpha: int | None = None
    mu: int | None = None
    mu1: int | None = None
    mu2: int | None = None
    case: str | None = None
    strict_case_parity: bool = False

    def __post_init__(self):
        if self.theorem not in THEOREM_IDS:
            raise ValueError(f"unknown theorem id {self.theorem!r}")
        if self.t < 1:
            raise ValueError(f"t must be at least 1, got {self.t}")
        if self.theorem in ODD_T_ONLY and self.t % 2 == 0:
            raise ValueError(f"family {self.theorem} requires odd t")
        allowed = _PARAMS_BY_THEOREM[self.theorem]
        for name in ("alpha", "mu", "mu1", "mu2"):
            value = getattr(self, name)
            if value is not None and value not in (-1, 1):
                raise ValueError(f"{name} must be -1, +1 or None")
            if value is not None and name not in allowed:
                raise ValueError(f"family {self.theorem} takes no parameter {name}")
        if self.theorem == "533":
            if self.case not in T533_CASES:
                raise ValueError(f"family 533 needs a case from {T533_CASES}")
            want_alpha, want_mu = _CASE_PARAMS[self.case]
            for name, want in (("alpha", want_alpha), ("mu", want_mu)):
                value = getattr(self, name)
                if value is None:
                    object.__setattr__(self, name, want)
                elif value != want:
                    raise ValueError(
                        f"case {self.case} fixes {name} = {want}, got {value}"
                    )
        elif self.case is not None:
            raise ValueError(f"family {self.theorem} takes no case")

    def param(self, name: str) -> int | None:
        return getattr(self, name)

    def case_admissibility(
        self, mu1: int | None = None, mu2: int | None = None
    ) -> tuple[bool, str]:
        """Whether the 533 sub-case applies at this t with these mu1/mu2.

        Values supplied here (for instance inferred from a tuple) override
        the spec's own; sub-cases (i) are unconditional.
        """
        if self.theorem != "533":
            return True, ""
        if self.case in ("A(i)", "B(i)"):
            return True, ""
        mu1 = self.mu1 if mu1 is None else mu1
        mu2 = self.mu2 if mu2 is None else mu2
        t_ok = self.t == 1 or self.t % 2 == 0
        if t_ok:
            return True, ""
        if mu1 is None or mu2 is None:
            return False, f"case {self.case} with odd t > 1 needs mu1 != mu2"
        if mu1 == mu2:
            return False, f"case {self.case} needs t = 1 or t even when mu1 = mu2"
        if self.strict_case_parity:
            return False, f"case {self.case} restricted to t = 1 or t even (strict reading)"
        return True, ""


@dataclass(frozen=True)
class PrimeTuple:
    """Role-indexed primes for one family instance.

    Family 377 has scalar p and q (stored as one-element roles) and t
    primes in r; all other families have t primes per role.  Residue
    classes mod 8, distinctness, primality and ascending order per role
    are enforced at construction.
    """

    theorem: str
    p: tuple[int, ...]
    q: tuple[int, ...]
    r: tuple[int, ...]
    s: tuple[int, ...] = ()

    def __post_init__(self):
        if self.theorem not in THEOREM_IDS:
            raise ValueError(f"unknown theorem id {self.theorem!r}")
        for name in ("p", "q", "r", "s"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        roles = ROLE_ORDER[self.theorem]
        if "s" not in roles and self.s:
            raise ValueError(f"family {self.theorem} has no s role")
        t = len(self.r)
        if t < 1:
            raise ValueError("tuple length t must be at least 1")
        if self.theorem in ODD_T_ONLY and t % 2 == 0:
            raise ValueError(f"family {self.theorem} requires odd t")
        residues = ROLE_RESIDUES[self.theorem]
        seen: set[int] = set()
        for role in roles:
            primes = getattr(self, role)
            want = 1 if self.theorem == "377" and role in ("p", "q") else t
            if len(primes) != want:
                raise ValueError(
                    f"role {role} needs {want} primes for t={t}, got {len(primes)}"
                )
            prev = 0
            for value in primes:
                if not is_prime(value):
                    raise ValueError(f"{value} is not prime")
                if value % 8 != residues[role]:
                    raise ValueError(
                        f"{value} is {value % 8} mod 8; role {role} needs {residues[role]}"
                    )
                if value <= prev:
                    raise ValueError(f"role {role} must be strictly ascending")
                if value in seen:
                    raise ValueError(f"prime {value} repeats across roles")
                seen.add(value)
                prev = value

    @property
    def t(self) -> int:
        return len(self.r)

    def all_primes(self) -> tuple[int, ...]:
        return self.p + self.q + self.r + self.s

    def value(self, role: str, idx: int) -> int:
        return getattr(self, role)[idx]


@dataclass(frozen=True)
class SymbolCondition:
    top: tuple[str, int]
    bottom: tuple[str, int]
    expected: int | str  # literal sign, or a parameter name
    label: str


def _lab(ra: str, i: int, rb: str, j: int) -> str:
    return f"({ra}{i + 1}/{rb}{j + 1})"


def conditions_for(theorem: str, t: int) -> list[SymbolCondition]:
    """The full Legendre-condition list of a family at tuple length t.

    Conditions over i < j are emitted for ascending index pairs in the
    canonical role order; conditions stated for i != j are emitted for
    both orders, exactly as written.
    """
    c: list[SymbolCondition] = []

    def add(ra: str, i: int, rb: str, j: int, expected: int | str) -> None:
        c.append(SymbolCondition((ra, i), (rb, j), expected, _lab(ra, i, rb, j)))

    lt = [(i, j) for i in range(t) for j in range(t) if i < j]
    ne = [(i, j) for i in range(t) for j in range(t) if i != j]

    if theorem == "157":
        for i in range(t):
            add("p", i, "q", i, -1)
            add("p", i, "r", i, -1)
        for i, j in lt:
            add("p", i, "p", j, 1)
            add("q", i, "q", j, 1)
            add("r", i, "r", j, "alpha")
        for i, j in ne:
            add("p", i, "q", j, 1)
            add("p", i, "r", j, 1)
            add("q", i, "r", j, 1)
    elif theorem == "355":
        for i in range(t):
            add("p", i, "q", i, -1)
            add("p", i, "r", i, -1)
        for i, j in lt:
            add("q", i, "q", j, 1)
            add("r", i, "r", j, 1)
            add("p", i, "p", j, "alpha")
        for i, j in ne:
            add("p", i, "q", j, 1)
            add("p", i, "r", j, 1)
            add("q", i, "r", j, 1)
    elif theorem == "377":
        add("p", 0, "q", 0, "alpha")
        for i in range(t):
            add("q", 0, "r", i, "alpha")
            add("r", i, "p", 0, "alpha")
        for i, j in lt:
            add("r", i, "r", j, "mu")
    elif theorem == "533":
        for i in range(t):
            add("p", i, "q", i, "alpha")
            add("p", i, "r", i, "alpha")
            add("q", i, "r", i, "mu")
        for i, j in lt:
            add("p", i, "p", j, 1)
            add("q", i, "q", j, "mu1")
            add("r", i, "r", j, "mu2")
        for i, j in ne:
            add("p", i, "q", j, 1)
            add("p", i, "r", j, 1)
            add("q", i, "r", j, 1)
    elif theorem == "1357":
        for i in range(t):
            add("p", i, "q", i, -1)
            add("r", i, "s", i, -1)
            add("p", i, "r", i, 1)
            add("p", i, "s", i, 1)
            add("q", i, "r", i, 1)
            add("q", i, "s", i, 1)
        for ra, rb in itertools.permutations("pqrs", 2):
            if (ra, rb) == ("s", "q"):
                continue
            for i, j in ne:
                add(ra, i, rb, j, 1)
        for i, j in lt:
            add("s", i, "s", j, "mu1")
            add("q", i, "q", j, "mu2")
        for i, j in ne:
            add("p", i, "p", j, 1)
            add("r", i, "r", j, 1)
    elif theorem == "2x1357":
        for i in range(t):
            add("p", i, "q", i, -1)
            add("r", i, "s", i, -1)
            add("p", i, "s", i, 1)
            add("p", i, "r", i, 1)
            add("q", i, "r", i, 1)
            add("q", i, "s", i, 1)
        for ra, rb in (("p", "q"), ("p", "r"), ("p", "s"), ("q", "r"), ("q", "s"), ("r", "s")):
            for i, j in ne:
                add(ra, i, rb, j, 1)
        for i, j in lt:
            add("s", i, "s", j, "mu")
            add("r", i, "r", j, "mu")
        for i, j in ne:
            add("p", i, "p", j, 1)
            add("q", i, "q", j, 1)
    else:  # pragma: no cover
        raise ValueError(theorem)
    return c


@lru_cache(maxsize=None)
def _sym(top: int, bottom: int) -> int:
    # Search re-evaluates the same prime pairs constantly; cache them.
    return legendre(top, bottom)


@dataclass(frozen=True)
class Violation:
    label: str
    expected: int
    actual: int


@dataclass(frozen=True)
class ConditionReport:
    satisfied: bool
    violations: tuple[Violation, ...]
    inferred: tuple[tuple[str, int], ...]

    def inferred_params(self) -> dict[str, int]:
        return dict(self.inferred)


def _check_match(spec: FamilySpec, tup: PrimeTuple) -> None:
    if spec.theorem != tup.theorem:
        raise ValueError(f"spec is for family {spec.theorem}, tuple for {tup.theorem}")
    if spec.t != tup.t:
        raise ValueError(f"spec has t={spec.t}, tuple has t={tup.t}")


def check_conditions(spec: FamilySpec, tup: PrimeTuple) -> ConditionReport:
    """Evaluate every Legendre condition of the family literally.

    Parameters of the spec that are None are pinned to the first symbol
    seen in their group and reported back; later symbols in the group must
    match.  For family 533 the sub-case admissibility is checked too and
    reported as a violation when it fails.
    """
    _check_match(spec, tup)
    violations: list[Violation] = []
    inferred: dict[str, int] = {}
    for cond in conditions_for(spec.theorem, spec.t):
        actual = _sym(tup.value(*cond.top), tup.value(*cond.bottom))
        if isinstance(cond.expected, str):
            expected = spec.param(cond.expected)
            if expected is None:
                expected = inferred.get(cond.expected)
                if expected is None:
                    inferred[cond.expected] = actual
                    continue
        else:
            expected = cond.expected
        if actual != expected:
            violations.append(Violation(cond.label, expected, actual))
    ok, why = spec.case_admissibility(
        mu1=inferred.get("mu1"), mu2=inferred.get("mu2")
    )
    if not ok:
        violations.append(Violation(f"case: {why}", 0, 0))
    return ConditionReport(
        satisfied=not violations,
        violations=tuple(violations),
        inferred=tuple(sorted(inferred.items())),
    )


def assemble_n(spec: FamilySpec, tup: PrimeTuple) -> int:
    """The family member: product of all primes, doubled for the even
    families (533 and 2x1357).  Rejects products beyond 64 bits."""
    _check_match(spec, tup)
    n = MULTIPLIER[spec.theorem]
    for value in tup.all_primes():
        n *= value
        if n > _MAX_64:
            raise OverflowError(f"family member exceeds 64 bits: {tup}")
    return n


def cross_validate(spec: FamilySpec, tup: PrimeTuple) -> Certificate:
    """Certify a satisfying tuple's n; a member with s(n) > 0 would
    contradict the family's soundness and raises TheoremContradictionError."""
    report = check_conditions(spec, tup)
    if not report.satisfied:
        first = report.violations[0]
        raise ValueError(
            f"tuple fails the family hypotheses: {first.label} "
            f"expected {first.expected:+d}, got {first.actual:+d}"
        )
    cert = certify(assemble_n(spec, tup))
    if not cert.certified_noncongruent:
        raise TheoremContradictionError(
            f"family {spec.theorem} member n={cert.n} has s(n)={cert.selmer_rank} != 0"
        )
    return cert


def _slots(theorem: str, t: int) -> list[tuple[str, int]]:
    out = []
    for role in ROLE_ORDER[theorem]:
        arity = 1 if theorem == "377" and role in ("p", "q") else t
        out.extend((role, i) for i in range(arity))
    return out


def search(
    spec: FamilySpec,
    prime_bound: int,
    limit: int | None = None,
    *,
    max_n: int | None = None,
) -> list[PrimeTuple]:
    """Enumerate satisfying tuples with all primes <= prime_bound.

    Output is deterministic: depth-first extension over role-major slots
    (p_1..p_t, q_1..q_t, ...), each role ascending, pruning on every
    Legendre condition as soon as both its primes are placed.  Tuples
    arrive in lexicographic order of their flattened prime sequence, up
    to `limit` of them (None = all).  Only tuples whose assembled n fits
    in 64 bits (and is <= max_n, when given) are returned.

    Every parameter the conditions reference at this t must be explicit;
    an inadmissible 533 sub-case raises ValueError.
    """
    if limit is not None and limit <= 0:
        return []
    conds = conditions_for(spec.theorem, spec.t)
    resolved: list[SymbolCondition] = []
    for cond in conds:
        expected = cond.expected
        if isinstance(expected, str):
            value = spec.param(expected)
            if value is None:
                raise ValueError(
                    f"parameter {expected} must be set to search family "
                    f"{spec.theorem} at t={spec.t}"
                )
            expected = value
        resolved.append(SymbolCondition(cond.top, cond.bottom, expected, cond.label))
    ok, why = spec.case_admissibility()
    if not ok:
        raise ValueError(why)

    slots = _slots(spec.theorem, spec.t)
    pos = {slot: k for k, slot in enumerate(slots)}
    residues = ROLE_RESIDUES[spec.theorem]
    pools: dict[str, list[int]] = {}
    for role in ROLE_ORDER[spec.theorem]:
        res = residues[role]
        pools.setdefault(role, primes_in_class(prime_bound, res))
    for role in ROLE_ORDER[spec.theorem]:
        need = sum(1 for slot in slots if slot[0] == role)
        if len(pools[role]) < need:
            return []

    # Conditions checkable once slot k is placed (all other slots earlier).
    conds_at: list[list[tuple[int, int, int]]] = [[] for _ in slots]
    for cond in resolved:
        a, b = pos[cond.top], pos[cond.bottom]
        conds_at[max(a, b)].append((a, b, cond.expected))

    mult = MULTIPLIER[spec.theorem]
    cap = _MAX_64 if max_n is None else min(max_n, _MAX_64)
    # value(role, i) >= i-th smallest prime of its class, independent of
    # the other roles, so this suffix product is a valid completion bound.
    suffix_min = [1] * (len(slots) + 1)
    for k in reversed(range(len(slots))):
        role, i = slots[k]
        suffix_min[k] = suffix_min[k + 1] * pools[role][i]

    values = [0] * len(slots)
    used: set[int] = set()
    results: list[PrimeTuple] = []

    def make_tuple() -> PrimeTuple:
        grouped: dict[str, list[int]] = {"p": [], "q": [], "r": [], "s": []}
        for (role, _), value in zip(slots, values):
            grouped[role].append(value)
        return PrimeTuple(spec.theorem, *(tuple(grouped[r]) for r in "pqrs"))

    def extend(k: int, product: int, start: int) -> bool:
        if k == len(slots):
            results.append(make_tuple())
            return limit is not None and len(results) >= limit
        role, _ = slots[k]
        pool = pools[role]
        for ci in range(start, len(pool)):
            value = pool[ci]
            if mult * product * value * suffix_min[k + 1] > cap:
                break
            if value in used:
                continue
            values[k] = value
            if any(_sym(values[a], values[b]) != want for a, b, want in conds_at[k]):
                continue
            used.add(value)
            next_start = ci + 1 if k + 1 < len(slots) and slots[k + 1][0] == role else 0
            stop = extend(k + 1, product * value, next_start)
            used.discard(value)
            if stop:
                return True
        return False

    extend(0, 1, 0)
    return results
