"""Built-in reference family members used by the verify-table command.

Each row pairs a known member of one of the six families with its
Mordell-Weil rank annotation (0 for all rows, obtained from an external
computer-algebra verification).  verify-table reconstructs the member,
checks the family hypotheses, certifies s(n) = 0 and confirms the r <= s
annotation, with no network or external tool involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .families import FamilySpec, PrimeTuple


@dataclass(frozen=True)
class GoldenRow:
    spec: FamilySpec
    tup: PrimeTuple
    n: int
    mw_rank: int = 0
    note: str = ""


def _row(theorem, t, n, p, q, r, s=(), note="", **params) -> GoldenRow:
    return GoldenRow(
        spec=FamilySpec(theorem, t, **params),
        tup=PrimeTuple(theorem, tuple(p), tuple(q), tuple(r), tuple(s)),
        n=n,
        note=note,
    )


GOLDEN_ROWS: tuple[GoldenRow, ...] = (
    _row("157", 1, 26611, [89], [13], [23]),
    _row("157", 2, 9820867105, [17, 281], [5, 389], [7, 151], alpha=-1),
    _row("355", 1, 1515, [3], [5], [101]),
    _row("355", 2, 976322265, [3, 59], [5, 109], [29, 349], alpha=1),
    _row("377", 1, 483, [7], [23], [3], alpha=-1),
    _row("377", 3, 35616427, [7], [31], [11, 43, 347], alpha=1, mu=1),
    _row("533", 1, 1290, [5], [3], [43], case="B(i)"),
    _row("533", 2, 246982383010, [5, 229], [11, 491], [19, 1051], case="A(i)"),
    _row("1357", 1, 31161, [17], [3], [13], [47]),
    _row("2x1357", 1, 616930, [17], [5], [19], [191]),
)
