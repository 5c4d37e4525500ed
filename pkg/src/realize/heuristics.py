"""
heuristics.py - 무한 곡면의 위상 추정
공의 반경을 키워 가며 그 안에 완전히 들어 있는 차수 2 이상의 꼭짓점 수를 셉니다.
종수가 무한이라는 정황일 뿐, 끝(end)의 수는 유한한 자료로 판정할 수 없습니다.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from src.errors import CycleBudgetExceeded
from src.surface.origami import DEFAULT_CYCLE_BUDGET, Origami, ball, singularity_at

DISCLAIMER = "heuristic only: end count is not computed; growing counts suggest infinite genus"


@dataclass(frozen=True)
class RadiusCount:
    radius: int
    ball_size: int
    branch_vertices: int


@dataclass(frozen=True)
class MonsterReport:
    base: Any
    rows: tuple[RadiusCount, ...]
    disclaimer: str = DISCLAIMER

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(r.branch_vertices for r in self.rows)

    @property
    def increasing(self) -> bool:
        return all(a < b for a, b in zip(self.counts, self.counts[1:]))


def monster_heuristics(
    o: Origami,
    radii: Iterable[int],
    base: Any = 1,
    budget: int = DEFAULT_CYCLE_BUDGET,
) -> MonsterReport:
    rows = []
    for r in sorted(radii):
        region = ball(o, base, r)
        counted: set[tuple] = set()
        for square in region:
            try:
                s = singularity_at(o, square, budget)
            except CycleBudgetExceeded:
                continue
            if s.degree >= 2 and all(p in region for p in s.cycle):
                counted.add(s.cycle)
        rows.append(RadiusCount(r, len(region), len(counted)))
    return MonsterReport(base, tuple(rows))
