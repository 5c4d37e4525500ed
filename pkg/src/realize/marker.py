"""
marker.py - 표지 기저(marker base) 탐색
국소 차수 1 인 꼭짓점이 정확히 하나 있는 유한 오리가미를 찾습니다. 그 꼭짓점이 표지 역할을 하므로
자기동형군은 자명하고, 그 위에 만든 연결 피복의 자기동형은 덱 변환뿐입니다.

탐색 순서 (재현 가능):
    1. 계단 닫힘 S_1, S_2, … (정사각형 3m+2 개)
    2. 1단계에서 아무것도 찾지 못하면 작은 n 에 대한 전수 탐색
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional

from loguru import logger

from src.algebra.perm import FinitePerm
from src.errors import NotConnected, NotFound, ValidationError
from src.surface.automorphism import automorphism_group
from src.surface.origami import (
    Connectivity,
    Finite,
    Origami,
    Singularity,
    make_origami,
    singularities,
)


@dataclass(frozen=True)
class MarkerBase:
    origami: Origami
    marker: Singularity
    loop_slots: tuple[int, ...]
    label: str = ""

    @property
    def n(self) -> int:
        return self.origami.n


def staircase_closure(m: int) -> Origami:
    """
    계단 오리가미의 처음 3m+2 개 정사각형을 닫은 유한 오리가미 S_m.

    σ = (3,4)(6,7)…(3m,3m+1), τ = (1,2,3)(4,5,6)…(3m−2,3m−1,3m)(3m+1,3m+2).
    """
    if m < 1:
        raise ValidationError(f"계단 닫힘의 단계는 1 이상이어야 함: {m}")
    n = 3 * m + 2
    sigma = FinitePerm.from_cycles([(3 * k, 3 * k + 1) for k in range(1, m + 1)], n)
    tau = FinitePerm.from_cycles(
        [(3 * k + 1, 3 * k + 2, 3 * k + 3) for k in range(m)] + [(3 * m + 1, 3 * m + 2)],
        n,
    )
    return make_origami(sigma, tau, Finite(n), name=f"S_{m}")


def loop_slot_candidates(o: Origami) -> list[int]:
    """위쪽 이웃이 σ 고정인 정사각형: 위쪽 변의 두 끝 꼭짓점이 같은 꼭짓점."""
    return [i for i in o.squares() if o.right(o.up(i)) == o.up(i)]


def _connected_without(o: Origami, removed: set[int]) -> bool:
    """removed 의 위쪽 변 접합을 지운 접합 그래프가 연결되어 있는지."""
    neighbors: dict[int, set[int]] = {i: set() for i in o.squares()}
    for i in o.squares():
        neighbors[i].add(o.right(i))
        neighbors[o.right(i)].add(i)
        if i not in removed:
            neighbors[i].add(o.up(i))
            neighbors[o.up(i)].add(i)
    seen = {1}
    queue = deque([1])
    while queue:
        for j in neighbors[queue.popleft()]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == o.n


def loop_slots(o: Origami) -> tuple[int, ...]:
    """
    서로 독립인 고리 자리를 작은 번호부터 탐욕적으로 고릅니다.

    고른 자리의 위쪽 변을 모두 지워도 접합 그래프가 연결되어 있어야 합니다.
    그러면 각 자리는 생성 나무 밖의 변이 되어, 그 전압이 피복의 홀로노미에 그대로 들어갑니다.
    """
    chosen: list[int] = []
    for i in loop_slot_candidates(o):
        if _connected_without(o, set(chosen) | {i}):
            chosen.append(i)
    return tuple(chosen)


def marker_base_violations(o: Origami) -> list[str]:
    """표지 기저 조건 중 어긋나는 항목들 (빈 목록이면 유효)."""
    if not o.is_finite:
        return ["유한 오리가미가 아님"]
    if o.validation.connectivity != Connectivity.CONNECTED:
        return ["연결되지 않음"]
    problems: list[str] = []
    vertices = singularities(o)
    markers = [s for s in vertices if s.degree == 1]
    if len(markers) != 1:
        problems.append(f"차수 1 꼭짓점이 {len(markers)} 개")
    if all(s.degree == 1 for s in vertices):
        problems.append("차수 2 이상의 꼭짓점이 없음")
    if len(automorphism_group(o)) != 1:
        problems.append("자기동형군이 자명하지 않음")
    if not loop_slots(o):
        problems.append("고리 자리가 없음")
    return problems


def as_marker_base(o: Origami, label: str = "") -> Optional[MarkerBase]:
    if marker_base_violations(o):
        return None
    marker = next(s for s in singularities(o) if s.degree == 1)
    return MarkerBase(o, marker, loop_slots(o), label or o.name)


def _exhaustive(n: int) -> Iterator[Origami]:
    for sigma in permutations(range(1, n + 1)):
        for tau in permutations(range(1, n + 1)):
            try:
                yield make_origami(FinitePerm(sigma), FinitePerm(tau), Finite(n))
            except NotConnected:
                continue


def iter_marker_bases(max_squares: int, exhaustive_limit: int = 4) -> Iterator[MarkerBase]:
    """정사각형 max_squares 개 이하의 표지 기저를 정해진 순서로 생성합니다."""
    found = False
    m = 1
    while 3 * m + 2 <= max_squares:
        base = as_marker_base(staircase_closure(m))
        if base is not None:
            found = True
            yield base
        else:
            logger.warning(f"S_{m} 이 표지 기저 조건을 만족하지 않음")
        m += 1
    if found:
        return

    for n in range(2, min(max_squares, exhaustive_limit) + 1):
        count = 0
        for o in _exhaustive(n):
            count += 1
            base = as_marker_base(o, f"exhaustive n={n} #{count}")
            if base is not None:
                yield base


def find_marker_base(
    max_squares: int,
    min_slots: int = 1,
    exhaustive_limit: int = 4,
) -> MarkerBase:
    """
    고리 자리가 min_slots 개 이상인 첫 표지 기저.

    Raises:
        NotFound: max_squares 안에 없음
    """
    for base in iter_marker_bases(max_squares, exhaustive_limit):
        if len(base.loop_slots) >= min_slots:
            logger.info(f"표지 기저 {base.label}: 정사각형 {base.n} 개, 고리 자리 {list(base.loop_slots)}")
            return base
    raise NotFound(max_squares)
