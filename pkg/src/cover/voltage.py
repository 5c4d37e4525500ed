"""
voltage.py - 전압 할당과 평탄성 검사
각 정사각형의 오른쪽 변 접합(i → σ(i))과 위쪽 변 접합(i → τ(i))에 군 원소를 붙입니다.
꼭짓점(교환자 순환)을 한 바퀴 돌며 모은 전압 워드가 모두 항등원이면 피복은 분기되지 않습니다.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Union

from loguru import logger

from src.algebra.group import Group, GroupElem
from src.algebra.perm import square_key
from src.errors import MixedGroupKinds, RegionTooSmall, ValidationError
from src.surface.origami import (
    DEFAULT_CYCLE_BUDGET,
    Ball,
    Origami,
    Singularity,
    singularities_meeting,
)


@dataclass(frozen=True)
class VoltageAssignment:
    """
    wh[i]: i 의 오른쪽 변 접합 전압, wv[i]: i 의 위쪽 변 접합 전압.
    표에 없는 정사각형은 항등원이고, 변을 거꾸로 지나면 역원을 곱합니다.
    """

    group: Group
    wh: dict = field(default_factory=dict, hash=False)
    wv: dict = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        for table in (self.wh, self.wv):
            for square, g in table.items():
                if not self.group.contains(g):
                    raise MixedGroupKinds(f"정사각형 {square} 의 전압 {g} 이 {self.group.label} 에 속하지 않음")

    @classmethod
    def identity(cls, group: Group) -> "VoltageAssignment":
        return cls(group)

    def horizontal(self, i: Any) -> GroupElem:
        return self.wh.get(i, self.group.identity())

    def vertical(self, i: Any) -> GroupElem:
        return self.wv.get(i, self.group.identity())

    @property
    def support(self) -> list[Any]:
        """항등원이 아닌 전압이 붙은 정사각형 (정렬)."""
        squares = {i for i, g in self.wh.items() if not g.is_identity}
        squares |= {i for i, g in self.wv.items() if not g.is_identity}
        return sorted(squares, key=square_key)

    def values(self) -> list[GroupElem]:
        """항등원이 아닌 전압 값들 (wh 다음 wv, 정사각형 순)."""
        result = []
        for table in (self.wh, self.wv):
            for i in sorted(table, key=square_key):
                if not table[i].is_identity:
                    result.append(table[i])
        return result


def vertex_voltage_word(o: Origami, V: VoltageAssignment, s: Singularity) -> GroupElem:
    """
    꼭짓점 s 를 한 바퀴 도는 전압 워드.

    순환의 각 점 p 에서 a=σ⁻¹(p), b=τ⁻¹(a) 로 두고
    wh(a)⁻¹ · wv(b)⁻¹ · wh(b) · wv(σ(b)) 를 오른쪽으로 누적합니다.
    """
    word = V.group.identity()
    for p in s.cycle:
        a = o.left(p)
        b = o.down(a)
        c = o.right(b)
        word = word * ~V.horizontal(a) * ~V.vertical(b) * V.horizontal(b) * V.vertical(c)
    return word


@dataclass(frozen=True)
class VertexWord:
    singularity: Singularity
    word: GroupElem

    @property
    def is_trivial(self) -> bool:
        return self.word.is_identity


@dataclass(frozen=True)
class FlatReport:
    """검사 영역의 모든 꼭짓점과 그 전압 워드."""

    words: tuple[VertexWord, ...]
    region_size: int

    @property
    def flat(self) -> bool:
        return all(w.is_trivial for w in self.words)

    @property
    def offending(self) -> list[VertexWord]:
        return [w for w in self.words if not w.is_trivial]

    @property
    def vertex_count(self) -> int:
        return len(self.words)

    def describe(self) -> str:
        if self.flat:
            return f"평탄: 꼭짓점 {self.vertex_count} 개의 워드가 모두 항등원"
        first = self.offending[0]
        cycle = ",".join(str(p) for p in first.singularity.cycle)
        return (
            f"꼭짓점 ({cycle}) 의 전압 워드 {first.word} 가 항등원이 아님 "
            f"(비자명 {len(self.offending)} / {self.vertex_count})"
        )


def support_anchors(o: Origami, V: VoltageAssignment) -> list[Any]:
    """
    지지집합의 전압이 나타나는 꼭짓점 워드의 순환점들.

    wh(i) 는 σ(i), σ(τ(i)) 에서, wv(i) 는 σ(τ(i)), σ(τ(σ⁻¹(i))) 에서 나타납니다.
    """
    anchors: list[Any] = []
    for i in V.support:
        for p in (o.right(i), o.right(o.up(i)), o.right(o.up(o.left(i)))):
            if p not in anchors:
                anchors.append(p)
    return anchors


RegionLike = Union[None, Ball, Iterable[Any]]


def check_flat(
    o: Origami,
    V: VoltageAssignment,
    region: RegionLike = None,
    budget: int = DEFAULT_CYCLE_BUDGET,
) -> FlatReport:
    """
    region 안의 모든 꼭짓점의 전압 워드를 계산합니다.

    Args:
        o: 기저 오리가미
        V: 전압 할당
        region: None 이면 유한 오리가미는 전체, 무한 오리가미는 지지집합의 꼭짓점만
        budget: 순환 추적 예산

    Raises:
        RegionTooSmall: 지지집합의 꼭짓점이나 그 교환자 순환의 정사각형이 region 밖에 있음
    """
    anchors = support_anchors(o, V)
    if region is None:
        squares: list[Any] = list(o.squares()) if o.is_finite else anchors
    else:
        squares = list(region)
        inside = set(squares)
        for p in anchors:
            if p not in inside:
                raise RegionTooSmall(p)
        # 지지집합을 지나는 교환자 순환 전체가 영역 안에 있어야 함
        for s in singularities_meeting(o, [*V.support, *anchors], budget):
            outside = sorted((p for p in s.cycle if p not in inside), key=square_key)
            if outside:
                raise RegionTooSmall(outside[0])

    words = tuple(
        VertexWord(s, vertex_voltage_word(o, V, s))
        for s in singularities_meeting(o, squares, budget)
    )
    report = FlatReport(words, len(squares))
    logger.debug(report.describe())
    return report


def loop_slot_voltages(
    group: Group,
    slots: Iterable[Any],
    generators: Optional[Iterable[GroupElem]] = None,
) -> VoltageAssignment:
    """j 번째 생성원을 j 번째 고리 자리의 위쪽 변에 붙입니다 (나머지는 항등원)."""
    gens = list(group.generators if generators is None else generators)
    slots = list(slots)
    if len(slots) < len(gens):
        raise ValidationError(f"고리 자리 {len(slots)} 개로는 생성원 {len(gens)} 개를 놓을 수 없음")
    return VoltageAssignment(group, wv=dict(zip(slots, gens)))
