"""
covering.py - 전압 피복과 덱 변환
정사각형 집합 Ω×G 위에 σ'(i,g) = (σ(i), g·wh(i)), τ'(i,g) = (τ(i), g·wv(i)) 로 피복 오리가미를 만듭니다.
덱 변환 (i,g) ↦ (i, h·g) 는 왼쪽 곱이라 σ', τ' 와 자동으로 교환합니다.

정사각형 라벨:
    기저와 군이 모두 유한 → 정수 t·n + i (t 는 폐포 열거 순서에서 g 의 위치, 항등원이 0)
    그 외 → (i, g) 쌍, 정의역은 가산 무한
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

from loguru import logger

from src.algebra.group import Group, GroupElem, GroupKind, generates
from src.algebra.lattice import lattice_coefficients
from src.algebra.perm import FinitePerm, LazyBijection, square_key
from src.cover.voltage import RegionLike, VoltageAssignment, check_flat
from src.errors import MixedGroupKinds, NotFlat, ValidationError
from src.surface.origami import (
    COUNTABLE,
    DEFAULT_CYCLE_BUDGET,
    Connectivity,
    Finite,
    Origami,
    make_origami,
)


@dataclass(frozen=True)
class CoverOrigami:
    base: Origami
    voltages: VoltageAssignment
    origami: Origami
    elements: Optional[tuple[GroupElem, ...]] = None   # 유한 피복: 올(fiber) 순서
    _position: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def group(self) -> Group:
        return self.voltages.group

    @property
    def is_indexed(self) -> bool:
        """정수 라벨로 재색인되었는지 (기저와 군이 모두 유한)."""
        return self.elements is not None

    @property
    def sheets(self) -> Optional[int]:
        return len(self.elements) if self.elements is not None else None

    def lift(self, i: Any, g: GroupElem) -> Any:
        """(i, g) 의 피복 정사각형 라벨."""
        if self.elements is None:
            return (i, g)
        try:
            t = self._position[g]
        except KeyError:
            raise ValidationError(f"{g} 는 {self.group.label} 의 폐포에 없음") from None
        return t * self.base.n + i

    def project(self, square: Any) -> tuple[Any, GroupElem]:
        """피복 정사각형 → (기저 정사각형, 올 원소)."""
        if self.elements is None:
            return square
        n = self.base.n
        t, i = divmod(square - 1, n)
        return i + 1, self.elements[t]

    def base_square(self) -> Any:
        """기저 정사각형 1 위의 항등원 올."""
        return self.lift(1, self.group.identity())


def _lazy_lift(o: Origami, V: VoltageAssignment, vertical: bool, checked: bool) -> LazyBijection:
    if vertical:
        step, back, weight = o.up, o.down, V.vertical
    else:
        step, back, weight = o.right, o.left, V.horizontal

    def forward(square: tuple) -> tuple:
        i, g = square
        return step(i), g * weight(i)

    def backward(square: tuple) -> tuple:
        j, g = square
        i = back(j)
        return i, g * ~weight(i)

    return LazyBijection(forward, backward, "tau'" if vertical else "sigma'", checked)


def build_cover(
    o: Origami,
    V: VoltageAssignment,
    region: RegionLike = None,
    *,
    budget: int = DEFAULT_CYCLE_BUDGET,
    checked: bool = False,
    sample_count: int = 20,
) -> CoverOrigami:
    """
    평탄한 전압 할당으로 피복 오리가미를 만듭니다.

    Args:
        o: 기저 오리가미
        V: 전압 할당
        region: 평탄성 검사 영역 (check_flat 과 같음)
        budget: 순환 추적 예산
        checked: 지연 전단사의 역함수 검사 여부
        sample_count: 무한 피복에서 교환자 순환을 시험할 정사각형 수

    Raises:
        NotFlat: 분기되는 꼭짓점이 있음
    """
    report = check_flat(o, V, region, budget)
    if not report.flat:
        raise NotFlat(report)

    group = V.group
    name = f"{o.name or 'base'}x{group.label}"

    if o.is_finite and group.is_finite:
        elements = tuple(group.elements())
        position = {g: t for t, g in enumerate(elements)}
        for g in V.values():
            if g not in position:
                raise ValidationError(f"전압 {g} 가 {group.label} 의 폐포에 없음")
        n = o.n
        sigma = [0] * (n * len(elements))
        tau = [0] * (n * len(elements))
        for t, g in enumerate(elements):
            for i in o.squares():
                sigma[t * n + i - 1] = position[g * V.horizontal(i)] * n + o.right(i)
                tau[t * n + i - 1] = position[g * V.vertical(i)] * n + o.up(i)
        cover = make_origami(
            FinitePerm(tuple(sigma)),
            FinitePerm(tuple(tau)),
            Finite(n * len(elements)),
            require_connected=False,
            name=name,
        )
        logger.info(f"유한 피복 생성: {n} × {len(elements)} = {cover.n} 정사각형")
        return CoverOrigami(o, V, cover, elements, position)

    identity = group.identity()
    samples = [(i, identity) for i in range(1, sample_count + 1)]
    if o.is_finite:
        samples = [(i, identity) for i in o.squares()]
    cover = make_origami(
        _lazy_lift(o, V, vertical=False, checked=checked),
        _lazy_lift(o, V, vertical=True, checked=checked),
        COUNTABLE,
        cycle_budget=budget,
        sample_squares=samples,
        name=name,
    )
    logger.info(f"무한 피복 생성: {name}")
    return CoverOrigami(o, V, cover)


# ── 덱 변환 ─────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DeckMap:
    """(i, g) ↦ (i, h·g)."""

    cover: CoverOrigami
    h: GroupElem

    def __call__(self, square: Any) -> Any:
        i, g = self.cover.project(square)
        return self.cover.lift(i, self.h * g)

    def as_perm(self) -> FinitePerm:
        if not self.cover.is_indexed:
            raise ValidationError("무한 피복의 덱 변환은 순열로 바꿀 수 없음")
        return FinitePerm(tuple(self(s) for s in self.cover.origami.squares()))


def deck_map(c: CoverOrigami, h: GroupElem) -> DeckMap:
    if not c.group.contains(h):
        raise MixedGroupKinds(f"{h} 는 {c.group.label} 의 원소가 아님")
    if c.is_indexed:
        c.lift(1, h)  # 폐포 소속 확인
    return DeckMap(c, h)


# ── 연결성 ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CoverConnectivity:
    status: Connectivity
    witness: Any = None
    explored: int = 0
    note: str = ""


def _explore(c: CoverOrigami, budget: int) -> tuple[set, bool]:
    """(도달한 정사각형, 큐가 비었는지). 큐가 비었으면 도달 집합이 성분 전체입니다."""
    start = c.base_square()
    seen = {start}
    queue = deque([start])
    while queue and len(seen) < budget:
        for nxt in c.origami.moves(queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen, not queue


def _fiber_elements(group: Group) -> Iterator[GroupElem]:
    """항등원에서 시작해 생성원과 그 역원을 곱해 나가는 원소 열거."""
    seen = {group.identity()}
    queue = deque([group.identity()])
    while queue:
        g = queue.popleft()
        yield g
        for s in group.generators:
            for h in (g * s, g * ~s):
                if h not in seen:
                    seen.add(h)
                    queue.append(h)


def _unreached_fiber_point(c: CoverOrigami, reached: set) -> Any:
    """정사각형 1 위의 올 중 reached 밖의 첫 점 (reached 는 유한해야 함)."""
    for g in _fiber_elements(c.group):
        square = c.lift(1, g)
        if square not in reached:
            return square
    return None


def holonomy_generators(c: CoverOrigami) -> tuple[list[GroupElem], bool]:
    """
    기저의 BFS 생성 나무에 대한 고리 전압들.

    나무 경로를 따라 정사각형 1 에서 i 까지 곱한 전압을 pot(i) 로 두면,
    변 u → v (전압 w) 마다 pot(u)·w·pot(v)⁻¹ 가 정사각형 1 의 홀로노미 원소입니다.
    유한 기저는 모든 변을 보므로 홀로노미 군 전체를 생성하고,
    무한 기저는 지지집합과 그 이웃까지만 보므로 부분군을 생성합니다.

    Returns:
        (항등원이 아닌 고리 전압들, 기저 전체를 보았는지)
    """
    base, V = c.base, c.voltages
    required = set(V.support)
    for i in V.support:
        required |= {base.right(i), base.up(i)}
    pot = {1: c.group.identity()}
    queue = deque([1])
    while queue and (base.is_finite or not required <= pot.keys()):
        i = queue.popleft()
        left, down = base.left(i), base.down(i)
        steps = (
            (base.right(i), pot[i] * V.horizontal(i)),
            (left, pot[i] * ~V.horizontal(left)),
            (base.up(i), pot[i] * V.vertical(i)),
            (down, pot[i] * ~V.vertical(down)),
        )
        for j, g in steps:
            if j not in pot:
                pot[j] = g
                queue.append(j)

    loops: list[GroupElem] = []
    for u in sorted(pot, key=square_key):
        for v, w in ((base.right(u), V.horizontal(u)), (base.up(u), V.vertical(u))):
            if v not in pot:
                continue
            h = pot[u] * w * ~pot[v]
            if not h.is_identity and h not in loops:
                loops.append(h)
    return loops, base.is_finite


def _missing_generator(gens: list[GroupElem], group: Group) -> Optional[GroupElem]:
    """전압들의 (아벨화) 격자에 들어가지 않는 표준 생성원."""
    if not gens:
        return group.generators[0]
    if group.kind == GroupKind.FREE_ABELIAN:
        vectors = [g.key for g in gens]
    else:
        vectors = [
            [sum((1 if x > 0 else -1) for x in g.key if abs(x) == j) for j in range(1, group.rank + 1)]
            for g in gens
        ]
    for j in range(group.rank):
        target = [1 if k == j else 0 for k in range(group.rank)]
        if lattice_coefficients(vectors, target, group.rank) is None:
            return group.generators[j]
    return None


def check_cover_connected(c: CoverOrigami, budget: int = 10_000) -> CoverConnectivity:
    """
    피복의 연결성을 판정합니다.

    유한 피복은 BFS 로 판정합니다. 무한 피복은 다음 순서로 봅니다.
      1. BFS 큐가 budget 안에 비면 유한 성분이므로 비연결 (증인은 도달하지 못한 올의 점)
      2. 전압 값들이 군을 생성하지 않으면 비연결
      3. 생성 나무의 고리 전압(홀로노미)이 군을 생성하면 연결
      4. 유한 기저에서 고리 전압이 군을 생성하지 않으면 비연결
    그 밖에는 budget 개까지의 BFS 결과와 함께 Unknown 입니다.
    """
    if c.origami.is_finite:
        reached, _ = _explore(c, c.origami.n + 1)
        if len(reached) == c.origami.n:
            return CoverConnectivity(Connectivity.CONNECTED, explored=len(reached))
        witness = min(set(c.origami.squares()) - reached)
        return CoverConnectivity(Connectivity.DISCONNECTED, witness, len(reached))

    group = c.group
    reached, exhausted = _explore(c, budget)
    explored = len(reached)
    if exhausted:
        return CoverConnectivity(
            Connectivity.DISCONNECTED,
            _unreached_fiber_point(c, reached),
            explored,
            f"유한 성분: BFS 가 정사각형 {explored} 개에서 끝남",
        )

    values = c.voltages.values()
    if not values:
        if group.is_finite and group.order() == 1:
            status = c.base.validation.connectivity
            return CoverConnectivity(status, explored=explored, note="자명한 군")
        return CoverConnectivity(
            Connectivity.DISCONNECTED,
            c.lift(1, group.generators[0]),
            explored,
            "전압이 모두 항등원",
        )

    if generates(values, group) is False:
        missing = _missing_generator(values, group) if not group.is_finite else None
        witness = c.lift(1, missing) if missing is not None else None
        return CoverConnectivity(
            Connectivity.DISCONNECTED, witness, explored, "전압이 군을 생성하지 않음"
        )

    loops, complete = holonomy_generators(c)
    verdict = generates(loops, group) if loops else False
    if verdict and c.base.validation.connectivity == Connectivity.CONNECTED:
        return CoverConnectivity(
            Connectivity.CONNECTED, explored=explored, note="기저 연결 + 홀로노미가 군을 생성"
        )
    if complete and verdict is False:
        missing = _missing_generator(loops, group) if not group.is_finite else None
        witness = c.lift(1, missing) if missing is not None else None
        return CoverConnectivity(
            Connectivity.DISCONNECTED, witness, explored, "홀로노미가 군을 생성하지 않음"
        )
    return CoverConnectivity(
        Connectivity.UNKNOWN, explored=explored, note=f"BFS 로 {explored} 개 정사각형 도달"
    )
