"""
perm.py - 유한 순열과 지연 전단사
정사각형 번호(1부터 시작)에 작용하는 유한 순열, 양의 정수 위의 지연 평가 전단사,
그리고 예산이 있는 순환 추적을 제공합니다.

합성 규약: p.compose(q) 는 p∘q, 즉 q 를 먼저 적용합니다 (오른쪽에서 왼쪽).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Protocol, Sequence, Union

from src.errors import ValidationError

# 정사각형 라벨: 기본 오리가미는 양의 정수, 무한 피복은 (정사각형, 군 원소) 쌍
Square = Hashable


class Bijection(Protocol):
    """정사각형 집합 위의 전단사가 제공해야 하는 연산."""

    def forward(self, i: Any) -> Any: ...

    def backward(self, i: Any) -> Any: ...


def square_key(square: Any) -> tuple:
    """정수 라벨과 (정사각형, 군 원소) 쌍 라벨을 함께 정렬하기 위한 키."""
    if isinstance(square, tuple):
        base, elem = square
        return (base, tuple(getattr(elem, "key", elem)))
    return (square, ())


def canonical_cycle(points: Sequence[Any]) -> tuple:
    """최소 원소가 맨 앞에 오도록 순환을 회전합니다."""
    if not points:
        return ()
    start = min(range(len(points)), key=lambda k: square_key(points[k]))
    return tuple(points[start:]) + tuple(points[:start])


# ── 유한 순열 ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class FinitePerm:
    """{1..n} 의 순열. images[i-1] 이 i 의 상."""

    images: tuple[int, ...]
    _inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValidationError(f"{{1..{n}}} 의 전단사가 아님: {images}")
        inverse = [0] * n
        for i, j in enumerate(images, start=1):
            inverse[j - 1] = i
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_inverse", tuple(inverse))

    # ── 생성 ─────────────────────────────────────────────────────────

    @classmethod
    def identity(cls, n: int) -> "FinitePerm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "FinitePerm":
        """순환 목록으로부터 순열을 만듭니다. 빠진 점은 고정점입니다."""
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cycle in cycles:
            for k, point in enumerate(cycle):
                if not 1 <= point <= n:
                    raise ValidationError(f"인덱스 {point} 가 1..{n} 범위 밖")
                if point in seen:
                    raise ValidationError(f"인덱스 {point} 가 중복됨")
                seen.add(point)
                images[point - 1] = cycle[(k + 1) % len(cycle)]
        return cls(tuple(images))

    # ── 평가 ─────────────────────────────────────────────────────────

    @property
    def degree(self) -> int:
        return len(self.images)

    def forward(self, i: int) -> int:
        return self.images[i - 1]

    def backward(self, i: int) -> int:
        return self._inverse[i - 1]

    __call__ = forward

    # ── 대수 ─────────────────────────────────────────────────────────

    def compose(self, other: "FinitePerm") -> "FinitePerm":
        """self∘other (other 를 먼저 적용)."""
        if self.degree != other.degree:
            raise ValidationError("차수가 다른 순열은 합성할 수 없음")
        return FinitePerm(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "FinitePerm":
        return FinitePerm(self._inverse)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images, start=1) if i == j]

    def cycles(self) -> list[tuple[int, ...]]:
        return cycle_decomposition(self)

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self) -> int:
        from math import lcm

        return lcm(*self.cycle_type()) if self.degree else 1

    def as_lazy(self, name: str = "") -> "LazyBijection":
        """n 보다 큰 정수는 고정하는 지연 전단사로 감쌉니다."""
        n = self.degree

        def fwd(i: int) -> int:
            return self.forward(i) if i <= n else i

        def bwd(i: int) -> int:
            return self.backward(i) if i <= n else i

        return LazyBijection(fwd, bwd, name or f"finite({self})")

    def __str__(self) -> str:
        return "".join("(" + ",".join(str(p) for p in c) + ")" for c in self.cycles())


def cycle_decomposition(p: FinitePerm) -> list[tuple[int, ...]]:
    """
    순열을 서로소 순환으로 분해합니다.

    각 순환은 최소 원소로 시작하고, 순환들은 최소 원소 순으로 정렬됩니다.
    """
    seen = [False] * (p.degree + 1)
    cycles: list[tuple[int, ...]] = []
    for start in range(1, p.degree + 1):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        current = p.forward(start)
        while current != start:
            cycle.append(current)
            seen[current] = True
            current = p.forward(current)
        cycles.append(tuple(cycle))
    return cycles


# ── 지연 전단사 ─────────────────────────────────────────────────────

@dataclass(frozen=True)
class LazyBijection:
    """
    규칙으로 주어진 (무한) 정사각형 집합 위의 전단사.

    역방향 규칙을 명시적으로 가지므로 역상 평가가 O(1) 입니다.
    checked=True 이면 매 평가마다 역함수 성질을 검사합니다.
    """

    forward_rule: Callable[[Any], Any]
    backward_rule: Callable[[Any], Any]
    name: str = "lazy"
    checked: bool = False

    def forward(self, i: Any) -> Any:
        j = self.forward_rule(i)
        if self.checked and self.backward_rule(j) != i:
            raise ValidationError(f"{self.name}: backward(forward({i})) != {i}")
        return j

    def backward(self, i: Any) -> Any:
        j = self.backward_rule(i)
        if self.checked and self.forward_rule(j) != i:
            raise ValidationError(f"{self.name}: forward(backward({i})) != {i}")
        return j

    __call__ = forward

    def with_checks(self, checked: bool = True) -> "LazyBijection":
        return LazyBijection(self.forward_rule, self.backward_rule, self.name, checked)


# ── 순환 추적 ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class Cycle:
    """start 에서 시작하는 완전한 순환."""

    points: tuple

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class BudgetExceeded:
    """순환이 steps 단계 안에 닫히지 않음 (무한일 수 있음)."""

    steps: int


def trace_cycle(
    b: Union[Bijection, FinitePerm, LazyBijection],
    start: Any,
    budget: int,
) -> Union[Cycle, BudgetExceeded]:
    """
    start 를 지나는 순환을 최대 budget 번의 적용으로 추적합니다.

    Args:
        b: forward 를 제공하는 전단사
        start: 시작 정사각형
        budget: 허용되는 최대 적용 횟수 (≥ 1)

    Returns:
        닫히면 Cycle, 아니면 BudgetExceeded(budget)
    """
    if budget < 1:
        raise ValueError("budget 은 1 이상이어야 합니다")
    points = [start]
    current = b.forward(start)
    steps = 1
    while current != start:
        if steps >= budget:
            return BudgetExceeded(budget)
        points.append(current)
        current = b.forward(current)
        steps += 1
    return Cycle(tuple(points))
