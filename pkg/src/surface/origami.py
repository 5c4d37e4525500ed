"""
origami.py - 오리가미(정사각형 타일 곡면) 모델
σ(오른쪽 이웃), τ(위쪽 이웃) 두 전단사로 주어진 오리가미의 유효성 검사, 교환자 순환(꼭짓점)과
국소 차수, 오일러 지표와 종수, 무한 오리가미의 유계 탐색(공)을 제공합니다.

교환자 규약: c = τ∘σ∘τ⁻¹∘σ⁻¹ (σ⁻¹ 을 먼저 적용). 정사각형 i 의 왼쪽 아래 꼭짓점을 반시계 방향으로
한 바퀴 도는 이동이며, 그 순환이 꼭짓점 하나에 대응합니다.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Optional, Union

from loguru import logger

from src.algebra.perm import (
    BudgetExceeded,
    FinitePerm,
    LazyBijection,
    canonical_cycle,
    cycle_decomposition,
    trace_cycle,
)
from src.errors import (
    CycleBudgetExceeded,
    DegenerateDomain,
    DomainMismatch,
    NotConnected,
    OddParity,
    ValidationError,
)

DEFAULT_CYCLE_BUDGET = 10_000
DEFAULT_SAMPLE_SQUARES = 100

Gluing = Union[FinitePerm, LazyBijection]


# ── 정의역과 검증 기록 ───────────────────────────────────────────────

@dataclass(frozen=True)
class Finite:
    n: int


@dataclass(frozen=True)
class Countable:
    pass


Domain = Union[Finite, Countable]
COUNTABLE = Countable()


class Connectivity(str, Enum):
    CONNECTED = "connected"
    DISCONNECTED = "disconnected"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ValidationRecord:
    """make_origami 가 수행한 검사 기록."""

    connectivity: Connectivity
    witness: Any = None                  # DISCONNECTED 일 때 도달 불가능한 정사각형
    commutator_finite: Optional[bool] = True
    cycle_budget: Optional[int] = None   # 무한 오리가미에서 사용한 순환 추적 예산
    squares_sampled: int = 0
    note: str = ""


# ── 오리가미 ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Origami:
    """
    σ(i)=j: i 의 오른쪽 변이 j 의 왼쪽 변에 붙음.
    τ(i)=j: i 의 위쪽 변이 j 의 아래쪽 변에 붙음.
    """

    sigma: Gluing
    tau: Gluing
    domain: Domain
    validation: ValidationRecord
    name: str = ""

    @property
    def is_finite(self) -> bool:
        return isinstance(self.domain, Finite)

    @property
    def n(self) -> Optional[int]:
        return self.domain.n if isinstance(self.domain, Finite) else None

    def squares(self) -> range:
        if not isinstance(self.domain, Finite):
            raise DomainMismatch("무한 오리가미의 정사각형은 열거할 수 없음")
        return range(1, self.domain.n + 1)

    def right(self, i: Any) -> Any:
        return self.sigma.forward(i)

    def left(self, i: Any) -> Any:
        return self.sigma.backward(i)

    def up(self, i: Any) -> Any:
        return self.tau.forward(i)

    def down(self, i: Any) -> Any:
        return self.tau.backward(i)

    def moves(self, i: Any) -> tuple[Any, Any, Any, Any]:
        """고정된 순서 (σ, σ⁻¹, τ, τ⁻¹) 의 이웃."""
        return (self.right(i), self.left(i), self.up(i), self.down(i))

    def __str__(self) -> str:
        if self.is_finite:
            return f"Origami(n={self.n}, sigma={self.sigma}, tau={self.tau})"
        return f"Origami(countable, {self.name or 'lazy'})"


MOVE_NAMES = ("sigma", "sigma^-1", "tau", "tau^-1")


def _reachable(sigma: FinitePerm, tau: FinitePerm) -> set[int]:
    seen = {1}
    queue = deque([1])
    while queue:
        i = queue.popleft()
        for j in (sigma.forward(i), sigma.backward(i), tau.forward(i), tau.backward(i)):
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return seen


def make_origami(
    sigma: Gluing,
    tau: Gluing,
    domain: Domain,
    *,
    require_connected: bool = True,
    cycle_budget: int = DEFAULT_CYCLE_BUDGET,
    sample_squares: Optional[Iterable[Any]] = None,
    known_connected: bool = False,
    name: str = "",
) -> Origami:
    """
    σ, τ 로부터 오리가미를 만들고 검증합니다.

    유한: BFS 로 연결성을 판정하고 (교환자 순환은 자동으로 유한),
    무한: sample_squares 의 교환자 순환을 예산 안에서 추적한 기록을 남깁니다.

    Raises:
        DegenerateDomain: n = 0
        DomainMismatch: σ, τ 의 정의역이 domain 과 맞지 않음
        NotConnected: 유한이고 연결되지 않았으며 require_connected 일 때
    """
    if isinstance(domain, Finite):
        if domain.n < 1:
            raise DegenerateDomain("정사각형이 하나도 없는 오리가미")
        for label, perm in (("sigma", sigma), ("tau", tau)):
            if not isinstance(perm, FinitePerm):
                raise DomainMismatch(f"유한 오리가미의 {label} 는 FinitePerm 이어야 함")
            if perm.degree != domain.n:
                raise DomainMismatch(f"{label} 의 차수 {perm.degree} != n={domain.n}")

        reached = _reachable(sigma, tau)  # type: ignore[arg-type]
        if len(reached) == domain.n:
            record = ValidationRecord(Connectivity.CONNECTED)
        else:
            witness = min(set(range(1, domain.n + 1)) - reached)
            if require_connected:
                raise NotConnected(witness)
            record = ValidationRecord(Connectivity.DISCONNECTED, witness=witness)
        return Origami(sigma, tau, domain, record, name)

    if isinstance(sigma, FinitePerm) or isinstance(tau, FinitePerm):
        raise DomainMismatch("무한 오리가미에는 지연 전단사가 필요함 (FinitePerm.as_lazy 사용)")

    origami = Origami(
        sigma, tau, domain,
        ValidationRecord(Connectivity.UNKNOWN, commutator_finite=None),
        name,
    )
    samples = list(sample_squares) if sample_squares is not None else list(
        range(1, DEFAULT_SAMPLE_SQUARES + 1)
    )
    finite = True
    for i in samples:
        if isinstance(trace_cycle(_CommutatorMap(origami), i, cycle_budget), BudgetExceeded):
            logger.warning(f"정사각형 {i} 의 교환자 순환이 {cycle_budget} 단계 안에 닫히지 않음")
            finite = False
            break
    record = ValidationRecord(
        Connectivity.CONNECTED if known_connected else Connectivity.UNKNOWN,
        commutator_finite=finite,
        cycle_budget=cycle_budget,
        squares_sampled=len(samples),
        note="연결성은 구성으로 보장됨" if known_connected else "",
    )
    return Origami(sigma, tau, domain, record, name)


# ── 교환자와 특이점 ─────────────────────────────────────────────────

def commutator_step(o: Origami, i: Any) -> Any:
    """c(i) = τ(σ(τ⁻¹(σ⁻¹(i))))."""
    return o.up(o.right(o.down(o.left(i))))


def commutator_inverse_step(o: Origami, i: Any) -> Any:
    """c⁻¹(i) = σ(τ(σ⁻¹(τ⁻¹(i))))."""
    return o.right(o.up(o.left(o.down(i))))


@dataclass(frozen=True)
class _CommutatorMap:
    origami: Origami
    inverse: bool = False

    def forward(self, i: Any) -> Any:
        if self.inverse:
            return commutator_inverse_step(self.origami, i)
        return commutator_step(self.origami, i)

    def backward(self, i: Any) -> Any:
        if self.inverse:
            return commutator_step(self.origami, i)
        return commutator_inverse_step(self.origami, i)


@dataclass(frozen=True)
class Singularity:
    """교환자 순환 하나 = 유도 그래프의 꼭짓점 하나. 국소 차수 k, 원뿔각 2πk."""

    cycle: tuple

    @property
    def degree(self) -> int:
        return len(self.cycle)

    @property
    def cone_angle(self) -> float:
        return 2 * math.pi * self.degree

    def __contains__(self, square: Any) -> bool:
        return square in self.cycle


def singularity_at(o: Origami, i: Any, budget: int = DEFAULT_CYCLE_BUDGET) -> Singularity:
    """
    정사각형 i 의 왼쪽 아래 꼭짓점에 해당하는 교환자 순환을 추적합니다.

    Raises:
        CycleBudgetExceeded: 예산 안에 순환이 닫히지 않음
    """
    result = trace_cycle(_CommutatorMap(o), i, budget)
    if isinstance(result, BudgetExceeded):
        raise CycleBudgetExceeded(i, result.steps)
    return Singularity(canonical_cycle(result.points))


def singularities_meeting(
    o: Origami,
    squares: Iterable[Any],
    budget: int = DEFAULT_CYCLE_BUDGET,
) -> list[Singularity]:
    """주어진 정사각형들을 지나는 서로 다른 교환자 순환들 (처음 만난 순서)."""
    found: list[Singularity] = []
    covered: set[Any] = set()
    for i in squares:
        if i in covered:
            continue
        s = singularity_at(o, i, budget)
        covered.update(s.cycle)
        found.append(s)
    return found


def commutator_perm(o: Origami, inverse: bool = False) -> FinitePerm:
    """유한 오리가미의 교환자 c (또는 c⁻¹) 를 순열로 반환합니다."""
    step = commutator_inverse_step if inverse else commutator_step
    return FinitePerm(tuple(step(o, i) for i in o.squares()))


def singularities(o: Origami) -> list[Singularity]:
    """유한 오리가미의 모든 꼭짓점 (최소 정사각형 순)."""
    return [Singularity(c) for c in cycle_decomposition(commutator_perm(o))]


def singularity_profile(o: Origami) -> tuple[int, ...]:
    """국소 차수의 다중집합 (오름차순 튜플)."""
    return tuple(sorted(s.degree for s in singularities(o)))


def _require_connected(o: Origami) -> None:
    if o.validation.connectivity == Connectivity.DISCONNECTED:
        raise NotConnected(o.validation.witness)


def euler_characteristic(o: Origami) -> int:
    """χ = V − E + F = V − 2n + n."""
    _require_connected(o)
    return len(singularities(o)) - len(o.squares())


def genus(o: Origami) -> int:
    """g = 1 + (n − V)/2."""
    _require_connected(o)
    n = len(o.squares())
    excess = n - len(singularities(o))
    if excess % 2:
        raise OddParity(f"n − V = {excess} 가 홀수")
    return 1 + excess // 2


# ── 유계 탐색 ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class Ball:
    """base 에서 σ, σ⁻¹, τ, τ⁻¹ 로 radius 걸음 이내의 정사각형 (발견 순서)."""

    base: Any
    radius: Optional[int]
    squares: tuple
    depth: dict = field(compare=False, hash=False, repr=False)

    def __contains__(self, square: Any) -> bool:
        return square in self.depth

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)


def ball(o: Origami, base: Any, radius: Optional[int]) -> Ball:
    """
    BFS 로 공을 만듭니다. radius=None 은 무제한이며 유한 오리가미에서만 허용됩니다.
    """
    if radius is None and not o.is_finite:
        raise ValidationError("무한 오리가미의 공에는 반경이 필요함")
    if o.is_finite and base not in o.squares():
        raise DomainMismatch(f"정사각형 {base} 이 정의역 밖")
    depth = {base: 0}
    order = [base]
    queue = deque([base])
    while queue:
        i = queue.popleft()
        d = depth[i]
        if radius is not None and d >= radius:
            continue
        for j in o.moves(i):
            if j not in depth:
                depth[j] = d + 1
                order.append(j)
                queue.append(j)
    return Ball(base, radius, tuple(order), depth)
