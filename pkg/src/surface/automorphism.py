"""
automorphism.py - 평행이동 자기동형
⟨σ,τ⟩ 의 중심화자, 즉 σ, τ 와 교환하는 정사각형 치환을 찾습니다.
연결된 오리가미에서 자기동형은 한 정사각형의 상으로 결정되므로, 씨앗(seed) 하나에서
BFS 로 사상을 전파하며 모순을 찾습니다. 유한이면 정확히, 무한이면 반경까지 인증합니다.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Optional, Union

from loguru import logger

from src.algebra.perm import FinitePerm, square_key
from src.errors import CycleBudgetExceeded, NotConnected, ValidationError
from src.surface.origami import (
    DEFAULT_CYCLE_BUDGET,
    MOVE_NAMES,
    Connectivity,
    Origami,
    singularity_at,
)


@dataclass(frozen=True)
class TranslationMap:
    """탐색한 영역 위의 후보 자기동형. certified_radius=None 이면 전체(Total)."""

    seed: tuple[Any, Any]
    table: dict = field(hash=False)
    certified_radius: Optional[int] = None

    @property
    def is_total(self) -> bool:
        return self.certified_radius is None

    def __call__(self, square: Any) -> Any:
        return self.table[square]

    def to_perm(self, n: int) -> FinitePerm:
        return FinitePerm(tuple(self.table[i] for i in range(1, n + 1)))


@dataclass(frozen=True)
class Conflict:
    """사상 전파 중 발견한 모순."""

    square: Any
    move: str
    expected: Any
    found: Any
    kind: str  # "inconsistent" | "non-injective" | "degree"

    def describe(self) -> str:
        if self.kind == "degree":
            return f"꼭짓점 차수 불일치: 기준 차수 {self.expected}, 정사각형 {self.square} 의 차수 {self.found}"
        if self.kind == "non-injective":
            return f"단사 아님: {self.move} 로 {self.square} 와 {self.found} 가 같은 상 {self.expected} 으로 감"
        return f"정사각형 {self.square} 의 {self.move} 상 불일치: {self.expected} != {self.found}"


@dataclass(frozen=True)
class Total:
    map: TranslationMap


@dataclass(frozen=True)
class CertifiedToRadius:
    map: TranslationMap
    radius: int

    def describe(self) -> str:
        return f"no obstruction found within radius {self.radius}"


@dataclass(frozen=True)
class RefutedAtDepth:
    depth: int
    conflict: Conflict


AutVerdict = Union[Total, CertifiedToRadius, RefutedAtDepth]


def _move_functions(o: Origami) -> tuple[Callable[[Any], Any], ...]:
    return (o.right, o.left, o.up, o.down)


def extend_translation(
    o: Origami,
    base: Any,
    image: Any,
    radius: Optional[int] = None,
) -> AutVerdict:
    """
    base ↦ image 를 σ±, τ± 를 따라 전파하고 일관성과 단사성을 검사합니다.

    Args:
        o: 오리가미
        base: 기준 정사각형
        image: base 의 후보 상
        radius: 탐색 반경 (None 은 유한 오리가미 전체)

    Returns:
        Total / CertifiedToRadius / RefutedAtDepth
    """
    if radius is None and not o.is_finite:
        raise ValidationError("무한 오리가미에는 반경이 필요함")

    moves = _move_functions(o)
    table: dict[Any, Any] = {base: image}
    preimage: dict[Any, Any] = {image: base}
    depth = {base: 0}
    queue = deque([base])
    cut = False

    while queue:
        s = queue.popleft()
        d = depth[s]
        if radius is not None and d >= radius:
            cut = True
            continue
        t = table[s]
        for name, move in zip(MOVE_NAMES, moves):
            neighbor = move(s)
            expected = move(t)
            if neighbor in table:
                if table[neighbor] != expected:
                    return RefutedAtDepth(
                        d + 1, Conflict(neighbor, name, expected, table[neighbor], "inconsistent")
                    )
                continue
            if expected in preimage:
                return RefutedAtDepth(
                    d + 1, Conflict(neighbor, name, expected, preimage[expected], "non-injective")
                )
            table[neighbor] = expected
            preimage[expected] = neighbor
            depth[neighbor] = d + 1
            queue.append(neighbor)

    if o.is_finite and not cut:
        if len(table) != o.n:
            missing = min(set(o.squares()) - set(table))
            raise NotConnected(missing)
        return Total(TranslationMap((base, image), table))
    assert radius is not None
    return CertifiedToRadius(TranslationMap((base, image), table, radius), radius)


def automorphism_group(o: Origami) -> list[FinitePerm]:
    """
    유한 연결 오리가미의 Aut(O): σ, τ 와 교환하는 모든 치환.

    정사각형 1 의 가능한 상 n 개 각각에 대해 extend_translation 을 실행합니다 (O(n²)).
    """
    if not o.is_finite:
        raise ValidationError("automorphism_group 은 유한 오리가미 전용")
    if o.validation.connectivity != Connectivity.CONNECTED:
        raise NotConnected(o.validation.witness)
    n = o.n
    assert n is not None
    group: list[FinitePerm] = []
    for j in o.squares():
        verdict = extend_translation(o, 1, j)
        if isinstance(verdict, Total):
            group.append(verdict.map.to_perm(n))
    logger.debug(f"자기동형군 위수 {len(group)} (정사각형 {n} 개)")
    return group


def bounded_aut_search(
    o: Origami,
    base: Any,
    radius: int,
    seed_images: Iterable[Any],
    budget: int = DEFAULT_CYCLE_BUDGET,
) -> dict[Any, AutVerdict]:
    """
    씨앗마다 extend_translation 을 실행합니다 (정사각형 순서대로).

    base 와 씨앗의 왼쪽 아래 꼭짓점 차수가 다르면 전파 없이 깊이 0 에서 반박합니다.
    """
    base_degree = singularity_at(o, base, budget).degree
    verdicts: dict[Any, AutVerdict] = {}
    for seed in sorted(set(seed_images), key=square_key):
        try:
            seed_degree = singularity_at(o, seed, budget).degree
        except CycleBudgetExceeded:
            seed_degree = -1
        if seed_degree != base_degree:
            verdicts[seed] = RefutedAtDepth(
                0, Conflict(seed, "corner", base_degree, seed_degree, "degree")
            )
            continue
        verdicts[seed] = extend_translation(o, base, seed, radius)
        logger.debug(f"씨앗 {seed}: {type(verdicts[seed]).__name__}")
    return verdicts


def translation_conflict(
    o: Origami,
    mapping: Union[Mapping[Any, Any], Callable[[Any], Any]],
    squares: Iterable[Any],
) -> Optional[Conflict]:
    """
    mapping 이 squares 위에서 σ±, τ± 와 교환하고 단사인지 검사합니다.

    mapping 이 dict 이면 양 끝이 모두 정의된 변만 검사합니다.
    """
    if isinstance(mapping, Mapping):
        table = mapping

        def lookup(s: Any) -> Any:
            return table.get(s)
    else:
        lookup = mapping

    moves = _move_functions(o)
    seen: dict[Any, Any] = {}
    for s in squares:
        t = lookup(s)
        if t is None:
            continue
        if t in seen and seen[t] != s:
            return Conflict(s, "map", t, seen[t], "non-injective")
        seen[t] = s
        for name, move in zip(MOVE_NAMES, moves):
            mapped = lookup(move(s))
            if mapped is None:
                continue
            if mapped != move(t):
                return Conflict(move(s), name, move(t), mapped, "inconsistent")
    return None


def is_automorphism(
    o: Origami,
    mapping: Union[Mapping[Any, Any], Callable[[Any], Any]],
    squares: Iterable[Any],
) -> bool:
    return translation_conflict(o, mapping, squares) is None


def preserves_degrees(
    o: Origami,
    tmap: TranslationMap,
    budget: int = DEFAULT_CYCLE_BUDGET,
) -> bool:
    """탐색 영역에서 각 정사각형 꼭짓점의 차수가 상의 차수와 같은지 (표지 강성)."""
    for s, t in tmap.table.items():
        if singularity_at(o, s, budget).degree != singularity_at(o, t, budget).degree:
            return False
    return True
