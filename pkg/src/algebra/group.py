"""
group.py - 덱 군으로 쓰이는 추상 군
유한 순열군, 자유 아벨 군 ℤᵏ, 자유군 F_r 세 가지 인스턴스를 정규형 키로 다룹니다.

순열 원소의 곱 규약은 오른쪽에서 왼쪽: (g·h)(x) = g(h(x)).
모든 순열 곱은 _compose_images 하나를 통해서만 계산됩니다.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from loguru import logger

from src.algebra.lattice import row_reduce, spans_full_lattice
from src.algebra.perm import FinitePerm
from src.errors import CapExceeded, MixedGroupKinds

DEFAULT_CLOSURE_CAP = 1_000_000


class GroupKind(str, Enum):
    """지원하는 군의 종류."""

    PERMUTATION = "perm"          # 유한 순열군 (rank = 작용하는 점의 수)
    FREE_ABELIAN = "free_abelian"  # ℤᵏ (rank = k)
    FREE = "free"                 # F_r (rank = r)


# ── 정규형 도우미 ───────────────────────────────────────────────────

def _compose_images(g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
    """(g·h)(x) = g(h(x)). 순열 곱의 유일한 구현."""
    return tuple(g[h[i] - 1] for i in range(len(h)))


def _invert_images(g: tuple[int, ...]) -> tuple[int, ...]:
    inverse = [0] * len(g)
    for i, j in enumerate(g, start=1):
        inverse[j - 1] = i
    return tuple(inverse)


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    """인접한 x, x⁻¹ 쌍을 지워 축약 워드를 만듭니다. 글자 j>0 은 a_j, -j 는 a_j⁻¹."""
    stack: list[int] = []
    for letter in letters:
        if letter == 0:
            raise ValueError("자유군 글자 0 은 허용되지 않음")
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def _letter_name(letter: int) -> str:
    name = chr(ord("a") + abs(letter) - 1)
    return name if letter > 0 else name.upper()


# ── 원소 ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class GroupElem:
    """
    정규형 키로 표현된 군 원소.

    - PERMUTATION: 상(image) 표 (1부터 시작)
    - FREE_ABELIAN: 정수 벡터
    - FREE: 축약 워드 (글자 ±j)
    """

    kind: GroupKind
    rank: int
    key: tuple[int, ...]

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        return multiply(self, other)

    def __invert__(self) -> "GroupElem":
        return invert(self)

    @property
    def is_identity(self) -> bool:
        return self == identity_of(self.kind, self.rank)

    def as_perm(self) -> FinitePerm:
        if self.kind != GroupKind.PERMUTATION:
            raise MixedGroupKinds(f"순열 원소가 아님: {self}")
        return FinitePerm(self.key)

    def __str__(self) -> str:
        if self.kind == GroupKind.PERMUTATION:
            cycles = [c for c in FinitePerm(self.key).cycles() if len(c) > 1]
            return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles) or "()"
        if self.kind == GroupKind.FREE_ABELIAN:
            if self.rank == 1:
                return str(self.key[0])
            return "(" + ",".join(map(str, self.key)) + ")"
        return "".join(_letter_name(x) for x in self.key) or "1"


def identity_of(kind: GroupKind, rank: int) -> GroupElem:
    if kind == GroupKind.PERMUTATION:
        return GroupElem(kind, rank, tuple(range(1, rank + 1)))
    if kind == GroupKind.FREE_ABELIAN:
        return GroupElem(kind, rank, (0,) * rank)
    return GroupElem(kind, rank, ())


def perm_elem(images: Sequence[int] | FinitePerm) -> GroupElem:
    """순열(상 표 또는 FinitePerm)로부터 원소를 만듭니다."""
    perm = images if isinstance(images, FinitePerm) else FinitePerm(tuple(images))
    return GroupElem(GroupKind.PERMUTATION, perm.degree, perm.images)


def vector(values: Sequence[int]) -> GroupElem:
    return GroupElem(GroupKind.FREE_ABELIAN, len(values), tuple(int(v) for v in values))


def free_word(letters: Sequence[int], rank: int) -> GroupElem:
    """글자 목록을 축약하여 자유군 원소를 만듭니다."""
    for letter in letters:
        if not 1 <= abs(letter) <= rank:
            raise ValueError(f"F_{rank} 에 없는 글자: {letter}")
    return GroupElem(GroupKind.FREE, rank, _free_reduce(letters))


def normal_form(g: GroupElem) -> GroupElem:
    """키를 다시 정규화합니다. 정규형에 대해서는 항등 함수입니다."""
    if g.kind == GroupKind.PERMUTATION:
        return perm_elem(g.key)
    if g.kind == GroupKind.FREE_ABELIAN:
        return vector(g.key)
    return free_word(g.key, g.rank)


def _check_same(g: GroupElem, h: GroupElem) -> None:
    if g.kind != h.kind or g.rank != h.rank:
        raise MixedGroupKinds(f"서로 다른 군의 원소: {g.kind.value}/{g.rank} 와 {h.kind.value}/{h.rank}")


def multiply(g: GroupElem, h: GroupElem) -> GroupElem:
    _check_same(g, h)
    if g.kind == GroupKind.PERMUTATION:
        return GroupElem(g.kind, g.rank, _compose_images(g.key, h.key))
    if g.kind == GroupKind.FREE_ABELIAN:
        return GroupElem(g.kind, g.rank, tuple(a + b for a, b in zip(g.key, h.key)))
    return GroupElem(g.kind, g.rank, _free_reduce(g.key + h.key))


def invert(g: GroupElem) -> GroupElem:
    if g.kind == GroupKind.PERMUTATION:
        return GroupElem(g.kind, g.rank, _invert_images(g.key))
    if g.kind == GroupKind.FREE_ABELIAN:
        return GroupElem(g.kind, g.rank, tuple(-a for a in g.key))
    return GroupElem(g.kind, g.rank, tuple(-x for x in reversed(g.key)))


def element_order(g: GroupElem) -> Optional[int]:
    """원소의 위수. 무한 위수이면 None."""
    if g.kind == GroupKind.PERMUTATION:
        return g.as_perm().order()
    return 1 if g.is_identity else None


# ── 군 ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Group:
    """생성원과 함께 주어진 군."""

    kind: GroupKind
    rank: int
    generators: tuple[GroupElem, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValueError("생성원 목록이 비어 있음")
        for g in self.generators:
            if g.kind != self.kind or g.rank != self.rank:
                raise MixedGroupKinds(f"{self.label} 에 속하지 않는 생성원: {g}")

    @classmethod
    def permutation(
        cls,
        generators: Sequence[FinitePerm | Sequence[int]],
        name: str = "",
    ) -> "Group":
        gens = tuple(perm_elem(g) for g in generators)
        degree = gens[0].rank if gens else 0
        return cls(GroupKind.PERMUTATION, degree, gens, name)

    @classmethod
    def trivial(cls) -> "Group":
        return cls.permutation([FinitePerm.identity(1)], name="1")

    @classmethod
    def free_abelian(cls, k: int) -> "Group":
        basis = tuple(vector([1 if j == i else 0 for j in range(k)]) for i in range(k))
        return cls(GroupKind.FREE_ABELIAN, k, basis, "Z" if k == 1 else f"Z^{k}")

    @classmethod
    def free(cls, r: int) -> "Group":
        basis = tuple(free_word([j], r) for j in range(1, r + 1))
        return cls(GroupKind.FREE, r, basis, f"F_{r}")

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind == GroupKind.PERMUTATION:
            return "perm<" + "; ".join(str(g) for g in self.generators) + ">"
        return f"{self.kind.value}({self.rank})"

    @property
    def is_finite(self) -> bool:
        return self.kind == GroupKind.PERMUTATION

    def identity(self) -> GroupElem:
        return identity_of(self.kind, self.rank)

    def contains(self, g: GroupElem) -> bool:
        """원소가 이 군의 종류와 계수에 속하는지 (순열군은 폐포 소속까지는 보지 않음)."""
        return g.kind == self.kind and g.rank == self.rank

    def elements(self, cap: int = DEFAULT_CLOSURE_CAP) -> list[GroupElem]:
        return close_generators(list(self.generators), cap)

    def order(self, cap: int = DEFAULT_CLOSURE_CAP) -> Optional[int]:
        return len(self.elements(cap)) if self.is_finite else None


def close_generators(
    gens: Sequence[GroupElem],
    cap: int = DEFAULT_CLOSURE_CAP,
    identity: Optional[GroupElem] = None,
) -> list[GroupElem]:
    """
    유한 순열군 생성원의 폐포(생성된 부분군)를 BFS 로 열거합니다.

    Args:
        gens: 생성원 목록
        cap: 허용하는 최대 원소 수
        identity: gens 가 비어 있을 때 사용할 항등원

    Returns:
        항등원으로 시작하는 중복 없는 원소 목록 (길이 = 군의 위수)
    """
    if identity is None:
        if not gens:
            raise ValueError("생성원이 없으면 항등원을 지정해야 합니다")
        identity = identity_of(gens[0].kind, gens[0].rank)
    if identity.kind != GroupKind.PERMUTATION:
        raise MixedGroupKinds("폐포 열거는 유한 순열군에서만 가능합니다")
    for g in gens:
        _check_same(identity, g)

    elements = [identity]
    seen = {identity}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > cap:
                    raise CapExceeded(cap)
    logger.debug(f"폐포 열거 완료: 위수 {len(elements)}")
    return elements


def generates(gens: Sequence[GroupElem], group: Group) -> Optional[bool]:
    """
    gens 가 group 전체를 생성하는지 판정합니다.

    Returns:
        True / False, 판정할 수 없으면 None (자유군에서 표준 기저가 아닌 경우)
    """
    for g in gens:
        if not group.contains(g):
            raise MixedGroupKinds(f"{group.label} 에 속하지 않는 원소: {g}")

    if group.kind == GroupKind.PERMUTATION:
        sub = close_generators(list(gens), identity=group.identity())
        return len(sub) == len(group.elements())

    if group.kind == GroupKind.FREE_ABELIAN:
        return spans_full_lattice([g.key for g in gens], group.rank)

    # 자유군: 표준 기저의 모든 글자(역원 무관)를 포함하면 True
    letters = {abs(g.key[0]) for g in gens if len(g.key) == 1}
    if letters >= set(range(1, group.rank + 1)):
        return True
    # 아벨화가 ℤʳ 를 생성하지 못하면 확실히 생성하지 않음
    exponent_sums = [
        [sum((1 if x > 0 else -1) for x in g.key if abs(x) == j) for j in range(1, group.rank + 1)]
        for g in gens
    ]
    if row_reduce(exponent_sums, group.rank).index() != 1:
        return False
    return None
