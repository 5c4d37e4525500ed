"""
builtins.py - 내장 오리가미
무한 계단(staircase) 오리가미와 작은 유한 예제들을 제공합니다.

계단 오리가미:
    σ = (1)(2)(3,4)(5)(6,7)(8)(9,10)…   (1, 2 와 3k+2 는 고정, (3k, 3k+1) 교환)
    τ = (1,2,3)(4,5,6)(7,8,9)…          ((3k+1, 3k+2, 3k+3) 순환)
2번 정사각형의 꼭짓점은 국소 차수 1, (1,5) 는 차수 2, 나머지는 모두 차수 3 입니다.
"""

from __future__ import annotations

from typing import Callable

from src.algebra.perm import FinitePerm, LazyBijection
from src.errors import ValidationError
from src.surface.origami import COUNTABLE, Finite, Origami, make_origami


def _staircase_sigma(i: int) -> int:
    if i <= 2 or i % 3 == 2:
        return i
    return i + 1 if i % 3 == 0 else i - 1


def _staircase_tau(i: int) -> int:
    return i - 2 if i % 3 == 0 else i + 1


def _staircase_tau_inverse(i: int) -> int:
    return i + 2 if i % 3 == 1 else i - 1


def _positive(rule: Callable[[int], int]) -> Callable[[int], int]:
    def wrapped(i: int) -> int:
        if not isinstance(i, int) or i < 1:
            raise ValidationError(f"양의 정수 정사각형이 아님: {i}")
        return rule(i)

    return wrapped


def lemma1_sigma(checked: bool = False) -> LazyBijection:
    rule = _positive(_staircase_sigma)
    return LazyBijection(rule, rule, "staircase-sigma", checked)


def lemma1_tau(checked: bool = False) -> LazyBijection:
    return LazyBijection(
        _positive(_staircase_tau),
        _positive(_staircase_tau_inverse),
        "staircase-tau",
        checked,
    )


def lemma1_origami(checked: bool = False) -> Origami:
    """단 하나의 차수 1 꼭짓점을 갖는 무한 계단 오리가미 (Loch Ness monster 위의 오리가미)."""
    return make_origami(
        lemma1_sigma(checked),
        lemma1_tau(checked),
        COUNTABLE,
        known_connected=True,
        name="lemma1",
    )


def torus() -> Origami:
    """정사각형 하나짜리 토러스."""
    one = FinitePerm.identity(1)
    return make_origami(one, one, Finite(1), name="torus")


def countable_torus() -> Origami:
    """무한 정의역에 감싼 토러스: 각 정사각형이 홀로 토러스를 이룸 (1번에서 본 공은 {1})."""
    one = FinitePerm.identity(1)
    return make_origami(one.as_lazy("id"), one.as_lazy("id"), COUNTABLE, name="torus")


BUILTIN_COUNTABLE: dict[str, Callable[[], Origami]] = {
    "lemma1": lemma1_origami,
    "staircase": lemma1_origami,
    "torus": countable_torus,
}


def builtin_countable(name: str) -> Origami:
    """이름으로 내장 무한 오리가미를 찾습니다."""
    try:
        return BUILTIN_COUNTABLE[name]()
    except KeyError:
        raise ValidationError(
            f"알 수 없는 내장 오리가미: {name} (가능: {', '.join(sorted(BUILTIN_COUNTABLE))})"
        ) from None
