"""
errors.py - 예외 계층
오리가미 구성, 군 연산, 피복 생성, 실현 파이프라인, 텍스트 형식에서 발생하는 예외를 정의합니다.
반결정(semi-decidable) 결과(Unknown, RefutedAtDepth 등)는 예외가 아니라 값으로 반환됩니다.
"""

from __future__ import annotations

from typing import Any, Optional


class OrigamiError(Exception):
    """이 패키지의 모든 예외의 기반 클래스."""


# ── 검증 ─────────────────────────────────────────────────────────────

class ValidationError(OrigamiError):
    """σ, τ 쌍이 유효한 오리가미를 정의하지 않을 때."""


class NotConnected(ValidationError):
    """⟨σ,τ⟩ 가 추이적이지 않음. witness 는 1번 정사각형에서 도달할 수 없는 정사각형."""

    def __init__(self, witness: Any) -> None:
        super().__init__(f"연결되지 않은 오리가미: 정사각형 {witness} 에 도달할 수 없음")
        self.witness = witness


class DomainMismatch(ValidationError):
    """σ 와 τ 의 정의역이 서로 다르거나 선언된 정의역과 맞지 않음."""


class DegenerateDomain(ValidationError):
    """정사각형 수가 0 인 오리가미."""


class CycleBudgetExceeded(OrigamiError):
    """교환자 순환이 예산 안에서 닫히지 않음 (무한 순환일 수 있음)."""

    def __init__(self, start: Any, steps: int) -> None:
        super().__init__(f"정사각형 {start} 의 순환이 {steps} 단계 안에 닫히지 않음")
        self.start = start
        self.steps = steps


class OddParity(OrigamiError):
    """n − V 가 홀수: 유효한 입력에서는 일어날 수 없는 내부 불일치."""


# ── 군 ───────────────────────────────────────────────────────────────

class MixedGroupKinds(OrigamiError):
    """서로 다른 군의 원소를 섞어서 연산함."""


class CapExceeded(OrigamiError):
    """생성원 폐포가 상한을 넘음."""

    def __init__(self, cap: int) -> None:
        super().__init__(f"폐포 크기가 상한 {cap} 을 초과")
        self.cap = cap


class GroupSpecError(OrigamiError):
    """군 명세나 군 원소 텍스트를 해석할 수 없음."""


# ── 피복 ─────────────────────────────────────────────────────────────

class RegionTooSmall(OrigamiError):
    """평탄성 검사 영역이 전압 지지집합 주변의 교환자 순환을 덮지 못함."""

    def __init__(self, square: Any) -> None:
        super().__init__(f"검사 영역 밖의 정사각형 {square} 이 필요함")
        self.square = square


class NotFlat(OrigamiError):
    """전압 워드가 항등원이 아닌 꼭짓점이 있어 분기 피복이 됨."""

    def __init__(self, report: Any) -> None:
        super().__init__(f"평탄하지 않은 전압 할당: {report.describe()}")
        self.report = report


# ── 실현 ─────────────────────────────────────────────────────────────

class NotFound(OrigamiError):
    """주어진 정사각형 수 안에서 표지 기저(marker base)를 찾지 못함."""

    def __init__(self, bound: int) -> None:
        super().__init__(f"정사각형 {bound} 개 이하의 표지 기저가 없음")
        self.bound = bound


class NotGenerating(OrigamiError):
    """전압들이 군 전체를 생성하지 않음 (피복이 연결되지 않음)."""


class FlatnessFailed(OrigamiError):
    """구성상 평탄해야 할 전압 방식이 평탄하지 않음: 구현 오류."""


class CertificateFailed(OrigamiError):
    """자기동형군과 덱 작용의 일치를 인증하지 못함."""

    def __init__(self, detail: str, counterexample: Optional[Any] = None) -> None:
        super().__init__(detail)
        self.detail = detail
        self.counterexample = counterexample


# ── 텍스트 형식 ──────────────────────────────────────────────────────

class TextFormatError(OrigamiError):
    """오리가미 텍스트의 위치 정보가 있는 오류."""

    def __init__(self, line: int, column: int, message: str) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class ParseError(TextFormatError):
    """문법 오류."""


class SemanticError(TextFormatError):
    """범위를 벗어나거나 중복된 인덱스."""
