"""
pipeline.py - 자기동형군 실현 파이프라인
주어진 군 G 에 대해 Aut(O) ≅ G 인 오리가미 O 를 만들고, 기계로 확인할 수 있는 인증서를 함께 돌려줍니다.

- 유한 G: 표지 기저 위의 유한 피복, Aut 와 덱 작용의 집합 일치로 정확히 인증
- 무한 G (ℤᵏ, F_r): 무한 계단 오리가미 위의 피복, 반경까지의 유계 인증
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, NamedTuple, Optional, Union

from loguru import logger
from tenacity import RetryCallState, Retrying, retry_if_exception_type, stop_after_attempt

from src.algebra.group import Group, GroupElem
from src.algebra.perm import FinitePerm, square_key
from src.cover.covering import CoverOrigami, build_cover, check_cover_connected, deck_map
from src.cover.voltage import check_flat, loop_slot_voltages
from src.errors import (
    CertificateFailed,
    FlatnessFailed,
    NotFlat,
    NotFound,
    NotGenerating,
    ValidationError,
)
from src.realize.marker import iter_marker_bases
from src.settings import BudgetSettings, RealizeSettings
from src.surface.automorphism import (
    CertifiedToRadius,
    RefutedAtDepth,
    Total,
    automorphism_group,
    bounded_aut_search,
    preserves_degrees,
    translation_conflict,
)
from src.surface.builtins import lemma1_origami
from src.surface.origami import Connectivity, ball, singularity_at


@dataclass(frozen=True)
class ExactCertificate:
    """Aut(cover) 와 덱 변환 집합이 순열로서 같음."""

    aut: tuple[FinitePerm, ...]
    deck: tuple[FinitePerm, ...]
    base_label: str
    attempts: int

    kind = "exact"

    @property
    def order(self) -> int:
        return len(self.aut)


@dataclass(frozen=True)
class BoundedCertificate:
    """
    반경 radius 까지의 유계 인증.

    덱 원소는 그 반경의 공에서 자기동형 방정식을 만족하고,
    seed_radius 공 안의 덱이 아닌 씨앗은 모두 반박되었습니다.
    증명이 아니라 "반경 안에서 장애물 없음" 입니다.
    """

    radius: int
    seed_radius: int
    seeds_examined: int
    refuted_seed_count: int
    max_refutation_depth: int
    flat_vertex_count: int
    verified_deck_elements: tuple[GroupElem, ...]
    surviving_seeds: tuple[Any, ...]
    marker_fiber_checked: int

    kind = "bounded"


RealizationCertificate = Union[ExactCertificate, BoundedCertificate]


class Realization(NamedTuple):
    cover: CoverOrigami
    certificate: RealizationCertificate


# ── 유한 군 ─────────────────────────────────────────────────────────

def _log_retry(state: RetryCallState) -> None:
    exc = state.outcome.exception() if state.outcome else None
    logger.warning(f"인증 실패 (시도 {state.attempt_number}): {exc}. 더 큰 표지 기저로 재시도")


def realize_finite(
    group: Group,
    settings: Optional[RealizeSettings] = None,
    budgets: Optional[BudgetSettings] = None,
) -> Realization:
    """
    유한 순열군 G 를 Aut 로 갖는 유한 오리가미를 만듭니다.

    j 번째 생성원을 표지 기저의 j 번째 고리 자리에 놓고 피복을 만든 뒤,
    automorphism_group 과 덱 변환 집합을 비교합니다. 일치하지 않으면 다음 표지 기저로 재시도합니다.

    Raises:
        NotFound: 생성원 수만큼 고리 자리를 가진 표지 기저가 없음
        CapExceeded: 폐포가 상한을 넘음
        CertificateFailed: 재시도 예산을 모두 쓴 뒤에도 인증 실패
    """
    settings = settings or RealizeSettings()
    budgets = budgets or BudgetSettings()
    if not group.is_finite:
        raise ValidationError(f"realize_finite 는 유한 순열군 전용: {group.label}")

    elements = group.elements(budgets.closure_cap)
    k = len(group.generators)
    bases = (
        b for b in iter_marker_bases(settings.max_marker_squares, settings.exhaustive_limit)
        if len(b.loop_slots) >= k
    )
    logger.info(f"{group.label} 실현 시작: 위수 {len(elements)}, 생성원 {k} 개")

    def attempt() -> Realization:
        base = next(bases, None)
        if base is None:
            raise NotFound(settings.max_marker_squares)
        voltages = loop_slot_voltages(group, base.loop_slots)
        try:
            cover = build_cover(base.origami, voltages, budget=budgets.cycle_budget)
        except NotFlat as exc:
            raise FlatnessFailed(str(exc)) from exc

        connectivity = check_cover_connected(cover)
        if connectivity.status != Connectivity.CONNECTED:
            raise CertificateFailed(
                f"{base.label} 위의 피복이 연결되지 않음", connectivity.witness
            )

        aut = automorphism_group(cover.origami)
        deck = [deck_map(cover, h).as_perm() for h in cover.elements]
        extra = sorted(set(aut) - set(deck), key=lambda p: p.images)
        missing = sorted(set(deck) - set(aut), key=lambda p: p.images)
        if extra or missing:
            witness = (extra or missing)[0]
            raise CertificateFailed(
                f"{base.label}: Aut 위수 {len(aut)} 와 덱 위수 {len(deck)} 불일치", witness
            )
        return Realization(
            cover,
            ExactCertificate(tuple(aut), tuple(deck), base.label, attempts=len(attempts) + 1),
        )

    attempts: list[RetryCallState] = []

    def record(state: RetryCallState) -> None:
        attempts.append(state)
        _log_retry(state)

    retrying = Retrying(
        stop=stop_after_attempt(settings.retry_budget),
        retry=retry_if_exception_type(CertificateFailed),
        after=record,
        reraise=True,
    )
    result = retrying(attempt)
    logger.info(f"{group.label} 실현 완료: 정사각형 {result.cover.origami.n} 개, |Aut| = {result.certificate.order}")
    return result


# ── 무한 군 ─────────────────────────────────────────────────────────

def flatness_region(generator_count: int, vertex_budget: int) -> range:
    """평탄성을 검사할 정사각형 1..max(3k+3, 3·vertex_budget) (계단 오리가미에서 꼭짓점 vertex_budget 개 이상)."""
    return range(1, max(3 * generator_count + 3, 3 * vertex_budget) + 1)


def realize_countable(
    group: Group,
    settings: Optional[RealizeSettings] = None,
    budgets: Optional[BudgetSettings] = None,
) -> Realization:
    """
    무한 계단 오리가미 위의 피복으로 G 를 실현하고 반경 settings.radius 까지 인증합니다.

    전압: j 번째 생성원을 정사각형 3j+1 의 위쪽 변에 (j = 0..k−1), 나머지는 항등원.

    Raises:
        NotGenerating: 피복이 연결되지 않음
        FlatnessFailed: 평탄성 검사 실패 (구현 오류)
        CertificateFailed: 덱이 아닌 씨앗이 반경까지 살아남음, 살아남은 사상이 차수를 바꿈, 또는 덱 변환 검증 실패
    """
    settings = settings or RealizeSettings()
    budgets = budgets or BudgetSettings()
    k = len(group.generators)
    base = lemma1_origami()
    voltages = loop_slot_voltages(group, [3 * j + 1 for j in range(k)])

    report = check_flat(base, voltages, flatness_region(k, settings.vertex_budget), budgets.cycle_budget)
    if not report.flat:
        raise FlatnessFailed(report.describe())
    logger.info(f"평탄성 확인: 꼭짓점 {report.vertex_count} 개")

    try:
        cover = build_cover(base, voltages, budget=budgets.cycle_budget)
    except NotFlat as exc:
        raise FlatnessFailed(str(exc)) from exc

    connectivity = check_cover_connected(cover, budgets.connectivity_budget)
    if connectivity.status != Connectivity.CONNECTED:
        raise NotGenerating(f"{group.label} 피복의 연결성: {connectivity.status.value} ({connectivity.note})")

    origami = cover.origami
    start = cover.base_square()
    seeds = ball(origami, start, settings.seed_radius)
    verdicts = bounded_aut_search(origami, start, settings.radius, seeds.squares, budgets.cycle_budget)

    refuted = 0
    max_depth = 0
    surviving: list[Any] = []
    for seed, verdict in verdicts.items():
        if isinstance(verdict, RefutedAtDepth):
            refuted += 1
            max_depth = max(max_depth, verdict.depth)
            continue
        assert isinstance(verdict, (Total, CertifiedToRadius))
        i, g = cover.project(seed)
        deck = deck_map(cover, g)
        if i != 1 or any(deck(s) != t for s, t in verdict.map.table.items()):
            raise CertificateFailed(f"덱이 아닌 씨앗 {seed} 이 반경 {settings.radius} 까지 살아남음", seed)
        if not preserves_degrees(origami, verdict.map, budgets.cycle_budget):
            raise CertificateFailed(f"씨앗 {seed} 의 사상이 꼭짓점 차수를 보존하지 않음", seed)
        surviving.append(seed)

    region = ball(origami, start, settings.radius)
    verified: list[GroupElem] = []
    for g in group.generators:
        for h in (g, ~g):
            conflict = translation_conflict(origami, deck_map(cover, h), region.squares)
            if conflict is not None:
                raise CertificateFailed(f"덱 변환 {h} 가 자기동형이 아님: {conflict.describe()}", h)
            verified.append(h)

    marker_fiber = [s for s in seeds.squares if cover.project(s)[0] == 2]
    for s in marker_fiber:
        if singularity_at(origami, s, budgets.cycle_budget).degree != 1:
            raise CertificateFailed(f"표지 위의 올 {s} 의 차수가 1 이 아님", s)

    certificate = BoundedCertificate(
        radius=settings.radius,
        seed_radius=settings.seed_radius,
        seeds_examined=len(verdicts),
        refuted_seed_count=refuted,
        max_refutation_depth=max_depth,
        flat_vertex_count=report.vertex_count,
        verified_deck_elements=tuple(verified),
        surviving_seeds=tuple(sorted(surviving, key=square_key)),
        marker_fiber_checked=len(marker_fiber),
    )
    logger.info(
        f"{group.label} 유계 인증: 씨앗 {len(verdicts)} 개 중 {refuted} 개 반박, "
        f"살아남은 씨앗 {len(surviving)} 개 (모두 덱)"
    )
    return Realization(cover, certificate)
