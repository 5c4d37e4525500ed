"""
test_realize.py - 표지 기저, 실현 파이프라인, 위상 추정 단위 테스트
"""

from __future__ import annotations

import sys
import os

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))


# ── 표지 기저 테스트 ───────────────────────────────────────────────

class TestStaircaseClosure:
    """계단 닫힘 S_m 테스트."""

    def test_first_closure(self) -> None:
        """S_1 의 순열, 꼭짓점, 종수 테스트."""
        from src.algebra.perm import FinitePerm
        from src.realize.marker import staircase_closure
        from src.surface.origami import genus, singularities, singularity_profile

        o = staircase_closure(1)
        assert o.n == 5
        assert o.sigma == FinitePerm.from_cycles([(3, 4)], 5)
        assert o.tau == FinitePerm.from_cycles([(1, 2, 3), (4, 5)], 5)
        assert [s.cycle for s in singularities(o)] == [(1, 5), (2,), (3, 4)]
        assert singularity_profile(o) == (1, 2, 2)
        assert genus(o) == 2

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_profiles(self, m: int) -> None:
        """S_m 의 분포가 {1, 2, 2, 3, …} 이고 종수가 m+1 인지 테스트."""
        from src.realize.marker import staircase_closure
        from src.surface.origami import genus, singularity_profile

        o = staircase_closure(m)
        assert singularity_profile(o) == (1, 2, 2) + (3,) * (m - 1)
        assert genus(o) == m + 1

    def test_rejects_zero(self) -> None:
        """m < 1 이면 ValidationError 인지 테스트."""
        from src.errors import ValidationError
        from src.realize.marker import staircase_closure

        with pytest.raises(ValidationError):
            staircase_closure(0)


class TestMarkerBase:
    """표지 기저 조건과 탐색 테스트."""

    def test_loop_slots(self) -> None:
        """S_m 의 독립 고리 자리가 1, 4, …, 3m+1 인지 테스트."""
        from src.realize.marker import loop_slot_candidates, loop_slots, staircase_closure

        assert loop_slot_candidates(staircase_closure(1)) == [1, 3, 4]
        assert loop_slots(staircase_closure(1)) == (1, 4)
        assert loop_slots(staircase_closure(2)) == (1, 4, 7)
        assert loop_slots(staircase_closure(4)) == (1, 4, 7, 10, 13)

    def test_s1_is_marker_base(self) -> None:
        """S_1 이 표지 기저이고 표지가 (2) 인지 테스트."""
        from src.realize.marker import as_marker_base, marker_base_violations, staircase_closure

        o = staircase_closure(1)
        assert marker_base_violations(o) == []
        base = as_marker_base(o)
        assert base is not None
        assert base.marker.cycle == (2,)
        assert base.label == "S_1"
        assert base.n == 5

    def test_l_shape_rejected(self) -> None:
        """L 자 오리가미는 차수 1 꼭짓점이 없어 거부되는지 테스트."""
        from src.algebra.perm import FinitePerm
        from src.realize.marker import as_marker_base, marker_base_violations
        from src.surface.origami import Finite, make_origami

        o = make_origami(
            FinitePerm.from_cycles([(1, 2)], 3), FinitePerm.from_cycles([(1, 3)], 3), Finite(3)
        )
        problems = marker_base_violations(o)
        assert len(problems) == 1
        assert "차수 1" in problems[0]
        assert as_marker_base(o) is None

    def test_torus_rejected(self) -> None:
        """토러스는 차수 2 이상의 꼭짓점이 없어 거부되는지 테스트."""
        from src.realize.marker import marker_base_violations
        from src.surface.builtins import torus

        assert "차수 2 이상의 꼭짓점이 없음" in marker_base_violations(torus())

    def test_find_first(self) -> None:
        """탐색 순서상 첫 표지 기저가 S_1 인지 테스트."""
        from src.realize.marker import find_marker_base

        base = find_marker_base(20)
        assert base.label == "S_1"
        assert base.loop_slots == (1, 4)

    def test_find_with_more_slots(self) -> None:
        """고리 자리 3 개가 필요하면 S_2 를 고르는지 테스트."""
        from src.realize.marker import find_marker_base

        base = find_marker_base(20, min_slots=3)
        assert base.label == "S_2"
        assert base.n == 8

    def test_two_squares_not_found(self) -> None:
        """정사각형 2 개 이하에는 표지 기저가 없는지 테스트."""
        from src.errors import NotFound
        from src.realize.marker import find_marker_base

        with pytest.raises(NotFound) as info:
            find_marker_base(2)
        assert info.value.bound == 2


# ── 유한 군 실현 테스트 ────────────────────────────────────────────

FINITE_GROUPS = [
    ("trivial", None, 1),
    ("Z/2", [[(1, 2)]], 2),
    ("Z/3", [[(1, 2, 3)]], 3),
    ("Z/4", [[(1, 2, 3, 4)]], 4),
    ("Z/2xZ/2", [[(1, 2)], [(3, 4)]], 4),
    ("Sym(3)", [[(1, 2)], [(1, 2, 3)]], 6),
    ("Dih(4)", [[(1, 2, 3, 4)], [(1, 3)]], 8),
    ("Q8", [[(1, 2, 3, 4), (5, 6, 7, 8)], [(1, 5, 3, 7), (2, 8, 4, 6)]], 8),
]


def _group(cycles):
    from src.algebra.group import Group
    from src.algebra.perm import FinitePerm

    if cycles is None:
        return Group.trivial()
    degree = max(p for gen in cycles for c in gen for p in c)
    return Group.permutation([FinitePerm.from_cycles(gen, degree) for gen in cycles])


class TestRealizeFinite:
    """realize_finite 테스트."""

    @pytest.mark.parametrize("name, cycles, order", FINITE_GROUPS)
    def test_aut_equals_deck(self, name: str, cycles, order: int) -> None:
        """Aut(피복) 가 덱 변환 집합과 같고 위수가 |G| 인지 테스트."""
        from src.realize.pipeline import realize_finite
        from src.surface.automorphism import automorphism_group
        from src.surface.origami import Connectivity

        cover, cert = realize_finite(_group(cycles))
        assert cert.kind == "exact"
        assert cert.order == order
        assert set(cert.aut) == set(cert.deck)
        assert cover.origami.n == 5 * order
        assert cover.origami.validation.connectivity == Connectivity.CONNECTED
        assert len(automorphism_group(cover.origami)) == order
        assert cert.attempts == 1
        assert cert.base_label == "S_1"

    def test_rejects_infinite_group(self) -> None:
        """무한 군은 ValidationError 인지 테스트."""
        from src.algebra.group import Group
        from src.errors import ValidationError
        from src.realize.pipeline import realize_finite

        with pytest.raises(ValidationError):
            realize_finite(Group.free_abelian(1))

    def test_no_marker_base(self) -> None:
        """표지 기저 탐색 범위가 너무 작으면 NotFound 인지 테스트."""
        from src.errors import NotFound
        from src.realize.pipeline import realize_finite
        from src.settings import RealizeSettings

        settings = RealizeSettings(max_marker_squares=3, exhaustive_limit=1)
        with pytest.raises(NotFound):
            realize_finite(_group([[(1, 2)]]), settings)

    def test_cover_is_marker_rigid(self) -> None:
        """피복의 차수 1 꼭짓점이 정확히 |G| 개인지 테스트."""
        from src.realize.pipeline import realize_finite
        from src.surface.origami import singularities

        cover, _ = realize_finite(_group([[(1, 2)], [(1, 2, 3)]]))
        assert sum(1 for s in singularities(cover.origami) if s.degree == 1) == 6

    @pytest.mark.parametrize("name, cycles, order", FINITE_GROUPS)
    def test_certificate_recomputed(self, name: str, cycles, order: int) -> None:
        """인증서의 Aut 를 다시 계산하고, 덱 순열의 폐포가 같은 집합인지 독립적으로 확인."""
        from src.algebra.group import Group, perm_elem
        from src.cover.covering import deck_map
        from src.realize.pipeline import realize_finite
        from src.surface.automorphism import automorphism_group, is_automorphism

        cover, cert = realize_finite(_group(cycles))
        assert set(automorphism_group(cover.origami)) == set(cert.aut)
        closure = set(Group.permutation(list(cert.deck)).elements())
        assert closure == {perm_elem(p) for p in cert.aut}
        assert len(closure) == order
        for h in cover.elements:
            assert is_automorphism(cover.origami, deck_map(cover, h), cover.origami.squares())


# ── 무한 군 실현 테스트 ────────────────────────────────────────────

class TestRealizeCountable:
    """realize_countable 테스트."""

    def test_z(self) -> None:
        """ℤ 실현의 유계 인증서 테스트."""
        from src.algebra.group import Group, vector
        from src.realize.pipeline import realize_countable

        cover, cert = realize_countable(Group.free_abelian(1))
        assert cert.kind == "bounded"
        assert cert.radius == 6
        assert cert.seed_radius == 3
        assert cert.flat_vertex_count >= 200
        assert cert.verified_deck_elements == (vector([1]), vector([-1]))
        assert cert.surviving_seeds == ((1, vector([-1])), (1, vector([0])), (1, vector([1])))
        assert cert.refuted_seed_count == cert.seeds_examined - 3
        assert 0 < cert.max_refutation_depth <= 6
        assert cert.marker_fiber_checked >= 1
        assert not cover.origami.is_finite

    def test_z2(self) -> None:
        """ℤ² 실현에서 살아남은 씨앗이 모두 정사각형 1 위에 있는지 테스트."""
        from src.algebra.group import Group
        from src.realize.pipeline import realize_countable

        cover, cert = realize_countable(Group.free_abelian(2))
        assert len(cert.verified_deck_elements) == 4
        assert all(cover.project(s)[0] == 1 for s in cert.surviving_seeds)
        assert cert.max_refutation_depth <= cert.radius

    def test_free_group(self) -> None:
        """F_2 실현이 작은 반경에서 인증되는지 테스트."""
        from src.algebra.group import Group
        from src.realize.pipeline import realize_countable
        from src.settings import RealizeSettings

        _, cert = realize_countable(Group.free(2), RealizeSettings(radius=5))
        assert cert.radius == 5
        assert cert.refuted_seed_count + len(cert.surviving_seeds) == cert.seeds_examined
        assert [str(g) for g in cert.verified_deck_elements] == ["a", "A", "b", "B"]

    def test_flatness_region(self) -> None:
        """평탄성 검사 영역의 크기 테스트."""
        from src.realize.pipeline import flatness_region

        assert flatness_region(2, 200) == range(1, 601)
        assert flatness_region(5, 1) == range(1, 19)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_loop_slot_scheme_flat(self, k: int) -> None:
        """고리 자리 3j+1 에 생성원을 놓은 전압이 세 종류 군 모두에서 1..3k+30 영역에서 평탄한지 테스트."""
        from src.algebra.group import Group
        from src.cover.voltage import check_flat, loop_slot_voltages
        from src.surface.builtins import lemma1_origami

        cycle = tuple(list(range(2, k + 2)) + [1])
        swap = tuple([2, 1] + list(range(3, k + 2)))
        perm_gens = [cycle if j % 2 == 0 else swap for j in range(k)]
        groups = [Group.permutation(perm_gens), Group.free_abelian(k), Group.free(k)]
        for group in groups:
            V = loop_slot_voltages(group, [3 * j + 1 for j in range(k)])
            report = check_flat(lemma1_origami(), V, range(1, 3 * k + 31))
            assert report.flat, report.describe()

    def test_surviving_seed_degree_check(self, monkeypatch) -> None:
        """살아남은 씨앗의 사상이 차수를 보존하지 않으면 CertificateFailed 인지 테스트."""
        from src.algebra.group import Group
        from src.errors import CertificateFailed
        from src.realize import pipeline

        monkeypatch.setattr(pipeline, "preserves_degrees", lambda *args, **kwargs: False)
        with pytest.raises(CertificateFailed):
            pipeline.realize_countable(Group.free_abelian(1))

    def test_certificate_soundness(self) -> None:
        """살아남은 씨앗이 덱 변환과 일치하고 차수를 보존하는지 독립적으로 다시 확인."""
        from src.algebra.group import Group
        from src.cover.covering import deck_map
        from src.realize.pipeline import realize_countable
        from src.surface.automorphism import is_automorphism
        from src.surface.origami import ball, singularity_at

        cover, cert = realize_countable(Group.free_abelian(2))
        region = ball(cover.origami, cover.base_square(), cert.radius)
        for seed in cert.surviving_seeds:
            i, g = cover.project(seed)
            assert i == 1
            deck = deck_map(cover, g)
            assert is_automorphism(cover.origami, deck, region.squares)
            for s in region.squares:
                assert singularity_at(cover.origami, s).degree == singularity_at(cover.origami, deck(s)).degree
        for h in cert.verified_deck_elements:
            assert is_automorphism(cover.origami, deck_map(cover, h), region.squares)


# ── 위상 추정 테스트 ───────────────────────────────────────────────

class TestMonsterHeuristics:
    """monster_heuristics 테스트."""

    def test_staircase_counts(self) -> None:
        """계단 오리가미의 반경 2, 4, 6, 8 개수가 0, 1, 2, 3 인지 테스트."""
        from src.realize.heuristics import DISCLAIMER, monster_heuristics
        from src.surface.builtins import lemma1_origami

        report = monster_heuristics(lemma1_origami(), (2, 4, 6, 8))
        assert report.counts == (0, 1, 2, 3)
        assert report.rows[1].ball_size == 7
        assert report.increasing
        assert report.disclaimer == DISCLAIMER

    def test_countable_torus(self) -> None:
        """무한 정의역의 토러스에서는 개수가 늘지 않는지 테스트."""
        from src.realize.heuristics import monster_heuristics
        from src.surface.builtins import countable_torus

        report = monster_heuristics(countable_torus(), (2, 4))
        assert report.counts == (0, 0)
        assert not report.increasing
