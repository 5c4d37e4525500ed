"""
test_cli.py - 텍스트 형식, SVG, 명령줄 단위 테스트
"""

from __future__ import annotations

import sys
import os
import io
import json
import random
from pathlib import Path

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


# ── 오리가미 텍스트 테스트 ─────────────────────────────────────────

class TestOrigamiText:
    """parse_origami_text / render_text 테스트."""

    def test_parse_with_comments(self) -> None:
        """주석과 빈 줄을 무시하는지 테스트."""
        from src.cli.text_format import parse_origami_text

        o = parse_origami_text("# 토러스\n\nn: 1  # 하나\nsigma: (1)\ntau: ()\n")
        assert o.n == 1
        assert o.sigma.is_identity() and o.tau.is_identity()

    def test_parse_without_n(self) -> None:
        """n 이 없으면 가장 큰 인덱스를 쓰는지 테스트."""
        from src.cli.text_format import parse_origami_text

        o = parse_origami_text("sigma: (1,2)(3)\ntau: (1,3)(2)\n")
        assert o.n == 3
        assert str(o.sigma) == "(1,2)(3)"

    def test_missing_fixed_points_without_n(self) -> None:
        """n 이 없는데 고정점이 빠지면 SemanticError 인지 테스트."""
        from src.cli.text_format import parse_origami_text
        from src.errors import SemanticError

        with pytest.raises(SemanticError) as info:
            parse_origami_text("sigma: (1,2)\ntau: (1,3)\n")
        assert info.value.line == 1

    def test_repeated_index(self) -> None:
        """중복 인덱스의 줄과 열 테스트."""
        from src.cli.text_format import parse_origami_text
        from src.errors import SemanticError

        with pytest.raises(SemanticError) as info:
            parse_origami_text("n: 2\nsigma: (1,1)\ntau: (1)(2)\n")
        assert (info.value.line, info.value.column) == (2, 11)

    def test_repeated_index_before_missing_tau(self) -> None:
        """tau 줄이 없어도 sigma 의 중복과 범위 오류를 먼저 보고하는지 테스트."""
        from src.cli.text_format import parse_origami_text
        from src.errors import ParseError, SemanticError

        with pytest.raises(SemanticError) as info:
            parse_origami_text("n: 2\nsigma: (1,1)\n")
        assert (info.value.line, info.value.column) == (2, 11)
        with pytest.raises(SemanticError):
            parse_origami_text("n: 2\nsigma: (1,3)\n")
        with pytest.raises(ParseError) as missing:
            parse_origami_text("n: 2\nsigma: (1,2)\n")
        assert "tau" in missing.value.message

    def test_out_of_range(self) -> None:
        """범위 밖 인덱스가 SemanticError 인지 테스트."""
        from src.cli.text_format import parse_origami_text
        from src.errors import SemanticError

        with pytest.raises(SemanticError) as info:
            parse_origami_text("n: 2\nsigma: (1,2)\ntau: (1,3)\n")
        assert (info.value.line, info.value.column) == (3, 9)

    def test_unclosed_cycle(self) -> None:
        """닫히지 않은 순환의 줄과 열 테스트."""
        from src.cli.text_format import parse_origami_text
        from src.errors import ParseError

        with pytest.raises(ParseError) as info:
            parse_origami_text("n: 3\nsigma: (1,2\ntau: (1)\n")
        assert (info.value.line, info.value.column) == (2, 12)

    def test_unknown_key(self) -> None:
        """알 수 없는 키가 ParseError 인지 테스트."""
        from src.cli.text_format import parse_origami_text
        from src.errors import ParseError

        with pytest.raises(ParseError) as info:
            parse_origami_text("rho: (1)\n")
        assert info.value.line == 1

    def test_not_connected(self) -> None:
        """연결되지 않은 오리가미가 NotConnected 인지 테스트."""
        from src.cli.text_format import parse_origami_text
        from src.errors import NotConnected

        with pytest.raises(NotConnected):
            parse_origami_text("n: 3\nsigma: (1,2)\ntau: (1)\n")

    def test_countable_builtin(self) -> None:
        """내장 무한 오리가미 테스트."""
        from src.cli.text_format import parse_origami_text, render_text
        from src.errors import SemanticError

        o = parse_origami_text("n: countable lemma1\n")
        assert not o.is_finite
        assert render_text(o) == "n: countable lemma1\n"
        with pytest.raises(SemanticError) as info:
            parse_origami_text("n: countable nessie\n")
        assert (info.value.line, info.value.column) == (1, 14)

    def test_render_l_shape(self) -> None:
        """L 자 오리가미 출력 형식 테스트."""
        from src.cli.text_format import parse_origami_text, render_text

        text = (DATA / "l_shape.origami").read_text(encoding="utf-8")
        assert render_text(parse_origami_text(text)) == "n: 3\nsigma: (1,2)(3)\ntau: (1,3)(2)\n"

    def test_round_trip_random(self) -> None:
        """무작위 오리가미를 출력했다가 다시 읽으면 같은지 테스트."""
        from src.algebra.perm import FinitePerm
        from src.cli.text_format import parse_origami_text, render_text
        from src.surface.origami import Finite, make_origami

        rng = random.Random(11)
        for _ in range(500):
            n = rng.randint(1, 12)
            s = list(range(1, n + 1))
            t = list(range(1, n + 1))
            rng.shuffle(s)
            rng.shuffle(t)
            o = make_origami(FinitePerm(tuple(s)), FinitePerm(tuple(t)), Finite(n), require_connected=False)
            back = parse_origami_text(render_text(o), require_connected=False)
            assert (back.n, back.sigma, back.tau) == (o.n, o.sigma, o.tau)


# ── 군과 전압 텍스트 테스트 ────────────────────────────────────────

class TestGroupText:
    """parse_group_spec / parse_group_element / parse_voltages 테스트."""

    def test_group_specs(self) -> None:
        """군 명세 형식 테스트."""
        from src.algebra.group import GroupKind
        from src.cli.text_format import parse_group_spec

        assert parse_group_spec("Z").label == "Z"
        assert parse_group_spec("Z^2").rank == 2
        assert parse_group_spec("F_2").label == "F_2"
        assert parse_group_spec("F3").rank == 3
        assert parse_group_spec("trivial").order() == 1
        group = parse_group_spec("perm: (1,2)(3,4); (1,3)")
        assert group.kind == GroupKind.PERMUTATION
        assert group.rank == 4
        assert len(group.generators) == 2
        assert group.order() == 8

    @pytest.mark.parametrize("spec", ["Q", "Z^0", "F_0", "perm:", "perm: (1,1)", "perm: (1,2"])
    def test_bad_specs(self, spec: str) -> None:
        """잘못된 군 명세가 GroupSpecError 인지 테스트."""
        from src.cli.text_format import parse_group_spec
        from src.errors import GroupSpecError

        with pytest.raises(GroupSpecError):
            parse_group_spec(spec)

    def test_group_elements(self) -> None:
        """군 원소 텍스트 테스트."""
        from src.algebra.group import Group, vector
        from src.cli.text_format import parse_group_element
        from src.errors import GroupSpecError

        f2 = Group.free(2)
        assert parse_group_element("aB", f2).key == (1, -2)
        assert parse_group_element("1", f2).is_identity
        assert parse_group_element("(1,0)", Group.free_abelian(2)) == vector([1, 0])
        assert parse_group_element("-3", Group.free_abelian(1)) == vector([-3])
        perm = Group.permutation([(2, 1, 3)])
        assert parse_group_element("()", perm).is_identity
        with pytest.raises(GroupSpecError):
            parse_group_element("c", f2)
        with pytest.raises(GroupSpecError):
            parse_group_element("(1,2,3)", Group.free_abelian(2))

    def test_voltages(self) -> None:
        """전압 파일 테스트."""
        from src.algebra.group import perm_elem
        from src.cli.text_format import parse_group_spec, parse_voltages

        group = parse_group_spec("perm: (1,2)")
        V = parse_voltages((DATA / "torus_z2.voltages").read_text(encoding="utf-8"), group, 1)
        assert V.wh == {1: perm_elem((2, 1))}
        assert V.wv == {}

    def test_voltage_errors(self) -> None:
        """전압 파일 오류 위치 테스트."""
        from src.cli.text_format import parse_group_spec, parse_voltages
        from src.errors import ParseError, SemanticError

        group = parse_group_spec("Z")
        with pytest.raises(ParseError):
            parse_voltages("x 1 3\n", group)
        with pytest.raises(SemanticError) as info:
            parse_voltages("h 9 3\n", group, 1)
        assert (info.value.line, info.value.column) == (1, 3)
        with pytest.raises(SemanticError) as info:
            parse_voltages("v 1 3\nv 1 4\n", group)
        assert info.value.line == 2
        with pytest.raises(ParseError):
            parse_voltages("h 1 a\n", group)


# ── SVG 테스트 ─────────────────────────────────────────────────────

class TestSvg:
    """layout_squares / render_svg 테스트."""

    @pytest.mark.parametrize("name", ["torus", "l_shape"])
    def test_golden_finite(self, name: str) -> None:
        """유한 오리가미 SVG 가 기준 파일과 바이트 단위로 같은지 테스트."""
        from src.cli.svg import render_svg
        from src.cli.text_format import parse_origami_text

        o = parse_origami_text((DATA / f"{name}.origami").read_text(encoding="utf-8"))
        assert render_svg(o) == (GOLDEN / f"{name}.svg").read_text(encoding="utf-8")

    def test_golden_staircase_ball(self) -> None:
        """계단 오리가미 반경 4 공의 SVG 가 기준 파일과 같은지 테스트."""
        from src.cli.svg import render_svg
        from src.surface.builtins import lemma1_origami
        from src.surface.origami import ball

        o = lemma1_origami()
        assert render_svg(o, ball(o, 1, 4)) == (GOLDEN / "lemma1_ball4.svg").read_text(encoding="utf-8")

    def test_collision_makes_component(self) -> None:
        """이미 차지된 칸에 놓일 정사각형이 새 구성요소로 떨어지는지 테스트."""
        from src.algebra.perm import FinitePerm
        from src.cli.svg import layout_squares, render_svg
        from src.surface.origami import Finite, make_origami

        o = make_origami(
            FinitePerm.from_cycles([(1, 2), (3, 5)], 5),
            FinitePerm.from_cycles([(1, 3), (2, 4)], 5),
            Finite(5),
        )
        layout = layout_squares(o)
        assert layout.positions == {1: (0, 0), 2: (1, 0), 3: (0, 1), 4: (1, 1), 5: (3, 0)}
        assert layout.links == ((3, 5),)
        assert (layout.width, layout.height) == (4, 2)
        assert 'stroke-dasharray="4 3"' in render_svg(o)

    def test_deterministic(self) -> None:
        """같은 입력이면 같은 출력인지 테스트."""
        from src.cli.svg import render_svg
        from src.realize.marker import staircase_closure

        assert render_svg(staircase_closure(2)) == render_svg(staircase_closure(2))

    def test_countable_needs_region(self) -> None:
        """무한 오리가미는 공 없이 그릴 수 없는지 테스트."""
        from src.cli.svg import render_svg
        from src.errors import ValidationError
        from src.surface.builtins import lemma1_origami

        with pytest.raises(ValidationError):
            render_svg(lemma1_origami())

    def test_pair_labels(self) -> None:
        """(i, g) 정사각형 라벨 테스트."""
        from src.algebra.group import vector
        from src.cli.svg import square_label

        assert square_label((3, vector([-1]))) == "3:-1"
        assert square_label(7) == "7"


# ── 명령줄 테스트 ──────────────────────────────────────────────────

def _run(argv: list[str]) -> tuple[int, str]:
    from src.cli.commands import run_command
    from src.settings import Settings

    out = io.StringIO()
    code = run_command(argv, Settings(), out)
    return code, out.getvalue()


class TestCommands:
    """run_command 테스트."""

    def test_validate(self) -> None:
        """validate 성공 테스트."""
        code, text = _run(["validate", str(DATA / "torus.origami")])
        assert code == 0
        assert text == "valid: 1 squares, connected\n"

    def test_info_l_shape(self) -> None:
        """info 가 분포, 종수, χ 를 출력하는지 테스트."""
        code, text = _run(["info", str(DATA / "l_shape.origami")])
        assert code == 0
        assert "profile: {3}" in text
        assert "genus: 2" in text
        assert "chi: -2" in text

    def test_info_countable(self) -> None:
        """무한 오리가미 info 가 추정 경고를 포함하는지 테스트."""
        from src.realize.heuristics import DISCLAIMER

        code, text = _run(["info", str(DATA / "lemma1.origami")])
        assert code == 0
        assert DISCLAIMER in text

    def test_aut(self) -> None:
        """aut 가 위수를 출력하는지 테스트."""
        code, text = _run(["aut", str(DATA / "klein_cover.origami")])
        assert code == 0
        assert text.startswith("order: 4\n")

    def test_aut_bounded(self) -> None:
        """무한 오리가미 aut 가 반박 깊이를 출력하는지 테스트."""
        code, text = _run(["aut", str(DATA / "lemma1.origami"), "--radius", "4"])
        assert code == 0
        assert "refuted at depth" in text
        assert "no obstruction found within radius 4" in text

    def test_cover_cylinder(self) -> None:
        """cover 가 원통을 출력하는지 테스트."""
        code, text = _run(
            ["cover", str(DATA / "torus.origami"), str(DATA / "torus_z2.voltages"), "perm: (1,2)"]
        )
        assert code == 0
        assert "n: 2\nsigma: (1,2)\ntau: (1)(2)\n" in text
        assert "connectivity: connected" in text

    def test_cover_not_flat(self) -> None:
        """평탄하지 않은 전압이 종료 코드 2 인지 테스트."""
        code, text = _run(
            ["cover", str(DATA / "torus.origami"), str(DATA / "torus_sym3.voltages"), "perm: (1,2); (1,3)", "--json"]
        )
        assert code == 2
        assert json.loads(text)["error"]["type"] == "NotFlat"

    def test_lemma1(self) -> None:
        """lemma1 명령 출력 테스트."""
        code, text = _run(["lemma1", "--ball", "4"])
        assert code == 0
        assert text.startswith("ball(1, 4): 1 2 3 4 5 6 7\n")
        assert "(2) degree 1" in text

    def test_realize_finite_json(self) -> None:
        """유한 군 realize 의 JSON 보고서 테스트."""
        from src.cli.report import Report

        code, text = _run(["realize", "perm: (1,2)", "--json"])
        assert code == 0
        report = Report.model_validate_json(text)
        assert report.ok
        assert report.certificate.kind == "exact"
        assert report.certificate.order == 2
        assert report.origami.squares == 10

    def test_realize_countable_json(self) -> None:
        """무한 군 realize 의 JSON 보고서 테스트."""
        from src.cli.report import Report

        code, text = _run(["realize", "Z", "--radius", "4", "--budget", "10", "--json"])
        assert code == 0
        report = Report.model_validate_json(text)
        assert report.certificate.kind == "bounded"
        assert report.certificate.radius == 4
        assert report.certificate.verified_deck_elements == ["1", "-1"]
        assert report.origami.countable

    def test_realize_deterministic(self) -> None:
        """같은 입력이면 같은 JSON 인지 테스트."""
        argv = ["realize", "perm: (1,2)(3,4); (1,3)", "--json"]
        assert _run(argv) == _run(argv)

    def test_render(self, tmp_path: Path) -> None:
        """render 가 기준 SVG 를 쓰는지 테스트."""
        target = tmp_path / "out.svg"
        code, text = _run(["render", str(DATA / "lemma1.origami"), "--ball", "4", "-o", str(target)])
        assert code == 0
        assert text == f"wrote {target}\n"
        assert target.read_text(encoding="utf-8") == (GOLDEN / "lemma1_ball4.svg").read_text(encoding="utf-8")

    def test_invalid_input(self, tmp_path: Path) -> None:
        """연결되지 않은 입력이 종료 코드 2 와 오류 보고서를 내는지 테스트."""
        path = tmp_path / "broken.origami"
        path.write_text("n: 3\nsigma: (1,2)\ntau: (1)\n", encoding="utf-8")
        code, text = _run(["validate", str(path), "--json"])
        assert code == 2
        error = json.loads(text)["error"]
        assert error["type"] == "NotConnected"
        assert error["exit_code"] == 2

    def test_missing_file(self, tmp_path: Path) -> None:
        """없는 파일이 종료 코드 2 인지 테스트."""
        code, _ = _run(["info", str(tmp_path / "nothing.origami")])
        assert code == 2

    def test_bad_group(self) -> None:
        """알 수 없는 군 명세가 종료 코드 2 인지 테스트."""
        code, _ = _run(["realize", "Q"])
        assert code == 2

    @pytest.mark.parametrize("argv", [[], ["frobnicate"], ["realize"], ["aut", "x", "--radius", "far"]])
    def test_usage_errors(self, argv: list[str]) -> None:
        """사용법 오류가 종료 코드 64 인지 테스트."""
        code, text = _run(argv)
        assert code == 64
        assert text == ""

    def test_exit_codes(self) -> None:
        """예외 종류별 종료 코드 테스트."""
        from src.cli.commands import exit_code_for
        from src.errors import CertificateFailed, NotFlat, NotFound, NotGenerating, ValidationError

        assert exit_code_for(NotFound(3)) == 3
        assert exit_code_for(NotGenerating("x")) == 3
        assert exit_code_for(CertificateFailed("x")) == 3
        assert exit_code_for(ValidationError("x")) == 2

        class _Report:
            def describe(self) -> str:
                return "x"

        assert exit_code_for(NotFlat(_Report())) == 2


# ── JSON 스키마 테스트 ─────────────────────────────────────────────

def _without_titles(schema):
    if isinstance(schema, dict):
        return {k: _without_titles(v) for k, v in schema.items() if k != "title"}
    if isinstance(schema, list):
        return [_without_titles(v) for v in schema]
    return schema


SCHEMA_PATH = DATA / "report.schema.json"


class TestReportSchema:
    """커밋된 보고서 스키마 테스트."""

    def test_model_matches_committed_schema(self) -> None:
        """Report.model_json_schema() 가 커밋된 스키마와 (제목 제외) 같은지 테스트."""
        from src.cli.report import Report

        committed = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
        generated = Report.model_json_schema()
        assert _without_titles(generated) == _without_titles(committed)
        assert sorted(generated["$defs"]) == sorted(committed["$defs"])

    @pytest.mark.parametrize(
        "argv, expected_code",
        [
            (["validate", str(DATA / "torus.origami")], 0),
            (["info", str(DATA / "l_shape.origami")], 0),
            (["info", str(DATA / "lemma1.origami")], 0),
            (["aut", str(DATA / "l_shape.origami")], 0),
            (["aut", str(DATA / "lemma1.origami"), "--radius", "3"], 0),
            (["cover", str(DATA / "torus.origami"), str(DATA / "torus_z2.voltages"), "perm: (1,2)"], 0),
            (["cover", str(DATA / "torus.origami"), str(DATA / "torus_sym3.voltages"), "perm: (1,2); (1,3)"], 2),
            (["lemma1", "--ball", "4"], 0),
            (["realize", "perm: (1,2)"], 0),
            (["realize", "Z", "--radius", "4", "--budget", "10"], 0),
            (["realize", "Q"], 2),
        ],
    )
    def test_json_output_validates(self, argv: list[str], expected_code: int) -> None:
        """각 명령의 --json 출력이 커밋된 스키마를 통과하는지 테스트."""
        import jsonschema

        from src.cli.report import Report

        schema = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
        code, text = _run(argv + ["--json"])
        assert code == expected_code
        jsonschema.validate(instance=json.loads(text), schema=schema)
        assert Report.model_validate_json(text).command == argv[0]

    def test_render_json_validates(self, tmp_path: Path) -> None:
        """render 의 --json 출력도 스키마를 통과하는지 테스트."""
        import jsonschema

        schema = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
        target = tmp_path / "out.svg"
        code, text = _run(["render", str(DATA / "lemma1.origami"), "--ball", "4", "-o", str(target), "--json"])
        assert code == 0
        jsonschema.validate(instance=json.loads(text), schema=schema)
